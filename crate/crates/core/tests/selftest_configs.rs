use cobordism_schubert::ringcore::rat;
use cobordism_schubert::selftest::{run_all, Config, Status};
use cobordism_schubert::theory::Theory;

fn assert_all_ok(cfg: &Config) {
    for r in run_all(cfg) {
        assert!(
            r.status != Status::Fail,
            "n = {}, {}: {r}",
            cfg.n,
            cfg.theory
        );
    }
}

#[test]
fn rank_three_in_specialized_theories() {
    for theory in [
        Theory::Chow,
        Theory::KTheory(rat(1, 1)),
        Theory::KTheory(rat(-1, 2)),
    ] {
        assert_all_ok(&Config {
            theory,
            ..Config::default()
        });
    }
}

#[test]
fn rank_two_skips_the_tables() {
    let cfg = Config {
        n: 2,
        ..Config::default()
    };
    let reports = run_all(&cfg);
    let skipped: Vec<u32> = reports
        .iter()
        .filter(|r| r.status == Status::Skip)
        .map(|r| r.id)
        .collect();
    assert_eq!(skipped, vec![4, 5, 6]);
    assert_all_ok(&cfg);
}

#[test]
fn rank_four() {
    assert_all_ok(&Config {
        n: 4,
        ..Config::default()
    });
}
