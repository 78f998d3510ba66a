use cobordism_schubert::flagring::FlagContext;
use cobordism_schubert::oracle::{divided_difference, reduce, schubert_class, IntPoly};
use cobordism_schubert::schubert::chow_schubert;
use cobordism_schubert::weylops::Permutation;

fn engine_class(ctx: &FlagContext, w: &Permutation) -> IntPoly {
    chow_schubert(ctx, w)
        .unwrap()
        .terms()
        .map(|(e, c)| {
            let r = c.as_rational().expect("numeric");
            assert!(r.is_integer(), "{w}: coefficient {r}");
            (e.clone(), r.to_integer().try_into().unwrap())
        })
        .collect()
}

#[test]
fn oracle_divided_differences_follow_the_weak_order() {
    // d_i S_w is S_{w s_i} when the length goes up, zero otherwise
    let n = 4;
    for w in Permutation::all(n) {
        let class = schubert_class(w.one_line());
        for i in 1..n {
            let ws = w.compose(&Permutation::simple(n, i));
            let got = reduce(&divided_difference(&class, i), n);
            if ws.length() > w.length() {
                assert_eq!(got, schubert_class(ws.one_line()), "w = {w}, i = {i}");
            } else {
                assert!(got.is_empty(), "w = {w}, i = {i}");
            }
        }
    }
}

#[test]
fn engine_matches_oracle_in_rank_five() {
    let ctx = FlagContext::new(5).unwrap();
    let samples = [
        vec![1, 2, 3, 4, 5],
        vec![2, 1, 3, 4, 5],
        vec![1, 3, 5, 2, 4],
        vec![3, 5, 1, 4, 2],
        vec![4, 2, 5, 1, 3],
        vec![5, 4, 3, 2, 1],
    ];
    for v in samples {
        let w = Permutation::from_one_line(v).unwrap();
        assert_eq!(
            engine_class(&ctx, &w),
            schubert_class(w.one_line()),
            "w = {w}"
        );
    }
}
