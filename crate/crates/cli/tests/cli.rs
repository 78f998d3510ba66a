use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omega-schubert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn coeff_text(c: &Value) -> Vec<(String, String, String)> {
    c.as_array()
        .unwrap()
        .iter()
        .map(|t| {
            (
                t["b"].to_string(),
                t["num"].as_str().unwrap().into(),
                t["den"].as_str().unwrap().into(),
            )
        })
        .collect()
}

#[test]
fn class_in_json() {
    let v = json(&["bsclass", "--n", "3", "--word", "1", "--verify"]);
    assert_eq!(v["verified"], true);
    let class = v["class"].as_array().unwrap();
    assert_eq!(class.len(), 1);
    assert_eq!(class[0]["x"], serde_json::json!([0, 0, 2]));
    assert_eq!(
        coeff_text(&class[0]["coeff"]),
        vec![("[]".into(), "1".into(), "1".into())]
    );
}

#[test]
fn product_expansion_in_json() {
    let v = json(&[
        "product", "--n", "3", "--left", "1,2", "--right", "2,1", "--verify",
    ]);
    let exp = v["expansion"].as_array().unwrap();
    let words: Vec<String> = exp.iter().map(|t| t["word"].to_string()).collect();
    assert_eq!(words, vec!["[]", "[1]", "[2]"]);
    assert_eq!(
        coeff_text(&exp[0]["coeff"]),
        vec![("[[1,1]]".into(), "-1".into(), "1".into())]
    );
}

#[test]
fn theories_specialize_the_output() {
    let chow = json(&[
        "chevalley",
        "--n",
        "3",
        "--weight",
        "1,0,0",
        "--word",
        "2,1",
        "--theory",
        "chow",
    ]);
    assert_eq!(chow["expansion"].as_array().unwrap().len(), 2);
    let k = json(&[
        "chevalley",
        "--n",
        "3",
        "--weight",
        "1,0,0",
        "--word",
        "2,1",
        "--theory",
        "ktheory",
        "--beta",
        "-1/2",
    ]);
    let exp = k["expansion"].as_array().unwrap();
    assert_eq!(exp[0]["word"], serde_json::json!([]));
    assert_eq!(
        coeff_text(&exp[0]["coeff"]),
        vec![("[]".into(), "1".into(), "2".into())]
    );
}

#[test]
fn fgl_coefficients() {
    let v = json(&["fgl", "--max-degree", "3"]);
    let rows = v["coefficients"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(
        (rows[0]["i"].as_u64(), rows[0]["j"].as_u64()),
        (Some(1), Some(1))
    );
    assert_eq!(
        coeff_text(&rows[0]["coeff"]),
        vec![("[[1,1]]".into(), "-1".into(), "1".into())]
    );
    assert!(!v["chi"].as_array().unwrap().is_empty());
    assert!(!v["q"].as_array().unwrap().is_empty());
    // a22 carries a denominator 2 in the b-generators
    assert_eq!(json(&["fgl", "--max-degree", "4"])["denominator"], "2");
}

#[test]
fn expansion_and_pieri() {
    let v = json(&["expand", "--n", "3", "--word", "1,2,1,2", "--verify"]);
    assert_eq!(v["verified"], true);
    assert!(!v["expansion"].as_array().unwrap().is_empty());
    let p = json(&["pieri", "--n", "3", "--word", "1,2,1", "--weight", "3,-1,2"]);
    let pairings: Vec<i64> = p["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["pairing"].as_i64().unwrap())
        .collect();
    assert_eq!(pairings, vec![-3, 1, 4]);
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["bsclass", "--n", "3", "--word", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["bsclass", "--n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["bsclass", "--n", "6"]).status.code(), Some(3));
    let long = vec!["1"; 17].join(",");
    assert_eq!(
        run(&["bsclass", "--n", "3", "--word", &long]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["fgl", "--max-degree", "40"]).status.code(), Some(3));
}

#[test]
fn selftest_passes() {
    let v = json(&["selftest"]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 11);
}
