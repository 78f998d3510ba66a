use std::collections::BTreeMap;

use cobordism_schubert::flagring::{point_class, FlagContext, FlagElem, Weight};
use cobordism_schubert::ringcore::{rat, CoeffPoly};
use cobordism_schubert::schubert::{bs_class, c1_times_bs, chevalley_coeff, product_bs};
use cobordism_schubert::theory::Theory;
use cobordism_schubert::weylops::{coroot_pairing, weyl_act, Permutation, Word};

fn b(i: u32) -> CoeffPoly {
    CoeffPoly::generator(i)
}

fn a11() -> CoeffPoly {
    -b(1)
}

fn a12() -> CoeffPoly {
    &(&b(1) * &b(1)) - &b(2)
}

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

/// Reduces a polynomial given as `(exponents, coefficient)` pairs.
fn rep(ctx: &FlagContext, terms: &[(&[u32], CoeffPoly)]) -> FlagElem {
    let mut p = ctx.ring(ctx.d());
    for (e, c) in terms {
        p.add_term(e.to_vec(), c.clone());
    }
    ctx.reduce_canonical(&p).unwrap()
}

fn one() -> CoeffPoly {
    CoeffPoly::one()
}

fn int(k: i64) -> CoeffPoly {
    CoeffPoly::from_int(k)
}

#[test]
fn seven_classes_in_rank_three() {
    let ctx = FlagContext::new(3).unwrap();
    let table: Vec<(&str, FlagElem)> = vec![
        (
            "2,1,2",
            rep(&ctx, &[(&[0, 0, 0], one()), (&[2, 0, 0], a12())]),
        ),
        (
            "1,2,1",
            rep(&ctx, &[(&[0, 0, 0], one()), (&[1, 1, 0], a12())]),
        ),
        (
            "1,2",
            rep(&ctx, &[(&[1, 0, 0], int(-1)), (&[2, 0, 0], -b(1))]),
        ),
        (
            "2,1",
            rep(&ctx, &[(&[1, 0, 0], int(-1)), (&[0, 1, 0], int(-1))]),
        ),
        ("1", rep(&ctx, &[(&[1, 1, 0], one())])),
        ("2", rep(&ctx, &[(&[2, 0, 0], one())])),
        ("", rep(&ctx, &[(&[2, 1, 0], int(-1))])),
    ];
    for (w, expected) in table {
        assert_eq!(bs_class(&ctx, &word(w)).unwrap(), expected, "R({w})");
    }
}

#[test]
fn canonical_forms_of_the_goldens() {
    let ctx = FlagContext::new(3).unwrap();
    let r212 = bs_class(&ctx, &word("2,1,2")).unwrap();
    assert_eq!(r212.coeff(&[0, 0, 0]), one());
    assert_eq!(r212.coeff(&[0, 1, 1]), a12());
    assert_eq!(r212.len(), 2);
    let r12 = bs_class(&ctx, &word("1,2")).unwrap();
    let expected = rep(
        &ctx,
        &[
            (&[0, 1, 0], one()),
            (&[0, 0, 1], one()),
            (&[0, 1, 1], -b(1)),
        ],
    );
    assert_eq!(r12, expected);
    assert_eq!(
        bs_class(&ctx, &word("1")).unwrap(),
        rep(&ctx, &[(&[0, 0, 2], one())])
    );
    assert_eq!(bs_class(&ctx, &Word::empty()).unwrap(), point_class(&ctx));
}

#[test]
fn longest_element_words_differ_only_outside_chow() {
    let ctx = FlagContext::new(3).unwrap();
    let r121 = bs_class(&ctx, &word("1,2,1")).unwrap();
    let r212 = bs_class(&ctx, &word("2,1,2")).unwrap();
    assert_ne!(r121, r212);
    assert_eq!(r121.specialize(&Theory::Chow), FlagElem::one(&ctx));
    assert_eq!(r212.specialize(&Theory::Chow), FlagElem::one(&ctx));
}

fn by_word(pairs: &[(&str, CoeffPoly)]) -> BTreeMap<Word, CoeffPoly> {
    pairs.iter().map(|(w, c)| (word(w), c.clone())).collect()
}

#[test]
fn product_table() {
    let ctx = FlagContext::new(3).unwrap();
    let cases: Vec<(&str, &str, BTreeMap<Word, CoeffPoly>)> = vec![
        (
            "1,2",
            "2,1",
            by_word(&[("1", one()), ("2", one()), ("", -b(1))]),
        ),
        ("1,2", "1,2", by_word(&[("2", one())])),
        ("2,1", "2,1", by_word(&[("1", one())])),
        ("1,2", "1", by_word(&[("", one())])),
        ("2,1", "2", by_word(&[("", one())])),
        ("1,2", "2", BTreeMap::new()),
        ("2,1", "1", BTreeMap::new()),
    ];
    for (l, r, expected) in cases {
        let got = product_bs(&ctx, &word(l), &word(r)).unwrap();
        assert_eq!(got.by_word(), expected, "Z({l}) Z({r})");
    }
}

#[test]
fn chevalley_on_z21() {
    let ctx = FlagContext::new(3).unwrap();
    let exp = c1_times_bs(&ctx, &Weight::fundamental(3, 1), &word("2,1")).unwrap();
    assert_eq!(
        exp.by_word(),
        by_word(&[("2", one()), ("1", one()), ("", a11())])
    );
}

#[test]
fn full_subword_chevalley_coefficient_is_symbolic() {
    let ctx = FlagContext::new(3).unwrap();
    let g1 = Weight::simple_root(3, 1);
    let g2 = Weight::simple_root(3, 2);
    let s1g2 = weyl_act(&Permutation::simple(3, 1), &g2).unwrap();
    let weights = [
        Weight::fundamental(3, 1),
        Weight::fundamental(3, 2),
        Weight::rho(3),
        Weight::new(vec![4, -3, 1]),
    ];
    for lam in weights {
        let p1 = coroot_pairing(&lam, &g1).unwrap();
        let p2 = coroot_pairing(&lam, &s1g2).unwrap();
        // a11 (lambda,g1) [ (lambda, s1 g2) - ((lambda,g1) - 1)/2 ]
        let bracket = rat(2 * p2 - (p1 - 1), 2);
        let expected = a11().scale(&(rat(p1, 1) * bracket));
        let got = chevalley_coeff(&ctx, &word("2,1"), 0b11, &lam).unwrap();
        assert_eq!(got, expected, "lambda = {lam}");
        assert_eq!(
            chevalley_coeff(&ctx, &word("2,1"), 0b01, &lam).unwrap(),
            int(p2)
        );
        assert_eq!(
            chevalley_coeff(&ctx, &word("2,1"), 0b10, &lam).unwrap(),
            int(p1)
        );
        assert!(chevalley_coeff(&ctx, &word("2,1"), 0, &lam)
            .unwrap()
            .is_zero());
    }
}
