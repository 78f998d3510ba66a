//! Seeded random inputs for the self-test, property tests and benches.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::flagring::{FlagContext, FlagElem, Weight};
use crate::ringcore::{int, BMonomial, CoeffPoly, TruncSeries};
use crate::weylops::Word;

/// A small integer multiple of a Lazard monomial of degree at least `-2`.
pub fn coeff<R: Rng>(rng: &mut R) -> CoeffPoly {
    let weight = rng.gen_range(0..=2);
    let monos = BMonomial::with_weight(weight);
    let m = monos.choose(rng).expect("nonempty").clone();
    let mut k = rng.gen_range(-3..=3);
    if k == 0 {
        k = 1;
    }
    CoeffPoly::monomial(m, int(k))
}

/// A polynomial in `x_1..x_n` with `terms` random monomials of degree at most
/// `d`, not reduced.
pub fn raw_poly<R: Rng>(ctx: &FlagContext, rng: &mut R, terms: usize) -> TruncSeries {
    let mut p = ctx.ring(ctx.d());
    for _ in 0..terms {
        let total = rng.gen_range(0..=ctx.d());
        let mut e = vec![0; ctx.n()];
        for _ in 0..total {
            e[rng.gen_range(0..ctx.n())] += 1;
        }
        p.add_term(e, coeff(rng));
    }
    p
}

pub fn flag_elem<R: Rng>(ctx: &FlagContext, rng: &mut R, terms: usize) -> FlagElem {
    ctx.reduce_canonical(&raw_poly(ctx, rng, terms))
        .expect("ring of the context")
}

pub fn word<R: Rng>(n: usize, max_len: usize, rng: &mut R) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| rng.gen_range(1..n)).collect())
}

pub fn weight<R: Rng>(n: usize, bound: i64, rng: &mut R) -> Weight {
    Weight::new((0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
}

/// Every word over `1..n-1` of length at most `max_len`.
pub fn all_words(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                (1..n).map(move |i| {
                    let mut w = w.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned().map(Word::new));
    }
    out
}
