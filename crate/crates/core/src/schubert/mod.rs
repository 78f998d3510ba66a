//! Bott-Samelson classes, the Chevalley-Pieri expansion and the product
//! algorithm built on it.

mod basis;
mod expansion;

pub use basis::{basis_words, expand_in_bs_basis, leading_transition_blocks, TransitionBlock};
pub use expansion::BSExpansion;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{usage, Result};
use crate::flagring::{c1_weight, constant_term, point_class, FlagContext, FlagElem, Weight};
use crate::par;
use crate::ringcore::CoeffPoly;
use crate::theory::Theory;
use crate::weylops::{
    a_op, a_star_op, beta_sequence, coroot_pairing, reduced_word, sigma_op, Permutation, Word,
};

/// Longest word accepted by the expansion routines.
pub const MAX_WORD_LEN: usize = 24;

fn check_word(ctx: &FlagContext, word: &Word) -> Result<()> {
    word.validate(ctx.n())?;
    if word.len() > MAX_WORD_LEN {
        return usage(format!("word {word} longer than {MAX_WORD_LEN} letters"));
    }
    Ok(())
}

/// `R_I = A_{i_l} ... A_{i_1} [pt]`; the first letter acts first.
pub fn bs_class(ctx: &FlagContext, word: &Word) -> Result<FlagElem> {
    check_word(ctx, word)?;
    let letters = word.letters();
    let Some((&last, prefix)) = letters.split_last() else {
        return Ok(point_class(ctx));
    };
    if let Some(t) = ctx.memo().bs_class.lock().expect("memo").get(letters) {
        return Ok(ctx.wrap_canonical(t.clone()));
    }
    let below = bs_class(ctx, &Word::new(prefix.to_vec()))?;
    let out = a_op(last, &below)?;
    ctx.memo()
        .bs_class
        .lock()
        .expect("memo")
        .insert(letters.to_vec(), out.term_map().clone());
    Ok(out)
}

/// `b_J(lambda)`: the constant term of the operator string read from the last
/// position down, with `A*` at positions in `J` and `sigma` elsewhere above
/// the first position of `J`. `j_mask` uses bit `p - 1` for position `p`.
pub fn chevalley_coeff(
    ctx: &FlagContext,
    word: &Word,
    j_mask: u32,
    lambda: &Weight,
) -> Result<CoeffPoly> {
    check_word(ctx, word)?;
    if j_mask & !word.full_mask() != 0 {
        return usage(format!("position set {j_mask:#b} does not fit word {word}"));
    }
    if j_mask == 0 {
        return Ok(CoeffPoly::zero());
    }
    let lowest = j_mask.trailing_zeros() as usize;
    let mut g = c1_weight(ctx, lambda)?;
    for pos in (lowest..word.len()).rev() {
        let i = word.letters()[pos];
        g = if j_mask >> pos & 1 == 1 {
            a_star_op(i, &g)?
        } else {
            sigma_op(i, &g)?
        };
    }
    Ok(constant_term(&g))
}

/// Walks the operator strings of every `J` at once, sharing prefixes. Emits
/// `(kept positions, b_J)`.
fn chevalley_walk(
    word: &Word,
    pos: usize,
    g: &FlagElem,
    j_mask: u32,
    out: &mut Vec<(u32, CoeffPoly)>,
) -> Result<()> {
    if pos == 0 || g.is_zero() {
        return Ok(());
    }
    let i = word.letters()[pos - 1];
    let with = j_mask | 1 << (pos - 1);
    let starred = a_star_op(i, g)?;
    let b = constant_term(&starred);
    if !b.is_zero() {
        out.push((word.full_mask() & !with, b));
    }
    chevalley_walk(word, pos - 1, &starred, with, out)?;
    if pos > 1 {
        chevalley_walk(word, pos - 1, &sigma_op(i, g)?, j_mask, out)?;
    }
    Ok(())
}

fn c1_times_bs_terms(
    ctx: &FlagContext,
    lambda: &Weight,
    word: &Word,
) -> Result<Arc<Vec<(u32, CoeffPoly)>>> {
    let key = (lambda.clone(), word.letters().to_vec());
    if let Some(t) = ctx.memo().c1_times_bs.lock().expect("memo").get(&key) {
        return Ok(t.clone());
    }
    let mut out = Vec::new();
    chevalley_walk(word, word.len(), &c1_weight(ctx, lambda)?, 0, &mut out)?;
    let out = Arc::new(out);
    ctx.memo()
        .c1_times_bs
        .lock()
        .expect("memo")
        .insert(key, out.clone());
    Ok(out)
}

/// `c_1(L(lambda)) Z_I = sum_J b_J(lambda) Z_{I \ J}`.
pub fn c1_times_bs(ctx: &FlagContext, lambda: &Weight, word: &Word) -> Result<BSExpansion> {
    check_word(ctx, word)?;
    if lambda.rank() != ctx.n() {
        return usage(format!(
            "weight {lambda} has rank {}, expected {}",
            lambda.rank(),
            ctx.n()
        ));
    }
    let mut out = BSExpansion::zero(word.clone());
    for (mask, c) in c1_times_bs_terms(ctx, lambda, word)?.iter() {
        out.add(*mask, c.clone());
    }
    Ok(out)
}

/// Positions of `outer` selected by the relative mask `inner`.
fn compose_masks(outer: u32, inner: u32) -> u32 {
    let mut out = 0;
    let mut k = 0;
    for p in 0..32 {
        if outer >> p & 1 == 1 {
            if inner >> k & 1 == 1 {
                out |= 1 << p;
            }
            k += 1;
        }
    }
    out
}

/// `x^e Z_I` expanded one Chern class `x_i = c_1(L(-e_i))` at a time.
fn monomial_times_bs(
    ctx: &FlagContext,
    e: &[u32],
    word: &Word,
) -> Result<BTreeMap<u32, CoeffPoly>> {
    let mut state = BTreeMap::from([(word.full_mask(), CoeffPoly::one())]);
    for (i, &k) in e.iter().enumerate() {
        let lambda = -&Weight::e(ctx.n(), i + 1);
        for _ in 0..k {
            let mut next: BTreeMap<u32, CoeffPoly> = BTreeMap::new();
            for (mask, c) in &state {
                let sub = word.subword(*mask);
                for (rel, b) in c1_times_bs_terms(ctx, &lambda, &sub)?.iter() {
                    *next.entry(compose_masks(*mask, *rel)).or_default() += &(c * b);
                }
            }
            next.retain(|_, c| !c.is_zero());
            state = next;
            if state.is_empty() {
                return Ok(state);
            }
        }
    }
    Ok(state)
}

/// `f Z_I` in terms of the `Z_J`, `J` a subword of `I`.
pub fn poly_times_bs(ctx: &FlagContext, f: &FlagElem, word: &Word) -> Result<BSExpansion> {
    check_word(ctx, word)?;
    if !f.context().same(ctx) {
        return usage("element belongs to another context");
    }
    let terms: Vec<_> = f.terms().collect();
    let parts = par::map(ctx.mode(), &terms, |(e, c)| {
        monomial_times_bs(ctx, e, word).map(|m| (m, (*c).clone()))
    });
    let mut out = BSExpansion::zero(word.clone());
    for part in parts {
        let (m, c) = part?;
        for (mask, b) in m {
            out.add(mask, &b * &c);
        }
    }
    Ok(out)
}

/// `Z_left * Z_right`, indexed by subwords of `right`.
pub fn product_bs(ctx: &FlagContext, left: &Word, right: &Word) -> Result<BSExpansion> {
    poly_times_bs(ctx, &bs_class(ctx, left)?, right)
}

/// `(I^j, (lambda, beta_j))` for each position `j`, `I^j` being `I` with
/// position `j` removed.
pub fn pieri_exponents(n: usize, word: &Word, lambda: &Weight) -> Result<Vec<(Word, i64)>> {
    let betas = beta_sequence(n, word)?;
    betas
        .iter()
        .enumerate()
        .map(|(j, beta)| {
            let sub = word.subword(word.full_mask() & !(1 << j));
            Ok((sub, coroot_pairing(lambda, beta)?))
        })
        .collect()
}

/// The Chow-specialized class of the reduced word of `w`.
pub fn chow_schubert(ctx: &FlagContext, w: &Permutation) -> Result<FlagElem> {
    if w.n() != ctx.n() {
        return usage(format!(
            "permutation of {} letters in rank {}",
            w.n(),
            ctx.n()
        ));
    }
    Ok(bs_class(ctx, &reduced_word(w))?.specialize(&Theory::Chow))
}
