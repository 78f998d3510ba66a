use std::collections::BTreeMap;

use super::bs_class;
use crate::error::{Error, Result};
use crate::flagring::{FlagContext, FlagElem};
use crate::linalg::{determinant, inverse, Matrix};
use crate::ringcore::{CoeffPoly, Exponents, Rational};
use crate::weylops::{reduced_word, Permutation, Word};

/// The chosen basis words `I(w)`, one per permutation.
pub fn basis_words(n: usize) -> Vec<(Permutation, Word)> {
    Permutation::all(n)
        .into_iter()
        .map(|w| {
            let word = reduced_word(&w);
            (w, word)
        })
        .collect()
}

/// Lowest-degree parts of the basis classes whose leading x-degree is
/// `degree`, written in the canonical monomials of that degree.
#[derive(Debug, Clone)]
pub struct TransitionBlock {
    pub degree: u32,
    pub perms: Vec<Permutation>,
    pub monomials: Vec<Exponents>,
    /// `matrix[r][c]`: coefficient of `monomials[c]` in the class of `perms[r]`.
    pub matrix: Matrix,
    pub determinant: Rational,
}

fn basis_classes(ctx: &FlagContext) -> Result<Vec<(Permutation, FlagElem)>> {
    basis_words(ctx.n())
        .into_iter()
        .map(|(w, word)| Ok((w, bs_class(ctx, &word)?)))
        .collect()
}

fn blocks_from(
    ctx: &FlagContext,
    classes: &[(Permutation, FlagElem)],
) -> Result<Vec<TransitionBlock>> {
    let d = ctx.d();
    let all = ctx.canonical_monomials();
    (0..=d)
        .map(|k| {
            let monomials: Vec<Exponents> = all
                .iter()
                .filter(|e| e.iter().sum::<u32>() == k)
                .cloned()
                .collect();
            let perms: Vec<Permutation> = classes
                .iter()
                .filter(|(w, _)| w.length() as u32 + k == d)
                .map(|(w, _)| w.clone())
                .collect();
            let mut matrix = Vec::new();
            for (w, class) in classes.iter().filter(|(w, _)| perms.contains(w)) {
                let row = monomials
                    .iter()
                    .map(|m| {
                        class.coeff(m).as_rational().ok_or_else(|| {
                            Error::Internal(format!(
                                "leading coefficient of the class of {w} is not a number"
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                matrix.push(row);
            }
            if perms.len() != monomials.len() {
                return Err(Error::Internal(format!(
                    "{} basis classes but {} monomials in degree {k}",
                    perms.len(),
                    monomials.len()
                )));
            }
            let det = determinant(&matrix);
            Ok(TransitionBlock {
                degree: k,
                perms,
                monomials,
                matrix,
                determinant: det,
            })
        })
        .collect()
}

/// The leading transition blocks, one per x-degree.
pub fn leading_transition_blocks(ctx: &FlagContext) -> Result<Vec<TransitionBlock>> {
    blocks_from(ctx, &basis_classes(ctx)?)
}

/// Solves `a = sum_w c_w R_{I(w)}` by graded elimination, lowest x-degree
/// first.
pub fn expand_in_bs_basis(
    ctx: &FlagContext,
    a: &FlagElem,
) -> Result<BTreeMap<Permutation, CoeffPoly>> {
    if !a.context().same(ctx) {
        return Err(Error::Usage("element belongs to another context".into()));
    }
    let classes = basis_classes(ctx)?;
    let blocks = blocks_from(ctx, &classes)?;
    let class_of: BTreeMap<&Permutation, &FlagElem> = classes.iter().map(|(w, c)| (w, c)).collect();
    let mut rest = a.clone();
    let mut out = BTreeMap::new();
    for block in &blocks {
        let unit = block.determinant == Rational::from_integer(1.into())
            || block.determinant == Rational::from_integer((-1).into());
        if !unit {
            return Err(Error::Internal(format!(
                "leading transition matrix in degree {} has determinant {}",
                block.degree, block.determinant
            )));
        }
        let inv = inverse(&block.matrix).expect("unimodular matrix is invertible");
        let target: Vec<CoeffPoly> = block.monomials.iter().map(|m| rest.coeff(m)).collect();
        // c = target * M^{-1}
        for (col, w) in block.perms.iter().enumerate() {
            let mut c = CoeffPoly::zero();
            for (row, t) in target.iter().enumerate() {
                c += &t.scale(&inv[row][col]);
            }
            if !c.is_zero() {
                rest = &rest - &class_of[w].scale(&c);
                out.insert(w.clone(), c);
            }
        }
    }
    if !rest.is_zero() {
        return Err(Error::Internal(format!(
            "basis expansion left a remainder {rest}"
        )));
    }
    Ok(out)
}
