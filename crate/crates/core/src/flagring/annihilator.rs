use std::collections::BTreeMap;

use num_traits::Zero;

use super::{point_class, FlagContext, FlagElem};
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::ringcore::{BMonomial, CoeffPoly, Exponents, Rational};

/// Elements of x-degree `x_degree`, with coefficients of degree at least
/// `-max_weight`, killed by every non-constant monomial. Returned as a basis
/// over the rationals.
pub fn annihilator(ctx: &FlagContext, x_degree: u32, max_weight: u32) -> Result<Vec<FlagElem>> {
    let monomials = ctx.canonical_monomials();
    let sources: Vec<&Exponents> = monomials
        .iter()
        .filter(|e| e.iter().sum::<u32>() == x_degree)
        .collect();
    let multipliers: Vec<&Exponents> = monomials
        .iter()
        .filter(|e| e.iter().any(|&k| k > 0))
        .collect();
    let bmonos: Vec<BMonomial> = (0..=max_weight).flat_map(BMonomial::with_weight).collect();

    let unknowns: Vec<(usize, usize)> = (0..bmonos.len())
        .flat_map(|b| (0..sources.len()).map(move |m| (b, m)))
        .collect();
    // row key: (b-monomial, multiplier, resulting monomial)
    let mut rows: BTreeMap<(usize, usize, Exponents), Vec<(usize, Rational)>> = BTreeMap::new();
    for (mi, m) in sources.iter().enumerate() {
        for (ui, mu) in multipliers.iter().enumerate() {
            let prod = &FlagElem::monomial(ctx, m) * &FlagElem::monomial(ctx, mu);
            for (e, c) in prod.terms() {
                let k = c.as_rational().ok_or_else(|| {
                    Error::Internal("monomial products must have numeric coefficients".into())
                })?;
                for b in 0..bmonos.len() {
                    let col = b * sources.len() + mi;
                    rows.entry((b, ui, e.clone()))
                        .or_default()
                        .push((col, k.clone()));
                }
            }
        }
    }
    let matrix: Vec<Vec<Rational>> = rows
        .into_values()
        .map(|entries| {
            let mut row = vec![Rational::zero(); unknowns.len()];
            for (c, v) in entries {
                row[c] += v;
            }
            row
        })
        .collect();

    let kernel = if matrix.is_empty() {
        (0..unknowns.len())
            .map(|k| {
                (0..unknowns.len())
                    .map(|j| Rational::from_integer((k == j).into()))
                    .collect()
            })
            .collect()
    } else {
        nullspace(&matrix, unknowns.len())
    };
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut p = ctx.ring(ctx.d());
            for (&(b, m), x) in unknowns.iter().zip(&v) {
                if !x.is_zero() {
                    p.add_term(
                        sources[m].clone(),
                        CoeffPoly::monomial(bmonos[b].clone(), x.clone()),
                    );
                }
            }
            ctx.reduce_terms(p.terms())
        })
        .collect())
}

/// Whether `a` is a coefficient multiple of the point class.
pub fn is_point_multiple(a: &FlagElem) -> bool {
    let pt = point_class(a.context());
    let (e, _) = pt.terms().next().expect("point class is a monomial");
    a.terms().all(|(f, _)| f == e)
}
