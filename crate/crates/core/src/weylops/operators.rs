//! `sigma_i`, `A_i` and `A*_i` on the flag ring.
//!
//! With `F(x_{i+1}, chi(x_i)) = (x_{i+1} - x_i) U_i`,
//! `A_i f = d_i(f U_i^{-1})` and `A*_i f = U_i^{-1} d_i(f)`, where
//! `d_i h = (h - sigma_i h) / (x_{i+1} - x_i)`.

use crate::error::{usage, Result};
use crate::fgl::divided_difference;
use crate::flagring::{FlagContext, FlagElem};
use crate::ringcore::TruncSeries;

fn check_lift(ctx: &FlagContext, i: usize, p: &TruncSeries) -> Result<()> {
    ctx.check_root_index(i)?;
    if p.nvars() != ctx.n() {
        return usage(format!(
            "lift has {} variables, expected {}",
            p.nvars(),
            ctx.n()
        ));
    }
    Ok(())
}

fn lift(a: &FlagElem) -> TruncSeries {
    a.to_series(a.context().d() + 1)
}

/// Same variables as the context, so reduction accepts the result.
fn into_context(ctx: &FlagContext, p: &TruncSeries, cap: u32) -> TruncSeries {
    let mapping: Vec<usize> = (0..ctx.n()).collect();
    p.embed(&ctx.ring(cap), &mapping)
}

pub fn sigma_op_raw(ctx: &FlagContext, i: usize, p: &TruncSeries) -> Result<FlagElem> {
    check_lift(ctx, i, p)?;
    ctx.reduce_canonical(&into_context(ctx, &p.swap_vars(i - 1, i), p.cap()))
}

pub fn sigma_op(i: usize, a: &FlagElem) -> Result<FlagElem> {
    sigma_op_raw(a.context(), i, &lift(a))
}

/// `A_i` on an arbitrary polynomial representative.
pub fn a_op_raw(ctx: &FlagContext, i: usize, p: &TruncSeries) -> Result<FlagElem> {
    check_lift(ctx, i, p)?;
    let d = ctx.d();
    let f = into_context(ctx, p, p.cap()).recap(d + 1);
    let h = f.mul(ctx.inverse_unit(i))?;
    ctx.reduce_canonical(&divided_difference(&h, i, i - 1, d)?)
}

pub fn a_op(i: usize, a: &FlagElem) -> Result<FlagElem> {
    a_op_raw(a.context(), i, &lift(a))
}

/// `A*_i` on an arbitrary polynomial representative.
pub fn a_star_op_raw(ctx: &FlagContext, i: usize, p: &TruncSeries) -> Result<FlagElem> {
    check_lift(ctx, i, p)?;
    let d = ctx.d();
    let f = into_context(ctx, p, p.cap()).recap(d + 1);
    let quotient = divided_difference(&f, i, i - 1, d)?.recap(d + 1);
    let q = quotient.mul(ctx.inverse_unit(i))?;
    ctx.reduce_canonical(&q.truncate(d))
}

pub fn a_star_op(i: usize, a: &FlagElem) -> Result<FlagElem> {
    a_star_op_raw(a.context(), i, &lift(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flagring::{c1_weight, constant_term, point_class, Weight};
    use crate::ringcore::CoeffPoly;
    use crate::theory::Theory;
    use crate::weylops::{coroot_pairing, weyl_act, Permutation};

    #[test]
    fn a2_of_x3() {
        let ctx = FlagContext::new(3).unwrap();
        let x3 = FlagElem::x(&ctx, 3);
        let a12 = ctx.fgl().a(1, 2);
        let expected = &FlagElem::one(&ctx) + &FlagElem::monomial(&ctx, &[0, 1, 1]).scale(&a12);
        assert_eq!(a_op(2, &x3).unwrap(), expected);
    }

    #[test]
    fn sigma_is_an_involution_matching_weyl_action() {
        let ctx = FlagContext::new(3).unwrap();
        let lam = Weight::new(vec![2, -1, 3]);
        let c = c1_weight(&ctx, &lam).unwrap();
        for i in 1..3 {
            let s = sigma_op(i, &c).unwrap();
            let sl = weyl_act(&Permutation::simple(3, i), &lam).unwrap();
            assert_eq!(s, c1_weight(&ctx, &sl).unwrap());
            assert_eq!(sigma_op(i, &s).unwrap(), c);
        }
    }

    #[test]
    fn a_star_constant_term_is_pairing() {
        let ctx = FlagContext::new(3).unwrap();
        let lam = Weight::new(vec![3, 1, -2]);
        let c = c1_weight(&ctx, &lam).unwrap();
        for i in 1..3 {
            let ct = constant_term(&a_star_op(i, &c).unwrap());
            let expected = coroot_pairing(&lam, &Weight::simple_root(3, i)).unwrap();
            assert_eq!(ct, CoeffPoly::from_int(expected));
        }
    }

    #[test]
    fn chow_operators_coincide() {
        let ctx = FlagContext::with_options(3, Theory::Chow, Default::default()).unwrap();
        let pt = point_class(&ctx);
        for i in 1..3 {
            let a = a_op(i, &pt).unwrap();
            assert_eq!(a, a_star_op(i, &pt).unwrap());
        }
    }

    #[test]
    fn star_kills_symmetric_elements() {
        let ctx = FlagContext::new(3).unwrap();
        let g = &FlagElem::x(&ctx, 1) * &FlagElem::x(&ctx, 2);
        assert!(a_star_op(1, &g).unwrap().is_zero());
        assert!(a_op(3, &g).is_err());
    }
}
