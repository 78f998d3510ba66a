//! Push-forward along a projective line bundle `P(E) -> X` for a rank-two
//! bundle `E`, expressed through the universal operator.

use super::FglData;
use crate::error::{Error, Result};
use crate::ringcore::{CoeffPoly, TruncSeries};

/// A commutative ring receiving push-forwards: `c1(E)`, `c2(E)` and the
/// coefficients of `f(xi)` live here.
pub trait HostRing: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &CoeffPoly) -> Self;
}

impl HostRing for CoeffPoly {
    fn zero_like(&self) -> Self {
        CoeffPoly::zero()
    }
    fn one_like(&self) -> Self {
        CoeffPoly::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &CoeffPoly) -> Self {
        self * c
    }
}

impl HostRing for TruncSeries {
    fn zero_like(&self) -> Self {
        TruncSeries::zero_like(self)
    }
    fn one_like(&self) -> Self {
        TruncSeries::one_like(self)
    }
    fn add(&self, other: &Self) -> Self {
        TruncSeries::add(self, other).expect("host series share a ring")
    }
    fn mul(&self, other: &Self) -> Self {
        TruncSeries::mul(self, other).expect("host series share a ring")
    }
    fn scale(&self, c: &CoeffPoly) -> Self {
        TruncSeries::scale(self, c)
    }
}

/// `f(xi) = constant + linear * xi` on `P(E)`, already reduced by
/// `xi^2 = c1(E) xi - c2(E)`.
#[derive(Debug, Clone)]
pub struct PushforwardInput<R> {
    pub constant: R,
    pub linear: R,
    pub c1e: R,
    pub c2e: R,
}

impl<R: HostRing> PushforwardInput<R> {
    /// Reduces `sum_k coeffs[k] xi^k` with the projective bundle relation.
    pub fn from_polynomial(coeffs: &[R], c1e: R, c2e: R) -> Self {
        let zero = c1e.zero_like();
        // xi^k = p_k + r_k xi
        let (mut p, mut r) = (c1e.one_like(), zero.clone());
        let (mut constant, mut linear) = (zero.clone(), zero.clone());
        let minus_one = CoeffPoly::from_int(-1);
        for c in coeffs {
            constant = constant.add(&c.mul(&p));
            linear = linear.add(&c.mul(&r));
            // xi^(k+1) = p xi + r (c1 xi - c2)
            let np = r.mul(&c2e).scale(&minus_one);
            let nr = p.add(&r.mul(&c1e));
            p = np;
            r = nr;
        }
        PushforwardInput {
            constant,
            linear,
            c1e,
            c2e,
        }
    }
}

/// Rewrites a symmetric series in `(y1, y2)` in terms of `e1 = y1 + y2` and
/// `e2 = y1 y2`. The result has variables `(c1E, c2E)`.
pub fn symmetric_to_elementary(p: &TruncSeries) -> Result<TruncSeries> {
    if p.nvars() != 2 {
        return Err(Error::Usage("symmetrization expects two variables".into()));
    }
    if p.swap_vars(0, 1) != *p {
        return Err(Error::Internal(format!("series {p} is not symmetric")));
    }
    let e_ring = TruncSeries::zero(&["c1E", "c2E"], p.cap());
    let y = p.zero_like();
    let e1 = y.var_like(0).add(&y.var_like(1))?;
    let e2 = y.var_like(0).mul(&y.var_like(1))?;
    let mut rest = p.clone();
    let mut out = e_ring.zero_like();
    // lex-leading term has a >= b by symmetry
    while let Some((lead, c)) = rest.terms().max_by(|x, y| x.0.cmp(y.0)) {
        let (a, b) = (lead[0], lead[1]);
        if a < b {
            return Err(Error::Internal(
                "symmetric reduction lost its leading term".into(),
            ));
        }
        let c = c.clone();
        let piece = e1.pow(a - b).mul(&e2.pow(b))?.scale(&c);
        rest = rest.sub(&piece)?;
        out.add_term(vec![a - b, b], c);
    }
    Ok(out)
}

fn evaluate_elementary<R: HostRing>(poly: &TruncSeries, c1e: &R, c2e: &R) -> R {
    let mut out = c1e.zero_like();
    for (e, c) in poly.terms() {
        let mut term = c1e.one_like().scale(c);
        for _ in 0..e[0] {
            term = term.mul(c1e);
        }
        for _ in 0..e[1] {
            term = term.mul(c2e);
        }
        out = out.add(&term);
    }
    out
}

/// `pi_*(f(xi))` computed as `A(f(y1))` evaluated at the Chern roots of `E`.
///
/// The operator is evaluated to degree `fgl.cap() - 2`; pass a law built
/// with at least two degrees of headroom over the dimension of the base.
pub fn pushforward_p1<R: HostRing>(fgl: &FglData, input: &PushforwardInput<R>) -> Result<R> {
    let cap = fgl.cap().checked_sub(2).ok_or_else(|| {
        Error::Usage("push-forward needs a formal group law of degree at least 2".into())
    })?;
    let ring = TruncSeries::zero(&["y1", "y2"], cap);
    let a_one = symmetric_to_elementary(&fgl.universal_a(&ring.one_like())?)?;
    let a_y1 = symmetric_to_elementary(&fgl.universal_a(&ring.var_like(0))?)?;
    let push_one = evaluate_elementary(&a_one, &input.c1e, &input.c2e);
    let push_xi = evaluate_elementary(&a_y1, &input.c1e, &input.c2e);
    Ok(input
        .constant
        .mul(&push_one)
        .add(&input.linear.mul(&push_xi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringcore::rat;
    use crate::theory::Theory;

    fn input(constant: i64, linear: i64) -> PushforwardInput<CoeffPoly> {
        PushforwardInput {
            constant: CoeffPoly::from_int(constant),
            linear: CoeffPoly::from_int(linear),
            c1e: CoeffPoly::zero(),
            c2e: CoeffPoly::zero(),
        }
    }

    #[test]
    fn chow_degenerations() {
        let chow = FglData::universal(5).unwrap().specialize(&Theory::Chow);
        assert!(pushforward_p1(&chow, &input(1, 0)).unwrap().is_zero());
        assert!(pushforward_p1(&chow, &input(0, 1)).unwrap().is_one());
    }

    #[test]
    fn ktheory_degenerations() {
        let beta = rat(3, 2);
        let k = FglData::universal(5)
            .unwrap()
            .specialize(&Theory::KTheory(beta.clone()));
        assert_eq!(
            pushforward_p1(&k, &input(1, 0)).unwrap(),
            CoeffPoly::from_rational(beta)
        );
        assert!(pushforward_p1(&k, &input(0, 1)).unwrap().is_one());
    }

    #[test]
    fn trivial_bundle_gives_class_of_p1() {
        // over a point the push-forward of 1 is [P^1] = b1
        let fgl = FglData::universal(5).unwrap();
        assert_eq!(
            pushforward_p1(&fgl, &input(1, 0)).unwrap(),
            CoeffPoly::generator(1)
        );
    }

    #[test]
    fn reduction_by_bundle_relation() {
        // xi^2 = c1 xi - c2
        let c1 = CoeffPoly::from_int(3);
        let c2 = CoeffPoly::from_int(5);
        let coeffs = [CoeffPoly::zero(), CoeffPoly::zero(), CoeffPoly::one()];
        let red = PushforwardInput::from_polynomial(&coeffs, c1, c2);
        assert_eq!(red.constant, CoeffPoly::from_int(-5));
        assert_eq!(red.linear, CoeffPoly::from_int(3));
    }

    #[test]
    fn symmetric_reduction_round_trip() {
        let ring = TruncSeries::zero(&["y1", "y2"], 4);
        let y1 = ring.var_like(0);
        let y2 = ring.var_like(1);
        // y1^2 + y2^2 = e1^2 - 2 e2
        let p = y1.mul(&y1).unwrap().add(&y2.mul(&y2).unwrap()).unwrap();
        let e = symmetric_to_elementary(&p).unwrap();
        assert_eq!(e.coeff(&[2, 0]), CoeffPoly::one());
        assert_eq!(e.coeff(&[0, 1]), CoeffPoly::from_int(-2));
        assert!(matches!(
            symmetric_to_elementary(&y1),
            Err(Error::Internal(_))
        ));
    }
}
