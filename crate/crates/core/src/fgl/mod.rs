//! The universal formal group law over `L ⊗ Q`, its inverse series and the
//! divided-difference operator it induces on two-variable series.

mod pushforward;

pub use pushforward::{pushforward_p1, symmetric_to_elementary, HostRing, PushforwardInput};

use crate::error::{usage, Error, Result};
use crate::ringcore::{exact_divide_linear, CoeffPoly, Rational, TruncSeries};
use crate::theory::Theory;

/// The universal law truncated at `cap`, with its companions.
///
/// `f` is `F(u, v)`, `chi` the formal inverse and `q` the series with
/// `F(u, v) = u + v - u*v*q(u, v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FglData {
    cap: u32,
    log: TruncSeries,
    exp: TruncSeries,
    f: TruncSeries,
    chi: TruncSeries,
    q: TruncSeries,
}

impl FglData {
    /// Builds the universal law from its logarithm
    /// `log(t) = t + sum_i b_i t^(i+1) / (i+1)`.
    pub fn universal(cap: u32) -> Result<FglData> {
        if cap < 1 {
            return usage("formal group law needs degree cap >= 1");
        }
        let mut log = TruncSeries::variable(&["t"], cap, 0);
        for i in 1..cap {
            let c = CoeffPoly::generator(i).scale(&Rational::new(1.into(), (i as i64 + 1).into()));
            log.add_term(vec![i + 1], c);
        }
        Self::from_log(log)
    }

    /// Builds a law from any logarithm `t + ...` in one variable.
    pub fn from_log(log: TruncSeries) -> Result<FglData> {
        let cap = log.cap();
        let exp = log.reverse()?;

        let uv = TruncSeries::zero(&["u", "v"], cap);
        let u = uv.var_like(0);
        let v = uv.var_like(1);
        let log_u = log.compose(std::slice::from_ref(&u))?;
        let log_v = log.compose(std::slice::from_ref(&v))?;
        let f = exp.compose(&[log_u.add(&log_v)?])?;

        let t = TruncSeries::variable(&["u"], cap, 0);
        let neg_log = log.compose(&[t])?.neg();
        let chi = exp.compose(&[neg_log])?;

        let q = Self::q_from_f(&f)?;
        Ok(FglData {
            cap,
            log,
            exp,
            f,
            chi,
            q,
        })
    }

    /// `q = (u + v - F) / (u v)` by two exact linear divisions.
    fn q_from_f(f: &TruncSeries) -> Result<TruncSeries> {
        let u = f.var_like(0);
        let v = f.var_like(1);
        let num = u.add(&v)?.sub(f)?;
        let by_u = exact_divide_linear(&num, &u)?;
        exact_divide_linear(&by_u, &v)
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn log(&self) -> &TruncSeries {
        &self.log
    }

    pub fn exp(&self) -> &TruncSeries {
        &self.exp
    }

    /// `F(u, v)`.
    pub fn law(&self) -> &TruncSeries {
        &self.f
    }

    pub fn chi(&self) -> &TruncSeries {
        &self.chi
    }

    pub fn q(&self) -> &TruncSeries {
        &self.q
    }

    /// Coefficient `a_ij` of `u^i v^j` in `F`.
    pub fn a(&self, i: u32, j: u32) -> CoeffPoly {
        self.f.coeff(&[i, j])
    }

    /// Specializes every coefficient; the result is again a formal group law.
    pub fn specialize(&self, theory: &Theory) -> FglData {
        let s = |x: &TruncSeries| x.map_coeffs(|c| theory.specialize(c));
        FglData {
            cap: self.cap,
            log: s(&self.log),
            exp: s(&self.exp),
            f: s(&self.f),
            chi: s(&self.chi),
            q: s(&self.q),
        }
    }

    /// `F(a, b)` for series `a`, `b` in a common ring.
    pub fn add_series(&self, a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
        if a.is_zero() {
            return Ok(b.clone());
        }
        if b.is_zero() {
            return Ok(a.clone());
        }
        self.f.compose(&[a.clone(), b.clone()])
    }

    /// `chi(a)`.
    pub fn inverse_series(&self, a: &TruncSeries) -> Result<TruncSeries> {
        if a.is_zero() {
            return Ok(a.clone());
        }
        self.chi.compose(std::slice::from_ref(a))
    }

    /// The n-series `[n]_F(u)` in one variable `u`.
    pub fn n_series(&self, n: i64) -> Result<TruncSeries> {
        let u = TruncSeries::variable(&["u"], self.cap, 0);
        let mut acc = u.zero_like();
        for _ in 0..n.unsigned_abs() {
            acc = self.add_series(&acc, &u)?;
        }
        if n < 0 {
            acc = self.inverse_series(&acc)?;
        }
        Ok(acc)
    }

    /// `[n]_F(a)` for a series `a` without constant term.
    pub fn n_series_at(&self, n: i64, a: &TruncSeries) -> Result<TruncSeries> {
        match n {
            0 => Ok(a.zero_like()),
            1 => Ok(a.clone()),
            -1 => self.inverse_series(a),
            _ => self.n_series(n)?.compose(std::slice::from_ref(a)),
        }
    }

    /// Left fold of `F` over `terms`, starting from zero.
    pub fn formal_sum(&self, zero: &TruncSeries, terms: &[TruncSeries]) -> Result<TruncSeries> {
        terms
            .iter()
            .try_fold(zero.clone(), |acc, t| self.add_series(&acc, t))
    }

    /// The unit `U` with `F(a_var, chi(b_var)) = (a_var - b_var) * U`, returned
    /// inverted, in the ring of `ring` raised to cap `ring.cap() + 1`.
    ///
    /// Needs `self.cap() >= ring.cap() + 2`.
    pub fn inverse_unit_factor(
        &self,
        ring: &TruncSeries,
        a_var: usize,
        b_var: usize,
    ) -> Result<TruncSeries> {
        let work = ring.cap() + 1;
        if self.cap < work + 1 {
            return Err(Error::Usage(format!(
                "formal group law known to degree {} but operator needs {}",
                self.cap,
                work + 1
            )));
        }
        let wide = ring.zero_like().recap(work + 1);
        let xa = wide.var_like(a_var);
        let xb = wide.var_like(b_var);
        let local = self.add_series(&xa, &self.inverse_series(&xb)?)?;
        let unit = exact_divide_linear(&local, &xa.sub(&xb)?)?;
        unit.truncate(work).invert_unit()
    }

    /// Checks `swap(F(a, chi(b))) = chi(F(a, chi(b)))` through the cap of
    /// `ring`.
    pub fn check_swap_identity(
        &self,
        ring: &TruncSeries,
        a_var: usize,
        b_var: usize,
    ) -> Result<()> {
        let xa = ring.var_like(a_var);
        let xb = ring.var_like(b_var);
        let local = self.add_series(&xa, &self.inverse_series(&xb)?)?;
        let lhs = local.swap_vars(a_var, b_var);
        let rhs = self.inverse_series(&local)?;
        if lhs == rhs {
            Ok(())
        } else {
            Err(Error::Internal(format!(
                "swap of the local coordinate differs from its inverse: {lhs} vs {rhs}"
            )))
        }
    }

    /// `A(f) = (1 + swap) f / F(y1, chi(y2))` for a polynomial `f` in the
    /// two variables of its ring (`y1` first).
    pub fn universal_a(&self, f: &TruncSeries) -> Result<TruncSeries> {
        if f.nvars() != 2 {
            return usage("the universal operator acts on two-variable series");
        }
        let inv_unit = self.inverse_unit_factor(f, 0, 1)?;
        divided_difference(&f.recap(inv_unit.cap()).mul(&inv_unit)?, 0, 1, f.cap())
    }
}

/// `(h - swap h) / (x_a - x_b)`, truncated to `cap`.
pub(crate) fn divided_difference(
    h: &TruncSeries,
    a: usize,
    b: usize,
    cap: u32,
) -> Result<TruncSeries> {
    let anti = h.sub(&h.swap_vars(a, b))?;
    let lin = h.var_like(a).sub(&h.var_like(b))?;
    Ok(exact_divide_linear(&anti, &lin)?.truncate(cap))
}

/// Convenience: the universal law with every coefficient in `theory`.
pub fn build_fgl(cap: u32, theory: &Theory) -> Result<FglData> {
    let u = FglData::universal(cap)?;
    Ok(match theory {
        Theory::Cobordism => u,
        t => u.specialize(t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(i: u32) -> CoeffPoly {
        CoeffPoly::generator(i)
    }

    #[test]
    fn low_coefficients_match_projective_space_classes() {
        let fgl = FglData::universal(3).unwrap();
        assert_eq!(fgl.a(1, 1), -b(1));
        let a12 = &(&b(1) * &b(1)) - &b(2);
        assert_eq!(fgl.a(2, 1), a12);
        assert_eq!(fgl.a(1, 2), a12);
    }

    #[test]
    fn chi_to_degree_three() {
        let fgl = FglData::universal(3).unwrap();
        let b1sq = &b(1) * &b(1);
        let expected = TruncSeries::from_terms(
            &["u"],
            3,
            [
                (vec![1], CoeffPoly::from_int(-1)),
                (vec![2], -b(1)),
                (vec![3], -b1sq),
            ],
        );
        assert_eq!(fgl.chi(), &expected);
    }

    #[test]
    fn n_series_small_cases() {
        let fgl = FglData::universal(2).unwrap();
        let u = TruncSeries::variable(&["u"], 2, 0);
        assert_eq!(fgl.n_series(1).unwrap(), u);
        assert_eq!(fgl.n_series(-1).unwrap(), *fgl.chi());
        assert!(fgl.n_series(0).unwrap().is_zero());
        let two = TruncSeries::from_terms(
            &["u"],
            2,
            [(vec![1], CoeffPoly::from_int(2)), (vec![2], -b(1))],
        );
        assert_eq!(fgl.n_series(2).unwrap(), two);
    }

    #[test]
    fn formal_sum_of_chi_and_x() {
        let fgl = FglData::universal(2).unwrap();
        let ring = TruncSeries::zero(&["x1", "x2"], 2);
        let x1 = ring.var_like(0);
        let x2 = ring.var_like(1);
        let s = fgl
            .formal_sum(&ring, &[fgl.inverse_series(&x1).unwrap(), x2.clone()])
            .unwrap();
        // x2 - x1 - b1 x1^2 + b1 x1 x2
        let expected = TruncSeries::from_terms(
            &["x1", "x2"],
            2,
            [
                (vec![0, 1], CoeffPoly::one()),
                (vec![1, 0], CoeffPoly::from_int(-1)),
                (vec![2, 0], -b(1)),
                (vec![1, 1], b(1)),
            ],
        );
        assert_eq!(s, expected);
        assert_eq!(
            fgl.formal_sum(&ring, std::slice::from_ref(&x1)).unwrap(),
            x1
        );
        assert!(fgl
            .formal_sum(&ring, &[x1.clone(), fgl.inverse_series(&x1).unwrap()])
            .unwrap()
            .is_zero());
        assert!(fgl.formal_sum(&ring, &[]).unwrap().is_zero());
    }

    #[test]
    fn universal_a_leading_terms() {
        let fgl = FglData::universal(5).unwrap();
        let ring = TruncSeries::zero(&["y1", "y2"], 3);
        let a1 = fgl.universal_a(&ring.one_like()).unwrap();
        assert_eq!(a1.constant_term(), b(1));
        let ay1 = fgl.universal_a(&ring.var_like(0)).unwrap();
        assert_eq!(ay1.constant_term(), CoeffPoly::one());
        assert!(ay1.coeff(&[1, 0]).is_zero());
        assert_eq!(ay1.coeff(&[1, 1]), fgl.a(1, 2));
    }

    #[test]
    fn operator_needs_headroom() {
        let fgl = FglData::universal(3).unwrap();
        let ring = TruncSeries::zero(&["y1", "y2"], 3);
        assert!(matches!(
            fgl.universal_a(&ring.one_like()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn swap_identity_holds() {
        let fgl = FglData::universal(6).unwrap();
        let ring = TruncSeries::zero(&["y1", "y2"], 6);
        fgl.check_swap_identity(&ring, 0, 1).unwrap();
    }
}
