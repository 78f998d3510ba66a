//! Multivariate power series over [`CoeffPoly`] truncated at a total
//! x-degree.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::coeff::{CoeffPoly, Rational};
use crate::error::{usage, Error, Result};

/// Exponent vector, one entry per variable.
pub type Exponents = Vec<u32>;

fn total_degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
}

/// A power series truncated at total degree `cap`.
///
/// Terms above the cap are dropped by every operation. Two series can only
/// be combined when they have the same variable list and the same cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    vars: Arc<Vec<String>>,
    cap: u32,
    terms: BTreeMap<Exponents, CoeffPoly>,
}

impl TruncSeries {
    pub fn zero(vars: &[&str], cap: u32) -> Self {
        Self::zero_shared(Arc::new(vars.iter().map(|s| s.to_string()).collect()), cap)
    }

    pub(crate) fn zero_shared(vars: Arc<Vec<String>>, cap: u32) -> Self {
        TruncSeries {
            vars,
            cap,
            terms: BTreeMap::new(),
        }
    }

    /// Zero series on the same variables and cap as `self`.
    pub fn zero_like(&self) -> Self {
        Self::zero_shared(self.vars.clone(), self.cap)
    }

    pub fn constant_like(&self, c: CoeffPoly) -> Self {
        let mut out = self.zero_like();
        out.add_term(vec![0; self.nvars()], c);
        out
    }

    pub fn one_like(&self) -> Self {
        self.constant_like(CoeffPoly::one())
    }

    /// The variable with position `index`, as a series on `self`'s ring.
    pub fn var_like(&self, index: usize) -> Self {
        assert!(index < self.nvars(), "variable index out of range");
        let mut out = self.zero_like();
        let mut e = vec![0; self.nvars()];
        e[index] = 1;
        out.add_term(e, CoeffPoly::one());
        out
    }

    pub fn constant(vars: &[&str], cap: u32, c: CoeffPoly) -> Self {
        Self::zero(vars, cap).constant_like(c)
    }

    pub fn variable(vars: &[&str], cap: u32, index: usize) -> Self {
        Self::zero(vars, cap).var_like(index)
    }

    pub fn from_terms(
        vars: &[&str],
        cap: u32,
        terms: impl IntoIterator<Item = (Exponents, CoeffPoly)>,
    ) -> Self {
        let mut out = Self::zero(vars, cap);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length mismatch");
            out.add_term(e, c);
        }
        out
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &CoeffPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> CoeffPoly {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> CoeffPoly {
        self.coeff(&vec![0; self.nvars()])
    }

    /// Adds `c * x^e`, silently dropping it when `e` is above the cap.
    pub fn add_term(&mut self, e: Exponents, c: CoeffPoly) {
        if c.is_zero() || total_degree(&e) > self.cap {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_ring(&self, other: &TruncSeries) -> bool {
        self.cap == other.cap && (Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars)
    }

    fn check_ring(&self, other: &TruncSeries) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            usage(format!(
                "series rings differ: {:?} cap {} vs {:?} cap {}",
                self.vars, self.cap, other.vars, other.cap
            ))
        }
    }

    /// Exact truncated ring arithmetic.
    pub fn arith(&self, other: &TruncSeries, op: SeriesOp) -> Result<TruncSeries> {
        self.check_ring(other)?;
        Ok(match op {
            SeriesOp::Add => self.add_unchecked(other),
            SeriesOp::Sub => self.sub_unchecked(other),
            SeriesOp::Mul => self.mul_unchecked(other),
        })
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.arith(other, SeriesOp::Add)
    }

    pub fn sub(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.arith(other, SeriesOp::Sub)
    }

    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.arith(other, SeriesOp::Mul)
    }

    fn add_unchecked(&self, other: &TruncSeries) -> TruncSeries {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn sub_unchecked(&self, other: &TruncSeries) -> TruncSeries {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    fn mul_unchecked(&self, other: &TruncSeries) -> TruncSeries {
        let mut out = self.zero_like();
        for (ea, ca) in &self.terms {
            let da = total_degree(ea);
            for (eb, cb) in &other.terms {
                if da + total_degree(eb) > self.cap {
                    continue;
                }
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn neg(&self) -> TruncSeries {
        TruncSeries {
            vars: self.vars.clone(),
            cap: self.cap,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &CoeffPoly) -> TruncSeries {
        let mut out = self.zero_like();
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> TruncSeries {
        let mut out = self.one_like();
        for _ in 0..k {
            out = out.mul_unchecked(self);
        }
        out
    }

    /// Applies `f` to every coefficient, e.g. to specialize the theory.
    pub fn map_coeffs(&self, f: impl Fn(&CoeffPoly) -> CoeffPoly) -> TruncSeries {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Drops every term above `cap`; `cap` must not exceed the current cap.
    pub fn truncate(&self, cap: u32) -> TruncSeries {
        assert!(cap <= self.cap, "truncate cannot raise the cap");
        self.recap(cap)
    }

    /// Re-reads the stored terms with a different cap. Raising the cap is
    /// only meaningful when the series is known to be an exact polynomial.
    pub fn recap(&self, cap: u32) -> TruncSeries {
        let mut out = Self::zero_shared(self.vars.clone(), cap);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Exchanges variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> TruncSeries {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.swap(i, j);
            out.add_term(e, c.clone());
        }
        out
    }

    /// Moves this series into the ring of `target`, sending variable `k` of
    /// `self` to variable `mapping[k]` of `target`.
    pub fn embed(&self, target: &TruncSeries, mapping: &[usize]) -> TruncSeries {
        assert_eq!(mapping.len(), self.nvars());
        let mut out = target.zero_like();
        for (e, c) in &self.terms {
            let mut f = vec![0; target.nvars()];
            for (k, &ek) in e.iter().enumerate() {
                f[mapping[k]] += ek;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Substitutes `subs[k]` for variable `k`. All substitutes must share a
    /// ring and have zero constant term; the result lives in their ring.
    pub fn compose(&self, subs: &[TruncSeries]) -> Result<TruncSeries> {
        if subs.len() != self.nvars() {
            return usage(format!(
                "compose expects {} substitutes, got {}",
                self.nvars(),
                subs.len()
            ));
        }
        let Some(first) = subs.first() else {
            // no variables: the series is a constant
            return usage("compose needs at least one variable");
        };
        for s in subs {
            first.check_ring(s)?;
            if !s.constant_term().is_zero() {
                return usage("compose requires substitutes without constant term");
            }
        }
        if first.cap > self.cap {
            return usage(format!(
                "cannot compose a series known to degree {} into cap {}",
                self.cap, first.cap
            ));
        }
        // powers[k][p] = subs[k]^p
        let mut powers: Vec<Vec<TruncSeries>> = Vec::with_capacity(subs.len());
        for (k, s) in subs.iter().enumerate() {
            let maxp = self.terms.keys().map(|e| e[k]).max().unwrap_or(0);
            let mut row = vec![s.one_like()];
            for p in 1..=maxp {
                let next = row[p as usize - 1].mul_unchecked(s);
                row.push(next);
            }
            powers.push(row);
        }
        let mut out = first.zero_like();
        for (e, c) in &self.terms {
            if total_degree(e) > first.cap {
                continue;
            }
            let mut term = first.constant_like(c.clone());
            for (k, &p) in e.iter().enumerate() {
                if p > 0 {
                    term = term.mul_unchecked(&powers[k][p as usize]);
                }
            }
            out = out.add_unchecked(&term);
        }
        Ok(out)
    }

    /// Multiplicative inverse of a series whose constant term is a nonzero
    /// rational.
    pub fn invert_unit(&self) -> Result<TruncSeries> {
        let c0 = self.constant_term();
        let r = match c0.as_rational() {
            Some(r) if !r.is_zero() => r,
            Some(_) => return Err(Error::NotAUnit("constant term is zero".into())),
            None => {
                return Err(Error::NotAUnit(format!(
                    "constant term {c0} is not rational"
                )))
            }
        };
        let inv0 = CoeffPoly::from_rational(Rational::one() / r);
        // s = c0 (1 + n), with n nilpotent modulo the cap
        let normalized = self.scale(&inv0);
        let nil = normalized.sub_unchecked(&self.one_like());
        let mut out = self.one_like();
        let mut power = self.one_like();
        for _ in 0..self.cap {
            power = power.mul_unchecked(&nil).neg();
            if power.is_zero() {
                break;
            }
            out = out.add_unchecked(&power);
        }
        Ok(out.scale(&inv0))
    }

    /// Compositional inverse of a single-variable series `t + ...`.
    pub fn reverse(&self) -> Result<TruncSeries> {
        if self.nvars() != 1 {
            return usage("reversion needs a single-variable series");
        }
        if !self.constant_term().is_zero() {
            return usage("reversion needs a zero constant term");
        }
        if !self.coeff(&[1]).is_one() {
            return usage("reversion needs linear coefficient 1");
        }
        let mut r = self.var_like(0);
        for k in 2..=self.cap {
            let err = self.compose(std::slice::from_ref(&r))?.coeff(&[k]);
            r.add_term(vec![k], -err);
        }
        Ok(r)
    }

    /// Whether every term has the same total degree, counting both the
    /// x-degree and the graded degree of its coefficient.
    pub fn is_homogeneous(&self) -> bool {
        let mut seen: Option<i64> = None;
        for (e, c) in &self.terms {
            for d in c.degrees() {
                let t = total_degree(e) as i64 + d;
                match seen {
                    None => seen = Some(t),
                    Some(s) if s != t => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// Human-readable rendering, lowest x-degree first.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| total_degree(a).cmp(&total_degree(b)).then_with(|| b.cmp(a)));
        let parts: Vec<String> = keys
            .into_iter()
            .map(|e| {
                let c = &self.terms[e];
                let mono = render_monomial(&self.vars, e);
                match (mono.is_empty(), c.len()) {
                    (true, _) => format!("({c})"),
                    (false, 1) if c.is_one() => mono,
                    _ => format!("({c})*{mono}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

pub(crate) fn render_monomial(vars: &[String], e: &[u32]) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &p)| p > 0)
        .map(|(k, &p)| {
            if p == 1 {
                vars[k].clone()
            } else {
                format!("{}^{}", vars[k], p)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Exact division of `num` by a linear form `linear_factor` with rational
/// coefficients, via multivariate division on the first variable that the
/// form involves. Any leftover remainder is reported as a divisibility
/// violation.
pub fn exact_divide_linear(num: &TruncSeries, linear_factor: &TruncSeries) -> Result<TruncSeries> {
    num.check_ring(linear_factor)?;
    let n = num.nvars();
    let mut form: Vec<Rational> = vec![Rational::zero(); n];
    for (e, c) in &linear_factor.terms {
        if total_degree(e) != 1 {
            return usage(format!("divisor {linear_factor} is not a linear form"));
        }
        let Some(r) = c.as_rational() else {
            return usage(format!(
                "divisor {linear_factor} has non-rational coefficients"
            ));
        };
        let k = e.iter().position(|&p| p == 1).expect("degree-one monomial");
        form[k] = r;
    }
    let Some(pivot) = form.iter().position(|r| !r.is_zero()) else {
        return usage("division by the zero form");
    };
    let inv_lead = CoeffPoly::from_rational(Rational::one() / &form[pivot]);

    let mut rem = num.terms.clone();
    let mut quot = num.zero_like();
    loop {
        let top = rem.keys().map(|e| e[pivot]).max().unwrap_or(0);
        if top == 0 {
            break;
        }
        let layer: Vec<(Exponents, CoeffPoly)> = rem
            .iter()
            .filter(|(e, _)| e[pivot] == top)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        for (e, c) in layer {
            let mut qe = e.clone();
            qe[pivot] -= 1;
            let qc = &c * &inv_lead;
            for (k, r) in form.iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                let mut te = qe.clone();
                te[k] += 1;
                let slot = rem.entry(te.clone()).or_default();
                *slot -= &qc.scale(r);
                if slot.is_zero() {
                    rem.remove(&te);
                }
            }
            quot.add_term(qe, qc);
        }
    }
    if let Some((e, c)) = rem.iter().next() {
        return Err(Error::DivisibilityViolation(format!(
            "remainder term ({c})*{} when dividing by {linear_factor}",
            render_monomial(&num.vars, e)
        )));
    }
    Ok(quot)
}

/// Division `num / den` where `den = linear_factor * unit`. Divides by the
/// linear factor exactly, then multiplies by the inverse of the unit.
///
/// The returned quotient satisfies `q * den = num` through the cap; its
/// terms at the cap itself are not determined by the inputs and are zero.
pub fn exact_divide(
    num: &TruncSeries,
    den: &TruncSeries,
    linear_factor: &TruncSeries,
) -> Result<TruncSeries> {
    num.check_ring(den)?;
    let unit = exact_divide_linear(den, linear_factor)?;
    let unit = unit.truncate(den.cap.saturating_sub(1)).recap(den.cap);
    let inv = unit.invert_unit()?;
    let q0 = exact_divide_linear(num, linear_factor)?;
    let q = q0.mul_unchecked(&inv);
    Ok(q.truncate(num.cap.saturating_sub(1)).recap(num.cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringcore::coeff::rat;

    fn b(i: u32) -> CoeffPoly {
        CoeffPoly::generator(i)
    }

    fn uni(cap: u32, coeffs: &[(u32, CoeffPoly)]) -> TruncSeries {
        TruncSeries::from_terms(
            &["t"],
            cap,
            coeffs.iter().map(|(k, c)| (vec![*k], c.clone())),
        )
    }

    #[test]
    fn monomial_product() {
        let u = TruncSeries::variable(&["u"], 3, 0);
        let p = u.mul(&u).unwrap();
        assert_eq!(
            p,
            TruncSeries::from_terms(&["u"], 3, [(vec![2], CoeffPoly::one())])
        );
    }

    #[test]
    fn subtraction_keeps_b1_term() {
        let u = TruncSeries::variable(&["u"], 3, 0);
        let s = TruncSeries::from_terms(&["u"], 3, [(vec![1], CoeffPoly::one()), (vec![2], b(1))]);
        let d = s.sub(&u).unwrap();
        assert_eq!(d, TruncSeries::from_terms(&["u"], 3, [(vec![2], b(1))]));
    }

    #[test]
    fn truncation_discards_quadratic_terms() {
        let u = TruncSeries::variable(&["u", "v"], 1, 0);
        let v = TruncSeries::variable(&["u", "v"], 1, 1);
        let s = u.add(&v).unwrap();
        assert!(s.mul(&s).unwrap().is_zero());
    }

    #[test]
    fn mismatched_rings_are_usage_errors() {
        let a = TruncSeries::variable(&["u"], 3, 0);
        let b = TruncSeries::variable(&["u"], 2, 0);
        let c = TruncSeries::variable(&["v"], 3, 0);
        assert!(matches!(a.add(&b), Err(Error::Usage(_))));
        assert!(matches!(a.mul(&c), Err(Error::Usage(_))));
    }

    #[test]
    fn invert_geometric_series() {
        let s = uni(2, &[(0, CoeffPoly::one()), (1, b(1))]);
        let t = s.invert_unit().unwrap();
        let expected = uni(2, &[(0, CoeffPoly::one()), (1, -b(1)), (2, &b(1) * &b(1))]);
        assert_eq!(t, expected);
        assert_eq!(s.mul(&t).unwrap(), s.one_like());
    }

    #[test]
    fn invert_constants() {
        let one = uni(3, &[(0, CoeffPoly::one())]);
        assert_eq!(one.invert_unit().unwrap(), one);
        let two = uni(3, &[(0, CoeffPoly::from_int(2))]);
        assert_eq!(
            two.invert_unit().unwrap(),
            uni(3, &[(0, CoeffPoly::from_rational(rat(1, 2)))])
        );
    }

    #[test]
    fn non_units_are_rejected() {
        let s = uni(3, &[(1, CoeffPoly::one())]);
        assert!(matches!(s.invert_unit(), Err(Error::NotAUnit(_))));
        let s = uni(3, &[(0, b(1))]);
        assert!(matches!(s.invert_unit(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn reverse_identity() {
        let t = TruncSeries::variable(&["t"], 5, 0);
        assert_eq!(t.reverse().unwrap(), t);
    }

    #[test]
    fn reverse_rejects_bad_input() {
        let two_t = uni(3, &[(1, CoeffPoly::from_int(2))]);
        assert!(matches!(two_t.reverse(), Err(Error::Usage(_))));
        let shifted = uni(3, &[(0, CoeffPoly::one()), (1, CoeffPoly::one())]);
        assert!(matches!(shifted.reverse(), Err(Error::Usage(_))));
    }

    #[test]
    fn divide_difference_of_squares() {
        let vars = ["y1", "y2"];
        let y1 = TruncSeries::variable(&vars, 4, 0);
        let y2 = TruncSeries::variable(&vars, 4, 1);
        let num = y1.mul(&y1).unwrap().sub(&y2.mul(&y2).unwrap()).unwrap();
        let lin = y1.sub(&y2).unwrap();
        let q = exact_divide(&num, &lin, &lin).unwrap();
        assert_eq!(q, y1.add(&y2).unwrap());
        assert!(exact_divide(&num.zero_like(), &lin, &lin)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn indivisible_numerator_is_loud() {
        let vars = ["y1", "y2"];
        let y1 = TruncSeries::variable(&vars, 4, 0);
        let y2 = TruncSeries::variable(&vars, 4, 1);
        let lin = y1.sub(&y2).unwrap();
        let num = y1.mul(&y1).unwrap();
        assert!(matches!(
            exact_divide_linear(&num, &lin),
            Err(Error::DivisibilityViolation(_))
        ));
    }

    #[test]
    fn compose_into_two_variables() {
        // f(t) = t + t^2 at (u + v)
        let f = uni(3, &[(1, CoeffPoly::one()), (2, CoeffPoly::one())]);
        let vars = ["u", "v"];
        let s = TruncSeries::variable(&vars, 3, 0)
            .add(&TruncSeries::variable(&vars, 3, 1))
            .unwrap();
        let got = f.compose(std::slice::from_ref(&s)).unwrap();
        assert_eq!(got, s.add(&s.mul(&s).unwrap()).unwrap());
    }
}
