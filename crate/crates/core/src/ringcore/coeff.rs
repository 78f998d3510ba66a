//! Coefficients: the rationalized Lazard ring as `Q[b1, b2, ...]`, where
//! `b_i` is the class of projective space `P^i` and sits in degree `-i`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Monomial `b_{i1}^{e1} b_{i2}^{e2} ...`, stored as `(index, exponent)`
/// pairs sorted by index with every exponent positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BMonomial(Vec<(u32, u32)>);

impl BMonomial {
    pub fn one() -> Self {
        BMonomial(Vec::new())
    }

    pub fn generator(index: u32) -> Self {
        assert!(index >= 1, "Lazard generators are indexed from 1");
        BMonomial(vec![(index, 1)])
    }

    /// Builds a monomial from arbitrary `(index, exponent)` pairs, merging
    /// repeated indices and dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (i, e) in pairs {
            assert!(i >= 1, "Lazard generators are indexed from 1");
            *map.entry(i).or_insert(0) += e;
        }
        BMonomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    /// Every monomial of degree `-weight`, one per partition of `weight`.
    pub fn with_weight(weight: u32) -> Vec<BMonomial> {
        fn parts(rest: u32, max: u32) -> Vec<Vec<(u32, u32)>> {
            if rest == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for i in (1..=max.min(rest)).rev() {
                for e in 1..=rest / i {
                    for mut tail in parts(rest - i * e, i - 1) {
                        tail.insert(0, (i, e));
                        out.push(tail);
                    }
                }
            }
            out
        }
        parts(weight, weight)
            .into_iter()
            .map(BMonomial::from_pairs)
            .collect()
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Graded degree, `-sum(i * e_i)`.
    pub fn degree(&self) -> i64 {
        -self
            .0
            .iter()
            .map(|&(i, e)| i as i64 * e as i64)
            .sum::<i64>()
    }

    pub fn mul(&self, other: &BMonomial) -> BMonomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        BMonomial(out)
    }
}

impl fmt::Display for BMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(i, e)| {
                if e == 1 {
                    format!("b{i}")
                } else {
                    format!("b{i}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Element of `L ⊗ Q`, a sparse polynomial in the `b_i` with rational
/// coefficients. No zero coefficient is ever stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CoeffPoly {
    terms: BTreeMap<BMonomial, Rational>,
}

impl CoeffPoly {
    pub fn zero() -> Self {
        CoeffPoly::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::monomial(BMonomial::one(), r)
    }

    /// The generator `b_i = [P^i]`.
    pub fn generator(index: u32) -> Self {
        Self::monomial(BMonomial::generator(index), Rational::one())
    }

    pub fn monomial(m: BMonomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        CoeffPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BMonomial, Rational)>) -> Self {
        let mut out = CoeffPoly::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// `Some(r)` when this element is the rational constant `r`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&BMonomial::one()).cloned(),
            _ => None,
        }
    }

    /// Coefficient of the empty monomial.
    pub fn constant_part(&self) -> Rational {
        self.terms
            .get(&BMonomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &BMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: BMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> CoeffPoly {
        if r.is_zero() {
            return CoeffPoly::zero();
        }
        CoeffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    /// Set of graded degrees of the stored monomials.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.terms.keys().map(BMonomial::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// `Some(deg)` when all monomials share one degree; `None` for zero or
    /// mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// Largest generator index that occurs.
    pub fn max_generator(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(i, _)| i))
            .max()
            .unwrap_or(0)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Exact evaluation under `b_i ↦ assign(i)`.
    pub fn specialize(&self, assign: impl Fn(u32) -> Option<Rational>) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(i, e) in m.pairs() {
                let x = assign(i).ok_or(Error::MissingAssignment(i))?;
                v *= num_traits::pow(x, e as usize);
            }
            total += v;
        }
        Ok(total)
    }
}

impl fmt::Display for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest-degree (constant) terms first
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| a.0.cmp(b.0)));
        for (k, (m, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a CoeffPoly> for &CoeffPoly {
    type Output = CoeffPoly;
    fn add(self, rhs: &'a CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a CoeffPoly> for &CoeffPoly {
    type Output = CoeffPoly;
    fn sub(self, rhs: &'a CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a CoeffPoly> for &CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, rhs: &'a CoeffPoly) -> CoeffPoly {
        if let Some(r) = rhs.as_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(&r);
        }
        let mut out = CoeffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        CoeffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        -&self
    }
}

impl AddAssign<&CoeffPoly> for CoeffPoly {
    fn add_assign(&mut self, rhs: &CoeffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&CoeffPoly> for CoeffPoly {
    fn sub_assign(&mut self, rhs: &CoeffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for CoeffPoly {
    type Output = CoeffPoly;
    fn add(mut self, rhs: CoeffPoly) -> CoeffPoly {
        self += &rhs;
        self
    }
}

impl Sub for CoeffPoly {
    type Output = CoeffPoly;
    fn sub(mut self, rhs: CoeffPoly) -> CoeffPoly {
        self -= &rhs;
        self
    }
}

impl Mul for CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, rhs: CoeffPoly) -> CoeffPoly {
        &self * &rhs
    }
}

impl From<i64> for CoeffPoly {
    fn from(n: i64) -> Self {
        CoeffPoly::from_int(n)
    }
}

impl From<Rational> for CoeffPoly {
    fn from(r: Rational) -> Self {
        CoeffPoly::from_rational(r)
    }
}

/// Assignment sending every `b_i` to zero (Chow theory).
pub fn chow_assignment(_: u32) -> Option<Rational> {
    Some(Rational::zero())
}

/// Least common multiple of the denominators across several coefficients.
pub fn common_denominator<'a>(coeffs: impl IntoIterator<Item = &'a CoeffPoly>) -> BigInt {
    coeffs
        .into_iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()))
}

/// Assignment `b_i ↦ beta^i` (K-theory with parameter `beta`).
pub fn ktheory_assignment(beta: &Rational) -> impl Fn(u32) -> Option<Rational> + '_ {
    move |i| Some(num_traits::pow(beta.clone(), i as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(i: u32) -> CoeffPoly {
        CoeffPoly::generator(i)
    }

    #[test]
    fn chow_kills_every_generator() {
        let c = &(&b(1) * &b(1)) - &b(2);
        assert_eq!(c.specialize(chow_assignment).unwrap(), int(0));
    }

    #[test]
    fn ktheory_sends_b1_to_beta() {
        let one = int(1);
        assert_eq!(b(1).specialize(ktheory_assignment(&one)).unwrap(), int(1));
        let half = rat(1, 2);
        let c = &(&b(1) * &b(2)) + &CoeffPoly::from_int(3);
        // (1/2)(1/4) + 3
        assert_eq!(c.specialize(ktheory_assignment(&half)).unwrap(), rat(25, 8));
    }

    #[test]
    fn constants_survive_any_assignment() {
        let five = CoeffPoly::from_int(5);
        assert_eq!(five.specialize(chow_assignment).unwrap(), int(5));
        assert_eq!(five.specialize(|_| None).unwrap(), int(5));
    }

    #[test]
    fn missing_assignment_is_reported() {
        let err = b(3).specialize(|i| if i < 3 { Some(int(1)) } else { None });
        assert_eq!(err, Err(Error::MissingAssignment(3)));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let c = &b(1) - &b(1);
        assert!(c.is_zero());
        assert_eq!(c.len(), 0);
    }

    #[test]
    fn monomials_by_weight() {
        let counts: Vec<usize> = (0..6).map(|w| BMonomial::with_weight(w).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7]);
        for m in BMonomial::with_weight(4) {
            assert_eq!(m.degree(), -4);
        }
    }

    #[test]
    fn grading_of_products() {
        let c = &(&b(1) * &b(2)) * &b(2);
        assert_eq!(c.homogeneous_degree(), Some(-5));
        let mixed = &b(1) + &b(2);
        assert_eq!(mixed.homogeneous_degree(), None);
    }

    #[test]
    fn display_is_readable() {
        let c = &(&b(1) * &b(1)) - &b(2);
        assert_eq!(c.to_string(), "b1^2 - b2");
        let d = &CoeffPoly::from_rational(rat(-1, 2)) + &b(1).scale(&rat(2, 3));
        assert_eq!(d.to_string(), "-1/2 + 2/3*b1");
    }
}
