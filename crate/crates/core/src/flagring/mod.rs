//! The cobordism ring of the complete flag variety, `L[x_1..x_n]/S`, kept in
//! the canonical basis `x_1^k1 ... x_n^kn` with `k_j <= j - 1`.

mod annihilator;
mod weight;

pub use annihilator::{annihilator, is_point_multiple};
pub use weight::Weight;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{usage, Error, Result};
use crate::fgl::{build_fgl, FglData, HostRing};
use crate::par::ExecMode;
use crate::ringcore::{CoeffPoly, Exponents, Rational, TruncSeries};
use crate::theory::Theory;

pub(crate) type Terms = BTreeMap<Exponents, CoeffPoly>;
/// `(kept-position mask, coefficient)` pairs of a Chevalley expansion.
pub(crate) type MaskedTerms = Arc<Vec<(u32, CoeffPoly)>>;
type NormalForm = Vec<(Exponents, BigInt)>;

/// Memo tables for derived quantities. They only ever hold values that are
/// pure functions of their keys.
#[derive(Default)]
pub(crate) struct Memo {
    pub(crate) bs_class: Mutex<HashMap<Vec<usize>, Terms>>,
    pub(crate) c1_weight: Mutex<HashMap<Weight, Terms>>,
    pub(crate) c1_times_bs: Mutex<HashMap<(Weight, Vec<usize>), MaskedTerms>>,
}

struct Inner {
    n: usize,
    d: u32,
    theory: Theory,
    mode: ExecMode,
    fgl: FglData,
    vars: Arc<Vec<String>>,
    /// `tails[j-1]`: exponent vectors of `h_j(x_j..x_n) - x_j^j`.
    tails: Vec<Vec<Exponents>>,
    /// `U_i^{-1}` at cap `d + 1`, indexed by `i - 1`.
    inverse_units: Vec<TruncSeries>,
    normal_forms: RwLock<HashMap<Exponents, Arc<NormalForm>>>,
    memo: Memo,
}

/// Rank, truncation degree, formal group law and rewrite system of
/// `GL_n/B`. Cheap to clone; clones share caches.
#[derive(Clone)]
pub struct FlagContext(Arc<Inner>);

impl fmt::Debug for FlagContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FlagContext")
            .field("n", &self.0.n)
            .field("d", &self.0.d)
            .field("theory", &self.0.theory)
            .field("mode", &self.0.mode)
            .finish()
    }
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// All exponent vectors of length `len` with entries summing to `total`.
fn compositions(total: u32, len: usize) -> Vec<Exponents> {
    if len == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl FlagContext {
    /// Cobordism context with the default execution mode.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_options(n, Theory::Cobordism, ExecMode::default())
    }

    pub fn with_mode(n: usize, mode: ExecMode) -> Result<Self> {
        Self::with_options(n, Theory::Cobordism, mode)
    }

    /// A context whose formal group law is already specialized to `theory`.
    pub fn with_options(n: usize, theory: Theory, mode: ExecMode) -> Result<Self> {
        if n == 0 {
            return usage("flag variety needs n >= 1");
        }
        let d = (n * (n - 1) / 2) as u32;
        // the operators divide by a linear form and then read one degree
        // further, so the law is needed two degrees past d
        let fgl = build_fgl(d + 2, &theory)?;
        let vars: Arc<Vec<String>> = Arc::new((1..=n).map(|i| format!("x{i}")).collect());

        let tails = (1..=n)
            .map(|j| {
                compositions(j as u32, n - j + 1)
                    .into_iter()
                    .filter(|t| t[0] < j as u32)
                    .map(|t| {
                        let mut e = vec![0; j - 1];
                        e.extend(t);
                        e
                    })
                    .collect()
            })
            .collect();

        let pair = TruncSeries::zero(&["a", "b"], d);
        let pair_inverse = fgl.inverse_unit_factor(&pair, 0, 1)?;
        let ring = TruncSeries::zero_shared(vars.clone(), d + 1);
        let inverse_units = (1..n)
            .map(|i| pair_inverse.embed(&ring, &[i, i - 1]))
            .collect();

        Ok(FlagContext(Arc::new(Inner {
            n,
            d,
            theory,
            mode,
            fgl,
            vars,
            tails,
            inverse_units,
            normal_forms: RwLock::new(HashMap::new()),
            memo: Memo::default(),
        })))
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    /// `dim GL_n/B = n(n-1)/2`.
    pub fn d(&self) -> u32 {
        self.0.d
    }

    pub fn theory(&self) -> &Theory {
        &self.0.theory
    }

    pub fn mode(&self) -> ExecMode {
        self.0.mode
    }

    pub fn fgl(&self) -> &FglData {
        &self.0.fgl
    }

    pub fn same(&self, other: &FlagContext) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub(crate) fn memo(&self) -> &Memo {
        &self.0.memo
    }

    /// Zero series in `x_1..x_n` at `cap`.
    pub fn ring(&self, cap: u32) -> TruncSeries {
        TruncSeries::zero_shared(self.0.vars.clone(), cap)
    }

    /// `U_i^{-1}` where `F(x_{i+1}, chi(x_i)) = (x_{i+1} - x_i) U_i`, at cap `d + 1`.
    pub fn inverse_unit(&self, i: usize) -> &TruncSeries {
        &self.0.inverse_units[i - 1]
    }

    pub(crate) fn check_root_index(&self, i: usize) -> Result<()> {
        if (1..self.0.n).contains(&i) {
            Ok(())
        } else {
            usage(format!("simple root index {i} outside 1..{}", self.0.n - 1))
        }
    }

    pub fn is_canonical(&self, e: &[u32]) -> bool {
        e.len() == self.0.n && e.iter().enumerate().all(|(j, &k)| k as usize <= j)
    }

    /// The canonical basis, sorted by x-degree and then lexicographically.
    pub fn canonical_monomials(&self) -> Vec<Exponents> {
        let mut out: Vec<Exponents> = vec![vec![]];
        for j in 0..self.0.n {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (0..=j as u32).map(move |k| {
                        let mut e = e.clone();
                        e.push(k);
                        e
                    })
                })
                .collect();
        }
        out.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| a.cmp(b)));
        out
    }

    /// Integer normal form of a single monomial.
    fn normal_form(&self, e: &[u32]) -> Arc<NormalForm> {
        if degree(e) > self.0.d {
            return Arc::new(Vec::new());
        }
        let Some(j) = e.iter().enumerate().position(|(j, &k)| k as usize > j) else {
            return Arc::new(vec![(e.to_vec(), BigInt::one())]);
        };
        if let Some(nf) = self
            .0
            .normal_forms
            .read()
            .expect("normal form table")
            .get(e)
        {
            return nf.clone();
        }
        // x_j^j -> -(h_j(x_j..x_n) - x_j^j)
        let mut rest = e.to_vec();
        rest[j] -= j as u32 + 1;
        let mut acc: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for tail in &self.0.tails[j] {
            let m: Exponents = rest.iter().zip(tail).map(|(a, b)| a + b).collect();
            for (mono, c) in self.normal_form(&m).iter() {
                *acc.entry(mono.clone()).or_default() -= c;
            }
        }
        let nf: Arc<NormalForm> = Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        self.0
            .normal_forms
            .write()
            .expect("normal form table")
            .insert(e.to_vec(), nf.clone());
        nf
    }

    /// Reduces arbitrary `(exponent, coefficient)` pairs to canonical form.
    pub(crate) fn reduce_terms<'a>(
        &self,
        terms: impl IntoIterator<Item = (&'a Exponents, &'a CoeffPoly)>,
    ) -> FlagElem {
        let mut acc: Terms = BTreeMap::new();
        for (e, c) in terms {
            if degree(e) > self.0.d || c.is_zero() {
                continue;
            }
            if self.is_canonical(e) {
                accumulate(&mut acc, e.clone(), c.clone());
                continue;
            }
            for (m, k) in self.normal_form(e).iter() {
                accumulate(&mut acc, m.clone(), c.scale(&Rational::from(k.clone())));
            }
        }
        FlagElem {
            ctx: self.clone(),
            terms: acc,
        }
    }

    /// Canonical form of a polynomial in `x_1..x_n`.
    pub fn reduce_canonical(&self, p: &TruncSeries) -> Result<FlagElem> {
        if p.vars() != self.0.vars.as_slice() {
            return usage(format!(
                "expected a series in {:?}, got {:?}",
                self.0.vars,
                p.vars()
            ));
        }
        Ok(self.reduce_terms(p.terms()))
    }

    pub(crate) fn wrap_canonical(&self, terms: Terms) -> FlagElem {
        debug_assert!(terms.keys().all(|e| self.is_canonical(e)));
        FlagElem {
            ctx: self.clone(),
            terms,
        }
    }
}

fn accumulate(acc: &mut Terms, e: Exponents, c: CoeffPoly) {
    match acc.entry(e) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// An element of `Omega^*(GL_n/B)` in canonical form.
#[derive(Clone)]
pub struct FlagElem {
    ctx: FlagContext,
    terms: Terms,
}

impl PartialEq for FlagElem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same(&other.ctx) && self.terms == other.terms
    }
}

impl Eq for FlagElem {}

impl fmt::Debug for FlagElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FlagElem[n={}]({self})", self.ctx.n())
    }
}

impl FlagElem {
    pub fn zero(ctx: &FlagContext) -> Self {
        ctx.wrap_canonical(BTreeMap::new())
    }

    pub fn constant(ctx: &FlagContext, c: CoeffPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; ctx.n()], c);
        }
        ctx.wrap_canonical(terms)
    }

    pub fn one(ctx: &FlagContext) -> Self {
        Self::constant(ctx, CoeffPoly::one())
    }

    /// The class `x_i = c_1(L(-e_i))`, reduced.
    pub fn x(ctx: &FlagContext, i: usize) -> Self {
        let mut e = vec![0; ctx.n()];
        e[i - 1] = 1;
        Self::monomial(ctx, &e)
    }

    /// The reduction of a single monomial.
    pub fn monomial(ctx: &FlagContext, e: &[u32]) -> Self {
        ctx.reduce_terms([(&e.to_vec(), &CoeffPoly::one())])
    }

    pub fn context(&self) -> &FlagContext {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &CoeffPoly)> {
        self.terms.iter()
    }

    pub(crate) fn term_map(&self) -> &Terms {
        &self.terms
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

    /// The part of x-degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> FlagElem {
        let terms = self.terms.iter().filter(|(e, _)| degree(e) == k);
        self.ctx
            .wrap_canonical(terms.map(|(e, c)| (e.clone(), c.clone())).collect())
    }

    /// Smallest x-degree with a nonzero term.
    pub fn lowest_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| degree(e)).min()
    }

    /// As a polynomial in `x_1..x_n` at `cap`.
    pub fn to_series(&self, cap: u32) -> TruncSeries {
        let mut out = self.ctx.ring(cap);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &CoeffPoly) -> FlagElem {
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (e.clone(), v * c))
            .filter(|(_, v)| !v.is_zero());
        self.ctx.wrap_canonical(terms.collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&CoeffPoly) -> CoeffPoly) -> FlagElem {
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (e.clone(), f(v)))
            .filter(|(_, v)| !v.is_zero());
        self.ctx.wrap_canonical(terms.collect())
    }

    /// Applies the coefficient specialization of `theory`, staying in the same
    /// context.
    pub fn specialize(&self, theory: &Theory) -> FlagElem {
        self.map_coeffs(|c| theory.specialize(c))
    }

    fn check_context(&self, other: &FlagElem) -> Result<()> {
        if self.ctx.same(&other.ctx) {
            Ok(())
        } else {
            Err(Error::Usage("flag elements from different contexts".into()))
        }
    }

    pub fn try_add(&self, other: &FlagElem) -> Result<FlagElem> {
        self.check_context(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            accumulate(&mut terms, e.clone(), c.clone());
        }
        Ok(self.ctx.wrap_canonical(terms))
    }

    pub fn try_sub(&self, other: &FlagElem) -> Result<FlagElem> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &FlagElem) -> Result<FlagElem> {
        self.check_context(other)?;
        let d = self.ctx.d();
        let mut raw: Terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                if degree(e1) + degree(e2) > d {
                    continue;
                }
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                accumulate(&mut raw, e, c1 * c2);
            }
        }
        Ok(self.ctx.reduce_terms(raw.iter()))
    }

    pub fn pow(&self, k: u32) -> FlagElem {
        (0..k).fold(FlagElem::one(&self.ctx), |acc, _| &acc * self)
    }
}

impl Add for &FlagElem {
    type Output = FlagElem;
    /// Panics when the contexts differ.
    fn add(self, other: &FlagElem) -> FlagElem {
        self.try_add(other).expect("flag elements share a context")
    }
}

impl Sub for &FlagElem {
    type Output = FlagElem;
    fn sub(self, other: &FlagElem) -> FlagElem {
        self.try_sub(other).expect("flag elements share a context")
    }
}

impl Mul for &FlagElem {
    type Output = FlagElem;
    fn mul(self, other: &FlagElem) -> FlagElem {
        self.try_mul(other).expect("flag elements share a context")
    }
}

impl Neg for &FlagElem {
    type Output = FlagElem;
    fn neg(self) -> FlagElem {
        self.map_coeffs(|c| -c)
    }
}

impl fmt::Display for FlagElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_series(self.ctx.d()))
    }
}

impl HostRing for FlagElem {
    fn zero_like(&self) -> Self {
        FlagElem::zero(&self.ctx)
    }
    fn one_like(&self) -> Self {
        FlagElem::one(&self.ctx)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &CoeffPoly) -> Self {
        FlagElem::scale(self, c)
    }
}

pub fn reduce_canonical(ctx: &FlagContext, p: &TruncSeries) -> Result<FlagElem> {
    ctx.reduce_canonical(p)
}

pub fn flag_mul(a: &FlagElem, b: &FlagElem) -> Result<FlagElem> {
    a.try_mul(b)
}

/// `c_1(L(lambda))` with `L(lambda) = tensor_i L_i^{-c_i}` and `x_i = c_1(L_i)`.
pub fn c1_weight(ctx: &FlagContext, lambda: &Weight) -> Result<FlagElem> {
    if lambda.rank() != ctx.n() {
        return usage(format!(
            "weight {lambda} has rank {}, expected {}",
            lambda.rank(),
            ctx.n()
        ));
    }
    if let Some(t) = ctx.memo().c1_weight.lock().expect("memo").get(lambda) {
        return Ok(ctx.wrap_canonical(t.clone()));
    }
    let fgl = ctx.fgl();
    let ring = ctx.ring(ctx.d());
    let parts = lambda
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| fgl.n_series_at(-c, &ring.var_like(i)))
        .collect::<Result<Vec<_>>>()?;
    let out = ctx.reduce_canonical(&fgl.formal_sum(&ring, &parts)?)?;
    ctx.memo()
        .c1_weight
        .lock()
        .expect("memo")
        .insert(lambda.clone(), out.terms.clone());
    Ok(out)
}

/// `x_n^{n-1} x_{n-1}^{n-2} ... x_2`.
pub fn point_class(ctx: &FlagContext) -> FlagElem {
    let e: Exponents = (0..ctx.n() as u32).collect();
    ctx.wrap_canonical(BTreeMap::from([(e, CoeffPoly::one())]))
}

/// `(1/n!) prod_{i > j} (x_i - x_j)`, reduced.
pub fn delta_n(ctx: &FlagContext) -> FlagElem {
    let n = ctx.n();
    let ring = ctx.ring(ctx.d());
    let mut p = ring.one_like();
    for i in 0..n {
        for j in 0..i {
            let factor = ring.var_like(i).sub(&ring.var_like(j)).expect("same ring");
            p = p.mul(&factor).expect("same ring");
        }
    }
    let factorial: BigInt = (1..=n).map(BigInt::from).product();
    let p = p.scale(&CoeffPoly::from_rational(Rational::new(
        BigInt::one(),
        factorial,
    )));
    ctx.reduce_terms(p.terms())
}

/// Coefficient of the basis monomial `1`.
pub fn constant_term(a: &FlagElem) -> CoeffPoly {
    a.coeff(&vec![0; a.ctx.n()])
}

/// The same number read off `a * [pt] = c [pt]`.
pub fn constant_term_via_point(a: &FlagElem) -> CoeffPoly {
    let pt = point_class(&a.ctx);
    let prod = a * &pt;
    let (e, _) = pt.terms().next().expect("point class is a monomial");
    prod.coeff(e)
}
