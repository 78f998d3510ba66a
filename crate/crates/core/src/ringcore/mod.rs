//! Exact arithmetic kernels: rationals, Lazard-ring coefficients and
//! truncated power series.

pub mod coeff;
pub mod series;

pub use coeff::{
    chow_assignment, common_denominator, int, ktheory_assignment, rat, BMonomial, CoeffPoly,
    Rational,
};
pub use series::{exact_divide, exact_divide_linear, Exponents, SeriesOp, TruncSeries};

/// `a op b` on truncated series sharing variables and cap.
pub fn series_arith(a: &TruncSeries, b: &TruncSeries, op: SeriesOp) -> crate::Result<TruncSeries> {
    a.arith(b, op)
}

pub fn series_invert_unit(s: &TruncSeries) -> crate::Result<TruncSeries> {
    s.invert_unit()
}

pub fn series_reverse(s: &TruncSeries) -> crate::Result<TruncSeries> {
    s.reverse()
}

pub fn series_exact_divide(
    num: &TruncSeries,
    den: &TruncSeries,
    linear_factor: &TruncSeries,
) -> crate::Result<TruncSeries> {
    exact_divide(num, den, linear_factor)
}

/// Evaluates a coefficient under an assignment of the generators.
pub fn coeff_specialize(
    c: &CoeffPoly,
    assignment: impl Fn(u32) -> Option<Rational>,
) -> crate::Result<Rational> {
    c.specialize(assignment)
}
