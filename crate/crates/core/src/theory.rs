use std::fmt;

use crate::ringcore::{chow_assignment, ktheory_assignment, CoeffPoly, Rational};

/// Which oriented theory results are reported in.
///
/// Everything is computed in cobordism; Chow and K-theory answers are
/// obtained by specializing the Lazard coefficients, which is a ring map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Theory {
    #[default]
    Cobordism,
    /// Additive law, every `b_i ↦ 0`.
    Chow,
    /// Multiplicative law `u + v - beta*u*v`, `b_i ↦ beta^i`.
    KTheory(Rational),
}

impl Theory {
    pub fn specialize(&self, c: &CoeffPoly) -> CoeffPoly {
        match self {
            Theory::Cobordism => c.clone(),
            Theory::Chow => CoeffPoly::from_rational(
                c.specialize(chow_assignment)
                    .expect("chow assignment is total"),
            ),
            Theory::KTheory(beta) => CoeffPoly::from_rational(
                c.specialize(ktheory_assignment(beta))
                    .expect("K-theory assignment is total"),
            ),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theory::Cobordism => write!(f, "cobordism"),
            Theory::Chow => write!(f, "chow"),
            Theory::KTheory(b) => write!(f, "ktheory(beta={b})"),
        }
    }
}
