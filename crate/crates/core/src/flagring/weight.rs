use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// An integral weight `sum_i c_i e_i` of `GL_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// The basis weight `e_i`, 1-based.
    pub fn e(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "basis index out of range");
        let mut c = vec![0; n];
        c[i - 1] = 1;
        Weight(c)
    }

    /// The simple root `e_i - e_{i+1}`.
    pub fn simple_root(n: usize, i: usize) -> Self {
        assert!((1..n).contains(&i), "simple root index out of range");
        let mut c = vec![0; n];
        c[i - 1] = 1;
        c[i] = -1;
        Weight(c)
    }

    /// The root `e_i - e_j`.
    pub fn root(n: usize, i: usize, j: usize) -> Self {
        assert!(i != j && (1..=n).contains(&i) && (1..=n).contains(&j));
        let mut c = vec![0; n];
        c[i - 1] = 1;
        c[j - 1] = -1;
        Weight(c)
    }

    /// The fundamental weight lifted as `e_1 + ... + e_k`.
    pub fn fundamental(n: usize, k: usize) -> Self {
        assert!((1..n).contains(&k), "fundamental weight index out of range");
        Weight((0..n).map(|i| i64::from(i < k)).collect())
    }

    /// `(n-1) e_1 + (n-2) e_2 + ... + 0 e_n`.
    pub fn rho(n: usize) -> Self {
        Weight((0..n).map(|i| (n - 1 - i) as i64).collect())
    }

    /// `e_1 + ... + e_n`.
    pub fn determinant(n: usize) -> Self {
        Weight(vec![1; n])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank(), "weights of different rank");
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank(), "weights of different rank");
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses `1,0,-1`.
impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Usage(format!("bad weight coordinate {p:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}
