use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::bs_class;
use crate::error::Result;
use crate::flagring::{FlagContext, FlagElem};
use crate::ringcore::CoeffPoly;
use crate::theory::Theory;
use crate::weylops::Word;

/// `sum_J c_J Z_J` over subwords `J` of a fixed word, each subword recorded
/// by the mask of positions it keeps (bit `p - 1` for position `p`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BSExpansion {
    word: Word,
    coeffs: BTreeMap<u32, CoeffPoly>,
}

impl BSExpansion {
    pub fn zero(word: Word) -> Self {
        BSExpansion {
            word,
            coeffs: BTreeMap::new(),
        }
    }

    /// `c Z_I` for the whole word.
    pub fn whole(word: Word, c: CoeffPoly) -> Self {
        let mut out = Self::zero(word);
        let mask = out.word.full_mask();
        out.add(mask, c);
        out
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn add(&mut self, mask: u32, c: CoeffPoly) {
        assert!(
            mask & !self.word.full_mask() == 0,
            "mask selects positions past the word"
        );
        match self.coeffs.entry(mask) {
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

    pub fn merge(&mut self, other: &BSExpansion) {
        assert_eq!(self.word, other.word, "expansions over different words");
        for (&m, c) in &other.coeffs {
            self.add(m, c.clone());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &CoeffPoly)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    pub fn coeff(&self, mask: u32) -> CoeffPoly {
        self.coeffs.get(&mask).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sums coefficients of position subsets spelling the same subword.
    pub fn by_word(&self) -> BTreeMap<Word, CoeffPoly> {
        let mut out: BTreeMap<Word, CoeffPoly> = BTreeMap::new();
        for (&m, c) in &self.coeffs {
            *out.entry(self.word.subword(m)).or_default() += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn specialize(&self, theory: &Theory) -> BSExpansion {
        let mut out = Self::zero(self.word.clone());
        for (&m, c) in &self.coeffs {
            out.add(m, theory.specialize(c));
        }
        out
    }

    /// `sum_J c_J R_J` as a flag ring element.
    pub fn evaluate(&self, ctx: &FlagContext) -> Result<FlagElem> {
        let mut acc = FlagElem::zero(ctx);
        for (word, c) in self.by_word() {
            acc = &acc + &bs_class(ctx, &word)?.scale(&c);
        }
        Ok(acc)
    }
}

impl fmt::Display for BSExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.by_word();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .rev()
            .map(|(w, c)| {
                let z = format!("Z{w}");
                if c.is_one() {
                    z
                } else if c.len() == 1 {
                    format!("{c}*{z}")
                } else {
                    format!("({c})*{z}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
