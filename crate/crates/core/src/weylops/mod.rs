//! Type A Weyl group combinatorics and the operators it induces on the flag
//! ring.

mod operators;

pub use operators::{a_op, a_op_raw, a_star_op, a_star_op_raw, sigma_op, sigma_op_raw};

use std::fmt;
use std::str::FromStr;

use crate::error::{usage, Error, Result};
use crate::flagring::Weight;

/// A permutation of `{1..n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn from_one_line(v: Vec<usize>) -> Result<Self> {
        let n = v.len();
        let mut seen = vec![false; n + 1];
        for &k in &v {
            if k == 0 || k > n || seen[k] {
                return usage(format!("{v:?} is not a permutation of 1..{n}"));
            }
            seen[k] = true;
        }
        Ok(Permutation(v))
    }

    /// The simple transposition `s_i = (i i+1)`.
    pub fn simple(n: usize, i: usize) -> Self {
        Self::transposition(n, i, i + 1)
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut v: Vec<usize> = (1..=n).collect();
        v.swap(i - 1, j - 1);
        Permutation(v)
    }

    /// `s_{i_1} s_{i_2} ... s_{i_l}`.
    pub fn from_word(n: usize, word: &Word) -> Result<Self> {
        word.validate(n)?;
        let mut w = Self::identity(n);
        for &i in word.letters() {
            w.0.swap(i - 1, i);
        }
        Ok(w)
    }

    /// Every permutation of `{1..n}`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation(cur.clone()));
            let Some(k) = (0..n.saturating_sub(1))
                .rev()
                .find(|&k| cur[k] < cur[k + 1])
            else {
                break;
            };
            let l = (k + 1..n)
                .rev()
                .find(|&l| cur[k] < cur[l])
                .expect("successor exists");
            cur.swap(k, l);
            cur[k + 1..].reverse();
        }
        out
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `w(k)`, 1-based.
    pub fn apply(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&k| self.apply(k)).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut v = vec![0; self.n()];
        for (pos, &k) in self.0.iter().enumerate() {
            v[k - 1] = pos + 1;
        }
        Permutation(v)
    }

    /// Number of inversions, the Coxeter length.
    pub fn length(&self) -> usize {
        let v = &self.0;
        (0..v.len())
            .map(|a| (a + 1..v.len()).filter(|&b| v[a] > v[b]).count())
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(p, &k)| p + 1 == k)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A sequence of simple-root indices `(i_1, ..., i_l)`, 1-based. Any word is
/// allowed, reduced or not.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks every letter lies in `1..n-1`.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i == 0 || i >= n) {
            Some(i) => usage(format!(
                "letter {i} of word {self} is outside 1..{}",
                n.saturating_sub(1)
            )),
            None => Ok(()),
        }
    }

    /// The subword on the positions whose bits are set in `mask` (bit
    /// `p - 1` for position `p`).
    pub fn subword(&self, mask: u32) -> Word {
        Word(
            self.0
                .iter()
                .enumerate()
                .filter(|(p, _)| mask >> p & 1 == 1)
                .map(|(_, &i)| i)
                .collect(),
        )
    }

    /// Mask selecting every position.
    pub fn full_mask(&self) -> u32 {
        assert!(self.0.len() < 32, "words are limited to 31 letters");
        (1u32 << self.0.len()) - 1
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses `2,1,2`; the empty string is the empty word.
impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Usage(format!("bad word letter {p:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// `w` acting on coordinates: the `i`-th coordinate moves to slot `w(i)`.
pub fn weyl_act(w: &Permutation, lambda: &Weight) -> Result<Weight> {
    if w.n() != lambda.rank() {
        return usage(format!(
            "permutation of {} letters on a weight of rank {}",
            w.n(),
            lambda.rank()
        ));
    }
    let mut out = vec![0; w.n()];
    for (i, &c) in lambda.coords().iter().enumerate() {
        out[w.apply(i + 1) - 1] = c;
    }
    Ok(Weight::new(out))
}

/// `(lambda, e_i - e_j) = c_i - c_j`.
pub fn coroot_pairing(lambda: &Weight, alpha: &Weight) -> Result<i64> {
    if lambda.rank() != alpha.rank() {
        return usage("weight and root have different ranks");
    }
    let c = alpha.coords();
    let plus: Vec<usize> = (0..c.len()).filter(|&k| c[k] == 1).collect();
    let minus: Vec<usize> = (0..c.len()).filter(|&k| c[k] == -1).collect();
    let zeros = c.iter().filter(|&&x| x == 0).count();
    if plus.len() != 1 || minus.len() != 1 || zeros + 2 != c.len() {
        return usage(format!("{alpha} is not a root e_i - e_j"));
    }
    let l = lambda.coords();
    Ok(l[plus[0]] - l[minus[0]])
}

/// `beta_j = s_{i_l} ... s_{i_{j+1}} alpha_{i_j}` for each position `j`.
pub fn beta_sequence(n: usize, word: &Word) -> Result<Vec<Weight>> {
    word.validate(n)?;
    let letters = word.letters();
    letters
        .iter()
        .enumerate()
        .map(|(j, &i)| {
            letters[j + 1..]
                .iter()
                .try_fold(Weight::simple_root(n, i), |acc, &k| {
                    weyl_act(&Permutation::simple(n, k), &acc)
                })
        })
        .collect()
}

/// Whether the word's length equals the length of its product.
pub fn is_reduced(word: &Word) -> bool {
    let n = word.letters().iter().max().map_or(1, |m| m + 1);
    Permutation::from_word(n, word)
        .expect("letters fit")
        .length()
        == word.len()
}

/// The lexicographically smallest reduced word for `w`.
pub fn reduced_word(w: &Permutation) -> Word {
    let n = w.n();
    let mut cur = w.clone();
    let mut letters = Vec::new();
    while !cur.is_identity() {
        let inv = cur.inverse();
        // smallest left descent: i+1 appears before i in one-line notation
        let i = (1..n)
            .find(|&i| inv.apply(i) > inv.apply(i + 1))
            .expect("non-identity has a descent");
        letters.push(i);
        cur = Permutation::simple(n, i).compose(&cur);
    }
    Word(letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(v: &[usize]) -> Word {
        Word::new(v.to_vec())
    }

    #[test]
    fn weyl_action_examples() {
        let s1 = Permutation::simple(3, 1);
        assert_eq!(weyl_act(&s1, &Weight::e(3, 1)).unwrap(), Weight::e(3, 2));
        let lam = Weight::new(vec![4, -1, 7]);
        assert_eq!(weyl_act(&Permutation::identity(3), &lam).unwrap(), lam);
        let s1s2 = Permutation::from_word(3, &word(&[1, 2])).unwrap();
        let g1 = Weight::simple_root(3, 1);
        assert_eq!(weyl_act(&s1s2, &g1).unwrap(), Weight::simple_root(3, 2));
    }

    #[test]
    fn pairings() {
        let g1 = Weight::simple_root(3, 1);
        assert_eq!(coroot_pairing(&Weight::fundamental(3, 1), &g1).unwrap(), 1);
        assert_eq!(coroot_pairing(&g1, &g1).unwrap(), 2);
        assert!(coroot_pairing(&g1, &Weight::new(vec![1, 1, 0])).is_err());
        assert!(coroot_pairing(&g1, &Weight::new(vec![2, -2, 0])).is_err());
    }

    #[test]
    fn beta_sequences() {
        let g1 = Weight::simple_root(3, 1);
        let g2 = Weight::simple_root(3, 2);
        let g12 = &g1 + &g2;
        assert_eq!(
            beta_sequence(3, &word(&[1, 2, 1])).unwrap(),
            vec![g2.clone(), g12.clone(), g1.clone()]
        );
        assert_eq!(beta_sequence(3, &word(&[2])).unwrap(), vec![g2.clone()]);
        assert_eq!(beta_sequence(3, &word(&[1, 2])).unwrap(), vec![g12, g2]);
        assert!(beta_sequence(3, &word(&[3])).is_err());
    }

    #[test]
    fn reducedness() {
        assert!(is_reduced(&word(&[1, 2, 1])));
        assert!(!is_reduced(&word(&[1, 1])));
        assert!(is_reduced(&Word::empty()));
        let w0 = Permutation::from_one_line(vec![3, 2, 1]).unwrap();
        assert_eq!(reduced_word(&w0), word(&[1, 2, 1]));
        assert_eq!(w0.length(), 3);
    }

    #[test]
    fn reduced_words_represent_their_permutation() {
        for n in 1..=5 {
            for w in Permutation::all(n) {
                let r = reduced_word(&w);
                assert_eq!(Permutation::from_word(n, &r).unwrap(), w);
                assert_eq!(r.len(), w.length());
            }
        }
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn word_parsing() {
        assert_eq!("2,1,2".parse::<Word>().unwrap(), word(&[2, 1, 2]));
        assert_eq!("".parse::<Word>().unwrap(), Word::empty());
        assert!("2,a".parse::<Word>().is_err());
        assert_eq!(word(&[2, 1, 2]).subword(0b101), word(&[2, 2]));
        assert_eq!(word(&[2, 1]).to_string(), "(2,1)");
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::from_one_line(vec![1, 1, 2]).is_err());
        let w = Permutation::from_one_line(vec![2, 3, 1]).unwrap();
        assert!(w.compose(&w.inverse()).is_identity());
    }
}
