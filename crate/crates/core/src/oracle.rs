//! Classical Schubert calculus for the additive law on plain integer
//! polynomials. It shares no code with the engine and serves as its Chow
//! cross-check.

use std::collections::BTreeMap;

/// Integer polynomial in `x_1..x_n`, keyed by exponent vectors.
pub type IntPoly = BTreeMap<Vec<u32>, i64>;

fn add_to(p: &mut IntPoly, e: Vec<u32>, c: i64) {
    let v = p.entry(e.clone()).or_insert(0);
    *v += c;
    if *v == 0 {
        p.remove(&e);
    }
}

/// `(p - s_i p) / (x_{i+1} - x_i)`, with `i` 1-based.
pub fn divided_difference(p: &IntPoly, i: usize) -> IntPoly {
    let (l, r) = (i - 1, i);
    let mut out = IntPoly::new();
    for (e, &c) in p {
        let (a, b) = (e[l], e[r]);
        if a == b {
            continue;
        }
        // x_l^a x_r^b - x_l^b x_r^a = (x_l x_r)^m (x_l^k - x_r^k) up to sign
        let m = a.min(b);
        let k = a.max(b) - m;
        let sign = if a > b { -1 } else { 1 };
        for t in 0..k {
            let mut f = e.clone();
            f[l] = m + t;
            f[r] = m + k - 1 - t;
            add_to(&mut out, f, sign * c);
        }
    }
    out
}

/// Monomials of the complete homogeneous polynomial of degree `deg` in
/// `len` variables.
fn complete_monomials(deg: u32, len: usize) -> Vec<Vec<u32>> {
    if len == 1 {
        return vec![vec![deg]];
    }
    (0..=deg)
        .flat_map(|a| {
            complete_monomials(deg - a, len - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, a);
                    rest
                })
        })
        .collect()
}

/// Normal form modulo the positive-degree symmetric polynomials, using
/// `h_j(x_j, ..., x_n) = 0` to lower the exponent of `x_j` below `j`.
pub fn reduce(p: &IntPoly, n: usize) -> IntPoly {
    let top = (n * (n - 1) / 2) as u32;
    let mut work: IntPoly = p
        .iter()
        .filter(|(e, _)| e.iter().sum::<u32>() <= top)
        .map(|(e, &c)| (e.clone(), c))
        .collect();
    let mut done = IntPoly::new();
    while let Some((e, c)) = work.pop_last() {
        let Some(j) = (0..n).find(|&j| e[j] as usize > j) else {
            add_to(&mut done, e, c);
            continue;
        };
        let power = j as u32 + 1;
        for tail in complete_monomials(power, n - j) {
            if tail[0] == power {
                continue;
            }
            let mut f = e.clone();
            f[j] -= power;
            for (k, t) in tail.iter().enumerate() {
                f[j + k] += t;
            }
            add_to(&mut work, f, -c);
        }
    }
    done
}

/// `x_n^{n-1} ... x_2`.
pub fn point(n: usize) -> IntPoly {
    IntPoly::from([((0..n as u32).collect(), 1)])
}

/// A reduced word `(i_1, ..., i_l)` with `s_{i_1} ... s_{i_l} = w`, found by
/// peeling right descents.
pub fn some_reduced_word(w: &[usize]) -> Vec<usize> {
    let mut cur = w.to_vec();
    let mut rev = Vec::new();
    while let Some(i) = (0..cur.len().saturating_sub(1)).find(|&i| cur[i] > cur[i + 1]) {
        cur.swap(i, i + 1);
        rev.push(i + 1);
    }
    rev.reverse();
    rev
}

/// The class obtained from the point by divided differences along a reduced
/// word of `w` (one-line notation), first letter first.
pub fn schubert_class(w: &[usize]) -> IntPoly {
    let n = w.len();
    let mut p = point(n);
    for i in some_reduced_word(w) {
        p = divided_difference(&p, i);
    }
    reduce(&p, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_three_values() {
        // identity is the point, the longest element is 1
        assert_eq!(schubert_class(&[1, 2, 3]), point(3));
        assert_eq!(
            schubert_class(&[3, 2, 1]),
            IntPoly::from([(vec![0, 0, 0], 1)])
        );
        assert_eq!(
            schubert_class(&[2, 1, 3]),
            IntPoly::from([(vec![0, 0, 2], 1)])
        );
    }

    #[test]
    fn reduction_examples() {
        let p = IntPoly::from([(vec![2, 1, 0], -1)]);
        assert_eq!(reduce(&p, 3), point(3));
        let q = IntPoly::from([(vec![1, 0, 0], 1), (vec![0, 1, 0], 1), (vec![0, 0, 1], 1)]);
        assert!(reduce(&q, 3).is_empty());
    }

    #[test]
    fn divided_difference_of_square() {
        // d_1(x_1^2) = -(x_1 + x_2)
        let p = IntPoly::from([(vec![2, 0], 1)]);
        let expected = IntPoly::from([(vec![1, 0], -1), (vec![0, 1], -1)]);
        assert_eq!(divided_difference(&p, 1), expected);
    }

    #[test]
    fn reduced_words_have_inversion_length() {
        let w = [3, 1, 4, 2];
        let word = some_reduced_word(&w);
        assert_eq!(word.len(), 3);
        let mut v: Vec<usize> = (1..=4).collect();
        for &i in &word {
            v.swap(i - 1, i);
        }
        assert_eq!(v, w);
    }
}
