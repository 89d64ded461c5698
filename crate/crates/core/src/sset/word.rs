//! Degeneracy words in Eilenberg–Zilber normal form.
//!
//! A word `[j1, …, jk]` with `j1 > … > jk` stands for the composite
//! `s_{j1} ∘ … ∘ s_{jk}`. Equivalently it is the monotone surjection
//! `σ : [n] → [n−k]` whose collapsed pairs `(j, j+1)` are exactly the `j_t`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DegeneracyWord(Vec<usize>);

impl DegeneracyWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Wraps an already canonical (strictly decreasing) index list.
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] <= w[1]) {
            return Err(invalid!("degeneracy word {indices:?} is not strictly decreasing"));
        }
        Ok(Self(indices))
    }

    /// Normal form of an arbitrary composite `s_{a1} ∘ … ∘ s_{am}`, obtained by
    /// rewriting with `s_i s_j = s_{j+1} s_i` for `i ≤ j`.
    pub fn canonicalize(mut raw: Vec<usize>) -> Self {
        let mut changed = true;
        while changed {
            changed = false;
            for t in 0..raw.len().saturating_sub(1) {
                let (a, b) = (raw[t], raw[t + 1]);
                if a <= b {
                    raw[t] = b + 1;
                    raw[t + 1] = a;
                    changed = true;
                }
            }
        }
        Self(raw)
    }

    /// The word of a monotone surjection given by its values on `0..=n`.
    pub fn from_surjection(sigma: &[usize]) -> Self {
        let mut js: Vec<usize> = (0..sigma.len().saturating_sub(1))
            .filter(|&j| sigma[j] == sigma[j + 1])
            .collect();
        js.reverse();
        Self(js)
    }

    /// The surjection `[base + k] → [base]` represented by this word.
    pub fn to_surjection(&self, base: usize) -> Vec<usize> {
        let n = base + self.0.len();
        let mut sigma = Vec::with_capacity(n + 1);
        let mut v = 0;
        sigma.push(0);
        for j in 0..n {
            if !self.0.contains(&j) {
                v += 1;
            }
            sigma.push(v);
        }
        sigma
    }

    /// Whether the word can act on a simplex of degree `base`.
    pub fn fits(&self, base: usize) -> bool {
        self.0.first().map_or(true, |&j1| j1 < base + self.0.len())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All canonical words of length `k` acting on degree `base`, in
    /// lexicographic order.
    pub fn all(base: usize, k: usize) -> Vec<Self> {
        let n = base + k;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(upper: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<DegeneracyWord>) {
            if left == 0 {
                out.push(DegeneracyWord(cur.clone()));
                return;
            }
            // next index j < upper, and enough room below it for the rest
            for j in (left - 1)..upper {
                cur.push(j);
                rec(j, left - 1, cur, out);
                cur.pop();
            }
        }
        rec(n, k, &mut cur, &mut out);
        out.sort();
        out
    }
}

impl TryFrom<Vec<usize>> for DegeneracyWord {
    type Error = crate::error::Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DegeneracyWord> for Vec<usize> {
    fn from(w: DegeneracyWord) -> Self {
        w.0
    }
}

impl fmt::Display for DegeneracyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.0.iter().map(|j| format!("s{j}")).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// A simplex of a simplicial set: a degeneracy word applied to a generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexRef {
    pub word: DegeneracyWord,
    /// Degree of the generator.
    pub deg: usize,
    /// Index of the generator within its degree.
    pub idx: usize,
}

impl SimplexRef {
    pub fn generator(deg: usize, idx: usize) -> Self {
        Self { word: DegeneracyWord::empty(), deg, idx }
    }

    pub fn degree(&self) -> usize {
        self.deg + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// `s_j` applied to this simplex.
    pub fn degenerate(&self, j: usize) -> Self {
        let mut raw = Vec::with_capacity(self.word.len() + 1);
        raw.push(j);
        raw.extend_from_slice(self.word.indices());
        Self { word: DegeneracyWord::canonicalize(raw), deg: self.deg, idx: self.idx }
    }
}

impl fmt::Display for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "g{}_{}", self.deg, self.idx)
        } else {
            write!(f, "{}(g{}_{})", self.word, self.deg, self.idx)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_of_commuted_degeneracies() {
        // s_0 s_0 = s_1 s_0
        assert_eq!(DegeneracyWord::canonicalize(vec![0, 0]).indices(), &[1, 0]);
        // s_0 s_1 = s_2 s_0
        assert_eq!(DegeneracyWord::canonicalize(vec![0, 1]).indices(), &[2, 0]);
        assert_eq!(DegeneracyWord::canonicalize(vec![3, 1]).indices(), &[3, 1]);
    }

    #[test]
    fn surjection_round_trip() {
        for base in 0..4 {
            for k in 0..4 {
                for w in DegeneracyWord::all(base, k) {
                    let sigma = w.to_surjection(base);
                    assert_eq!(sigma.len(), base + k + 1);
                    assert_eq!(*sigma.last().unwrap(), base);
                    assert_eq!(DegeneracyWord::from_surjection(&sigma), w);
                }
            }
        }
    }

    #[test]
    fn word_counts_are_binomial() {
        // canonical words of length k on degree m ↔ k-subsets of {0..m+k-1}
        assert_eq!(DegeneracyWord::all(1, 1).len(), 2);
        assert_eq!(DegeneracyWord::all(0, 2).len(), 1);
        assert_eq!(DegeneracyWord::all(2, 2).len(), 6);
    }

    #[test]
    fn rejects_non_decreasing() {
        assert!(DegeneracyWord::new(vec![0, 1]).is_err());
        assert!(DegeneracyWord::new(vec![1, 1]).is_err());
        assert!(DegeneracyWord::new(vec![2, 0]).is_ok());
    }
}
