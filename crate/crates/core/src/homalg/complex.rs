//! Chain complexes of free modules with integer boundary matrices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::homalg::group::FPAbelianGroup;
use crate::homalg::matrix::IntMatrix;
use crate::homalg::snf::{invariant_factors, rank_mod_p};
use crate::sset::{SemiSimplicialSet, SimplicialSet};

/// Coefficients for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Ring {
    #[default]
    Z,
    Q,
    /// The prime field with `p` elements.
    Fp(u64),
}

impl Ring {
    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Z)
    }

    /// The characteristic; `0` for `Z` and `Q`.
    pub fn characteristic(self) -> u64 {
        match self {
            Ring::Fp(p) => p,
            _ => 0,
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl FromStr for Ring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z" | "Z" => Ok(Ring::Z),
            "q" | "Q" => Ok(Ring::Q),
            _ => {
                let p: u64 = s
                    .strip_prefix(['f', 'F'])
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| invalid!("unknown coefficient ring {s:?}, expected z, q or f<p>"))?;
                if !is_prime(p) {
                    return Err(invalid!("{p} is not prime"));
                }
                Ok(Ring::Fp(p))
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "z"),
            Ring::Q => write!(f, "q"),
            Ring::Fp(p) => write!(f, "f{p}"),
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A homology group together with whether its degree is inside the trusted range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub group: FPAbelianGroup,
    pub trusted: bool,
}

/// A bounded-below chain complex `C_0 ← C_1 ← …`.
///
/// With `truncated_at = Some(n)` the degrees `0..=n` are stored and homology
/// is trusted through `n − 1`. With `None` the complex is complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Ring,
    ranks: Vec<usize>,
    /// `boundaries[k]` is `∂_k : C_k → C_{k−1}`; `boundaries[0]` is `0 × n_0`.
    boundaries: Vec<IntMatrix>,
    truncated_at: Option<usize>,
}

impl ChainComplex {
    /// `boundaries` lists `∂_1, ∂_2, …`; shapes and `∂∂ = 0` are checked.
    pub fn new(ring: Ring, ranks: Vec<usize>, boundaries: Vec<IntMatrix>, truncated_at: Option<usize>) -> Result<Self> {
        let ranks = if ranks.is_empty() { vec![0] } else { ranks };
        if boundaries.len() + 1 != ranks.len() {
            return Err(invalid!("{} boundary matrices for {} degrees", boundaries.len(), ranks.len()));
        }
        if let Some(n) = truncated_at {
            if ranks.len() != n + 1 {
                return Err(invalid!("truncated at {n} but {} degrees given", ranks.len()));
            }
        }
        let mut all = vec![IntMatrix::zero(0, ranks[0])];
        for (k, d) in boundaries.into_iter().enumerate() {
            let k = k + 1;
            if d.rows() != ranks[k - 1] || d.cols() != ranks[k] {
                return Err(Error::Mismatch(format!(
                    "∂_{k} is {}×{}, expected {}×{}",
                    d.rows(),
                    d.cols(),
                    ranks[k - 1],
                    ranks[k]
                )));
            }
            all.push(d);
        }
        let c = Self { ring, ranks, boundaries: all, truncated_at };
        c.check_square_zero()?;
        Ok(c)
    }

    fn check_square_zero(&self) -> Result<()> {
        for k in 2..self.ranks.len() {
            if !(&self.boundaries[k - 1] * &self.boundaries[k]).is_zero() {
                return Err(Error::Identity(format!("∂_{} ∂_{k} ≠ 0", k - 1)));
            }
        }
        Ok(())
    }

    /// Chains of the fat realisation: basis `X_p`, `∂ = Σ (−1)^i d_i`.
    pub fn unnormalized(x: &SemiSimplicialSet, ring: Ring) -> Self {
        let ranks = x.sizes().to_vec();
        let boundaries = (1..ranks.len())
            .map(|p| {
                let cols = (0..ranks[p])
                    .map(|s| (0..=p).map(|i| (x.face(p, i, s), sign(i))).collect())
                    .collect();
                IntMatrix::from_columns(ranks[p - 1], cols).expect("faces are in range")
            })
            .collect();
        Self::new(ring, ranks, boundaries, x.truncated_at()).expect("simplicial identities give ∂∂ = 0")
    }

    /// Chains of the thin realisation: basis the generators, degenerate faces dropped.
    pub fn normalized(y: &SimplicialSet, ring: Ring, cutoff: usize) -> Self {
        let complete = y.truncated_at().is_none() && y.generator_counts().len() <= cutoff + 1;
        let top = if complete { y.generator_counts().len() - 1 } else { y.truncated_at().map_or(cutoff, |n| n.min(cutoff)) };
        let ranks: Vec<usize> = (0..=top).map(|q| y.generator_count(q)).collect();
        let boundaries = (1..=top)
            .map(|q| {
                let cols = (0..ranks[q])
                    .map(|g| {
                        y.generator_faces(q, g)
                            .iter()
                            .enumerate()
                            .filter(|(_, r)| !r.is_degenerate())
                            .map(|(i, r)| (r.idx, sign(i)))
                            .collect()
                    })
                    .collect();
                IntMatrix::from_columns(ranks[q - 1], cols).expect("faces are in range")
            })
            .collect();
        Self::new(ring, ranks, boundaries, (!complete).then_some(top)).expect("simplicial identities give ∂∂ = 0")
    }

    pub(crate) fn from_parts(ring: Ring, ranks: Vec<usize>, boundaries: Vec<IntMatrix>, truncated_at: Option<usize>) -> Result<Self> {
        Self::new(ring, ranks, boundaries, truncated_at)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn with_ring(&self, ring: Ring) -> Self {
        Self { ring, ..self.clone() }
    }

    pub fn truncated_at(&self) -> Option<usize> {
        self.truncated_at
    }

    /// Highest stored degree.
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Rank of `C_k`; zero above the top of a complete complex.
    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// `∂_k`, padded with zero matrices above the stored range.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        match self.boundaries.get(k) {
            Some(d) => d.clone(),
            None => IntMatrix::zero(self.rank(k.saturating_sub(1)), self.rank(k)),
        }
    }

    pub fn boundary_ref(&self, k: usize) -> Option<&IntMatrix> {
        self.boundaries.get(k)
    }

    /// Highest degree in which homology is trusted; `None` when every degree is.
    pub fn trusted_through(&self) -> Option<usize> {
        self.truncated_at.map(|n| n.saturating_sub(1))
    }

    pub fn is_trusted(&self, k: usize) -> bool {
        match self.truncated_at {
            None => true,
            Some(n) => k < n,
        }
    }

    fn matrix_rank(&self, d: &IntMatrix) -> (usize, Vec<BigInt>) {
        match self.ring {
            Ring::Z | Ring::Q => {
                let f = invariant_factors(d);
                (f.len(), f)
            }
            Ring::Fp(p) => (rank_mod_p(d, p), Vec::new()),
        }
    }

    /// `H_k`; degrees at the truncation edge are computed but flagged untrusted.
    pub fn homology(&self, k: usize) -> Result<HomologyGroup> {
        Ok(self.homology_range(k, k)?.pop().expect("one degree"))
    }

    /// `H_0, …, H_d`.
    pub fn homology_through(&self, d: usize) -> Result<Vec<HomologyGroup>> {
        self.homology_range(0, d)
    }

    pub fn homology_range(&self, lo: usize, hi: usize) -> Result<Vec<HomologyGroup>> {
        if let Some(n) = self.truncated_at {
            if hi > n {
                return Err(Error::Truncated(format!("H_{hi} needs degree {} but the complex stops at {n}", hi + 1)));
            }
        }
        let mut ranks: Vec<Option<(usize, Vec<BigInt>)>> = vec![None; hi + 2];
        let mut out = Vec::with_capacity(hi + 1 - lo);
        for k in lo..=hi {
            for j in [k, k + 1] {
                if ranks[j].is_none() {
                    ranks[j] = Some(if j == 0 || j > self.top() { (0, Vec::new()) } else { self.matrix_rank(&self.boundaries[j]) });
                }
            }
            let rk = ranks[k].as_ref().expect("filled").0;
            let (rk1, factors) = ranks[k + 1].as_ref().expect("filled");
            let free = self.rank(k) - rk - rk1;
            let group = match self.ring {
                Ring::Z => {
                    let mut g = FPAbelianGroup::free(free);
                    g.torsion = factors.iter().filter(|d| !d.is_one()).map(|d| d.to_biguint().expect("positive")).collect();
                    g
                }
                _ => FPAbelianGroup::free(free),
            };
            out.push(HomologyGroup { degree: k, group, trusted: self.is_trusted(k) });
        }
        Ok(out)
    }

    /// All homology in the trusted range, or through `top` for complete complexes.
    pub fn homology_all(&self) -> Vec<HomologyGroup> {
        let hi = self.trusted_through().unwrap_or(self.top());
        if self.truncated_at == Some(0) {
            return Vec::new();
        }
        self.homology_through(hi).expect("inside the stored range")
    }

    /// Whether `H_k = 0` for all `k ≤ d`.
    pub fn is_acyclic_through(&self, d: usize) -> Result<bool> {
        Ok(self.homology_through(d)?.iter().all(|h| h.group.is_trivial()))
    }

    /// Prepends `C_{−1}` of rank `base` with `∂_0 = eps`, shifting every degree up by one.
    pub fn augmented(&self, base: usize, eps: &IntMatrix) -> Result<Self> {
        if eps.rows() != base || eps.cols() != self.rank(0) {
            return Err(Error::Mismatch(format!("augmentation is {}×{}, expected {base}×{}", eps.rows(), eps.cols(), self.rank(0))));
        }
        let mut ranks = vec![base];
        ranks.extend_from_slice(&self.ranks);
        let mut boundaries = vec![eps.clone()];
        boundaries.extend(self.boundaries[1..].iter().cloned());
        Self::new(self.ring, ranks, boundaries, self.truncated_at.map(|n| n + 1))
    }

    /// Keeps degrees `≤ n`, marking the result truncated if anything was dropped.
    pub fn truncate(&self, n: usize) -> Self {
        if n >= self.top() {
            return self.clone();
        }
        Self {
            ring: self.ring,
            ranks: self.ranks[..=n].to_vec(),
            boundaries: self.boundaries[..=n].to_vec(),
            truncated_at: Some(self.truncated_at.map_or(n, |t| t.min(n))),
        }
    }

    pub fn euler_characteristic(&self) -> Result<i64> {
        if self.truncated_at.is_some() {
            return Err(Error::Truncated("Euler characteristic of a truncated complex".into()));
        }
        Ok(self.ranks.iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum())
    }
}

pub(crate) fn sign(i: usize) -> BigInt {
    if i % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn groups(c: &ChainComplex, d: usize) -> Vec<FPAbelianGroup> {
        c.homology_through(d).unwrap().into_iter().map(|h| h.group).collect()
    }

    #[test]
    fn sphere_homology() {
        let c = ChainComplex::unnormalized(&SemiSimplicialSet::boundary(3).unwrap(), Ring::Z);
        assert_eq!(groups(&c, 2), vec![FPAbelianGroup::free(1), FPAbelianGroup::trivial(), FPAbelianGroup::free(1)]);
        assert_eq!(c.euler_characteristic().unwrap(), 2);
    }

    #[test]
    fn interval_boundary() {
        let c = ChainComplex::unnormalized(&SemiSimplicialSet::standard(1), Ring::Z);
        assert_eq!(c.boundary(1), IntMatrix::from_dense(&[vec![-1], vec![1]]));
    }

    #[test]
    fn constant_alternates() {
        let c = ChainComplex::unnormalized(&SemiSimplicialSet::constant(1, 4), Ring::Z);
        for k in 1..=4 {
            let expect = if k % 2 == 0 { IntMatrix::identity(1) } else { IntMatrix::zero(1, 1) };
            assert_eq!(c.boundary(k), expect);
        }
        let h = c.homology_through(3).unwrap();
        assert!(h.iter().all(|g| g.trusted));
        assert_eq!(h[0].group, FPAbelianGroup::free(1));
        assert!(h[1..].iter().all(|g| g.group.is_trivial()));
        assert!(!c.homology(4).unwrap().trusted);
        assert!(c.homology(5).is_err());
    }

    #[test]
    fn ring_parsing() {
        assert_eq!("f7".parse::<Ring>().unwrap(), Ring::Fp(7));
        assert!("f6".parse::<Ring>().is_err());
        assert!("r".parse::<Ring>().is_err());
        assert_eq!(Ring::Fp(3).to_string(), "f3");
    }

    #[test]
    fn rejects_nonzero_square() {
        let d1 = IntMatrix::from_dense(&[vec![1]]);
        let d2 = IntMatrix::from_dense(&[vec![1]]);
        assert!(ChainComplex::new(Ring::Z, vec![1, 1, 1], vec![d1, d2], None).is_err());
    }
}
