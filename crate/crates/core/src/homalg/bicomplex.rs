//! Double complexes and their total complexes.

use crate::error::{Error, Result};
use crate::homalg::complex::{sign, ChainComplex, Ring};
use crate::homalg::matrix::IntMatrix;
use crate::sset::BiSemiSimplicialSet;

/// A first-quadrant double complex with commuting differentials.
///
/// `dh[p][q] : C_{p,q} → C_{p−1,q}` and `dv[p][q] : C_{p,q} → C_{p,q−1}`;
/// the sign `(−1)^p` on `dv` is applied only when totalizing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleComplex {
    ring: Ring,
    ranks: Vec<Vec<usize>>,
    dh: Vec<Vec<IntMatrix>>,
    dv: Vec<Vec<IntMatrix>>,
    trunc_h: Option<usize>,
    trunc_v: Option<usize>,
}

impl DoubleComplex {
    /// Checks shapes, `dh² = 0`, `dv² = 0` and `dh dv = dv dh`.
    pub fn new(
        ring: Ring,
        ranks: Vec<Vec<usize>>,
        dh: Vec<Vec<IntMatrix>>,
        dv: Vec<Vec<IntMatrix>>,
        trunc_h: Option<usize>,
        trunc_v: Option<usize>,
    ) -> Result<Self> {
        let d = Self { ring, ranks, dh, dv, trunc_h, trunc_v };
        let (np, nq) = (d.levels_h(), d.levels_v());
        for p in 0..np {
            for q in 0..nq {
                let (h, v) = (&d.dh[p][q], &d.dv[p][q]);
                let hr = if p == 0 { 0 } else { d.ranks[p - 1][q] };
                let vr = if q == 0 { 0 } else { d.ranks[p][q - 1] };
                if h.rows() != hr || h.cols() != d.ranks[p][q] || v.rows() != vr || v.cols() != d.ranks[p][q] {
                    return Err(Error::Mismatch(format!("differential shapes at ({p},{q})")));
                }
                if p >= 2 && !(&d.dh[p - 1][q] * h).is_zero() {
                    return Err(Error::Identity(format!("dh² ≠ 0 at ({p},{q})")));
                }
                if q >= 2 && !(&d.dv[p][q - 1] * v).is_zero() {
                    return Err(Error::Identity(format!("dv² ≠ 0 at ({p},{q})")));
                }
                if p >= 1 && q >= 1 && &d.dv[p - 1][q] * h != &d.dh[p][q - 1] * v {
                    return Err(Error::Identity(format!("dh dv ≠ dv dh at ({p},{q})")));
                }
            }
        }
        Ok(d)
    }

    /// Free on each level, differentials the alternating face sums.
    pub fn from_bisset(b: &BiSemiSimplicialSet, ring: Ring) -> Self {
        let (np, nq) = (b.levels_h(), b.levels_v());
        let ranks = b.sizes().to_vec();
        let mut dh = vec![Vec::with_capacity(nq); np];
        let mut dv = vec![Vec::with_capacity(nq); np];
        for p in 0..np {
            for q in 0..nq {
                let n = ranks[p][q];
                dh[p].push(if p == 0 {
                    IntMatrix::zero(0, n)
                } else {
                    let cols = (0..n).map(|s| (0..=p).map(|i| (b.face_h(p, q, i, s), sign(i))).collect()).collect();
                    IntMatrix::from_columns(ranks[p - 1][q], cols).expect("faces in range")
                });
                dv[p].push(if q == 0 {
                    IntMatrix::zero(0, n)
                } else {
                    let cols = (0..n).map(|s| (0..=q).map(|j| (b.face_v(p, q, j, s), sign(j))).collect()).collect();
                    IntMatrix::from_columns(ranks[p][q - 1], cols).expect("faces in range")
                });
            }
        }
        Self::new(ring, ranks, dh, dv, b.truncated_h(), b.truncated_v()).expect("bi-semi-simplicial identities")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn with_ring(&self, ring: Ring) -> Self {
        Self { ring, ..self.clone() }
    }

    pub fn levels_h(&self) -> usize {
        self.ranks.len()
    }

    pub fn levels_v(&self) -> usize {
        self.ranks[0].len()
    }

    pub fn rank(&self, p: usize, q: usize) -> usize {
        self.ranks.get(p).and_then(|r| r.get(q)).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[Vec<usize>] {
        &self.ranks
    }

    pub fn dh(&self, p: usize, q: usize) -> &IntMatrix {
        &self.dh[p][q]
    }

    pub fn dv(&self, p: usize, q: usize) -> &IntMatrix {
        &self.dv[p][q]
    }

    pub fn truncated_h(&self) -> Option<usize> {
        self.trunc_h
    }

    pub fn truncated_v(&self) -> Option<usize> {
        self.trunc_v
    }

    /// Exchanges the two directions.
    pub fn transpose(&self) -> Self {
        let (np, nq) = (self.levels_h(), self.levels_v());
        let ranks = (0..nq).map(|q| (0..np).map(|p| self.ranks[p][q]).collect()).collect();
        let dh = (0..nq).map(|q| (0..np).map(|p| self.dv[p][q].clone()).collect()).collect();
        let dv = (0..nq).map(|q| (0..np).map(|p| self.dh[p][q].clone()).collect()).collect();
        Self { ring: self.ring, ranks, dh, dv, trunc_h: self.trunc_v, trunc_v: self.trunc_h }
    }

    /// Highest total degree that is completely stored.
    pub fn total_truncation(&self) -> Option<usize> {
        match (self.trunc_h, self.trunc_v) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a.map(|a| a.min(a + self.levels_v() - 1)),
            (None, b) => b,
        }
    }

    /// Degree `n` summands as `(p, q, offset)`, ordered by `p`.
    pub fn total_layout(&self, n: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for p in 0..=n {
            let q = n - p;
            if p < self.levels_h() && q < self.levels_v() {
                out.push((p, q, off));
                off += self.ranks[p][q];
            }
        }
        out
    }

    pub fn total_rank(&self, n: usize) -> usize {
        self.total_layout(n).iter().map(|&(p, q, _)| self.ranks[p][q]).sum()
    }

    /// `Tot_n = ⊕_{p+q=n} C_{p,q}` with `∂ = dh + (−1)^p dv`.
    pub fn total(&self) -> ChainComplex {
        let trunc = self.total_truncation();
        let top = trunc.unwrap_or(self.levels_h() + self.levels_v() - 2);
        let ranks: Vec<usize> = (0..=top).map(|n| self.total_rank(n)).collect();
        let mut boundaries = Vec::with_capacity(top);
        for n in 1..=top {
            let src = self.total_layout(n);
            let tgt = self.total_layout(n - 1);
            let offset = |p: usize, q: usize| tgt.iter().find(|&&(a, b, _)| a == p && b == q).map(|t| t.2);
            let mut triples = Vec::new();
            for &(p, q, col_off) in &src {
                if p >= 1 {
                    if let Some(row_off) = offset(p - 1, q) {
                        for (c, col) in self.dh[p][q].columns().iter().enumerate() {
                            for (r, v) in col {
                                triples.push((r + row_off, c + col_off, v.clone()));
                            }
                        }
                    }
                }
                if q >= 1 {
                    if let Some(row_off) = offset(p, q - 1) {
                        let s = sign(p);
                        for (c, col) in self.dv[p][q].columns().iter().enumerate() {
                            for (r, v) in col {
                                triples.push((r + row_off, c + col_off, &s * v));
                            }
                        }
                    }
                }
            }
            boundaries.push(IntMatrix::from_triples(ranks[n - 1], ranks[n], triples).expect("layout in range"));
        }
        ChainComplex::from_parts(self.ring, ranks, boundaries, trunc).expect("anticommuting differentials")
    }

    /// The vertical complex in column `p`.
    pub fn column(&self, p: usize) -> ChainComplex {
        ChainComplex::from_parts(self.ring, self.ranks[p].clone(), self.dv[p][1..].to_vec(), self.trunc_v).expect("dv² = 0")
    }

    /// The horizontal complex in row `q`.
    pub fn row(&self, q: usize) -> ChainComplex {
        let ranks = (0..self.levels_h()).map(|p| self.ranks[p][q]).collect();
        let ds = (1..self.levels_h()).map(|p| self.dh[p][q].clone()).collect();
        ChainComplex::from_parts(self.ring, ranks, ds, self.trunc_h).expect("dh² = 0")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::group::FPAbelianGroup;
    use crate::sset::SemiSimplicialSet;

    #[test]
    fn square_total() {
        let i = SemiSimplicialSet::standard(1);
        let d = DoubleComplex::from_bisset(&BiSemiSimplicialSet::exterior_product(&i, &i), Ring::Z);
        let t = d.total();
        assert_eq!(t.ranks(), &[4, 4, 1]);
        let h: Vec<_> = t.homology_all().into_iter().map(|h| h.group).collect();
        assert_eq!(h, vec![FPAbelianGroup::free(1), FPAbelianGroup::trivial(), FPAbelianGroup::trivial()]);
    }

    #[test]
    fn torus_total() {
        let c = SemiSimplicialSet::boundary(2).unwrap();
        let t = DoubleComplex::from_bisset(&BiSemiSimplicialSet::exterior_product(&c, &c), Ring::Z).total();
        let h: Vec<_> = t.homology_all().into_iter().map(|h| h.group).collect();
        assert_eq!(h, vec![FPAbelianGroup::free(1), FPAbelianGroup::free(2), FPAbelianGroup::free(1)]);
    }

    #[test]
    fn transpose_twice() {
        let c = SemiSimplicialSet::boundary(2).unwrap();
        let d = DoubleComplex::from_bisset(&BiSemiSimplicialSet::exterior_product(&c, &SemiSimplicialSet::standard(1)), Ring::Z);
        assert_eq!(d.transpose().transpose(), d);
        assert_eq!(d.transpose().total().ranks(), d.total().ranks());
    }
}
