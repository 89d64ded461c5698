//! Chain maps, mapping cones and chain homotopies.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{invalid, Error, Result};
use crate::homalg::complex::ChainComplex;
use crate::homalg::matrix::IntMatrix;
use crate::sset::{SSetMap, SemiSimplicialSet};

/// Degreewise matrices `f_k : C_k → D_k` for `k < depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    maps: Vec<IntMatrix>,
}

impl ChainMap {
    pub fn new(maps: Vec<IntMatrix>) -> Self {
        Self { maps }
    }

    /// Builds the map and checks `∂ f = f ∂` wherever both sides are stored.
    pub fn checked(maps: Vec<IntMatrix>, src: &ChainComplex, tgt: &ChainComplex) -> Result<Self> {
        let f = Self::new(maps);
        f.check(src, tgt)?;
        Ok(f)
    }

    /// The map on chains induced by a map of semi-simplicial sets.
    pub fn induced(f: &SSetMap, src: &SemiSimplicialSet, tgt: &SemiSimplicialSet) -> Result<Self> {
        f.check(src, tgt)?;
        let depth = src.sizes().len().min(tgt.sizes().len());
        Ok(Self::new((0..depth).map(|p| IntMatrix::from_function(tgt.size(p), f.level(p))).collect()))
    }

    pub fn identity(c: &ChainComplex) -> Self {
        Self::new(c.ranks().iter().map(|&n| IntMatrix::identity(n)).collect())
    }

    pub fn zero(src: &ChainComplex, tgt: &ChainComplex) -> Self {
        let depth = src.top().min(tgt.top()) + 1;
        Self::new((0..depth).map(|k| IntMatrix::zero(tgt.rank(k), src.rank(k))).collect())
    }

    pub fn depth(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[IntMatrix] {
        &self.maps
    }

    /// `f_k`, or a zero matrix when one side vanishes in degree `k`.
    pub fn at(&self, k: usize, src: &ChainComplex, tgt: &ChainComplex) -> Result<IntMatrix> {
        match self.maps.get(k) {
            Some(m) => Ok(m.clone()),
            None if src.rank(k) == 0 || tgt.rank(k) == 0 => Ok(IntMatrix::zero(tgt.rank(k), src.rank(k))),
            None => Err(Error::Truncated(format!("chain map not defined in degree {k}"))),
        }
    }

    pub fn check(&self, src: &ChainComplex, tgt: &ChainComplex) -> Result<()> {
        for (k, m) in self.maps.iter().enumerate() {
            if m.rows() != tgt.rank(k) || m.cols() != src.rank(k) {
                return Err(Error::Mismatch(format!(
                    "f_{k} is {}×{}, expected {}×{}",
                    m.rows(),
                    m.cols(),
                    tgt.rank(k),
                    src.rank(k)
                )));
            }
        }
        for k in 1..self.maps.len() {
            if k > src.top() && k > tgt.top() {
                break;
            }
            let lhs = &tgt.boundary(k) * &self.maps[k];
            let rhs = &self.maps[k - 1] * &src.boundary(k);
            if lhs != rhs {
                return Err(Error::Identity(format!("∂ f_{k} ≠ f_{} ∂ in degree {k}", k - 1)));
            }
        }
        Ok(())
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &ChainMap) -> ChainMap {
        let depth = self.depth().min(after.depth());
        ChainMap::new((0..depth).map(|k| &after.maps[k] * &self.maps[k]).collect())
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        let depth = self.depth().min(other.depth());
        Ok(ChainMap::new((0..depth).map(|k| self.maps[k].checked_sub(&other.maps[k])).collect::<Result<_>>()?))
    }

    pub fn truncate(&self, depth: usize) -> ChainMap {
        ChainMap::new(self.maps.iter().take(depth).cloned().collect())
    }
}

fn min_opt(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// The mapping cone: `cone_k = C_{k−1} ⊕ D_k` with `∂(c, d) = (−∂c, f c + ∂d)`.
///
/// It is truncated at `min(N_C + 1, N_D)`, so its homology is trusted one
/// degree above that of the source.
pub fn mapping_cone(f: &ChainMap, src: &ChainComplex, tgt: &ChainComplex) -> Result<ChainComplex> {
    if src.ring() != tgt.ring() {
        return Err(Error::Mismatch(format!("coefficients {} and {} differ", src.ring(), tgt.ring())));
    }
    let trunc = min_opt(src.truncated_at().map(|n| n + 1), tgt.truncated_at());
    let top = trunc.unwrap_or((src.top() + 1).max(tgt.top()));
    let ranks: Vec<usize> = (0..=top).map(|k| if k == 0 { 0 } else { src.rank(k - 1) } + tgt.rank(k)).collect();
    let mut boundaries = Vec::with_capacity(top);
    for k in 1..=top {
        let cr = |j: isize| if j < 0 { 0 } else { src.rank(j as usize) };
        let row_sizes = [cr(k as isize - 2), tgt.rank(k - 1)];
        let col_sizes = [cr(k as isize - 1), tgt.rank(k)];
        let neg_dc = if k >= 2 { -&src.boundary(k - 1) } else { IntMatrix::zero(0, src.rank(0)) };
        let fk = f.at(k - 1, src, tgt)?;
        let dd = tgt.boundary(k);
        let m = IntMatrix::block(&row_sizes, &col_sizes, &[vec![Some(&neg_dc), None], vec![Some(&fk), Some(&dd)]])?;
        boundaries.push(m);
    }
    ChainComplex::from_parts(src.ring(), ranks, boundaries, trunc)
}

/// Whether `f` is a homology isomorphism in the sense used throughout: its
/// cone is acyclic in every degree `≤ d`.
pub fn is_homology_iso(f: &ChainMap, src: &ChainComplex, tgt: &ChainComplex, d: usize) -> Result<bool> {
    let cone = mapping_cone(f, src, tgt)?;
    if !cone.is_trusted(d) {
        return Err(Error::Truncated(format!("cone homology is only trusted through {:?}", cone.trusted_through())));
    }
    cone.is_acyclic_through(d)
}

/// Degreewise `P_k : C_k → D_{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainHomotopy {
    pub maps: Vec<IntMatrix>,
}

impl ChainHomotopy {
    /// Checks `∂P + P∂ = g − f` in degrees `0..=through`.
    pub fn verify(&self, f: &ChainMap, g: &ChainMap, src: &ChainComplex, tgt: &ChainComplex, through: usize) -> Result<()> {
        for k in 0..=through {
            let p_k = self.at(k, src, tgt)?;
            let mut lhs = &tgt.boundary(k + 1) * &p_k;
            if k > 0 {
                let p_prev = self.at(k - 1, src, tgt)?;
                lhs = &lhs + &(&p_prev * &src.boundary(k));
            }
            let rhs = &g.at(k, src, tgt)? - &f.at(k, src, tgt)?;
            if lhs != rhs {
                return Err(Error::Identity(format!("∂P + P∂ ≠ g − f in degree {k}")));
            }
        }
        Ok(())
    }

    fn at(&self, k: usize, src: &ChainComplex, tgt: &ChainComplex) -> Result<IntMatrix> {
        match self.maps.get(k) {
            Some(m) => {
                if m.rows() != tgt.rank(k + 1) || m.cols() != src.rank(k) {
                    return Err(invalid!("P_{k} is {}×{}, expected {}×{}", m.rows(), m.cols(), tgt.rank(k + 1), src.rank(k)));
                }
                Ok(m.clone())
            }
            None if src.rank(k) == 0 || tgt.rank(k + 1) == 0 => Ok(IntMatrix::zero(tgt.rank(k + 1), src.rank(k))),
            None => Err(Error::Truncated(format!("homotopy not defined in degree {k}"))),
        }
    }
}

/// Sum of signed index tables as a matrix: column `s` gets `Σ sign·e_{table(s)}`.
pub(crate) fn signed_tables(rows: usize, cols: usize, terms: &[(BigInt, &[usize])]) -> IntMatrix {
    let columns = (0..cols).map(|s| terms.iter().map(|(c, t)| (t[s], c.clone())).collect()).collect();
    IntMatrix::from_columns(rows, columns).expect("tables are in range")
}

pub(crate) fn unit_sign(k: usize) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::complex::Ring;

    fn circle() -> ChainComplex {
        ChainComplex::unnormalized(&SemiSimplicialSet::boundary(2).unwrap(), Ring::Z)
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = circle();
        assert!(is_homology_iso(&ChainMap::identity(&c), &c, &c, 3).unwrap());
    }

    #[test]
    fn cone_of_zero_is_not() {
        let c = circle();
        assert!(!is_homology_iso(&ChainMap::zero(&c, &c), &c, &c, 2).unwrap());
    }

    #[test]
    fn cone_squares_to_zero_for_skeleton() {
        let x = SemiSimplicialSet::standard(2);
        let (sk, incl) = x.skeleton(1);
        let cs = ChainComplex::unnormalized(&sk, Ring::Z);
        let cx = ChainComplex::unnormalized(&x, Ring::Z);
        let f = ChainMap::induced(&incl, &sk, &x).unwrap();
        let cone = mapping_cone(&f, &cs, &cx).unwrap();
        // H_2(cone) ≅ H_1(S¹) since ∇² is contractible
        let h = cone.homology_through(2).unwrap();
        assert!(h[0].group.is_trivial() && h[1].group.is_trivial());
        assert_eq!(h[2].group.rank, 1);
    }
}
