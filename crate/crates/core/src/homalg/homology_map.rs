//! Homology groups with explicit bases, and the maps chain maps induce on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homalg::complex::{ChainComplex, Ring};
use crate::homalg::map::ChainMap;
use crate::homalg::matrix::IntMatrix;
use crate::homalg::snf::smith_normal_form;

/// `H_k = Z_k / B_k` presented through Smith normal forms.
///
/// Cycles are written in a basis `K` of `Z_k` (with left inverse `L`), the
/// boundaries become the columns of `W = L ∂_{k+1}`, and `U W V` diagonal
/// gives coordinates `U L x` in which the summands are cyclic.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub degree: usize,
    kernel: IntMatrix,
    left_inv: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    /// `(coordinate, order)` of each nontrivial summand; order `0` means `Z`.
    summands: Vec<(usize, BigInt)>,
}

impl HomologyBasis {
    /// Integer homology only; other rings have no torsion to align.
    pub fn new(c: &ChainComplex, k: usize) -> Result<Self> {
        if c.ring() != Ring::Z {
            return Err(Error::Unsupported("homology bases are computed over Z".into()));
        }
        if !c.is_trusted(k) && c.truncated_at().map_or(false, |n| k > n) {
            return Err(Error::Truncated(format!("degree {k} is beyond the stored range")));
        }
        let n = c.rank(k);
        let dk = c.boundary(k);
        let s = smith_normal_form(&dk, true);
        let t = s.transforms.expect("requested");
        let r = s.factors.len();
        let kernel = select_columns(&t.v, r..n);
        let left_inv = select_columns(&t.v_inv.transpose(), r..n).transpose();
        let w = &left_inv * &c.boundary(k + 1);
        let sw = smith_normal_form(&w, true);
        let tw = sw.transforms.expect("requested");
        let z = n - r;
        let summands = (0..z)
            .filter_map(|i| match sw.factors.get(i) {
                Some(d) if d.is_one() => None,
                Some(d) => Some((i, d.clone())),
                None => Some((i, BigInt::zero())),
            })
            .collect();
        Ok(Self { degree: k, kernel, left_inv, u: tw.u, u_inv: tw.u_inv, summands })
    }

    /// Orders of the cyclic summands, `0` for `Z`.
    pub fn orders(&self) -> Vec<BigInt> {
        self.summands.iter().map(|(_, d)| d.clone()).collect()
    }

    /// Cycle representing the `j`-th summand generator.
    pub fn generator(&self, j: usize) -> Vec<(usize, BigInt)> {
        let (i, _) = self.summands[j];
        let col: Vec<(usize, BigInt)> = self.u_inv.column(i).to_vec();
        self.kernel.apply(&col)
    }

    /// Coordinates of the class of cycle `x`, reduced modulo each order.
    pub fn coordinates(&self, x: &[(usize, BigInt)]) -> Vec<BigInt> {
        let y = self.u.apply(&self.left_inv.apply(x));
        let mut dense = vec![BigInt::zero(); self.u.rows()];
        for (i, v) in y {
            dense[i] = v;
        }
        self.summands
            .iter()
            .map(|(i, d)| if d.is_zero() { dense[*i].clone() } else { dense[*i].mod_floor(d) })
            .collect()
    }
}

fn select_columns(m: &IntMatrix, range: std::ops::Range<usize>) -> IntMatrix {
    IntMatrix::from_columns(m.rows(), range.map(|c| m.column(c).to_vec()).collect()).expect("same rows")
}

/// The matrix of `f_* : H_k(C) → H_k(D)` in the summand bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedMap {
    pub degree: usize,
    pub source_orders: Vec<String>,
    pub target_orders: Vec<String>,
    /// `matrix[i][j]`: coordinate `i` of the image of generator `j`.
    pub matrix: Vec<Vec<String>>,
}

pub fn induced_map(f: &ChainMap, src: &ChainComplex, tgt: &ChainComplex, k: usize) -> Result<InducedMap> {
    let hs = HomologyBasis::new(src, k)?;
    let ht = HomologyBasis::new(tgt, k)?;
    induced_with(f, src, tgt, &hs, &ht)
}

pub fn induced_with(f: &ChainMap, src: &ChainComplex, tgt: &ChainComplex, hs: &HomologyBasis, ht: &HomologyBasis) -> Result<InducedMap> {
    let k = hs.degree;
    let fk = f.at(k, src, tgt)?;
    let cols: Vec<Vec<BigInt>> = (0..hs.summands.len()).map(|j| ht.coordinates(&fk.apply(&hs.generator(j)))).collect();
    let rows = ht.summands.len();
    let matrix = (0..rows).map(|i| cols.iter().map(|c| c[i].to_string()).collect()).collect();
    Ok(InducedMap {
        degree: k,
        source_orders: hs.orders().iter().map(ToString::to_string).collect(),
        target_orders: ht.orders().iter().map(ToString::to_string).collect(),
        matrix,
    })
}

/// Whether `f_* = g_*` on `H_k` for every `k ≤ d`.
pub fn induced_maps_agree(f: &ChainMap, g: &ChainMap, src: &ChainComplex, tgt: &ChainComplex, d: usize) -> Result<Vec<bool>> {
    (0..=d)
        .map(|k| {
            let hs = HomologyBasis::new(src, k)?;
            let ht = HomologyBasis::new(tgt, k)?;
            Ok(induced_with(f, src, tgt, &hs, &ht)? == induced_with(g, src, tgt, &hs, &ht)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::SemiSimplicialSet;

    #[test]
    fn projective_plane_basis() {
        let x = SemiSimplicialSet::new(
            vec![2, 3, 2],
            vec![vec![], vec![vec![0, 0, 0], vec![0, 1, 1]], vec![vec![0, 0], vec![1, 2], vec![2, 1]]],
            None,
        )
        .unwrap();
        let c = ChainComplex::unnormalized(&x, Ring::Z);
        let h1 = HomologyBasis::new(&c, 1).unwrap();
        assert_eq!(h1.orders(), vec![BigInt::from(2)]);
        let g = h1.generator(0);
        assert!(c.boundary(1).apply(&g).is_empty());
        assert_eq!(h1.coordinates(&g), vec![BigInt::one()]);
        let twice: Vec<_> = g.iter().map(|(i, v)| (*i, v * 2)).collect();
        assert_eq!(h1.coordinates(&twice), vec![BigInt::zero()]);
        let id = ChainMap::identity(&c);
        let m = induced_map(&id, &c, &c, 1).unwrap();
        assert_eq!(m.matrix, vec![vec!["1".to_string()]]);
    }

    #[test]
    fn zero_and_identity_differ_on_circle() {
        let c = ChainComplex::unnormalized(&SemiSimplicialSet::boundary(2).unwrap(), Ring::Z);
        let agree = induced_maps_agree(&ChainMap::identity(&c), &ChainMap::zero(&c, &c), &c, &c, 1).unwrap();
        assert_eq!(agree, vec![false, false]);
    }
}
