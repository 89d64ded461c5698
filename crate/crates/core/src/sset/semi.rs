//! Finite-type semi-simplicial sets stored as level sizes plus face tables.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// A semi-simplicial set of finite type.
///
/// Level `p` holds `sizes[p]` simplices indexed `0..sizes[p]`, and
/// `faces[p][i][s]` is the index of `d_i s` in level `p − 1`.
///
/// When `truncated_at` is `Some(n)` the levels `0..=n` are known and nothing
/// above `n` was enumerated. When it is `None` the set is complete: every
/// level past the stored ones is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemiSimplicialSet {
    sizes: Vec<usize>,
    faces: Vec<Vec<Vec<usize>>>,
    truncated_at: Option<usize>,
}

/// Location of the first failure found by [`SemiSimplicialSet::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub degree: usize,
    pub i: usize,
    pub j: usize,
    pub simplex: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    fn pass() -> Self {
        Self { valid: true, violation: None }
    }
    fn fail(v: Violation) -> Self {
        Self { valid: false, violation: Some(v) }
    }
}

impl SemiSimplicialSet {
    /// Builds a set and checks every face identity.
    pub fn new(sizes: Vec<usize>, faces: Vec<Vec<Vec<usize>>>, truncated_at: Option<usize>) -> Result<Self> {
        let x = Self::from_raw(sizes, faces, truncated_at)?;
        match x.validate().violation {
            None => Ok(x),
            Some(v) => Err(Error::Identity(v.message)),
        }
    }

    /// Builds a set checking only shapes and index ranges.
    pub fn from_raw(mut sizes: Vec<usize>, mut faces: Vec<Vec<Vec<usize>>>, truncated_at: Option<usize>) -> Result<Self> {
        if sizes.is_empty() {
            sizes.push(0);
        }
        if faces.is_empty() {
            faces.push(Vec::new());
        }
        if faces.len() != sizes.len() {
            return Err(invalid!("{} face blocks for {} levels", faces.len(), sizes.len()));
        }
        if let Some(n) = truncated_at {
            if sizes.len() != n + 1 {
                return Err(invalid!("truncated at {n} but {} levels given", sizes.len()));
            }
        }
        if !faces[0].is_empty() {
            return Err(invalid!("level 0 has no faces"));
        }
        for p in 1..sizes.len() {
            if faces[p].len() != p + 1 {
                return Err(invalid!("level {p} needs {} face tables, got {}", p + 1, faces[p].len()));
            }
            for (i, table) in faces[p].iter().enumerate() {
                if table.len() != sizes[p] {
                    return Err(invalid!("face table d{i} at level {p} has length {}, expected {}", table.len(), sizes[p]));
                }
                if let Some(s) = table.iter().position(|&t| t >= sizes[p - 1]) {
                    return Err(invalid!("d{i} of simplex {s} at level {p} is out of range"));
                }
            }
        }
        Ok(Self { sizes, faces, truncated_at })
    }

    pub(crate) fn from_parts_unchecked(sizes: Vec<usize>, faces: Vec<Vec<Vec<usize>>>, truncated_at: Option<usize>) -> Self {
        debug_assert!(Self::from_raw(sizes.clone(), faces.clone(), truncated_at).is_ok());
        Self { sizes, faces, truncated_at }
    }

    pub fn empty() -> Self {
        Self { sizes: vec![0], faces: vec![Vec::new()], truncated_at: None }
    }

    /// The semi-simplicial `p`-simplex `∇^p`: level `q` lists the increasing
    /// `(q+1)`-subsets of `{0..p}` in lexicographic order.
    pub fn standard(p: usize) -> Self {
        let levels: Vec<Vec<Vec<usize>>> = (0..=p).map(|q| (0..=p).combinations(q + 1).collect()).collect();
        let index: Vec<HashMap<&Vec<usize>, usize>> =
            levels.iter().map(|l| l.iter().enumerate().map(|(k, v)| (v, k)).collect()).collect();
        let mut faces = vec![Vec::new()];
        for q in 1..=p {
            let tables = (0..=q)
                .map(|i| {
                    levels[q]
                        .iter()
                        .map(|v| {
                            let mut w = v.clone();
                            w.remove(i);
                            index[q - 1][&w]
                        })
                        .collect()
                })
                .collect();
            faces.push(tables);
        }
        Self::from_parts_unchecked(levels.iter().map(Vec::len).collect(), faces, None)
    }

    /// `∂∇^p`: the standard simplex without its top cell.
    pub fn boundary(p: usize) -> Result<Self> {
        if p == 0 {
            return Err(invalid!("the boundary of ∇^0 is not defined here"));
        }
        let mut x = Self::standard(p);
        x.sizes.pop();
        x.faces.pop();
        Ok(x)
    }

    /// `size` points in every degree `0..=cutoff`, all faces the identity.
    pub fn constant(size: usize, cutoff: usize) -> Self {
        let faces = (0..=cutoff)
            .map(|p| if p == 0 { Vec::new() } else { vec![(0..size).collect(); p + 1] })
            .collect();
        Self::from_parts_unchecked(vec![size; cutoff + 1], faces, Some(cutoff))
    }

    pub fn point() -> Self {
        Self::standard(0)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Number of `p`-simplices; zero past the stored levels.
    pub fn size(&self, p: usize) -> usize {
        self.sizes.get(p).copied().unwrap_or(0)
    }

    /// Highest stored level.
    pub fn max_level(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn face(&self, p: usize, i: usize, s: usize) -> usize {
        self.faces[p][i][s]
    }

    pub fn face_table(&self, p: usize, i: usize) -> &[usize] {
        &self.faces[p][i]
    }

    pub fn truncated_at(&self) -> Option<usize> {
        self.truncated_at
    }

    /// Highest non-empty level of a complete set.
    pub fn top_dim(&self) -> Option<usize> {
        if self.truncated_at.is_some() {
            return None;
        }
        self.sizes.iter().rposition(|&n| n > 0)
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.iter().all(|&n| n == 0)
    }

    /// Checks ranges and `d_i d_j = d_{j−1} d_i` for all `i < j` on every simplex.
    pub fn validate(&self) -> ValidationReport {
        for p in 2..self.sizes.len() {
            for s in 0..self.sizes[p] {
                for j in 1..=p {
                    for i in 0..j {
                        let lhs = self.faces[p - 1][i][self.faces[p][j][s]];
                        let rhs = self.faces[p - 1][j - 1][self.faces[p][i][s]];
                        if lhs != rhs {
                            return ValidationReport::fail(Violation {
                                degree: p,
                                i,
                                j,
                                simplex: s,
                                message: format!(
                                    "d{i} d{j} = d{} d{i} fails on simplex {s} of degree {p} ({lhs} ≠ {rhs})",
                                    j - 1
                                ),
                            });
                        }
                    }
                }
            }
        }
        ValidationReport::pass()
    }

    /// Levels `≤ cutoff`, marked as truncated when anything was cut off.
    pub fn truncate(&self, cutoff: usize) -> Self {
        let keep = cutoff + 1;
        if self.truncated_at.is_none() && self.top_dim().map_or(true, |t| t <= cutoff) {
            let mut x = self.clone();
            x.pad_to(keep);
            x.sizes.truncate(keep);
            x.faces.truncate(keep);
            return x;
        }
        if let Some(n) = self.truncated_at {
            if n <= cutoff {
                return self.clone();
            }
        }
        let mut x = self.clone();
        x.sizes.truncate(keep);
        x.faces.truncate(keep);
        x.truncated_at = Some(cutoff);
        x
    }

    fn pad_to(&mut self, len: usize) {
        while self.sizes.len() < len {
            let p = self.sizes.len();
            self.sizes.push(0);
            self.faces.push(vec![Vec::new(); p + 1]);
        }
    }

    /// The `n`-skeleton together with its inclusion map.
    pub fn skeleton(&self, n: usize) -> (Self, SSetMap) {
        let keep = (n + 1).min(self.sizes.len());
        let sk = Self::from_parts_unchecked(self.sizes[..keep].to_vec(), self.faces[..keep].to_vec(), None);
        let incl = SSetMap::new((0..keep).map(|p| (0..self.sizes[p]).collect()).collect());
        (sk, incl)
    }

    /// `Σ (−1)^p n_p`; only defined for complete sets.
    pub fn euler_characteristic(&self) -> Result<i64> {
        if let Some(n) = self.truncated_at {
            return Err(Error::Truncated(format!("Euler characteristic needs a complete set, this one stops at {n}")));
        }
        Ok(self.sizes.iter().enumerate().map(|(p, &n)| if p % 2 == 0 { n as i64 } else { -(n as i64) }).sum())
    }

    /// The face of `s ∈ X_p` spanned by the given increasing vertex list.
    pub fn restrict(&self, p: usize, s: usize, keep: &[usize]) -> usize {
        let mut cur = s;
        let mut deg = p;
        // delete from the top so lower vertex labels stay put
        for v in (0..=p).rev() {
            if !keep.contains(&v) {
                cur = self.faces[deg][v][cur];
                deg -= 1;
            }
        }
        cur
    }

    /// `κ_p(s) = (ι_1^* s, …, ι_p^* s)` with `ι_j` spanning vertices `j−1, j`.
    pub fn segal_map(&self, p: usize) -> Result<SegalMap> {
        if p == 0 {
            return Err(invalid!("the Segal map needs p ≥ 1"));
        }
        if p >= self.sizes.len() {
            return Err(Error::Truncated(format!("level {p} is not available")));
        }
        let tuples: Vec<Vec<usize>> =
            (0..self.sizes[p]).map(|s| (1..=p).map(|j| self.restrict(p, s, &[j - 1, j])).collect()).collect();
        let distinct = tuples.iter().collect::<std::collections::HashSet<_>>().len();
        let target = (self.size(1) as u128).checked_pow(p as u32);
        let bijective = distinct == tuples.len() && target == Some(tuples.len() as u128);
        Ok(SegalMap { degree: p, tuples, bijective })
    }

    /// The semi-simplicial path space `PX_p = X_{p+1}` (faces `d_0..d_p`),
    /// augmented over `X_0` by `ε_p = d_0^{p+1}`.
    pub fn path_space(&self) -> Result<PathSpace> {
        if self.sizes.len() < 2 {
            return Err(Error::Truncated("the path space needs level 1".into()));
        }
        let levels = self.sizes.len() - 1;
        let sizes = self.sizes[1..].to_vec();
        let mut faces = vec![Vec::new()];
        for p in 1..levels {
            faces.push(self.faces[p + 1][..=p].to_vec());
        }
        let truncated_at = self.truncated_at.map(|n| n - 1);
        let space = Self::from_parts_unchecked(sizes, faces, truncated_at);
        let augmentation = (0..levels)
            .map(|p| {
                (0..self.sizes[p + 1])
                    .map(|s| {
                        let mut cur = s;
                        for deg in (1..=p + 1).rev() {
                            cur = self.faces[deg][0][cur];
                        }
                        cur
                    })
                    .collect()
            })
            .collect();
        Ok(PathSpace { space, augmentation, base_size: self.size(0) })
    }
}

impl fmt::Display for SemiSimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sizes {:?}", self.sizes)?;
        if let Some(n) = self.truncated_at {
            write!(f, " (truncated at {n})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegalMap {
    pub degree: usize,
    pub tuples: Vec<Vec<usize>>,
    pub bijective: bool,
}

/// Output of [`SemiSimplicialSet::path_space`].
#[derive(Clone, Debug)]
pub struct PathSpace {
    pub space: SemiSimplicialSet,
    /// `augmentation[p][s]` is the vertex `ε_p(s)` in `X_0`.
    pub augmentation: Vec<Vec<usize>>,
    pub base_size: usize,
}

/// A map of semi-simplicial sets given levelwise by index tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SSetMap {
    levels: Vec<Vec<usize>>,
}

impl SSetMap {
    pub fn new(levels: Vec<Vec<usize>>) -> Self {
        Self { levels }
    }

    pub fn identity(x: &SemiSimplicialSet) -> Self {
        Self::new(x.sizes().iter().map(|&n| (0..n).collect()).collect())
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn level(&self, p: usize) -> &[usize] {
        &self.levels[p]
    }

    /// Number of levels on which the map is defined.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn compose(&self, after: &SSetMap) -> SSetMap {
        let depth = self.depth().min(after.depth());
        SSetMap::new((0..depth).map(|p| self.levels[p].iter().map(|&s| after.levels[p][s]).collect()).collect())
    }

    /// Checks that the tables are well defined on the common range and commute with faces.
    pub fn check(&self, src: &SemiSimplicialSet, tgt: &SemiSimplicialSet) -> Result<()> {
        let depth = src.sizes().len().min(tgt.sizes().len());
        if self.levels.len() < depth {
            return Err(invalid!("map defined on {} levels, {depth} needed", self.levels.len()));
        }
        for p in 0..depth {
            if self.levels[p].len() != src.size(p) {
                return Err(invalid!("map table at level {p} has length {}, source has {}", self.levels[p].len(), src.size(p)));
            }
            if let Some(s) = self.levels[p].iter().position(|&t| t >= tgt.size(p)) {
                return Err(invalid!("simplex {s} of degree {p} maps out of range"));
            }
            if p == 0 {
                continue;
            }
            for i in 0..=p {
                for s in 0..src.size(p) {
                    let lhs = self.levels[p - 1][src.face(p, i, s)];
                    let rhs = tgt.face(p, i, self.levels[p][s]);
                    if lhs != rhs {
                        return Err(Error::Identity(format!("f d{i} ≠ d{i} f on simplex {s} of degree {p}")));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn standard_simplex_sizes() {
        assert_eq!(SemiSimplicialSet::standard(0).sizes(), &[1]);
        assert_eq!(SemiSimplicialSet::standard(2).sizes(), &[3, 3, 1]);
        let x = SemiSimplicialSet::standard(3);
        let oracle: Vec<usize> = (0..=3).map(|q| binom(4, q + 1)).collect();
        assert_eq!(x.sizes(), oracle.as_slice());
        assert_eq!(x.top_dim(), Some(3));
        assert!(x.validate().valid);
    }

    #[test]
    fn euler_characteristics() {
        for p in 0..6 {
            assert_eq!(SemiSimplicialSet::standard(p).euler_characteristic().unwrap(), 1);
        }
        assert_eq!(SemiSimplicialSet::boundary(3).unwrap().euler_characteristic().unwrap(), 2);
        assert_eq!(SemiSimplicialSet::empty().euler_characteristic().unwrap(), 0);
        assert!(SemiSimplicialSet::constant(1, 3).euler_characteristic().is_err());
    }

    #[test]
    fn boundary_of_point_rejected() {
        assert!(SemiSimplicialSet::boundary(0).is_err());
        assert_eq!(SemiSimplicialSet::boundary(1).unwrap().sizes(), &[2]);
    }

    #[test]
    fn constant_levels() {
        let c = SemiSimplicialSet::constant(1, 3);
        assert_eq!(c.sizes(), &[1, 1, 1, 1]);
        assert_eq!(c.truncated_at(), Some(3));
        assert!(c.validate().valid);
        assert!(SemiSimplicialSet::constant(0, 2).is_empty());
    }

    #[test]
    fn swapped_face_is_reported() {
        let x = SemiSimplicialSet::standard(2);
        let mut faces = x.faces.clone();
        faces[2].swap(0, 1);
        let bad = SemiSimplicialSet::from_raw(x.sizes().to_vec(), faces.clone(), None).unwrap();
        let report = bad.validate();
        assert!(!report.valid);
        let v = report.violation.unwrap();
        assert_eq!((v.degree, v.simplex), (2, 0));
        assert!(SemiSimplicialSet::new(x.sizes().to_vec(), faces, None).is_err());
    }

    #[test]
    fn skeleton_of_triangle() {
        let x = SemiSimplicialSet::standard(2);
        let (sk, incl) = x.skeleton(1);
        assert_eq!(sk.sizes(), &[3, 3]);
        incl.check(&sk, &x).unwrap();
        let (full, _) = x.skeleton(5);
        assert_eq!(full, x);
    }

    #[test]
    fn segal_map_counts() {
        let x = SemiSimplicialSet::standard(2);
        let k2 = x.segal_map(2).unwrap();
        assert_eq!(k2.tuples.len(), 1);
        assert!(!k2.bijective);
        let k1 = x.segal_map(1).unwrap();
        assert!(k1.tuples.iter().enumerate().all(|(s, t)| t == &vec![s]));
    }

    #[test]
    fn path_space_of_interval() {
        let ps = SemiSimplicialSet::standard(1).path_space().unwrap();
        assert_eq!(ps.space.sizes(), &[1]);
        assert_eq!(ps.augmentation[0], vec![1]);
        assert!(SemiSimplicialSet::point().path_space().is_err());
    }

    #[test]
    fn truncation_marks_cut() {
        let x = SemiSimplicialSet::standard(3);
        let t = x.truncate(1);
        assert_eq!(t.truncated_at(), Some(1));
        assert_eq!(x.truncate(5).truncated_at(), None);
    }
}
