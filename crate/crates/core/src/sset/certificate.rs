//! Certificates for extra degeneracies, nullhomotopies and homotopies, as
//! index tables checked identity by identity.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::sset::{SSetMap, SemiSimplicialSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    /// Behaves like a last degeneracy `s_{p+1}`.
    ExtraDegeneracyH,
    /// Behaves like a first degeneracy `s_{−1}`.
    ExtraDegeneracyG,
    Nullhomotopy,
    Homotopy,
}

/// The data of a certificate. Tables are indexed by source level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomotopyCertificate {
    /// An augmented set `ε : Y_0 → Y_{−1}` with `maps[k] : Y_{k−1} → Y_k`.
    ExtraDegeneracy {
        last: bool,
        space: SemiSimplicialSet,
        base: usize,
        augmentation: Vec<usize>,
        maps: Vec<Vec<usize>>,
    },
    /// `maps[p] : X_p → Y_{p+1}` from `f` to the vertex `y0`.
    Nullhomotopy {
        source: SemiSimplicialSet,
        target: SemiSimplicialSet,
        f: SSetMap,
        y0: usize,
        maps: Vec<Vec<usize>>,
    },
    /// `maps[p][i] : X_p → Y_{p+1}` for `i = 0..=p`, from `f` to `g`.
    Homotopy {
        source: SemiSimplicialSet,
        target: SemiSimplicialSet,
        f: SSetMap,
        g: SSetMap,
        maps: Vec<Vec<Vec<usize>>>,
    },
}

/// One failed identity: which one, at which level and simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateFailure {
    pub identity: String,
    pub degree: usize,
    pub simplex: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub kind: CertificateKind,
    pub valid: bool,
    /// Source levels through which every identity was evaluated.
    pub checked_through: usize,
    pub failures: Vec<CertificateFailure>,
}

const MAX_FAILURES: usize = 32;

struct Failures {
    list: Vec<CertificateFailure>,
}

impl Failures {
    fn check(&mut self, ok: bool, identity: impl FnOnce() -> String, degree: usize, simplex: usize) {
        if !ok && self.list.len() < MAX_FAILURES {
            self.list.push(CertificateFailure { identity: identity(), degree, simplex });
        }
    }
}

fn table_in_range(t: &[usize], len: usize, size: usize, what: &str) -> Result<()> {
    if t.len() != len {
        return Err(invalid!("{what} has {} entries, expected {len}", t.len()));
    }
    if let Some(&v) = t.iter().find(|&&v| v >= size) {
        return Err(invalid!("{what} has entry {v} out of range 0..{size}"));
    }
    Ok(())
}

impl HomotopyCertificate {
    pub fn kind(&self) -> CertificateKind {
        match self {
            Self::ExtraDegeneracy { last: true, .. } => CertificateKind::ExtraDegeneracyH,
            Self::ExtraDegeneracy { last: false, .. } => CertificateKind::ExtraDegeneracyG,
            Self::Nullhomotopy { .. } => CertificateKind::Nullhomotopy,
            Self::Homotopy { .. } => CertificateKind::Homotopy,
        }
    }

    /// Number of source levels the tables cover.
    pub fn depth(&self) -> usize {
        match self {
            Self::ExtraDegeneracy { maps, .. } => maps.len(),
            Self::Nullhomotopy { maps, .. } => maps.len(),
            Self::Homotopy { maps, .. } => maps.len(),
        }
    }

    /// Shapes and index ranges; identities are left to [`check`](Self::check).
    fn check_shapes(&self) -> Result<()> {
        match self {
            Self::ExtraDegeneracy { space, base, augmentation, maps, .. } => {
                table_in_range(augmentation, space.size(0), *base, "augmentation")?;
                if maps.len() > space.sizes().len() {
                    return Err(Error::Mismatch(format!("{} maps but only {} levels", maps.len(), space.sizes().len())));
                }
                for (k, t) in maps.iter().enumerate() {
                    let src = if k == 0 { *base } else { space.size(k - 1) };
                    table_in_range(t, src, space.size(k), &format!("map into level {k}"))?;
                }
            }
            Self::Nullhomotopy { source, target, f, y0, maps } => {
                f.check(source, target)?;
                if *y0 >= target.size(0) {
                    return Err(invalid!("base vertex {y0} out of range"));
                }
                if maps.len() + 1 > target.sizes().len() || maps.len() > source.sizes().len() {
                    return Err(Error::Mismatch(format!("{} maps exceed the available levels", maps.len())));
                }
                for (p, t) in maps.iter().enumerate() {
                    table_in_range(t, source.size(p), target.size(p + 1), &format!("h_{}", p + 1))?;
                }
            }
            Self::Homotopy { source, target, f, g, maps } => {
                f.check(source, target)?;
                g.check(source, target)?;
                if maps.len() + 1 > target.sizes().len() || maps.len() > source.sizes().len() {
                    return Err(Error::Mismatch(format!("{} levels of maps exceed the available levels", maps.len())));
                }
                for (p, family) in maps.iter().enumerate() {
                    if family.len() != p + 1 {
                        return Err(invalid!("level {p} has {} maps, expected {}", family.len(), p + 1));
                    }
                    for (i, t) in family.iter().enumerate() {
                        table_in_range(t, source.size(p), target.size(p + 1), &format!("h_{},{i}", p + 1))?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Evaluates every defining identity on every simplex the tables reach.
    pub fn check(&self) -> Result<CertificateReport> {
        self.check_shapes()?;
        let mut fl = Failures { list: Vec::new() };
        match self {
            Self::ExtraDegeneracy { last, space, base, augmentation, maps } => {
                // the augmentation acts as the only face of level 0
                let face = |k: usize, i: usize, s: usize| if k == 0 { augmentation[s] } else { space.face(k, i, s) };
                if space.size(1) > 0 && space.sizes().len() > 1 {
                    for s in 0..space.size(1) {
                        fl.check(augmentation[space.face(1, 0, s)] == augmentation[space.face(1, 1, s)], || "ε d_0 = ε d_1".into(), 1, s);
                    }
                }
                if let Some(h0) = maps.first() {
                    for x in 0..*base {
                        fl.check(augmentation[h0[x]] == x, || "ε h_0 = id".into(), 0, x);
                    }
                }
                for k in 1..maps.len() {
                    // maps[k] : Y_{k−1} → Y_k, written h_{p+1} with p = k − 1
                    let h = &maps[k];
                    let hp = &maps[k - 1];
                    for y in 0..space.size(k - 1) {
                        let z = h[y];
                        if *last {
                            fl.check(face(k, k, z) == y, || format!("d_{k} h_{k} = id"), k - 1, y);
                            for i in 0..k {
                                fl.check(face(k, i, z) == hp[face(k - 1, i, y)], || format!("d_{i} h_{k} = h_{} d_{i}", k - 1), k - 1, y);
                            }
                        } else {
                            fl.check(face(k, 0, z) == y, || format!("d_0 g_{k} = id"), k - 1, y);
                            for i in 1..=k {
                                fl.check(face(k, i, z) == hp[face(k - 1, i - 1, y)], || format!("d_{i} g_{k} = g_{} d_{}", k - 1, i - 1), k - 1, y);
                            }
                        }
                    }
                }
                let _ = base;
            }
            Self::Nullhomotopy { source, target, f, y0, maps } => {
                for p in 0..maps.len() {
                    let h = &maps[p];
                    for x in 0..source.size(p) {
                        let z = h[x];
                        fl.check(target.face(p + 1, p + 1, z) == f.level(p)[x], || format!("d_{} h_{} = f", p + 1, p + 1), p, x);
                        if p == 0 {
                            fl.check(target.face(1, 0, z) == *y0, || "d_0 h_1 = y_0".into(), 0, x);
                        } else {
                            for i in 0..=p {
                                fl.check(target.face(p + 1, i, z) == maps[p - 1][source.face(p, i, x)], || format!("d_{i} h_{} = h_{p} d_{i}", p + 1), p, x);
                            }
                        }
                    }
                }
            }
            Self::Homotopy { source, target, f, g, maps } => {
                for p in 0..maps.len() {
                    let hs = &maps[p];
                    for x in 0..source.size(p) {
                        let d = |i: usize, j: usize| target.face(p + 1, i, hs[j][x]);
                        for i in 1..=p {
                            fl.check(d(i, i) == d(i, i - 1), || format!("d_{i} h_{},{i} = d_{i} h_{},{}", p + 1, p + 1, i - 1), p, x);
                        }
                        if p > 0 {
                            for j in 0..=p {
                                for i in 0..j {
                                    let dx = source.face(p, i, x);
                                    fl.check(d(i, j) == maps[p - 1][j - 1][dx], || format!("d_{i} h_{},{j} = h_{p},{} d_{i}", p + 1, j - 1), p, x);
                                }
                                for i in j + 2..=p + 1 {
                                    let dx = source.face(p, i - 1, x);
                                    fl.check(d(i, j) == maps[p - 1][j][dx], || format!("d_{i} h_{},{j} = h_{p},{j} d_{}", p + 1, i - 1), p, x);
                                }
                            }
                        }
                        fl.check(d(0, 0) == f.level(p)[x], || format!("d_0 h_{},0 = f", p + 1), p, x);
                        fl.check(d(p + 1, p) == g.level(p)[x], || format!("d_{} h_{},{p} = g", p + 1, p + 1), p, x);
                    }
                }
            }
        }
        let failures = fl.list;
        Ok(CertificateReport { kind: self.kind(), valid: failures.is_empty(), checked_through: self.depth(), failures })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    /// The standard simplex as monotone sequences of length `p+1` in `0..=n`,
    /// with the nullhomotopy appending `n`.
    fn simplicial_simplex(n: usize, levels: usize) -> (SemiSimplicialSet, Vec<Vec<Vec<usize>>>) {
        let seqs: Vec<Vec<Vec<usize>>> = (0..levels).map(|p| (0..=n).combinations_with_replacement(p + 1).collect()).collect();
        let index = |p: usize, s: &[usize]| seqs[p].iter().position(|t| t == s).unwrap();
        let sizes = seqs.iter().map(Vec::len).collect();
        let mut faces = vec![Vec::new()];
        for p in 1..levels {
            faces.push(
                (0..=p)
                    .map(|i| {
                        seqs[p]
                            .iter()
                            .map(|s| {
                                let mut t = s.clone();
                                t.remove(i);
                                index(p - 1, &t)
                            })
                            .collect()
                    })
                    .collect(),
            );
        }
        (SemiSimplicialSet::new(sizes, faces, Some(levels - 1)).unwrap(), seqs)
    }

    fn appended(n: usize, levels: usize) -> HomotopyCertificate {
        let (x, seqs) = simplicial_simplex(n, levels);
        let maps = (0..levels - 1)
            .map(|p| {
                seqs[p]
                    .iter()
                    .map(|s| {
                        let mut t = s.clone();
                        t.push(n);
                        seqs[p + 1].iter().position(|u| *u == t).unwrap()
                    })
                    .collect()
            })
            .collect();
        HomotopyCertificate::Nullhomotopy { f: SSetMap::identity(&x), source: x.clone(), target: x, y0: n, maps }
    }

    #[test]
    fn simplex_nullhomotopy_passes() {
        for n in 0..3 {
            let r = appended(n, 4).check().unwrap();
            assert!(r.valid, "{:?}", r.failures);
        }
    }

    #[test]
    fn perturbed_nullhomotopy_fails() {
        let mut c = appended(2, 4);
        if let HomotopyCertificate::Nullhomotopy { maps, .. } = &mut c {
            maps[1][0] = (maps[1][0] + 1) % maps[1].len();
        }
        let r = c.check().unwrap();
        assert!(!r.valid);
        assert!(!r.failures.is_empty());
    }

    #[test]
    fn cone_point_extra_degeneracy() {
        // the cone on a point is ∇¹, augmented over a point: h_0 picks vertex 1,
        // h_1 sends vertex 0 to the edge and nothing is above level 1.
        let space = SemiSimplicialSet::standard(1).truncate(1);
        let c = HomotopyCertificate::ExtraDegeneracy {
            last: true,
            space,
            base: 1,
            augmentation: vec![0, 0],
            maps: vec![vec![1], vec![0, 0]],
        };
        let r = c.check().unwrap();
        // d_1 h_1(1) must be 1, but the only edge has d_1 = 0
        assert!(!r.valid);
        assert_eq!(r.failures[0].degree, 0);
    }
}
