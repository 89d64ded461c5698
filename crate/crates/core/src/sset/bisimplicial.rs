//! Bi-semi-simplicial and bisimplicial sets.

use crate::error::{invalid, Error, Result};
use crate::sset::semi::SemiSimplicialSet;
use crate::sset::simplicial::{EnumeratedSimplicialSet, SimplicialSet};

/// Levels `(p, q)` with horizontal faces `dh_i` (in `p`) and vertical faces `dv_j` (in `q`).
///
/// Levels are stored for `p ≤ P`, `q ≤ Q`. Each direction carries its own
/// truncation marker with the same meaning as for [`SemiSimplicialSet`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSemiSimplicialSet {
    sizes: Vec<Vec<usize>>,
    /// `dh[p][q][i][s]` for `p ≥ 1`.
    dh: Vec<Vec<Vec<Vec<usize>>>>,
    /// `dv[p][q][j][s]` for `q ≥ 1`.
    dv: Vec<Vec<Vec<Vec<usize>>>>,
    trunc_h: Option<usize>,
    trunc_v: Option<usize>,
}

impl BiSemiSimplicialSet {
    pub fn new(
        sizes: Vec<Vec<usize>>,
        dh: Vec<Vec<Vec<Vec<usize>>>>,
        dv: Vec<Vec<Vec<Vec<usize>>>>,
        trunc_h: Option<usize>,
        trunc_v: Option<usize>,
    ) -> Result<Self> {
        let b = Self::from_raw(sizes, dh, dv, trunc_h, trunc_v)?;
        b.validate()?;
        Ok(b)
    }

    pub fn from_raw(
        sizes: Vec<Vec<usize>>,
        dh: Vec<Vec<Vec<Vec<usize>>>>,
        dv: Vec<Vec<Vec<Vec<usize>>>>,
        trunc_h: Option<usize>,
        trunc_v: Option<usize>,
    ) -> Result<Self> {
        let np = sizes.len();
        if np == 0 {
            return Err(invalid!("no levels"));
        }
        let nq = sizes[0].len();
        if nq == 0 || sizes.iter().any(|r| r.len() != nq) {
            return Err(invalid!("level sizes must form a nonempty rectangle"));
        }
        if trunc_h.map_or(false, |n| n + 1 != np) || trunc_v.map_or(false, |n| n + 1 != nq) {
            return Err(invalid!("truncation markers disagree with the stored levels"));
        }
        if dh.len() != np || dv.len() != np {
            return Err(invalid!("face blocks do not match the level grid"));
        }
        for p in 0..np {
            if dh[p].len() != nq || dv[p].len() != nq {
                return Err(invalid!("face blocks do not match the level grid at p = {p}"));
            }
            for q in 0..nq {
                let n = sizes[p][q];
                let expect_h = if p == 0 { 0 } else { p + 1 };
                let expect_v = if q == 0 { 0 } else { q + 1 };
                if dh[p][q].len() != expect_h || dv[p][q].len() != expect_v {
                    return Err(invalid!("level ({p},{q}) has the wrong number of face tables"));
                }
                for t in &dh[p][q] {
                    if t.len() != n || t.iter().any(|&v| v >= sizes[p - 1][q]) {
                        return Err(invalid!("horizontal face table at ({p},{q}) is malformed"));
                    }
                }
                for t in &dv[p][q] {
                    if t.len() != n || t.iter().any(|&v| v >= sizes[p][q - 1]) {
                        return Err(invalid!("vertical face table at ({p},{q}) is malformed"));
                    }
                }
            }
        }
        Ok(Self { sizes, dh, dv, trunc_h, trunc_v })
    }

    /// Both semi-simplicial identities and `dh_i dv_j = dv_j dh_i`.
    pub fn validate(&self) -> Result<()> {
        for q in 0..self.levels_v() {
            if let Some(v) = self.row(q).validate().violation {
                return Err(Error::Identity(format!("horizontal direction at q = {q}: {}", v.message)));
            }
        }
        for p in 0..self.levels_h() {
            if let Some(v) = self.column(p).validate().violation {
                return Err(Error::Identity(format!("vertical direction at p = {p}: {}", v.message)));
            }
        }
        for p in 1..self.levels_h() {
            for q in 1..self.levels_v() {
                for s in 0..self.sizes[p][q] {
                    for i in 0..=p {
                        for j in 0..=q {
                            let a = self.dv[p - 1][q][j][self.dh[p][q][i][s]];
                            let b = self.dh[p][q - 1][i][self.dv[p][q][j][s]];
                            if a != b {
                                return Err(Error::Identity(format!(
                                    "dh{i} dv{j} ≠ dv{j} dh{i} on simplex {s} at ({p},{q})"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `X ⊗ Y`: level `(p,q)` is `X_p × Y_q` in lexicographic order.
    pub fn exterior_product(x: &SemiSimplicialSet, y: &SemiSimplicialSet) -> Self {
        let np = x.sizes().len();
        let nq = y.sizes().len();
        let sizes: Vec<Vec<usize>> = (0..np).map(|p| (0..nq).map(|q| x.size(p) * y.size(q)).collect()).collect();
        let mut dh = vec![vec![Vec::new(); nq]; np];
        let mut dv = vec![vec![Vec::new(); nq]; np];
        for p in 0..np {
            for q in 0..nq {
                let ny = y.size(q);
                if p > 0 {
                    dh[p][q] = (0..=p)
                        .map(|i| (0..sizes[p][q]).map(|s| x.face(p, i, s / ny) * ny + s % ny).collect())
                        .collect();
                }
                if q > 0 {
                    let ny1 = y.size(q - 1);
                    dv[p][q] = (0..=q)
                        .map(|j| (0..sizes[p][q]).map(|s| (s / ny) * ny1 + y.face(q, j, s % ny)).collect())
                        .collect();
                }
            }
        }
        Self { sizes, dh, dv, trunc_h: x.truncated_at(), trunc_v: y.truncated_at() }
    }

    pub fn levels_h(&self) -> usize {
        self.sizes.len()
    }

    pub fn levels_v(&self) -> usize {
        self.sizes[0].len()
    }

    pub fn size(&self, p: usize, q: usize) -> usize {
        self.sizes.get(p).and_then(|r| r.get(q)).copied().unwrap_or(0)
    }

    pub fn sizes(&self) -> &[Vec<usize>] {
        &self.sizes
    }

    pub fn face_h(&self, p: usize, q: usize, i: usize, s: usize) -> usize {
        self.dh[p][q][i][s]
    }

    pub fn face_v(&self, p: usize, q: usize, j: usize, s: usize) -> usize {
        self.dv[p][q][j][s]
    }

    pub fn truncated_h(&self) -> Option<usize> {
        self.trunc_h
    }

    pub fn truncated_v(&self) -> Option<usize> {
        self.trunc_v
    }

    /// The semi-simplicial set `[p] ↦ X_{p,q}`.
    pub fn row(&self, q: usize) -> SemiSimplicialSet {
        let sizes = (0..self.levels_h()).map(|p| self.sizes[p][q]).collect();
        let faces = (0..self.levels_h()).map(|p| self.dh[p][q].clone()).collect();
        SemiSimplicialSet::from_parts_unchecked(sizes, faces, self.trunc_h)
    }

    /// The semi-simplicial set `[q] ↦ X_{p,q}`.
    pub fn column(&self, p: usize) -> SemiSimplicialSet {
        let sizes = self.sizes[p].clone();
        SemiSimplicialSet::from_parts_unchecked(sizes, self.dv[p].clone(), self.trunc_v)
    }

    /// `δX_n = X_{n,n}` with `d_i = dh_i ∘ dv_i`.
    pub fn diagonal(&self) -> SemiSimplicialSet {
        let (np, nq) = (self.levels_h() - 1, self.levels_v() - 1);
        let n = np.min(nq);
        let sizes: Vec<usize> = (0..=n).map(|k| self.sizes[k][k]).collect();
        let mut faces = vec![Vec::new()];
        for k in 1..=n {
            faces.push(
                (0..=k)
                    .map(|i| (0..sizes[k]).map(|s| self.dh[k][k - 1][i][self.dv[k][k][i][s]]).collect())
                    .collect(),
            );
        }
        let complete = (np == n && self.trunc_h.is_none()) || (nq == n && self.trunc_v.is_none());
        SemiSimplicialSet::from_parts_unchecked(sizes, faces, (!complete).then_some(n))
    }

    pub fn total_size(&self, n: usize) -> usize {
        (0..=n).map(|p| self.size(p, n - p)).sum()
    }
}

/// A bi-semi-simplicial set with degeneracies in both directions, given levelwise.
#[derive(Clone, Debug)]
pub struct BiSimplicialSet {
    pub faces: BiSemiSimplicialSet,
    /// `sh[p][q][i][s]` for `p < P`.
    pub sh: Vec<Vec<Vec<Vec<usize>>>>,
    /// `sv[p][q][j][s]` for `q < Q`.
    pub sv: Vec<Vec<Vec<Vec<usize>>>>,
}

impl BiSimplicialSet {
    /// Checks the simplicial identities in each direction and that every
    /// horizontal operator commutes with every vertical one.
    pub fn new(faces: BiSemiSimplicialSet, sh: Vec<Vec<Vec<Vec<usize>>>>, sv: Vec<Vec<Vec<Vec<usize>>>>) -> Result<Self> {
        faces.validate()?;
        let b = Self { faces, sh, sv };
        let (np, nq) = (b.faces.levels_h(), b.faces.levels_v());
        for q in 0..nq {
            let degs = (0..np - 1).map(|p| b.sh[p][q].clone()).collect();
            EnumeratedSimplicialSet::new(b.faces.row(q), degs)
                .map_err(|e| Error::Identity(format!("horizontal direction at q = {q}: {e}")))?;
        }
        for p in 0..np {
            let degs = (0..nq - 1).map(|q| b.sv[p][q].clone()).collect();
            EnumeratedSimplicialSet::new(b.faces.column(p), degs)
                .map_err(|e| Error::Identity(format!("vertical direction at p = {p}: {e}")))?;
        }
        let f = &b.faces;
        for p in 0..np {
            for q in 0..nq {
                for s in 0..f.size(p, q) {
                    for i in 0..=p {
                        if q + 1 < nq && p + 1 < np {
                            for j in 0..=q {
                                if b.sh[p][q + 1][i][b.sv[p][q][j][s]] != b.sv[p + 1][q][j][b.sh[p][q][i][s]] {
                                    return Err(Error::Identity(format!("sh{i} sv{j} ≠ sv{j} sh{i} at ({p},{q})")));
                                }
                            }
                        }
                        if q >= 1 && p + 1 < np {
                            for j in 0..=q {
                                if f.face_v(p + 1, q, j, b.sh[p][q][i][s]) != b.sh[p][q - 1][i][f.face_v(p, q, j, s)] {
                                    return Err(Error::Identity(format!("dv{j} sh{i} ≠ sh{i} dv{j} at ({p},{q})")));
                                }
                            }
                        }
                    }
                    if p >= 1 && q + 1 < nq {
                        for j in 0..=q {
                            for i in 0..=p {
                                if f.face_h(p, q + 1, i, b.sv[p][q][j][s]) != b.sv[p - 1][q][j][f.face_h(p, q, i, s)] {
                                    return Err(Error::Identity(format!("dh{i} sv{j} ≠ sv{j} dh{i} at ({p},{q})")));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(b)
    }

    /// `X ⊠ Y` for levelwise simplicial sets.
    pub fn exterior_product(x: &EnumeratedSimplicialSet, y: &EnumeratedSimplicialSet) -> Self {
        let faces = BiSemiSimplicialSet::exterior_product(&x.sset, &y.sset);
        let (np, nq) = (faces.levels_h(), faces.levels_v());
        let mut sh = vec![vec![Vec::new(); nq]; np.saturating_sub(1)];
        let mut sv = vec![vec![Vec::new(); nq.saturating_sub(1)]; np];
        for p in 0..np {
            for q in 0..nq {
                let ny = y.sset.size(q);
                let n = faces.size(p, q);
                if p + 1 < np {
                    sh[p][q] = (0..=p).map(|i| (0..n).map(|s| x.degeneracy(p, i, s / ny) * ny + s % ny).collect()).collect();
                }
                if q + 1 < nq {
                    let ny1 = y.sset.size(q + 1);
                    sv[p][q] = (0..=q).map(|j| (0..n).map(|s| (s / ny) * ny1 + y.degeneracy(q, j, s % ny)).collect()).collect();
                }
            }
        }
        Self { faces, sh, sv }
    }

    /// The diagonal with `d_i = dh_i dv_i` and `s_i = sh_i sv_i`.
    pub fn diagonal(&self) -> EnumeratedSimplicialSet {
        let sset = self.faces.diagonal();
        let n = sset.max_level();
        let degeneracies = (0..n)
            .map(|k| (0..=k).map(|i| (0..sset.size(k)).map(|s| self.sh[k][k + 1][i][self.sv[k][k][i][s]]).collect()).collect())
            .collect();
        EnumeratedSimplicialSet { sset, degeneracies, simplices: None }
    }

    /// The diagonal as a simplicial set in generator form.
    pub fn diagonal_presented(&self) -> SimplicialSet {
        self.diagonal().present()
    }
}

/// The interior product `X × Y`, levelwise `X_p × Y_p`, through degree `cutoff`.
pub fn interior_product(x: &SimplicialSet, y: &SimplicialSet, cutoff: usize) -> Result<EnumeratedSimplicialSet> {
    if cutoff == 0 {
        return Err(invalid!("the interior product needs a cutoff of at least 1"));
    }
    let ex = x.enumerate(cutoff);
    let ey = y.enumerate(cutoff);
    Ok(BiSimplicialSet::exterior_product(&ex, &ey).diagonal())
}
