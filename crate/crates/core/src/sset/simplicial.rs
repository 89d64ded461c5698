//! Simplicial sets presented by their non-degenerate simplices.
//!
//! Every simplex is stored as a [`SimplexRef`]: a canonical degeneracy word
//! applied to a generator. Faces of generators are given; faces of
//! everything else follow from the simplicial identities.

use std::collections::HashMap;

use crate::error::{identity, invalid, Error, Result};
use crate::sset::semi::{SSetMap, SemiSimplicialSet};
use crate::sset::word::{DegeneracyWord, SimplexRef};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    counts: Vec<usize>,
    /// `gen_faces[q][g][i]` is `d_i` of generator `g` in degree `q`.
    gen_faces: Vec<Vec<Vec<SimplexRef>>>,
    /// Generators above this degree were not enumerated.
    truncated_at: Option<usize>,
}

impl SimplicialSet {
    /// Builds a simplicial set after checking references and `d_i d_j = d_{j−1} d_i`
    /// on every generator.
    pub fn new(counts: Vec<usize>, gen_faces: Vec<Vec<Vec<SimplexRef>>>, truncated_at: Option<usize>) -> Result<Self> {
        let y = Self::from_raw(counts, gen_faces, truncated_at)?;
        y.check_generator_identities()?;
        Ok(y)
    }

    /// Shape and range checks only.
    pub fn from_raw(mut counts: Vec<usize>, mut gen_faces: Vec<Vec<Vec<SimplexRef>>>, truncated_at: Option<usize>) -> Result<Self> {
        if counts.is_empty() {
            counts.push(0);
            gen_faces.push(Vec::new());
        }
        if counts.len() != gen_faces.len() {
            return Err(invalid!("{} generator degrees but {} face blocks", counts.len(), gen_faces.len()));
        }
        if let Some(n) = truncated_at {
            if counts.len() > n + 1 {
                return Err(invalid!("generators above the truncation degree {n}"));
            }
        }
        for (q, gens) in gen_faces.iter().enumerate() {
            if gens.len() != counts[q] {
                return Err(invalid!("degree {q}: {} face lists for {} generators", gens.len(), counts[q]));
            }
            for (g, faces) in gens.iter().enumerate() {
                let expected = if q == 0 { 0 } else { q + 1 };
                if faces.len() != expected {
                    return Err(invalid!("generator {g} of degree {q} has {} faces, expected {expected}", faces.len()));
                }
                for (i, r) in faces.iter().enumerate() {
                    if r.degree() + 1 != q {
                        return Err(invalid!("face d{i} of generator ({q},{g}) has degree {}", r.degree()));
                    }
                    if r.idx >= counts.get(r.deg).copied().unwrap_or(0) {
                        return Err(invalid!("face d{i} of generator ({q},{g}) names a missing generator ({}, {})", r.deg, r.idx));
                    }
                    if !r.word.fits(r.deg) {
                        return Err(invalid!("face d{i} of generator ({q},{g}) has an ill-formed word {}", r.word));
                    }
                }
            }
        }
        Ok(Self { counts, gen_faces, truncated_at })
    }

    /// The free simplicial set `EX` on a semi-simplicial set: generators are
    /// the simplices of `X`, faces are those of `X` with empty words.
    pub fn free(x: &SemiSimplicialSet) -> Self {
        let counts = x.sizes().to_vec();
        let gen_faces = (0..counts.len())
            .map(|q| {
                (0..counts[q])
                    .map(|s| if q == 0 { Vec::new() } else { (0..=q).map(|i| SimplexRef::generator(q - 1, x.face(q, i, s))).collect() })
                    .collect()
            })
            .collect();
        Self { counts, gen_faces, truncated_at: x.truncated_at() }
    }

    /// The simplicial `n`-simplex `Δ^n`, which is `E(∇^n)`.
    pub fn standard(n: usize) -> Self {
        Self::free(&SemiSimplicialSet::standard(n))
    }

    pub fn point() -> Self {
        Self::standard(0)
    }

    pub fn generator_counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn generator_count(&self, q: usize) -> usize {
        self.counts.get(q).copied().unwrap_or(0)
    }

    pub fn generator_faces(&self, q: usize, g: usize) -> &[SimplexRef] {
        &self.gen_faces[q][g]
    }

    pub fn truncated_at(&self) -> Option<usize> {
        self.truncated_at
    }

    /// Highest degree with a generator, for complete presentations.
    pub fn dimension(&self) -> Option<usize> {
        if self.truncated_at.is_some() {
            return None;
        }
        self.counts.iter().rposition(|&c| c > 0)
    }

    /// Canonical form of `d_i` applied to `(w, g)`.
    ///
    /// Walks `d_i` rightwards through the word using `d_i s_j = s_{j−1} d_i`
    /// (`i < j`), `d_i s_j = s_j d_{i−1}` (`i > j+1`) and `d_j s_j = d_{j+1} s_j = id`;
    /// on reaching the generator the stored face is substituted.
    pub fn normalize_face(&self, i: usize, r: &SimplexRef) -> SimplexRef {
        debug_assert!(i <= r.degree());
        let mut i = i;
        let js = r.word.indices();
        let mut prefix = Vec::with_capacity(js.len());
        for (t, &j) in js.iter().enumerate() {
            if i < j {
                prefix.push(j - 1);
            } else if i == j || i == j + 1 {
                prefix.extend_from_slice(&js[t + 1..]);
                return SimplexRef { word: DegeneracyWord::canonicalize(prefix), deg: r.deg, idx: r.idx };
            } else {
                prefix.push(j);
                i -= 1;
            }
        }
        let face = &self.gen_faces[r.deg][r.idx][i];
        prefix.extend_from_slice(face.word.indices());
        SimplexRef { word: DegeneracyWord::canonicalize(prefix), deg: face.deg, idx: face.idx }
    }

    fn check_generator_identities(&self) -> Result<()> {
        for q in 2..self.counts.len() {
            for g in 0..self.counts[q] {
                let faces = &self.gen_faces[q][g];
                for j in 1..=q {
                    for i in 0..j {
                        let lhs = self.normalize_face(i, &faces[j]);
                        let rhs = self.normalize_face(j - 1, &faces[i]);
                        if lhs != rhs {
                            return Err(identity!(
                                "d{i} d{j} = d{} d{i} fails on generator ({q},{g}): {lhs} ≠ {rhs}",
                                j - 1
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Evaluates both sides of all five simplicial identities on every
    /// simplex of degree `≤ cutoff`.
    pub fn validate(&self, cutoff: usize) -> Result<()> {
        self.check_generator_identities()?;
        let e = self.enumerate(cutoff);
        let simplices = e.simplices.expect("enumerated from generators");
        for (p, level) in simplices.iter().enumerate() {
            for x in level {
                let face = |i: usize, y: &SimplexRef| self.normalize_face(i, y);
                for j in 0..=p {
                    let sx = x.degenerate(j);
                    // d_j s_j = d_{j+1} s_j = id
                    if face(j, &sx) != *x || face(j + 1, &sx) != *x {
                        return Err(identity!("d_j s_j = d_(j+1) s_j = id fails for j = {j} on {x}"));
                    }
                    for i in 0..=p + 1 {
                        if i < j {
                            if face(i, &sx) != face(i, x).degenerate(j - 1) {
                                return Err(identity!("d{i} s{j} = s{} d{i} fails on {x}", j - 1));
                            }
                        } else if i > j + 1 && face(i, &sx) != face(i - 1, x).degenerate(j) {
                            return Err(identity!("d{i} s{j} = s{j} d{} fails on {x}", i - 1));
                        }
                    }
                    for i in 0..=j {
                        if sx.degenerate(i) != x.degenerate(i).degenerate(j + 1) {
                            return Err(identity!("s{i} s{j} = s{} s{i} fails on {x}", j + 1));
                        }
                    }
                }
                if p >= 2 {
                    for j in 1..=p {
                        for i in 0..j {
                            if face(i, &face(j, x)) != face(j - 1, &face(i, x)) {
                                return Err(identity!("d{i} d{j} = d{} d{i} fails on {x}", j - 1));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn effective_cutoff(&self, cutoff: usize) -> usize {
        self.truncated_at.map_or(cutoff, |n| n.min(cutoff))
    }

    /// All simplices of degree `≤ cutoff` with face and degeneracy tables.
    ///
    /// Level `p` is ordered by generator degree, generator index, then word.
    pub fn enumerate(&self, cutoff: usize) -> EnumeratedSimplicialSet {
        let cutoff = self.effective_cutoff(cutoff);
        let mut simplices: Vec<Vec<SimplexRef>> = Vec::with_capacity(cutoff + 1);
        for p in 0..=cutoff {
            let mut level = Vec::new();
            for m in 0..=p.min(self.counts.len() - 1) {
                let words = DegeneracyWord::all(m, p - m);
                for g in 0..self.counts[m] {
                    for w in &words {
                        level.push(SimplexRef { word: w.clone(), deg: m, idx: g });
                    }
                }
            }
            simplices.push(level);
        }
        let index: Vec<HashMap<SimplexRef, usize>> =
            simplices.iter().map(|l| l.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect()).collect();
        let mut faces = vec![Vec::new()];
        for p in 1..=cutoff {
            let tables = (0..=p)
                .map(|i| simplices[p].iter().map(|r| index[p - 1][&self.normalize_face(i, r)]).collect())
                .collect();
            faces.push(tables);
        }
        let mut degeneracies = Vec::with_capacity(cutoff);
        for p in 0..cutoff {
            let tables = (0..=p)
                .map(|j| simplices[p].iter().map(|r| index[p + 1][&r.degenerate(j)]).collect())
                .collect();
            degeneracies.push(tables);
        }
        let sizes = simplices.iter().map(Vec::len).collect();
        let sset = SemiSimplicialSet::from_parts_unchecked(sizes, faces, Some(cutoff));
        EnumeratedSimplicialSet { sset, degeneracies, simplices: Some(simplices) }
    }

    /// Unit of the free/forget adjunction: `X_p → (EX)_p`, sending `s` to
    /// the generator `s` with the empty word.
    pub fn unit_map(x: &SemiSimplicialSet, cutoff: usize) -> (EnumeratedSimplicialSet, SSetMap) {
        let ex = SimplicialSet::free(x).enumerate(cutoff);
        let refs = ex.simplices.as_ref().expect("enumerated from generators");
        let index: Vec<HashMap<&SimplexRef, usize>> =
            refs.iter().map(|l| l.iter().enumerate().map(|(k, r)| (r, k)).collect()).collect();
        let levels = (0..=ex.sset.max_level().min(x.max_level()))
            .map(|p| (0..x.size(p)).map(|s| index[p][&SimplexRef::generator(p, s)]).collect())
            .collect();
        (ex, SSetMap::new(levels))
    }
}

/// A simplicial set given levelwise, up to a cutoff.
#[derive(Clone, Debug)]
pub struct EnumeratedSimplicialSet {
    pub sset: SemiSimplicialSet,
    /// `degeneracies[p][j][s]` is `s_j s` for `s` in level `p < cutoff`.
    pub degeneracies: Vec<Vec<Vec<usize>>>,
    /// Normal forms of the simplices when enumerated from a presentation.
    pub simplices: Option<Vec<Vec<SimplexRef>>>,
}

impl EnumeratedSimplicialSet {
    pub fn new(sset: SemiSimplicialSet, degeneracies: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let levels = sset.max_level();
        if degeneracies.len() != levels {
            return Err(invalid!("{} degeneracy blocks for {} stored levels", degeneracies.len(), levels + 1));
        }
        for (p, block) in degeneracies.iter().enumerate() {
            if block.len() != p + 1 || block.iter().any(|t| t.len() != sset.size(p) || t.iter().any(|&v| v >= sset.size(p + 1))) {
                return Err(invalid!("malformed degeneracy tables at level {p}"));
            }
        }
        let e = Self { sset, degeneracies, simplices: None };
        e.check_identities()?;
        Ok(e)
    }

    pub fn cutoff(&self) -> usize {
        self.sset.max_level()
    }

    pub fn degeneracy(&self, p: usize, j: usize, s: usize) -> usize {
        self.degeneracies[p][j][s]
    }

    /// Checks the four identities that involve degeneracies.
    pub fn check_identities(&self) -> Result<()> {
        let x = &self.sset;
        for p in 0..self.degeneracies.len() {
            for s in 0..x.size(p) {
                for j in 0..=p {
                    let sx = self.degeneracies[p][j][s];
                    if x.face(p + 1, j, sx) != s || x.face(p + 1, j + 1, sx) != s {
                        return Err(identity!("d_j s_j = d_(j+1) s_j = id fails, j = {j}, simplex {s} of degree {p}"));
                    }
                    for i in 0..=p + 1 {
                        if i < j && x.face(p + 1, i, sx) != self.degeneracies[p - 1][j - 1][x.face(p, i, s)] {
                            return Err(identity!("d{i} s{j} = s{} d{i} fails on simplex {s} of degree {p}", j - 1));
                        }
                        if i > j + 1 && x.face(p + 1, i, sx) != self.degeneracies[p - 1][j][x.face(p, i - 1, s)] {
                            return Err(identity!("d{i} s{j} = s{j} d{} fails on simplex {s} of degree {p}", i - 1));
                        }
                    }
                    if p + 1 < self.degeneracies.len() {
                        for i in 0..=j {
                            let lhs = self.degeneracies[p + 1][i][sx];
                            let rhs = self.degeneracies[p + 1][j + 1][self.degeneracies[p][i][s]];
                            if lhs != rhs {
                                return Err(identity!("s{i} s{j} = s{} s{i} fails on simplex {s} of degree {p}", j + 1));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The non-degenerate presentation of the levels `≤ cutoff`.
    ///
    /// A simplex `y` is `s_j` of something exactly when `y = s_j d_j y`; the
    /// set of such `j` is the word of its normal form, and deleting those
    /// repeated vertices gives the underlying generator.
    pub fn present(&self) -> SimplicialSet {
        let x = &self.sset;
        let cutoff = self.cutoff();
        let mut gen_index: Vec<HashMap<usize, usize>> = Vec::new();
        let mut normal: Vec<Vec<SimplexRef>> = Vec::new();
        let mut counts = Vec::new();
        for p in 0..=cutoff {
            let mut gens = HashMap::new();
            let mut forms = Vec::with_capacity(x.size(p));
            for s in 0..x.size(p) {
                let js: Vec<usize> = (0..p).rev().filter(|&j| self.degeneracies[p - 1][j][x.face(p, j, s)] == s).collect();
                if js.is_empty() {
                    let g = gens.len();
                    gens.insert(s, g);
                    forms.push(SimplexRef::generator(p, g));
                } else {
                    let mut base = s;
                    let mut deg = p;
                    for &j in &js {
                        base = x.face(deg, j, base);
                        deg -= 1;
                    }
                    let mut r = normal[deg][base].clone();
                    debug_assert!(r.word.is_empty());
                    r.word = DegeneracyWord::new(js).expect("collected in decreasing order");
                    forms.push(r);
                }
            }
            counts.push(gens.len());
            gen_index.push(gens);
            normal.push(forms);
        }
        let mut gen_faces = Vec::with_capacity(cutoff + 1);
        for p in 0..=cutoff {
            let mut by_gen = vec![Vec::new(); counts[p]];
            for (&s, &g) in &gen_index[p] {
                by_gen[g] = if p == 0 { Vec::new() } else { (0..=p).map(|i| normal[p - 1][x.face(p, i, s)].clone()).collect() };
            }
            gen_faces.push(by_gen);
        }
        let truncated_at = x.truncated_at().or(Some(cutoff));
        SimplicialSet { counts, gen_faces, truncated_at }
    }
}

/// Counit followed by unit, levelwise: for every simplex `y` of `Y`, the
/// generator `y` of `E(FY)` maps back to `y`. Returns the first failure.
pub fn check_triangle_identity(y: &SimplicialSet, cutoff: usize) -> Result<()> {
    let fy = y.enumerate(cutoff);
    let (efy, unit) = SimplicialSet::unit_map(&fy.sset, cutoff);
    let refs = efy.simplices.as_ref().expect("enumerated");
    for p in 0..unit.depth() {
        for (s, &t) in unit.level(p).iter().enumerate() {
            let image = counit_value(&fy, &refs[p][t]);
            if image != s {
                return Err(Error::Identity(format!("counit ∘ unit ≠ id at simplex {s} of degree {p}")));
            }
        }
    }
    Ok(())
}

/// The counit `E(FY) → Y` on one simplex: apply the word to the generator
/// using the degeneracy tables of `FY`.
pub fn counit_value(fy: &EnumeratedSimplicialSet, r: &SimplexRef) -> usize {
    let mut s = r.idx;
    let mut deg = r.deg;
    for &j in r.word.indices().iter().rev() {
        s = fy.degeneracies[deg][j][s];
        deg += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> SimplicialSet {
        SimplicialSet::free(&SemiSimplicialSet::boundary(2).unwrap())
    }

    #[test]
    fn point_has_one_simplex_per_level() {
        let e = SimplicialSet::point().enumerate(5);
        assert_eq!(e.sset.sizes(), &[1; 6]);
    }

    #[test]
    fn simplicial_interval_levels() {
        // monotone maps [p] → [1]: p + 2 of them
        let e = SimplicialSet::standard(1).enumerate(2);
        assert_eq!(e.sset.sizes(), &[2, 3, 4]);
        assert!(e.sset.validate().valid);
    }

    #[test]
    fn free_interval_level_two() {
        let e = SimplicialSet::free(&SemiSimplicialSet::standard(1)).enumerate(2);
        assert_eq!(e.sset.size(2), 4);
    }

    #[test]
    fn face_rewrites() {
        let y = circle();
        let g = SimplexRef::generator(1, 0);
        // d_0 s_0 = id
        assert_eq!(y.normalize_face(0, &g.degenerate(0)), g);
        assert_eq!(y.normalize_face(1, &g.degenerate(0)), g);
        // d_2 s_0 = s_0 d_1
        let lhs = y.normalize_face(2, &g.degenerate(0));
        let rhs = y.normalize_face(1, &g).degenerate(0);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalize_is_idempotent_on_canonical_refs() {
        let y = circle();
        let e = y.enumerate(3);
        for level in e.simplices.unwrap() {
            for r in level {
                assert_eq!(SimplexRef { word: DegeneracyWord::canonicalize(r.word.indices().to_vec()), ..r.clone() }, r);
            }
        }
    }

    #[test]
    fn enumeration_satisfies_identities() {
        let y = circle();
        y.validate(4).unwrap();
        let e = y.enumerate(4);
        e.check_identities().unwrap();
    }

    #[test]
    fn presentation_round_trip() {
        let y = circle();
        let p = y.enumerate(4).present();
        assert_eq!(p.generator_counts(), &[3, 3, 0, 0, 0]);
        for g in 0..3 {
            assert_eq!(p.generator_faces(1, g), y.generator_faces(1, g));
        }
    }

    #[test]
    fn empty_word_restriction_is_identity() {
        let x = SemiSimplicialSet::boundary(3).unwrap();
        let (ex, unit) = SimplicialSet::unit_map(&x, 4);
        unit.check(&x, &ex.sset).unwrap();
        let refs = ex.simplices.unwrap();
        for p in 0..=2 {
            for s in 0..x.size(p) {
                assert_eq!(refs[p][unit.level(p)[s]], SimplexRef::generator(p, s));
            }
        }
    }

    #[test]
    fn triangle_identity() {
        check_triangle_identity(&circle(), 4).unwrap();
        check_triangle_identity(&SimplicialSet::standard(2), 3).unwrap();
    }

    #[test]
    fn rejects_inconsistent_generator() {
        // a triangle whose faces do not match up at the vertices
        let counts = vec![2, 1, 1];
        let e = |d, i| SimplexRef::generator(d, i);
        let faces = vec![
            vec![vec![], vec![]],
            vec![vec![e(0, 1), e(0, 0)]],
            vec![vec![e(1, 0), e(1, 0), e(1, 0)]],
        ];
        assert!(SimplicialSet::new(counts, faces, None).is_err());
    }
}
