//! Finite discrete categories, possibly without identities.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{identity, invalid, Result};
use crate::sset::{EnumeratedSimplicialSet, SemiSimplicialSet};

/// A finite category in which identities are optional.
///
/// Composition is stored as `m(f, g) = g ∘ f`, defined exactly when
/// `tgt(f) = src(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinNonUnitalCategory {
    objects: usize,
    morphisms: Vec<(usize, usize)>,
    /// `compose[f][g] = m(f, g)` when composable.
    compose: Vec<Vec<Option<usize>>>,
    units: Option<Vec<usize>>,
}

/// One entry of a composition table, `m(f, g) = gf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub struct Composite {
    pub f: usize,
    pub g: usize,
    pub gf: usize,
}

impl FinNonUnitalCategory {
    /// Builds and validates a category. `compose` must list every composable pair once.
    pub fn new(objects: usize, morphisms: Vec<(usize, usize)>, compose: &[Composite], units: Option<Vec<usize>>) -> Result<Self> {
        let n = morphisms.len();
        if let Some(k) = morphisms.iter().position(|&(s, t)| s >= objects || t >= objects) {
            return Err(invalid!("morphism {k} has an endpoint out of range"));
        }
        let mut table = vec![vec![None; n]; n];
        for c in compose {
            if c.f >= n || c.g >= n || c.gf >= n {
                return Err(invalid!("composite ({}, {}) = {} refers to a missing morphism", c.f, c.g, c.gf));
            }
            if table[c.f][c.g].replace(c.gf).is_some() {
                return Err(invalid!("composite of ({}, {}) listed twice", c.f, c.g));
            }
        }
        let cat = Self { objects, morphisms, compose: table, units };
        cat.validate()?;
        Ok(cat)
    }

    pub(crate) fn from_table(objects: usize, morphisms: Vec<(usize, usize)>, compose: Vec<Vec<Option<usize>>>, units: Option<Vec<usize>>) -> Result<Self> {
        let cat = Self { objects, morphisms, compose, units };
        cat.validate()?;
        Ok(cat)
    }

    /// Checks composability, endpoints, associativity and unit laws exhaustively.
    pub fn validate(&self) -> Result<()> {
        let n = self.morphisms.len();
        for f in 0..n {
            for g in 0..n {
                let composable = self.tgt(f) == self.src(g);
                match self.compose[f][g] {
                    Some(_) if !composable => return Err(invalid!("composite of non-composable ({f}, {g}) given")),
                    None if composable => return Err(invalid!("composite of ({f}, {g}) missing")),
                    Some(gf) if self.src(gf) != self.src(f) || self.tgt(gf) != self.tgt(g) => {
                        return Err(identity!("m({f}, {g}) = {gf} has the wrong endpoints"))
                    }
                    _ => {}
                }
            }
        }
        for f in 0..n {
            for g in 0..n {
                let Some(gf) = self.compose[f][g] else { continue };
                for h in 0..n {
                    let Some(hg) = self.compose[g][h] else { continue };
                    if self.compose[gf][h] != self.compose[f][hg] {
                        return Err(identity!("associativity fails for ({f}, {g}, {h})"));
                    }
                }
            }
        }
        if let Some(units) = &self.units {
            if units.len() != self.objects {
                return Err(invalid!("{} units for {} objects", units.len(), self.objects));
            }
            for (c, &u) in units.iter().enumerate() {
                if u >= n || self.morphisms[u] != (c, c) {
                    return Err(invalid!("unit of object {c} is not an endomorphism of it"));
                }
            }
            for f in 0..n {
                let (s, t) = self.morphisms[f];
                if self.compose[units[s]][f] != Some(f) || self.compose[f][units[t]] != Some(f) {
                    return Err(identity!("units are not two-sided identities for morphism {f}"));
                }
            }
        }
        Ok(())
    }

    /// The poset `[n] = {0 < … < n}` with identities; morphisms `(i, j)`, `i ≤ j`, in lexicographic order.
    pub fn poset(n: usize) -> Self {
        let mut morphisms = Vec::new();
        for i in 0..=n {
            for j in i..=n {
                morphisms.push((i, j));
            }
        }
        let index: HashMap<(usize, usize), usize> = morphisms.iter().enumerate().map(|(k, &m)| (m, k)).collect();
        let compose = morphisms
            .iter()
            .map(|&(i, j)| morphisms.iter().map(|&(a, b)| (a == j).then(|| index[&(i, b)])).collect())
            .collect();
        let units = (0..=n).map(|i| index[&(i, i)]).collect();
        Self { objects: n + 1, morphisms, compose, units: Some(units) }
    }

    /// `n` objects and no morphisms.
    pub fn discrete(n: usize) -> Self {
        Self { objects: n, morphisms: Vec::new(), compose: Vec::new(), units: None }
    }

    /// The discrete category with identities only.
    pub fn discrete_unital(n: usize) -> Self {
        Self::discrete(n).unitalize()
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphisms(&self) -> &[(usize, usize)] {
        &self.morphisms
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].0
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].1
    }

    /// `m(f, g) = g ∘ f`.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.compose[f][g]
    }

    /// The composition table as a list, ordered by `(f, g)`.
    pub fn composites(&self) -> Vec<Composite> {
        let mut out = Vec::new();
        for (f, row) in self.compose.iter().enumerate() {
            for (g, gf) in row.iter().enumerate() {
                if let Some(gf) = gf {
                    out.push(Composite { f, g, gf: *gf });
                }
            }
        }
        out
    }

    pub fn units(&self) -> Option<&[usize]> {
        self.units.as_deref()
    }

    pub fn is_unital(&self) -> bool {
        self.units.is_some()
    }

    pub fn unit(&self, c: usize) -> Option<usize> {
        self.units.as_ref().map(|u| u[c])
    }

    /// `𝒞⁺`: the morphisms of `𝒞` followed by one fresh unit per object.
    pub fn unitalize(&self) -> Self {
        let n = self.morphisms.len();
        let total = n + self.objects;
        let mut morphisms = self.morphisms.clone();
        morphisms.extend((0..self.objects).map(|c| (c, c)));
        let mut compose = vec![vec![None; total]; total];
        for f in 0..n {
            compose[f][..n].copy_from_slice(&self.compose[f]);
        }
        for f in 0..total {
            let (s, t) = morphisms[f];
            compose[n + s][f] = Some(f);
            compose[f][n + t] = Some(f);
        }
        Self { objects: self.objects, morphisms, compose, units: Some((n..total).collect()) }
    }

    /// Forgets the declared units.
    pub fn without_units(&self) -> Self {
        Self { units: None, ..self.clone() }
    }

    /// The opposite category: the same morphisms with endpoints swapped.
    pub fn opposite(&self) -> Self {
        let n = self.morphisms.len();
        let morphisms = self.morphisms.iter().map(|&(s, t)| (t, s)).collect();
        let compose = (0..n).map(|f| (0..n).map(|g| self.compose[g][f]).collect()).collect();
        Self { objects: self.objects, morphisms, compose, units: self.units.clone() }
    }

    /// The product category; object `(a, b)` has index `a·|B| + b`, morphism `(f, g)` index `f·|Mor B| + g`.
    pub fn product(&self, other: &Self) -> Self {
        let (n, m) = (self.morphisms.len(), other.morphisms.len());
        let ob = |a: usize, b: usize| a * other.objects + b;
        let mut morphisms = Vec::with_capacity(n * m);
        for f in 0..n {
            for g in 0..m {
                morphisms.push((ob(self.src(f), other.src(g)), ob(self.tgt(f), other.tgt(g))));
            }
        }
        let mut compose = vec![vec![None; n * m]; n * m];
        for f1 in 0..n {
            for g1 in 0..m {
                for f2 in 0..n {
                    for g2 in 0..m {
                        if let (Some(a), Some(b)) = (self.compose[f1][f2], other.compose[g1][g2]) {
                            compose[f1 * m + g1][f2 * m + g2] = Some(a * m + b);
                        }
                    }
                }
            }
        }
        let units = match (&self.units, &other.units) {
            (Some(u), Some(v)) => Some((0..self.objects).flat_map(|a| (0..other.objects).map(move |b| u[a] * m + v[b])).collect()),
            _ => None,
        };
        Self { objects: self.objects * other.objects, morphisms, compose, units }
    }

    /// `𝒞/c`: objects are the morphisms into `c` in index order; a morphism
    /// `f → g` is an `h` with `g ∘ h = f`. Morphisms are ordered by `(f, g, h)`.
    pub fn over(&self, c: usize) -> Result<Self> {
        self.slice(c, false)
    }

    /// `c/𝒞`: objects are the morphisms out of `c`; a morphism `f → g` is an `h` with `h ∘ f = g`.
    pub fn under(&self, c: usize) -> Result<Self> {
        self.slice(c, true)
    }

    /// The morphisms of `𝒞` underlying the objects of the slice at `c`.
    pub fn slice_objects(&self, c: usize, under: bool) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| if under { self.src(f) == c } else { self.tgt(f) == c }).collect()
    }

    fn slice(&self, c: usize, under: bool) -> Result<Self> {
        if c >= self.objects {
            return Err(invalid!("object {c} out of range"));
        }
        let obs = self.slice_objects(c, under);
        let mut morphisms = Vec::new();
        let mut under_h = Vec::new();
        for (a, &f) in obs.iter().enumerate() {
            for (b, &g) in obs.iter().enumerate() {
                for h in 0..self.morphisms.len() {
                    let ok = if under { self.compose[f][h] == Some(g) } else { self.compose[h][g] == Some(f) };
                    if ok {
                        morphisms.push((a, b));
                        under_h.push(h);
                    }
                }
            }
        }
        let index: HashMap<(usize, usize, usize), usize> =
            morphisms.iter().zip(&under_h).enumerate().map(|(k, (&(a, b), &h))| ((a, b, h), k)).collect();
        let k = morphisms.len();
        let mut compose = vec![vec![None; k]; k];
        for x in 0..k {
            for y in 0..k {
                if morphisms[x].1 == morphisms[y].0 {
                    let h = self.compose[under_h[x]][under_h[y]].expect("slice morphisms compose in 𝒞");
                    compose[x][y] = Some(index[&(morphisms[x].0, morphisms[y].1, h)]);
                }
            }
        }
        let units = self.units.as_ref().map(|u| {
            obs.iter()
                .enumerate()
                .map(|(a, &f)| {
                    let e = if under { u[self.tgt(f)] } else { u[self.src(f)] };
                    index[&(a, a, e)]
                })
                .collect()
        });
        Self::from_table(obs.len(), morphisms, compose, units)
    }

    /// An object receiving exactly one morphism from every object, if any.
    pub fn terminal_object(&self) -> Option<usize> {
        (0..self.objects).find(|&t| (0..self.objects).all(|c| self.morphisms.iter().filter(|&&m| m == (c, t)).count() == 1))
    }

    /// Composable chains of length `p` in lexicographic order; length 0 lists the objects.
    pub fn chains(&self, p: usize) -> Vec<Vec<usize>> {
        if p == 0 {
            return (0..self.objects).map(|c| vec![c]).collect();
        }
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(p);
        self.extend_chains(p, &mut cur, &mut out);
        out
    }

    fn extend_chains(&self, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for f in 0..self.morphisms.len() {
            if cur.last().map_or(true, |&l| self.tgt(l) == self.src(f)) {
                cur.push(f);
                self.extend_chains(p, cur, out);
                cur.pop();
            }
        }
    }

    /// The semi-simplicial nerve through degree `cutoff`.
    pub fn nerve(&self, cutoff: usize) -> SemiSimplicialSet {
        self.nerve_with_chains(cutoff).0
    }

    /// The nerve together with the chain listed at each index.
    pub fn nerve_with_chains(&self, cutoff: usize) -> (SemiSimplicialSet, Vec<Vec<Vec<usize>>>) {
        let chains: Vec<Vec<Vec<usize>>> = (0..=cutoff).map(|p| self.chains(p)).collect();
        let faces = (0..=cutoff)
            .map(|p| if p == 0 { Vec::new() } else { (0..=p).map(|i| self.face_table(&chains, p, i)).collect() })
            .collect();
        let sizes = chains.iter().map(Vec::len).collect();
        (SemiSimplicialSet::from_parts_unchecked(sizes, faces, Some(cutoff)), chains)
    }

    fn face_table(&self, chains: &[Vec<Vec<usize>>], p: usize, i: usize) -> Vec<usize> {
        let index: HashMap<&[usize], usize> = chains[p - 1].iter().enumerate().map(|(k, c)| (c.as_slice(), k)).collect();
        chains[p]
            .iter()
            .map(|c| {
                let d = self.chain_face(c, i);
                if p == 1 {
                    d[0]
                } else {
                    index[d.as_slice()]
                }
            })
            .collect()
    }

    /// `d_i` of a chain of length `p ≥ 1`; for `p = 1` the result is the remaining object.
    pub fn chain_face(&self, c: &[usize], i: usize) -> Vec<usize> {
        let p = c.len();
        if p == 1 {
            return vec![if i == 0 { self.tgt(c[0]) } else { self.src(c[0]) }];
        }
        let mut d = c.to_vec();
        if i == 0 {
            d.remove(0);
        } else if i == p {
            d.pop();
        } else {
            let gf = self.compose[c[i - 1]][c[i]].expect("chain is composable");
            d.splice(i - 1..=i, [gf]);
        }
        d
    }

    /// `s_j` of a chain: insert the unit at vertex `j`.
    pub fn chain_degeneracy(&self, c: &[usize], j: usize, p: usize) -> Option<Vec<usize>> {
        let units = self.units.as_ref()?;
        if p == 0 {
            return Some(vec![units[c[0]]]);
        }
        let obj = if j == 0 { self.src(c[0]) } else { self.tgt(c[j - 1]) };
        let mut d = c.to_vec();
        d.insert(j, units[obj]);
        Some(d)
    }

    /// The nerve of a unital category with its degeneracies, through `cutoff`.
    pub fn unital_nerve(&self, cutoff: usize) -> Result<EnumeratedSimplicialSet> {
        if !self.is_unital() {
            return Err(invalid!("degeneracies need units"));
        }
        let (x, chains) = self.nerve_with_chains(cutoff);
        let mut degeneracies = vec![Vec::new(); cutoff];
        for p in 0..cutoff {
            let index: HashMap<&[usize], usize> = chains[p + 1].iter().enumerate().map(|(k, c)| (c.as_slice(), k)).collect();
            degeneracies[p] = (0..=p)
                .map(|j| chains[p].iter().map(|c| index[self.chain_degeneracy(c, j, p).unwrap().as_slice()]).collect())
                .collect();
        }
        EnumeratedSimplicialSet::new(x, degeneracies)
    }
}
