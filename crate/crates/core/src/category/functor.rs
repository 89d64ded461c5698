//! Functors, natural transformations and the homotopies they induce on nerves.

use std::collections::HashMap;

use crate::category::FinNonUnitalCategory;
use crate::error::{identity, invalid, Result};
use crate::sset::{HomotopyCertificate, SSetMap};

/// A functor between finite categories given by its object and morphism maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorData {
    source: FinNonUnitalCategory,
    target: FinNonUnitalCategory,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
    unital: bool,
}

impl FunctorData {
    /// Builds and validates a functor. With `unital` set, units must go to units.
    pub fn new(
        source: FinNonUnitalCategory,
        target: FinNonUnitalCategory,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
        unital: bool,
    ) -> Result<Self> {
        let f = Self { source, target, objects, morphisms, unital };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let (c, d) = (&self.source, &self.target);
        if self.objects.len() != c.objects() || self.morphisms.len() != c.morphism_count() {
            return Err(invalid!("functor tables do not match the source category"));
        }
        if self.objects.iter().any(|&x| x >= d.objects()) || self.morphisms.iter().any(|&x| x >= d.morphism_count()) {
            return Err(invalid!("functor tables point outside the target category"));
        }
        for f in 0..c.morphism_count() {
            let ff = self.morphisms[f];
            if d.src(ff) != self.objects[c.src(f)] || d.tgt(ff) != self.objects[c.tgt(f)] {
                return Err(identity!("F({f}) has the wrong endpoints"));
            }
            for g in 0..c.morphism_count() {
                if let Some(gf) = c.compose(f, g) {
                    if d.compose(ff, self.morphisms[g]) != Some(self.morphisms[gf]) {
                        return Err(identity!("F does not preserve the composite of ({f}, {g})"));
                    }
                }
            }
        }
        if self.unital {
            match (c.units(), d.units()) {
                (Some(u), Some(v)) => {
                    for (x, &e) in u.iter().enumerate() {
                        if self.morphisms[e] != v[self.objects[x]] {
                            return Err(identity!("F does not send the unit of {x} to a unit"));
                        }
                    }
                }
                _ => return Err(invalid!("a unital functor needs units on both sides")),
            }
        }
        Ok(())
    }

    pub fn identity(c: &FinNonUnitalCategory) -> Self {
        Self {
            source: c.clone(),
            target: c.clone(),
            objects: (0..c.objects()).collect(),
            morphisms: (0..c.morphism_count()).collect(),
            unital: c.is_unital(),
        }
    }

    /// The constant functor at an object `d` of a unital target.
    pub fn constant(c: &FinNonUnitalCategory, target: &FinNonUnitalCategory, d: usize) -> Result<Self> {
        let e = target.unit(d).ok_or_else(|| invalid!("a constant functor needs a unit at {d}"))?;
        Self::new(c.clone(), target.clone(), vec![d; c.objects()], vec![e; c.morphism_count()], c.is_unital())
    }

    /// `𝒞 → 𝒞⁺`.
    pub fn unitalization(c: &FinNonUnitalCategory) -> Self {
        Self {
            source: c.clone(),
            target: c.unitalize(),
            objects: (0..c.objects()).collect(),
            morphisms: (0..c.morphism_count()).collect(),
            unital: false,
        }
    }

    /// The inclusion of a full subcategory of a poset-like category on the listed objects.
    pub fn full_inclusion(d: &FinNonUnitalCategory, objects: &[usize]) -> Result<Self> {
        let pos: HashMap<usize, usize> = objects.iter().enumerate().map(|(k, &o)| (o, k)).collect();
        let kept: Vec<usize> = (0..d.morphism_count()).filter(|&f| pos.contains_key(&d.src(f)) && pos.contains_key(&d.tgt(f))).collect();
        let idx: HashMap<usize, usize> = kept.iter().enumerate().map(|(k, &f)| (f, k)).collect();
        let morphisms = kept.iter().map(|&f| (pos[&d.src(f)], pos[&d.tgt(f)])).collect();
        let composites: Vec<_> = kept
            .iter()
            .flat_map(|&f| kept.iter().map(move |&g| (f, g)))
            .filter_map(|(f, g)| d.compose(f, g).map(|gf| crate::category::Composite { f: idx[&f], g: idx[&g], gf: idx[&gf] }))
            .collect();
        let units = d.units().map(|u| objects.iter().map(|&o| idx[&u[o]]).collect());
        let c = FinNonUnitalCategory::new(objects.len(), morphisms, &composites, units)?;
        Self::new(c, d.clone(), objects.to_vec(), kept, d.is_unital())
    }

    pub fn source(&self) -> &FinNonUnitalCategory {
        &self.source
    }

    pub fn target(&self) -> &FinNonUnitalCategory {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphisms
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn on_object(&self, c: usize) -> usize {
        self.objects[c]
    }

    pub fn on_morphism(&self, f: usize) -> usize {
        self.morphisms[f]
    }

    /// `F^op : 𝒞^op → 𝒟^op`.
    pub fn opposite(&self) -> Self {
        Self {
            source: self.source.opposite(),
            target: self.target.opposite(),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            unital: self.unital,
        }
    }

    pub fn then(&self, g: &FunctorData) -> Result<Self> {
        if self.target != g.source {
            return Err(invalid!("functors are not composable"));
        }
        Self::new(
            self.source.clone(),
            g.target.clone(),
            self.objects.iter().map(|&x| g.objects[x]).collect(),
            self.morphisms.iter().map(|&x| g.morphisms[x]).collect(),
            self.unital && g.unital,
        )
    }

    /// `F/b`: objects `(a, g : F(a) → b)` ordered by `(a, g)`; a morphism
    /// `(a, g) → (a', g')` is an `h : a → a'` with `g' ∘ F(h) = g`.
    pub fn comma_over(&self, b: usize) -> Result<FinNonUnitalCategory> {
        let (c, d) = (&self.source, &self.target);
        if b >= d.objects() {
            return Err(invalid!("object {b} out of range"));
        }
        let obs: Vec<(usize, usize)> = (0..c.objects())
            .flat_map(|a| (0..d.morphism_count()).filter(move |&g| d.src(g) == self.objects[a] && d.tgt(g) == b).map(move |g| (a, g)))
            .collect();
        let mut morphisms = Vec::new();
        let mut under_h = Vec::new();
        for (x, &(a, g)) in obs.iter().enumerate() {
            for (y, &(a2, g2)) in obs.iter().enumerate() {
                for h in (0..c.morphism_count()).filter(|&h| c.src(h) == a && c.tgt(h) == a2) {
                    if d.compose(self.morphisms[h], g2) == Some(g) {
                        morphisms.push((x, y));
                        under_h.push(h);
                    }
                }
            }
        }
        let index: HashMap<(usize, usize, usize), usize> =
            morphisms.iter().zip(&under_h).enumerate().map(|(k, (&(x, y), &h))| ((x, y, h), k)).collect();
        let k = morphisms.len();
        let mut compose = vec![vec![None; k]; k];
        for u in 0..k {
            for v in (0..k).filter(|&v| morphisms[u].1 == morphisms[v].0) {
                let h = c.compose(under_h[u], under_h[v]).expect("composable in the source");
                compose[u][v] = Some(index[&(morphisms[u].0, morphisms[v].1, h)]);
            }
        }
        let units = match (self.unital, c.units()) {
            (true, Some(us)) => Some(obs.iter().enumerate().map(|(x, &(a, _))| index[&(x, x, us[a])]).collect()),
            _ => None,
        };
        FinNonUnitalCategory::from_table(obs.len(), morphisms, compose, units)
    }

    /// `(b/F)^op`, computed as `F^op/b`; it has the homology of `b/F`.
    pub fn comma_under(&self, b: usize) -> Result<FinNonUnitalCategory> {
        self.opposite().comma_over(b)
    }

    /// `N F` as index tables through `cutoff`.
    pub fn nerve_map(&self, cutoff: usize) -> SSetMap {
        let src = &self.source;
        let tgt_chains: Vec<HashMap<Vec<usize>, usize>> =
            (0..=cutoff).map(|p| self.target.chains(p).into_iter().enumerate().map(|(k, c)| (c, k)).collect()).collect();
        SSetMap::new(
            (0..=cutoff)
                .map(|p| {
                    src.chains(p)
                        .iter()
                        .map(|c| {
                            let image: Vec<usize> =
                                if p == 0 { vec![self.objects[c[0]]] } else { c.iter().map(|&f| self.morphisms[f]).collect() };
                            tgt_chains[p][&image]
                        })
                        .collect()
                })
                .collect(),
        )
    }
}

/// A natural transformation `η : F ⇒ G` with components `η_c : F c → G c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransData {
    from: FunctorData,
    to: FunctorData,
    components: Vec<usize>,
}

impl NatTransData {
    pub fn new(from: FunctorData, to: FunctorData, components: Vec<usize>) -> Result<Self> {
        if from.source != to.source || from.target != to.target {
            return Err(invalid!("the two functors must share source and target"));
        }
        let c = &from.source;
        let d = &from.target;
        if components.len() != c.objects() || components.iter().any(|&e| e >= d.morphism_count()) {
            return Err(invalid!("components must give one target morphism per object"));
        }
        for (x, &e) in components.iter().enumerate() {
            if d.src(e) != from.objects[x] || d.tgt(e) != to.objects[x] {
                return Err(identity!("η_{x} does not go from F({x}) to G({x})"));
            }
        }
        for f in 0..c.morphism_count() {
            let (a, b) = (c.src(f), c.tgt(f));
            // G(f) ∘ η_a = η_b ∘ F(f)
            if d.compose(components[a], to.morphisms[f]) != d.compose(from.morphisms[f], components[b]) {
                return Err(identity!("naturality fails at morphism {f}"));
            }
        }
        Ok(Self { from, to, components })
    }

    pub fn from(&self) -> &FunctorData {
        &self.from
    }

    pub fn to(&self) -> &FunctorData {
        &self.to
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }
}

/// The homotopy `h_{p+1,i}(f_1, …, f_p) = (F f_1, …, F f_i, η_{c_i}, G f_{i+1}, …, G f_p)`.
///
/// Its faces satisfy `d_0 h_{p+1,0} = N G` and `d_{p+1} h_{p+1,p} = N F`, so
/// as a certificate it runs from `N G` to `N F`.
pub fn nat_trans_homotopy(eta: &NatTransData, cutoff: usize) -> Result<HomotopyCertificate> {
    if cutoff == 0 {
        return Err(invalid!("a homotopy needs cutoff ≥ 1"));
    }
    let c = &eta.from.source;
    let d = &eta.from.target;
    let source = c.nerve(cutoff);
    let target = d.nerve(cutoff);
    let index: Vec<HashMap<Vec<usize>, usize>> =
        (0..=cutoff).map(|p| d.chains(p).into_iter().enumerate().map(|(k, ch)| (ch, k)).collect()).collect();
    let maps = (0..cutoff)
        .map(|p| {
            (0..=p)
                .map(|i| {
                    c.chains(p)
                        .iter()
                        .map(|ch| {
                            let vertex = if p == 0 { ch[0] } else if i == 0 { c.src(ch[0]) } else { c.tgt(ch[i - 1]) };
                            let mut image = Vec::with_capacity(p + 1);
                            if p > 0 {
                                image.extend(ch[..i].iter().map(|&f| eta.from.morphisms[f]));
                            }
                            image.push(eta.components[vertex]);
                            if p > 0 {
                                image.extend(ch[i..].iter().map(|&f| eta.to.morphisms[f]));
                            }
                            index[p + 1][&image]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let f = eta.to.nerve_map(cutoff);
    let g = eta.from.nerve_map(cutoff);
    Ok(HomotopyCertificate::Homotopy { source, target, f, g, maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::{chain_homotopy_from_certificate, Ring};

    #[test]
    fn comma_categories_of_an_endpoint() {
        let d = FinNonUnitalCategory::poset(1);
        let top = FunctorData::full_inclusion(&d, &[1]).unwrap();
        assert_eq!(top.comma_over(0).unwrap().objects(), 0);
        assert_eq!(top.comma_over(1).unwrap().objects(), 1);
        assert_eq!(top.comma_under(0).unwrap().objects(), 1);
        let both = FunctorData::full_inclusion(&d, &[0, 1]).unwrap();
        let over_top = both.comma_over(1).unwrap();
        assert_eq!((over_top.objects(), over_top.morphism_count()), (2, 3));
        assert!(over_top.terminal_object().is_some());
    }

    fn to_one() -> NatTransData {
        let c = FinNonUnitalCategory::poset(1);
        let id = FunctorData::identity(&c);
        let one = FunctorData::constant(&c, &c, 1).unwrap();
        // η_0 = (0 → 1), η_1 = id_1
        NatTransData::new(id, one, vec![1, 2]).unwrap()
    }

    #[test]
    fn interval_homotopy_certificate() {
        let h = nat_trans_homotopy(&to_one(), 4).unwrap();
        let r = h.check().unwrap();
        assert!(r.valid, "{:?}", r.failures);
        let ch = chain_homotopy_from_certificate(&h, Ring::Z).unwrap();
        assert_eq!(ch.verified_through, 3);
    }

    #[test]
    fn broken_naturality_rejected() {
        let c = FinNonUnitalCategory::poset(1);
        let id = FunctorData::identity(&c);
        let one = FunctorData::constant(&c, &c, 1).unwrap();
        // η_0 = id_0 does not even land in G(0) = 1
        assert!(NatTransData::new(id.clone(), one, vec![0, 2]).is_err());
        // one object, morphisms e, a, b with a, b left zeros: conjugating by a is not natural
        let mut comp = Vec::new();
        for f in 0..3 {
            for g in 0..3 {
                let gf = if f == 0 { g } else { f };
                comp.push(crate::category::Composite { f, g, gf });
            }
        }
        let m = FinNonUnitalCategory::new(1, vec![(0, 0); 3], &comp, Some(vec![0])).unwrap();
        let id = FunctorData::identity(&m);
        assert!(NatTransData::new(id.clone(), id, vec![1]).is_err());
    }

    #[test]
    fn self_homotopy_by_units() {
        let c = FinNonUnitalCategory::poset(2);
        let id = FunctorData::identity(&c);
        let eta = NatTransData::new(id.clone(), id, c.units().unwrap().to_vec()).unwrap();
        let r = nat_trans_homotopy(&eta, 3).unwrap().check().unwrap();
        assert!(r.valid, "{:?}", r.failures);
    }

    #[test]
    fn functor_preserves_composites() {
        let c = FinNonUnitalCategory::poset(1);
        assert!(FunctorData::new(c.clone(), c.clone(), vec![0, 1], vec![0, 0, 2], true).is_err());
        let incl = FunctorData::full_inclusion(&c, &[1]).unwrap();
        assert_eq!(incl.source().objects(), 1);
        assert_eq!(incl.nerve_map(2).level(1), &[2]);
    }
}
