//! The bi-semi-simplicial resolution `(F/𝒟)_{p,q}` of a functor and its augmentations.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::category::FunctorData;
use crate::error::{identity, invalid, Result};
use crate::homalg::{ChainComplex, ChainMap, DoubleComplex, IntMatrix, Ring};
use crate::sset::{BiSemiSimplicialSet, HomotopyCertificate, SemiSimplicialSet};

/// `(F/𝒟)_{p,q}`: pairs of a `p`-chain `a` in `𝒞` and a `(q+1)`-chain
/// `F(a_p) → b_0 → … → b_q` in `𝒟`, through `cutoff` in both directions.
///
/// Horizontal faces act on `a`; dropping the last arrow `f_p` composes
/// `F(f_p)` into the connecting arrow. Vertical face `j` deletes `b_j`, so
/// `dv_0` composes the connecting arrow with the next one.
#[derive(Clone, Debug)]
pub struct CommaResolution {
    pub functor: FunctorData,
    pub cutoff: usize,
    pub bisset: BiSemiSimplicialSet,
    /// `elements[p][q][k] = (a, g)`; for `p = 0`, `a` holds the object.
    pub elements: Vec<Vec<Vec<(Vec<usize>, Vec<usize>)>>>,
    /// `ε[p][q][k]`: index of `a` in the nerve of `𝒞`.
    pub epsilon: Vec<Vec<Vec<usize>>>,
    /// `η[p][q][k]`: index of `b_0 → … → b_q` in the nerve of `𝒟`.
    pub eta: Vec<Vec<Vec<usize>>>,
    pub source_nerve: SemiSimplicialSet,
    pub target_nerve: SemiSimplicialSet,
}

fn chain_index(chains: &[Vec<usize>]) -> HashMap<&[usize], usize> {
    chains.iter().enumerate().map(|(k, c)| (c.as_slice(), k)).collect()
}

impl CommaResolution {
    pub fn new(functor: &FunctorData, cutoff: usize) -> Result<Self> {
        let c = functor.source();
        let d = functor.target();
        let (source_nerve, c_chains) = c.nerve_with_chains(cutoff);
        let (target_nerve, d_chains) = d.nerve_with_chains(cutoff + 1);
        let last_object = |a: &[usize], p: usize| if p == 0 { a[0] } else { c.tgt(a[p - 1]) };
        let mut elements = vec![vec![Vec::new(); cutoff + 1]; cutoff + 1];
        for p in 0..=cutoff {
            for a in &c_chains[p] {
                let start = functor.on_object(last_object(a, p));
                for q in 0..=cutoff {
                    for g in d_chains[q + 1].iter().filter(|g| d.src(g[0]) == start) {
                        elements[p][q].push((a.clone(), g.clone()));
                    }
                }
            }
        }
        let index: Vec<Vec<HashMap<(Vec<usize>, Vec<usize>), usize>>> = elements
            .iter()
            .map(|row| row.iter().map(|lvl| lvl.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect()).collect())
            .collect();
        let sizes: Vec<Vec<usize>> = elements.iter().map(|row| row.iter().map(Vec::len).collect()).collect();
        let mut dh = vec![vec![Vec::new(); cutoff + 1]; cutoff + 1];
        let mut dv = vec![vec![Vec::new(); cutoff + 1]; cutoff + 1];
        for p in 0..=cutoff {
            for q in 0..=cutoff {
                if p >= 1 {
                    dh[p][q] = (0..=p)
                        .map(|i| {
                            elements[p][q]
                                .iter()
                                .map(|(a, g)| {
                                    let a2 = c.chain_face(a, i);
                                    let mut g2 = g.clone();
                                    if i == p {
                                        let ff = functor.on_morphism(a[p - 1]);
                                        g2[0] = d.compose(ff, g[0]).expect("F(a_p) is the source of the connecting arrow");
                                    }
                                    index[p - 1][q][&(a2, g2)]
                                })
                                .collect()
                        })
                        .collect();
                }
                if q >= 1 {
                    dv[p][q] = (0..=q)
                        .map(|j| elements[p][q].iter().map(|(a, g)| index[p][q - 1][&(a.clone(), d.chain_face(g, j + 1))]).collect())
                        .collect();
                }
            }
        }
        let bisset = BiSemiSimplicialSet::new(sizes, dh, dv, Some(cutoff), Some(cutoff))?;
        let c_index: Vec<_> = c_chains.iter().map(|l| chain_index(l)).collect();
        let d_index: Vec<_> = d_chains.iter().map(|l| chain_index(l)).collect();
        let epsilon = elements
            .iter()
            .enumerate()
            .map(|(p, row)| row.iter().map(|lvl| lvl.iter().map(|(a, _)| c_index[p][a.as_slice()]).collect()).collect())
            .collect();
        let eta = elements
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(q, lvl)| {
                        lvl.iter()
                            .map(|(_, g)| if q == 0 { d.tgt(g[0]) } else { d_index[q][&g[1..]] })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            functor: functor.clone(),
            cutoff,
            bisset,
            elements,
            epsilon,
            eta,
            source_nerve,
            target_nerve: target_nerve.truncate(cutoff),
        })
    }

    /// `(𝒟/F)` built as `(F^op/𝒟^op)`: `ξ` and `ζ` land in the nerves of the
    /// opposite categories, which are the original nerves with faces reversed.
    pub fn dual(functor: &FunctorData, cutoff: usize) -> Result<Self> {
        Self::new(&functor.opposite(), cutoff)
    }

    pub fn double_complex(&self, ring: Ring) -> DoubleComplex {
        DoubleComplex::from_bisset(&self.bisset, ring)
    }

    /// `ε` commutes with `dh` and is constant along `dv`; `η` commutes with
    /// `dv` and is constant along `dh`.
    pub fn check_augmentations(&self) -> Result<()> {
        let b = &self.bisset;
        let n = self.cutoff;
        for p in 0..=n {
            for q in 0..=n {
                for k in 0..b.size(p, q) {
                    for i in (0..=p).filter(|_| p >= 1) {
                        let x = b.face_h(p, q, i, k);
                        if self.epsilon[p - 1][q][x] != self.source_nerve.face(p, i, self.epsilon[p][q][k]) {
                            return Err(identity!("ε dh_{i} ≠ d_{i} ε at ({p}, {q}) element {k}"));
                        }
                        if self.eta[p - 1][q][x] != self.eta[p][q][k] {
                            return Err(identity!("η dh_{i} ≠ η at ({p}, {q}) element {k}"));
                        }
                    }
                    if q >= 1 {
                        for j in 0..=q {
                            let x = b.face_v(p, q, j, k);
                            if self.eta[p][q - 1][x] != self.target_nerve.face(q, j, self.eta[p][q][k]) {
                                return Err(identity!("η dv_{j} ≠ d_{j} η at ({p}, {q}) element {k}"));
                            }
                            if self.epsilon[p][q - 1][x] != self.epsilon[p][q][k] {
                                return Err(identity!("ε dv_{j} ≠ ε at ({p}, {q}) element {k}"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `‖ε‖ : Tot → C(N𝒞)`, the projection of the `q = 0` row.
    pub fn epsilon_chain_map(&self, tot: &DoubleComplex) -> ChainMap {
        self.projection(tot, true)
    }

    /// `‖η‖ : Tot → C(N𝒟)`, the projection of the `p = 0` column.
    pub fn eta_chain_map(&self, tot: &DoubleComplex) -> ChainMap {
        self.projection(tot, false)
    }

    fn projection(&self, tot: &DoubleComplex, row: bool) -> ChainMap {
        let top = tot.total_truncation().unwrap_or(self.cutoff);
        let maps = (0..=top)
            .map(|n| {
                let target = if row { &self.source_nerve } else { &self.target_nerve };
                let cols = tot.total_rank(n);
                let mut triples = Vec::new();
                for (p, q, off) in tot.total_layout(n) {
                    let (keep, table) = if row { (q == 0, &self.epsilon[p][q]) } else { (p == 0, &self.eta[p][q]) };
                    if keep {
                        triples.extend(table.iter().enumerate().map(|(k, &t)| (t, off + k, BigInt::from(1))));
                    }
                }
                IntMatrix::from_triples(target.size(n), cols, triples).expect("projection in range")
            })
            .collect();
        ChainMap::new(maps)
    }

    /// The extra degeneracy `g` of the column `(F/𝒟)_{p,•}` over `𝒞_p`, inserting
    /// the identity of `F(a_p)`. Needs units in `𝒟`.
    pub fn row_extra_degeneracy(&self, p: usize) -> Result<HomotopyCertificate> {
        let d = self.functor.target();
        let units = d.units().ok_or_else(|| invalid!("the extra degeneracy needs units in the target"))?;
        let c = self.functor.source();
        let n = self.cutoff;
        let index: Vec<HashMap<&(Vec<usize>, Vec<usize>), usize>> =
            (0..=n).map(|q| self.elements[p][q].iter().enumerate().map(|(k, e)| (e, k)).collect()).collect();
        let (_, c_chains) = c.nerve_with_chains(p);
        let start = |a: &[usize]| self.functor.on_object(if p == 0 { a[0] } else { c.tgt(a[p - 1]) });
        let mut maps = Vec::with_capacity(n + 1);
        maps.push(
            c_chains[p]
                .iter()
                .map(|a| index[0][&(a.clone(), vec![units[start(a)]])])
                .collect::<Vec<_>>(),
        );
        for q in 1..=n {
            maps.push(
                self.elements[p][q - 1]
                    .iter()
                    .map(|(a, g)| {
                        let mut g2 = vec![units[start(a)]];
                        g2.extend_from_slice(g);
                        index[q][&(a.clone(), g2)]
                    })
                    .collect(),
            );
        }
        Ok(HomotopyCertificate::ExtraDegeneracy {
            last: false,
            space: self.bisset.column(p),
            base: self.source_nerve.size(p),
            augmentation: self.epsilon[p][0].clone(),
            maps,
        })
    }

    /// The part of the resolution over a fixed `q`-chain `b` of `𝒟`, as a
    /// semi-simplicial set in the horizontal direction.
    pub fn eta_fiber(&self, q: usize, b: usize) -> SemiSimplicialSet {
        let n = self.cutoff;
        let members: Vec<Vec<usize>> = (0..=n).map(|p| (0..self.bisset.size(p, q)).filter(|&k| self.eta[p][q][k] == b).collect()).collect();
        let pos: Vec<HashMap<usize, usize>> = members.iter().map(|m| m.iter().enumerate().map(|(i, &k)| (k, i)).collect()).collect();
        let sizes = members.iter().map(Vec::len).collect();
        let faces = (0..=n)
            .map(|p| {
                if p == 0 {
                    return Vec::new();
                }
                (0..=p).map(|i| members[p].iter().map(|&k| pos[p - 1][&self.bisset.face_h(p, q, i, k)]).collect()).collect()
            })
            .collect();
        SemiSimplicialSet::from_parts_unchecked(sizes, faces, Some(n))
    }

    /// Unnormalized chains of the two nerves.
    pub fn nerve_complexes(&self, ring: Ring) -> (ChainComplex, ChainComplex) {
        (ChainComplex::unnormalized(&self.source_nerve, ring), ChainComplex::unnormalized(&self.target_nerve, ring))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::FinNonUnitalCategory;
    use crate::homalg::{chain_homotopy_from_certificate, induced_maps_agree};

    #[test]
    fn identity_of_point() {
        let c = FinNonUnitalCategory::poset(0);
        let r = CommaResolution::new(&FunctorData::identity(&c), 3).unwrap();
        assert!(r.bisset.sizes().iter().flatten().all(|&s| s == 1));
    }

    #[test]
    fn identity_of_interval() {
        let c = FinNonUnitalCategory::poset(1);
        let r = CommaResolution::new(&FunctorData::identity(&c), 3).unwrap();
        assert_eq!(r.bisset.size(0, 0), 3);
        r.check_augmentations().unwrap();
        for p in 0..=3 {
            let cert = r.row_extra_degeneracy(p).unwrap();
            assert!(cert.check().unwrap().valid);
            chain_homotopy_from_certificate(&cert, Ring::Z).unwrap();
        }
        let dc = r.double_complex(Ring::Z);
        let tot = dc.total();
        let (cc, cd) = r.nerve_complexes(Ring::Z);
        let eps = r.epsilon_chain_map(&dc);
        let eta = r.eta_chain_map(&dc);
        eps.check(&tot, &cc).unwrap();
        eta.check(&tot, &cd).unwrap();
        let bf = ChainMap::induced(&r.functor.nerve_map(3), &r.source_nerve, &r.target_nerve).unwrap();
        assert!(induced_maps_agree(&eta, &eps.then(&bf), &tot, &cd, 1).unwrap().iter().all(|&b| b));
    }

    #[test]
    fn fibers_are_slices() {
        let c = FinNonUnitalCategory::poset(2);
        let incl = FunctorData::full_inclusion(&c, &[0, 2]).unwrap();
        let r = CommaResolution::new(&incl, 3).unwrap();
        r.check_augmentations().unwrap();
        // the fiber over the vertex b = 1 is the nerve of F/1, which has one object
        let fib = r.eta_fiber(0, 1);
        assert_eq!(fib.size(0), 1);
        let dual = CommaResolution::dual(&incl, 2).unwrap();
        dual.check_augmentations().unwrap();
    }
}
