//! The shipped fixture corpus, available without touching the file system.
//!
//! Every entry has a file `fixtures/<name>.json` in the repository with the
//! same content.

use crate::category::{Composite, FinMonoid, FinNonUnitalCategory, FunctorData, MonoidPresentation, NatTransData};
use crate::format::FixtureDocument;
use crate::homalg::IntMatrix;
use crate::sset::{BiSemiSimplicialSet, SemiSimplicialSet, SimplexRef, SimplicialSet};

fn sset(sizes: Vec<usize>, faces: Vec<Vec<Vec<usize>>>) -> SemiSimplicialSet {
    SemiSimplicialSet::new(sizes, faces, None).expect("built-in fixture is valid")
}

/// Two vertices, three edges, two triangles glued along the antipodal map.
pub fn projective_plane() -> SemiSimplicialSet {
    sset(vec![2, 3, 2], vec![vec![], vec![vec![0, 0, 0], vec![0, 1, 1]], vec![vec![0, 0], vec![1, 2], vec![2, 1]]])
}

/// One vertex, edges `a, b, c` and triangles with boundaries `a + b − c` twice.
pub fn torus() -> SemiSimplicialSet {
    sset(vec![1, 3, 2], vec![vec![], vec![vec![0; 3], vec![0; 3]], vec![vec![1, 0], vec![2, 2], vec![0, 1]]])
}

/// Like the torus, but the second triangle has boundary `c − a + b`.
pub fn klein_bottle() -> SemiSimplicialSet {
    sset(vec![1, 3, 2], vec![vec![], vec![vec![0; 3], vec![0; 3]], vec![vec![1, 2], vec![2, 0], vec![0, 1]]])
}

/// One vertex, one edge, one triangle with all three faces on that edge.
pub fn dunce_cap() -> SemiSimplicialSet {
    sset(vec![1, 1, 1], vec![vec![], vec![vec![0], vec![0]], vec![vec![0], vec![0], vec![0]]])
}

/// `n` loops at a single vertex.
pub fn wedge_of_circles(n: usize) -> SemiSimplicialSet {
    sset(vec![1, n], vec![vec![], vec![vec![0; n], vec![0; n]]])
}

/// The simplicial circle `Δ¹/∂Δ¹`: one vertex and one non-degenerate loop.
pub fn simplicial_circle() -> SimplicialSet {
    let v = SimplexRef::generator(0, 0);
    SimplicialSet::new(vec![1, 1], vec![vec![vec![]], vec![vec![v.clone(), v]]], None).expect("valid")
}

fn category(objects: usize, morphisms: Vec<(usize, usize)>, compose: &[(usize, usize, usize)], units: Option<Vec<usize>>) -> FinNonUnitalCategory {
    let comps: Vec<Composite> = compose.iter().map(|&(f, g, gf)| Composite { f, g, gf }).collect();
    FinNonUnitalCategory::new(objects, morphisms, &comps, units).expect("built-in fixture is valid")
}

/// One object with an idempotent `e ∘ e = e` and no unit.
pub fn idempotent() -> FinNonUnitalCategory {
    category(1, vec![(0, 0)], &[(0, 0, 0)], None)
}

/// `f : 0 → 1`, `g : 1 → 2` and their composite, no units.
pub fn composable_pair() -> FinNonUnitalCategory {
    category(3, vec![(0, 1), (1, 2), (0, 2)], &[(0, 1, 2)], None)
}

/// One object with `x ∘ x = z` and `z` absorbing, no unit.
pub fn nilpotent() -> FinNonUnitalCategory {
    category(1, vec![(0, 0), (0, 0)], &[(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)], None)
}

/// One object with two morphisms and `m(f, g) = f`, no unit.
pub fn left_zero() -> FinNonUnitalCategory {
    category(1, vec![(0, 0), (0, 0)], &[(0, 0, 0), (0, 1, 0), (1, 0, 1), (1, 1, 1)], None)
}

/// The strict order `0 < 1 < 2`, no identities.
pub fn strict_order() -> FinNonUnitalCategory {
    FinNonUnitalCategory::poset(2).without_units()
}

/// The names of all built-in fixtures.
pub const NAMES: &[&str] = &[
    "point.ss",
    "interval.ss",
    "simplex2.ss",
    "boundary2.ss",
    "boundary3.ss",
    "boundary4.ss",
    "rp2.ss",
    "torus.ss",
    "klein.ss",
    "dunce.ss",
    "wedge2.ss",
    "constant3.ss",
    "bz2.ss",
    "simplex1.simp",
    "simplex2.simp",
    "simplex3.simp",
    "circle.simp",
    "e-boundary2.simp",
    "e-rp2.simp",
    "square.biss",
    "idempotent.cat",
    "composable-pair.cat",
    "nilpotent.cat",
    "left-zero.cat",
    "strict-order.cat",
    "discrete3.cat",
    "poset1.cat",
    "poset2.cat",
    "square.cat",
    "discrete2-unital.cat",
    "endpoint-top.fun",
    "endpoint-bottom.fun",
    "interval-to-point.fun",
    "identity-poset2.fun",
    "discrete-into-interval.fun",
    "to-top.nat",
    "to-top-poset2.nat",
    "z2.mon",
    "z3.mon",
    "z4.mon",
    "klein-four.mon",
    "absorbing.mon",
    "trivial.mon",
    "naturals.pres",
    "diagonal-quotient.pres",
    "naturals2.pres",
    "two-torsion.pres",
    "z2-regular.act",
    "snf-example.mat",
];

/// The fixture with the given name (without `.json`).
pub fn builtin(name: &str) -> Option<FixtureDocument> {
    use FixtureDocument as D;
    let p1 = FinNonUnitalCategory::poset(1);
    let p2 = FinNonUnitalCategory::poset(2);
    let to_top = |c: &FinNonUnitalCategory, top: usize, comps: Vec<usize>| {
        NatTransData::new(FunctorData::identity(c), FunctorData::constant(c, c, top).expect("unital"), comps).expect("natural")
    };
    Some(match name {
        "point.ss" => D::SemiSimplicial(SemiSimplicialSet::point()),
        "interval.ss" => D::SemiSimplicial(SemiSimplicialSet::standard(1)),
        "simplex2.ss" => D::SemiSimplicial(SemiSimplicialSet::standard(2)),
        "boundary2.ss" => D::SemiSimplicial(SemiSimplicialSet::boundary(2).expect("p ≥ 1")),
        "boundary3.ss" => D::SemiSimplicial(SemiSimplicialSet::boundary(3).expect("p ≥ 1")),
        "boundary4.ss" => D::SemiSimplicial(SemiSimplicialSet::boundary(4).expect("p ≥ 1")),
        "rp2.ss" => D::SemiSimplicial(projective_plane()),
        "torus.ss" => D::SemiSimplicial(torus()),
        "klein.ss" => D::SemiSimplicial(klein_bottle()),
        "dunce.ss" => D::SemiSimplicial(dunce_cap()),
        "wedge2.ss" => D::SemiSimplicial(wedge_of_circles(2)),
        "constant3.ss" => D::SemiSimplicial(SemiSimplicialSet::constant(3, 7)),
        "bz2.ss" => D::SemiSimplicial(FinMonoid::cyclic(2).nerve(7)),
        "simplex1.simp" => D::Simplicial(SimplicialSet::standard(1)),
        "simplex2.simp" => D::Simplicial(SimplicialSet::standard(2)),
        "simplex3.simp" => D::Simplicial(SimplicialSet::standard(3)),
        "circle.simp" => D::Simplicial(simplicial_circle()),
        "e-boundary2.simp" => D::Simplicial(SimplicialSet::free(&SemiSimplicialSet::boundary(2).expect("p ≥ 1"))),
        "e-rp2.simp" => D::Simplicial(SimplicialSet::free(&projective_plane())),
        "square.biss" => {
            let i = SemiSimplicialSet::standard(1);
            D::BiSemiSimplicial(BiSemiSimplicialSet::exterior_product(&i, &i))
        }
        "idempotent.cat" => D::Category(idempotent()),
        "composable-pair.cat" => D::Category(composable_pair()),
        "nilpotent.cat" => D::Category(nilpotent()),
        "left-zero.cat" => D::Category(left_zero()),
        "strict-order.cat" => D::Category(strict_order()),
        "discrete3.cat" => D::Category(FinNonUnitalCategory::discrete(3)),
        "poset1.cat" => D::Category(p1),
        "poset2.cat" => D::Category(p2),
        "square.cat" => D::Category(p1.product(&p1)),
        "discrete2-unital.cat" => D::Category(FinNonUnitalCategory::discrete_unital(2)),
        "endpoint-top.fun" => D::Functor(FunctorData::full_inclusion(&p1, &[1]).expect("valid")),
        "endpoint-bottom.fun" => D::Functor(FunctorData::full_inclusion(&p1, &[0]).expect("valid")),
        "interval-to-point.fun" => D::Functor(FunctorData::constant(&p1, &FinNonUnitalCategory::poset(0), 0).expect("unital")),
        "identity-poset2.fun" => D::Functor(FunctorData::identity(&p2)),
        "discrete-into-interval.fun" => D::Functor(
            FunctorData::new(FinNonUnitalCategory::discrete_unital(2), p1, vec![0, 1], vec![0, 2], true).expect("valid"),
        ),
        // poset(n) lists (i, j) with i ≤ j lexicographically
        "to-top.nat" => D::NatTrans(to_top(&p1, 1, vec![1, 2])),
        "to-top-poset2.nat" => D::NatTrans(to_top(&p2, 2, vec![2, 4, 5])),
        "z2.mon" => D::Monoid(FinMonoid::cyclic(2)),
        "z3.mon" => D::Monoid(FinMonoid::cyclic(3)),
        "z4.mon" => D::Monoid(FinMonoid::cyclic(4)),
        "klein-four.mon" => D::Monoid(FinMonoid::new((0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect(), 0).expect("group")),
        "absorbing.mon" => D::Monoid(FinMonoid::absorbing()),
        "trivial.mon" => D::Monoid(FinMonoid::trivial()),
        "naturals.pres" => D::MonoidPresentation(MonoidPresentation::free(1)),
        "diagonal-quotient.pres" => D::MonoidPresentation(MonoidPresentation::new(2, vec![(vec![1, 0], vec![0, 1])]).expect("valid")),
        "naturals2.pres" => D::MonoidPresentation(MonoidPresentation::free(2)),
        "two-torsion.pres" => D::MonoidPresentation(MonoidPresentation::new(1, vec![(vec![2], vec![0])]).expect("valid")),
        "z2-regular.act" => {
            let m = FinMonoid::cyclic(2);
            D::Action { action: m.left_regular(), monoid: m }
        }
        "snf-example.mat" => D::Matrix(IntMatrix::from_dense(&[vec![2, 4], vec![6, 8]])),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::{ChainComplex, Ring};

    fn homology(x: &SemiSimplicialSet) -> Vec<String> {
        ChainComplex::unnormalized(x, Ring::Z).homology_all().iter().map(|h| h.group.to_string()).collect()
    }

    #[test]
    fn surfaces() {
        assert_eq!(homology(&projective_plane()), ["Z", "Z/2", "0"]);
        assert_eq!(homology(&torus()), ["Z", "Z^2", "Z"]);
        assert_eq!(homology(&klein_bottle()), ["Z", "Z + Z/2", "0"]);
        assert_eq!(homology(&dunce_cap()), ["Z", "0", "0"]);
        assert_eq!(homology(&wedge_of_circles(2)), ["Z", "Z^2"]);
    }

    #[test]
    fn every_name_builds() {
        for n in NAMES {
            assert!(builtin(n).is_some(), "{n}");
        }
        assert!(builtin("nothing").is_none());
    }
}
