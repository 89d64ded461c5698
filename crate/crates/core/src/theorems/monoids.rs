//! Checks on finite monoids: bar constructions, group completion, Segal nerves.

use num_bigint::BigUint;
use num_traits::One;

use crate::category::{bar_extra_degeneracy, grothendieck_group, grothendieck_group_of_table, FinMonoid, MonoidPresentation};
use crate::error::{Error, Result};
use crate::homalg::{chain_homotopy_from_certificate, ChainComplex, FPAbelianGroup, Ring};
use crate::sset::HomotopyCertificate;
use crate::theorems::{groups, list, point_groups, Builder, CheckReport};

/// A commutative monoid given by its table or by generators and relations.
#[derive(Clone, Debug)]
pub enum MonoidInput {
    Table(FinMonoid),
    Presentation(MonoidPresentation),
}

/// The group ring `Z[G]` of a finitely generated abelian group, written as
/// Laurent polynomials for the free part.
pub fn localized_ring(g: &FPAbelianGroup) -> String {
    let mut parts = Vec::new();
    match g.rank {
        0 => {}
        1 => parts.push("Z[t, t^-1]".to_string()),
        r => {
            let vars: Vec<String> = (1..=r).map(|i| format!("t{i}, t{i}^-1")).collect();
            parts.push(format!("Z[{}]", vars.join(", ")));
        }
    }
    parts.extend(g.torsion.iter().map(|t| format!("Z[Z/{t}]")));
    if parts.is_empty() {
        "Z".to_string()
    } else {
        parts.join(" ⊗ ")
    }
}

/// Augmented homology degrees `0..=d` against zero.
fn compare_acyclic(b: &mut Builder, label: &str, c: &ChainComplex, d: usize) {
    if let Some(h) = b.attempt(label, groups(c, d)) {
        for (k, g) in h.iter().enumerate() {
            b.compare(k, label, g, "0", g.is_trivial());
        }
    }
}

/// `B(*, M, M)` has an extra degeneracy; its chain contraction is checked
/// exactly and the augmented complex is acyclic.
///
/// Degrees in the report are those of the augmented complex, where degree
/// `k` holds level `k − 1`.
pub fn check_bar_acyclic(m: &FinMonoid, cutoff: usize) -> Result<CheckReport> {
    let mut b = Builder::new("bar-acyclic", Some(cutoff));
    let cert = bar_extra_degeneracy(m, cutoff)?;
    if let Some(h) = b.attempt("contraction", chain_homotopy_from_certificate(&cert, Ring::Z)) {
        b.stage("∂P + P∂ = id", h.verified_through >= cutoff, format!("verified through degree {}", h.verified_through));
        compare_acyclic(&mut b, "augmented bar complex | 0", &h.source, cutoff);
    }
    Ok(b.finish())
}

/// `Gr(M)` and its group ring, plus the homology of `BM` through `cutoff`
/// when a table is given.
pub fn group_completion_report(input: &MonoidInput, cutoff: usize) -> Result<CheckReport> {
    let mut b = Builder::new("group-completion", Some(cutoff));
    let (gr, table) = match input {
        MonoidInput::Table(m) => (grothendieck_group_of_table(m)?, Some(m)),
        MonoidInput::Presentation(p) => (grothendieck_group(p), None),
    };
    b.fact("Gr(M)", &gr);
    b.fact("Z[Gr(M)]", localized_ring(&gr));
    let Some(m) = table else { return Ok(b.finish()) };
    let c = ChainComplex::unnormalized(&m.nerve(cutoff + 1), Ring::Z);
    let Some(h) = b.attempt("H(BM)", groups(&c, cutoff)) else { return Ok(b.finish()) };
    b.fact("H(BM)", list(&h));
    if m.is_group() {
        let order = if gr.rank == 0 { gr.torsion.iter().product::<BigUint>() } else { BigUint::one() };
        let finite = gr.rank == 0;
        b.compare(0, "|Gr(M)| | |M|", if finite { order.to_string() } else { "infinite".into() }, m.size(), finite && order == BigUint::from(m.size()));
        b.compare(0, "H(BM) | Z", &h[0], "Z", h[0] == FPAbelianGroup::free(1));
    }
    if gr.is_trivial() {
        b.compare_groups("BM | point", &h, &point_groups(cutoff));
    }
    Ok(b.finish())
}

/// For a group `M`: every Segal map of the nerve is a bijection, and the
/// path space of the nerve contracts onto its base through the last
/// degeneracies.
pub fn check_segal_nerve(m: &FinMonoid, cutoff: usize) -> Result<CheckReport> {
    if !m.is_group() {
        return Err(Error::Unsupported("the Segal check is only certified for groups".into()));
    }
    let mut b = Builder::new("segal-nerve", Some(cutoff));
    let nerve = m.as_category().unital_nerve(cutoff + 1)?;
    let x = &nerve.sset;
    for p in 1..=cutoff {
        let s = x.segal_map(p)?;
        b.stage(format!("Segal map in degree {p} is bijective"), s.bijective, format!("{} simplices", s.tuples.len()));
    }
    let path = x.path_space()?;
    let mut maps = vec![nerve.degeneracies[0][0].clone()];
    maps.extend((1..=cutoff).map(|k| nerve.degeneracies[k][k].clone()));
    let cert = HomotopyCertificate::ExtraDegeneracy {
        last: true,
        space: path.space,
        base: path.base_size,
        augmentation: path.augmentation[0].clone(),
        maps,
    };
    if let Some(h) = b.attempt("path-space contraction", chain_homotopy_from_certificate(&cert, Ring::Z)) {
        b.stage("path-space contraction", h.verified_through >= cutoff, format!("verified through degree {}", h.verified_through));
        compare_acyclic(&mut b, "augmented path space | 0", &h.source, cutoff);
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bar_acyclic_small_monoids() {
        for m in [FinMonoid::cyclic(2), FinMonoid::cyclic(3), FinMonoid::absorbing(), FinMonoid::trivial()] {
            let r = check_bar_acyclic(&m, 5).unwrap();
            assert!(r.passed(), "{}", r.table());
            assert_eq!(r.comparisons.len(), 6);
        }
    }

    #[test]
    fn completions() {
        let n = group_completion_report(&MonoidInput::Presentation(MonoidPresentation::free(1)), 3).unwrap();
        assert_eq!(n.facts[0].value, "Z");
        assert_eq!(n.facts[1].value, "Z[t, t^-1]");
        let z2 = group_completion_report(&MonoidInput::Table(FinMonoid::cyclic(2)), 5).unwrap();
        assert!(z2.passed(), "{}", z2.table());
        assert_eq!(z2.facts[1].value, "Z[Z/2]");
        let abs = group_completion_report(&MonoidInput::Table(FinMonoid::absorbing()), 4).unwrap();
        assert!(abs.passed(), "{}", abs.table());
        assert_eq!(abs.facts[0].value, "0");
        assert_eq!(localized_ring(&FPAbelianGroup::from_small(2, &[3])), "Z[t1, t1^-1, t2, t2^-1] ⊗ Z[Z/3]");
    }

    #[test]
    fn segal_for_groups() {
        for m in [FinMonoid::cyclic(2), FinMonoid::cyclic(3), FinMonoid::trivial()] {
            let r = check_segal_nerve(&m, 4).unwrap();
            assert!(r.passed(), "{}", r.table());
        }
        assert!(check_segal_nerve(&FinMonoid::absorbing(), 3).is_err());
    }
}
