//! Checks on nerves of finite categories and functors between them.

use crate::category::{nat_trans_homotopy, CommaResolution, FinNonUnitalCategory, FunctorData, NatTransData};
use crate::error::{invalid, Error, Result};
use crate::homalg::homology_map::induced_with;
use crate::homalg::{chain_homotopy_from_certificate, ChainComplex, ChainMap, HomologyBasis, Ring};
use crate::theorems::{groups, list, point_groups, Builder, CheckReport};

fn nerve_chain_map(f: &FunctorData, cutoff: usize) -> Result<(ChainComplex, ChainComplex, ChainMap)> {
    let src = f.source().nerve(cutoff);
    let tgt = f.target().nerve(cutoff);
    let m = ChainMap::induced(&f.nerve_map(cutoff), &src, &tgt)?;
    Ok((ChainComplex::unnormalized(&src, Ring::Z), ChainComplex::unnormalized(&tgt, Ring::Z), m))
}

fn compare_nerves(b: &mut Builder, f: &FunctorData, cutoff: usize, d: usize, stage: &str, label: &str) {
    if let Some((cs, ct, m)) = b.attempt(stage, nerve_chain_map(f, cutoff)) {
        b.cone(stage, &m, &cs, &ct, d + 1);
        if let (Some(l), Some(r)) = (b.attempt("source homology", groups(&cs, d)), b.attempt("target homology", groups(&ct, d))) {
            b.compare_groups(label, &l, &r);
        }
    }
}

/// The inclusion `B𝒞 → B𝒞⁺` of a category into its unitalization is a
/// homology isomorphism: its cone is acyclic through `cutoff − 1`.
pub fn check_krannich(c: &FinNonUnitalCategory, cutoff: usize) -> Result<CheckReport> {
    let mut b = Builder::new("krannich", cutoff.checked_sub(1));
    let Some(d) = cutoff.checked_sub(1) else {
        b.untrusted("cutoff 0 leaves no trusted degree");
        return Ok(b.finish());
    };
    let f = FunctorData::unitalization(c);
    if let Some((cs, ct, m)) = b.attempt("nerve inclusion", nerve_chain_map(&f, cutoff)) {
        b.cone("adding units is a homology isomorphism", &m, &cs, &ct, d);
        if let (Some(l), Some(r)) = (b.attempt("H(C)", groups(&cs, d)), b.attempt("H(C+)", groups(&ct, d))) {
            b.compare_groups("C | C+", &l, &r);
        }
    }
    Ok(b.finish())
}

/// A unital category with a terminal object `t` is contractible: the
/// transformation from the identity to the constant functor at `t` gives a
/// chain homotopy between the identity and a constant map.
pub fn check_terminal_contractible(c: &FinNonUnitalCategory, cutoff: usize) -> Result<CheckReport> {
    let units = c.units().ok_or_else(|| invalid!("the category needs units"))?;
    let t = c.terminal_object().ok_or_else(|| invalid!("the category has no terminal object"))?;
    let mut b = Builder::new("terminal-contractible", cutoff.checked_sub(1));
    b.hypothesis("terminal object", true, format!("object {t}"));
    let Some(d) = cutoff.checked_sub(1) else {
        b.untrusted("cutoff 0 leaves no trusted degree");
        return Ok(b.finish());
    };
    let to_t: Vec<usize> =
        (0..c.objects()).map(|a| if a == t { units[t] } else { c.morphisms().iter().position(|&m| m == (a, t)).expect("terminal") }).collect();
    let eta = NatTransData::new(FunctorData::identity(c), FunctorData::constant(c, c, t)?, to_t)?;
    let cert = nat_trans_homotopy(&eta, cutoff)?;
    if let Some(h) = b.attempt("chain homotopy from the identity to a constant", chain_homotopy_from_certificate(&cert, Ring::Z)) {
        b.stage(
            "chain homotopy from the identity to a constant",
            h.verified_through >= d,
            format!("verified through degree {}", h.verified_through),
        );
        if let Some(hc) = b.attempt("homology", groups(&h.source, d)) {
            b.compare_groups("C | point", &hc, &point_groups(d));
        }
    }
    Ok(b.finish())
}

/// `η : F ⇒ G` makes `N F` and `N G` induce the same maps on homology.
pub fn check_nat_trans(eta: &NatTransData, cutoff: usize) -> Result<CheckReport> {
    let mut b = Builder::new("nat-trans", cutoff.checked_sub(1));
    let Some(d) = cutoff.checked_sub(1) else {
        b.untrusted("cutoff 0 leaves no trusted degree");
        return Ok(b.finish());
    };
    let cert = nat_trans_homotopy(eta, cutoff)?;
    let Some(h) = b.attempt("chain homotopy between the nerve maps", chain_homotopy_from_certificate(&cert, Ring::Z)) else {
        return Ok(b.finish());
    };
    b.stage("chain homotopy between the nerve maps", true, format!("verified through degree {}", h.verified_through));
    for k in 0..=d {
        let bases = HomologyBasis::new(&h.source, k).and_then(|s| Ok((s, HomologyBasis::new(&h.target, k)?)));
        let Some((hs, ht)) = b.attempt("homology bases", bases) else { break };
        let (Some(mf), Some(mg)) = (
            b.attempt("induced map", induced_with(&h.from, &h.source, &h.target, &hs, &ht)),
            b.attempt("induced map", induced_with(&h.to, &h.source, &h.target, &hs, &ht)),
        ) else {
            break;
        };
        let show = |m: &crate::homalg::InducedMap| serde_json::to_string(&m.matrix).expect("strings");
        b.compare(k, "F | G", show(&mf), show(&mg), mf == mg);
    }
    Ok(b.finish())
}

/// Homology of each comma fiber through `d`, for `F/b` or (dual) `b/F`.
fn fiber_homology(f: &FunctorData, cutoff: usize, d: usize, dual: bool) -> Result<Vec<(usize, Vec<crate::homalg::FPAbelianGroup>)>> {
    (0..f.target().objects())
        .map(|b| {
            let comma = if dual { f.comma_under(b)? } else { f.comma_over(b)? };
            Ok((b, groups(&ChainComplex::unnormalized(&comma.nerve(cutoff), Ring::Z), d)?))
        })
        .collect()
}

/// The functor satisfies the fiber hypothesis (every comma fiber has point
/// homology), its resolution behaves as expected, and `BF` is a homology
/// isomorphism through `cutoff − 2`.
///
/// Both forms are tried: fibers `F/b` with the resolution over `𝒟`, then
/// fibers `b/F` with the resolution built from the opposite functor. The
/// hypotheses count as met when either form's fibers all have point homology.
pub fn check_quillen_a(f: &FunctorData, cutoff: usize) -> Result<CheckReport> {
    if !f.target().is_unital() {
        return Err(Error::Unsupported("this check needs units in the target category".into()));
    }
    let mut b = Builder::new("quillen-a", cutoff.checked_sub(2));
    let Some(d) = cutoff.checked_sub(2) else {
        b.untrusted(format!("cutoff {cutoff} leaves no trusted degree"));
        return Ok(b.finish());
    };
    let point = point_groups(d + 1);
    let forms = [(false, "F/b"), (true, "b/F")];
    let mut chosen = None;
    let mut rejected = Vec::new();
    for (dual, name) in forms {
        let fibers = fiber_homology(f, cutoff, d + 1, dual)?;
        if fibers.iter().all(|(_, h)| *h == point) {
            chosen = Some((dual, name, fibers));
            break;
        }
        rejected.push((name, fibers));
    }
    let Some((dual, name, fibers)) = chosen else {
        for (name, fibers) in rejected {
            for (obj, h) in fibers {
                b.hypothesis(format!("B({}) has point homology", name.replace('b', &obj.to_string())), h == point, list(&h));
            }
        }
        return Ok(b.finish());
    };
    for (other, fibers) in &rejected {
        let bad: Vec<String> = fibers.iter().filter(|(_, h)| *h != point).map(|(o, h)| format!("b = {o}: {}", list(h))).collect();
        b.note(format!("fibers {other} are not all acyclic ({}); using the form with fibers {name}", bad.join("; ")));
    }
    for (obj, h) in fibers {
        b.hypothesis(format!("B({}) has point homology", name.replace('b', &obj.to_string())), true, list(&h));
    }

    let r = if dual { CommaResolution::dual(f, cutoff)? } else { CommaResolution::new(f, cutoff)? };
    b.stage("augmentations commute with faces", r.check_augmentations().is_ok(), "");
    let mut rows = true;
    for p in 0..=cutoff {
        let contracted = r.row_extra_degeneracy(p).and_then(|c| chain_homotopy_from_certificate(&c, Ring::Z));
        rows &= b.attempt(&format!("row {p} contracts"), contracted).is_some();
    }
    b.stage("every row has an extra degeneracy", rows, format!("rows 0..={cutoff}, contraction verified exactly"));
    let mut fibers_ok = true;
    let mut count = 0;
    for q in 0..=d + 1 {
        for chain in 0..r.target_nerve.size(q) {
            let h = groups(&ChainComplex::unnormalized(&r.eta_fiber(q, chain), Ring::Z), d + 1)?;
            fibers_ok &= h == point;
            count += 1;
        }
    }
    b.stage("fibers over chains of the target have point homology", fibers_ok, format!("{count} fibers in degrees ≤ {}", d + 1));
    let dc = r.double_complex(Ring::Z);
    let tot = dc.total();
    let (cs, ct) = r.nerve_complexes(Ring::Z);
    let to_source = r.epsilon_chain_map(&dc);
    let to_target = r.eta_chain_map(&dc);
    b.cone("projection to the source nerve is a homology isomorphism", &to_source, &tot, &cs, d + 1);
    b.cone("projection to the target nerve is a homology isomorphism", &to_target, &tot, &ct, d + 1);

    compare_nerves(&mut b, f, cutoff, d, "BF is a homology isomorphism", "BC | BD");
    Ok(b.finish())
}

/// On homology through `cutoff − 2` the projection of the resolution to the
/// target nerve equals `BF` after the projection to the source nerve, for the
/// resolution and for its dual.
pub fn check_resolution_triangle(f: &FunctorData, cutoff: usize) -> Result<CheckReport> {
    let mut b = Builder::new("resolution-triangle", cutoff.checked_sub(2));
    let Some(d) = cutoff.checked_sub(2) else {
        b.untrusted(format!("cutoff {cutoff} leaves no trusted degree"));
        return Ok(b.finish());
    };
    for (label, functor) in [("resolution", f.clone()), ("dual resolution", f.opposite())] {
        let r = CommaResolution::new(&functor, cutoff)?;
        let dc = r.double_complex(Ring::Z);
        let tot = dc.total();
        let (_, ct) = r.nerve_complexes(Ring::Z);
        let to_source = r.epsilon_chain_map(&dc);
        let to_target = r.eta_chain_map(&dc);
        let Some(bf) = b.attempt("nerve map", ChainMap::induced(&functor.nerve_map(cutoff), &r.source_nerve, &r.target_nerve)) else {
            continue;
        };
        let around = to_source.then(&bf);
        for k in 0..=d {
            let bases = HomologyBasis::new(&tot, k).and_then(|s| Ok((s, HomologyBasis::new(&ct, k)?)));
            let Some((hs, ht)) = b.attempt("homology bases", bases) else { break };
            let direct = b.attempt("induced map", induced_with(&to_target, &tot, &ct, &hs, &ht));
            let composite = b.attempt("induced map", induced_with(&around, &tot, &ct, &hs, &ht));
            if let (Some(x), Some(y)) = (direct, composite) {
                let show = |m: &crate::homalg::InducedMap| serde_json::to_string(&m.matrix).expect("strings");
                b.compare(k, format!("{label}: target | F after source"), show(&x), show(&y), x == y);
            }
        }
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Composite;
    use crate::theorems::Verdict;

    fn idempotent() -> FinNonUnitalCategory {
        FinNonUnitalCategory::new(1, vec![(0, 0)], &[Composite { f: 0, g: 0, gf: 0 }], None).unwrap()
    }

    #[test]
    fn krannich_on_idempotent_and_discrete() {
        assert!(check_krannich(&idempotent(), 4).unwrap().passed());
        let r = check_krannich(&FinNonUnitalCategory::discrete(3), 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.comparisons[0].left, "Z^3");
    }

    #[test]
    fn terminal_objects() {
        for n in 0..=3 {
            let r = check_terminal_contractible(&FinNonUnitalCategory::poset(n), 4).unwrap();
            assert!(r.passed(), "{}", r.table());
        }
        let sq = FinNonUnitalCategory::poset(1).product(&FinNonUnitalCategory::poset(1));
        assert!(check_terminal_contractible(&sq, 4).unwrap().passed());
        assert!(check_terminal_contractible(&FinNonUnitalCategory::discrete_unital(2), 3).is_err());
    }

    #[test]
    fn quillen_forms() {
        let d = FinNonUnitalCategory::poset(1);
        let top = FunctorData::full_inclusion(&d, &[1]).unwrap();
        let r = check_quillen_a(&top, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.table());
        assert!(r.hypotheses[0].name.contains("0/F"));
        let bottom = FunctorData::full_inclusion(&d, &[0]).unwrap();
        let r = check_quillen_a(&bottom, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.table());
        assert!(r.notes.is_empty());
        let two = FunctorData::new(FinNonUnitalCategory::discrete_unital(2), d.clone(), vec![0, 1], vec![0, 2], true).unwrap();
        let r = check_quillen_a(&two, 4).unwrap();
        assert_eq!(r.verdict, Verdict::HypothesesNotMet, "{}", r.table());
        assert!(r.stages.is_empty());
    }

    #[test]
    fn triangle_for_an_endpoint() {
        let d = FinNonUnitalCategory::poset(1);
        let top = FunctorData::full_inclusion(&d, &[1]).unwrap();
        let r = check_resolution_triangle(&top, 4).unwrap();
        assert!(r.passed(), "{}", r.table());
        assert_eq!(r.comparisons.len(), 6);
    }

    #[test]
    fn nat_trans_maps_agree() {
        let c = FinNonUnitalCategory::poset(1);
        let eta = NatTransData::new(FunctorData::identity(&c), FunctorData::constant(&c, &c, 1).unwrap(), vec![1, 2]).unwrap();
        let r = check_nat_trans(&eta, 4).unwrap();
        assert!(r.passed(), "{}", r.table());
    }
}
