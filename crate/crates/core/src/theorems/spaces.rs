//! Checks on semi-simplicial and simplicial sets.

use num_bigint::BigInt;

use crate::error::{invalid, Result};
use crate::homalg::{kunneth, ChainComplex, ChainMap, DoubleComplex, FPAbelianGroup, IntMatrix, Ring};
use crate::sset::{random_semi_simplicial, random_simplicial, BiSimplicialSet, RandomShape, SemiSimplicialSet, SimplicialSet};
use crate::theorems::{groups, list, Builder, CheckReport};

fn trusted_top(b: &mut Builder, cutoff: usize, lag: usize) -> Option<usize> {
    let d = cutoff.checked_sub(lag);
    if d.is_none() {
        b.untrusted(format!("cutoff {cutoff} leaves no trusted degree"));
    }
    d
}

/// The unit `X → EX` is a homology isomorphism through `cutoff − 1`.
pub fn check_adj_units(x: &SemiSimplicialSet, cutoff: usize) -> Result<CheckReport> {
    let mut b = Builder::new("adj-units", cutoff.checked_sub(1));
    let Some(d) = trusted_top(&mut b, cutoff, 1) else { return Ok(b.finish()) };
    let xt = x.truncate(cutoff);
    let (ex, unit) = SimplicialSet::unit_map(&xt, cutoff);
    let cs = ChainComplex::unnormalized(&xt, Ring::Z);
    let ct = ChainComplex::unnormalized(&ex.sset, Ring::Z);
    if let Some(f) = b.attempt("unit map", ChainMap::induced(&unit, &xt, &ex.sset)) {
        b.stage("unit map", true, "");
        b.cone("unit is a homology isomorphism", &f, &cs, &ct, d);
    }
    if let (Some(l), Some(r)) = (b.attempt("H(X)", groups(&cs, d)), b.attempt("H(EX)", groups(&ct, d))) {
        b.compare_groups("X | EX", &l, &r);
    }
    Ok(b.finish())
}

/// The projection from all simplices onto non-degenerate ones.
fn normalization_map(y: &SimplicialSet, cutoff: usize) -> Result<(ChainComplex, ChainComplex, ChainMap)> {
    let e = y.enumerate(cutoff);
    let cu = ChainComplex::unnormalized(&e.sset, Ring::Z);
    let cn = ChainComplex::normalized(y, Ring::Z, cutoff);
    let refs = e.simplices.as_ref().expect("enumerated from generators");
    let maps = (0..=e.cutoff())
        .map(|k| {
            let triples = refs[k].iter().enumerate().filter(|(_, r)| !r.is_degenerate()).map(|(s, r)| (r.idx, s, BigInt::from(1)));
            IntMatrix::from_triples(cn.rank(k), e.sset.size(k), triples)
        })
        .collect::<Result<Vec<_>>>()?;
    let f = ChainMap::checked(maps, &cu, &cn)?;
    Ok((cu, cn, f))
}

/// Unnormalized and normalized chains of `Y` have the same homology.
pub fn check_fat_thin(y: &SimplicialSet, cutoff: usize) -> Result<CheckReport> {
    let mut b = Builder::new("fat-thin", cutoff.checked_sub(1));
    let Some(d) = trusted_top(&mut b, cutoff, 1) else { return Ok(b.finish()) };
    if let Some((cu, cn, f)) = b.attempt("projection onto normalized chains", normalization_map(y, cutoff)) {
        b.stage("projection onto normalized chains", true, "");
        b.cone("projection is a homology isomorphism", &f, &cu, &cn, d);
        if let (Some(l), Some(r)) = (b.attempt("fat", groups(&cu, d)), b.attempt("thin", groups(&cn, d))) {
            b.compare_groups("fat | thin", &l, &r);
        }
    }
    Ok(b.finish())
}

/// Front-face/back-face map from the diagonal to the total complex:
/// `(a, b) ↦ Σ_{p+q=k} (a|[0..p], b|[p..k])`.
fn front_back_map(x: &SemiSimplicialSet, y: &SemiSimplicialSet, dc: &DoubleComplex, top: usize) -> Result<ChainMap> {
    let maps = (0..=top)
        .map(|k| {
            let ny = y.size(k);
            let layout = dc.total_layout(k);
            let mut triples = Vec::new();
            for s in 0..x.size(k) * ny {
                let (a, bb) = (s / ny, s % ny);
                for &(p, q, off) in &layout {
                    let front: Vec<usize> = (0..=p).collect();
                    let back: Vec<usize> = (p..=k).collect();
                    let row = off + x.restrict(k, a, &front) * y.size(q) + y.restrict(k, bb, &back);
                    triples.push((row, s, BigInt::from(1)));
                }
            }
            IntMatrix::from_triples(dc.total_rank(k), x.size(k) * ny, triples)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainMap::new(maps))
}

/// Homology of the diagonal of `X ⊠ Y` against the total complex, plus the
/// front-face/back-face chain map between them.
pub fn check_ez_diagonal(x: &SimplicialSet, y: &SimplicialSet, cutoff: usize) -> Result<CheckReport> {
    let mut b = Builder::new("ez-diagonal", cutoff.checked_sub(2));
    let Some(d) = trusted_top(&mut b, cutoff, 2) else { return Ok(b.finish()) };
    let ex = x.enumerate(cutoff);
    let ey = y.enumerate(cutoff);
    let bi = BiSimplicialSet::exterior_product(&ex, &ey);
    let diag = bi.diagonal();
    let cd = ChainComplex::unnormalized(&diag.sset, Ring::Z);
    let dc = DoubleComplex::from_bisset(&bi.faces, Ring::Z);
    let tot = dc.total();
    let top = cd.top().min(tot.top());
    if let Some(f) = b.attempt("front-back map", front_back_map(&ex.sset, &ey.sset, &dc, top).and_then(|f| f.check(&cd, &tot).map(|_| f))) {
        b.stage("front-back map is a chain map", true, "");
        b.cone("front-back map is a homology isomorphism", &f, &cd, &tot, d + 1);
    }
    if let (Some(l), Some(r)) = (b.attempt("H(diagonal)", groups(&cd, d)), b.attempt("H(Tot)", groups(&tot, d))) {
        b.compare_groups("diagonal | Tot", &l, &r);
    }
    Ok(b.finish())
}

/// Homology of `X × Y` against the Künneth formula applied to `H(X)`, `H(Y)`.
pub fn check_products(x: &SimplicialSet, y: &SimplicialSet, cutoff: usize) -> Result<CheckReport> {
    let mut b = Builder::new("products", cutoff.checked_sub(1));
    let Some(d) = trusted_top(&mut b, cutoff, 1) else { return Ok(b.finish()) };
    let prod = crate::sset::interior_product(x, y, cutoff)?;
    let cp = ChainComplex::unnormalized(&prod.sset, Ring::Z);
    let hx = b.attempt("H(X)", groups(&ChainComplex::normalized(x, Ring::Z, cutoff), d));
    let hy = b.attempt("H(Y)", groups(&ChainComplex::normalized(y, Ring::Z, cutoff), d));
    let hp = b.attempt("H(X × Y)", groups(&cp, d));
    if let (Some(hx), Some(hy), Some(hp)) = (hx, hy, hp) {
        b.fact("H(X)", list(&hx));
        b.fact("H(Y)", list(&hy));
        let k = kunneth(&hx, &hy);
        let predicted: Vec<FPAbelianGroup> = (0..=d).map(|j| k.get(j).cloned().unwrap_or_default()).collect();
        b.compare_groups("X × Y | Künneth", &hp, &predicted);
    }
    Ok(b.finish())
}

/// `sk_n X → X` is an isomorphism on `H_k` for `k < n` and onto at `k = n`.
///
/// Both follow from the cone being acyclic through `n`.
pub fn check_skeletal_shadow(x: &SemiSimplicialSet, n: usize, cutoff: usize) -> Result<CheckReport> {
    if n >= cutoff {
        return Err(invalid!("skeleton degree {n} must be below the cutoff {cutoff}"));
    }
    let mut b = Builder::new("skeletal", Some(n));
    let xt = x.truncate(cutoff);
    let (sk, incl) = xt.skeleton(n);
    let cs = ChainComplex::unnormalized(&sk, Ring::Z);
    let cx = ChainComplex::unnormalized(&xt, Ring::Z);
    let Some(f) = b.attempt("skeleton inclusion", ChainMap::induced(&incl, &sk, &xt)) else { return Ok(b.finish()) };
    b.cone("iso below n, onto at n", &f, &cs, &cx, n);
    let cone = crate::homalg::mapping_cone(&f, &cs, &cx)?;
    if let (Some(hs), Some(hx), Some(hc)) =
        (b.attempt("H(skeleton)", groups(&cs, n)), b.attempt("H(X)", groups(&cx, n)), b.attempt("H(cone)", groups(&cone, n)))
    {
        for k in 0..=n {
            if k < n {
                b.compare(k, "skeleton | X", &hs[k], &hx[k], hs[k] == hx[k]);
            }
            b.compare(k, "cone | 0", &hc[k], "0", hc[k].is_trivial());
        }
        b.fact("H_n(skeleton)", &hs[n]);
        b.fact("H_n(X)", &hx[n]);
    }
    Ok(b.finish())
}

/// The constant semi-simplicial set on `size` points has `H_0 = Z^size` and
/// nothing else through `cutoff − 1`.
pub fn check_constant(size: usize, cutoff: usize) -> Result<CheckReport> {
    let mut b = Builder::new("constant", cutoff.checked_sub(1));
    let Some(d) = trusted_top(&mut b, cutoff, 1) else { return Ok(b.finish()) };
    let c = ChainComplex::unnormalized(&SemiSimplicialSet::constant(size, cutoff), Ring::Z);
    if let Some(h) = b.attempt("homology", groups(&c, d)) {
        let expected: Vec<FPAbelianGroup> = (0..=d).map(|k| FPAbelianGroup::free(if k == 0 { size } else { 0 })).collect();
        b.compare_groups("constant | expected", &h, &expected);
    }
    Ok(b.finish())
}

/// Runs the diagonal and normalization checks on `count` pairs of random
/// simplicial sets; pair `i` uses seeds `seed + 2i` and `seed + 2i + 1`.
pub fn check_ez_random(count: usize, seed: u64, cutoff: usize) -> Result<CheckReport> {
    let mut b = Builder::new("ez-random", cutoff.checked_sub(2));
    b.seed(seed);
    let shape = RandomShape::default();
    for i in 0..count as u64 {
        let (sx, sy) = (seed.wrapping_add(2 * i), seed.wrapping_add(2 * i + 1));
        let x = random_simplicial(sx, shape);
        let y = random_simplicial(sy, shape);
        let ez = check_ez_diagonal(&x, &y, cutoff)?;
        let h = ez.comparisons.iter().map(|c| c.left.as_str()).collect::<Vec<_>>().join(", ");
        b.stage(format!("ez-diagonal, seeds {sx} and {sy}"), ez.passed(), format!("{}: ({h})", ez.verdict));
        let ft = check_fat_thin(&x, cutoff)?;
        b.stage(format!("fat-thin, seed {sx}"), ft.passed(), ft.verdict.to_string());
    }
    Ok(b.finish())
}

/// Runs [`check_adj_units`] on `count` random semi-simplicial sets with seeds `seed + i`.
pub fn check_adj_units_random(count: usize, seed: u64, cutoff: usize) -> Result<CheckReport> {
    let mut b = Builder::new("adj-units-random", cutoff.checked_sub(1));
    b.seed(seed);
    for i in 0..count as u64 {
        let s = seed.wrapping_add(i);
        let x = random_semi_simplicial(s, RandomShape::default());
        let r = check_adj_units(&x, cutoff)?;
        let h = r.comparisons.iter().map(|c| c.left.as_str()).collect::<Vec<_>>().join(", ");
        b.stage(format!("adj-units, seed {s}"), r.passed(), format!("{}: ({h})", r.verdict));
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::Verdict;

    fn circle() -> SimplicialSet {
        SimplicialSet::free(&SemiSimplicialSet::boundary(2).unwrap())
    }

    #[test]
    fn adj_units_on_circle() {
        let r = check_adj_units(&SemiSimplicialSet::boundary(2).unwrap(), 4).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.table());
        assert_eq!(r.comparisons.len(), 4);
        assert_eq!(r.comparisons[1].left, "Z");
    }

    #[test]
    fn fat_thin_on_simplex() {
        let r = check_fat_thin(&SimplicialSet::standard(3), 5).unwrap();
        assert!(r.passed(), "{}", r.table());
        assert!(r.comparisons.iter().skip(1).all(|c| c.left == "0"));
    }

    #[test]
    fn torus_both_ways() {
        let r = check_ez_diagonal(&circle(), &circle(), 5).unwrap();
        assert!(r.passed(), "{}", r.table());
        let h: Vec<&str> = r.comparisons.iter().map(|c| c.left.as_str()).collect();
        assert_eq!(h, ["Z", "Z^2", "Z", "0"]);
        let p = check_products(&circle(), &circle(), 4).unwrap();
        assert!(p.passed(), "{}", p.table());
    }

    #[test]
    fn skeleton_of_sphere() {
        let x = SemiSimplicialSet::boundary(3).unwrap();
        let r = check_skeletal_shadow(&x, 1, 4).unwrap();
        assert!(r.passed(), "{}", r.table());
        assert_eq!(r.facts[0].value, "Z^3");
        assert!(check_skeletal_shadow(&x, 4, 4).is_err());
    }

    #[test]
    fn constant_and_small_cutoff() {
        let r = check_constant(5, 6).unwrap();
        assert!(r.passed());
        assert_eq!(r.comparisons[0].left, "Z^5");
        assert_eq!(check_constant(0, 3).unwrap().comparisons[0].left, "0");
        assert_eq!(check_ez_diagonal(&circle(), &circle(), 1).unwrap().verdict, Verdict::UntrustedAtCutoff);
    }

    #[test]
    fn random_suites_are_deterministic() {
        let a = check_adj_units_random(3, 7, 4).unwrap();
        assert!(a.passed(), "{}", a.table());
        assert_eq!(a.to_json(), check_adj_units_random(3, 7, 4).unwrap().to_json());
        let e = check_ez_random(2, 11, 4).unwrap();
        assert!(e.passed(), "{}", e.table());
    }
}
