//! Acceptance criteria, one line of output per criterion.
//!
//! Run with `cargo test -p semisimplicial --test acceptance`.

use std::collections::BTreeMap;
use std::time::Instant;

use semisimplicial::category::{
    bar_extra_degeneracy, nat_trans_homotopy, CommaResolution, FinMonoid, FinNonUnitalCategory, FunctorData, MonoidPresentation,
};
use semisimplicial::fixtures::{builtin, projective_plane, NAMES};
use semisimplicial::format::FixtureDocument;
use semisimplicial::homalg::{chain_homotopy_from_certificate, CertifiedHomotopy, ChainComplex, DoubleComplex, FPAbelianGroup, Ring};
use semisimplicial::specseq::{audit_pages, check_convergence, spectral_sequence, Orientation};
use semisimplicial::sset::simplicial::check_triangle_identity;
use semisimplicial::sset::{
    random_simplicial, BiSemiSimplicialSet, DegeneracyWord, RandomShape, SemiSimplicialSet, SimplexRef, SimplicialSet,
};
use semisimplicial::theorems::{self, CheckReport, MonoidInput, Verdict};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(what: &str, r: semisimplicial::Result<CheckReport>) -> Result<CheckReport, String> {
    let r = r.map_err(|e| format!("{what}: {e}"))?;
    ensure(r.passed(), || format!("{what}:\n{}", r.table()))?;
    Ok(r)
}

fn docs(suffix: &str) -> Vec<(&'static str, FixtureDocument)> {
    NAMES.iter().filter(|n| n.ends_with(suffix)).map(|n| (*n, builtin(n).expect("listed"))).collect()
}

fn ssets() -> Vec<(&'static str, SemiSimplicialSet)> {
    docs(".ss")
        .into_iter()
        .map(|(n, d)| match d {
            FixtureDocument::SemiSimplicial(x) => (n, x),
            _ => unreachable!(),
        })
        .collect()
}

fn simplicials() -> Vec<(&'static str, SimplicialSet)> {
    docs(".simp")
        .into_iter()
        .map(|(n, d)| match d {
            FixtureDocument::Simplicial(y) => (n, y),
            _ => unreachable!(),
        })
        .collect()
}

fn categories() -> Vec<(&'static str, FinNonUnitalCategory)> {
    docs(".cat")
        .into_iter()
        .map(|(n, d)| match d {
            FixtureDocument::Category(c) => (n, c),
            _ => unreachable!(),
        })
        .collect()
}

fn functor(name: &str) -> FunctorData {
    match builtin(name) {
        Some(FixtureDocument::Functor(f)) => f,
        _ => panic!("{name} is not a functor fixture"),
    }
}

fn homology(c: &ChainComplex, d: usize) -> Result<Vec<FPAbelianGroup>, String> {
    Ok(c.homology_through(d).map_err(|e| e.to_string())?.into_iter().map(|h| h.group).collect())
}

fn g(rank: usize, torsion: &[u64]) -> FPAbelianGroup {
    FPAbelianGroup::from_small(rank, torsion)
}

// Independent oracle: ranks of the face-sum boundary matrices mod p by
// dense elimination, straight from the face tables.
fn rank_mod(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..m.len()).find(|&r| m[r][c] % p != 0) else { continue };
        m.swap(rank, r);
        let inv = (1..p).find(|x| x * m[rank][c] % p == 1).expect("p prime");
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r2 in 0..m.len() {
            if r2 != rank && m[r2][c] != 0 {
                let f = m[r2][c];
                for k in 0..cols {
                    m[r2][k] = (m[r2][k] + p * p - f * m[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn betti_mod(x: &SemiSimplicialSet, p: u64, through: usize) -> Vec<usize> {
    let sizes = x.sizes();
    let rank = |k: usize| -> usize {
        if k == 0 || k >= sizes.len() {
            return 0;
        }
        let mut m = vec![vec![0u64; sizes[k]]; sizes[k - 1]];
        for s in 0..sizes[k] {
            for i in 0..=k {
                let r = x.face(k, i, s);
                m[r][s] = (m[r][s] + if i % 2 == 0 { 1 } else { p - 1 }) % p;
            }
        }
        rank_mod(m, p)
    };
    (0..=through).map(|k| sizes.get(k).copied().unwrap_or(0) - rank(k) - rank(k + 1)).collect()
}

/// `dim H_k(−; F_p)` predicted from integral groups by universal coefficients.
fn predicted_mod(groups: &[FPAbelianGroup], p: u64) -> Vec<usize> {
    let tors = |h: &FPAbelianGroup| h.cyclic_orders().iter().filter(|o| *o != &0u32.into() && (*o % p) == 0u32.into()).count();
    (0..groups.len()).map(|k| groups[k].rank + tors(&groups[k]) + if k > 0 { tors(&groups[k - 1]) } else { 0 }).collect()
}

fn classical(name: &str, x: &SemiSimplicialSet, through: usize, expected: &[FPAbelianGroup]) -> Result<(), String> {
    let got = homology(&ChainComplex::unnormalized(x, Ring::Z), through)?;
    ensure(got == expected, || format!("{name}: {got:?} ≠ {expected:?}"))?;
    for p in [2, 3, 1_000_003] {
        let oracle = betti_mod(x, p, through);
        ensure(oracle == predicted_mod(expected, p), || format!("{name}: mod-{p} oracle {oracle:?} disagrees"))?;
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    for p in 1..=3 {
        let mut expected = vec![g(0, &[]); p + 1];
        expected[0] = g(1, &[]);
        expected[p] = g(1, &[]);
        classical(&format!("∂∇^{}", p + 1), &SemiSimplicialSet::boundary(p + 1).unwrap(), p, &expected)?;
    }
    classical("RP²", &projective_plane(), 2, &[g(1, &[]), g(0, &[2]), g(0, &[])])?;
    let bz2 = FinMonoid::cyclic(2).nerve(7);
    classical("BZ/2", &bz2, 5, &[g(1, &[]), g(0, &[2]), g(0, &[]), g(0, &[2]), g(0, &[]), g(0, &[2])])?;
    Ok("spheres S¹–S³, RP², BZ/2 through degree 5 exact, with mod-p oracles".into())
}

fn criterion_2() -> Outcome {
    let corpus = ssets();
    for (name, x) in &corpus {
        passed(name, theorems::check_adj_units(x, 5))?;
    }
    let r = passed("random suite", theorems::check_adj_units_random(20, 2024, 5))?;
    ensure(r.stages.len() == 20, || format!("random suite ran {} instances", r.stages.len()))?;
    Ok(format!("{} fixtures and 20 random sets (seed 2024) at cutoff 5", corpus.len()))
}

fn criterion_3() -> Outcome {
    let mut inputs: Vec<(String, SimplicialSet)> = (0..=3).map(|n| (format!("Δ^{n}"), SimplicialSet::standard(n))).collect();
    inputs.push(("E(∂∇²)".into(), SimplicialSet::free(&SemiSimplicialSet::boundary(2).unwrap())));
    inputs.push(("E(RP²)".into(), SimplicialSet::free(&projective_plane())));
    for (name, y) in &inputs {
        passed(name, theorems::check_fat_thin(y, 5))?;
    }
    Ok(format!("{} inputs at cutoff 5", inputs.len()))
}

fn product_pairs() -> Vec<(String, SimplicialSet, SimplicialSet)> {
    let mut pairs = Vec::new();
    for n in 0..=2 {
        for m in 0..=2 {
            pairs.push((format!("Δ^{n}⊗Δ^{m}"), SimplicialSet::standard(n), SimplicialSet::standard(m)));
        }
    }
    let circle = SimplicialSet::free(&SemiSimplicialSet::boundary(2).unwrap());
    let rp2 = SimplicialSet::free(&projective_plane());
    pairs.push(("E(∂∇²)⊗E(∂∇²)".into(), circle.clone(), circle));
    pairs.push(("E(RP²)⊗E(RP²)".into(), rp2.clone(), rp2));
    pairs
}

fn left_values(r: &CheckReport, label: &str) -> Vec<String> {
    r.comparisons.iter().filter(|c| c.label == label).map(|c| c.left.clone()).collect()
}

fn criterion_4() -> Outcome {
    for (name, x, y) in product_pairs() {
        let r = passed(&name, theorems::check_ez_diagonal(&x, &y, 5))?;
        if name == "E(∂∇²)⊗E(∂∇²)" {
            let h = left_values(&r, "diagonal | Tot");
            ensure(h[..3] == ["Z", "Z^2", "Z"], || format!("torus diagonal homology {h:?}"))?;
        }
    }
    passed("random suite", theorems::check_ez_random(20, 2024, 5))?;
    let i = SemiSimplicialSet::standard(1);
    let square = BiSemiSimplicialSet::exterior_product(&i, &i);
    let chi = square.diagonal().euler_characteristic().map_err(|e| e.to_string())?;
    ensure(chi == 3, || format!("χ(δ(∇¹⊗∇¹)) = {chi}"))?;
    let tot = homology(&DoubleComplex::from_bisset(&square, Ring::Z).total(), 2)?;
    ensure(tot == [g(1, &[]), g(0, &[]), g(0, &[])], || format!("H(Tot(∇¹⊗∇¹)) = {tot:?}"))?;
    Ok("11 products, torus (Z, Z², Z), 20 random pairs; χ(δ(∇¹⊗∇¹)) = 3 with H(Tot) = H(pt)".into())
}

/// Künneth over `Z` for groups with only `Z` and `Z/2` summands, written out by hand.
fn kunneth_by_hand(h: &[FPAbelianGroup], k: &[FPAbelianGroup]) -> Vec<FPAbelianGroup> {
    let top = h.len() + k.len() - 1;
    let mut out = vec![(0usize, 0usize); top];
    for (i, a) in h.iter().enumerate() {
        for (j, b) in k.iter().enumerate() {
            let ((fa, ta), (fb, tb)) = ((a.rank, a.torsion.len()), (b.rank, b.torsion.len()));
            // tensor in degree i + j
            out[i + j].0 += fa * fb;
            out[i + j].1 += fa * tb + ta * fb + ta * tb;
            // Tor in degree i + j + 1
            if i + j + 1 < top {
                out[i + j + 1].1 += ta * tb;
            }
        }
    }
    out.into_iter().map(|(f, t)| g(f, &vec![2; t])).collect()
}

fn criterion_5() -> Outcome {
    for (name, x, y) in product_pairs() {
        passed(&name, theorems::check_products(&x, &y, 5))?;
    }
    let rp2 = [g(1, &[]), g(0, &[2]), g(0, &[])];
    let expected = kunneth_by_hand(&rp2, &rp2);
    let y = SimplicialSet::free(&projective_plane());
    let r = passed("RP²×RP²", theorems::check_products(&y, &y, 5))?;
    let got: Vec<String> = r.comparisons.iter().map(|c| c.left.clone()).collect();
    ensure(got.len() == expected.len(), || format!("RP²×RP² compared {} degrees", got.len()))?;
    for (k, e) in expected.iter().enumerate() {
        ensure(got[k] == e.to_string(), || format!("RP²×RP² H_{k} = {} but Künneth gives {e}", got[k]))?;
    }
    ensure(got.get(3).map(String::as_str) == Some("Z/2"), || format!("RP²×RP² degree 3: {got:?}"))?;
    Ok("11 products match Künneth; RP²×RP² has H_3 = Z/2".into())
}

fn criterion_6() -> Outcome {
    let non_unital: Vec<_> = categories().into_iter().filter(|(_, c)| !c.is_unital()).collect();
    ensure(non_unital.len() >= 5, || format!("only {} non-unital fixtures", non_unital.len()))?;
    for (name, c) in &non_unital {
        passed(name, theorems::check_krannich(c, 5))?;
    }
    Ok(format!("{} non-unital categories at cutoff 5", non_unital.len()))
}

fn criterion_7() -> Outcome {
    let mut passing: Vec<(String, FunctorData)> = vec![
        ("{1} ↪ [1]".into(), functor("endpoint-top.fun")),
        ("{0} ↪ [1]".into(), functor("endpoint-bottom.fun")),
        ("[1] → [0]".into(), functor("interval-to-point.fun")),
    ];
    for n in 0..=2 {
        passing.push((format!("id on [{n}]"), FunctorData::identity(&FinNonUnitalCategory::poset(n))));
    }
    for (name, f) in &passing {
        let r = passed(name, theorems::check_quillen_a(f, 5))?;
        ensure(!r.hypotheses.is_empty() && !r.stages.is_empty(), || format!("{name}: empty report"))?;
    }
    let discrete = functor("discrete-into-interval.fun");
    let r = theorems::check_quillen_a(&discrete, 5).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::HypothesesNotMet, || format!("discrete ↪ [1]: {}", r.verdict))?;
    ensure(r.stages.is_empty() && r.comparisons.is_empty(), || "conclusion judged despite failed hypotheses".into())?;
    passing.push(("discrete ↪ [1]".into(), discrete));
    for (name, f) in &passing {
        passed(&format!("{name} triangle"), theorems::check_resolution_triangle(f, 5))?;
    }
    Ok("6 functors pass, discrete ↪ [1] reports hypotheses not met, 7 triangles commute".into())
}

fn criterion_8() -> Outcome {
    let fact = |r: &CheckReport, name: &str| r.facts.iter().find(|f| f.name == name).map(|f| f.value.clone()).unwrap_or_default();
    let n = passed("ℕ", theorems::group_completion_report(&MonoidInput::Presentation(MonoidPresentation::free(1)), 0))?;
    ensure(fact(&n, "Gr(M)") == "Z" && fact(&n, "Z[Gr(M)]") == "Z[t, t^-1]", || n.table())?;
    let quotient = MonoidPresentation::new(2, vec![(vec![1, 0], vec![0, 1])]).unwrap();
    let q = passed("ℕ²/~", theorems::group_completion_report(&MonoidInput::Presentation(quotient), 0))?;
    ensure(fact(&q, "Gr(M)") == "Z", || q.table())?;
    let abs = passed("{1,z}", theorems::group_completion_report(&MonoidInput::Table(FinMonoid::absorbing()), 7))?;
    ensure(fact(&abs, "Gr(M)") == "0", || abs.table())?;
    let point: Vec<_> = abs.comparisons.iter().filter(|c| c.label == "BM | point").collect();
    ensure(point.len() == 8 && point.iter().all(|c| c.pass), || abs.table())?;
    for (name, m) in [("Z/2", FinMonoid::cyclic(2)), ("Z/3", FinMonoid::cyclic(3)), ("{1,z}", FinMonoid::absorbing())] {
        let r = passed(name, theorems::check_bar_acyclic(&m, 6))?;
        ensure(r.stages.iter().any(|s| s.name == "∂P + P∂ = id" && s.pass), || r.table())?;
    }
    Ok("Gr(ℕ) = Z with Z[t, t^-1], Gr(ℕ²/~) = Z, B{1,z} ≃ pt through 7, bar constructions contract".into())
}

fn criterion_9() -> Outcome {
    let i = SemiSimplicialSet::standard(1);
    let c = SemiSimplicialSet::boundary(2).unwrap();
    let square = DoubleComplex::from_bisset(&BiSemiSimplicialSet::exterior_product(&i, &i), Ring::Fp(2));
    let torus = DoubleComplex::from_bisset(&BiSemiSimplicialSet::exterior_product(&c, &c), Ring::Q);
    let mut totals = Vec::new();
    for (name, d) in [("∇¹⊗∇¹", &square), ("torus", &torus)] {
        let mut per_orientation = Vec::new();
        for o in [Orientation::Columns, Orientation::Rows] {
            let ss = spectral_sequence(d, o, 6).map_err(|e| e.to_string())?;
            let audit = audit_pages(&ss, d).map_err(|e| e.to_string())?;
            ensure(audit.pass(), || format!("{name} {o:?}: {:?}", audit.problems))?;
            let conv = check_convergence(&ss, &d.total()).map_err(|e| e.to_string())?;
            ensure(conv.pass, || format!("{name} {o:?}: {conv:?}"))?;
            if name == "∇¹⊗∇¹" {
                ensure(ss.pages[2].dims() == BTreeMap::from([((0, 0), 1)]), || format!("E² = {:?}", ss.pages[2].dims()))?;
            }
            per_orientation.push(conv.tallies.iter().map(|t| t.page_total).collect::<Vec<_>>());
        }
        ensure(per_orientation[0] == per_orientation[1], || format!("{name}: orientations disagree {per_orientation:?}"))?;
        totals.push(per_orientation[0].clone());
    }
    ensure(totals[1] == [1, 2, 1], || format!("torus E^∞ totals {:?}", totals[1]))?;
    Ok("E² of ∇¹⊗∇¹ is F₂ at (0,0); torus totals (1, 2, 1); d¹ matches dh/dv; orientations agree".into())
}

fn criterion_10() -> Outcome {
    let cutoff = 5;
    let mut spaces: Vec<(String, SemiSimplicialSet)> = ssets().into_iter().map(|(n, x)| (n.to_string(), x)).collect();
    spaces.extend(simplicials().into_iter().map(|(n, y)| (n.to_string(), y.enumerate(cutoff).sset)));
    spaces.extend(categories().into_iter().map(|(n, c)| (n.to_string(), c.nerve(cutoff))));
    let mut count = 0;
    for (name, x) in &spaces {
        for n in 0..cutoff {
            passed(&format!("{name}, n = {n}"), theorems::check_skeletal_shadow(x, n, cutoff))?;
            count += 1;
        }
    }
    Ok(format!("{} spaces × n < 5 = {count} reports", spaces.len()))
}

fn criterion_11() -> Outcome {
    for (name, m) in [("Z/2", FinMonoid::cyclic(2)), ("Z/3", FinMonoid::cyclic(3))] {
        let r = passed(name, theorems::check_segal_nerve(&m, 5))?;
        let acyclic = r.comparisons.iter().filter(|c| c.label == "augmented path space | 0").count();
        ensure(acyclic == 6, || format!("{name}: {acyclic} path-space degrees"))?;
    }
    Ok("Segal maps bijective and path spaces exactly acyclic for Z/2, Z/3 at cutoff 5".into())
}

// Independent model of degeneracy words: s_{j1} ∘ … ∘ s_{jk} acts through the
// surjection σ^{jk} ∘ … ∘ σ^{j1} of ordinals.
fn surjection(word: &[usize], n: usize) -> Vec<usize> {
    (0..=n).map(|v| word.iter().fold(v, |v, &j| if v <= j { v } else { v - 1 })).collect()
}

fn face_oracle(y: &SimplicialSet, sigma: &[usize], deg: usize, idx: usize, i: usize) -> (Vec<usize>, usize, usize) {
    let n = sigma.len() - 1;
    let tau: Vec<usize> = (0..n).map(|v| sigma[if v < i { v } else { v + 1 }]).collect();
    match (0..=deg).find(|k| !tau.contains(k)) {
        None => (tau, deg, idx),
        Some(k) => {
            let squeezed: Vec<usize> = tau.iter().map(|&t| if t < k { t } else { t - 1 }).collect();
            let f = &y.generator_faces(deg, idx)[k];
            let rho = surjection(f.word.indices(), deg - 1);
            (squeezed.iter().map(|&t| rho[t]).collect(), f.deg, f.idx)
        }
    }
}

fn decreasing_words(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for j1 in (k - 1)..n {
        for rest in decreasing_words(j1, k - 1) {
            let mut w = vec![j1];
            w.extend(rest);
            out.push(w);
        }
    }
    out
}

fn normalize_face_agrees(name: &str, y: &SimplicialSet) -> Result<usize, String> {
    let mut count = 0;
    for deg in 0..=3.min(y.generator_counts().len() - 1) {
        for idx in 0..y.generator_count(deg) {
            for k in 0..=(3 - deg) {
                let n = deg + k;
                if n == 0 {
                    continue;
                }
                for w in decreasing_words(n, k) {
                    let r = SimplexRef { word: DegeneracyWord::new(w.clone()).unwrap(), deg, idx };
                    let sigma = surjection(&w, n);
                    for i in 0..=n {
                        let got = y.normalize_face(i, &r);
                        let want = face_oracle(y, &sigma, deg, idx, i);
                        let got = (surjection(got.word.indices(), n - 1), got.deg, got.idx);
                        ensure(got == want, || format!("{name}: d{i} of {r} gives {got:?}, oracle {want:?}"))?;
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

fn recheck(name: &str, h: &CertifiedHomotopy) -> Result<(), String> {
    let (s, t) = (&h.source, &h.target);
    let p = &h.homotopy.maps;
    for k in 0..=h.verified_through.min(p.len() - 1) {
        let mut lhs = &t.boundary(k + 1) * &p[k];
        if k > 0 {
            lhs = &lhs + &(&p[k - 1] * &s.boundary(k));
        }
        let to = h.to.at(k, s, t).map_err(|e| e.to_string())?;
        let from = h.from.at(k, s, t).map_err(|e| e.to_string())?;
        ensure(lhs == &to - &from, || format!("{name}: ∂P + P∂ ≠ g − f in degree {k}"))?;
    }
    Ok(())
}

fn boundaries_square_to_zero(name: &str, c: &ChainComplex) -> Result<(), String> {
    for k in 2..=c.top() {
        ensure((&c.boundary(k - 1) * &c.boundary(k)).is_zero(), || format!("{name}: ∂∂ ≠ 0 in degree {k}"))?;
    }
    Ok(())
}

fn criterion_12() -> Outcome {
    // simplicial identities
    for (name, x) in ssets() {
        ensure(x.validate().valid, || format!("{name} fails validation"))?;
    }
    for (name, y) in simplicials() {
        y.validate(4).map_err(|e| format!("{name}: {e}"))?;
    }
    for (name, c) in categories() {
        c.validate().map_err(|e| format!("{name}: {e}"))?;
    }
    let broken = SemiSimplicialSet::new(vec![3, 3, 1], vec![vec![], vec![vec![1, 2, 2], vec![0, 1, 0]], vec![vec![0], vec![1], vec![2]]], None);
    ensure(broken.is_err(), || "a violated identity was accepted".into())?;

    // normalize_face against the surjection model
    let mut faces = 0;
    let mut ys = simplicials();
    let random: Vec<(String, SimplicialSet)> = (0..20).map(|s| (format!("random {s}"), random_simplicial(s, RandomShape::default()))).collect();
    ys.extend(random.iter().map(|(n, y)| (n.as_str(), y.clone())).collect::<Vec<_>>().into_iter().map(|(n, y)| (Box::leak(n.to_string().into_boxed_str()) as &str, y)));
    for (name, y) in &ys {
        faces += normalize_face_agrees(name, y)?;
    }

    // adjunction triangles
    for (name, y) in simplicials() {
        check_triangle_identity(&y, 4).map_err(|e| format!("{name}: {e}"))?;
    }
    for (name, x) in ssets() {
        let (ex, unit) = SimplicialSet::unit_map(&x, 4);
        let refs = ex.simplices.as_ref().expect("enumerated from a presentation");
        for p in 0..unit.depth() {
            for (s, &t) in unit.level(p).iter().enumerate() {
                ensure(refs[p][t] == SimplexRef::generator(p, s), || format!("{name}: unit misses generator {s} in degree {p}"))?;
            }
        }
    }

    // ∂² = 0 on every complex built from the corpus
    let mut complexes = 0;
    for (name, x) in ssets() {
        boundaries_square_to_zero(name, &ChainComplex::unnormalized(&x, Ring::Z))?;
        complexes += 1;
    }
    for (name, y) in simplicials() {
        boundaries_square_to_zero(name, &ChainComplex::normalized(&y, Ring::Z, 5))?;
        complexes += 1;
    }
    for (name, c) in categories() {
        boundaries_square_to_zero(name, &ChainComplex::unnormalized(&c.nerve(5), Ring::Z))?;
        complexes += 1;
    }
    for (name, d) in docs(".biss") {
        if let FixtureDocument::BiSemiSimplicial(b) = d {
            boundaries_square_to_zero(name, &DoubleComplex::from_bisset(&b, Ring::Z).total())?;
            complexes += 1;
        }
    }

    // every certificate gives an exact chain homotopy
    let mut certificates = 0;
    for (name, d) in docs(".mon") {
        if let FixtureDocument::Monoid(m) = d {
            let cert = bar_extra_degeneracy(&m, 4).map_err(|e| format!("{name}: {e}"))?;
            recheck(name, &chain_homotopy_from_certificate(&cert, Ring::Z).map_err(|e| format!("{name}: {e}"))?)?;
            certificates += 1;
        }
    }
    for (name, d) in docs(".nat") {
        if let FixtureDocument::NatTrans(eta) = d {
            let cert = nat_trans_homotopy(&eta, 4).map_err(|e| format!("{name}: {e}"))?;
            recheck(name, &chain_homotopy_from_certificate(&cert, Ring::Z).map_err(|e| format!("{name}: {e}"))?)?;
            certificates += 1;
        }
    }
    for (name, d) in docs(".fun") {
        if let FixtureDocument::Functor(f) = d {
            let r = CommaResolution::new(&f, 4).map_err(|e| format!("{name}: {e}"))?;
            for p in 0..=3 {
                let cert = r.row_extra_degeneracy(p).map_err(|e| format!("{name} row {p}: {e}"))?;
                let h = chain_homotopy_from_certificate(&cert, Ring::Z).map_err(|e| format!("{name} row {p}: {e}"))?;
                recheck(&format!("{name} row {p}"), &h)?;
                certificates += 1;
            }
        }
    }

    // determinism
    let runs = || -> Vec<String> {
        let c = SimplicialSet::free(&SemiSimplicialSet::boundary(2).unwrap());
        [
            theorems::check_ez_random(5, 99, 4),
            theorems::check_adj_units_random(5, 99, 4),
            theorems::check_ez_diagonal(&c, &c, 4),
            theorems::check_quillen_a(&functor("endpoint-bottom.fun"), 4),
            theorems::check_bar_acyclic(&FinMonoid::cyclic(3), 4),
        ]
        .into_iter()
        .map(|r| r.map(|r| r.to_json()).unwrap_or_else(|e| e.to_string()))
        .collect()
    };
    ensure(runs() == runs(), || "reports differ between runs".into())?;

    Ok(format!(
        "identities, {faces} faces against the surjection model, triangles, ∂² = 0 on {complexes} complexes, {certificates} certificates, byte-identical reports"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("classical homology", criterion_1),
        ("X → EX", criterion_2),
        ("fat → thin", criterion_3),
        ("Eilenberg–Zilber diagonal", criterion_4),
        ("products and Künneth", criterion_5),
        ("B𝒞 → B𝒞⁺", criterion_6),
        ("Theorem A", criterion_7),
        ("group completion", criterion_8),
        ("spectral sequence", criterion_9),
        ("skeletal connectivity", criterion_10),
        ("Segal and path space", criterion_11),
        ("property suites", criterion_12),
    ];
    let mut failures = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(s) => println!("criterion {:>2} pass  {name}: {s} [{ms} ms]", k + 1),
            Err(e) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {e} [{ms} ms]", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
