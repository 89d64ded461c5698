use std::fmt::Write as _;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::Parser;
use serde_json::{json, Value};

use semisimplicial::category::{bar_construction, CommaResolution, FinMonoid, MonoidAction, Side};
use semisimplicial::format::FixtureDocument;
use semisimplicial::homalg::{smith_normal_form, ChainComplex, DoubleComplex, Ring};
use semisimplicial::specseq::{audit_pages, check_convergence, spectral_sequence, Orientation};
use semisimplicial::sset::SimplicialSet;
use semisimplicial::theorems::{self, CheckReport, MonoidInput, CHECK_IDS};

use crate::{Cli, CmdResult, Command, Outcome, UsageError};

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn load(path: &Path) -> Result<FixtureDocument, UsageError> {
    Ok(FixtureDocument::load(path)?)
}

fn need(cutoff: Option<usize>, what: &str) -> Result<usize, UsageError> {
    cutoff.ok_or_else(|| usage(format!("--cutoff is required for {what}")))
}

fn ring(s: &str) -> Result<Ring, UsageError> {
    Ok(s.parse()?)
}

fn wrong(kind: &str, what: &str) -> UsageError {
    usage(format!("{what} is not defined for a {kind} document"))
}

/// A constructed fixture, printed as a loadable document.
fn document(doc: FixtureDocument, summary: String) -> CmdResult {
    let text = doc.to_json()?;
    Ok(Outcome::ok(serde_json::from_str(&text).expect("documents are JSON"), summary))
}

fn sizes_line(name: &str, sizes: &[usize]) -> String {
    let s: Vec<String> = sizes.iter().map(ToString::to_string).collect();
    format!("{name}: levels [{}]\n", s.join(", "))
}

fn report(r: CheckReport) -> Outcome {
    let code = if r.passed() { 0 } else { 1 };
    Outcome { code, json: serde_json::to_value(&r).expect("reports serialize"), table: r.table() }
}

fn simplicial(doc: FixtureDocument) -> Result<SimplicialSet, UsageError> {
    match doc {
        FixtureDocument::Simplicial(y) => Ok(y),
        FixtureDocument::SemiSimplicial(x) => Ok(SimplicialSet::free(&x)),
        other => Err(wrong(other.kind(), "a simplicial input")),
    }
}

fn monoid_of(doc: FixtureDocument, what: &str) -> Result<FinMonoid, UsageError> {
    match doc {
        FixtureDocument::Monoid(m) => Ok(m),
        other => Err(wrong(other.kind(), what)),
    }
}

fn action(path: &Path, m: &FinMonoid, side: Side) -> Result<MonoidAction, UsageError> {
    match load(path)? {
        FixtureDocument::Action { monoid, action } => {
            if monoid.table() != m.table() || monoid.unit() != m.unit() {
                return Err(usage(format!("{}: the action is over a different monoid", path.display())));
            }
            if action.side() != side {
                return Err(usage(format!("{}: expected a {side:?} action", path.display()).to_lowercase()));
            }
            Ok(action)
        }
        other => Err(wrong(other.kind(), "an action argument")),
    }
}

pub(crate) fn dispatch(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Validate { file } => validate(file),
        Command::Homology { file, coeff, cutoff, max_degree } => homology(file, ring(coeff)?, *cutoff, *max_degree),
        Command::Euler { file, cutoff } => euler(file, *cutoff),
        Command::Skeleton { file, n } => match load(file)? {
            FixtureDocument::SemiSimplicial(x) => {
                let (sk, _) = x.skeleton(*n);
                let line = sizes_line(&format!("{n}-skeleton"), sk.sizes());
                document(FixtureDocument::SemiSimplicial(sk), line)
            }
            other => Err(wrong(other.kind(), "skeleton")),
        },
        Command::Nerve { file, cutoff, simplicial } => {
            let cutoff = need(*cutoff, "nerve")?;
            let c = match load(file)? {
                FixtureDocument::Category(c) => c,
                FixtureDocument::Monoid(m) => m.as_category(),
                other => return Err(wrong(other.kind(), "nerve")),
            };
            if *simplicial {
                let y = c.unital_nerve(cutoff)?.present();
                let line = sizes_line("non-degenerate chains", y.generator_counts());
                document(FixtureDocument::Simplicial(y), line)
            } else {
                let x = c.nerve(cutoff);
                let line = sizes_line("nerve", x.sizes());
                document(FixtureDocument::SemiSimplicial(x), line)
            }
        }
        Command::Unitalize { file } => match load(file)? {
            FixtureDocument::Category(c) => {
                let u = c.unitalize();
                let line = format!("{} objects, {} morphisms\n", u.objects(), u.morphism_count());
                document(FixtureDocument::Category(u), line)
            }
            other => Err(wrong(other.kind(), "unitalize")),
        },
        Command::Over { file, object, under } => {
            let c = match load(file)? {
                FixtureDocument::Category(c) if *under => c.under(*object)?,
                FixtureDocument::Category(c) => c.over(*object)?,
                FixtureDocument::Functor(f) if *under => f.comma_under(*object)?,
                FixtureDocument::Functor(f) => f.comma_over(*object)?,
                other => return Err(wrong(other.kind(), "over")),
            };
            let line = format!("{} objects, {} morphisms\n", c.objects(), c.morphism_count());
            document(FixtureDocument::Category(c), line)
        }
        Command::Bar { file, cutoff, right, left } => {
            let cutoff = need(*cutoff, "bar")?;
            let m = monoid_of(load(file)?, "bar")?;
            let y = match right {
                Some(p) => action(p, &m, Side::Right)?,
                None => m.point_action(Side::Right),
            };
            let x = match left {
                Some(p) => action(p, &m, Side::Left)?,
                None => m.left_regular(),
            };
            let b = bar_construction(&y, &m, &x, cutoff)?;
            let line = sizes_line("bar construction", b.sizes());
            document(FixtureDocument::SemiSimplicial(b), line)
        }
        Command::Resolve { file, cutoff, dual } => {
            let cutoff = need(*cutoff, "resolve")?;
            let f = match load(file)? {
                FixtureDocument::Functor(f) => f,
                other => return Err(wrong(other.kind(), "resolve")),
            };
            let r = if *dual { CommaResolution::dual(&f, cutoff)? } else { CommaResolution::new(&f, cutoff)? };
            let mut line = String::new();
            for (p, row) in r.bisset.sizes().iter().enumerate() {
                let s: Vec<String> = row.iter().map(ToString::to_string).collect();
                let _ = writeln!(line, "p = {p}: [{}]", s.join(", "));
            }
            document(FixtureDocument::BiSemiSimplicial(r.bisset), line)
        }
        Command::Specseq { file, coeff, cutoff, orientation, max_page, bases } => {
            specseq(file, ring(coeff)?, *cutoff, orientation, *max_page, *bases)
        }
        Command::GroupComplete { file, cutoff } => {
            let input = match load(file)? {
                FixtureDocument::Monoid(m) => MonoidInput::Table(m),
                FixtureDocument::MonoidPresentation(p) => MonoidInput::Presentation(p),
                other => return Err(wrong(other.kind(), "group-complete")),
            };
            let cutoff = match input {
                MonoidInput::Table(_) => need(*cutoff, "group-complete on a monoid table")?,
                MonoidInput::Presentation(_) => cutoff.unwrap_or(0),
            };
            Ok(report(theorems::group_completion_report(&input, cutoff)?))
        }
        Command::Check { id, files, cutoff, seed, count, n, size } => check(id, files, *cutoff, *seed, *count, *n, *size),
        Command::Batch { file, jobs } => batch(file, *jobs),
    }
}

fn validate(file: &Path) -> CmdResult {
    let doc = match FixtureDocument::load(file) {
        Ok(d) => d,
        Err(e @ semisimplicial::Error::Schema(_)) => return Err(e.into()),
        Err(e) => {
            let msg = e.to_string();
            return Ok(Outcome { code: 1, json: json!({ "valid": false, "error": msg }), table: format!("invalid: {msg}\n") });
        }
    };
    let mut body = json!({ "valid": true, "type": doc.kind() });
    let mut table = format!("valid {}\n", doc.kind());
    match &doc {
        FixtureDocument::SemiSimplicial(x) => {
            body["sizes"] = json!(x.sizes());
            body["truncated_at"] = json!(x.truncated_at());
            table.push_str(&sizes_line("sset", x.sizes()));
        }
        FixtureDocument::Simplicial(y) => {
            body["generators"] = json!(y.generator_counts());
            table.push_str(&sizes_line("generators", y.generator_counts()));
        }
        FixtureDocument::Category(c) => {
            body["objects"] = json!(c.objects());
            body["morphisms"] = json!(c.morphism_count());
            body["unital"] = json!(c.is_unital());
        }
        _ => {}
    }
    Ok(Outcome::ok(body, table))
}

/// The chain complex whose homology `homology` and `euler` report.
fn complex_of(doc: &FixtureDocument, ring: Ring, cutoff: Option<usize>) -> Result<ChainComplex, UsageError> {
    Ok(match doc {
        FixtureDocument::SemiSimplicial(x) => {
            let x = match cutoff {
                Some(n) => x.truncate(n),
                None => x.clone(),
            };
            ChainComplex::unnormalized(&x, ring)
        }
        FixtureDocument::Simplicial(y) => ChainComplex::normalized(y, ring, need(cutoff, "a simplicial set")?),
        FixtureDocument::BiSemiSimplicial(b) => DoubleComplex::from_bisset(b, ring).total(),
        FixtureDocument::Category(c) => ChainComplex::unnormalized(&c.nerve(need(cutoff, "a category")?), ring),
        FixtureDocument::Monoid(m) => ChainComplex::unnormalized(&m.nerve(need(cutoff, "a monoid")?), ring),
        other => return Err(wrong(other.kind(), "homology")),
    })
}

fn homology(file: &Path, ring: Ring, cutoff: Option<usize>, max_degree: Option<usize>) -> CmdResult {
    let doc = load(file)?;
    if let FixtureDocument::Matrix(m) = &doc {
        let s = smith_normal_form(m, false);
        let factors: Vec<String> = s.factors.iter().map(ToString::to_string).collect();
        let table = format!("rank {}, invariant factors [{}]\n", factors.len(), factors.join(", "));
        return Ok(Outcome::ok(json!({ "rank": factors.len(), "invariant_factors": factors }), table));
    }
    let c = complex_of(&doc, ring, cutoff)?;
    let top = c.trusted_through().unwrap_or(c.top());
    let hi = max_degree.map_or(top, |d| d.min(top));
    let groups = if c.truncated_at() == Some(0) { Vec::new() } else { c.homology_through(hi)? };
    let mut table = String::new();
    for h in &groups {
        let _ = writeln!(table, "H_{} = {}{}", h.degree, h.group, if h.trusted { "" } else { "  (untrusted)" });
    }
    Ok(Outcome::ok(
        json!({
            "input": doc.kind(),
            "ring": ring,
            "trusted_through": c.trusted_through(),
            "groups": groups.iter().map(|h| json!({
                "degree": h.degree,
                "group": h.group.to_string(),
                "rank": h.group.rank,
                "torsion": h.group.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "trusted": h.trusted,
            })).collect::<Vec<_>>(),
        }),
        table,
    ))
}

fn betti_euler(c: &ChainComplex) -> Result<i64, UsageError> {
    let hs = c.with_ring(Ring::Q).homology_through(c.top())?;
    Ok(hs.iter().map(|h| if h.degree % 2 == 0 { h.group.rank as i64 } else { -(h.group.rank as i64) }).sum())
}

fn euler(file: &Path, cutoff: Option<usize>) -> CmdResult {
    let doc = load(file)?;
    let (counts, c, diagonal) = match &doc {
        FixtureDocument::SemiSimplicial(x) => (x.euler_characteristic()?, ChainComplex::unnormalized(x, Ring::Q), None),
        FixtureDocument::Simplicial(y) => {
            let dim = y.dimension().ok_or_else(|| usage("the Euler characteristic needs a finite-dimensional simplicial set"))?;
            let chi = y.generator_counts().iter().enumerate().map(|(q, &n)| if q % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
            (chi, ChainComplex::normalized(y, Ring::Q, cutoff.unwrap_or(dim + 1).max(dim + 1)), None)
        }
        FixtureDocument::BiSemiSimplicial(b) => {
            let d = DoubleComplex::from_bisset(b, Ring::Q);
            let t = d.total();
            let chi = t.euler_characteristic()?;
            (chi, t, Some(b.diagonal().euler_characteristic()?))
        }
        other => return Err(wrong(other.kind(), "euler")),
    };
    let homological = betti_euler(&c)?;
    let agree = counts == homological;
    let mut body = json!({ "input": doc.kind(), "euler": counts, "betti_euler": homological, "agree": agree });
    let mut table = format!("χ = {counts} from cells, {homological} from Betti numbers\n");
    if let Some(dchi) = diagonal {
        body["diagonal_euler"] = json!(dchi);
        let _ = writeln!(table, "χ of the enumerated diagonal = {dchi}");
    }
    Ok(Outcome { code: if agree { 0 } else { 1 }, json: body, table })
}

fn specseq(file: &Path, ring: Ring, cutoff: Option<usize>, orientation: &str, max_page: usize, bases: bool) -> CmdResult {
    let orientation: Orientation = orientation.parse()?;
    if !ring.is_field() {
        return Err(usage("spectral sequences are computed over fields; pass --coeff q or --coeff f<p>"));
    }
    let dc = match load(file)? {
        FixtureDocument::BiSemiSimplicial(b) => DoubleComplex::from_bisset(&b, ring),
        FixtureDocument::Functor(f) => CommaResolution::new(&f, need(cutoff, "the resolution of a functor")?)?.double_complex(ring),
        other => return Err(wrong(other.kind(), "specseq")),
    };
    let ss = spectral_sequence(&dc, orientation, max_page)?;
    let conv = check_convergence(&ss, &dc.total())?;
    let audit = audit_pages(&ss, &dc)?;
    let mut table = String::new();
    let pages: Vec<Value> = ss
        .pages
        .iter()
        .map(|p| {
            let dims: Vec<String> = p.dims().iter().map(|(&(s, t), d)| format!("({s},{t}):{d}")).collect();
            let _ = writeln!(table, "E^{}: {}", p.r, if dims.is_empty() { "0".to_string() } else { dims.join(" ") });
            if bases {
                serde_json::to_value(p).expect("pages serialize")
            } else {
                json!({
                    "r": p.r,
                    "dims": p.spots.iter().map(|x| json!({ "s": x.s, "t": x.t, "dim": x.dim })).collect::<Vec<_>>(),
                    "differentials": p.differentials.iter().map(|d| json!({ "from": d.from, "to": d.to, "rank": d.rank })).collect::<Vec<_>>(),
                })
            }
        })
        .collect();
    let totals: Vec<String> = conv.tallies.iter().map(|t| format!("{}={}/{}", t.degree, t.page_total, t.homology)).collect();
    let _ = writeln!(table, "E^∞ against H(Tot): {} {}", totals.join(" "), if conv.pass { "ok" } else { "FAIL" });
    let _ = writeln!(table, "page audit: {}", if audit.pass() { "ok" } else { "FAIL" });
    for p in &audit.problems {
        let _ = writeln!(table, "  {p}");
    }
    let code = if conv.pass && audit.pass() { 0 } else { 1 };
    Ok(Outcome {
        code,
        json: json!({
            "orientation": ss.orientation,
            "ring": ss.ring,
            "trusted_through": ss.trusted_through,
            "stabilized": ss.stabilized,
            "pages": pages,
            "convergence": conv,
            "audit": audit,
        }),
        table,
    })
}

#[allow(clippy::too_many_arguments)]
fn check(id: &str, files: &[std::path::PathBuf], cutoff: Option<usize>, seed: Option<u64>, count: Option<usize>, n: Option<usize>, size: Option<usize>) -> CmdResult {
    if !CHECK_IDS.contains(&id) {
        return Err(usage(format!("unknown check {id:?}; known checks: {}", CHECK_IDS.join(", "))));
    }
    let cutoff = need(cutoff, &format!("check {id}"))?;
    let arity = match id {
        "adj-units-random" | "ez-random" | "constant" => 0,
        "ez-diagonal" | "products" => 2,
        _ => 1,
    };
    if files.len() != arity {
        return Err(usage(format!("check {id} takes {arity} input file(s), got {}", files.len())));
    }
    let docs = files.iter().map(|f| load(f)).collect::<Result<Vec<_>, _>>()?;
    let mut docs = docs.into_iter();
    let mut next = || docs.next().expect("arity checked");
    let r = match id {
        "adj-units" => match next() {
            FixtureDocument::SemiSimplicial(x) => theorems::check_adj_units(&x, cutoff)?,
            other => return Err(wrong(other.kind(), "check adj-units")),
        },
        "adj-units-random" => theorems::check_adj_units_random(count.unwrap_or(20), seed.unwrap_or(0), cutoff)?,
        "fat-thin" => theorems::check_fat_thin(&simplicial(next())?, cutoff)?,
        "ez-diagonal" => {
            let (x, y) = (simplicial(next())?, simplicial(next())?);
            theorems::check_ez_diagonal(&x, &y, cutoff)?
        }
        "ez-random" => theorems::check_ez_random(count.unwrap_or(20), seed.unwrap_or(0), cutoff)?,
        "products" => {
            let (x, y) = (simplicial(next())?, simplicial(next())?);
            theorems::check_products(&x, &y, cutoff)?
        }
        "krannich" | "terminal-contractible" => match next() {
            FixtureDocument::Category(c) if id == "krannich" => theorems::check_krannich(&c, cutoff)?,
            FixtureDocument::Category(c) => theorems::check_terminal_contractible(&c, cutoff)?,
            other => return Err(wrong(other.kind(), &format!("check {id}"))),
        },
        "quillen-a" | "resolution-triangle" => match next() {
            FixtureDocument::Functor(f) if id == "quillen-a" => theorems::check_quillen_a(&f, cutoff)?,
            FixtureDocument::Functor(f) => theorems::check_resolution_triangle(&f, cutoff)?,
            other => return Err(wrong(other.kind(), &format!("check {id}"))),
        },
        "nat-trans" => match next() {
            FixtureDocument::NatTrans(eta) => theorems::check_nat_trans(&eta, cutoff)?,
            other => return Err(wrong(other.kind(), "check nat-trans")),
        },
        "bar-acyclic" => theorems::check_bar_acyclic(&monoid_of(next(), "check bar-acyclic")?, cutoff)?,
        "segal-nerve" => theorems::check_segal_nerve(&monoid_of(next(), "check segal-nerve")?, cutoff)?,
        "group-completion" => {
            let input = match next() {
                FixtureDocument::Monoid(m) => MonoidInput::Table(m),
                FixtureDocument::MonoidPresentation(p) => MonoidInput::Presentation(p),
                other => return Err(wrong(other.kind(), "check group-completion")),
            };
            theorems::group_completion_report(&input, cutoff)?
        }
        "skeletal" => match next() {
            FixtureDocument::SemiSimplicial(x) => {
                theorems::check_skeletal_shadow(&x, n.ok_or_else(|| usage("--n is required for check skeletal"))?, cutoff)?
            }
            other => return Err(wrong(other.kind(), "check skeletal")),
        },
        "constant" => theorems::check_constant(size.ok_or_else(|| usage("--size is required for check constant"))?, cutoff)?,
        _ => unreachable!("ids are listed in CHECK_IDS"),
    };
    Ok(report(r))
}

/// Splits a batch line into words; double quotes group words.
fn words(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut any = false;
    for ch in line.chars() {
        match ch {
            '"' => {
                quoted = !quoted;
                any = true;
            }
            c if c.is_whitespace() && !quoted => {
                if any {
                    out.push(std::mem::take(&mut cur));
                    any = false;
                }
            }
            c => {
                cur.push(c);
                any = true;
            }
        }
    }
    if any {
        out.push(cur);
    }
    out
}

fn batch(file: &Path, jobs: usize) -> CmdResult {
    let text = std::fs::read_to_string(file).map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
    let lines: Vec<(usize, String)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim().to_string()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let results: Mutex<Vec<Option<(i32, Value)>>> = Mutex::new(vec![None; lines.len()]);
    let next = AtomicUsize::new(0);
    let run_one = |line: &str| -> (i32, Value) {
        let mut args = vec!["sset".to_string()];
        args.extend(words(line));
        match Cli::try_parse_from(&args) {
            Ok(Cli { command: Command::Batch { .. }, .. }) => (2, json!({ "error": "batch files cannot nest" })),
            Ok(cli) => {
                let o = crate::execute(&cli);
                (o.code, o.json)
            }
            Err(e) => (2, json!({ "error": e.to_string().trim_end() })),
        }
    };
    std::thread::scope(|s| {
        for _ in 0..jobs.max(1).min(lines.len().max(1)) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                let Some((_, line)) = lines.get(k) else { break };
                let r = run_one(line);
                results.lock().expect("no panics while holding the lock")[k] = Some(r);
            });
        }
    });
    let results = results.into_inner().expect("threads joined");
    let mut table = String::new();
    let mut worst = 0;
    let mut entries = Vec::new();
    for ((lineno, line), r) in lines.iter().zip(results) {
        let (code, body) = r.expect("every line ran");
        worst = match (worst, code) {
            (2, _) | (_, 2) => 2,
            (a, b) => a.max(b),
        };
        let mark = match code {
            0 => "ok   ",
            1 => "FAIL ",
            _ => "ERROR",
        };
        let _ = writeln!(table, "{mark} {lineno:>3}: {line}");
        entries.push(json!({ "line": lineno, "command": line, "exit": code, "report": body }));
    }
    let passed = entries.iter().filter(|e| e["exit"] == 0).count();
    let _ = writeln!(table, "{passed}/{} passed", entries.len());
    Ok(Outcome { code: worst, json: json!({ "results": entries, "passed": passed, "total": lines.len() }), table })
}

#[cfg(test)]
mod tests {
    use super::words;

    #[test]
    fn batch_words() {
        assert_eq!(words("check  adj-units \"a b.json\" --cutoff 4"), ["check", "adj-units", "a b.json", "--cutoff", "4"]);
        assert_eq!(words("  "), Vec::<String>::new());
        assert_eq!(words("x \"\""), ["x", ""]);
    }
}
