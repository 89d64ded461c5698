//! Executable homological shadows of the main results.
//!
//! Every check returns a [`CheckReport`] listing the hypotheses it tested,
//! the intermediate stages, and the groups it compared degree by degree.
//! Weak equivalences are shadowed by homology isomorphisms through a named
//! range, certified by an acyclic mapping cone.

use std::fmt::{self, Display, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homalg::{is_homology_iso, ChainComplex, ChainMap, FPAbelianGroup};

mod categories;
mod monoids;
mod spaces;

pub use categories::{check_krannich, check_nat_trans, check_quillen_a, check_resolution_triangle, check_terminal_contractible};
pub use monoids::{check_bar_acyclic, check_segal_nerve, group_completion_report, localized_ring, MonoidInput};
pub use spaces::{
    check_adj_units, check_adj_units_random, check_constant, check_ez_diagonal, check_ez_random, check_fat_thin, check_products,
    check_skeletal_shadow,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    UntrustedAtCutoff,
    HypothesesNotMet,
}

impl Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::UntrustedAtCutoff => "untrusted-at-cutoff",
            Verdict::HypothesesNotMet => "hypotheses-not-met",
        })
    }
}

/// A named yes/no finding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Two groups (or other values) compared in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub degree: usize,
    pub label: String,
    pub left: String,
    pub right: String,
    pub pass: bool,
}

/// A computed quantity that is reported rather than judged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub verdict: Verdict,
    /// Highest degree in which the comparisons are claimed.
    pub trusted_through: Option<usize>,
    pub hypotheses: Vec<Item>,
    pub stages: Vec<Item>,
    pub comparisons: Vec<Comparison>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub facts: Vec<Fact>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Wall-clock time; not part of the deterministic body.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// A plain-text summary, one line per finding.
    pub fn table(&self) -> String {
        let mut s = String::new();
        let range = self.trusted_through.map_or("-".to_string(), |d| d.to_string());
        let _ = writeln!(s, "{}: {} (trusted through {range})", self.check, self.verdict);
        for (kind, items) in [("hypothesis", &self.hypotheses), ("stage", &self.stages)] {
            for i in items {
                let mark = if i.pass { "ok  " } else { "FAIL" };
                let _ = writeln!(s, "  {mark} {kind:<10} {}{}", i.name, if i.detail.is_empty() { String::new() } else { format!(": {}", i.detail) });
            }
        }
        for c in &self.comparisons {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            let _ = writeln!(s, "  {mark} H_{:<2} {:<28} {} | {}", c.degree, c.label, c.left, c.right);
        }
        for f in &self.facts {
            let _ = writeln!(s, "       {} = {}", f.name, f.value);
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        s
    }
}

pub(crate) struct Builder {
    report: CheckReport,
    untrusted: bool,
}

impl Builder {
    pub(crate) fn new(check: &str, trusted_through: Option<usize>) -> Self {
        Self {
            report: CheckReport {
                check: check.to_string(),
                verdict: Verdict::Pass,
                trusted_through,
                hypotheses: Vec::new(),
                stages: Vec::new(),
                comparisons: Vec::new(),
                facts: Vec::new(),
                notes: Vec::new(),
                seed: None,
                timing_ms: None,
            },
            untrusted: false,
        }
    }

    pub(crate) fn hypothesis(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> bool {
        self.report.hypotheses.push(Item { name: name.into(), pass, detail: detail.into() });
        pass
    }

    pub(crate) fn stage(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> bool {
        self.report.stages.push(Item { name: name.into(), pass, detail: detail.into() });
        pass
    }

    /// Records a fallible stage: truncation errors mark the report untrusted,
    /// other errors fail the stage.
    pub(crate) fn attempt<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(Error::Truncated(m)) => {
                self.untrusted(format!("{name}: {m}"));
                None
            }
            Err(e) => {
                self.stage(name, false, e.to_string());
                None
            }
        }
    }

    pub(crate) fn compare(&mut self, degree: usize, label: impl Into<String>, left: impl Display, right: impl Display, pass: bool) -> bool {
        self.report.comparisons.push(Comparison { degree, label: label.into(), left: left.to_string(), right: right.to_string(), pass });
        pass
    }

    /// Compares two lists of groups degree by degree.
    pub(crate) fn compare_groups(&mut self, label: &str, left: &[FPAbelianGroup], right: &[FPAbelianGroup]) -> bool {
        let mut all = true;
        for (k, (a, b)) in left.iter().zip(right).enumerate() {
            all &= self.compare(k, label, a, b, a == b);
        }
        all
    }

    /// A stage passing iff the cone of `f` is acyclic through `d`.
    pub(crate) fn cone(&mut self, name: &str, f: &ChainMap, src: &ChainComplex, tgt: &ChainComplex, d: usize) -> bool {
        match self.attempt(name, is_homology_iso(f, src, tgt, d)) {
            Some(ok) => self.stage(name, ok, format!("checked through degree {d}")),
            None => false,
        }
    }

    pub(crate) fn fact(&mut self, name: impl Into<String>, value: impl Display) {
        self.report.facts.push(Fact { name: name.into(), value: value.to_string() });
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.report.notes.push(note.into());
    }

    pub(crate) fn untrusted(&mut self, why: impl Into<String>) {
        self.untrusted = true;
        self.report.notes.push(why.into());
    }

    pub(crate) fn seed(&mut self, seed: u64) {
        self.report.seed = Some(seed);
    }

    pub(crate) fn finish(mut self) -> CheckReport {
        let r = &self.report;
        let failed = r.stages.iter().any(|i| !i.pass) || r.comparisons.iter().any(|c| !c.pass);
        self.report.verdict = if r.hypotheses.iter().any(|i| !i.pass) {
            Verdict::HypothesesNotMet
        } else if failed {
            Verdict::Fail
        } else if self.untrusted {
            Verdict::UntrustedAtCutoff
        } else {
            Verdict::Pass
        };
        self.report
    }
}

/// `H_0 … H_d` as bare groups.
pub(crate) fn groups(c: &ChainComplex, d: usize) -> Result<Vec<FPAbelianGroup>> {
    Ok(c.homology_through(d)?.into_iter().map(|h| h.group).collect())
}

/// Homology of a point in degrees `0..=d`.
pub(crate) fn point_groups(d: usize) -> Vec<FPAbelianGroup> {
    (0..=d).map(|k| if k == 0 { FPAbelianGroup::free(1) } else { FPAbelianGroup::trivial() }).collect()
}

pub(crate) fn list(gs: &[FPAbelianGroup]) -> String {
    format!("({})", gs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

/// Identifiers of the checks, as used on the command line.
pub const CHECK_IDS: &[&str] = &[
    "adj-units",
    "adj-units-random",
    "fat-thin",
    "ez-diagonal",
    "ez-random",
    "products",
    "krannich",
    "terminal-contractible",
    "quillen-a",
    "resolution-triangle",
    "nat-trans",
    "bar-acyclic",
    "group-completion",
    "skeletal",
    "segal-nerve",
    "constant",
];
