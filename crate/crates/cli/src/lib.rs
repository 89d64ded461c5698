//! The `sset` command line: fixture I/O, constructions and checks.
//!
//! Every command writes one JSON document to standard output and a short
//! table to standard error. Exit codes: `0` success, `1` a check did not
//! pass, `2` bad usage or a malformed document.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

mod commands;

/// Result of one command before it is printed.
pub struct Outcome {
    pub code: i32,
    pub json: Value,
    pub table: String,
}

impl Outcome {
    fn ok(json: Value, table: String) -> Self {
        Self { code: 0, json, table }
    }
}

/// A failure that ends the command with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<semisimplicial::Error> for UsageError {
    fn from(e: semisimplicial::Error) -> Self {
        UsageError(e.to_string())
    }
}

pub(crate) type CmdResult = Result<Outcome, UsageError>;

#[derive(Parser, Debug)]
#[command(name = "sset", version, about = "Finite semi-simplicial sets, nerves and exact homology")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Add wall-clock time to the report (outside the deterministic body).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load a fixture and run its validator.
    Validate { file: PathBuf },
    /// Homology of an sset, simplicial set, bisset (total complex), category or monoid (nerve), or the Smith form of a matrix.
    Homology {
        file: PathBuf,
        /// Coefficients: z, q or f<p>.
        #[arg(long, default_value = "z")]
        coeff: String,
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Euler characteristic from simplex counts, checked against Betti numbers.
    Euler {
        file: PathBuf,
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// The n-skeleton of a semi-simplicial set.
    Skeleton {
        file: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// The nerve of a category or monoid through the cutoff.
    Nerve {
        file: PathBuf,
        #[arg(long)]
        cutoff: Option<usize>,
        /// Emit the simplicial nerve (needs units).
        #[arg(long)]
        simplicial: bool,
    },
    /// Freely adjoin identities.
    Unitalize { file: PathBuf },
    /// The category over (or under) an object, or the comma category of a functor over an object.
    Over {
        file: PathBuf,
        #[arg(long)]
        object: usize,
        #[arg(long)]
        under: bool,
    },
    /// The two-sided bar construction B(Y, M, X), by default B(*, M, M).
    Bar {
        file: PathBuf,
        #[arg(long)]
        cutoff: Option<usize>,
        /// Right action for Y (an action document).
        #[arg(long)]
        right: Option<PathBuf>,
        /// Left action for X (an action document).
        #[arg(long)]
        left: Option<PathBuf>,
    },
    /// The comma resolution of a functor as a bi-semi-simplicial set.
    Resolve {
        file: PathBuf,
        #[arg(long)]
        cutoff: Option<usize>,
        /// Use the resolution by the categories under each object.
        #[arg(long)]
        dual: bool,
    },
    /// Spectral sequence of a bisset or of a functor's comma resolution.
    Specseq {
        file: PathBuf,
        #[arg(long, default_value = "z")]
        coeff: String,
        #[arg(long)]
        cutoff: Option<usize>,
        /// columns or rows.
        #[arg(long, default_value = "columns")]
        orientation: String,
        #[arg(long, default_value_t = 8)]
        max_page: usize,
        /// Include representatives and differential matrices.
        #[arg(long)]
        bases: bool,
    },
    /// Grothendieck group, its group ring, and H(BM) for a monoid table.
    GroupComplete {
        file: PathBuf,
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// Run one theorem check.
    Check {
        id: String,
        files: Vec<PathBuf>,
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random instances.
        #[arg(long)]
        count: Option<usize>,
        /// Skeleton dimension for `skeletal`.
        #[arg(long)]
        n: Option<usize>,
        /// Set size for `constant`.
        #[arg(long)]
        size: Option<usize>,
    },
    /// Run the command lines of a file, one per line.
    Batch {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let o = execute(&cli);
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("values serialize"));
    let _ = write!(err, "{}", o.table);
    o.code
}

/// Runs a parsed command; usage errors become an `{"error": …}` document.
pub fn execute(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let mut o = match commands::dispatch(&cli.command) {
        Ok(o) => o,
        Err(UsageError(msg)) => Outcome { code: 2, json: json!({ "error": msg }), table: format!("error: {msg}\n") },
    };
    if cli.timing {
        if let Value::Object(m) = &mut o.json {
            m.insert("timing_ms".into(), json!(start.elapsed().as_millis() as u64));
        }
    }
    o
}
