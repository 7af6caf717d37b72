//! The `surgeon` command line.
//!
//! Every subcommand prints plain text by default and a JSON document with a
//! `schema` field under `--json`. Exit codes: 0 on success, 1 on a domain
//! error, 2 on a usage error.

pub mod cache;
mod commands;
pub mod verify;

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use cache::Cache;

#[derive(Debug, Parser)]
#[command(name = "surgeon", version, about = "Exact Dehn-surgery calculus for annulus-twist knot families")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cache directory (overrides SURGEON_CACHE_DIR and the platform default).
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Compute everything afresh and store nothing.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a PD code and print its summary.
    Parse {
        /// PD file, or `-` for standard input.
        file: PathBuf,
    },
    /// Pairwise linking numbers of a link.
    Lk(LinkSource),
    /// First homology of a surgery presentation.
    H1 {
        #[command(flatten)]
        link: LinkSource,
        /// Comma-separated slopes, `*` for unfilled and `1/0` for meridional.
        #[arg(long, allow_hyphen_values = true)]
        slopes: String,
    },
    /// Rolfsen twist on one component.
    Twist(TwistArgs),
    /// Same-surgery evidence for every pair of family members with fixed n.
    Family {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Inclusive range `a..b`.
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        m_range: RangeInclusive<i64>,
        /// Write the reports as a JSON array to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write `k_<n>_<m>.dt` for every member into this directory.
        #[arg(long)]
        dt_dir: Option<PathBuf>,
    },
    /// Induced surgery slope of k_n^m, or a grid of them.
    Slope {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "m_range")]
        m: Option<i64>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "n_range")]
        n: Option<i64>,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        m_range: Option<RangeInclusive<i64>>,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        n_range: Option<RangeInclusive<i64>>,
    },
    /// Reduce surgery on a cable to surgery on its companion.
    CableReduce {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        /// `a,b`: a longitudinal and b meridional windings.
        #[arg(long, allow_hyphen_values = true)]
        cable: String,
    },
    /// Alexander polynomial and determinant of a knot or of family members.
    Alex(AlexArgs),
    /// Write the stored link or family diagrams.
    Export(ExportArgs),
    /// Run the acceptance checks.
    Verify,
}

/// Where a link comes from: a PD file or the family link `L`.
#[derive(Debug, Args)]
pub struct LinkSource {
    /// PD file, or `-` for standard input.
    #[arg(long, conflicts_with = "asset", required_unless_present = "asset")]
    pub link: Option<PathBuf>,
    /// Use the validated family link L = k u l1 u l2 u l3.
    #[arg(long)]
    pub asset: bool,
}

#[derive(Debug, Args)]
pub struct TwistArgs {
    #[command(flatten)]
    pub link: LinkSource,
    #[arg(long, allow_hyphen_values = true)]
    pub slopes: String,
    /// Component to twist, by name or 0-based index.
    #[arg(long)]
    pub component: String,
    /// Number of full twists.
    #[arg(long, allow_hyphen_values = true)]
    pub t: i64,
    /// Strands through the component's disk, e.g. `3+,7-` (edge label and
    /// crossing direction). Without it the diagram is dropped.
    #[arg(long)]
    pub region: Option<String>,
    /// Record the twisted component as unknotted (trusted, not checked).
    #[arg(long)]
    pub assume_unknotted: bool,
}

#[derive(Debug, Args)]
pub struct AlexArgs {
    /// Knot PD file, or `-` for standard input.
    #[arg(long, conflicts_with_all = ["m", "n", "m_range", "n_range"])]
    pub link: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, requires = "n", conflicts_with = "m_range")]
    pub m: Option<i64>,
    #[arg(long, allow_hyphen_values = true, requires = "m", conflicts_with = "n_range")]
    pub n: Option<i64>,
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true, requires = "n_range")]
    pub m_range: Option<RangeInclusive<i64>>,
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true, requires = "m_range")]
    pub n_range: Option<RangeInclusive<i64>>,
    /// Write the sweep table as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Write the PD transcription of L.
    #[arg(long, conflicts_with_all = ["m", "n", "m_range", "n_range"])]
    pub asset: bool,
    #[arg(long, allow_hyphen_values = true, requires = "n")]
    pub m: Option<i64>,
    #[arg(long, allow_hyphen_values = true, requires = "m")]
    pub n: Option<i64>,
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true, requires = "n_range", conflicts_with = "m")]
    pub m_range: Option<RangeInclusive<i64>>,
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true, requires = "m_range", conflicts_with = "n")]
    pub n_range: Option<RangeInclusive<i64>>,
    #[arg(long, value_enum, default_value_t = Format::Dt)]
    pub format: Format,
    /// Output file (single item) or directory (`k_<n>_<m>.<ext>` per member).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Dt,
    Pd,
    Json,
}

/// Parses an inclusive range `a..b` (also accepted: `a..=b`, or a single
/// integer).
pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let bad = || format!("expected a range like 0..5, got {s:?}");
    let Some((a, b)) = s.split_once("..") else {
        let v: i64 = s.trim().parse().map_err(|_| bad())?;
        return Ok(v..=v);
    };
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

/// Failure of a subcommand.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// What a subcommand produced.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    /// Nonzero when the command ran but found a failure (used by `verify`).
    pub code: i32,
}

/// Runs the command line with the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line, writing results to `out` and diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut cache =
        if cli.no_cache { Cache::disabled() } else { Cache::new(cache::resolve_dir(cli.cache_dir.as_deref())) };
    let result = commands::execute(&cli.command, &mut cache);
    for w in &cache.warnings {
        let _ = writeln!(err, "warning: {w}; continuing without the cache");
    }
    match result {
        Ok(o) => {
            let written = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("JSON output serializes"))
            } else {
                write!(out, "{}", o.text)
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: writing output: {e}");
                return 1;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
