//! Command-line front end for `turan-core`.

pub mod dsl;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use turan_core::constructions::{construct, MiddleVariant};
use turan_core::embedding::{count_copies_with, first_violation};
use turan_core::formulas::{closed_formula, formula_sweep};
use turan_core::lattice::format::{
    parse_family_json, parse_family_text, write_family_json, write_family_text,
};
use turan_core::lattice::mask_label;
use turan_core::proofcheck::{verify_lemma, Lemma, LemmaReport};
use turan_core::search::{la_exact, la_exact_cached, la_levels, ResultCache, SearchOptions, SearchReport};
use turan_core::{Exec, SetFamily};

pub use dsl::{parse_poset_dsl, parse_single_poset, DslError};

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status when a verification run finds failures.
pub const EXIT_VERIFY_FAILED: i32 = 1;
/// Exit status for usage and input errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("poset specification: {0}")]
    Dsl(#[from] DslError),
    #[error(transparent)]
    Core(#[from] turan_core::Error),
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("writing output: {0}")]
    Write(#[from] io::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser, Debug)]
#[command(name = "turan", version, about = "Generalized Turán problems in the Boolean lattice")]
pub struct Cli {
    /// Human-readable tables instead of machine output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print an extremal construction as a family file.
    Construct {
        /// middle, nfree, p5 or p6.
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "low")]
        variant: MiddleVariant,
        #[arg(long, value_enum, default_value = "text")]
        format: FamilyFormat,
    },
    /// Count copies of Q in a family.
    Count {
        /// Family file (text or JSON); `-` reads stdin.
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        q: String,
    },
    /// Decide whether a family avoids every forbidden poset.
    Free {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        forbid: String,
    },
    /// Exact La(n, forbidden, #Q) by search.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        forbid: String,
        #[arg(long)]
        q: String,
        /// Node budget; the report is marked incomplete if it runs out.
        #[arg(long)]
        budget: Option<u64>,
        /// Neither read nor write the result cache.
        #[arg(long)]
        no_cache: bool,
        /// Disable the copy-count bound (testing).
        #[arg(long)]
        no_bound: bool,
        /// Restrict the search to unions of whole levels.
        #[arg(long)]
        levels: bool,
    },
    /// Evaluate a closed-form count.
    Formula {
        id: String,
        #[arg(long, conflicts_with = "sweep", required_unless_present = "sweep")]
        n: Option<usize>,
        /// Inclusive range LO..HI; prints TSV.
        #[arg(long)]
        sweep: Option<String>,
        /// Extra parameters (a and b for sublattice, t for katona_nagy).
        #[arg(long = "param", num_args = 1)]
        params: Vec<usize>,
    },
    /// Run lemma verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        lemma: String,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

/// Counts that fit in u64 stay JSON numbers; larger ones become strings.
fn big_json<T>(v: &T) -> Value
where
    for<'a> u64: TryFrom<&'a T>,
    T: ToString,
{
    match u64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let read_err = |source| CliError::Read {
        path: path.to_path_buf(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(read_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(read_err)
    }
}

/// Reads a family file, JSON if it starts with `{`, text otherwise.
pub fn read_family(path: &Path) -> Result<SetFamily, CliError> {
    let text = read_input(path)?;
    Ok(if text.trim_start().starts_with('{') {
        parse_family_json(&text)?
    } else {
        parse_family_text(&text)?
    })
}

fn parse_sweep(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("--sweep expects LO..HI, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn write_json(out: &mut dyn Write, v: &impl serde::Serialize) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, v).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn print_search(out: &mut dyn Write, r: &SearchReport, n: usize, pretty: bool) -> Result<(), CliError> {
    if !pretty {
        return write_json(out, r);
    }
    writeln!(out, "n          {}", r.n)?;
    writeln!(out, "forbidden  {}", r.forbidden.join(" | "))?;
    writeln!(out, "q          {}", r.q)?;
    writeln!(out, "optimum    {}", r.optimum)?;
    writeln!(out, "complete   {}", r.complete)?;
    writeln!(out, "nodes      {}", r.nodes_explored)?;
    for levels in &r.witness_levels {
        writeln!(out, "levels     {levels:?}")?;
    }
    for (i, w) in r.witnesses.iter().enumerate() {
        let sets: Vec<String> = w.iter().map(|&m| mask_label(n, m)).collect();
        writeln!(out, "witness {:<2} {}", i + 1, sets.join(" "))?;
    }
    Ok(())
}

fn print_reports(out: &mut dyn Write, reports: &[LemmaReport], pretty: bool) -> Result<(), CliError> {
    if !pretty {
        for r in reports {
            write_json(out, r)?;
        }
        return Ok(());
    }
    writeln!(out, "{:<18} {:>10} {:>9} {:>6}", "lemma", "instances", "failures", "seed")?;
    for r in reports {
        writeln!(
            out,
            "{:<18} {:>10} {:>9} {:>6}",
            r.lemma, r.instances_checked, r.failures, r.seed
        )?;
        if let Some(f) = &r.first_failure {
            writeln!(out, "  first failure: {f}")?;
        }
    }
    Ok(())
}

/// Runs a parsed command, writing results to `out`; returns the exit status.
pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let pretty = cli.pretty;
    match cli.command {
        Command::Construct {
            name,
            n,
            variant,
            format,
        } => {
            let fam = construct(&name, n, variant)?;
            match format {
                FamilyFormat::Text => write!(out, "{}", write_family_text(&fam))?,
                FamilyFormat::Json => writeln!(out, "{}", write_family_json(&fam))?,
            }
        }
        Command::Count { family, q } => {
            let fam = read_family(&family)?;
            let q = parse_single_poset(&q)?;
            let copies = count_copies_with(exec, &fam, &q);
            if pretty {
                writeln!(out, "copies of {} in family of {} sets: {copies}", q.to_dsl(), fam.len())?;
            } else {
                write_json(out, &json!({ "q": q.canonical_key(), "copies": big_json(&copies) }))?;
            }
        }
        Command::Free { family, forbid } => {
            let fam = read_family(&family)?;
            let forbidden = parse_poset_dsl(&forbid)?;
            let violation = first_violation(&fam, &forbidden);
            if pretty {
                match &violation {
                    None => writeln!(out, "free")?,
                    Some((i, w)) => {
                        let p = &forbidden.members()[*i];
                        writeln!(out, "not free: contains {}", p.to_dsl())?;
                        for (label, &m) in p.labels().iter().zip(&w.assignment) {
                            writeln!(out, "  {label} -> {}", mask_label(fam.n(), m))?;
                        }
                    }
                }
            } else {
                let witness = violation.map(|(i, w)| {
                    let p = &forbidden.members()[i];
                    json!({ "poset": p.to_dsl(), "assignment": w.assignment })
                });
                write_json(out, &json!({ "free": witness.is_none(), "witness": witness }))?;
            }
        }
        Command::Search {
            n,
            forbid,
            q,
            budget,
            no_cache,
            no_bound,
            levels,
        } => {
            let forbidden = parse_poset_dsl(&forbid)?;
            let q = parse_single_poset(&q)?;
            let report = if levels {
                la_levels(n, &forbidden, &q)?
            } else {
                let opts = SearchOptions {
                    budget,
                    no_bound,
                    exec,
                    ..SearchOptions::default()
                };
                if no_cache {
                    la_exact(n, &forbidden, &q, &opts)?
                } else {
                    let cache = ResultCache::from_env();
                    let (report, hit) = la_exact_cached(&cache, n, &forbidden, &q, &opts)?;
                    if hit {
                        writeln!(err, "cache hit: {}", cache.path().display())?;
                    }
                    report
                }
            };
            print_search(out, &report, n, pretty)?;
        }
        Command::Formula { id, n, sweep, params } => match (n, sweep) {
            (_, Some(range)) => {
                let (lo, hi) = parse_sweep(&range)?;
                write!(out, "{}", formula_sweep(&id, lo, hi, &params)?)?;
            }
            (Some(n), None) => {
                let v = closed_formula(&id, n, &params)?;
                if pretty {
                    writeln!(out, "{id}({n}) = {v}")?;
                } else {
                    writeln!(out, "{v}")?;
                }
            }
            (None, None) => return Err(CliError::Usage("formula needs --n or --sweep".into())),
        },
        Command::Verify { lemma, seed } => {
            let lemmas: Vec<Lemma> = if lemma == "all" {
                Lemma::ALL.to_vec()
            } else {
                vec![lemma.parse::<Lemma>()?]
            };
            let reports: Vec<LemmaReport> =
                lemmas.into_iter().map(|l| verify_lemma(l, seed, exec)).collect();
            print_reports(out, &reports, pretty)?;
            if reports.iter().any(|r| !r.passed()) {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs; usage and input
/// errors are reported on `err` with exit status 2.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(err, "{}", e.render());
            if !e.use_stderr() {
                let _ = write!(out, "{}", e.render());
            }
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
