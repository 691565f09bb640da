//! Command-line front end: Bernoulli and Genocchi tables, grid verification
//! and the Bernoulli cache.
//!
//! Exit codes: 0 success, 1 verification or integrality failure, 2 usage or
//! configuration error (including a corrupt cache).

pub mod cache;
pub mod output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use genocchi_core::{gen_genocchi_numbers, GenocchiValue, TheoremId, Verifier};
use thiserror::Error;

use crate::cache::CacheError;
use crate::output::Format;

pub const ENV_CACHE_PATH: &str = "GENOCCHI_CACHE";

#[derive(Debug, Parser)]
#[command(name = "genocchi", version, about = "Exact Genocchi and Bernoulli numbers")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output encoding.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Bernoulli cache file.
    #[arg(long, env = ENV_CACHE_PATH, global = true)]
    pub cache_path: Option<PathBuf>,
    /// Worker threads for grid verification (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print B_0..=B_N.
    Bernoulli {
        #[arg(long, default_value_t = 20)]
        n_max: usize,
    },
    /// Print G_{0,a}..=G_{N,a}.
    Genocchi {
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        a: u64,
        /// Series truncation order (default: n-max).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Check theorems over 1 <= n <= n-max, 2 <= a <= a-max.
    Verify {
        /// Theorem id (e.g. theorem1, gcd-corollary) or `all`.
        #[arg(default_value = "all")]
        theorem: String,
        #[arg(long, default_value_t = 200)]
        n_max: usize,
        #[arg(long, default_value_t = 20)]
        a_max: u64,
        /// Series truncation order (default: n-max).
        #[arg(long)]
        order: Option<usize>,
        /// Harness self-test: perturb G_{n,a} (default: the grid corner).
        #[arg(long, hide = true, value_name = "N:A", num_args = 0..=1, default_missing_value = "")]
        mutate: Option<String>,
    },
    /// Build or extend the Bernoulli cache up to N and report its size.
    Cache {
        #[arg(long, default_value_t = 500)]
        n_max: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error(transparent)]
    Core(#[from] genocchi_core::Error),
    #[error("output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(genocchi_core::Error::NonIntegral { .. }) => 1,
            _ => 2,
        }
    }
}

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

impl From<Outcome> for ExitCode {
    fn from(o: Outcome) -> ExitCode {
        match o {
            Outcome::Success => ExitCode::SUCCESS,
            Outcome::VerificationFailed => ExitCode::from(1),
        }
    }
}

fn parse_theorems(s: &str) -> Result<Vec<TheoremId>, CliError> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(TheoremId::ALL.to_vec());
    }
    s.split(',')
        .map(|t| t.parse().map_err(CliError::Config))
        .collect()
}

fn parse_mutation(s: &str, n_max: usize, a_max: u64) -> Result<(usize, u64), CliError> {
    if s.is_empty() {
        return Ok((n_max, a_max));
    }
    let bad = || CliError::Config(format!("--mutate expects N:A, got `{s}`"));
    let (n, a) = s.split_once(':').ok_or_else(bad)?;
    Ok((n.parse().map_err(|_| bad())?, a.parse().map_err(|_| bad())?))
}

fn resolve_order(order: Option<usize>, n_max: usize) -> Result<usize, CliError> {
    match order {
        None => Ok(n_max),
        Some(o) if o >= n_max => Ok(o),
        Some(o) => Err(CliError::Config(format!(
            "--order {o} is below --n-max {n_max}; series are never extended implicitly"
        ))),
    }
}

/// Runs a parsed command, writing data to `out` and diagnostics to `err`.
pub fn run<W: Write, E: Write>(cli: &Cli, out: W, mut err: E) -> Result<Outcome, CliError> {
    let format = cli.global.format;
    let cache_path = cli.global.cache_path.as_deref();
    match &cli.command {
        Command::Bernoulli { n_max } => {
            let table = cache::bernoulli_table(cache_path, *n_max)?;
            output::write_bernoulli(out, &output::bernoulli_doc(&table), format)?;
            Ok(Outcome::Success)
        }
        Command::Genocchi { n_max, a, order } => {
            if *a < 2 {
                return Err(CliError::Config(format!("--a must be at least 2, got {a}")));
            }
            let order = resolve_order(*order, *n_max)?;
            let values: Vec<GenocchiValue> = gen_genocchi_numbers(order, *a)?
                .into_iter()
                .take(n_max + 1)
                .enumerate()
                .map(|(n, value)| GenocchiValue { n, a: *a, value })
                .collect();
            output::write_genocchi(out, &output::genocchi_doc(*a, &values), format)?;
            Ok(Outcome::Success)
        }
        Command::Verify {
            theorem,
            n_max,
            a_max,
            order,
            mutate,
        } => {
            if *n_max < 1 {
                return Err(CliError::Config("--n-max must be at least 1".into()));
            }
            if *a_max < 2 {
                return Err(CliError::Config("--a-max must be at least 2".into()));
            }
            let theorems = parse_theorems(theorem)?;
            let order = resolve_order(*order, *n_max)?;
            let mutation = mutate
                .as_deref()
                .map(|m| parse_mutation(m, *n_max, *a_max))
                .transpose()?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cli.global.jobs.unwrap_or(0))
                .build()
                .map_err(|e| CliError::Config(e.to_string()))?;
            if let Some((n, a)) = mutation {
                writeln!(err, "mutation mode: G({n},{a}) perturbed by +1")?;
            }
            let reports = pool.install(|| -> Result<_, CliError> {
                let mut verifier = match cache_path {
                    Some(_) => {
                        let table = cache::bernoulli_table(cache_path, order)?;
                        Verifier::with_bernoulli(order, *a_max, &table)?
                    }
                    None => Verifier::new(order, *a_max)?,
                };
                if let Some((n, a)) = mutation {
                    verifier = verifier.with_mutation(n, a);
                }
                theorems
                    .iter()
                    .map(|&id| Ok(verifier.run_grid(id, 1..=*n_max, 2..=*a_max)?))
                    .collect::<Result<Vec<_>, CliError>>()
            })?;
            for r in &reports {
                for note in &r.adjustments {
                    writeln!(err, "note {}: {note}", r.theorem_id)?;
                }
                for f in &r.failures {
                    writeln!(
                        err,
                        "FAIL ({}, n={}, a={}, observed={}, expected={})",
                        r.theorem_id, f.n, f.a, f.observed, f.expected
                    )?;
                }
            }
            let passed = reports.iter().all(|r| r.passed());
            output::write_verify(out, &output::VerifyDoc { passed, reports }, format)?;
            Ok(if passed {
                Outcome::Success
            } else {
                Outcome::VerificationFailed
            })
        }
        Command::Cache { n_max } => {
            let Some(path) = cache_path else {
                return Err(CliError::Config(format!(
                    "no cache path: pass --cache-path or set {ENV_CACHE_PATH}"
                )));
            };
            let table = cache::bernoulli_table(Some(path), *n_max)?;
            writeln!(err, "cache {} holds B_0..=B_{}", path.display(), table.max_index())?;
            Ok(Outcome::Success)
        }
    }
}
