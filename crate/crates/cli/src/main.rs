//! `kappa`: build, inspect and verify the transition matrices of the
//! monodromy family, and export bound sweeps.
//!
//! Exit status: 0 on success, 1 when `verify` finds a failing check, 2 on a
//! usage error (bad flags, genus out of range, unwritable output).

mod commands;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kappa_core::conventions::Choice;
use kappa_core::{Orientation, RotationDirection};

pub const MAX_GENUS: u64 = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "kappa", version, about = "Transition matrices, dilatations and kappa bounds for a pseudo-Anosov family")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Genus or inclusive range, e.g. `9` or `5..40`.
    #[arg(long, global = true)]
    pub genus: Option<GenusRange>,
    /// Width of Perron root enclosures.
    #[arg(long, global = true, default_value = "1e-10")]
    pub tol: f64,
    /// Edge orientation for digraph path counts: auto, columns or rows.
    #[arg(long, global = true, default_value = "auto")]
    pub orientation: ConventionArg,
    /// Rotation direction: auto, plus or minus.
    #[arg(long, global = true, default_value = "auto")]
    pub rotation: ConventionArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Transition matrix of the monodromy (column u holds the image of u).
    Matrix,
    /// Exact characteristic polynomial, compared with the closed form.
    Charpoly,
    /// Certified Perron root, Perron vector and root moduli.
    Spectrum,
    /// Digraph of the transition matrix (edge list in text format).
    Digraph,
    /// Primitivity exponent and exact-length reachability from a1.
    Mixing,
    /// Closed-form bounds (genus >= 2).
    Bounds,
    /// One row per genus with the spectral data and every bound.
    Sweep {
        /// Use the closed-form dilatation bound above this genus.
        #[arg(long, default_value_t = 300)]
        exact_limit: u64,
    },
    /// Run the acceptance checks (the stated ranges when --genus is absent).
    Verify {
        /// Compare against a deliberately wrong closed form.
        #[arg(long, hide = true)]
        corrupt_expected: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenusRange {
    pub lo: u64,
    pub hi: u64,
}

impl GenusRange {
    pub fn genera(&self) -> Vec<u64> {
        (self.lo..=self.hi).collect()
    }
}

impl FromStr for GenusRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad genus {t:?}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let g = parse(s)?;
                (g, g)
            }
        };
        if lo > hi {
            return Err(format!("empty genus range {lo}..{hi}"));
        }
        if lo < 2 || hi > MAX_GENUS {
            return Err(format!("genus must lie in [2, {MAX_GENUS}]"));
        }
        Ok(GenusRange { lo, hi })
    }
}

/// Raw `auto|...` value, interpreted per flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConventionArg(pub String);

impl FromStr for ConventionArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(ConventionArg(s.to_ascii_lowercase()))
    }
}

impl ConventionArg {
    pub fn rotation(&self) -> Result<Choice<RotationDirection>, UsageError> {
        self.0.parse().map_err(|e: kappa_core::Error| UsageError(e.to_string()))
    }

    pub fn orientation(&self) -> Result<Choice<Orientation>, UsageError> {
        self.0.parse().map_err(|e: kappa_core::Error| UsageError(e.to_string()))
    }
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Outcome of a command that ran to completion.
pub enum Outcome {
    Ok,
    ChecksFailed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
