//! Library side of the `kmfaces` binary: argument handling, the commands and
//! the acceptance battery behind `selftest`.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub mod bundled;
pub mod commands;
pub mod config;
pub mod input;
pub mod selftest;

pub use commands::{Outcome, Report};
pub use config::{Format, RunConfig};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config, input files or arguments.
    Usage(String),
    Core(kmfaces::Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use kmfaces::Error as E;
        match self {
            CliError::Usage(_) => 3,
            CliError::Core(
                E::NotAGcm { .. }
                | E::NotSymmetrizable(..)
                | E::BadIndex { .. }
                | E::Parse(_)
                | E::RealizationMismatch { .. }
                | E::NotDominant(_)
                | E::NotIntegral(_)
                | E::NotMinimalRep(_)
                | E::LengthMismatch { .. }
                | E::NotFiniteType
                | E::UnsupportedType(_),
            ) => 3,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "error: {e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<kmfaces::Error> for CliError {
    fn from(e: kmfaces::Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "kmfaces", version, about = "Faces of the tensor cone of a symmetrizable Kac-Moody algebra")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Opts {
    /// JSON config file; flags override its fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// GCM file, or a bundled name (a1, a2, b2, g2, affine_a1, hyperbolic).
    #[arg(long, global = true)]
    pub gcm: Option<String>,
    /// Δ(P) as "i,j,...", "maximal:j" or "borel".
    #[arg(long, global = true)]
    pub levi: Option<String>,
    #[arg(long, global = true)]
    pub max_length: Option<usize>,
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    #[arg(long, global = true)]
    pub nmax: Option<u64>,
    #[arg(long, global = true)]
    pub height: Option<usize>,
    /// Cap on membership tests per face search.
    #[arg(long, global = true)]
    pub max_tests: Option<usize>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory of golden files for selftest.
    #[arg(long, global = true)]
    pub golden: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Realization summary: type, dim h, dim E, ρ and the coweights x_i.
    Algebra,
    /// Inequalities from deformed coefficients equal to one.
    Inequalities,
    /// Lattice condition, inequality screen and bounded tensor search.
    Member {
        /// Comma-separated coordinates; rationals as p/q.
        lambda1: String,
        lambda2: String,
        mu: String,
    },
    /// Face report for a triple of words such as "s0s1", "0,1" or "e".
    Face { w1: String, w2: String, v: String },
    /// Exact LP certificate for every inequality (finite type).
    Irredundant,
    /// Acceptance battery and golden-file comparison.
    Selftest,
}

impl Opts {
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        let (format_given, seed_given) = (self.format.is_some(), self.seed.is_some());
        let flags = RunConfig {
            gcm: self.gcm,
            levi: self.levi,
            max_length: self.max_length,
            depth: self.depth,
            nmax: self.nmax,
            height: self.height,
            max_tests: self.max_tests,
            out: self.out,
            format: self.format.unwrap_or_default(),
            seed: self.seed.unwrap_or_default(),
            golden: self.golden,
        };
        let cfg = base.overlay(flags, format_given, seed_given);
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Runs one invocation and returns its exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(cli) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<Outcome, CliError> {
    let cfg = cli.opts.into_config()?;
    let report = match cli.command {
        Command::Selftest => selftest::run(&cfg)?,
        cmd => {
            let ctx = commands::Context::load(&cfg)?;
            match cmd {
                Command::Algebra => commands::algebra(&ctx),
                Command::Inequalities => commands::inequalities(&ctx)?,
                Command::Member { lambda1, lambda2, mu } => commands::member(&ctx, [&lambda1, &lambda2, &mu])?,
                Command::Face { w1, w2, v } => commands::face(&ctx, [&w1, &w2, &v])?,
                Command::Irredundant => commands::irredundant(&ctx)?,
                Command::Selftest => unreachable!(),
            }
        }
    };
    let text = report.render(cfg.format);
    match &cfg.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(report.outcome)
}
