//! `boostlab` command-line interface.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use boostlab::rational::{self, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};

const LONG_VERSION: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    "\ncommit:  ",
    env!("BOOSTLAB_COMMIT"),
    "\ntarget:  ",
    env!("BOOSTLAB_TARGET"),
    "\nprofile: ",
    env!("BOOSTLAB_PROFILE"),
);

/// Graph separation boosting, exact γ-realizability and weak-learning checks.
///
/// Rationals are written `p/q`. Set BOOSTLAB_THREADS to cap worker threads.
#[derive(Debug, Parser)]
#[command(name = "boostlab", version, long_version = LONG_VERSION, propagate_version = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit Graph Separation Boosting and write the model as JSON.
    Boost(BoostArgs),
    /// Fit the AdaBoost baseline and write the model as JSON.
    Adaboost(AdaboostArgs),
    /// Label points with a saved model.
    Predict(PredictArgs),
    /// Decide γ-realizability of a sample exactly.
    Check(CheckArgs),
    /// γ-shattering checks, γ-VC estimates and the Hadamard construction.
    #[command(name = "gamma-vc")]
    GammaVc(GammaVcArgs),
    /// Minimum-discrepancy coloring of a set system.
    Disc(DiscArgs),
    /// Run an experiment suite from a JSON config.
    Bench(BenchArgs),
    /// Render SVG plots from a suite CSV.
    Plot(PlotArgs),
    /// Run the fast randomized invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct ClassArgs {
    /// Base class: thresholds, stumps<d>, halfspaces<d> or finite.
    #[arg(long)]
    pub class: String,
    /// Pattern CSV for `--class finite`; points are then domain indices.
    #[arg(long)]
    pub finite_class: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    FullErm,
    Sampled,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum UnseenArg {
    Negative,
    Hamming,
}

#[derive(Debug, Args)]
pub struct BoostArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    /// Training CSV: header, coordinate columns, then a ±1 label column.
    #[arg(long)]
    pub data: PathBuf,
    /// Where to write the model.
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long, value_enum, default_value = "full-erm")]
    pub mode: ModeArg,
    /// Sample size per round in sampled mode; defaults to ⌈32(v+1)/γ²⌉.
    #[arg(long)]
    pub m0: Option<usize>,
    /// Edge used for the defaults of m0 and the round budget; γ* otherwise.
    #[arg(long, value_parser = parse_gamma)]
    pub gamma: Option<Rational>,
    #[arg(long)]
    pub max_rounds: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Rule for signatures not seen in training.
    #[arg(long, value_enum, default_value = "negative")]
    pub unseen: UnseenArg,
    /// External weak learner executable; reads a weighted CSV on stdin and
    /// prints a hypothesis as JSON.
    #[arg(long)]
    pub learner: Option<PathBuf>,
    /// Argument passed to the external learner (repeatable).
    #[arg(long = "learner-arg", allow_hyphen_values = true)]
    pub learner_args: Vec<String>,
    /// Seconds allowed per external learner call.
    #[arg(long, default_value_t = 30)]
    pub learner_timeout: u64,
    /// Optional per-round CSV trace.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AdaboostArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub model: PathBuf,
    /// Round budget; fitting stops early at zero training error.
    #[arg(long, default_value_t = 1000)]
    pub rounds: usize,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Point CSV: header and coordinate columns.
    #[arg(long)]
    pub points: PathBuf,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    #[arg(long)]
    pub data: PathBuf,
    /// Edge to test, as an exact rational `p/q`.
    #[arg(long, value_parser = parse_gamma)]
    pub gamma: Rational,
    /// Write the certificate as JSON.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GammaVcArgs {
    #[command(subcommand)]
    pub command: GammaVcCommand,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Layout {
    Line,
    Grid,
}

#[derive(Debug, Subcommand)]
pub enum GammaVcCommand {
    /// Check that every labeling of a point set is γ-realizable.
    Shatter {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        points: PathBuf,
        #[arg(long, value_parser = parse_gamma)]
        gamma: Rational,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Largest γ-shattered size along a family of point sets.
    Estimate {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_parser = parse_gamma)]
        gamma: Rational,
        #[arg(long, value_enum, default_value = "line")]
        layout: Layout,
        /// Maximum number of LP solves.
        #[arg(long, default_value_t = 1 << 14)]
        budget: u64,
    },
    /// Hadamard construction: game value of t sign rows and realizability
    /// of the s·t-point witness.
    Hadamard {
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
    },
}

#[derive(Debug, Args)]
pub struct DiscArgs {
    /// Set-system file: optional `n=<size>` line, then one set per line.
    #[arg(long, conflicts_with_all = ["class", "points"])]
    pub sets: Option<PathBuf>,
    /// Build the system from the positive supports of a class on points.
    #[arg(long, requires = "points")]
    pub class: Option<String>,
    #[arg(long, requires = "class")]
    pub points: Option<PathBuf>,
    /// Enumerate every coloring instead of branch and bound.
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Experiment config (JSON).
    #[arg(long, required_unless_present = "probe")]
    pub config: Option<PathBuf>,
    /// Output CSV; overrides the config's `output`.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also print a Markdown comparison table.
    #[arg(long)]
    pub table: bool,
    /// Run the halfspace grid probe for these side lengths instead.
    #[arg(long, value_delimiter = ',', conflicts_with = "config")]
    pub probe: Vec<usize>,
    /// Random labelings per grid too large for exhaustive search.
    #[arg(long, default_value_t = 256)]
    pub probe_samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Run cells one at a time.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Suite CSV written by `bench`.
    #[arg(long)]
    pub csv: PathBuf,
    /// Directory for `rounds_vs_m.svg` and `rounds_vs_inv_gamma.svg`.
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

fn parse_gamma(s: &str) -> Result<Rational, String> {
    let g = rational::parse_exact(s).map_err(|_| format!("{s:?} is not an exact rational; write it as p/q"))?;
    if g <= Rational::default() || g > rational::int(1) {
        return Err(format!("{s} is outside (0, 1]"));
    }
    Ok(g)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    boostlab::par::init_from_env();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
