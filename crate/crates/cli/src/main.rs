//! `omega-cert`: verification suites, point classification, cube censuses,
//! surface sampling and flow simulation from the command line.

mod cache;
mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use omega_core::verify::{Suite, DEFAULT_SEED};

use crate::report::{CliError, EXIT_USAGE};

#[derive(Parser, Debug)]
#[command(name = "omega-cert", version, about = "Exact certification of the surface Q = 0 in (0,1/2)^3")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Directory that receives the JSON report and CSV artifacts.
    #[arg(long, global = true)]
    pub output_dir: Option<PathBuf>,
    /// Seed for randomized sampling in verification suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Census grid size n (census, classify) or ray grid size m (omega-graph).
    #[arg(long, global = true)]
    pub resolution: Option<usize>,
    /// Convergence tolerance (simulate) or degeneracy threshold (scan).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Format of the report printed on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Census cache file. Defaults to $OMEGA_CERT_CACHE or a file in the
    /// system temp directory.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteArg {
    #[value(alias = "lemma1")]
    Discriminant,
    #[value(alias = "lemma2")]
    Diagonal,
    #[value(alias = "lemma3")]
    RootCounts,
    #[value(alias = "lemma4")]
    Edge,
    Identities,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Discriminant => Suite::Discriminant,
            SuiteArg::Diagonal => Suite::Diagonal,
            SuiteArg::RootCounts => Suite::RootCounts,
            SuiteArg::Edge => Suite::Edge,
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    /// `lo..hi`: the symmetric parameters `(a, a, a)`.
    Diagonal,
    /// `a1,a2,a3..b1,b2,b3`: a straight segment.
    Segment,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run exact verification suites.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Sign of Q and complement component of a point given as p/q strings.
    Classify { a1: String, a2: String, a3: String },
    /// Count the components of the cube minus the surface on an n^3 grid.
    Census { n: Option<usize> },
    /// Sample the surface along rays and check the proximity graph.
    OmegaGraph { m: Option<usize> },
    /// Integrate the flow with RK4.
    Simulate {
        /// Parameters a1 a2 a3 as p/q strings.
        #[arg(long, num_args = 3, value_names = ["A1", "A2", "A3"], required = true)]
        params: Vec<String>,
        /// Initial state x1 x2 x3 as p/q strings.
        #[arg(long, num_args = 3, value_names = ["X1", "X2", "X3"], default_values = ["1", "1", "1"])]
        x0: Vec<String>,
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
    },
    /// Continue equilibria along a parameter path and track degeneracy.
    Scan {
        #[arg(value_enum)]
        kind: PathKind,
        /// `lo..hi` for a diagonal, `a1,a2,a3..b1,b2,b3` for a segment.
        range: String,
        #[arg(default_value_t = 61)]
        steps: usize,
        /// Starting guess for the first equilibrium, as p/q strings.
        #[arg(long, num_args = 3, value_names = ["X1", "X2", "X3"], default_values = ["1", "1", "1"])]
        guess: Vec<String>,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("OMEGA_CERT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("OMEGA_CERT_THREADS must be a positive integer, got {raw:?}")))?;
    // Fails only if a pool already exists, which cannot happen this early.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn run(cli: Cli) -> Result<report::Outcome, CliError> {
    configure_threads()?;
    let g = &cli.global;
    match cli.command {
        Command::Verify { suite } => commands::verify(g, suite.into()),
        Command::Classify { a1, a2, a3 } => commands::classify(g, [&a1, &a2, &a3]),
        Command::Census { n } => commands::census(g, n),
        Command::OmegaGraph { m } => commands::omega_graph(g, m),
        Command::Simulate { params, x0, dt, steps } => commands::simulate(g, &params, &x0, dt, steps),
        Command::Scan { kind, range, steps, guess } => commands::scan(g, kind, &range, steps, &guess),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let global = cli.global.clone();
    let start = std::time::Instant::now();
    match run(cli).and_then(|out| report::emit(&global, out)) {
        Ok(report) => {
            eprintln!("{}: {} ({:.2?})", report.command, report.verdict, start.elapsed());
            ExitCode::from(report.verdict.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
