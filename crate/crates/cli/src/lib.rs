//! `fischerlab` command-line front-end.
//!
//! [`run`] parses arguments, runs one subcommand and returns the process exit
//! code: 0 verified, 1 verification failure or computational error, 2 parse or
//! usage error, 3 undetermined.

mod commands;
mod report;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fischerlab::expr::validate_var_names;
use fischerlab::{Error, Field, ParseError, ProfileMode};

pub use report::{Outcome, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDETERMINED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fischerlab", version, about = "Exact Fischer operators and polynomial Dirichlet problems")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Comma-separated variable names; defines arity and order
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Coefficient field: q or qi
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<Field>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for boundary sampling
    #[arg(long, global = true, env = "FISCHERLAB_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = fischerlab::dirichlet::DEFAULT_TOL_ROOT)]
    tol_root: f64,
    #[arg(long, global = true, default_value_t = fischerlab::dirichlet::DEFAULT_TOL_BOUNDARY)]
    tol_boundary: f64,
    /// Write the report to FILE instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find f = psi*q + h with h harmonic
    Decompose {
        #[arg(long)]
        psi: String,
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 0)]
        slack: u32,
    },
    /// Per-degree surjectivity of q -> Laplacian(psi*q)
    RankProfile {
        #[arg(long)]
        psi: String,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, default_value_t = 0)]
        slack: u32,
        #[arg(long, default_value = "filtered", value_parser = parse_mode)]
        mode: ProfileMode,
    },
    /// Harmonic solution of the Dirichlet problem on a quadric domain
    Dirichlet {
        #[arg(long)]
        psi: String,
        #[arg(long)]
        f: String,
        /// A point with psi < 0, e.g. 0,0
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        interior: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Invertibility of q -> P(D)(P*q) on homogeneous slices
    FischerTheorem {
        #[arg(long)]
        p: String,
        #[arg(long)]
        max_degree: u32,
    },
    /// Rank profile of psi = (x3 - phi(x1 + i*x2))^2
    Khavinson {
        /// Coefficients a0,a1,...,an of phi
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        phi: Vec<String>,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, default_value_t = 4)]
        slack: u32,
    },
    /// Checks whether |x|^2 - h is a multiple of psi on an ellipsoid
    KsResidual {
        #[arg(long)]
        psi: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        interior: Vec<f64>,
    },
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse::<Field>().map_err(|e| e.to_string())
}

fn parse_mode(s: &str) -> Result<ProfileMode, String> {
    s.parse()
}

/// Resolved run configuration shared by all subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: Field,
    pub vars: Vec<String>,
    pub seed: u64,
    pub tol_root: f64,
    pub tol_boundary: f64,
    pub format: Format,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Compute(_) => EXIT_FAILURE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArity
            | Error::ArityMismatch { .. }
            | Error::FieldMismatch { .. }
            | Error::DimensionMismatch { .. }
            | Error::ConstantPsi
            | Error::ConstantOperator
            | Error::NotHomogeneous
            | Error::ConstantPhi
            | Error::Khavinson(_)
            | Error::NotQuadric
            | Error::NotEllipsoidal
            | Error::InteriorNotInside { .. }
            | Error::InvalidParameter(_) => CliError::Usage(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

fn resolve_config(g: &GlobalOpts, cmd: &Command) -> Result<RunConfig, CliError> {
    let khavinson = matches!(cmd, Command::Khavinson { .. });
    let vars = match (&g.vars, khavinson) {
        (Some(v), _) => v.iter().map(|s| s.trim().to_string()).collect(),
        (None, true) => vec!["x".into(), "y".into(), "z".into()],
        (None, false) => return Err(CliError::Usage("--vars is required (e.g. --vars x,y)".into())),
    };
    validate_var_names(&vars)?;
    let field = match (g.field, khavinson) {
        (Some(Field::Q), true) => return Err(CliError::Usage("khavinson works over the field qi".into())),
        (_, true) => Field::Qi,
        (f, false) => f.unwrap_or(Field::Q),
    };
    for (name, t) in [("--tol-root", g.tol_root), ("--tol-boundary", g.tol_boundary)] {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Usage(format!("{name} must be positive")));
        }
    }
    Ok(RunConfig { field, vars, seed: g.seed, tol_root: g.tol_root, tol_boundary: g.tol_boundary, format: g.format })
}

fn dispatch(cfg: &RunConfig, cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Decompose { psi, f, slack } => commands::decompose(cfg, psi, f, *slack),
        Command::RankProfile { psi, max_degree, slack, mode } => {
            commands::rank_profile(cfg, psi, *max_degree, *slack, *mode)
        }
        Command::Dirichlet { psi, f, interior, samples } => commands::dirichlet(cfg, psi, f, interior, *samples),
        Command::FischerTheorem { p, max_degree } => commands::fischer_theorem(cfg, p, *max_degree),
        Command::Khavinson { phi, max_degree, slack } => commands::khavinson(cfg, phi, *max_degree, *slack),
        Command::KsResidual { psi, interior } => commands::ks_residual(cfg, psi, interior),
    }
}

/// Runs the tool on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = resolve_config(&cli.global, &cli.command).and_then(|cfg| {
        let report = dispatch(&cfg, &cli.command)?;
        let rendered = report.render(cfg.format).map_err(CliError::Usage)?;
        match &cli.global.out {
            Some(path) => std::fs::write(path, rendered)
                .map_err(|e| CliError::Compute(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{rendered}"),
        }
        Ok(report.outcome)
    });
    match result {
        Ok(outcome) => {
            if outcome != Outcome::Verified {
                eprintln!("{}", outcome.describe());
            }
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
