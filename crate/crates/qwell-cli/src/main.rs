//! `qwell`: spectra, wavefunction samples, reference tables, tunneling
//! splittings, and method-comparison reports for the 1D harmonic and
//! double-well potentials, as CSV or JSON.

// negated comparisons like !(x > 0.0) are deliberate: they reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug)]
pub enum CliError {
    /// invalid request; exit code 2
    Usage(String),
    /// solver failed to converge or produced unusable numbers; exit code 3
    Numeric(String),
    /// filesystem trouble; exit code 1
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) | CliError::Io(m) => m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PotentialArg {
    Sho,
    Dwp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Wkb,
    Maf,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Wkb => "wkb",
            Method::Maf => "maf",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Solver knobs shared by every command. Values resolve as defaults, then
/// the `--config` file, then these flags.
#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// box width for the exact solver (default 10, or 10*z0 for the double well)
    #[arg(long)]
    pub zc: Option<f64>,
    /// basis size for the exact solver (default 200)
    #[arg(long)]
    pub nmax: Option<usize>,
    /// WKB patch half-width (default 0.5/alpha, clamped to the level geometry)
    #[arg(long = "delta-z")]
    pub delta_z: Option<f64>,
    /// key=value config file (keys: zc, nmax, quad_tol, root_tol, delta_z)
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// output path; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_enum)]
    pub potential: PotentialArg,
    /// barrier height z0^2 (double well only)
    #[arg(long)]
    pub z0sq: Option<f64>,
    /// number of levels
    #[arg(long, default_value_t = 5)]
    pub levels: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [Method::Exact, Method::Wkb, Method::Maf])]
    pub methods: Vec<Method>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[arg(long, value_enum)]
    pub potential: PotentialArg,
    #[arg(long)]
    pub z0sq: Option<f64>,
    /// level index n
    #[arg(long, default_value_t = 0)]
    pub level: usize,
    /// half-width of the sampling window (default: past the outer turning point)
    #[arg(long)]
    pub zmax: Option<f64>,
    /// number of grid points over [-zmax, zmax]
    #[arg(long, default_value_t = 801)]
    pub points: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [Method::Exact, Method::Wkb, Method::Maf])]
    pub methods: Vec<Method>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// barrier heights z0^2, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = [4.0, 9.0, 16.0])]
    pub z0sq: Vec<f64>,
    #[arg(long, default_value_t = 9)]
    pub levels: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [Method::Exact, Method::Wkb, Method::Maf])]
    pub methods: Vec<Method>,
    /// significant digits per table entry
    #[arg(long, default_value_t = 9)]
    pub digits: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SplittingArgs {
    /// barrier heights z0^2, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = [4.0, 9.0, 16.0])]
    pub z0sq: Vec<f64>,
    /// odd-even level pairs as odd-even (e.g. 1-0,3-2)
    #[arg(long, value_delimiter = ',', default_values = ["1-0", "3-2"])]
    pub pairs: Vec<String>,
    #[arg(long, value_delimiter = ',', default_values_t = [Method::Exact, Method::Wkb, Method::Maf])]
    pub methods: Vec<Method>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, value_enum)]
    pub potential: PotentialArg,
    #[arg(long)]
    pub z0sq: Option<f64>,
    /// number of levels to compare
    #[arg(long, default_value_t = 4)]
    pub levels: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [Method::Wkb, Method::Maf])]
    pub methods: Vec<Method>,
    #[arg(long)]
    pub zmax: Option<f64>,
    #[arg(long, default_value_t = 801)]
    pub points: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// output path; stdout when omitted (compare always emits JSON)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(
    name = "qwell",
    version,
    about = "1D quantum well spectra: exact, WKB, and modified Airy function methods"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues of one potential per method
    Spectrum(SpectrumArgs),
    /// Sampled wavefunctions of a single level (bare/patch WKB curves included)
    Wavefunction(WavefunctionArgs),
    /// Eigenvalue tables across barrier heights (N/A above the barrier)
    Tables(TablesArgs),
    /// Even/odd tunneling splittings across barrier heights
    Splitting(SplittingArgs),
    /// JSON accuracy report of the semiclassical methods against the exact solver
    Compare(CompareArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(args) => commands::spectrum::run(&args),
        Command::Wavefunction(args) => commands::wavefunction::run(&args),
        Command::Tables(args) => commands::tables::run(&args),
        Command::Splitting(args) => commands::splitting::run(&args),
        Command::Compare(args) => commands::compare::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
