//! Command-line front end: moment-map evaluation, Toeplitz assembly,
//! spectral tables, and an invariant verification battery, all emitting
//! reproducible reports.
//!
//! stdout carries exactly one payload per run (a JSON report, or CSV when
//! requested); identical flags and seed give byte-identical payloads.
//! Timing and per-check progress go to stderr. Exit codes: 0 on success,
//! 1 when a requested check fails, 2 on configuration errors.

mod commands;
mod parse;
mod profiles;
mod report;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "mmtop",
    version,
    about = "moment maps and Toeplitz operators on weighted Bergman spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate moment maps and coordinate functions at points
    Moment(MomentArgs),
    /// Assemble truncated Toeplitz matrices and commutator diagnostics
    Toeplitz(ToeplitzArgs),
    /// Tabulate spectral functions over a parameter grid, both routes
    Spectrum(SpectrumArgs),
    /// Run the invariant battery and report per-check residuals
    Verify(VerifyArgs),
}

#[derive(Args)]
pub struct MomentArgs {
    /// Action family: elliptic|parabolic|hyperbolic|nilpotent|quasinilpotent
    #[arg(long)]
    pub action: String,
    /// Complex dimension of the domain
    #[arg(long)]
    pub n: usize,
    /// Rotation count, quasinilpotent family only
    #[arg(long)]
    pub k: Option<usize>,
    /// Basis rows "v1;v2;..." with comma entries, axis names "e1;e3", or "canonical"
    #[arg(long, default_value = "canonical", allow_hyphen_values = true)]
    pub beta: String,
    /// Consecutive block sizes "k1,k2,..." selecting a partition basis
    #[arg(long, conflicts_with = "beta")]
    pub partition: Option<String>,
    /// Point "re,im;re,im;..." with one component per dimension; repeatable
    #[arg(long, allow_hyphen_values = true)]
    pub point: Vec<String>,
    /// Number of sampled points when no --point is given
    #[arg(long, default_value_t = 3)]
    pub count: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Re-evaluate the moment map after a random group motion at each point
    #[arg(long)]
    pub check_invariance: bool,
    /// Invariance tolerance
    #[arg(long, default_value_t = 1e-8, allow_negative_numbers = true)]
    pub tol: f64,
    /// Also write the report to this path
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ToeplitzArgs {
    /// Action family: elliptic|parabolic|hyperbolic|nilpotent|quasinilpotent
    #[arg(long)]
    pub action: String,
    /// Complex dimension of the domain
    #[arg(long)]
    pub n: usize,
    /// Rotation count, quasinilpotent family only
    #[arg(long)]
    pub k: Option<usize>,
    /// Bergman weight parameter, > -1
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Truncation degree of the monomial basis
    #[arg(long)]
    pub degree: usize,
    /// Basis rows "v1;v2;..." with comma entries, axis names "e1;e3", or "canonical"
    #[arg(long, default_value = "canonical", allow_hyphen_values = true)]
    pub beta: String,
    /// Consecutive block sizes "k1,k2,..." selecting a partition basis
    #[arg(long, conflicts_with = "beta")]
    pub partition: Option<String>,
    /// Profile name: const|ratio|reciprocal|gaussian|sigmoid
    #[arg(long)]
    pub profile: String,
    /// Reduction coefficients "c0,c1,...,cm" for t = c0 + sum_j c_j a_j
    #[arg(long, allow_hyphen_values = true)]
    pub profile_args: Option<String>,
    /// Second profile; assembles both matrices and reports their commutator
    #[arg(long)]
    pub profile2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub profile2_args: Option<String>,
    /// Gauss order per radial axis
    #[arg(long, default_value_t = 40)]
    pub quad_radial: usize,
    /// Trapezoid order per angular axis; defaults to max(64, 2*degree+2)
    #[arg(long)]
    pub quad_angular: Option<usize>,
    /// Degrees excluded near the truncation edge of the commutator block
    #[arg(long, default_value_t = 2)]
    pub buffer: usize,
    /// Pass threshold on the commutator norm (pair) or off-diagonal mass (single)
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    /// Report path; matrix CSVs land next to it as .a.csv/.b.csv
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SpectrumArgs {
    /// Action family: elliptic|parabolic|nilpotent|quasinilpotent
    #[arg(long)]
    pub action: String,
    /// Complex dimension of the domain
    #[arg(long)]
    pub n: usize,
    /// Rotation count, quasinilpotent family only
    #[arg(long)]
    pub k: Option<usize>,
    /// Bergman weight parameter, > -1
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Basis rows "v1;v2;..." with comma entries, axis names "e1;e3", or "canonical"
    #[arg(long, default_value = "canonical", allow_hyphen_values = true)]
    pub beta: String,
    /// Consecutive block sizes "k1,k2,..." selecting a partition basis
    #[arg(long, conflicts_with = "beta")]
    pub partition: Option<String>,
    /// Profile name: const|ratio|reciprocal|gaussian|sigmoid
    #[arg(long)]
    pub profile: String,
    /// Reduction coefficients "c0,c1,...,cm" for t = c0 + sum_j c_j a_j
    #[arg(long, allow_hyphen_values = true)]
    pub profile_args: Option<String>,
    /// Largest total degree enumerated for discrete spectral parameters
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
    /// xi grid: comma list or "lo:hi:count"
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub grid_xi: String,
    /// Grid applied to each translation coordinate: comma list or "lo:hi:count"
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub grid_y: String,
    /// Gauss order per integration axis
    #[arg(long, default_value_t = 64)]
    pub quad_radial: usize,
    /// Output format: json|csv
    #[arg(long, default_value = "json")]
    pub format: String,
    /// Pass threshold on the worst cross-representation residual
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    /// Also write the payload to this path
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Largest dimension included in the action sweep
    #[arg(long, default_value_t = 3)]
    pub n_max: usize,
    /// Deliberately flip the elliptic moment direction; the battery must fail
    #[arg(long)]
    pub inject_sign_flip: bool,
    /// Also write the report to this path
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Moment(a) => commands::moment::run(a),
        Command::Toeplitz(a) => commands::toeplitz::run(a),
        Command::Spectrum(a) => commands::spectrum::run(a),
        Command::Verify(a) => commands::verify::run(a),
    };
    match outcome {
        Ok(pass) => {
            eprintln!("wall-clock {:.3} s", start.elapsed().as_secs_f64());
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
