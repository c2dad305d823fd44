use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const WORKERS_ENV: &str = "EXCPRIME_WORKERS";

#[derive(Debug, Parser)]
#[command(
    name = "excprime",
    version,
    about = "Exceptional-prime certificates and audits"
)]
pub struct Cli {
    /// JSON file whose keys mirror the subcommand's flags.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Worker threads; overridden by EXCPRIME_WORKERS.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Print f_n (or psi_n) of the Legendre curve E_t.
    Divpoly(DivpolyArgs),
    /// Exceptional primes for a pair of Legendre curves.
    EcCert(EcCertArgs),
    /// Audit a range of primes against the elliptic certificate.
    EcAudit(EcAuditArgs),
    /// Exceptional primes for a tuple of rational functions.
    MultCert(MultCertArgs),
    /// Audit a range of primes against the multiplicative certificate.
    MultAudit(MultAuditArgs),
    /// Tuple order of field elements.
    TupleOrder(TupleOrderArgs),
    /// Minimal order statistic per prime, as CSV.
    Profile(ProfileArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Divpoly(_) => "divpoly",
            Command::EcCert(_) => "ec-cert",
            Command::EcAudit(_) => "ec-audit",
            Command::MultCert(_) => "mult-cert",
            Command::MultAudit(_) => "mult-audit",
            Command::TupleOrder(_) => "tuple-order",
            Command::Profile(_) => "profile",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct DivpolyArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub t: i64,
    /// Print psi_n as its even and Y parts instead of f_n.
    #[arg(long)]
    pub psi: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Pairwise,
    FullProduct,
}

#[derive(Debug, Args, Serialize)]
pub struct CurvePair {
    #[arg(long, allow_hyphen_values = true)]
    pub t1: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub t2: i64,
    /// Order floor C.
    #[arg(long, default_value_t = 12)]
    pub c: u32,
    /// Window top L.
    #[arg(long)]
    pub l: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::Pairwise)]
    pub resultant_mode: ModeArg,
    /// Assert the height and resultant bounds at runtime.
    #[arg(long)]
    pub checked: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct EcCertArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub curves: CurvePair,
    #[arg(long, default_value_t = 1_000_000)]
    pub prime_cap: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct PrimeRange {
    #[arg(long, default_value_t = 3)]
    pub from: u64,
    #[arg(long)]
    pub to: u64,
    /// x runs over F_{p^depth}.
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct EcAuditArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub curves: CurvePair,
    #[command(flatten)]
    #[serde(flatten)]
    pub range: PrimeRange,
    /// Certificate prime cap; defaults to the top of the range.
    #[arg(long)]
    pub prime_cap: Option<u64>,
    /// JSON summary destination (default stdout).
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Per-row CSV destination.
    #[arg(long)]
    #[serde(skip)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct Functions {
    /// A rational function `P/Q` with comma-separated coefficients, constant
    /// first; `/Q` may be omitted. Repeat once per function.
    #[arg(long = "f", required = true, allow_hyphen_values = true)]
    pub f: Vec<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct MultCertArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub functions: Functions,
    #[arg(long)]
    pub l: u32,
    #[arg(long, default_value_t = 1_000_000)]
    pub prime_cap: u64,
    #[arg(long)]
    pub checked: bool,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct MultAuditArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub functions: Functions,
    /// Order floor B.
    #[arg(long)]
    pub b: u32,
    #[arg(long)]
    pub l: u32,
    #[command(flatten)]
    #[serde(flatten)]
    pub range: PrimeRange,
    #[arg(long)]
    pub prime_cap: Option<u64>,
    #[arg(long)]
    pub checked: bool,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct TupleOrderArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Field elements by index (equal to their value when k = 1).
    #[arg(long, value_delimiter = ',', required = true)]
    pub values: Vec<u64>,
    #[arg(long, default_value_t = 64)]
    pub radius_cap: u32,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKind {
    Ec,
    Mult,
}

#[derive(Debug, Args, Serialize)]
pub struct ProfileArgs {
    #[arg(long, value_enum)]
    pub kind: ProfileKind,
    #[arg(long, allow_hyphen_values = true)]
    pub t1: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t2: Option<i64>,
    #[arg(long = "f", allow_hyphen_values = true)]
    pub f: Vec<String>,
    #[arg(long, default_value_t = 3)]
    pub from: u64,
    #[arg(long)]
    pub to: u64,
    #[arg(long)]
    #[serde(skip)]
    pub csv: Option<PathBuf>,
}
