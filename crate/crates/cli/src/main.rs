//! Command-line front end: load catalog or file manifolds, run Betti
//! computations and scans, emit human tables, JSON, or CSV.
//!
//! Exit codes: 0 success, 1 validation or usage errors, 2 hypothesis
//! violations (e.g. the splitting check on a closed orientable manifold),
//! 3 internal consistency failures (`d^2 != 0` or an Euler mismatch), which
//! must never occur on shipped catalog data.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use confspace::analyze::{
    decomposition_check, decomposition_passes, monotonicity_scan, stability_scan,
};
use confspace::cecomplex::build_complex;
use confspace::homology::{betti, euler};
use confspace::manifold::{catalog, catalog_names, ManifoldDocument, ManifoldModel};
use confspace::Error;

use output::Report;

/// Environment variable capping worker parallelism (positive integer;
/// default: all available cores).
const THREADS_VAR: &str = "CONFSPACE_THREADS";

#[derive(Parser)]
#[command(
    name = "confspace",
    version,
    about = "Exact rational Betti numbers of unordered configuration spaces C_k(M)",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Betti table of C_k(M)
    Betti(BettiArgs),
    /// Compute Betti tables for k = 0..=k_max and report degreewise drops
    ScanMonotone(ScanMonotoneArgs),
    /// Find the empirical stabilization point of b_i(C_k) per degree
    ScanStability(ScanStabilityArgs),
    /// Check b_i(C_k) = b_i(C_{k-1}) + dim H_i(quotient) in every degree
    CheckDecomposition(CheckDecompositionArgs),
    /// Validate a manifold document against all input rules
    Validate(ValidateArgs),
    /// List built-in manifolds, or print one as a manifold document
    Catalog(CatalogArgs),
}

#[derive(Args)]
#[command(group = ArgGroup::new("source").required(true).args(["manifold", "file"]))]
struct SourceArgs {
    /// Built-in manifold name (see `confspace catalog`)
    #[arg(long)]
    manifold: Option<String>,
    /// Path to a manifold JSON document
    #[arg(long)]
    file: Option<PathBuf>,
}

impl SourceArgs {
    fn load(&self) -> Result<ManifoldModel, CliError> {
        match (&self.manifold, &self.file) {
            (Some(name), None) => Ok(catalog(name)?),
            (None, Some(path)) => {
                let doc = read_document(path)?;
                Ok(ManifoldModel::from_document(&doc)?)
            }
            _ => unreachable!("clap enforces exactly one source"),
        }
    }
}

fn read_document(path: &PathBuf) -> Result<ManifoldDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::Input(format!(
            "malformed manifold document {}: {e}",
            path.display()
        ))
    })
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct VerifyArgs {
    /// Verify d^2 = 0 on every assembled complex (default: on for k <= 8)
    #[arg(long, overrides_with = "no_check_d_squared")]
    check_d_squared: bool,
    /// Skip the d^2 = 0 verification
    #[arg(long, overrides_with = "check_d_squared")]
    no_check_d_squared: bool,
    /// Cross-check chain-level vs homology-level Euler characteristics
    /// (default: on)
    #[arg(long, overrides_with = "no_check_euler")]
    check_euler: bool,
    /// Skip the Euler cross-check
    #[arg(long, overrides_with = "check_euler")]
    no_check_euler: bool,
}

impl VerifyArgs {
    fn d_squared_at(&self, k: usize) -> bool {
        if self.no_check_d_squared {
            false
        } else if self.check_d_squared {
            true
        } else {
            k <= 8
        }
    }

    fn euler_enabled(&self) -> bool {
        !self.no_check_euler
    }

    /// Runs the selected verifications for every k in the range. Both are
    /// no-ops for odd-dimensional models, which never build a complex.
    fn run(&self, m: &ManifoldModel, ks: impl Iterator<Item = usize>) -> Result<(), CliError> {
        if !m.d().is_multiple_of(2) {
            return Ok(());
        }
        for k in ks {
            if self.d_squared_at(k) {
                build_complex(m, k)?.check_d_squared()?;
            }
            if self.euler_enabled() {
                euler(m, k)?;
            }
        }
        Ok(())
    }
}

#[derive(Args)]
struct BettiArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Number of points
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(flatten)]
    verify: VerifyArgs,
}

#[derive(Args)]
struct ScanMonotoneArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Scan k = 0..=k_max
    #[arg(long = "k-max", value_parser = clap::value_parser!(u64).range(1..))]
    k_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(flatten)]
    verify: VerifyArgs,
}

#[derive(Args)]
struct ScanStabilityArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Scan k = 0..=k_max
    #[arg(long = "k-max", value_parser = clap::value_parser!(u64).range(2..))]
    k_max: u64,
    /// Restrict to one homological degree (default: all degrees seen)
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(flatten)]
    verify: VerifyArgs,
}

#[derive(Args)]
struct CheckDecompositionArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Number of points (compared with k - 1)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(flatten)]
    verify: VerifyArgs,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct CatalogArgs {
    /// Print this entry as a full manifold document instead of the list
    #[arg(long)]
    manifold: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

/// Errors at the CLI boundary, each mapped to a documented exit code.
enum CliError {
    /// Unreadable files, malformed documents, bad configuration: exit 1.
    Input(String),
    /// Data that fails the manifold validation rules: exit 1.
    Core(Error),
    /// A report that was produced but signals failure (validate command):
    /// printed to stdout, exits 1.
    Findings(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Findings(_) => 1,
            CliError::Core(Error::Hypothesis(_)) => 2,
            CliError::Core(Error::InternalCheck(_)) => 3,
            CliError::Core(_) => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = init_thread_pool() {
        return report_failure(e);
    }
    match run(cli) {
        Ok(rendered) => {
            print!("{rendered}");
            ExitCode::SUCCESS
        }
        Err(e) => report_failure(e),
    }
}

fn report_failure(e: CliError) -> ExitCode {
    let code = e.exit_code();
    match e {
        CliError::Findings(rendered) => print!("{rendered}"),
        CliError::Input(m) => eprintln!("error: {m}"),
        CliError::Core(err) => eprintln!("error: {err}"),
    }
    ExitCode::from(code)
}

fn init_thread_pool() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&n| n >= 1).ok_or_else(|| {
        CliError::Input(format!(
            "{THREADS_VAR} must be a positive integer, got \"{raw}\""
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Input(format!("cannot configure worker pool: {e}")))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Betti(args) => {
            let m = args.source.load()?;
            args.verify.run(&m, std::iter::once(args.k))?;
            let table = betti(&m, args.k)?;
            let report = Report::betti(&m, &table);
            Ok(report.render(args.format.into()))
        }
        Command::ScanMonotone(args) => {
            let m = args.source.load()?;
            let k_max = args.k_max as usize;
            args.verify.run(&m, 0..=k_max)?;
            let scan = monotonicity_scan(&m, k_max)?;
            let report = Report::monotonicity(&m, &scan);
            Ok(report.render(args.format.into()))
        }
        Command::ScanStability(args) => {
            let m = args.source.load()?;
            let k_max = args.k_max as usize;
            args.verify.run(&m, 0..=k_max)?;
            let scan = monotonicity_scan(&m, k_max)?;
            if let Some(degree) = args.degree {
                // Recompute through the dedicated entry point; it agrees
                // with the scan-wide summary by construction.
                let stab = stability_scan(&m, degree, k_max)?;
                let report = Report::stability_single(&m, &scan, degree, stab);
                Ok(report.render(args.format.into()))
            } else {
                let report = Report::stability_all(&m, &scan);
                Ok(report.render(args.format.into()))
            }
        }
        Command::CheckDecomposition(args) => {
            let m = args.source.load()?;
            let k = args.k as usize;
            args.verify.run(&m, [k - 1, k].into_iter())?;
            let rows = decomposition_check(&m, k)?;
            let pass = decomposition_passes(&rows);
            let report = Report::decomposition(&m, k, &rows, pass);
            Ok(report.render(args.format.into()))
        }
        Command::Validate(args) => {
            let (label, outcome) = match (&args.source.manifold, &args.source.file) {
                (Some(name), None) => (name.clone(), catalog(name).map(|_| ())),
                (None, Some(path)) => {
                    let doc = read_document(path)?;
                    (
                        path.display().to_string(),
                        ManifoldModel::from_document(&doc).map(|_| ()),
                    )
                }
                _ => unreachable!("clap enforces exactly one source"),
            };
            match outcome {
                Ok(()) => Ok(output::render_validation(&label, &[], args.format.into())),
                Err(Error::Validation(issues)) => Err(CliError::Findings(
                    output::render_validation(&label, &issues, args.format.into()),
                )),
                Err(e) => Err(e.into()),
            }
        }
        Command::Catalog(args) => match args.manifold {
            Some(name) => {
                let m = catalog(&name)?;
                Ok(output::render_document(
                    &m.to_document(),
                    args.format.into(),
                ))
            }
            None => {
                let models: Vec<ManifoldModel> = catalog_names()
                    .iter()
                    .map(|name| catalog(name).expect("catalog entries validate"))
                    .collect();
                Ok(output::render_catalog(&models, args.format.into()))
            }
        },
    }
}

impl From<Format> for output::Format {
    fn from(f: Format) -> output::Format {
        match f {
            Format::Table => output::Format::Table,
            Format::Json => output::Format::Json,
            Format::Csv => output::Format::Csv,
        }
    }
}
