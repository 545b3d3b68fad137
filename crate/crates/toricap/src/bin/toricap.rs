//! Batch front end: parse files and flags, call the library, print.
//!
//! Exit codes: 0 success, 1 parse/domain error, 2 unsupported domain for
//! the requested quantity, 3 internal verification failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use toricap::batch::{self, ConfigFile, OutputFormat, Quantity, RunConfig};
use toricap::domain::DomainSpec;
use toricap::{Error, Result};

#[derive(Parser)]
#[command(
    name = "toricap",
    about = "Exact lattice capacity bounds for strongly convex toric domains",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-k capacity report (lk, uk, gh, slope, widths)
    Caps(CapsArgs),
    /// Capacity interval for a tangency constraint
    Interval(IntervalArgs),
    /// Rays of the normal fan, optionally resolved
    Fan(FanArgs),
    /// CSV of (k, lk, uk, gh, slope*k) for plotting
    Plot(PlotArgs),
    /// Golden fixtures and DP-vs-oracle cross-checks
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CapsArgs {
    /// Domain spec file (JSON)
    #[arg(long)]
    domain: PathBuf,
    /// Optional config file (JSON); flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// Largest k to report
    #[arg(long)]
    k_max: Option<usize>,
    /// Comma-separated subset of lk,uk,gh,slope,width
    #[arg(long)]
    quantities: Option<String>,
    /// table, csv or json
    #[arg(long)]
    format: Option<String>,
    /// Re-derive every row with k <= 5 by brute force; mismatch exits 3
    #[arg(long)]
    oracle_check: bool,
    /// Oracle-only mode for weakly convex domains (small k, lk/uk only)
    #[arg(long)]
    oracle: bool,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IntervalArgs {
    #[arg(long)]
    domain: PathBuf,
    /// Tangency constraint file (JSON: {"points": [[0]], "dim": 4})
    #[arg(long)]
    constraint: PathBuf,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FanArgs {
    #[arg(long)]
    domain: PathBuf,
    /// Print the smooth refinement and mark inserted rays
    #[arg(long)]
    resolve: bool,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long)]
    domain: PathBuf,
    #[arg(long, default_value_t = 20)]
    k_max: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run the compiled-in golden fixtures
    #[arg(long)]
    golden: bool,
    /// Cross-check the DP against the oracle on this domain
    #[arg(long)]
    domain: Option<PathBuf>,
    #[arg(long, default_value_t = 5)]
    k_max: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn read_domain(path: &Path) -> Result<DomainSpec> {
    toricap::domain::parse_domain(&read_file(path)?)
}

fn emit(text: String, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Caps(args) => {
            let spec = read_domain(&args.domain)?;
            let mut config = RunConfig::default();
            if let Some(path) = &args.config {
                ConfigFile::parse(&read_file(path)?)?.apply(&mut config);
            }
            if let Some(k) = args.k_max {
                config.k_max = k;
            }
            if let Some(q) = &args.quantities {
                config.quantities = Quantity::parse_list(q)?;
            }
            if let Some(f) = &args.format {
                config.format = OutputFormat::parse(f)?;
            }
            config.oracle_check |= args.oracle_check;
            config.oracle_only = args.oracle;
            emit(batch::run_caps(&spec, &config)?, &args.out)
        }
        Command::Interval(args) => {
            let spec = read_domain(&args.domain)?;
            let constraint = batch::parse_constraint(&read_file(&args.constraint)?)?;
            let format = match &args.format {
                Some(f) => OutputFormat::parse(f)?,
                None => OutputFormat::Table,
            };
            emit(batch::run_interval(&spec, &constraint, format)?, &args.out)
        }
        Command::Fan(args) => {
            let spec = read_domain(&args.domain)?;
            let format = match &args.format {
                Some(f) => OutputFormat::parse(f)?,
                None => OutputFormat::Table,
            };
            emit(batch::run_fan(&spec, args.resolve, format)?, &args.out)
        }
        Command::Plot(args) => {
            let spec = read_domain(&args.domain)?;
            emit(batch::run_plot(&spec, args.k_max)?, &args.out)
        }
        Command::Verify(args) => {
            if !args.golden && args.domain.is_none() {
                return Err(Error::InvalidArgument(
                    "verify needs --golden and/or --domain FILE".into(),
                ));
            }
            let mut output = String::new();
            if args.golden {
                output.push_str(&batch::run_verify_golden()?);
            }
            if let Some(path) = &args.domain {
                let spec = read_domain(path)?;
                output.push_str(&batch::run_verify_domain(&spec, args.k_max)?);
            }
            emit(output, &args.out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
