//! `semcal`: batch front end for the semantic information calculus.
//!
//! Exit status is 0 on success, 1 on parse or validation errors and 2 when
//! the inputs are mathematically degenerate.

mod commands;
mod input;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Io(String),
    Core(semcal::Error),
}

impl From<semcal::Error> for CliError {
    fn from(e: semcal::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_degeneracy() => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(s) | CliError::Io(s) => f.write_str(s),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "semcal", version, about = "Semantic information and degree-of-confirmation calculator")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Normalization tolerance for probability inputs.
    #[arg(long, global = true, env = "SEMCAL_TOLERANCE", default_value_t = semcal::NORMALIZATION_TOLERANCE)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Degree of confirmation from a contingency table, rates or test characteristics.
    Doc(DocArgs),
    /// Pointwise and average semantic information of a truth function.
    Info(InfoArgs),
    /// Maximum semantic information estimation from samples or a positioning scenario.
    Msie(MsieArgs),
    /// Recompute the worked examples and compare with their published values.
    Reproduce,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["table", "rates", "test"])))]
struct DocArgs {
    /// Counts n11,n10,n01,n00.
    #[arg(long, value_name = "N11,N10,N01,N00")]
    table: Option<String>,

    /// Prior and posterior rates P0,P1,Q0,Q1.
    #[arg(long, value_name = "P0,P1,Q0,Q1")]
    rates: Option<String>,

    /// Test sensitivity and specificity.
    #[arg(long, value_name = "SENS,SPEC")]
    test: Option<String>,

    /// Prevalence P(e1), to attach information to test results.
    #[arg(long, requires = "test")]
    prior_e1: Option<f64>,
}

#[derive(Debug, Args)]
struct InfoArgs {
    /// Prior distribution CSV (label,probability).
    #[arg(long)]
    prior: PathBuf,

    /// Sampling distribution CSV (label,probability).
    #[arg(long)]
    sampling: Option<PathBuf>,

    /// Truth function, e.g. `crisp:e1`, `gauss:0,2`, `belief:0.9:crisp:e1`, `table:1,0.5`.
    #[arg(long)]
    tf: String,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["samples", "gps"])))]
struct MsieArgs {
    /// Samples CSV (condition,label).
    #[arg(long)]
    samples: Option<PathBuf>,

    /// Prior distribution CSV; defaults to the evidence frequencies.
    #[arg(long, requires = "samples")]
    prior: Option<PathBuf>,

    /// Positioning scenario TOML.
    #[arg(long)]
    gps: Option<PathBuf>,
}

fn run(cli: &Cli) -> Result<(report::ReportRecord, bool), CliError> {
    if !(cli.tolerance.is_finite() && cli.tolerance >= 0.0) {
        return Err(CliError::Parse(format!("invalid tolerance {}", cli.tolerance)));
    }
    let tol = cli.tolerance;
    let record = match &cli.command {
        Command::Doc(a) => match (&a.table, &a.rates, &a.test) {
            (Some(t), _, _) => commands::doc_table(t)?,
            (_, Some(r), _) => commands::doc_rates(r, tol)?,
            (_, _, Some(t)) => commands::doc_test(t, a.prior_e1)?,
            _ => unreachable!("clap requires one input"),
        },
        Command::Info(a) => commands::info(&a.prior, a.sampling.as_deref(), &a.tf, tol)?,
        Command::Msie(a) => match (&a.samples, &a.gps) {
            (Some(s), _) => commands::msie_samples(s, a.prior.as_deref(), tol)?,
            (_, Some(g)) => commands::msie_gps(g)?,
            _ => unreachable!("clap requires one source"),
        },
        Command::Reproduce => {
            let (record, mismatches) = commands::reproduce()?;
            return Ok((record, mismatches == 0));
        }
    };
    Ok((record, true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((record, ok)) => {
            let rendered = match cli.format {
                Format::Json => record.to_json(),
                Format::Text => record.to_text(),
            };
            let written = match &cli.out {
                Some(path) => fs::write(path, rendered).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{rendered}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
