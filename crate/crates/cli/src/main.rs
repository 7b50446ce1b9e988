//! `firedss`: ingest sensor CSVs into RDF, rate fire danger, run rules and
//! queries.

mod commands;
mod output;
mod svg;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "firedss", version, about = "Forest-fire danger decision support over an RDF sensor store")]
struct Cli {
    /// Rule file. Falls back to rules/fwi.rules in the working directory,
    /// then to the built-in rule set.
    #[arg(long, global = true, env = "FWI_RULES", value_name = "PATH")]
    rules: Option<PathBuf>,

    /// Output format. Each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// More logging on stderr (-v, -vv).
    #[arg(long, short, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Jsonl,
    Ntriples,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert a dataset CSV to N-Triples.
    Ingest {
        /// CSV file, or `-` for stdin.
        input: PathBuf,
    },
    /// Assess every row and emit assessments or alerts.
    Assess {
        input: PathBuf,
        /// Also write alerts (JSON lines) to this file.
        #[arg(long, value_name = "PATH")]
        alerts: Option<PathBuf>,
        /// Emit alerts instead of assessments.
        #[arg(long)]
        alerts_only: bool,
    },
    /// Classify one index value into its danger band.
    Classify {
        /// ffmc, dmc, bui, isi, fwi, rain or wind.
        index: String,
        #[arg(allow_negative_numbers = true)]
        value: f64,
    },
    /// Run the rule set to a fixpoint and print the inferred facts.
    Infer {
        /// N-Triples store (.nt) or dataset CSV (.csv).
        input: PathBuf,
    },
    /// Run a query file, or read queries from stdin separated by blank lines.
    Query {
        /// N-Triples store (.nt) or dataset CSV (.csv).
        store: PathBuf,
        query: Option<PathBuf>,
        /// Query the per-sensor view of one quantity (e.g. rain, wind).
        #[arg(long, value_name = "QUANTITY")]
        view: Option<String>,
    },
    /// Emit FFMC/DMC/DC for the rows with the largest day-to-day FFMC change.
    Plot {
        input: PathBuf,
        #[arg(long, value_name = "N")]
        days: usize,
        /// Also render the series as an SVG line chart.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let ctx = commands::Context::new(cli.rules, cli.format);
    let mut out = output::Sink::open(cli.output.as_deref())?;
    let ok = match cli.command {
        Command::Ingest { input } => commands::ingest(&ctx, &input, &mut out)?,
        Command::Assess {
            input,
            alerts,
            alerts_only,
        } => commands::assess(&ctx, &input, alerts.as_deref(), alerts_only, &mut out)?,
        Command::Classify { index, value } => commands::classify(&ctx, &index, value, &mut out)?,
        Command::Infer { input } => commands::infer(&ctx, &input, &mut out)?,
        Command::Query { store, query, view } => {
            commands::query(&ctx, &store, query.as_deref(), view.as_deref(), &mut out)?
        }
        Command::Plot { input, days, svg } => commands::plot(&ctx, &input, days, svg.as_deref(), &mut out)?,
    };
    out.flush()?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).init();

    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e)
            if e.chain()
                .filter_map(|c| c.downcast_ref::<std::io::Error>())
                .any(|io| io.kind() == std::io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
