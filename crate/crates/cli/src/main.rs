//! `scholarnet` command-line front end.

mod commands;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::RunConfig;
use scholarnet::{EffectivenessVariant, InputFormat, OutputFormat};

#[derive(Parser)]
#[command(
    name = "scholarnet",
    version,
    about = "Co-authorship social capital and performance metrics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate the input; print corpus statistics.
    IngestCheck(RunArgs),
    /// Write the weighted co-authorship edge list (`edges.csv`).
    GraphExport(RunArgs),
    /// Compute per-author metrics.
    Metrics(RunArgs),
    /// Spearman correlations between capital and performance measures.
    Correlate(RunArgs),
    /// Top-N authors by a metric, or venues by `publications` / `citations`.
    Top {
        #[command(flatten)]
        run: RunArgs,
        /// Measure to rank by.
        #[arg(long)]
        by: String,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Publication records file.
    #[arg(long)]
    input: PathBuf,
    /// Input format; inferred from the file extension when omitted.
    #[arg(long)]
    format: Option<InputFormat>,
    /// Alias CSV with header `from_name,to_name`.
    #[arg(long)]
    aliases: Option<PathBuf>,
    /// Omit authors without co-authors from metrics and correlations.
    #[arg(long)]
    drop_isolates: bool,
    #[arg(long, default_value = "binary")]
    effectiveness: EffectivenessVariant,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    top_n: u64,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, default_value = "csv")]
    out_format: OutputFormat,
}

fn infer_format(path: &Path) -> InputFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("jsonl") || ext.eq_ignore_ascii_case("ndjson") => InputFormat::Jsonl,
        _ => InputFormat::Csv,
    }
}

impl From<RunArgs> for RunConfig {
    fn from(args: RunArgs) -> Self {
        RunConfig {
            input_format: args.format.unwrap_or_else(|| infer_format(&args.input)),
            input_path: args.input,
            alias_path: args.aliases,
            drop_isolates: args.drop_isolates,
            effectiveness_variant: args.effectiveness,
            top_n: args.top_n as usize,
            output_dir: args.out,
            output_format: args.out_format,
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let written = match cli.command {
        Command::IngestCheck(args) => {
            let s = commands::cmd_ingest_check(&args.into())?;
            println!("publications: {}", s.publications);
            println!("authors: {}", s.authors);
            println!("authorships: {}", s.authorships);
            println!("co-authorship edges: {}", s.edges);
            println!("isolated authors: {}", s.isolates);
            return Ok(());
        }
        Command::GraphExport(args) => commands::cmd_graph_export(&args.into())?,
        Command::Metrics(args) => commands::cmd_metrics(&args.into())?,
        Command::Correlate(args) => commands::cmd_correlate(&args.into())?,
        Command::Top { run, by } => commands::cmd_top(&run.into(), &by)?,
    };
    println!("{}", written.display());
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
