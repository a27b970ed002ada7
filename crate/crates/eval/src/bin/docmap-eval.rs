use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use docmap_eval::report::DEFAULT_CUTOFFS;
use docmap_eval::{comparison_report, QrelSet, Run};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Both,
}

/// Compare two runs against the same relevance judgments.
#[derive(Debug, Parser)]
#[command(name = "docmap-eval", version)]
struct Args {
    /// Qrels file: `query_id doc_id rel` per line.
    #[arg(long)]
    qrels: PathBuf,
    /// Baseline run: `query_id rank doc_id score` per line.
    #[arg(long)]
    run_a: PathBuf,
    /// Run compared against the baseline.
    #[arg(long)]
    run_b: PathBuf,
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_CUTOFFS)]
    cutoffs: Vec<usize>,
    #[arg(long, value_enum, default_value = "both")]
    format: Format,
}

fn run(args: &Args) -> Result<(), Box<dyn std::error::Error>> {
    let qrels = QrelSet::load(&args.qrels)?;
    let run_a = Run::load(&args.run_a)?;
    let run_b = Run::load(&args.run_b)?;
    let report = comparison_report(&run_a, &run_b, &qrels, &args.cutoffs)?;
    match args.format {
        Format::Text => print!("{report}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Both => {
            print!("{report}");
            println!();
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("error")).init();
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("docmap-eval: {e}");
            ExitCode::FAILURE
        }
    }
}
