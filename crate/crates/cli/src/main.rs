use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pairsim_cli::{exit, parse, run, CircuitDocument, OutputFormat};
use pairsim_core::scenario_catalog;

#[derive(Parser)]
#[command(name = "pairsim", version, about = "Exact two-particle interference in beamsplitter networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a circuit document and print a probability table.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        /// Write the table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in scenario catalog against its expected statistics.
    Scenarios,
    /// Parse a document without evaluating it.
    Check { file: PathBuf },
    /// Print a document in canonical form.
    Fmt { file: PathBuf },
}

fn load(path: &Path) -> Result<CircuitDocument, ExitCode> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(exit::IO)
    })?;
    parse(&text).map_err(|e| {
        eprintln!("{}:{e}", path.display());
        ExitCode::from(exit::PARSE)
    })
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run { file, format, out } => {
            let doc = match load(&file) {
                Ok(doc) => doc,
                Err(code) => return code,
            };
            let table = match run(&doc) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("{}: {e}", file.display());
                    return ExitCode::from(exit::EVALUATION);
                }
            };
            let text = table.render(format);
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(exit::IO);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Command::Scenarios => {
            let mut failed = 0;
            for scenario in scenario_catalog() {
                let report = scenario.run();
                let tag = if report.passed { "PASS" } else { "FAIL" };
                println!("{tag}  {:<45} {}", report.name, report.detail);
                failed += usize::from(!report.passed);
            }
            if failed > 0 {
                eprintln!("{failed} scenario(s) failed");
                ExitCode::from(exit::SCENARIO_FAILED)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Check { file } => match load(&file) {
            Ok(_) => {
                println!("{}: ok", file.display());
                ExitCode::SUCCESS
            }
            Err(code) => code,
        },
        Command::Fmt { file } => match load(&file) {
            Ok(doc) => {
                print!("{doc}");
                ExitCode::SUCCESS
            }
            Err(code) => code,
        },
    }
}
