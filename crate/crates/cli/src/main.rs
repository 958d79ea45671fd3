use std::path::PathBuf;
use std::process::ExitCode;

use algebroid_forge::frontend::{parse, run, RunConfig};
use algebroid_forge::{Error, RationalFunction};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "forge", version, about = "Exact verifier for Lie algebroid and Courant algebroid identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Runs every task of a structure file.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long = "max-degree", default_value_t = 2)]
        max_degree: u32,
        /// Constant in e∘e = κ ρ* d⟨e,e⟩.
        #[arg(long, default_value = "1/2", value_parser = ["1", "1/2"])]
        kappa: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Records,
}

fn main() -> ExitCode {
    let Command::Check {
        file,
        seed,
        samples,
        max_degree,
        kappa,
        format,
    } = Cli::parse().command;
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let structure = match parse(&text) {
        Ok(s) => s,
        Err(e) => {
            let kind = match e {
                Error::Parse { .. } => "parse error",
                _ => "semantic error",
            };
            eprintln!("{}: {kind}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let config = RunConfig {
        seed,
        samples,
        max_degree,
        kappa: RationalFunction::parse(&kappa, &[]).expect("validated by clap"),
    };
    let reports = run(&structure, &config);
    for r in &reports {
        match format {
            Format::Text => print!("{r}"),
            Format::Records => {
                for line in r.records() {
                    println!("{line}");
                }
            }
        }
    }
    if reports.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
