use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use workbench::cli::{self, CliError};

#[derive(Parser)]
#[command(name = "workbench", version, about = "Graded down-up algebras: normal forms, gradings, covariants and pertinency")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a config file or built-in example.
    Run {
        config: String,
        /// Override the truncation degree.
        #[arg(long)]
        maxdeg: Option<usize>,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the built-in examples.
    Examples,
    /// Run a config and compare against its expected-results block.
    Regress {
        config: String,
        #[arg(long)]
        maxdeg: Option<usize>,
    },
}

fn configure_threads() {
    let Ok(v) = std::env::var("WORKBENCH_THREADS") else {
        return;
    };
    match v.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("ignoring WORKBENCH_THREADS={v:?}: expected a positive integer"),
    }
}

fn load(source: &str, maxdeg: Option<usize>) -> Result<cli::AnalysisConfig, CliError> {
    let mut cfg = cli::load(source)?;
    if let Some(n) = maxdeg {
        cfg.truncation = n;
    }
    cfg.check()?;
    Ok(cfg)
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run { config, maxdeg, out } => {
            let cfg = load(&config, maxdeg)?;
            let report = cli::run(&cfg)?;
            let json = serde_json::to_string_pretty(&report.json).expect("report serializes") + "\n";
            match out {
                Some(path) => {
                    std::fs::write(&path, json)
                        .map_err(|e| CliError::computation("output", format!("{}: {e}", path.display())))?;
                    print!("{}", report.text);
                }
                None => {
                    print!("{json}");
                    eprint!("{}", report.text);
                }
            }
            Ok(())
        }
        Command::Examples => {
            for e in cli::list_examples() {
                println!("{:<18} {}", e.name, e.description);
            }
            Ok(())
        }
        Command::Regress { config, maxdeg } => {
            let cfg = load(&config, maxdeg)?;
            let report = cli::run(&cfg)?;
            let outcome = cli::regression(&cfg.expected.clone().unwrap_or_default(), &report);
            eprint!("{}", report.text);
            if outcome.passed() {
                println!("regression passed: {}", cfg.name.as_deref().unwrap_or(&config));
                Ok(())
            } else {
                for d in &outcome.diffs {
                    println!("  {d}");
                }
                Err(CliError::Regression(format!("{} difference(s)", outcome.diffs.len())))
            }
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    match execute(Args::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
