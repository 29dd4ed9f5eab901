use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use skewverify::constants::Constants;
use skewverify::verifier::{list_checks, ConstantsOverride, Settings, Verifier, VerifierError};

/// Exact verifier for the twisted Laurent series division algebra D((x, σ̃)).
#[derive(Parser, Debug)]
#[command(name = "skewverify", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Global seed; every check derives its own stream from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Samples per randomized check.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,

    /// Relative precision (number of x-adic coefficients) of random series.
    #[arg(long, global = true, default_value_t = 12)]
    precision: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// JSON file overriding σ̃(θ), λ and/or d.
    #[arg(long, global = true, value_name = "PATH")]
    constants: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the registered checks and what each verifies.
    List,
    /// Run one check.
    Check { name: String },
    /// Run every check.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn run(cli: Cli) -> Result<ExitCode, VerifierError> {
    if let Command::List = cli.command {
        let checks = list_checks();
        match cli.format {
            Format::Text => {
                let width = checks.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
                for (name, anchor) in checks {
                    println!("{name:<width$}  {anchor}");
                }
            }
            Format::Json => {
                let records: Vec<_> = checks
                    .into_iter()
                    .map(|(name, anchor)| serde_json::json!({ "name": name, "anchor": anchor }))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&records).expect("serializable"));
            }
        }
        return Ok(ExitCode::SUCCESS);
    }

    let constants = match &cli.constants {
        Some(path) => ConstantsOverride::load(path)?.apply(&Constants::standard()),
        None => Constants::standard(),
    };
    let settings = Settings {
        seed: cli.seed,
        trials: cli.trials,
        precision: cli.precision,
    };
    let verifier = Verifier::new(settings, constants)?;
    let report = match &cli.command {
        Command::Check { name } => {
            let result = verifier.run_check(name)?;
            verifier.report(vec![result])
        }
        Command::All => verifier.run_all(),
        Command::List => unreachable!("handled above"),
    };
    match cli.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("skewverify: {e}");
            ExitCode::from(2)
        }
    }
}
