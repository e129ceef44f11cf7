use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use vortexlab::sweep::{sweep_file, SweepSpec};
use vortexlab::verify::verify;
use vortexlab::{run_file, CliError};

#[derive(Parser)]
#[command(name = "vortexlab", version, about = "Vortex filament models: run scenarios, sweep parameters, verify invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write timeseries.csv and summary.json.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a scenario template over a range of one parameter.
    Sweep {
        #[arg(long)]
        scenario: PathBuf,
        /// Dotted path into the scenario, e.g. `params.alpha`.
        #[arg(long)]
        param: String,
        #[arg(long, allow_negative_numbers = true)]
        min: f64,
        #[arg(long, allow_negative_numbers = true)]
        max: f64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn seed() -> Result<u64, CliError> {
    match std::env::var("SEED") {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("SEED must be an unsigned integer, got `{s}`"))),
        Err(_) => Ok(0),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { scenario, out } => run_file(&scenario, &out).map(|s| {
            println!("{}", serde_json::to_string_pretty(&s).unwrap_or_default());
            s.exit_code()
        }),
        Command::Verify { suite, format } => seed().and_then(|seed| verify(&suite, seed)).map(|r| {
            match format {
                Format::Text => print!("{}", r.text()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&r).unwrap_or_default()),
            }
            if r.ok() { 0 } else { 1 }
        }),
        Command::Sweep { scenario, param, min, max, count, out } => {
            sweep_file(&scenario, &SweepSpec { param, min, max, count }, &out).map(|rows| {
                println!("{} runs written to {}", rows.len(), out.join("sweep.csv").display());
                0
            })
        }
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
