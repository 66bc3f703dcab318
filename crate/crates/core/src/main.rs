use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use shiftlab::harness::{emit_report, reproduce, run_config, ExperimentConfig, Format, Task, Theorem};

/// Entropy, independence and shattering experiments for shifts on N, N^2 and trees.
///
/// Exit status: 0 when every assertion passes, 1 when one fails, 2 on error.
/// SHIFTLAB_CAP overrides the enumeration cap.
#[derive(Parser)]
#[command(name = "shiftlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON config.
    Run {
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a reproduction script.
    Reproduce {
        #[arg(value_enum)]
        theorem: Theorem,
        /// Main depth of the script.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn execute(command: Command) -> shiftlab::Result<bool> {
    let (report, format, output) = match command {
        Command::Run { config, format, output } => {
            let cfg = ExperimentConfig::from_file(&config)?;
            (run_config(&cfg)?, format, output)
        }
        Command::Reproduce { theorem, depth, format, output } => {
            let cfg = ExperimentConfig {
                task: Task::Reproduce { theorem, depth },
                seed: 0,
            };
            (reproduce(theorem, depth, &cfg)?, format, output)
        }
    };
    emit_report(&report, format, output.as_deref())?;
    for a in report.assertions.iter().filter(|a| !a.passed) {
        eprintln!("assertion failed: {} ({}): {}", a.name, a.invariant, a.detail);
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = execute(cli.command);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
