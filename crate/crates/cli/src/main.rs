use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use cotan_cli::{run, CliError, Command, Format, Precision, RunConfig};

/// Cotangent sums, reciprocity, moment statistics and Nyman–Beurling
/// distances.
///
/// Output starts with `# cotan-rh v1 <command> <hash>` and `# config <json>`
/// in CSV mode; JSON mode returns an object with `header`, `config` and
/// `result`. Reals are printed with 17 significant digits. Exit status is 0 on
/// success, 1 when the acceptance suite fails and 2 on invalid input.
/// COTAN_THREADS caps the worker threads.
#[derive(Debug, Parser)]
#[command(name = "cotan-rh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// csv (default) or json; bench and accept default to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Precision::Double)]
    precision: Precision,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("COTAN_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("COTAN_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.unwrap_or_else(|| cli.command.default_format());
    let cfg = RunConfig { command: cli.command, precision: cli.precision, seed: cli.seed, format, output: cli.output };
    let result = configure_threads().and_then(|_| run(&cfg)).and_then(|out| {
        match &cfg.output {
            Some(path) => fs::write(path, &out.text)?,
            None => std::io::stdout().write_all(out.text.as_bytes())?,
        }
        Ok(out.failed)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("cotan-rh: acceptance suite failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("cotan-rh: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
