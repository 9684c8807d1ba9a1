//! Command-line front end for the `cotan` library: value queries, scans,
//! plot-ready tables, timings and the acceptance suite.
//!
//! Every run starts with a schema line `# cotan-rh v1 <command> <hash>` and
//! an echo of its configuration, where `<hash>` is the SHA-256 of that echo.
//! CSV output prints reals with 17 significant digits; JSON output wraps the
//! rows in an object carrying the same header and configuration.

pub mod accept;
pub mod commands;
pub mod config;
pub mod table;

use serde_json::{json, Value};
use thiserror::Error;

pub use config::{C0Method, Command, DnKind, Format, Precision, RunConfig, Suite};
pub use table::{Cell, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] cotan::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// `2` for rejected input, `1` for failures during a valid run.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(e) => match e {
                cotan::Error::DenominatorTooSmall { .. }
                | cotan::Error::NotCoprime { .. }
                | cotan::Error::Domain { .. }
                | cotan::Error::TooLarge { .. }
                | cotan::Error::InvalidParameter { .. }
                | cotan::Error::EmptyStrip { .. } => 2,
                _ => 1,
            },
            CliError::Io(_) => 1,
        }
    }
}

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// A command result before rendering.
#[derive(Debug, Clone)]
pub enum Body {
    Rows(Table),
    /// A document with a tabular view for CSV output.
    Document { value: Value, rows: Table },
}

/// Rendered output and whether the run counts as a failure.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub failed: bool,
}

pub fn render(cfg: &RunConfig, body: &Body) -> String {
    match cfg.format {
        Format::Csv => {
            let rows = match body {
                Body::Rows(t) => t,
                Body::Document { rows, .. } => rows,
            };
            format!("{}\n# config {}\n{}", cfg.schema_line(), cfg.canonical_json(), rows.to_csv())
        }
        Format::Json => {
            let payload = match body {
                Body::Rows(t) => t.to_json(),
                Body::Document { value, .. } => value.clone(),
            };
            let config: Value = serde_json::from_str(&cfg.canonical_json()).expect("config is JSON");
            let doc = json!({ "header": cfg.schema_line(), "config": config, "result": payload });
            let mut s = serde_json::to_string_pretty(&doc).expect("plain document");
            s.push('\n');
            s
        }
    }
}

/// Validates the configuration, runs the command and renders the result.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.precision == Precision::Extended {
        return Err(usage("extended precision is not available in this build; use --precision double"));
    }
    let (body, failed) = commands::dispatch(cfg)?;
    Ok(Outcome { text: render(cfg, &body), failed })
}
