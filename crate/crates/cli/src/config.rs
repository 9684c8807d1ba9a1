use std::path::PathBuf;

use clap::{Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Precision {
    Double,
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum C0Method {
    Naive,
    Fast,
    Asymptotic,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DnKind {
    Vn,
    Optimal,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Full,
    Quick,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Command {
    /// c₀(r/b) by one method, or all of them with their pairwise gaps.
    C0 {
        r: u64,
        b: u64,
        #[arg(long, value_enum, default_value_t = C0Method::Fast)]
        method: C0Method,
    },
    /// (r, c₀(r/b)) for every coprime r, optionally restricted to A0·b ≤ r ≤ A1·b.
    Ellipse {
        b: u64,
        #[arg(long, num_args = 2, value_names = ["A0", "A1"])]
        range: Option<Vec<f64>>,
    },
    /// Strip moments of c₀(r/b) over A0 < r/b < A1 against Monte Carlo H_k.
    Equidist {
        b: u64,
        a0: f64,
        a1: f64,
        k_max: u32,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
    /// Squared distance d²(N) for the V_N polynomial, the optimum, or both.
    Dn {
        n: usize,
        #[arg(long, value_enum, default_value_t = DnKind::Both)]
        kind: DnKind,
        /// Directory receiving the Gram matrix CSV and a JSON metadata file.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Median timings of the naive, fast and asymptotic evaluations.
    Bench {
        #[arg(required = true)]
        b_list: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        r: u64,
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
    /// Largest |c₀(r/b)| for r/b in [A0, A0 + b^(−C)].
    Max {
        b: u64,
        c: f64,
        a0: f64,
        #[arg(long)]
        omega: Option<f64>,
        /// Constant D of the reported margin M − (D/π)·b·log b.
        #[arg(long, default_value_t = 0.05)]
        d: f64,
    },
    /// Monte Carlo moments H_k, E_k of g/π and optional |g|^K ratios.
    Moments {
        k_max: u32,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// Comma-separated orders K for ∫|g|^K/Γ(K+1).
        #[arg(long, value_delimiter = ',')]
        abs: Vec<f64>,
    },
    /// Empirical distribution function of g on a uniform z grid.
    Cdf {
        #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
        z_min: f64,
        #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
        z_max: f64,
        #[arg(long, default_value_t = 61)]
        points: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
    /// Runs the acceptance suite and emits a pass/fail manifest.
    Accept {
        #[arg(value_enum, default_value_t = Suite::Full)]
        suite: Suite,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::C0 { .. } => "c0",
            Command::Ellipse { .. } => "ellipse",
            Command::Equidist { .. } => "equidist",
            Command::Dn { .. } => "dn",
            Command::Bench { .. } => "bench",
            Command::Max { .. } => "max",
            Command::Moments { .. } => "moments",
            Command::Cdf { .. } => "cdf",
            Command::Accept { .. } => "accept",
        }
    }

    pub fn default_format(&self) -> Format {
        match self {
            Command::Bench { .. } | Command::Accept { .. } => Format::Json,
            _ => Format::Csv,
        }
    }
}

/// Everything that determines the output bytes. The output path is not part
/// of it: the same run written to two files gives two identical files.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub precision: Precision,
    pub seed: u64,
    pub format: Format,
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("plain config")
    }

    /// Hex SHA-256 of the canonical JSON.
    pub fn hash(&self) -> String {
        Sha256::digest(self.canonical_json().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn schema_line(&self) -> String {
        format!("# cotan-rh v1 {} {}", self.command.name(), self.hash())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: u64, output: Option<&str>) -> RunConfig {
        RunConfig {
            command: Command::C0 { r: 1, b: 3, method: C0Method::All },
            precision: Precision::Double,
            seed,
            format: Format::Csv,
            output: output.map(PathBuf::from),
        }
    }

    #[test]
    fn hash_ignores_output_path() {
        assert_eq!(cfg(1, None).hash(), cfg(1, Some("/tmp/x.csv")).hash());
        assert_ne!(cfg(1, None).hash(), cfg(2, None).hash());
        assert_eq!(cfg(1, None).hash().len(), 64);
    }

    #[test]
    fn schema_line_names_command() {
        let line = cfg(7, None).schema_line();
        assert!(line.starts_with("# cotan-rh v1 c0 "));
        assert!(cfg(7, None).canonical_json().contains("\"name\":\"c0\""));
    }
}
