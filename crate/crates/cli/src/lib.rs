//! Command-line front end for `equimatch`: payload builders, verification
//! suites, the result cache and the exit-code contract.

pub mod cache;
pub mod commands;
pub mod encode;
pub mod report;

use std::fmt;

use equimatch::conventions::Conventions;
use serde_json::Value;

pub use cache::{Cache, CACHE_ENV};
pub use report::{Check, Status, VerificationReport};

/// Failure classes with their process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// A checked invariant does not hold (exit 1).
    Falsified(String),
    /// Bad arguments or input files (exit 2).
    Usage(String),
    /// Requested size beyond what is supported (exit 3).
    Limit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Falsified(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Limit(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Falsified(m) => write!(f, "falsified: {m}"),
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Limit(m) => write!(f, "limit: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<equimatch::Error> for CliError {
    fn from(e: equimatch::Error) -> Self {
        use equimatch::Error as E;
        match e {
            E::SizeLimit { .. } => CliError::Limit(e.to_string()),
            E::InvalidInput(_) | E::CoincidentPoints(..) | E::SizeMismatch(_) => CliError::Usage(e.to_string()),
            other => CliError::Falsified(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Theorem1,
    Theorem2,
    Theorem3,
    Map,
    Characters,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Everything a command needs; identical configs give identical payloads.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub conventions: Conventions,
    pub ktheory: bool,
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub cache: Option<Cache>,
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: None,
            r: None,
            s: None,
            conventions: Conventions::default(),
            ktheory: false,
            seed: 0,
            samples: 100,
            tolerance: 1e-8,
            cache: None,
            timing: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(CliError::Usage(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.samples == 0 {
            return Err(CliError::Usage("samples must be positive".into()));
        }
        if self.n == Some(0) {
            return Err(CliError::Usage("n must be positive".into()));
        }
        Ok(())
    }

    pub fn require_n(&self) -> Result<usize, CliError> {
        self.n.ok_or_else(|| CliError::Usage("--n is required".into()))
    }

    pub fn require_n_at_most(&self, max: usize) -> Result<usize, CliError> {
        let n = self.require_n()?;
        if n > max {
            return Err(CliError::Limit(format!("n = {n} exceeds {max} for this command")));
        }
        Ok(n)
    }
}

/// A command result in both output formats.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: Value,
    pub csv: Vec<Vec<String>>,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => encode::to_string(&self.json),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in &self.csv {
                    w.write_record(row).expect("in-memory writes succeed");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush succeeds")).expect("csv output is utf-8")
            }
        }
    }
}
