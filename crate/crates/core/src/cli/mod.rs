//! Config-driven analyses, the built-in example catalog and regression diffs.

pub mod catalog;
pub mod config;
pub mod regress;
pub mod run;

use thiserror::Error;

pub use catalog::{example, list_examples, CatalogEntry};
pub use config::{AnalysisConfig, Task};
pub use regress::{regression, RegressionOutcome};
pub use run::{run, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("config error at {at}: {message}")]
    Config { at: String, message: String },
    #[error("computation error in {task}: {message}")]
    Computation { task: String, message: String },
    #[error("regression failed: {0}")]
    Regression(String),
}

impl CliError {
    pub fn config(at: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config { at: at.into(), message: message.into() }
    }

    pub fn computation(task: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Computation { task: task.into(), message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => 1,
            CliError::Computation { .. } => 2,
            CliError::Regression(_) => 3,
        }
    }
}

/// A config path, or the name of a built-in example.
pub fn load(source: &str) -> Result<AnalysisConfig, CliError> {
    if let Some(cfg) = example(source) {
        return Ok(cfg);
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| CliError::config(source, format!("not a built-in example and not readable: {e}")))?;
    AnalysisConfig::from_json(&text)
}
