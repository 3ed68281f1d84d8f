//! Experiment driver for the H⁻ variational eigensolver.
//!
//! The binary is a thin argument parser over this library so the same
//! entry points can be exercised from tests.

mod compare;
mod config;
mod preset;
mod reference;
mod report;
mod run;

use std::io;

use hminus_core::Error as CoreError;

pub use compare::{compare_optimizers, render_comparison, ComparisonRow};
pub use config::ExperimentConfig;
pub use preset::{run_preset, PresetReport, PresetRun, PRESETS};
pub use reference::{reference_table, ReferenceRow, ReferenceTable};
pub use report::{render_svg, write_outputs, write_trace_csv};
pub use run::{run_vqe, restart_seed, RestartSummary, RunOutcome, Summary};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("non-finite energy: {0}")]
    Numerical(String),
    #[error(transparent)]
    Core(CoreError),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NonFiniteObjective(v) => CliError::Numerical(format!("objective returned {v}")),
            CoreError::InvalidConfig(_)
            | CoreError::NonDiagonalTerm(_)
            | CoreError::ParameterCount { .. }
            | CoreError::Parse { .. }
            | CoreError::ModeOutOfRange { .. }
            | CoreError::TooWide { .. }
            | CoreError::NonHermitian { .. } => CliError::Usage(e.to_string()),
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    pub fn io(context: impl Into<String>, source: io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }

    /// 2 for usage errors, 3 for numerical failure, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
