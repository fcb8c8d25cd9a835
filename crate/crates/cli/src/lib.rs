//! Library side of the `tvalues` command: rendering, verification suites and
//! numeric evaluation. `main.rs` only parses flags and maps errors to exit codes.

pub mod eval;
pub mod render;
pub mod verify;

use std::str::FromStr;

pub use eval::{evaluate, Evaluation};
pub use render::{render_coeffs, render_table, table_rows, RationalRepr, TableRow};
pub use verify::{run_suite, Bounds, Case, Report, Suite, Summary};

/// Output format for `table` and `coeffs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Latex,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "latex" => Ok(Format::Latex),
            other => Err(CliError::Usage(format!(
                "unknown format {other:?} (expected json, csv or latex)"
            ))),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] tvalues::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}
