use thiserror::Error;

use crate::report::VerificationReport;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("value {value} cannot be represented in {field}")]
    NotRepresentable { value: String, field: String },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A construction refused to emit a structure because a check failed.
    #[error("{stage} failed verification:\n{report}")]
    Verification {
        stage: String,
        report: VerificationReport,
    },
}

impl Error {
    pub(crate) fn verification(stage: impl Into<String>, report: VerificationReport) -> Self {
        Error::Verification {
            stage: stage.into(),
            report,
        }
    }

    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Turns a non-empty report into a `Verification` error.
pub(crate) fn ensure_passed(stage: &str, report: VerificationReport) -> Result<VerificationReport> {
    if report.passed() {
        Ok(report)
    } else {
        Err(Error::verification(stage, report))
    }
}
