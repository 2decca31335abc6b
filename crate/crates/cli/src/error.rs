use discrete_orthopoly::io::IoError;
use discrete_orthopoly::orthogonalize::OrthoError;
use discrete_orthopoly::recurrence::RecurrenceError;
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Input(String),
    #[error("no orthogonal polynomials: moment matrix M_{0} is singular")]
    Existence(usize),
    #[error("rank condition fails at degree {0}")]
    RankDeficient(usize),
    #[error("{0}")]
    Exhausted(String),
    #[error("verification failed")]
    VerifyFailed,
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Input(_) => 2,
            CliError::Existence(_) => 3,
            CliError::RankDeficient(_) => 4,
            CliError::Exhausted(_) => 5,
            CliError::VerifyFailed | CliError::Internal(_) => 1,
        })
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<OrthoError> for CliError {
    fn from(e: OrthoError) -> Self {
        match e {
            OrthoError::ExistenceFailure(k) => CliError::Existence(k),
            OrthoError::ZeroWeight(_)
            | OrthoError::LengthMismatch { .. }
            | OrthoError::BlockSize { .. }
            | OrthoError::NotOnStaircase { .. }
            | OrthoError::DimensionMismatch { .. }
            | OrthoError::NotPositive => CliError::Input(e.to_string()),
            OrthoError::ZeroPolynomial => CliError::Internal(e.to_string()),
        }
    }
}

impl From<RecurrenceError> for CliError {
    fn from(e: RecurrenceError) -> Self {
        match e {
            RecurrenceError::RankDeficient(k) => CliError::RankDeficient(k),
            RecurrenceError::ExhaustedAttempts { .. } => CliError::Exhausted(e.to_string()),
            RecurrenceError::ShapeMismatch(_)
            | RecurrenceError::MissingTopBlocks
            | RecurrenceError::CoincidentCoordinate(_)
            | RecurrenceError::DegreeOutOfRange { .. }
            | RecurrenceError::CoordinateOutOfRange { .. } => CliError::Input(e.to_string()),
            RecurrenceError::Ortho(inner) => inner.into(),
            RecurrenceError::SingularGram(_) | RecurrenceError::Staircase(_) => CliError::Internal(e.to_string()),
        }
    }
}
