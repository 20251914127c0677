use lctlab::arcs::ArcsError;
use lctlab::equiv::EquivError;
use lctlab::expsum::ExpSumError;
use lctlab::jacobian::JacobianError;
use lctlab::lct::LctError;
use lctlab::polyring::{ParseError, PolyError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    /// A computation that should succeed on valid input did not.
    #[error("{0}")]
    Failed(String),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(..) => crate::EXIT_USAGE,
            CliError::Budget(_) => crate::EXIT_BUDGET,
            CliError::Failed(_) => crate::EXIT_CHECK_FAILED,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(format!("cannot parse polynomial: {e}"))
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<JacobianError> for CliError {
    fn from(e: JacobianError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<LctError> for CliError {
    fn from(e: LctError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ArcsError> for CliError {
    fn from(e: ArcsError) -> Self {
        match e {
            ArcsError::Budget(b) => CliError::Budget(b.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ExpSumError> for CliError {
    fn from(e: ExpSumError) -> Self {
        match e {
            ExpSumError::Budget(b) => CliError::Budget(b.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<EquivError> for CliError {
    fn from(e: EquivError) -> Self {
        match e {
            EquivError::RankDrop { .. } | EquivError::NoProgress { .. } | EquivError::ResidualNotInIdeal { .. } => {
                CliError::Failed(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}
