use std::process::ExitCode;

use qvint_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl CliError {
    /// 1 check failure, 2 usage error, 3 resource cap.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(CoreError::Resource { .. }) => 3,
            CliError::Core(CoreError::Parameter(_))
            | CliError::Core(CoreError::DivisionByZero)
            | CliError::Core(CoreError::Undefined(_)) => 2,
            CliError::Core(CoreError::Contract(_)) | CliError::ChecksFailed(_) => 1,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 2,
        }
    }

    pub fn into_exit(self) -> ExitCode {
        ExitCode::from(self.exit_code())
    }
}
