use chainpoly_core::asymptotics::AsymptoticsError;
use chainpoly_core::oracle::OracleError;
use chainpoly_core::{ChainError, ExtNumError, ParseError, TriPolyError};
use thiserror::Error;

/// Failure of a command, mapped onto the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Mismatch(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::CapExceeded { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ExtNumError> for CliError {
    fn from(e: ExtNumError) -> Self {
        match e {
            ExtNumError::ZeroRoot => CliError::Usage(e.to_string()),
            _ => CliError::Resource(e.to_string()),
        }
    }
}

impl From<TriPolyError> for CliError {
    fn from(e: TriPolyError) -> Self {
        match e {
            TriPolyError::Numeric(n) => n.into(),
            TriPolyError::CapExceeded { .. } => CliError::Resource(e.to_string()),
            TriPolyError::Chain(c) => c.into(),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::CapExceeded { .. } => CliError::Resource(e.to_string()),
            OracleError::Chain(c) => c.into(),
            OracleError::RealizationFailed(_) => CliError::Mismatch(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<AsymptoticsError> for CliError {
    fn from(e: AsymptoticsError) -> Self {
        match e {
            AsymptoticsError::TriPoly(t) => t.into(),
            AsymptoticsError::Numeric(n) => n.into(),
            AsymptoticsError::InvalidInput(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
