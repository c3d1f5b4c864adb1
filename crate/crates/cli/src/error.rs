use std::fmt;

use diophant_core::Error;

pub enum CliError {
    Usage(String),
    Core(Error),
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(Error::Domain(_) | Error::DegenerateFit(_)) => 1,
            CliError::Core(Error::PrecisionExhausted(_) | Error::DivisionByZero) => 2,
            CliError::Core(Error::ResourceCap { .. }) => 3,
            CliError::Output(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Output(msg) => write!(f, "output error: {msg}"),
        }
    }
}
