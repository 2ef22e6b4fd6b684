use std::fmt;

use netlsd::Error;

/// Exit code 2 for bad arguments, 1 for everything that went wrong with data.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Data(_) => 1,
        }
    }

    pub fn data(context: impl fmt::Display, err: impl fmt::Display) -> Self {
        Failure::Data(format!("{context}: {err}"))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Data(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::InvalidArgument(_)
            | Error::Unsupported(_)
            | Error::Incompatible(_)
            | Error::UnknownId(_)
            | Error::TooLargeForDense { .. } => Failure::Usage(err.to_string()),
            _ => Failure::Data(err.to_string()),
        }
    }
}
