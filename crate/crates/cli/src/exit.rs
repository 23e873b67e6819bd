use std::fmt;

use skewinfo::Error;

/// Process exit statuses. These are the only machine-readable success signal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Exit {
    Ok = 0,
    /// A bound check, invariant or campaign failed.
    Fail = 1,
    Parse = 2,
    Validation = 3,
    Arity = 4,
    Dimension = 5,
    SweepInapplicable = 6,
    UnknownProperty = 7,
    DegenerateDenominator = 8,
    /// Reading or writing a file failed.
    Io = 9,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

/// A diagnostic paired with the status the process should exit with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl CliError {
    pub fn new(exit: Exit, message: impl Into<String>) -> Self {
        Self {
            exit,
            message: message.into(),
        }
    }

    pub fn parse(path: &str, message: impl fmt::Display) -> Self {
        Self::new(Exit::Parse, format!("{path}: {message}"))
    }

    pub fn validation(path: &str, message: impl fmt::Display) -> Self {
        Self::new(Exit::Validation, format!("{path}: {message}"))
    }

    /// Maps a library error raised while working on `path`.
    pub fn from_core(path: &str, e: Error) -> Self {
        let exit = match &e {
            Error::DimensionMismatch { .. } => Exit::Dimension,
            Error::NoFeasibleSample => Exit::DegenerateDenominator,
            Error::UnknownProperty(_) => Exit::UnknownProperty,
            Error::InternalConsistency { .. } | Error::ConvergenceFailure => Exit::Fail,
            _ => Exit::Validation,
        };
        Self::new(exit, format!("{path}: {e}"))
    }

    pub fn io(path: &str, e: std::io::Error) -> Self {
        Self::new(Exit::Io, format!("{path}: {e}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = std::result::Result<T, CliError>;
