use thiserror::Error;

/// Errors raised by matrix, state, channel and uncertainty computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {op} on {lhs:?} and {rhs:?}")]
    DimensionMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("entry count {got} does not match shape {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, got: usize },

    #[error("not Hermitian (residual {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    NotUnitTrace(f64),

    #[error("not positive semidefinite (min eigenvalue {0:e})")]
    NotPositiveSemidefinite(f64),

    #[error("not unitary (residual {0:e})")]
    NotUnitary(f64),

    #[error("Kraus operators are not trace preserving (residual {0:e})")]
    NotTracePreserving(f64),

    #[error("Bloch vector has length {0} > 1")]
    BlochVectorTooLong(f64),

    #[error("parameter {name} = {value} out of range")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("Hermitian eigensolver did not converge")]
    ConvergenceFailure,

    #[error("internal consistency check failed for {quantity}: {value:e}")]
    InternalConsistency { quantity: &'static str, value: f64 },

    #[error("no sampled state has a nonzero denominator")]
    NoFeasibleSample,

    #[error("trial {trial}: generating inputs failed: {message}")]
    GenerationFailure { trial: u64, message: String },

    #[error("unknown property {0:?}")]
    UnknownProperty(String),
}

pub type Result<T> = std::result::Result<T, Error>;
