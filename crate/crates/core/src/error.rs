use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("arity violation: {0}")]
    Arity(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown operator at position {pos}: {op:?}")]
    UnknownOperator { pos: usize, op: String },

    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error("coordinate out of [0,1]: {0}")]
    OutOfCube(String),

    #[error("point outside the domain")]
    OutsideDomain,

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("invalid algebra: {0}")]
    Algebra(String),

    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),

    #[error("invalid tangent data: {0}")]
    Tangent(String),

    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// True for errors caused by malformed input rather than by the
    /// mathematics of well-formed input.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::UnknownOperator { .. }
                | Error::InvalidRational(_)
                | Error::Input(_)
        )
    }
}
