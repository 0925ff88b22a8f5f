use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op}: input is not homogeneous in the wedge degree")]
    MixedDegree { op: &'static str },

    #[error("normal_form: input is not a cocycle")]
    NotACocycle,

    #[error("invalid class: {0}")]
    InvalidClass(String),

    #[error("reconstruct_potential: pair is not divergence free")]
    NotIntegrable,

    #[error("{op}: classes have different degrees ({left} and {right})")]
    DegreeMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },

    #[error("{op}: target degree {degree} lies outside the complex")]
    DegreeOutOfRange { op: &'static str, degree: i32 },

    #[error("{op}: {message}")]
    Arity { op: &'static str, message: String },

    #[error(
        "transfer: a lower-order value is a raw residual, not a class, and cannot enter a word"
    )]
    RawEntry,

    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {line}:{column}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
