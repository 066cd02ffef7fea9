use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension must be even and positive, got {0}")]
    OddDimension(usize),
    #[error("invalid multi-index: {0}")]
    InvalidIndex(String),
    #[error("d∘d ≠ 0 on degree {degree}: d(d({form})) ≠ 0")]
    Jacobi { degree: usize, form: String },
    #[error("degree overflow: {0} + {1} exceeds dimension {2}")]
    DegreeOverflow(usize, usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("form is not closed: {0}")]
    NotClosed(String),
    #[error("form is degenerate: {0}")]
    Degenerate(String),
    #[error("wrong degree: expected {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("volume form normalization mismatch: v²·det(G) = {0}, expected 1")]
    VolumeNormalization(String),
    #[error("not an almost complex structure: {0}")]
    InvalidStructure(String),
    #[error("unexpected bidegree ({0}, {1}) in the decomposition of d")]
    UnexpectedBidegree(i64, i64),
    #[error("d^c computed from bidegree components has imaginary residue")]
    ImaginaryResidue,
    #[error("numerical construction failed, residual {0:e}")]
    Convergence(f64),
    #[error("no symplectic form found in ker d² after {0} draws")]
    NoSymplecticForm(usize),
    #[error("not almost-Kähler: {0}")]
    NotAlmostKahler(String),
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
