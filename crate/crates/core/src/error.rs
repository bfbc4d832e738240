use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: String, right: String },

    #[error("invalid signature ({p}, {q}): p + q must be at least 1")]
    InvalidSignature { p: usize, q: usize },

    #[error("vector is not invertible (zero or isotropic)")]
    NotInvertible,

    #[error("grade of the zero multivector is undefined")]
    ZeroMultivector,

    #[error("multivector has a non-vector component on blade {blade}")]
    NotAVector { blade: String },

    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("basis is not orthogonal with non-isotropic vectors: {0}")]
    NotOrthogonalBasis(String),

    #[error("matrix is not an isometry of the form (max |M^T G M - G| entry = {max_deviation})")]
    NotOrthogonalMap { max_deviation: String },

    #[error("matrix is singular")]
    Singular,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    InvariantBreach(String),
}
