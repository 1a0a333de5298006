use crate::algebra::Signature;

/// Errors produced by the algebra kernel and its front ends.
#[derive(Debug, Clone, thiserror::Error)]
pub enum GaError {
    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(Signature, Signature),
    #[error("coefficient array of length {got} does not match algebra dimension {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial gcd of two zero polynomials")]
    GcdOfZeros,
    #[error("invalid numeric literal `{0}`")]
    BadNumber(String),
    #[error("multivector not invertible")]
    NotInvertible,
    #[error("multivector representation ill conditioned (condition estimate {0:.3e})")]
    IllConditioned(f64),
    #[error("matrix of multivectors not invertible")]
    MatrixNotInvertible,
    #[error("matrix dimensions incompatible: {0}x{1} vs {2}x{3}")]
    MatrixShape(usize, usize, usize, usize),
    #[error("indefinite norm: grade-0 part of A*reverse(A) is negative")]
    IndefiniteNorm,
    #[error("zero norm")]
    ZeroNorm,
    #[error("pseudoscalar is degenerate; use the Hodge dual")]
    DegeneratePseudoscalar,
    #[error("Hodge dual requires a [n,0,1] signature")]
    NotPga,
    #[error("operation requires a conformal model")]
    NotCga,
    #[error("grade {k} out of range for dimension {n}")]
    GradeOutOfRange { k: usize, n: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(usize),
    #[error("unknown basis element `{0}`")]
    UnknownBasis(String),
    #[error("defective representation: eigenvector matrix condition {0:.3e}")]
    DefectiveRepresentation(f64),
    #[error("branch violation: {func} evaluated at eigenvalue on a branch cut ({value})")]
    BranchViolation { func: &'static str, value: String },
    #[error("non-real result: imaginary residue {0:.3e} above tolerance")]
    NonRealResult(f64),
    #[error("ideal point: zero origin coefficient, cannot pull back")]
    IdealPoint,
    #[error("imaginary point pair: B*reverse(B) = {0}")]
    ImaginaryPointPair(f64),
    #[error("not a conformal entity")]
    NotConformalEntity,
    #[error("operand is not a Euclidean vector")]
    NotEuclideanVector,
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("{func} requires the float scalar domain")]
    FloatDomainRequired { func: String },
    #[error("evaluation error in `{context}`: {source}")]
    Eval {
        context: String,
        #[source]
        source: Box<GaError>,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unreachable target: {0}")]
    Unreachable(String),
}

impl GaError {
    pub fn parse(col: usize, msg: impl Into<String>) -> Self {
        GaError::Parse { col, msg: msg.into() }
    }

    /// True for errors raised by the expression tokenizer/parser (CLI exit code 2).
    pub fn is_parse(&self) -> bool {
        match self {
            GaError::Parse { .. } => true,
            GaError::Eval { source, .. } => source.is_parse(),
            _ => false,
        }
    }
}

pub type Result<T, E = GaError> = std::result::Result<T, E>;
