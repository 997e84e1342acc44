use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("input vectors are linearly dependent")]
    DependentVectors,

    #[error("matrix is singular")]
    Singular,

    #[error("not a boundary format: {0}")]
    NotBoundaryFormat(String),

    #[error("weight scale violates the parity rule: {0}")]
    ParityViolation(String),

    #[error("enumeration guard exceeded: {count} admissible paths (limit {limit})")]
    EnumerationGuard { count: u128, limit: u128 },

    #[error("operation needs a 3-way tensor, found {0} factors")]
    NotThreeWay(usize),

    #[error("tensor is degenerate (hyperdeterminant certificate vanishes)")]
    DegenerateTensor,

    #[error("hyperplanes are not in normal crossing: subset {0:?} is dependent")]
    NotNormalCrossing(Vec<usize>),

    #[error("hyperplane {0} is not an unstable hyperplane")]
    NonMemberHyperplane(String),

    #[error("zero vector does not define a hyperplane")]
    ZeroHyperplane,

    #[error("ideal is not zero-dimensional (affine dimension {0})")]
    PositiveDimensional(i64),

    #[error("minor size {size} exceeds matrix shape {rows}x{cols}")]
    MinorSizeTooLarge { size: usize, rows: usize, cols: usize },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("prime unsuitable for this input: {0}")]
    BadPrime(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A structural guarantee failed at run time; the message names it.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    /// Errors that describe the mathematical input rather than its encoding.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Parse(_))
    }
}
