use thiserror::Error;

/// Errors raised by the exact and numerical pipelines.
///
/// Variants that name a falsified invariant (`NonPolynomialEntry`,
/// `OddPowerEntry`, `SingularDeterminant`, ...) are outcomes of the
/// verification itself rather than usage mistakes; callers should surface
/// them verbatim.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("size limit exceeded: {what} = {value} (max {max})")]
    SizeLimit {
        what: &'static str,
        value: usize,
        max: usize,
    },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("entry ({row}, {col}) is not homogeneous of degree {expected}")]
    DegreeMismatch {
        row: usize,
        col: usize,
        expected: i64,
    },
    #[error("zero input")]
    ZeroInput,
    #[error("multiplicity of {partition} is not an integer: {value}")]
    NonIntegralMultiplicity { partition: String, value: String },
    #[error("entry ({row}, {col}) is not a polynomial: {value}")]
    NonPolynomialEntry {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("entry ({row}, {col}) carries an odd power of t': {value}")]
    OddPowerEntry {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("determinant vanishes: {0}")]
    SingularDeterminant(String),
    #[error("determinant is not constant: {0}")]
    NonConstantDeterminant(String),
    #[error("exact division failed: {0}")]
    DivisionFailure(String),
    #[error("cokernel series {found} differs from psi = {expected}")]
    MismatchWithPsi { found: String, expected: String },
    #[error("equivariance fails for sigma = {sigma} at ({row}, {col}){graded}")]
    EquivarianceFailure {
        sigma: String,
        row: usize,
        col: usize,
        graded: String,
    },
    #[error("points {0} and {1} coincide")]
    CoincidentPoints(usize, usize),
    #[error("cross-cluster collision between x{0} and y{1}")]
    CrossClusterCollision(usize, usize),
    #[error("binary forms are numerically dependent (smallest singular value {0:e})")]
    DependentPolynomials(f64),
    #[error("collision limit did not converge (last step {0:e})")]
    NonConvergentLimit(f64),
    #[error("ambiguous fixed-point match for ordering {ordering}: best overlap {overlap}")]
    AmbiguousMatch { ordering: String, overlap: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
