use thiserror::Error;

use crate::ring::GradeVector;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variable `{name}`")]
    UnknownVariable { name: String },

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("negative exponent at byte {pos}")]
    NegativeExponent { pos: usize },

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("ring has no slicing channel with positive variable degrees")]
    NoSlicingChannel,

    #[error("inhomogeneous input: {0}")]
    InhomogeneousInput(String),

    #[error("curvature mismatch: {product} differs from W*id at entry ({row}, {col})")]
    CurvatureMismatch {
        product: String,
        row: usize,
        col: usize,
    },

    #[error("homogeneity violation in {matrix} at entry ({row}, {col}): expected degree {expected}")]
    HomogeneityViolation {
        matrix: String,
        row: usize,
        col: usize,
        expected: GradeVector,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("morphism is not closed")]
    NotClosed,

    #[error("parity mismatch: {0}")]
    ParityMismatch(String),

    #[error("factorizations have different potentials")]
    PotentialMismatch,

    #[error("contraction of section and cosection does not reproduce the potential")]
    ContractionMismatch,

    #[error("base module mentions fiber variable `{name}`")]
    VariableLeak { name: String },

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("filtration too shallow: term {term} has weight {weight} below order {order}")]
    FiltrationTooShallow {
        term: String,
        weight: u64,
        order: u64,
    },

    #[error("slice is infinite-dimensional")]
    SliceInfinite,

    #[error("Hom differential does not square to zero; inputs are not factorizations of one potential")]
    NotAComplex,
}
