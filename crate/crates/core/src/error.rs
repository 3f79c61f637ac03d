//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VoakError {
    #[error("generator index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: u32, rank: u32 },

    #[error("element does not belong to this instance: {reason}")]
    MixedInstance { reason: String },

    #[error("operation requires a homogeneous element")]
    NonHomogeneous,

    #[error("element not in ambient span (monomial {monomial} outside ambient)")]
    NotInAmbientSpan { monomial: String },

    #[error("weight {weight} exceeds cutoff {cutoff}")]
    WeightOverflow { weight: u32, cutoff: u32 },

    #[error("invalid algebra data: {0}")]
    InvalidStructure(String),

    #[error("operation not supported for this instance kind: {0}")]
    UnsupportedOperation(String),

    #[error("irrep tables do not match")]
    TableMismatch,

    #[error("covers do not match")]
    CoverMismatch,

    #[error("cover map is not simplicial: {0}")]
    NonSimplicialMap(String),

    #[error("bilinear form is degenerate")]
    DegenerateForm,

    #[error("partition weights at point {point} have square sum {sum}, expected 1")]
    WeightsNotUnit { point: String, sum: String },

    #[error("matrix is not invertible")]
    NonInvertible,

    #[error("missing lowest-weight dimension data for irrep {0}")]
    MissingOmegaData(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, VoakError>;
