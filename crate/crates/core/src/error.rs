use thiserror::Error;

/// Errors raised by the belief-function engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BeliefError {
    #[error("frame size {0} is outside 1..={max}", max = crate::lattice::MAX_FRAME)]
    FrameSize(usize),
    #[error("frame labels are invalid: {0}")]
    Labels(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("vector length {0} is not 2^n for a supported frame")]
    LengthNotPowerOfTwo(usize),
    #[error("negative mass {value} at index {index}")]
    NegativeMass { index: usize, value: f64 },
    #[error("mass {value} at index {index} exceeds 1")]
    MassAboveOne { index: usize, value: f64 },
    #[error("non-finite mass at index {index}")]
    NonFinite { index: usize },
    #[error("masses sum to {sum}, expected 1")]
    SumMismatch { sum: f64 },
    #[error("frame mismatch: {left} vs {right} elements")]
    FrameMismatch { left: usize, right: usize },
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("not isopignistic: pignistic vectors differ by {max_diff}")]
    NotIsopignistic { max_diff: f64 },
    #[error("unreachable target at subset {subset}")]
    UnreachableTarget { subset: u32 },
    #[error("not a belief function: {0}")]
    NotBeliefFunction(String),
    #[error("inconsistent isopignistic function: {0}")]
    InconsistentIsoFunction(String),
    #[error("weights do not form a belief function: {0}")]
    InvalidWeights(String),
    #[error("decomposition undefined: {0}")]
    DecompositionUndefined(&'static str),
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("ratio {value} at subset {subset} is outside [-1, 1]")]
    RatioOutOfRange { subset: u32, value: f64 },
    #[error("empty-set mass {found} inconsistent with propensity (expected {expected})")]
    EmptyMassMismatch { expected: f64, found: f64 },
    #[error("expected {expected}, got {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },
    #[error("at least two sources are required, got {0}")]
    TooFewSources(usize),
}

pub type Result<T> = std::result::Result<T, BeliefError>;
