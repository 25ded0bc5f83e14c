use thiserror::Error;

/// Errors raised by the codec, the solvers and the file loaders.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("element {index} has non-positive probability {prob}")]
    NonPositiveProbability { index: usize, prob: f64 },

    #[error("probabilities sum to {sum}, expected 1 within {tolerance:e}")]
    ProbabilitySumMismatch { sum: f64, tolerance: f64 },

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("{what}: expected {expected} entries, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("codeword length {length} exceeds width {width}")]
    LengthExceedsWidth { length: u32, width: u32 },

    #[error("width {width} is larger than the supported maximum {max}")]
    WidthTooLarge { width: u32, max: u32 },

    #[error("width {width} is smaller than the required minimum {min}")]
    WidthTooSmall { width: u32, min: u32 },

    #[error("codeword lengths violate Kraft's inequality")]
    KraftViolation,

    #[error("code is not a prefix code")]
    NotPrefix,

    #[error("code is not padding-invariant")]
    NotPaddingInvariant,

    #[error("element index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("word has {found} bits, scheme width is {width}")]
    WordLengthMismatch { found: usize, width: u32 },

    #[error("invalid bit string {0:?}")]
    InvalidBits(String),

    #[error("no first-field codeword is a prefix of the word")]
    NoPrefixMatch,

    #[error("residual bits match no second-field codeword")]
    UnknownResidual,

    #[error("enumeration would exceed the cap of {cap} vectors")]
    ExplosionGuard { cap: usize },

    #[error("integer overflow while counting codes for n = {n}")]
    Overflow { n: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors in the caller's input, as opposed to failures of a
    /// solver or enumeration on valid input.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::ExplosionGuard { .. } | Error::Overflow { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
