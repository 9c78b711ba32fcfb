use thiserror::Error;

use crate::encoding::ValidationReport;

/// Errors produced by constructors, validators, and the enumeration caps.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("expected a composition with an {expected} number of parts, got {got}")]
    Parity { expected: &'static str, got: usize },

    #[error("element x{0} is outside the ground set")]
    ElementOutOfRange(usize),

    #[error("subset is not a lower order ideal")]
    NotAnIdeal,

    #[error("subset is not an upper order ideal")]
    NotAFilter,

    #[error("sequence has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("{0}")]
    InvalidEncoding(ValidationReport),

    #[error(
        "encoding of size {size} fails both admission gates: size bound k <= {bound}, \
         and restriction ({violated})"
    )]
    OutsideBijectionDomain {
        size: u32,
        bound: u32,
        violated: String,
    },

    #[error("poset has {n} elements, above the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("ground sets larger than {max} elements are not supported for set-level operations")]
    GroundSetTooLarge { max: usize },

    #[error("ordering is not a linear extension of the poset")]
    NotALinearExtension,

    #[error("chains do not form a decomposition: {0}")]
    InvalidDecomposition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
