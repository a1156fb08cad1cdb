use thiserror::Error;

/// Errors raised by the exact-arithmetic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("binomial coefficient requested with negative lower index {0}")]
    NegativeBinomialIndex(i64),

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("malformed Hilbert series: {0}")]
    MalformedSeries(String),

    #[error("Hilbert polynomial disagrees with the series at degree {degree}: expected {expected}, fitted {fitted}")]
    GuardMismatch {
        degree: i64,
        expected: String,
        fitted: String,
    },

    #[error("dimension function is not rational of dimension {dimension}: {reason}")]
    NonTerminating { dimension: u32, reason: String },

    #[error("invalid dimension function: {0}")]
    InvalidDimensionFunction(String),

    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("Segre factor {factor} has Krull dimension {dimension}, at least 2 is required")]
    FactorDimensionTooSmall { factor: char, dimension: u32 },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("twisted Segre modules have no ring Hilbert series (twist {0}); use the dimension function instead")]
    TwistedSeries(i64),
}

pub type Result<T> = std::result::Result<T, Error>;
