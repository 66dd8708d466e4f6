use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("series must have at least one coefficient")]
    EmptySeries,

    #[error("constant term {modulus:e} is below the zero tolerance {tol:e}")]
    ZeroConstantTerm { modulus: f64, tol: f64 },

    #[error("parameter `{name}` = {value} is out of range: {expected}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error(
        "truncation at order {order} leaves a tail bound {bound:e} at r = {r} above tolerance {tol:e}"
    )]
    TruncationInsufficient {
        order: usize,
        r: f64,
        bound: f64,
        tol: f64,
    },

    #[error("radius {0} is outside [0, 1)")]
    RadiusOutOfRange(f64),

    #[error("radius {r} is outside the window [{lo}, {hi}] of {id}")]
    RadiusOutOfWindow {
        id: &'static str,
        r: f64,
        lo: f64,
        hi: f64,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("{id} requires an odd gap p, got p = {p}")]
    OddGapRequired { id: &'static str, p: usize },

    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),

    #[error("no sign change of the radius equation on [{lo}, {hi}]: values {f_lo}, {f_hi}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("tolerance {0:e} is below the resolvable limit")]
    ToleranceTooSmall(f64),

    #[error("direction has a zero first coordinate")]
    DegenerateDirection,

    #[error("invalid campaign config: {0}")]
    InvalidConfig(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn out_of_range(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::ParameterOutOfRange {
            name,
            value,
            expected,
        }
    }

    /// Wraps `self` with a human-readable context string.
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
