use thiserror::Error;

/// Errors raised by the lifing and scheduling routines.
///
/// Variants split into two families: input problems (the caller handed us
/// something outside an operation's domain) and numeric failures (the
/// inputs were well formed but the math has no answer, e.g. a column past
/// its buckling load).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0}")]
    Validation(String),

    #[error("cannot convert {from} to {to}: different physical dimensions")]
    DimensionMismatch { from: String, to: String },

    #[error("cycle trigger references unknown counter `{0}`")]
    UnknownCounter(String),

    #[error("component `{0}` has no service life")]
    NotLifed(String),

    #[error("buckling: secant argument {argument:.6} reaches pi/2")]
    Buckling { argument: f64 },

    #[error("column unstable: {0}")]
    ColumnUnstable(String),

    #[error("singularity: {0}")]
    Singularity(String),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// True for failures of the math itself rather than of the inputs.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Buckling { .. } | Error::ColumnUnstable(_) | Error::Singularity(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Validation(msg()))
    }
}

pub(crate) fn ensure_positive(name: &str, value: f64) -> Result<()> {
    ensure(value.is_finite() && value > 0.0, || {
        format!("{name} must be positive and finite, got {value}")
    })
}

pub(crate) fn ensure_nonnegative(name: &str, value: f64) -> Result<()> {
    ensure(value.is_finite() && value >= 0.0, || {
        format!("{name} must be non-negative and finite, got {value}")
    })
}
