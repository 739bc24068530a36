use core::fmt;

/// Failures reported by the numerical kernels.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A precondition on an argument was violated.
    InvalidArgument(&'static str),
    /// A function evaluation produced NaN or an infinity.
    NonFinite { at: f64 },
    /// The refinement limit was reached before the requested tolerance.
    ToleranceNotMet { estimate: f64, error: f64 },
    /// The non-positivity search came back empty. Indicates a bug.
    WitnessNotFound { n: usize },
    /// The closed-form path was asked for an order it cannot afford.
    Capability { limit: usize, requested: usize },
    /// A quantity that must be non-negative came out clearly negative.
    Inconsistent { value: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::NonFinite { at } => write!(f, "non-finite evaluation at {at}"),
            Error::ToleranceNotMet { estimate, error } => write!(
                f,
                "tolerance not met: best estimate {estimate} with error estimate {error}"
            ),
            Error::WitnessNotFound { n } => {
                write!(f, "no non-positivity witness found for n = {n}")
            }
            Error::Capability { limit, requested } => write!(
                f,
                "closed form limited to n <= {limit} (requested {requested}); use the quadrature path"
            ),
            Error::Inconsistent { value } => {
                write!(f, "inconsistent operator data: squared rate {value} < 0")
            }
        }
    }
}

impl core::error::Error for Error {}
