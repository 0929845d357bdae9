use alloc::string::String;
use core::fmt;

use crate::funcspec::ParseError;
use crate::quadrature::QuadError;

/// Errors produced by the analysis routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The function-spec text did not parse.
    Parse(ParseError),
    /// An argument fell outside `[0, domain_end)`.
    Domain { x: f64, domain_end: f64 },
    /// A precondition on a scalar or list argument was violated.
    InvalidArgument(String),
    /// `f(x_hi) < y`, so the inverse has no bracket on `[0, x_hi]`.
    Bracket { y: f64, x_hi: f64, f_hi: f64 },
    /// The integrator failed.
    Quadrature(QuadError),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for failures of the numeric machinery itself, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::Quadrature(_) | Error::Bracket { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(e) => write!(f, "{e}"),
            Error::Domain { x, domain_end } => {
                write!(f, "argument {x} outside the domain [0, {domain_end})")
            }
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Bracket { y, x_hi, f_hi } => write!(
                f,
                "cannot invert: f({x_hi}) = {f_hi} is below the target {y}"
            ),
            Error::Quadrature(e) => write!(f, "quadrature failed: {e}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

impl From<QuadError> for Error {
    fn from(e: QuadError) -> Self {
        Error::Quadrature(e)
    }
}
