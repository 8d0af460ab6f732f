use alloc::string::String;
use core::fmt;

/// Errors raised by the algebraic core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent arguments (mismatched fields, dimensions, empty input).
    Parameter(String),
    /// Inversion of the zero element.
    DivisionByZero,
    /// A configured size cap would be exceeded.
    Resource {
        what: String,
        requested: u128,
        cap: u128,
    },
    /// A documented precondition of an operation does not hold.
    Contract(String),
    /// The requested quantity is mathematically undefined for these inputs.
    Undefined(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parameter(msg) => write!(f, "parameter error: {msg}"),
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::Resource {
                what,
                requested,
                cap,
            } => write!(
                f,
                "resource cap exceeded: {what} needs {requested}, cap is {cap}"
            ),
            Error::Contract(msg) => write!(f, "contract violation: {msg}"),
            Error::Undefined(msg) => write!(f, "undefined: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}

pub(crate) fn resource(what: impl Into<String>, requested: u128, cap: u128) -> Error {
    Error::Resource {
        what: what.into(),
        requested,
        cap,
    }
}
