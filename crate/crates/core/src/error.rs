//! Crate-wide error type.

use std::fmt;

/// Errors reported by the secrecy-performance library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A numeric argument is outside the mathematical domain of the operation
    /// (nonpositive power/noise, negative SNR, argument of E1 not in (0, inf), ...).
    Domain(String),
    /// A model parameter is outside its admissible range (FGM theta, Frank zeta,
    /// target rate, tolerances, ...).
    Param(String),
    /// The requested operation is undefined for this copula family
    /// (e.g. density of a Frechet bound, whose measure is singular).
    UnsupportedFamily {
        family: &'static str,
        operation: &'static str,
    },
    /// A root solve failed to land in the required interval. This indicates an
    /// implementation bug, not a user error.
    NoRoot(String),
    /// Adaptive refinement stalled before reaching the requested tolerance.
    ToleranceNotMet { requested: f64, achieved: f64 },
    /// Unknown figure preset name.
    UnknownPreset(String),
    /// Invalid sweep configuration.
    Config(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Param(msg) => write!(f, "parameter out of range: {msg}"),
            Error::UnsupportedFamily { family, operation } => {
                write!(f, "{operation} is not defined for the {family} family")
            }
            Error::NoRoot(msg) => write!(f, "no root in the required interval: {msg}"),
            Error::ToleranceNotMet {
                requested,
                achieved,
            } => write!(
                f,
                "quadrature tolerance not met: requested {requested:.3e}, achieved {achieved:.3e}"
            ),
            Error::UnknownPreset(name) => write!(f, "unknown figure preset: {name}"),
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
