use alloc::string::String;
use core::fmt;

use crate::degree::TriDegree;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// An internal degree beyond the configured bound of the algebra.
    DegreeBound { requested: u32, bound: u32 },
    /// A query outside the range the resolution has been computed through.
    OutOfRange { degree: TriDegree, reason: &'static str },
    /// A homogeneity violation in a τ-graded matrix or algebra element.
    Inhomogeneous(String),
    /// A vector that should be a cocycle is not one.
    NotACocycle(TriDegree),
    /// A lift through a differential failed; the resolution is inconsistent.
    LiftFailed { s: u32, t: u32 },
    /// Basis element not present in the chosen algebra.
    NotInAlgebra(String),
    /// Structurally invalid input (bad dimensions, flavors, references).
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegreeBound { requested, bound } => {
                write!(f, "internal degree {requested} exceeds the configured bound {bound}")
            }
            Error::OutOfRange { degree, reason } => {
                write!(f, "degree {degree} is outside the computed range: {reason}")
            }
            Error::Inhomogeneous(m) => write!(f, "inhomogeneous input: {m}"),
            Error::NotACocycle(d) => write!(f, "vector in degree {d} is not a cocycle"),
            Error::LiftFailed { s, t } => {
                write!(f, "could not lift through the differential at s={s}, t={t}")
            }
            Error::NotInAlgebra(m) => write!(f, "not an element of the algebra: {m}"),
            Error::Invalid(m) => write!(f, "{m}"),
        }
    }
}

impl core::error::Error for Error {}
