//! Error type shared by every module of the engine.
//!
//! All arithmetic is exact, so there are no tolerance or rounding errors;
//! everything here is a structural problem with the inputs (mismatched
//! bases, a non-square matrix, a composite modulus, ...) or a violated
//! precondition that the caller can fix.

use std::fmt;

use crate::exact::Int;

/// Engine-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A determinant (or similar) was requested for a non-square matrix.
    NonSquareMatrix { rows: usize, cols: usize },
    /// Two objects built over different bases were combined.
    BasisMismatch { left: String, right: String },
    /// A label was used that the basis does not contain.
    UnknownLabel { label: String },
    /// A basis was constructed with a repeated label.
    DuplicateLabel { label: String },
    /// A reduction modulo `modulus` was requested but `modulus` is not prime.
    NonPrimeModulus { modulus: Int },
    /// A generator with cleared denominator paired to a value the
    /// denominator does not divide.
    NonIntegralPairing {
        generator: String,
        numerator: Int,
        denominator: Int,
    },
    /// A constant (parameter-free) value was required but the computation
    /// produced a polynomial with free variables.
    NonConstant { context: String, value: String },
    /// An operation required an integer-valued Hilbert polynomial.
    NotIntegerValued { d3: Int, dc2: Int },
    /// A structurally invalid argument (non-positive scale, unbound
    /// parameter, overlapping parameter sets, missing box bound, ...).
    InvalidArgument(String),
    /// An exceptional-set combination violated a cardinality or
    /// disjointness constraint.
    ComboConstraint(String),
    /// Data fed to a certificate builder contradicts itself.
    ContractViolation(String),
    /// Curated or loaded model data is internally inconsistent.
    InconsistentModel(String),
    /// An exact division had a nonzero remainder.
    NonExactDivision { context: String },
    /// Polynomial text could not be parsed.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonSquareMatrix { rows, cols } => {
                write!(f, "matrix is not square ({rows}x{cols})")
            }
            Error::BasisMismatch { left, right } => {
                write!(f, "basis mismatch: {left} vs {right}")
            }
            Error::UnknownLabel { label } => write!(f, "unknown basis label `{label}`"),
            Error::DuplicateLabel { label } => write!(f, "duplicate basis label `{label}`"),
            Error::NonPrimeModulus { modulus } => {
                write!(f, "modulus {modulus} is not a prime")
            }
            Error::NonIntegralPairing {
                generator,
                numerator,
                denominator,
            } => write!(
                f,
                "generator `{generator}` pairs to {numerator}/{denominator}, which is not an integer"
            ),
            Error::NonConstant { context, value } => {
                write!(f, "{context}: expected a constant, got `{value}`")
            }
            Error::NotIntegerValued { d3, dc2 } => write!(
                f,
                "pair (d3, d.c2) = ({d3}, {dc2}) is not integer-valued: 2*d3 + d.c2 is not divisible by 12"
            ),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::ComboConstraint(msg) => write!(f, "invalid exceptional combination: {msg}"),
            Error::ContractViolation(msg) => write!(f, "contract violation: {msg}"),
            Error::InconsistentModel(msg) => write!(f, "inconsistent model data: {msg}"),
            Error::NonExactDivision { context } => {
                write!(f, "{context}: division is not exact")
            }
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
