//! Exact computational toolkit for octonion algebras, the matrix algebras
//! built from them (hermitian under the anticommutator, antihermitian under
//! the commutator, and full matrix spaces), and their derivation Lie algebras.
//!
//! All arithmetic is exact: arbitrary-precision rationals or an odd prime
//! field, never floating point. Derivation algebras are computed as null
//! spaces of the Leibniz linear system attached to a structure-constant
//! table, and the expected `g2 (+) so_n` decompositions are certified by
//! constructing the embedded subalgebra explicitly and comparing spans.

pub mod cli;
pub mod derivations;
pub mod known;
pub mod linalg;
pub mod matalg;
pub mod octonion;
pub mod scalar;

use std::fmt;

use scalar::FieldSpec;

/// Error type shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Characteristic-two fields are rejected everywhere.
    CharacteristicTwo,
    /// Prime-field modulus that is not an odd prime.
    NotPrime(u64),
    /// Two scalars (or objects) from different fields were combined.
    FieldMismatch(FieldSpec, FieldSpec),
    DivisionByZero,
    /// Incompatible dimensions in a linear-algebra or matrix operation.
    DimensionMismatch { expected: usize, got: usize },
    /// A map that was required to be a derivation is not one.
    NotADerivation,
    /// A matrix that was required to be antisymmetric is not.
    NotAntisymmetric,
    /// Malformed textual input (scalar, field spec, matrix file, ...).
    Parse(String),
    /// Request outside the supported configuration space.
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CharacteristicTwo => write!(f, "characteristic two excluded"),
            Error::NotPrime(p) => write!(f, "{p} is not an odd prime"),
            Error::FieldMismatch(a, b) => write!(f, "field mismatch: {a} vs {b}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotADerivation => write!(f, "map is not a derivation"),
            Error::NotAntisymmetric => write!(f, "matrix is not antisymmetric"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
