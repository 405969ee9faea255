use alloc::string::String;
use core::fmt;

/// Errors raised by the exact-arithmetic core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Characteristic is not a prime number.
    NotPrime(u32),
    /// Extension degree must be at least one.
    ZeroDegree,
    /// The field order exceeds the configured table bound.
    FieldTooLarge { q: u64, bound: u64 },
    /// Supplied modulus is not monic of the requested degree.
    BadModulus(String),
    /// Supplied modulus factors over the prime field.
    NotIrreducible,
    /// Two operands come from different fields.
    FieldMismatch,
    DivisionByZero,
    /// Integer label outside `0..q`.
    LabelOutOfRange { label: u64, q: u32 },
    /// Matrix, word or parameter shapes disagree.
    ShapeMismatch(String),
    /// A parameter is outside its admissible range.
    InvalidParameter(String),
    /// Hermite problem with repeated interpolation nodes.
    DuplicateNodes,
    /// Evaluation at infinity needs an ambient degree above the polynomial degree.
    AmbientDegreeTooSmall { degree: usize, ambient: usize },
    /// The zero code has no weight.
    ZeroCode,
    /// Anchor of a spectrum is not a member of the code or distribution.
    AnchorNotMember,
    /// The point count is not the one required by the predicate.
    CardinalityMismatch { expected: u64, found: u64 },
    /// Fewer field elements than required by the existence condition q >= n - 1.
    ExistenceCondition { q: u32, n: usize },
    /// The MacWilliams identity is only available for one-dimensional distributions.
    IdentityUnavailable,
    /// An exhaustive computation would exceed its configured size bound.
    TooLarge(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "characteristic {p} is not prime"),
            Error::ZeroDegree => write!(f, "extension degree must be positive"),
            Error::FieldTooLarge { q, bound } => {
                write!(f, "field order {q} exceeds the table bound {bound}")
            }
            Error::BadModulus(msg) => write!(f, "bad modulus: {msg}"),
            Error::NotIrreducible => write!(f, "modulus is reducible over the prime field"),
            Error::FieldMismatch => write!(f, "field mismatch"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::LabelOutOfRange { label, q } => {
                write!(f, "label {label} out of range for a field of order {q}")
            }
            Error::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::DuplicateNodes => write!(f, "interpolation nodes are not pairwise distinct"),
            Error::AmbientDegreeTooSmall { degree, ambient } => write!(
                f,
                "ambient degree too small: polynomial of degree {degree} in a space of dimension {ambient}"
            ),
            Error::ZeroCode => write!(f, "the zero code has no weight"),
            Error::AnchorNotMember => write!(f, "anchor is not a member"),
            Error::CardinalityMismatch { expected, found } => {
                write!(f, "not q^s points: expected {expected}, found {found}")
            }
            Error::ExistenceCondition { q, n } => write!(
                f,
                "no optimum distribution exists for q = {q} < n - 1 = {} (existence condition q >= n - 1)",
                n.saturating_sub(1)
            ),
            Error::IdentityUnavailable => write!(f, "identity proven only for n=1"),
            Error::TooLarge(msg) => write!(f, "enumeration bound exceeded: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
