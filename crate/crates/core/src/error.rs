//! Error type shared by all operations in this crate.

use core::fmt;

/// Everything that can go wrong outside of plain invariant violations
/// (those are reported as [`crate::module::Violation`] values by `validate`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p` is not an odd prime (p = 2 is excluded by the theory).
    CompositeP { p: u64 },
    /// The supplied modulus polynomial is not irreducible over F_p.
    ReducibleModulus,
    /// The modulus polynomial is not monic of the stated degree, or has
    /// out-of-range coefficients.
    BadModulus,
    /// The field would have more than [`crate::field::MAX_FIELD_SIZE`] elements.
    FieldTooLarge { q: u64 },
    /// Matrix shapes do not line up.
    DimensionMismatch,
    /// Invalid family parameters (e.g. Witt with m < 2).
    BadParameters,
    /// Two values belong to different algebra presentations.
    AlgebraMismatch,
    /// Module field characteristic differs from the algebra's p.
    CharacteristicMismatch,
    /// Values over distinct fields were combined without an explicit base change.
    FieldMismatch,
    /// A pi-point representative must have a nonzero coordinate tuple.
    ZeroPoint,
    /// The pair (f, g) does not define an algebra map A -> kE.
    IncompatiblePair,
    /// The coefficient tuple vanishes: the map factors through k and is not a pi-point.
    NotAPiPoint,
    /// A cohomology class representative must be nonzero.
    ZeroClass,
    /// A cohomology class representative must vanish on odd-parity generators.
    OddInternalDegree,
    /// Carlson modules only exist for even cohomological degrees.
    OddCohomologicalDegree,
    /// An operator pair violated tau^2 = t^p or the block matrix failed to square
    /// to zero; indicates an invalid module or restriction.
    RelationViolation,
    /// A point enumeration would exceed the configured budget.
    BudgetExceeded { points: u64, budget: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CompositeP { p } => write!(f, "{p} is not an odd prime"),
            Error::ReducibleModulus => write!(f, "modulus polynomial is reducible over F_p"),
            Error::BadModulus => write!(f, "modulus polynomial is not monic of the stated degree"),
            Error::FieldTooLarge { q } => write!(f, "field with {q} elements exceeds the supported size"),
            Error::DimensionMismatch => write!(f, "matrix dimensions do not match"),
            Error::BadParameters => write!(f, "invalid algebra family parameters"),
            Error::AlgebraMismatch => write!(f, "values belong to different algebra presentations"),
            Error::CharacteristicMismatch => write!(f, "field characteristic differs from the algebra's p"),
            Error::FieldMismatch => write!(f, "values over distinct fields; base change explicitly first"),
            Error::ZeroPoint => write!(f, "pi-point coordinates are all zero"),
            Error::IncompatiblePair => write!(f, "(f, g) does not satisfy f^p = g^2 sigma^2 in kE"),
            Error::NotAPiPoint => write!(f, "coefficient tuple is zero: map factors through k"),
            Error::ZeroClass => write!(f, "cohomology class representative is zero"),
            Error::OddInternalDegree => write!(f, "class is supported on an odd-parity generator"),
            Error::OddCohomologicalDegree => write!(f, "Carlson modules need even cohomological degree"),
            Error::RelationViolation => write!(f, "operator relation tau^2 = t^p violated"),
            Error::BudgetExceeded { points, budget } => {
                write!(f, "enumeration of {points} points exceeds budget {budget}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
