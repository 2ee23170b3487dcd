//! Error type shared by every module.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division by the zero polynomial.
    ZeroDivisor,
    /// Reciprocal of a series that is zero to its truncation.
    NotInvertible,
    /// Reciprocal of an exact multi-term series has no finite representation;
    /// impose a truncation window first.
    NeedsTruncation,
    /// An operation required a monic input.
    NonMonic,
    /// An operation required degree at least one.
    DegreeTooSmall,
    /// Closure of an empty generator list.
    NoGenerators,
    /// Element degree exceeds the stored degree bound.
    OutOfBound,
    /// The chart truncation cannot resolve the requested coefficients;
    /// `required` estimates the number of correction steps that would.
    IncreaseSteps { required: u32 },
    /// Coefficient law on a pair of equal degrees.
    DegeneratePair,
    /// Coefficient law where `d` does not divide a degree.
    DegreeNotMultiple,
    /// The bracket closure saturated at finite dimension.
    FiniteDimensional,
    /// No usable element for the infinite-dimensional pipeline.
    Degenerate,
    /// A verification step failed inside the provable window.
    BoundInsufficient,
    /// Escalation reached the configured maxima without certification.
    BoundExhausted,
    /// The minimal-degree search ran past its provable bound.
    SearchExceeded,
    /// Elements over different numbers of variables.
    VariableMismatch,
    /// A stated precondition was violated.
    Precondition(&'static str),
    /// Coefficient storage exceeded the configured budget.
    CellBudgetExceeded,
    /// Malformed textual input.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDivisor => write!(f, "zero divisor"),
            Error::NotInvertible => write!(f, "not invertible at this truncation"),
            Error::NeedsTruncation => {
                write!(f, "reciprocal of an exact series requires a truncation window")
            }
            Error::NonMonic => write!(f, "requires monic input"),
            Error::DegreeTooSmall => write!(f, "requires degree at least 1"),
            Error::NoGenerators => write!(f, "no generators"),
            Error::OutOfBound => write!(f, "out of bound"),
            Error::IncreaseSteps { required } => {
                write!(f, "increase steps (need at least {required})")
            }
            Error::DegeneratePair => write!(f, "degenerate pair"),
            Error::DegreeNotMultiple => write!(f, "d does not divide degree"),
            Error::FiniteDimensional => write!(f, "finite-dimensional subalgebra"),
            Error::Degenerate => write!(f, "finite-dimensional or degenerate"),
            Error::BoundInsufficient => write!(f, "bound/steps insufficient"),
            Error::BoundExhausted => write!(f, "bound exhausted"),
            Error::SearchExceeded => {
                write!(f, "internal: minimal-degree search exceeded its provable bound")
            }
            Error::VariableMismatch => write!(f, "mismatched number of variables"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::CellBudgetExceeded => write!(f, "coefficient cell budget exceeded"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
