//! Error type shared across the crate.
//!
//! Every fallible operation returns [`enum@Error`]; panics are reserved for
//! arithmetic misuse that no input can trigger (division by a literal zero
//! polynomial inside a checked algorithm, for instance).

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building or verifying a configuration.
#[derive(Debug, Error)]
pub enum Error {
    /// Two support points of a twisting divisor coincide.
    #[error("support points must be pairwise distinct: {0}")]
    CoincidentPoints(String),

    /// A twist multiplicity outside the allowed range was requested.
    #[error("invalid twist multiplicity {found}: {reason}")]
    InvalidMultiplicity { found: i64, reason: String },

    /// A supplied basis is linearly dependent, so vanishing orders are not
    /// well defined for it.
    #[error("basis is linearly dependent (rank {rank} < {size} elements)")]
    DependentBasis { rank: usize, size: usize },

    /// Series truncation was exhausted before the expansion matrix reached
    /// full rank; retries with doubled truncation are performed first.
    #[error("truncation {order} insufficient for expansion at {point}")]
    TruncationInsufficient { point: String, order: usize },

    /// A function has a worse pole at a point than the divisor it is supposed
    /// to be a section of allows.
    #[error("pole of order {found} at {point} exceeds allowance {allowed}")]
    PoleOrderViolation {
        point: String,
        found: i64,
        allowed: i64,
    },

    /// Removing vanishing conditions at a base point of the series.
    #[error("every section vanishes at {0}; cannot impose another condition")]
    BasePoint(String),

    /// A point was claimed to lie on a curve but does not satisfy its
    /// equation.
    #[error("point {0} does not satisfy the curve equation")]
    PointOffCurve(String),

    /// Curve parameters with vanishing discriminant.
    #[error("singular cubic: discriminant of y^2 = x^3 + {a}x + {b} is zero")]
    SingularCurve { a: String, b: String },

    /// A prime field was requested for a modulus that is not an odd prime
    /// greater than 3.
    #[error("{0} is not a prime greater than 3")]
    UnsupportedModulus(u64),

    /// A genus (or similar integer parameter) outside an operation's domain.
    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    /// A class in the rewrite engine was consumed by an operation that
    /// requires normal form, but still contained a reducible monomial.
    #[error("class is not in normal form: contains {0}")]
    NotNormalized(String),

    /// An expression expected to have integer coefficients did not.
    #[error("non-integral coefficient {coefficient} for {context}")]
    NonIntegral { context: String, coefficient: String },

    /// A linear system whose solution space was expected to be a line.
    #[error("relation system for genus {g} has nullity {found}, expected 1")]
    UnexpectedNullity { g: u64, found: usize },

    /// An invalid dual-graph description.
    #[error("invalid dual graph: {0}")]
    InvalidGraph(String),
}
