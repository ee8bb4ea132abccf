//! Exact rational scalars.
//!
//! All coefficient arithmetic in this crate is exact. [`Rat`] is an
//! arbitrary-precision rational, kept in lowest terms with a positive
//! denominator by its backing implementation, so equality is plain structural
//! equality and no rounding ever occurs.

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational number: always reduced, denominator always positive.
pub type Rat = BigRational;

/// The rational `n / d`.
///
/// # Panics
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// True if `r` has denominator 1.
pub fn is_integer(r: &Rat) -> bool {
    r.is_integer()
}
