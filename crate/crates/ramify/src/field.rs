//! Coefficient fields for the generic linear algebra and series kernels.
//!
//! The elliptic-curve verifications run both over the rationals and over
//! small prime fields, with identical algorithms. Rather than duplicating the
//! expansion and row-reduction code, those kernels are generic over
//! [`Field`]: a context object owning any parameters (the modulus, say),
//! whose elements are plain data.
//!
//! Two implementations are provided:
//! - [`Rationals`] — exact arbitrary-precision rationals,
//! - [`PrimeField`] — `Z/p` for a prime `p > 3`, elements stored as `u64`
//!   in `0..p`.

use crate::error::{Error, Result};
use crate::rat::{rat, Rat};
use num_traits::{One, Zero};
use rand::Rng;
use std::fmt::Debug;

/// A field of coefficients, presented as a context object.
///
/// Methods take elements by reference and return fresh values; contexts are
/// cheap to clone and carry whatever parameters the field needs.
pub trait Field: Clone {
    /// Element representation.
    type Elem: Clone + PartialEq + Debug;

    /// Additive identity.
    fn zero(&self) -> Self::Elem;
    /// Multiplicative identity.
    fn one(&self) -> Self::Elem;
    /// Image of a signed integer.
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Sum `a + b`.
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Difference `a - b`.
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Negation `-a`.
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Product `a * b`.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, or `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Zero test.
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Human-readable rendering.
    fn render(&self, a: &Self::Elem) -> String;
    /// A field element drawn from `rng`, for randomized sampling. Kept small
    /// over the rationals so downstream arithmetic stays cheap.
    fn sample<R: Rng>(&self, rng: &mut R) -> Self::Elem;

    /// Quotient `a / b`.
    ///
    /// # Panics
    /// Panics if `b` is zero; callers divide only by checked pivots.
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b).expect("division by zero field element"))
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn from_i64(&self, n: i64) -> Rat {
        crate::rat::rint(n)
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &Rat) -> String {
        a.to_string()
    }
    fn sample<R: Rng>(&self, rng: &mut R) -> Rat {
        // Small numerators and denominators; zero is allowed.
        let num = rng.random_range(-9i64..=9);
        let den = rng.random_range(1i64..=4);
        rat(num, den)
    }
}

/// The prime field `Z/p` for a prime `p > 3`.
///
/// Characteristics 2 and 3 are excluded: short Weierstrass cubics and their
/// tangent-line arithmetic degenerate there, and nothing in the verification
/// plan needs them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Builds `Z/p`, checking primality by trial division (the moduli used
    /// here are tiny).
    pub fn new(p: u64) -> Result<Self> {
        if p <= 3 || !is_prime(p) {
            return Err(Error::UnsupportedModulus(p));
        }
        Ok(PrimeField { p })
    }

    /// The modulus.
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// `a^e mod p` by square-and-multiply.
    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a, self.p);
            }
            a = mulmod(a, a, self.p);
            e >>= 1;
        }
        acc
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if a % self.p == 0 {
            None
        } else {
            // Fermat: a^(p-2) = a^(-1) in Z/p.
            Some(self.pow(a % self.p, self.p - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        a % self.p == 0
    }
    fn render(&self, a: &u64) -> String {
        format!("{}", a % self.p)
    }
    fn sample<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.p)
    }
}
