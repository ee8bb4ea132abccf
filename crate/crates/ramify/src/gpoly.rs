//! Integer polynomials in the genus parameter `g`.
//!
//! Results that hold for all genera at once — pushforward coefficients,
//! node-multiplicity identities — are carried symbolically as elements of
//! `Z[g]`. [`GPoly`] is the integer-coefficient companion to the rational
//! [`Poly`]: intermediate computations happen over the rationals where
//! convenient and are certified integral on conversion.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::Rat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A polynomial in `g` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GPoly {
    coeffs: Vec<BigInt>,
}

impl GPoly {
    /// The zero polynomial.
    pub fn zero() -> GPoly {
        GPoly { coeffs: Vec::new() }
    }

    /// The constant 1.
    pub fn one() -> GPoly {
        GPoly::constant(1)
    }

    /// The variable `g`.
    pub fn g() -> GPoly {
        GPoly::from_ints(&[0, 1])
    }

    /// A constant.
    pub fn constant(n: i64) -> GPoly {
        GPoly::from_ints(&[n])
    }

    /// Builds from small integers, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> GPoly {
        GPoly::from_coeffs(coeffs.iter().map(|&n| BigInt::from(n)).collect())
    }

    /// Builds from raw coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> GPoly {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        GPoly { coeffs }
    }

    /// Certifies a rational-coefficient polynomial as integral.
    pub fn from_rat_poly(p: &Poly, context: &str) -> Result<GPoly> {
        let mut coeffs = Vec::with_capacity(p.coeffs().len());
        for c in p.coeffs() {
            if !c.is_integer() {
                return Err(Error::NonIntegral {
                    context: context.to_string(),
                    coefficient: c.to_string(),
                });
            }
            coeffs.push(c.to_integer());
        }
        Ok(GPoly::from_coeffs(coeffs))
    }

    /// View with rational coefficients.
    pub fn to_rat_poly(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    /// Coefficient slice, lowest degree first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `g`, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Scalar multiple.
    pub fn scale(&self, n: i64) -> GPoly {
        let n = BigInt::from(n);
        GPoly::from_coeffs(self.coeffs.iter().map(|c| c * &n).collect())
    }

    /// `k`-th power.
    pub fn pow(&self, k: usize) -> GPoly {
        let mut acc = GPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluation at an integer genus.
    pub fn eval(&self, g: i64) -> BigInt {
        let g = BigInt::from(g);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &g + c;
        }
        acc
    }

    /// Renders in the variable `g`, highest degree first.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            if k > 0 {
                if show_coeff {
                    out.push('*');
                }
                out.push('g');
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for GPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Add for &GPoly {
    type Output = GPoly;
    fn add(self, rhs: &GPoly) -> GPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &GPoly, k: usize| p.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero);
        GPoly::from_coeffs((0..n).map(|k| get(self, k) + get(rhs, k)).collect())
    }
}

impl Sub for &GPoly {
    type Output = GPoly;
    fn sub(self, rhs: &GPoly) -> GPoly {
        self + &(-rhs)
    }
}

impl Neg for &GPoly {
    type Output = GPoly;
    fn neg(self) -> GPoly {
        GPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &GPoly {
    type Output = GPoly;
    fn mul(self, rhs: &GPoly) -> GPoly {
        if self.is_zero() || rhs.is_zero() {
            return GPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        GPoly::from_coeffs(coeffs)
    }
}
