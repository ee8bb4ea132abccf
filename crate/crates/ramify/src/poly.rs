//! Dense univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored lowest degree first and trailing zeros are always
//! trimmed, so the zero polynomial is the empty vector and `degree` is
//! `None` exactly for zero. Everything that the higher layers need —
//! arithmetic, exact division, gcd, derivatives, coefficient shifts and
//! reversal for expansions at infinity — lives here.

use crate::rat::{rint, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A polynomial over the rationals, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    /// The monomial `x`.
    pub fn x() -> Poly {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    /// A constant polynomial.
    pub fn constant(c: Rat) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// Builds from raw coefficients (lowest degree first), trimming trailing
    /// zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Convenience constructor from small integers, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&n| rint(n)).collect())
    }

    /// The linear factor `x - root`.
    pub fn linear(root: &Rat) -> Poly {
        Poly::from_coeffs(vec![-root.clone(), Rat::one()])
    }

    /// Coefficient slice, lowest degree first; empty for zero.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The coefficient of `x^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading coefficient, or `None` for zero.
    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Multiplies by a scalar.
    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn mul_xpow(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Evaluates at a rational point by Horner's rule.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rint(k as i64))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// `k`-th power by repeated squaring.
    pub fn pow(&self, mut k: usize) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Euclidean division: returns `(q, r)` with `self = q * div + r` and
    /// `deg r < deg div`.
    ///
    /// # Panics
    /// Panics if `div` is zero.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let dlead = div.leading().unwrap().clone();
        let dd = div.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] / &dlead;
            if !c.is_zero() {
                for (j, dc) in div.coeffs.iter().enumerate() {
                    let idx = k - dd + j;
                    rem[idx] = &rem[idx] - &(dc * &c);
                }
            }
            quot[k - dd] = c;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact quotient; panics if the division leaves a remainder. Used where
    /// exactness is a structural invariant (fraction-free elimination,
    /// denominator clearing).
    pub fn div_exact(&self, div: &Poly) -> Poly {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (gcd of zero and `p` is monic `p`).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Rescales to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// The composition `p(x + c)`, via iterated Horner on the shifted
    /// variable. Recenters an expansion point to the origin.
    pub fn shift(&self, c: &Rat) -> Poly {
        // Horner: p(x + c) = (...((a_n (x+c) + a_{n-1})(x+c) + ...)
        let mut acc = Poly::zero();
        let shift = Poly::from_coeffs(vec![c.clone(), Rat::one()]);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &shift) + &Poly::constant(a.clone());
        }
        acc
    }

    /// Coefficient reversal: for `p` of degree `d`, returns
    /// `x^d * p(1/x)`. Turns the behaviour of `p` at infinity into behaviour
    /// at the origin; the result has nonzero constant term.
    pub fn reversed(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::from_coeffs(coeffs)
    }

    /// Multiplicity of the root 0 (index of the lowest nonzero coefficient),
    /// or `None` for the zero polynomial.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multiplicity of `root` as a zero of `self` (0 if not a root).
    pub fn root_multiplicity(&self, root: &Rat) -> usize {
        if self.is_zero() {
            return 0;
        }
        let lin = Poly::linear(root);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = p.divrem(&lin);
            if r.is_zero() {
                m += 1;
                p = q;
            } else {
                return m;
            }
        }
    }

    /// True if the polynomial has no repeated roots (gcd with the derivative
    /// is constant). The zero polynomial is not squarefree.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.degree() == Some(0) {
            return true;
        }
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Renders with the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign_neg = c < &Rat::zero();
            if out.is_empty() {
                if sign_neg {
                    out.push('-');
                }
            } else if sign_neg {
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
                out.push_str(var);
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_ints(coeffs)
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
    }

    #[test]
    fn arithmetic_basics() {
        // (1 + x)(1 - x) = 1 - x^2
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
        assert_eq!(&p(&[1, 2]) + &p(&[3, -2]), p(&[4]));
        assert_eq!(&p(&[1, 2]) - &p(&[1, 2]), Poly::zero());
    }

    #[test]
    fn divrem_roundtrip() {
        let a = p(&[2, 0, -3, 1, 4]);
        let b = p(&[1, 2, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn exact_division_of_products() {
        let a = p(&[1, 3, 3, 1]); // (x+1)^3
        let b = p(&[1, 1]);
        assert_eq!(a.div_exact(&b), p(&[1, 2, 1]));
    }

    #[test]
    #[should_panic(expected = "inexact")]
    fn inexact_division_panics() {
        p(&[1, 0, 1]).div_exact(&p(&[1, 1]));
    }

    #[test]
    fn gcd_picks_common_factor_monically() {
        let a = &p(&[-1, 1]) * &p(&[2, 1]); // (x-1)(x+2)
        let b = &p(&[-1, 1]) * &p(&[3, 1]); // (x-1)(x+3)
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        // gcd is monic even when inputs are scaled.
        assert_eq!(a.scale(&rat(7, 3)).gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn shift_recenters() {
        // p(x) = x^2, p(x + 1) = x^2 + 2x + 1.
        assert_eq!(p(&[0, 0, 1]).shift(&rint(1)), p(&[1, 2, 1]));
        // Evaluating the shift at 0 recovers evaluation at the center.
        let q = p(&[3, -2, 0, 5]);
        let c = rat(7, 2);
        assert_eq!(q.shift(&c).coeff(0), q.eval(&c));
    }

    #[test]
    fn reversal_swaps_origin_and_infinity() {
        // x^2 reversed is 1; (1 + 2x^3) reversed is x^3 + 2.
        assert_eq!(p(&[0, 0, 1]).reversed(), p(&[1]));
        assert_eq!(p(&[1, 0, 0, 2]).reversed(), p(&[2, 0, 0, 1]));
        // Reversal of a nonzero polynomial has nonzero constant term.
        assert!(!p(&[0, 0, 7, 1]).reversed().coeff(0).is_zero());
    }

    #[test]
    fn root_multiplicity_counts_linear_factors() {
        let q = &p(&[-2, 1]).pow(3) * &p(&[1, 1]); // (x-2)^3 (x+1)
        assert_eq!(q.root_multiplicity(&rint(2)), 3);
        assert_eq!(q.root_multiplicity(&rint(-1)), 1);
        assert_eq!(q.root_multiplicity(&rint(0)), 0);
    }

    #[test]
    fn squarefree_detection() {
        assert!(p(&[-1, 0, 1]).is_squarefree()); // (x-1)(x+1)
        assert!(!p(&[1, 2, 1]).is_squarefree()); // (x+1)^2
        assert!(p(&[5]).is_squarefree());
        assert!(!Poly::zero().is_squarefree());
    }

    #[test]
    fn derivative_and_eval() {
        let q = p(&[1, -3, 0, 2]); // 2x^3 - 3x + 1
        assert_eq!(q.derivative(), p(&[-3, 0, 6]));
        assert_eq!(q.eval(&rint(2)), rint(11));
        assert_eq!(q.eval(&rat(1, 2)), rat(-1, 4));
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[-54, 174, -207, 129, -51, 9]).render("g"), "9*g^5 - 51*g^4 + 129*g^3 - 207*g^2 + 174*g - 54");
        assert_eq!(p(&[0, 1]).render("x"), "x");
        assert_eq!(p(&[0, -1]).render("x"), "-x");
        assert_eq!(Poly::zero().render("x"), "0");
        assert_eq!(p(&[2]).render("x"), "2");
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-6i64..=6, 0..6).prop_map(|v| Poly::from_ints(&v))
    }

    proptest! {
        #[test]
        fn mul_distributes_over_add(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn divrem_is_euclidean(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.is_zero() || r.degree() < b.degree());
        }

        #[test]
        fn derivative_is_leibniz(a in arb_poly(), b in arb_poly()) {
            let lhs = (&a * &b).derivative();
            let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!a.is_zero() || !b.is_zero());
            let g = a.gcd(&b);
            prop_assert!(a.divrem(&g).1.is_zero());
            prop_assert!(b.divrem(&g).1.is_zero());
        }
    }
}
