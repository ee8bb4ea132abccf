//! Local expansion of rational functions on the projective line.
//!
//! [`local_expand`] produces the leading Laurent data of a rational function
//! at any point of `P^1`:
//!
//! - at a finite center `c`, in the local parameter `t = x - c`, by
//!   recentring numerator and denominator and dividing truncated series;
//! - at infinity, in the parameter `u = 1/x`, by coefficient reversal
//!   (`rev(p)(u) = u^(deg p) p(1/u)` has nonzero constant term), where the
//!   valuation is `deg den - deg num`.
//!
//! The valuation of the zero function is [`Valuation::Infinite`] and its
//! coefficient list is empty.

use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::poly::Poly;
use crate::rat::Rat;
use crate::ratfn::RatFn;
use crate::series::{ser_invert, ser_mul};
use num_traits::Zero;
use std::fmt;

/// A point of the projective line over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum P1Point {
    /// An affine rational point.
    Finite(Rat),
    /// The point at infinity.
    Infinity,
}

impl P1Point {
    /// Convenience constructor for small integer points.
    pub fn finite(n: i64) -> P1Point {
        P1Point::Finite(crate::rat::rint(n))
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(c) => write!(f, "{c}"),
            P1Point::Infinity => write!(f, "inf"),
        }
    }
}

/// Order of vanishing at a point: finite for a nonzero function, infinite
/// for the zero function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    /// `t^v * (unit)` for the local parameter `t`; negative at poles.
    Finite(i64),
    /// The zero function.
    Infinite,
}

impl Valuation {
    /// The finite value, or `None` for the zero function.
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

/// Leading Laurent data of a function at a point: `order` coefficients
/// starting at the valuation, in the local parameter of the center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalExpansion {
    /// Expansion center.
    pub center: P1Point,
    /// Valuation of the function at the center.
    pub valuation: Valuation,
    /// Coefficients from the valuation upward; exactly `order` of them for a
    /// nonzero function (zero-padded if the tail is exact), empty for zero.
    pub coeffs: Vec<Rat>,
    /// Requested truncation length.
    pub order: usize,
}

impl LocalExpansion {
    /// The coefficient of `t^e` in the expansion, provided `e` lies below
    /// the truncation horizon; `None` past it.
    pub fn coeff_at(&self, e: i64) -> Option<Rat> {
        match self.valuation {
            Valuation::Infinite => Some(Rat::zero()),
            Valuation::Finite(v) => {
                if e < v {
                    Some(Rat::zero())
                } else if (e - v) < self.order as i64 {
                    Some(self.coeffs[(e - v) as usize].clone())
                } else {
                    None
                }
            }
        }
    }
}

/// Expands `f` at `center` to `order` coefficients starting at the
/// valuation. `order` must be positive.
pub fn local_expand(f: &RatFn, center: &P1Point, order: usize) -> LocalExpansion {
    assert!(order > 0, "expansion order must be positive");
    if f.is_zero() {
        return LocalExpansion {
            center: center.clone(),
            valuation: Valuation::Infinite,
            coeffs: Vec::new(),
            order,
        };
    }
    let q = Rationals;
    let (val, num_low, den_low) = match center {
        P1Point::Finite(c) => {
            let n = f.num().shift(c);
            let d = f.den().shift(c);
            let vn = n.order_at_zero().expect("nonzero numerator") as i64;
            let vd = d.order_at_zero().expect("nonzero denominator") as i64;
            (vn - vd, strip_low(&n, vn as usize), strip_low(&d, vd as usize))
        }
        P1Point::Infinity => {
            // In u = 1/x: f(1/u) = u^(deg den - deg num) * rev num / rev den.
            let dn = f.num().degree().expect("nonzero numerator") as i64;
            let dd = f.den().degree().expect("nonzero denominator") as i64;
            (dd - dn, f.num().reversed(), f.den().reversed())
        }
    };
    let ns = series_of(&num_low, order);
    let ds = series_of(&den_low, order);
    let coeffs = ser_mul(&q, &ns, &ser_invert(&q, &ds));
    debug_assert!(!coeffs[0].is_zero(), "leading coefficient must be a unit");
    LocalExpansion {
        center: center.clone(),
        valuation: Valuation::Finite(val),
        coeffs,
        order,
    }
}

/// The valuation of `f` at `center` (cheap: expansion of length 1).
pub fn valuation_at(f: &RatFn, center: &P1Point) -> Valuation {
    local_expand(f, center, 1).valuation
}

/// The window of Laurent coefficients of `f` at `center` for exponents
/// `lo, lo+1, ..., lo+count-1`.
///
/// Fails with [`Error::PoleOrderViolation`] if `f` has a pole deeper than
/// `-lo` at the center, since then the window would miss nonzero terms.
pub fn laurent_window(f: &RatFn, center: &P1Point, lo: i64, count: usize) -> Result<Vec<Rat>> {
    if f.is_zero() {
        return Ok(vec![Rat::zero(); count]);
    }
    let le = local_expand(f, center, count);
    let v = le.valuation.finite().expect("nonzero function");
    if v < lo {
        return Err(Error::PoleOrderViolation {
            point: center.to_string(),
            found: -v,
            allowed: -lo,
        });
    }
    Ok((0..count as i64)
        .map(|k| le.coeff_at(lo + k).unwrap_or_else(Rat::zero))
        .collect())
}

/// Drops the `v` known-zero low coefficients of `p`.
fn strip_low(p: &Poly, v: usize) -> Poly {
    Poly::from_coeffs(p.coeffs()[v..].to_vec())
}

/// First `order` coefficients of `p` as a series (zero-padded).
fn series_of(p: &Poly, order: usize) -> Vec<Rat> {
    (0..order).map(|k| p.coeff(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_ints(coeffs)
    }

    /// Independent oracle: the expansion of 1/(x+1) at x = 2 is the
    /// geometric series 1/(3 + t) = (1/3) sum (-t/3)^k, so the expansion of
    /// (x-2)^3/(x+1) has valuation 3 and coefficients (1/3)(-1/3)^k.
    #[test]
    fn triple_zero_over_simple_pole_at_the_zero() {
        let f = RatFn::new(p(&[-2, 1]).pow(3), p(&[1, 1]));
        let le = local_expand(&f, &P1Point::finite(2), 4);
        assert_eq!(le.valuation, Valuation::Finite(3));
        assert_eq!(
            le.coeffs,
            vec![rat(1, 3), rat(-1, 9), rat(1, 27), rat(-1, 81)]
        );
    }

    #[test]
    fn expansion_at_a_pole() {
        // 1/(x(x-1)) at 0: -1/t * 1/(1 - t) = -t^-1 - 1 - t - ...
        let f = RatFn::new(Poly::one(), &p(&[0, 1]) * &p(&[-1, 1]));
        let le = local_expand(&f, &P1Point::finite(0), 3);
        assert_eq!(le.valuation, Valuation::Finite(-1));
        assert_eq!(le.coeffs, vec![rint(-1), rint(-1), rint(-1)]);
    }

    #[test]
    fn expansion_at_infinity() {
        // x^2/(x^2+1) = 1/(1+u^2) = 1 - u^2 + ... : valuation 0.
        let f = RatFn::new(p(&[0, 0, 1]), p(&[1, 0, 1]));
        let le = local_expand(&f, &P1Point::Infinity, 4);
        assert_eq!(le.valuation, Valuation::Finite(0));
        assert_eq!(le.coeffs, vec![rint(1), rint(0), rint(-1), rint(0)]);

        // x^3 has a pole of order 3 at infinity.
        let g = RatFn::from_poly(p(&[0, 0, 0, 1]));
        let lg = local_expand(&g, &P1Point::Infinity, 2);
        assert_eq!(lg.valuation, Valuation::Finite(-3));
        assert_eq!(lg.coeffs, vec![rint(1), rint(0)]);

        // 1/(x - 5) vanishes to order 1 at infinity.
        let h = RatFn::inv_linear_pow(&rint(5), 1);
        let lh = local_expand(&h, &P1Point::Infinity, 3);
        assert_eq!(lh.valuation, Valuation::Finite(1));
        // 1/(1/u - 5) = u/(1 - 5u) = u + 5u^2 + 25u^3...
        assert_eq!(lh.coeffs, vec![rint(1), rint(5), rint(25)]);
    }

    #[test]
    fn zero_function_has_infinite_valuation() {
        let le = local_expand(&RatFn::zero(), &P1Point::finite(1), 5);
        assert_eq!(le.valuation, Valuation::Infinite);
        assert!(le.coeffs.is_empty());
        assert_eq!(le.coeff_at(-3), Some(Rat::zero()));
    }

    #[test]
    fn truncation_tail_of_polynomials_is_zero_padded() {
        let f = RatFn::from_poly(p(&[0, 0, 7])); // 7x^2 at 0
        let le = local_expand(&f, &P1Point::finite(0), 5);
        assert_eq!(le.valuation, Valuation::Finite(2));
        assert_eq!(le.coeffs, vec![rint(7), rint(0), rint(0), rint(0), rint(0)]);
    }

    #[test]
    fn expansion_recombines_to_the_function() {
        // Sanity: multiply the expansion of f at c back by (x-c)^-val and
        // compare a few evaluations near nothing in particular — instead,
        // verify algebraically: truncated series of num/den times den equals
        // num to the truncation order.
        let f = RatFn::new(p(&[1, 2, 1]), p(&[-3, 0, 1]));
        let c = rat(1, 2);
        let order = 6;
        let le = local_expand(&f, &P1Point::Finite(c.clone()), order);
        let v = le.valuation.finite().unwrap();
        assert_eq!(v, 0);
        let q = Rationals;
        let den_series = series_of(&f.den().shift(&c), order);
        let num_series = series_of(&f.num().shift(&c), order);
        assert_eq!(ser_mul(&q, &le.coeffs, &den_series), num_series);
    }

    #[test]
    fn window_pads_and_rejects_pole_violations() {
        let f = RatFn::inv_linear_pow(&rint(0), 2); // 1/x^2
        // Window starting at -3 sees [0, 1, 0, 0] for exponents -3..0.
        let w = laurent_window(&f, &P1Point::finite(0), -3, 4).unwrap();
        assert_eq!(w, vec![rint(0), rint(1), rint(0), rint(0)]);
        // Window starting at -1 misses the pole: error.
        let err = laurent_window(&f, &P1Point::finite(0), -1, 4);
        assert!(matches!(err, Err(Error::PoleOrderViolation { .. })));
    }

    #[test]
    fn coeff_at_respects_truncation_horizon() {
        let f = RatFn::inv_linear_pow(&rint(0), 1);
        let le = local_expand(&f, &P1Point::finite(0), 2);
        assert_eq!(le.coeff_at(-2), Some(Rat::zero()));
        assert_eq!(le.coeff_at(-1), Some(rint(1)));
        assert_eq!(le.coeff_at(0), Some(rint(0)));
        assert_eq!(le.coeff_at(1), None); // beyond truncation
    }
}
