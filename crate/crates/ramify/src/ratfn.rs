//! Rational functions in one variable and their Wronskians.
//!
//! A [`RatFn`] is a reduced fraction of [`Poly`]s: numerator and denominator
//! coprime, denominator monic and nonzero, the zero function stored as
//! `0/1`. This normal form makes equality structural.
//!
//! The Wronskian of a family of rational functions is computed without any
//! quotient-rule blowup: with `D` a common denominator and `p_i = D f_i`,
//! repeated rows of the product rule give
//!
//! ```text
//! W(f_1, ..., f_k) = W(p_1, ..., p_k) / D^k,
//! ```
//!
//! so it suffices to take derivatives of polynomials and one determinant,
//! evaluated fraction-free by the Bareiss recurrence (all intermediate
//! divisions are exact).

use crate::poly::Poly;
use crate::rat::Rat;
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A rational function `num/den` in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    /// Builds `num/den` and normalizes.
    ///
    /// # Panics
    /// Panics if `den` is the zero polynomial.
    pub fn new(num: Poly, den: Poly) -> RatFn {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFn {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        // Make the denominator monic, absorbing the scalar into the numerator.
        let lead = den.leading().expect("nonzero denominator").clone();
        den = den.scale(&lead.recip());
        num = num.scale(&lead.recip());
        RatFn { num, den }
    }

    /// A polynomial viewed as a rational function.
    pub fn from_poly(p: Poly) -> RatFn {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }

    /// The zero function.
    pub fn zero() -> RatFn {
        RatFn::from_poly(Poly::zero())
    }

    /// The constant 1.
    pub fn one() -> RatFn {
        RatFn::from_poly(Poly::one())
    }

    /// The coordinate function `x`.
    pub fn x() -> RatFn {
        RatFn::from_poly(Poly::x())
    }

    /// A constant.
    pub fn constant(c: Rat) -> RatFn {
        RatFn::from_poly(Poly::constant(c))
    }

    /// `1 / (x - root)^k`.
    pub fn inv_linear_pow(root: &Rat, k: usize) -> RatFn {
        RatFn::new(Poly::one(), Poly::linear(root).pow(k))
    }

    /// Numerator (coprime to the denominator).
    pub fn num(&self) -> &Poly {
        &self.num
    }

    /// Denominator (monic).
    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// True for the zero function.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rat) -> RatFn {
        if c.is_zero() {
            return RatFn::zero();
        }
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Derivative via the quotient rule, reduced.
    pub fn derivative(&self) -> RatFn {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        RatFn::new(n, d)
    }

    /// Evaluation, `None` at a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFn::new(n, &self.den * &rhs.den)
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        let n = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RatFn::new(n, &self.den * &rhs.den)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        RatFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, rhs: &RatFn) -> RatFn {
        assert!(!rhs.is_zero(), "division by the zero function");
        RatFn::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

/// Monic least common multiple of two polynomials.
fn poly_lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = a.gcd(b);
    (&a.div_exact(&g) * b).monic()
}

/// Determinant of a square polynomial matrix by fraction-free (Bareiss)
/// elimination. Every division performed is exact.
fn poly_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign_flip = false;
    let mut prev = Poly::one();
    for r in 0..n - 1 {
        // Pivot: any row at or below r with a nonzero entry in column r.
        let Some(pr) = (r..n).find(|&i| !m[i][r].is_zero()) else {
            return Poly::zero();
        };
        if pr != r {
            m.swap(r, pr);
            sign_flip = !sign_flip;
        }
        for i in r + 1..n {
            for j in r + 1..n {
                let t = &(&m[r][r] * &m[i][j]) - &(&m[i][r] * &m[r][j]);
                m[i][j] = t.div_exact(&prev);
            }
            m[i][r] = Poly::zero();
        }
        prev = m[r][r].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -&det
    } else {
        det
    }
}

/// Wronskian `det( f_j^(i) )` of a family of rational functions, computed by
/// clearing denominators first: with `D = lcm` of the denominators and
/// `p_j = D f_j`, returns `W(p_1..p_k) / D^k`.
pub fn wronskian(fs: &[RatFn]) -> RatFn {
    let k = fs.len();
    if k == 0 {
        return RatFn::one();
    }
    let d = fs.iter().fold(Poly::one(), |acc, f| poly_lcm(&acc, &f.den));
    let cleared: Vec<Poly> = fs
        .iter()
        .map(|f| &f.num * &d.div_exact(&f.den))
        .collect();
    // Column j holds the derivatives of cleared[j]; row i is the i-th
    // derivative, so entry (i, j) = cleared[j]^(i).
    let mut rows: Vec<Vec<Poly>> = vec![cleared];
    for i in 1..k {
        let prev = &rows[i - 1];
        rows.push(prev.iter().map(Poly::derivative).collect());
    }
    let det = poly_det(rows);
    RatFn::new(det, d.pow(k))
}
