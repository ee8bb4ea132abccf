//! Linear series on elliptic curves, over the rationals and prime fields.
//!
//! Curves are short Weierstrass cubics `y^2 = x^3 + a x + b` over a
//! [`Field`] of characteristic 0 or `p > 3`, with the distinguished point at
//! infinity (the group identity) written `O` and called *the origin* below.
//! The space of functions with poles only at the origin, of order at most
//! `m`, has the monomial basis
//!
//! ```text
//! { x^i y^j : 2i + 3j <= m, j <= 1 },
//! ```
//!
//! one monomial per attainable pole order `{0, 2, 3, ..., m}` — see
//! [`pole_basis`]. An [`EllSeries`] is an independent span of coordinate
//! vectors over that basis, viewed inside sections of the degree-`ambient`
//! line bundle supported at the origin.
//!
//! Vanishing sequences are computed exactly, as on the projective line, by
//! row-reducing local-expansion matrices:
//!
//! - at an affine point, the local parameter is `x - x_Q` (or `y` at a
//!   2-torsion point), with the conjugate coordinate developed by a series
//!   Newton iteration;
//! - at the origin, the parameter is `t = x/y`; writing `1/y = t^3 u` the
//!   unit `u` satisfies `u = 1 + a t^4 u^2 + b t^6 u^3`, and the section
//!   trivialization multiplies everything by `t^ambient`, so all rows are
//!   plain power series.
//!
//! The `verify_*` functions package the expected weight laws: the origin
//! weight `(g-1)^2` of the full series of pole order `g`, the off-origin
//! bounds for it and for the pencil members through its twice-shrunk
//! subspace, and the counting certificate that only the origin is killed by
//! both `g` and `g - 2` in the group of a small prime-field curve.

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::matrix::{kernel_basis_in, rref_in};
use crate::p1::VanishingSequence;
use crate::rat::{rint, Rat};
use crate::report::Case;
use crate::sampling::stream;
use crate::series::{ser_add, ser_const, ser_invert, ser_mul, ser_pow, ser_scale, ser_sub, ser_zero};
use std::fmt::Write as _;

/// A point of a short Weierstrass curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EcPoint<E> {
    /// The point at infinity — the group identity and marked origin.
    Infinity,
    /// An affine point `(x, y)`.
    Affine(E, E),
}

impl<E> EcPoint<E> {
    /// True for the point at infinity.
    pub fn is_infinity(&self) -> bool {
        matches!(self, EcPoint::Infinity)
    }
}

/// Renders a point with the field's notion of display.
pub fn render_point<K: Field>(k: &K, p: &EcPoint<K::Elem>) -> String {
    match p {
        EcPoint::Infinity => "O".to_string(),
        EcPoint::Affine(x, y) => format!("({}, {})", k.render(x), k.render(y)),
    }
}

/// A nonsingular short Weierstrass cubic `y^2 = x^3 + a x + b`.
#[derive(Clone, Debug)]
pub struct EllipticCurve<K: Field> {
    k: K,
    a: K::Elem,
    b: K::Elem,
}

impl<K: Field> EllipticCurve<K> {
    /// Builds the curve, rejecting parameters with `4a^3 + 27b^2 = 0`.
    pub fn new(k: K, a: K::Elem, b: K::Elem) -> Result<EllipticCurve<K>> {
        let a3 = k.mul(&k.mul(&a, &a), &a);
        let b2 = k.mul(&b, &b);
        let disc = k.add(
            &k.mul(&k.from_i64(4), &a3),
            &k.mul(&k.from_i64(27), &b2),
        );
        if k.is_zero(&disc) {
            return Err(Error::SingularCurve {
                a: k.render(&a),
                b: k.render(&b),
            });
        }
        Ok(EllipticCurve { k, a, b })
    }

    /// The coefficient field context.
    pub fn field(&self) -> &K {
        &self.k
    }

    /// Coefficient of `x`.
    pub fn a(&self) -> &K::Elem {
        &self.a
    }

    /// Constant coefficient.
    pub fn b(&self) -> &K::Elem {
        &self.b
    }

    /// `x^3 + a x + b`.
    fn rhs(&self, x: &K::Elem) -> K::Elem {
        let k = &self.k;
        let x2 = k.mul(x, x);
        let x3 = k.mul(&x2, x);
        k.add(&k.add(&x3, &k.mul(&self.a, x)), &self.b)
    }

    /// Whether `p` satisfies the curve equation.
    pub fn contains(&self, p: &EcPoint<K::Elem>) -> bool {
        match p {
            EcPoint::Infinity => true,
            EcPoint::Affine(x, y) => {
                let k = &self.k;
                k.mul(y, y) == self.rhs(x)
            }
        }
    }

    /// Group negation.
    pub fn neg(&self, p: &EcPoint<K::Elem>) -> EcPoint<K::Elem> {
        match p {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(x, y) => EcPoint::Affine(x.clone(), self.k.neg(y)),
        }
    }

    /// Chord-and-tangent addition.
    pub fn add(&self, p: &EcPoint<K::Elem>, q: &EcPoint<K::Elem>) -> EcPoint<K::Elem> {
        let k = &self.k;
        let (x1, y1, x2, y2) = match (p, q) {
            (EcPoint::Infinity, _) => return q.clone(),
            (_, EcPoint::Infinity) => return p.clone(),
            (EcPoint::Affine(x1, y1), EcPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if *y1 == k.neg(y2) {
                // Vertical chord (including a 2-torsion tangent).
                return EcPoint::Infinity;
            }
            // Tangent: (3 x^2 + a) / (2 y).
            let num = k.add(&k.mul(&k.from_i64(3), &k.mul(x1, x1)), &self.a);
            let den = k.mul(&k.from_i64(2), y1);
            k.div(&num, &den)
        } else {
            let num = k.sub(y2, y1);
            let den = k.sub(x2, x1);
            k.div(&num, &den)
        };
        let x3 = k.sub(&k.sub(&k.mul(&lambda, &lambda), x1), x2);
        let y3 = k.sub(&k.mul(&lambda, &k.sub(x1, &x3)), y1);
        EcPoint::Affine(x3, y3)
    }

    /// Scalar multiplication `[n] p`, any sign.
    pub fn mul(&self, n: i64, p: &EcPoint<K::Elem>) -> EcPoint<K::Elem> {
        if n < 0 {
            return self.neg(&self.mul(-n, p));
        }
        let mut acc = EcPoint::Infinity;
        let mut base = p.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Human-readable description.
    pub fn label(&self) -> String {
        let mut s = String::from("y^2 = x^3");
        let k = &self.k;
        if !k.is_zero(&self.a) {
            let _ = write!(s, " + ({})x", k.render(&self.a));
        }
        if !k.is_zero(&self.b) {
            let _ = write!(s, " + ({})", k.render(&self.b));
        }
        s
    }
}

/// The monomials `x^i y^j` with `2i + 3j <= m` and `j <= 1`, sorted by pole
/// order `2i + 3j` at the origin — one per attainable order
/// `{0, 2, 3, ..., m}`.
pub fn pole_basis(m: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for i in 0..=(m / 2) {
        out.push((i, 0));
    }
    if m >= 3 {
        for i in 0..=((m - 3) / 2) {
            out.push((i, 1));
        }
    }
    out.sort_by_key(|&(i, j)| 2 * i + 3 * j);
    out
}

/// A linear series on an elliptic curve: an independent span of coordinate
/// vectors over `pole_basis(ambient)`, viewed inside the sections of the
/// degree-`ambient` bundle supported at the origin.
#[derive(Clone, Debug)]
pub struct EllSeries<K: Field> {
    curve: EllipticCurve<K>,
    ambient: u64,
    basis: Vec<Vec<K::Elem>>,
}

impl<K: Field> EllSeries<K> {
    /// Builds a series, validating coordinate lengths and independence.
    pub fn new(
        curve: EllipticCurve<K>,
        ambient: u64,
        basis: Vec<Vec<K::Elem>>,
    ) -> Result<EllSeries<K>> {
        let width = pole_basis(ambient).len();
        if basis.is_empty() {
            return Err(Error::OutOfRange("series needs a nonempty basis".into()));
        }
        for v in &basis {
            if v.len() != width {
                return Err(Error::OutOfRange(format!(
                    "coordinate vector of length {} over a pole basis of size {width}",
                    v.len()
                )));
            }
        }
        let ech = rref_in(curve.field(), &basis);
        if ech.rank < basis.len() {
            return Err(Error::DependentBasis {
                rank: ech.rank,
                size: basis.len(),
            });
        }
        Ok(EllSeries {
            curve,
            ambient,
            basis,
        })
    }

    /// The underlying curve.
    pub fn curve(&self) -> &EllipticCurve<K> {
        &self.curve
    }

    /// Degree of the ambient bundle at the origin.
    pub fn ambient(&self) -> u64 {
        self.ambient
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinate vectors over `pole_basis(ambient)`.
    pub fn basis(&self) -> &[Vec<K::Elem>] {
        &self.basis
    }
}

/// The complete series of functions with pole order at most `m` at the
/// origin, inside the ambient bundle of degree `ambient >= m`: unit
/// coordinate vectors, one per monomial of `pole_basis(m)`.
pub fn complete_series<K: Field>(
    curve: &EllipticCurve<K>,
    m: u64,
    ambient: u64,
) -> Result<EllSeries<K>> {
    if ambient < m {
        return Err(Error::OutOfRange(format!(
            "ambient degree {ambient} below pole bound {m}"
        )));
    }
    let k = curve.field();
    let width = pole_basis(ambient).len();
    let small = pole_basis(m);
    let positions: Vec<usize> = {
        let big = pole_basis(ambient);
        small
            .iter()
            .map(|mono| big.iter().position(|x| x == mono).expect("subset basis"))
            .collect()
    };
    let basis = positions
        .iter()
        .map(|&pos| {
            let mut v = vec![k.zero(); width];
            v[pos] = k.one();
            v
        })
        .collect();
    EllSeries::new(curve.clone(), ambient, basis)
}

// ---- Local expansions ----

/// Truncated series for `x(t)` and `y(t)` at an affine point, in the local
/// parameter `t = x - x_Q` (general case) or `t = y` (2-torsion).
fn affine_coordinate_series<K: Field>(
    curve: &EllipticCurve<K>,
    x_q: &K::Elem,
    y_q: &K::Elem,
    len: usize,
) -> (Vec<K::Elem>, Vec<K::Elem>) {
    let k = curve.field();
    let newton_steps = len.next_power_of_two().trailing_zeros() as usize + 2;
    if !k.is_zero(y_q) {
        // t = x - x_Q; y = sqrt(rhs(x_Q + t)) by Newton from y_Q.
        let mut xs = ser_zero(k, len);
        xs[0] = x_q.clone();
        if len > 1 {
            xs[1] = k.one();
        }
        let c = curve_rhs_series(curve, &xs);
        let mut y = ser_const(k, y_q.clone(), len);
        let half = k.div(&k.one(), &k.from_i64(2));
        for _ in 0..newton_steps {
            // y <- (y + c/y) / 2.
            let quot = ser_mul(k, &c, &ser_invert(k, &y));
            y = ser_scale(k, &half, &ser_add(k, &y, &quot));
        }
        debug_assert_eq!(ser_mul(k, &y, &y), c, "square root iteration converged");
        (xs, y)
    } else {
        // 2-torsion: t = y; solve x^3 + a x + b - t^2 = 0 for x(t) by
        // Newton from x_Q. The curve is nonsingular, so 3 x_Q^2 + a != 0.
        let mut ys = ser_zero(k, len);
        if len > 1 {
            ys[1] = k.one();
        }
        let t2 = ser_mul(k, &ys, &ys);
        let mut x = ser_const(k, x_q.clone(), len);
        for _ in 0..newton_steps {
            let fx = ser_sub(k, &curve_rhs_series(curve, &x), &t2);
            // f'(x) = 3x^2 + a.
            let three_x2 = ser_scale(k, &k.from_i64(3), &ser_mul(k, &x, &x));
            let fpx = ser_add(k, &three_x2, &ser_const(k, curve.a().clone(), len));
            x = ser_sub(k, &x, &ser_mul(k, &fx, &ser_invert(k, &fpx)));
        }
        let y2 = ser_mul(k, &ys, &ys);
        debug_assert_eq!(curve_rhs_series(curve, &x), y2, "root iteration converged");
        (x, ys)
    }
}

/// `rhs(x(t)) = x^3 + a x + b` as a series.
fn curve_rhs_series<K: Field>(curve: &EllipticCurve<K>, xs: &[K::Elem]) -> Vec<K::Elem> {
    let k = curve.field();
    let len = xs.len();
    let x3 = ser_pow(k, xs, 3);
    let ax = ser_scale(k, curve.a(), xs);
    ser_add(
        k,
        &ser_add(k, &x3, &ax),
        &ser_const(k, curve.b().clone(), len),
    )
}

/// The unit `w = 1/u` in the origin expansion: with `t = x/y` and
/// `1/y = s = t^3 u`, the curve equation forces
/// `u = 1 + a t^4 u^2 + b t^6 u^3`, solved by fixed-point iteration (each
/// pass gains four orders). Then `t^2 x = t^3 y = w`.
fn origin_unit_inverse<K: Field>(curve: &EllipticCurve<K>, len: usize) -> Vec<K::Elem> {
    let k = curve.field();
    let mut u = ser_const(k, k.one(), len);
    let steps = len / 4 + 2;
    for _ in 0..steps {
        // u <- 1 + a t^4 u^2 + b t^6 u^3.
        let u2 = ser_mul(k, &u, &u);
        let u3 = ser_mul(k, &u2, &u);
        let mut next = ser_const(k, k.one(), len);
        for (shift, coeff, pow) in [(4usize, curve.a(), &u2), (6usize, curve.b(), &u3)] {
            let mut term = ser_zero(k, len);
            for idx in shift..len {
                term[idx] = k.mul(coeff, &pow[idx - shift]);
            }
            next = ser_add(k, &next, &term);
        }
        u = next;
    }
    ser_invert(k, &u)
}

/// Expansion rows of the full ambient pole basis at a point: row `r` is the
/// truncated series of the section `t^shift * x^i y^j` for the `r`-th
/// monomial, where column `s` corresponds to section vanishing order `s`.
pub fn ambient_expansion<K: Field>(
    curve: &EllipticCurve<K>,
    at: &EcPoint<K::Elem>,
    ambient: u64,
    len: usize,
) -> Result<Vec<Vec<K::Elem>>> {
    let k = curve.field();
    let monos = pole_basis(ambient);
    match at {
        EcPoint::Affine(x_q, y_q) => {
            if !curve.contains(at) {
                return Err(Error::PointOffCurve(render_point(k, at)));
            }
            let (xs, ys) = affine_coordinate_series(curve, x_q, y_q, len);
            let max_i = monos.iter().map(|&(i, _)| i).max().unwrap_or(0);
            let mut xpow = Vec::with_capacity(max_i as usize + 1);
            xpow.push(ser_const(k, k.one(), len));
            for _ in 0..max_i {
                let next = ser_mul(k, xpow.last().unwrap(), &xs);
                xpow.push(next);
            }
            Ok(monos
                .iter()
                .map(|&(i, j)| {
                    let base = &xpow[i as usize];
                    if j == 0 {
                        base.clone()
                    } else {
                        ser_mul(k, base, &ys)
                    }
                })
                .collect())
        }
        EcPoint::Infinity => {
            // Section trivialization: multiply by t^ambient. Then
            // t^ambient x^i y^j = t^(ambient - 2i - 3j) w^(i + j).
            let w = origin_unit_inverse(curve, len);
            let max_ij = monos.iter().map(|&(i, j)| i + j).max().unwrap_or(0);
            let mut wpow = Vec::with_capacity(max_ij as usize + 1);
            wpow.push(ser_const(k, k.one(), len));
            for _ in 0..max_ij {
                let next = ser_mul(k, wpow.last().unwrap(), &w);
                wpow.push(next);
            }
            Ok(monos
                .iter()
                .map(|&(i, j)| {
                    let shift = (ambient - 2 * i - 3 * j) as usize;
                    let base = &wpow[(i + j) as usize];
                    let mut row = ser_zero(k, len);
                    for idx in shift..len {
                        row[idx] = base[idx - shift].clone();
                    }
                    row
                })
                .collect())
        }
    }
}

/// Section-expansion rows of a series, given the ambient rows at the same
/// point and truncation.
fn series_rows<K: Field>(s: &EllSeries<K>, ambient_rows: &[Vec<K::Elem>]) -> Vec<Vec<K::Elem>> {
    let k = s.curve.field();
    let len = ambient_rows.first().map(|r| r.len()).unwrap_or(0);
    s.basis
        .iter()
        .map(|coords| {
            let mut row = ser_zero(k, len);
            for (c, arow) in coords.iter().zip(ambient_rows) {
                if k.is_zero(c) {
                    continue;
                }
                row = ser_add(k, &row, &ser_scale(k, c, arow));
            }
            row
        })
        .collect()
}

/// Vanishing sequence of a series at a point of its curve. Section orders
/// are measured in the ambient bundle (so the origin orders are pole
/// differences `ambient - pole order`, and affine orders are plain
/// valuations).
pub fn vanishing_at_point<K: Field>(
    s: &EllSeries<K>,
    at: &EcPoint<K::Elem>,
) -> Result<VanishingSequence> {
    let len = s.ambient as usize + 2;
    let ambient_rows = ambient_expansion(&s.curve, at, s.ambient, len)?;
    vanishing_from_rows(s, at, &ambient_rows)
}

/// As [`vanishing_at_point`], with precomputed ambient rows (for sweeps
/// probing many subspaces at the same point).
pub fn vanishing_from_rows<K: Field>(
    s: &EllSeries<K>,
    at: &EcPoint<K::Elem>,
    ambient_rows: &[Vec<K::Elem>],
) -> Result<VanishingSequence> {
    let k = s.curve.field();
    let rows = series_rows(s, ambient_rows);
    let ech = rref_in(k, &rows);
    if ech.rank < s.dim() {
        // Orders are bounded by the ambient degree and the truncation
        // exceeds it, so missing rank means dependence, not truncation.
        return Err(Error::DependentBasis {
            rank: ech.rank,
            size: s.dim(),
        });
    }
    let orders: Vec<i64> = ech.pivots.iter().map(|&c| c as i64).collect();
    let weight = orders.iter().enumerate().map(|(j, o)| o - j as i64).sum();
    let _ = at;
    Ok(VanishingSequence { orders, weight })
}

/// The subspace of sections vanishing to order at least `min_order` at a
/// point, as a new series (empty subspaces are rejected).
pub fn subspace_vanishing<K: Field>(
    s: &EllSeries<K>,
    at: &EcPoint<K::Elem>,
    min_order: usize,
) -> Result<EllSeries<K>> {
    let k = s.curve.field();
    let len = (s.ambient as usize + 2).max(min_order);
    let ambient_rows = ambient_expansion(&s.curve, at, s.ambient, len)?;
    let rows = series_rows(s, &ambient_rows);
    // Conditions: the first `min_order` series coefficients vanish. One
    // system row per condition, one column per basis element.
    let system: Vec<Vec<K::Elem>> = (0..min_order)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect();
    let kern = kernel_basis_in(k, &system, s.dim());
    if kern.is_empty() {
        return Err(Error::OutOfRange(format!(
            "no sections vanish to order {min_order} at {}",
            render_point(k, at)
        )));
    }
    let new_basis = kern
        .iter()
        .map(|combo| {
            let mut v = vec![k.zero(); s.basis[0].len()];
            for (c, coords) in combo.iter().zip(&s.basis) {
                if k.is_zero(c) {
                    continue;
                }
                for (vi, xi) in v.iter_mut().zip(coords) {
                    *vi = k.add(vi, &k.mul(c, xi));
                }
            }
            v
        })
        .collect();
    EllSeries::new(s.curve.clone(), s.ambient, new_basis)
}

/// The expected vanishing sequence at the origin of the complete series of
/// pole order `g` in the ambient bundle of degree `2g - 2`: section orders
/// `{2g - 2 - p : p a pole order}`, i.e. `{g-2, ..., 2g-4} ∪ {2g-2}`, of
/// weight `(g-1)^2`.
pub fn origin_orders(g: u64) -> VanishingSequence {
    let g = g as i64;
    let mut orders: Vec<i64> = (g - 2..=2 * g - 4).collect();
    orders.push(2 * g - 2);
    let weight = orders.iter().enumerate().map(|(j, o)| o - j as i64).sum();
    VanishingSequence { orders, weight }
}

// ---- Pencils ----

/// One member of the pencil between the complete series of pole order `g`
/// and its subspace of pole order `g - 2`.
pub struct EllPencilMember<K: Field> {
    /// Pencil parameter description.
    pub desc: String,
    /// The member.
    pub series: EllSeries<K>,
}

/// Members of the pencil `H^0((g-2)O) ⊆ V_1 ⊂ H^0(gO)`: the fixed part is
/// the complete series of pole order `g - 2`, and the moving section sweeps
/// combinations of the two monomials of pole orders `g - 1` and `g`. Axis
/// members `(1:0)`, `(0:1)`, `(1:1)` come first, then `extra` seeded
/// parameters `(1:t)`, `t != 0`.
pub fn ell_pencil_members<K: Field>(
    curve: &EllipticCurve<K>,
    g: u64,
    ambient: u64,
    extra: usize,
    seed: u64,
    label: &str,
) -> Result<Vec<EllPencilMember<K>>> {
    if g < 3 {
        return Err(Error::OutOfRange("pencil needs pole order g >= 3".into()));
    }
    let k = curve.field();
    let big = pole_basis(ambient);
    let width = big.len();
    let unit = |order: u64| -> Vec<K::Elem> {
        let pos = big
            .iter()
            .position(|&(i, j)| 2 * i + 3 * j == order)
            .expect("attainable pole order");
        let mut v = vec![k.zero(); width];
        v[pos] = k.one();
        v
    };
    // Fixed block: pole orders {0, 2, ..., g-2}.
    let fixed: Vec<Vec<K::Elem>> = pole_basis(g - 2)
        .iter()
        .map(|&(i, j)| unit(2 * i + 3 * j))
        .collect();
    let e1 = unit(g - 1);
    let e2 = unit(g);
    let combine = |alpha: &K::Elem, beta: &K::Elem| -> Vec<K::Elem> {
        e1.iter()
            .zip(&e2)
            .map(|(u, v)| k.add(&k.mul(alpha, u), &k.mul(beta, v)))
            .collect()
    };
    let mut params: Vec<(String, Vec<K::Elem>)> = vec![
        ("(1:0)".into(), e1.clone()),
        ("(0:1)".into(), e2.clone()),
        ("(1:1)".into(), combine(&k.one(), &k.one())),
    ];
    let mut rng = stream(seed, &format!("ell-pencil/{label}/g{g}"));
    for _ in 0..extra {
        let t = loop {
            let t = k.sample(&mut rng);
            if !k.is_zero(&t) {
                break t;
            }
        };
        params.push((format!("(1:{})", k.render(&t)), combine(&k.one(), &t)));
    }
    params
        .into_iter()
        .map(|(desc, moving)| {
            let mut basis = fixed.clone();
            basis.push(moving);
            Ok(EllPencilMember {
                desc,
                series: EllSeries::new(curve.clone(), ambient, basis)?,
            })
        })
        .collect()
}

// ---- Fixture curves and point sampling ----

/// A rational fixture: a curve together with a base point generating the
/// samples, extra named points, and a short label.
pub struct RationalFixture {
    /// Short stable name for report ids.
    pub name: &'static str,
    /// The curve.
    pub curve: EllipticCurve<Rationals>,
    /// Base point for multiples.
    pub base: EcPoint<Rat>,
    /// Additional sample points (e.g. the full 2-torsion).
    pub extra: Vec<EcPoint<Rat>>,
}

/// The fixed list of rational curves used by the sweeps: two generic
/// infinite-order base points, one infinite-order point certified by
/// non-integrality of its double, one full 2-torsion configuration, and one
/// purely torsion cycle.
pub fn rational_fixtures() -> Vec<RationalFixture> {
    let q = Rationals;
    let curve = |a: i64, b: i64| EllipticCurve::new(q, rint(a), rint(b)).expect("fixture curve");
    let pt = |x: i64, y: i64| EcPoint::Affine(rint(x), rint(y));
    vec![
        RationalFixture {
            name: "c1",
            curve: curve(0, -2),
            base: pt(3, 5),
            extra: vec![],
        },
        RationalFixture {
            name: "c2",
            curve: curve(0, 3),
            base: pt(1, 2),
            extra: vec![],
        },
        RationalFixture {
            name: "c3",
            curve: curve(-2, 2),
            base: pt(1, 1),
            extra: vec![],
        },
        RationalFixture {
            name: "c4",
            curve: curve(-1, 0),
            base: pt(0, 0),
            extra: vec![pt(1, 0), pt(-1, 0)],
        },
        RationalFixture {
            name: "c5",
            curve: curve(0, 1),
            base: pt(2, 3),
            extra: vec![],
        },
    ]
}

/// Deterministic affine sample points: `[k] base` and its negation for
/// `k = 1..=max_multiple` (stopping at the identity or on a repeat), then
/// the extras, capped and deduplicated.
pub fn point_samples(
    curve: &EllipticCurve<Rationals>,
    base: &EcPoint<Rat>,
    extra: &[EcPoint<Rat>],
    max_multiple: i64,
    cap: usize,
) -> Vec<EcPoint<Rat>> {
    let mut out: Vec<EcPoint<Rat>> = Vec::new();
    let mut acc = base.clone();
    for _ in 1..=max_multiple {
        if acc.is_infinity() {
            break;
        }
        if out.contains(&acc) {
            break; // torsion cycle closed
        }
        out.push(acc.clone());
        let neg = curve.neg(&acc);
        if !out.contains(&neg) {
            out.push(neg);
        }
        acc = curve.add(&acc, base);
    }
    for e in extra {
        debug_assert!(curve.contains(e));
        if !e.is_infinity() && !out.contains(e) {
            out.push(e.clone());
        }
    }
    out.truncate(cap);
    out
}

/// The prime-field fixture curves over `Z/p`: the three parameter pairs
/// `(0,1)`, `(1,0)`, `(1,1)`, nonsingular for every supported prime.
pub fn prime_fixtures(p: u64) -> Result<Vec<EllipticCurve<PrimeField>>> {
    let f = PrimeField::new(p)?;
    [(0i64, 1i64), (1, 0), (1, 1)]
        .iter()
        .map(|&(a, b)| EllipticCurve::new(f, f.from_i64(a), f.from_i64(b)))
        .collect()
}

/// Every point of a prime-field curve, the identity first, by enumeration.
pub fn enumerate_points(curve: &EllipticCurve<PrimeField>) -> Vec<EcPoint<u64>> {
    let f = *curve.field();
    let p = f.modulus();
    let mut out = vec![EcPoint::Infinity];
    for x in 0..p {
        for y in 0..p {
            let pt = EcPoint::Affine(x, y);
            if curve.contains(&pt) {
                out.push(pt);
            }
        }
    }
    out
}

// ---- Verification suites ----

/// Checks the origin weight law of the complete series of pole order `g`
/// (inside degree `2g - 2`): computed orders match the combinatorial
/// `{g-2..2g-4} ∪ {2g-2}` and the weight is `(g-1)^2`.
pub fn verify_origin_weights<K: Field>(
    curve: &EllipticCurve<K>,
    g: u64,
    label: &str,
) -> Result<Vec<Case>> {
    let v = complete_series(curve, g, 2 * g - 2)?;
    let input = format!("complete series of pole order {g} on {}", curve.label());
    let seq = vanishing_at_point(&v, &EcPoint::Infinity)?;
    let expected = origin_orders(g);
    let gi = g as i64;
    Ok(vec![
        Case::compare(
            format!("{label}|g{g}|origin-orders"),
            &input,
            format!("{:?}", expected.orders),
            format!("{:?}", seq.orders),
            "origin-orders",
        ),
        Case::compare(
            format!("{label}|g{g}|origin-weight"),
            &input,
            ((gi - 1) * (gi - 1)).to_string(),
            seq.weight.to_string(),
            "origin-weight",
        ),
    ])
}

/// Checks the off-origin weight laws at the sampled points: the complete
/// series of pole order `g` has weight at most 1 at each sample (orders
/// `{0..g-2}` plus one of `{g-1, g}`), the span identity
/// `V(-g·O) + V(-(g-3)·Q) = V` holds exactly, and every pencil member
/// through the `(g-2)`-subspace has origin excess in `{0, 1}` and weight at
/// most 2 at each sample.
pub fn verify_weight_bounds<K: Field>(
    curve: &EllipticCurve<K>,
    g: u64,
    points: &[EcPoint<K::Elem>],
    extra_members: usize,
    seed: u64,
    label: &str,
) -> Result<Vec<Case>> {
    if g < 3 {
        return Err(Error::OutOfRange("weight bounds need g >= 3".into()));
    }
    let k = curve.field();
    let ambient = 2 * g - 2;
    let len = ambient as usize + 2;
    let v = complete_series(curve, g, ambient)?;
    let gi = g as i64;
    let mut cases = Vec::new();

    // Precompute ambient rows once per point (members reuse them).
    let origin_rows = ambient_expansion(curve, &EcPoint::Infinity, ambient, len)?;
    let mut point_rows = Vec::new();
    for q in points {
        point_rows.push(ambient_expansion(curve, q, ambient, len)?);
    }

    // Complete series at each sample: orders {0..g-2} + one of {g-1, g}.
    for (qi, (q, rows)) in points.iter().zip(&point_rows).enumerate() {
        let input = format!(
            "complete series of pole order {g} on {} at Q = {}",
            curve.label(),
            render_point(k, q)
        );
        let seq = vanishing_from_rows(&v, q, rows)?;
        let prefix_ok = seq.orders[..g as usize - 1]
            .iter()
            .enumerate()
            .all(|(j, &o)| o == j as i64);
        let last = *seq.orders.last().expect("nonempty orders");
        let ok = prefix_ok && (last == gi - 1 || last == gi) && seq.weight <= 1;
        cases.push(Case::judged(
            format!("{label}|g{g}|q{qi:02}|complete-bound"),
            &input,
            "orders {0..g-2} plus one of {g-1, g}",
            format!("{:?}", seq.orders),
            "point-weight-bound",
            ok,
        ));
        // Span identity: V(-g at origin) + V(-(g-3) at Q) = V.
        let u1 = subspace_vanishing(&v, &EcPoint::Infinity, g as usize)?;
        let u2 = subspace_vanishing(&v, q, (g - 3) as usize)?;
        let mut stacked = u1.basis().to_vec();
        stacked.extend(u2.basis().iter().cloned());
        let rank = rref_in(k, &stacked).rank;
        cases.push(Case::compare(
            format!("{label}|g{g}|q{qi:02}|span"),
            &input,
            format!("dims ({}, {}) spanning {}", gi - 2, 3, g),
            format!("dims ({}, {}) spanning {}", u1.dim(), u2.dim(), rank),
            "span-decomposition",
        ));
    }

    // Pencil members: origin excess in {0,1}; weight <= 2 at the samples.
    let members = ell_pencil_members(curve, g, ambient, extra_members, seed, label)?;
    for (mi, member) in members.iter().enumerate() {
        let vm = &member.series;
        let input = format!(
            "pencil member {} of pole orders ({}, {}) on {}",
            member.desc,
            g - 2,
            g,
            curve.label()
        );
        let seq_o = vanishing_from_rows(vm, &EcPoint::Infinity, &origin_rows)?;
        let eps = seq_o.weight - (gi - 1) * (gi - 1);
        cases.push(Case::judged(
            format!("{label}|g{g}|m{mi:02}|origin-excess"),
            &input,
            "excess in {0, 1}",
            eps.to_string(),
            "pencil-origin-weight",
            eps == 0 || eps == 1,
        ));
        let mut max_wt = 0;
        for (q, rows) in points.iter().zip(&point_rows) {
            let seq = vanishing_from_rows(vm, q, rows)?;
            max_wt = max_wt.max(seq.weight);
        }
        cases.push(Case::judged(
            format!("{label}|g{g}|m{mi:02}|point-bound"),
            &input,
            "weight at most 2 at every sample",
            format!("max weight {max_wt}"),
            "point-weight-bound",
            max_wt <= 2,
        ));
    }
    Ok(cases)
}

/// The counting certificate over `Z/p`: on each fixture curve, the only
/// point killed by both `g` and `g - 2` is the identity (for odd `g` the
/// two multipliers are coprime, so this is the expected picture; the
/// enumeration proves it outright for the given parameters).
pub fn verify_torsion_certificate(p: u64, g: u64) -> Result<Vec<Case>> {
    if g < 3 || g % 2 == 0 {
        return Err(Error::OutOfRange(
            "torsion certificate expects odd g >= 3".into(),
        ));
    }
    let mut cases = Vec::new();
    for (ci, curve) in prime_fixtures(p)?.iter().enumerate() {
        let pts = enumerate_points(curve);
        let input = format!("{} over Z/{p}, {} points", curve.label(), pts.len());
        let offenders: Vec<String> = pts
            .iter()
            .filter(|q| !q.is_infinity())
            .filter(|q| {
                curve.mul(g as i64, q).is_infinity() && curve.mul(g as i64 - 2, q).is_infinity()
            })
            .map(|q| render_point(curve.field(), q))
            .collect();
        cases.push(Case::compare(
            format!("p{p}|e{ci}|g{g}|torsion"),
            &input,
            "no affine point killed by both g and g-2",
            if offenders.is_empty() {
                "no affine point killed by both g and g-2".to_string()
            } else {
                format!("killed: {}", offenders.join(", "))
            },
            "torsion-certificate",
        ));
    }
    Ok(cases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn q_curve(a: i64, b: i64) -> EllipticCurve<Rationals> {
        EllipticCurve::new(Rationals, rint(a), rint(b)).unwrap()
    }

    #[test]
    fn singular_parameters_are_rejected() {
        assert!(matches!(
            EllipticCurve::new(Rationals, rint(0), rint(0)),
            Err(Error::SingularCurve { .. })
        ));
        // 4(-3)^3 + 27(2)^2 = -108 + 108 = 0.
        assert!(matches!(
            EllipticCurve::new(Rationals, rint(-3), rint(2)),
            Err(Error::SingularCurve { .. })
        ));
        assert!(EllipticCurve::new(Rationals, rint(-3), rint(3)).is_ok());
    }

    #[test]
    fn group_law_on_the_torsion_fixture() {
        // y^2 = x^3 + 1 with P = (2, 3) of order 6.
        let e = q_curve(0, 1);
        let p = EcPoint::Affine(rint(2), rint(3));
        assert!(e.contains(&p));
        let p2 = e.mul(2, &p);
        assert_eq!(p2, EcPoint::Affine(rint(0), rint(1)));
        let p3 = e.mul(3, &p);
        assert_eq!(p3, EcPoint::Affine(rint(-1), rint(0)));
        assert_eq!(e.mul(6, &p), EcPoint::Infinity);
        assert_eq!(e.add(&p3, &p3), EcPoint::Infinity); // 2-torsion doubles to O
        assert_eq!(e.mul(-1, &p), EcPoint::Affine(rint(2), rint(-3)));
        // [5]P = [-1]P on a cycle of order 6.
        assert_eq!(e.mul(5, &p), e.mul(-1, &p));
    }

    #[test]
    fn non_integral_double_certifies_infinite_order() {
        // On y^2 = x^3 - 2x + 2, [2](1,1) = (-7/4, 3/8): a non-integral
        // multiple, so (1,1) is not torsion.
        let e = q_curve(-2, 2);
        let p = EcPoint::Affine(rint(1), rint(1));
        let p2 = e.mul(2, &p);
        assert_eq!(p2, EcPoint::Affine(rat(-7, 4), rat(3, 8)));
    }

    #[test]
    fn pole_basis_orders_are_exactly_zero_and_two_up() {
        for m in 0..=9u64 {
            let basis = pole_basis(m);
            let orders: Vec<u64> = basis.iter().map(|&(i, j)| 2 * i + 3 * j).collect();
            let expected: Vec<u64> = std::iter::once(0).chain(2..=m).collect();
            assert_eq!(orders, expected, "pole orders for m = {m}");
            assert!(basis.iter().all(|&(_, j)| j <= 1));
        }
        // dim H^0(m O) = m for m >= 1 (and 1 for m = 0).
        assert_eq!(pole_basis(0).len(), 1);
        for m in 1..=9u64 {
            assert_eq!(pole_basis(m).len() as u64, m.max(1));
        }
    }

    #[test]
    fn origin_expansion_satisfies_the_curve_equation() {
        // With w = t^2 x = t^3 y: w^2 = w^3 + a t^4 w + b t^6 must hold as
        // series (the curve equation times t^6).
        for (a, b) in [(0i64, -2i64), (-2, 2), (-1, 0), (0, 1)] {
            let e = q_curve(a, b);
            let k = e.field();
            let len = 14;
            let w = origin_unit_inverse(&e, len);
            let w2 = ser_mul(k, &w, &w);
            let w3 = ser_mul(k, &w2, &w);
            let mut rhs = w3.clone();
            for (shift, coeff, pow) in [(4usize, e.a(), &w), (6usize, e.b(), &ser_const(k, k.one(), len))] {
                for idx in shift..len {
                    let t = k.mul(coeff, &pow[idx - shift]);
                    rhs[idx] = k.add(&rhs[idx], &t);
                }
            }
            assert_eq!(w2, rhs, "curve equation fails for a={a}, b={b}");
        }
    }

    #[test]
    fn affine_expansion_matches_the_point() {
        let e = q_curve(0, 1);
        let k = e.field();
        // Generic point (2, 3): x-series starts at x_Q with slope 1, and
        // y(t)^2 = rhs(x(t)).
        let (xs, ys) = affine_coordinate_series(&e, &rint(2), &rint(3), 10);
        assert_eq!(xs[0], rint(2));
        assert_eq!(ys[0], rint(3));
        assert_eq!(ser_mul(k, &ys, &ys), curve_rhs_series(&e, &xs));
        // 2-torsion point (-1, 0): t = y, so y-series is t and x(0) = -1.
        let (xs2, ys2) = affine_coordinate_series(&e, &rint(-1), &rint(0), 10);
        assert_eq!(xs2[0], rint(-1));
        assert_eq!(ys2[0], Rationals.zero());
        assert_eq!(ys2[1], Rationals.one());
        assert_eq!(ser_mul(k, &ys2, &ys2), curve_rhs_series(&e, &xs2));
    }

    #[test]
    fn origin_sequence_of_complete_series() {
        // g = 3 on a rational curve and on a prime-field curve.
        let e = q_curve(0, -2);
        let v = complete_series(&e, 3, 4).unwrap();
        let seq = vanishing_at_point(&v, &EcPoint::Infinity).unwrap();
        assert_eq!(seq.orders, vec![1, 2, 4]);
        assert_eq!(seq.weight, 4); // (g-1)^2
        assert_eq!(origin_orders(3).orders, vec![1, 2, 4]);
        assert_eq!(origin_orders(3).weight, 4);

        let f = PrimeField::new(7).unwrap();
        let ef = EllipticCurve::new(f, 1, 1).unwrap();
        let vf = complete_series(&ef, 3, 4).unwrap();
        let seqf = vanishing_at_point(&vf, &EcPoint::Infinity).unwrap();
        assert_eq!(seqf.orders, vec![1, 2, 4]);
    }

    #[test]
    fn generic_point_weight_of_complete_series() {
        let e = q_curve(0, 1);
        let v = complete_series(&e, 3, 4).unwrap();
        // At the 6-torsion point (2, 3) and at 2-torsion (-1, 0).
        for (x, y) in [(2i64, 3i64), (-1, 0), (0, 1)] {
            let q = EcPoint::Affine(rint(x), rint(y));
            let seq = vanishing_at_point(&v, &q).unwrap();
            assert!(
                seq.weight <= 1,
                "weight {} at ({x}, {y})",
                seq.weight
            );
            assert_eq!(seq.orders[..2], [0, 1]);
        }
    }

    #[test]
    fn off_curve_points_are_rejected() {
        let e = q_curve(0, 1);
        let v = complete_series(&e, 3, 4).unwrap();
        let bad = EcPoint::Affine(rint(1), rint(1));
        assert!(matches!(
            vanishing_at_point(&v, &bad),
            Err(Error::PointOffCurve(_))
        ));
    }

    #[test]
    fn subspaces_by_vanishing_order() {
        let e = q_curve(0, -2);
        let g = 5u64;
        let v = complete_series(&e, g, 2 * g - 2).unwrap();
        // V(-g at origin): sections of pole order <= g - 2, dimension g - 2.
        let u1 = subspace_vanishing(&v, &EcPoint::Infinity, g as usize).unwrap();
        assert_eq!(u1.dim(), (g - 2) as usize);
        // At a sample point, orders >= g - 3 has dimension 3 generically.
        let q = EcPoint::Affine(rint(3), rint(5));
        let u2 = subspace_vanishing(&v, &q, (g - 3) as usize).unwrap();
        assert_eq!(u2.dim(), 3);
    }

    #[test]
    fn prime_field_enumeration_and_orders() {
        // y^2 = x^3 + 1 over Z/5 has exactly 6 points, all killed by 6.
        let f = PrimeField::new(5).unwrap();
        let e = EllipticCurve::new(f, 0, 1).unwrap();
        let pts = enumerate_points(&e);
        assert_eq!(pts.len(), 6);
        for q in &pts {
            assert!(e.mul(6, q).is_infinity());
        }
    }

    #[test]
    fn fixtures_are_consistent() {
        for fix in rational_fixtures() {
            assert!(fix.curve.contains(&fix.base), "base off {}", fix.name);
            for e in &fix.extra {
                assert!(fix.curve.contains(e), "extra off {}", fix.name);
            }
        }
        for p in [5u64, 7, 11] {
            assert_eq!(prime_fixtures(p).unwrap().len(), 3);
        }
    }

    #[test]
    fn sampling_handles_torsion_cycles() {
        let fixes = rational_fixtures();
        // c5 is the order-6 cycle: exactly 5 affine points.
        let c5 = &fixes[4];
        let pts = point_samples(&c5.curve, &c5.base, &c5.extra, 12, 12);
        assert_eq!(pts.len(), 5);
        // c4 is 2-torsion: base cycle gives (0,0); extras add the others.
        let c4 = &fixes[3];
        let pts4 = point_samples(&c4.curve, &c4.base, &c4.extra, 12, 12);
        assert_eq!(pts4.len(), 3);
        // c1 has an infinite-order base point: 4 multiples and negations.
        let c1 = &fixes[0];
        let pts1 = point_samples(&c1.curve, &c1.base, &c1.extra, 4, 12);
        assert_eq!(pts1.len(), 8);
        for q in &pts1 {
            assert!(c1.curve.contains(q));
        }
    }

    #[test]
    fn origin_weights_verify_for_small_genus() {
        let e = q_curve(0, 3);
        for g in [3u64, 5] {
            for c in verify_origin_weights(&e, g, "t").unwrap() {
                assert!(c.ok, "failed {}: {} vs {}", c.id, c.expected, c.computed);
            }
        }
    }

    #[test]
    fn weight_bounds_verify_on_a_small_configuration() {
        let e = q_curve(0, 1);
        let pts = point_samples(
            &e,
            &EcPoint::Affine(rint(2), rint(3)),
            &[],
            6,
            6,
        );
        let cases = verify_weight_bounds(&e, 3, &pts, 2, 42, "t").unwrap();
        for c in &cases {
            assert!(c.ok, "failed {}: {} vs {}", c.id, c.expected, c.computed);
        }
        // Over a prime field too.
        let f = PrimeField::new(11).unwrap();
        let ef = EllipticCurve::new(f, 1, 1).unwrap();
        let qs: Vec<EcPoint<u64>> = enumerate_points(&ef)
            .into_iter()
            .filter(|q| !q.is_infinity())
            .collect();
        let cases = verify_weight_bounds(&ef, 3, &qs, 2, 42, "f11").unwrap();
        for c in &cases {
            assert!(c.ok, "failed {}: {} vs {}", c.id, c.expected, c.computed);
        }
    }

    #[test]
    fn torsion_certificates_hold() {
        for p in [5u64, 7, 11] {
            for g in [3u64, 5, 7, 9] {
                for c in verify_torsion_certificate(p, g).unwrap() {
                    assert!(c.ok, "failed {}: {}", c.id, c.computed);
                }
            }
        }
        assert!(verify_torsion_certificate(5, 4).is_err());
    }
}
