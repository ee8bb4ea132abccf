//! A rewrite engine for intersection classes on a self-fibered product, and
//! the pushforwards that extract a base-class coefficient from it.
//!
//! The ambient ring is generated by four divisor classes on the fiber
//! product of the universal curve with itself over a one-parameter base:
//!
//! - `K1`, `K2` — the relative canonical classes pulled back from the two
//!   projections,
//! - `D` — the diagonal,
//! - `L` — the tautological base class pulled back from the base.
//!
//! A monomial is a power product of the four; an [`IClass`] maps monomials
//! to coefficients that are polynomials in the fiber genus `g`, so the
//! whole computation stays symbolic. The rewrite rules are the standard
//! facts:
//!
//! - `D^2 = -K1 * D` (self-intersection of the diagonal; the mirror form
//!   `D^2 = -K2 * D` is also admitted, see [`RewriteRule::DiagPowerAlt`]),
//! - `K2 * D = K1 * D` (the two canonical classes agree on the diagonal),
//! - `K1^3 = K2^3 = L^2 = 0` (each factor is pulled back from a surface or
//!   a curve, so high powers die for dimension reasons).
//!
//! The rules are confluent: any order of application reaches the same
//! normal form (exercised by [`random_reduce`] against [`normalize`]).
//!
//! Normalized classes push forward in two stages. Integrating out the
//! moving factor ([`pushforward_p1`]) lands in the ring of the universal
//! curve, generated by its relative canonical class `Kf` and the base class
//! `L`; the diagonal maps by its section, one power of `K2` integrates to
//! the fiber degree `2g - 2` by the projection formula, and a square of
//! `K2` integrates to `12 L`. Pushing to the base ([`pushforward_pi`])
//! keeps only the surface classes of top degree: `Kf^2` evaluates to `12`,
//! `Kf * L` to `2g - 2`, and `L^2` to `0`.
//!
//! [`lambda_coefficient`] runs the full pipeline on the triple product
//! `W (W + K1) (W + 2 K1)` of the moving-section class [`class_w`] — the
//! top Chern class of a rank-three bundle of principal parts along the
//! first factor — and certifies that the resulting polynomial in `g` has
//! integer coefficients.

use crate::error::{Error, Result};
use crate::gpoly::GPoly;
use crate::poly::Poly;
use crate::rat::rat;
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;

/// A power product `K1^k1 * K2^k2 * D^d * L^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    /// Exponent of the first relative canonical class.
    pub k1: u8,
    /// Exponent of the second relative canonical class.
    pub k2: u8,
    /// Exponent of the diagonal.
    pub d: u8,
    /// Exponent of the base class.
    pub l: u8,
}

impl Mono {
    /// Builds a monomial from its four exponents.
    pub fn new(k1: u8, k2: u8, d: u8, l: u8) -> Mono {
        Mono { k1, k2, d, l }
    }

    /// The unit monomial.
    pub fn one() -> Mono {
        Mono::new(0, 0, 0, 0)
    }

    /// Exponent-wise product.
    pub fn times(&self, other: &Mono) -> Mono {
        Mono::new(
            self.k1 + other.k1,
            self.k2 + other.k2,
            self.d + other.d,
            self.l + other.l,
        )
    }

    /// Whether the monomial is in normal form: no killable power and no
    /// `K2` next to the diagonal.
    pub fn is_normal(&self) -> bool {
        self.k1 <= 2 && self.k2 <= 2 && self.d <= 1 && self.l <= 1 && !(self.d >= 1 && self.k2 >= 1)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("K1", self.k1), ("K2", self.k2), ("D", self.d), ("L", self.l)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// An intersection class: monomials with coefficients polynomial in `g`.
pub type IClass = BTreeMap<Mono, Poly>;

/// Adds `coeff * mono` into a class, dropping the entry if it cancels.
fn class_insert(c: &mut IClass, mono: Mono, coeff: &Poly) {
    if coeff.is_zero() {
        return;
    }
    let entry = c.entry(mono).or_insert_with(Poly::zero);
    *entry = &*entry + coeff;
    if entry.is_zero() {
        c.remove(&mono);
    }
}

/// Builds a class from terms, merging repeats and dropping zeros.
pub fn class_from(terms: &[(Mono, Poly)]) -> IClass {
    let mut out = IClass::new();
    for (m, p) in terms {
        class_insert(&mut out, *m, p);
    }
    out
}

/// Sum of two classes.
pub fn class_add(a: &IClass, b: &IClass) -> IClass {
    let mut out = a.clone();
    for (m, p) in b {
        class_insert(&mut out, *m, p);
    }
    out
}

/// Product of two classes (exponents add, coefficients multiply).
pub fn class_mul(a: &IClass, b: &IClass) -> IClass {
    let mut out = IClass::new();
    for (ma, pa) in a {
        for (mb, pb) in b {
            class_insert(&mut out, ma.times(mb), &(pa * pb));
        }
    }
    out
}

/// One applicable rewrite step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteRule {
    /// `D^e -> -K1 * D^(e-1)` for `e >= 2`.
    DiagPower,
    /// The mirror `D^e -> -K2 * D^(e-1)` for `e >= 2`; reachable normal
    /// forms agree because the restriction rule swaps the two classes.
    DiagPowerAlt,
    /// `K2 * D -> K1 * D` (one power at a time).
    DiagRestrict,
    /// `K1^e -> 0` for `e >= 3`.
    KillK1,
    /// `K2^e -> 0` for `e >= 3`.
    KillK2,
    /// `L^e -> 0` for `e >= 2`.
    KillL,
}

/// A rewrite rule pointed at a live monomial of a class.
#[derive(Clone, Debug)]
pub struct RewriteSite {
    /// The monomial to rewrite.
    pub mono: Mono,
    /// The rule to apply there.
    pub rule: RewriteRule,
}

/// All applicable rewrite sites of a class.
pub fn rewrite_sites(c: &IClass) -> Vec<RewriteSite> {
    let mut out = Vec::new();
    for mono in c.keys() {
        let mut push = |rule| out.push(RewriteSite { mono: *mono, rule });
        if mono.k1 >= 3 {
            push(RewriteRule::KillK1);
        }
        if mono.k2 >= 3 {
            push(RewriteRule::KillK2);
        }
        if mono.l >= 2 {
            push(RewriteRule::KillL);
        }
        if mono.d >= 2 {
            push(RewriteRule::DiagPower);
            push(RewriteRule::DiagPowerAlt);
        }
        if mono.d >= 1 && mono.k2 >= 1 {
            push(RewriteRule::DiagRestrict);
        }
    }
    out
}

/// Applies one rewrite step.
///
/// # Panics
/// Panics if the site's monomial is absent or the rule does not apply to
/// it; sites should come from [`rewrite_sites`] on the same class.
pub fn apply_rewrite(c: &IClass, site: &RewriteSite) -> IClass {
    let m = site.mono;
    let coeff = c.get(&m).expect("rewrite site names a live monomial").clone();
    let mut out = c.clone();
    out.remove(&m);
    match site.rule {
        RewriteRule::KillK1 => assert!(m.k1 >= 3, "KillK1 needs K1^3"),
        RewriteRule::KillK2 => assert!(m.k2 >= 3, "KillK2 needs K2^3"),
        RewriteRule::KillL => assert!(m.l >= 2, "KillL needs L^2"),
        RewriteRule::DiagPower => {
            assert!(m.d >= 2, "DiagPower needs D^2");
            let img = Mono::new(m.k1 + 1, m.k2, m.d - 1, m.l);
            class_insert(&mut out, img, &-&coeff);
        }
        RewriteRule::DiagPowerAlt => {
            assert!(m.d >= 2, "DiagPowerAlt needs D^2");
            let img = Mono::new(m.k1, m.k2 + 1, m.d - 1, m.l);
            class_insert(&mut out, img, &-&coeff);
        }
        RewriteRule::DiagRestrict => {
            assert!(m.d >= 1 && m.k2 >= 1, "DiagRestrict needs K2*D");
            let img = Mono::new(m.k1 + 1, m.k2 - 1, m.d, m.l);
            class_insert(&mut out, img, &coeff);
        }
    }
    out
}

/// Whether every monomial of the class is in normal form.
pub fn is_normal(c: &IClass) -> bool {
    c.keys().all(Mono::is_normal)
}

/// Canonical normal form: kills first, then diagonal powers via `-K1 * D`,
/// then restriction swaps — a fixed strategy, so the result is
/// deterministic (and, by confluence, independent of the strategy).
pub fn normalize(c: &IClass) -> IClass {
    let mut work = c.clone();
    loop {
        let target = work.keys().find(|m| !m.is_normal()).copied();
        let Some(m) = target else {
            return work;
        };
        let rule = if m.k1 >= 3 {
            RewriteRule::KillK1
        } else if m.k2 >= 3 {
            RewriteRule::KillK2
        } else if m.l >= 2 {
            RewriteRule::KillL
        } else if m.d >= 2 {
            RewriteRule::DiagPower
        } else {
            RewriteRule::DiagRestrict
        };
        work = apply_rewrite(&work, &RewriteSite { mono: m, rule });
    }
}

/// Reduces to normal form by applying uniformly random applicable sites —
/// the experimental side of the confluence check.
pub fn random_reduce(c: &IClass, rng: &mut impl Rng) -> IClass {
    let mut work = c.clone();
    loop {
        let sites = rewrite_sites(&work);
        if sites.is_empty() {
            return work;
        }
        let pick = rng.random_range(0..sites.len());
        work = apply_rewrite(&work, &sites[pick]);
    }
}

/// A random small class for confluence experiments: a handful of monomials
/// with exponents up to the first interesting sizes and small integer (or
/// degree-one) coefficients in `g`.
pub fn sample_class(rng: &mut impl Rng) -> IClass {
    let n = rng.random_range(1..=5);
    let mut out = IClass::new();
    for _ in 0..n {
        let m = Mono::new(
            rng.random_range(0..=3),
            rng.random_range(0..=3),
            rng.random_range(0..=3),
            rng.random_range(0..=2),
        );
        let c0 = rng.random_range(-3i64..=3);
        let c1 = rng.random_range(-2i64..=2);
        let p = Poly::from_ints(&[c0, c1]);
        class_insert(&mut out, m, &p);
    }
    out
}

/// A monomial `Kf^kp * L^l` on the universal curve after integrating out
/// the moving factor: `Kf` is its relative canonical class and `L` the base
/// class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveMono {
    /// Exponent of the relative canonical class.
    pub kp: u8,
    /// Exponent of the base class.
    pub l: u8,
}

/// A class on the universal curve.
pub type CurveClass = BTreeMap<CurveMono, Poly>;

fn curve_insert(c: &mut CurveClass, mono: CurveMono, coeff: &Poly) {
    if coeff.is_zero() {
        return;
    }
    let entry = c.entry(mono).or_insert_with(Poly::zero);
    *entry = &*entry + coeff;
    if entry.is_zero() {
        c.remove(&mono);
    }
}

/// Integrates out the moving factor (pushforward along the first
/// projection), recording which geometric inputs fired into `notes`.
///
/// Requires normal form; monomials carrying the diagonal map by the
/// diagonal section, one power of `K2` integrates to the fiber degree
/// `2g - 2`, a square integrates to `12 L`, and pure pullbacks vanish.
pub fn pushforward_p1(c: &IClass) -> Result<(CurveClass, Vec<String>)> {
    if !is_normal(c) {
        let offender = c.keys().find(|m| !m.is_normal()).expect("non-normal mono");
        return Err(Error::NotNormalized(format!(
            "pushforward needs a normalized class; found {offender}"
        )));
    }
    let mut out = CurveClass::new();
    let mut used_degree = false;
    let mut used_kappa = false;
    let mut used_diag = false;
    let fiber_degree = Poly::from_ints(&[-2, 2]); // 2g - 2
    for (m, coeff) in c {
        if m.d == 1 {
            // Normal form guarantees k2 == 0 here: the diagonal is a
            // section of the first projection, so the class restricts.
            used_diag = true;
            curve_insert(&mut out, CurveMono { kp: m.k1, l: m.l }, coeff);
        } else {
            match m.k2 {
                0 => {} // pure pullback: vanishes under a fiber integral
                1 => {
                    used_degree = true;
                    curve_insert(&mut out, CurveMono { kp: m.k1, l: m.l }, &(coeff * &fiber_degree));
                }
                2 => {
                    used_kappa = true;
                    curve_insert(
                        &mut out,
                        CurveMono { kp: m.k1, l: m.l + 1 },
                        &coeff.scale(&rat(12, 1)),
                    );
                }
                _ => unreachable!("normal form bounds K2 exponents"),
            }
        }
    }
    let mut notes = Vec::new();
    if used_diag {
        notes.push("diagonal terms restrict along the diagonal section".to_string());
    }
    if used_degree {
        notes.push("single K2 powers integrate to the fiber degree (2g-2) via the projection formula".to_string());
    }
    if used_kappa {
        notes.push("K2 squares integrate to 12*L (first kappa class of the family)".to_string());
    }
    Ok((out, notes))
}

/// Pushes a curve class to the base and reads off the coefficient of the
/// tautological base class: `Kf^2` evaluates to `12`, `Kf * L` to the
/// fiber degree `2g - 2`, and `L^2` to zero; monomials of other degrees
/// cannot meet a one-dimensional base in a divisor and contribute nothing.
pub fn pushforward_pi(c: &CurveClass) -> Poly {
    let mut out = Poly::zero();
    for (m, coeff) in c {
        match (m.kp, m.l) {
            (2, 0) => out = &out + &coeff.scale(&rat(12, 1)),
            (1, 1) => out = &out + &(coeff * &Poly::from_ints(&[-2, 2])),
            _ => {}
        }
    }
    out
}

/// The moving-section class `C(g,2) * K1 + K2 - (g-1) * D - L`, symbolic
/// in the fiber genus `g`.
pub fn class_w() -> IClass {
    let choose2 = Poly::from_coeffs(vec![rat(0, 1), rat(-1, 2), rat(1, 2)]); // g(g-1)/2
    class_from(&[
        (Mono::new(1, 0, 0, 0), choose2),
        (Mono::new(0, 1, 0, 0), Poly::one()),
        (Mono::new(0, 0, 1, 0), Poly::from_ints(&[1, -1])), // -(g-1)
        (Mono::new(0, 0, 0, 1), Poly::from_ints(&[-1])),
    ])
}

/// The coefficient of the tautological base class in the pushforward of
/// the triple product `W (W + K1) (W + 2 K1)`, with a note trail of the
/// geometric inputs used. The result is certified integral.
pub fn lambda_coefficient_trace() -> Result<(GPoly, Vec<String>)> {
    let w = class_w();
    let k1 = class_from(&[(Mono::new(1, 0, 0, 0), Poly::one())]);
    let w1 = class_add(&w, &k1);
    let w2 = class_add(&w1, &k1);
    let product = class_mul(&class_mul(&w, &w1), &w2);
    let normal = normalize(&product);
    let (curve, mut notes) = pushforward_p1(&normal)?;
    let lam = pushforward_pi(&curve);
    notes.push("surface classes evaluate as Kf^2 = 12, Kf*L = 2g-2, L^2 = 0".to_string());
    let out = GPoly::from_rat_poly(&lam, "tautological base-class coefficient")?;
    Ok((out, notes))
}

/// [`lambda_coefficient_trace`] without the notes.
pub fn lambda_coefficient() -> Result<GPoly> {
    lambda_coefficient_trace().map(|(p, _)| p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::stream;

    fn mono_class(k1: u8, k2: u8, d: u8, l: u8) -> IClass {
        class_from(&[(Mono::new(k1, k2, d, l), Poly::one())])
    }

    #[test]
    fn diagonal_powers_collapse() {
        // D^2 = -K1*D and D^3 = +K1^2*D.
        let sq = normalize(&mono_class(0, 0, 2, 0));
        assert_eq!(sq, class_from(&[(Mono::new(1, 0, 1, 0), -&Poly::one())]));
        let cube = normalize(&mono_class(0, 0, 3, 0));
        assert_eq!(cube, class_from(&[(Mono::new(2, 0, 1, 0), Poly::one())]));
    }

    #[test]
    fn restriction_swaps_classes_on_the_diagonal() {
        assert_eq!(
            normalize(&mono_class(0, 1, 1, 0)),
            class_from(&[(Mono::new(1, 0, 1, 0), Poly::one())])
        );
        assert_eq!(
            normalize(&mono_class(0, 2, 1, 0)),
            class_from(&[(Mono::new(2, 0, 1, 0), Poly::one())])
        );
    }

    #[test]
    fn high_powers_die() {
        assert!(normalize(&mono_class(3, 0, 0, 0)).is_empty());
        assert!(normalize(&mono_class(0, 3, 0, 0)).is_empty());
        assert!(normalize(&mono_class(0, 0, 0, 2)).is_empty());
        // K2^3 * D dies along both routes: direct kill, or restriction
        // into K1^3 * D.
        assert!(normalize(&mono_class(0, 3, 1, 0)).is_empty());
    }

    #[test]
    fn class_products_expand() {
        // (K1 + K2)^2 = K1^2 + 2 K1 K2 + K2^2.
        let s = class_add(&mono_class(1, 0, 0, 0), &mono_class(0, 1, 0, 0));
        let sq = class_mul(&s, &s);
        assert_eq!(
            sq,
            class_from(&[
                (Mono::new(2, 0, 0, 0), Poly::one()),
                (Mono::new(1, 1, 0, 0), Poly::from_ints(&[2])),
                (Mono::new(0, 2, 0, 0), Poly::one()),
            ])
        );
    }

    #[test]
    fn pushforward_requires_normal_form() {
        let c = mono_class(0, 0, 2, 0);
        assert!(matches!(pushforward_p1(&c), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn pushforward_rules() {
        let fiber_degree = Poly::from_ints(&[-2, 2]);
        // K1^2 * K2 -> (2g-2) * Kf^2.
        let (y, _) = pushforward_p1(&mono_class(2, 1, 0, 0)).unwrap();
        assert_eq!(y.get(&CurveMono { kp: 2, l: 0 }), Some(&fiber_degree));
        // K1 * K2^2 -> 12 * Kf * L.
        let (y, _) = pushforward_p1(&mono_class(1, 2, 0, 0)).unwrap();
        assert_eq!(y.get(&CurveMono { kp: 1, l: 1 }), Some(&Poly::from_ints(&[12])));
        // K1^2 * D -> Kf^2 (diagonal section).
        let (y, _) = pushforward_p1(&mono_class(2, 0, 1, 0)).unwrap();
        assert_eq!(y.get(&CurveMono { kp: 2, l: 0 }), Some(&Poly::one()));
        // Pure pullbacks vanish.
        let (y, _) = pushforward_p1(&mono_class(2, 0, 0, 1)).unwrap();
        assert!(y.is_empty());
    }

    /// Expands the triple product by hand in elementary symmetric
    /// functions of the three `K1`-coefficients and applies the same
    /// geometric evaluations, entirely outside the rewrite engine.
    fn symmetric_expansion() -> Poly {
        let g = Poly::x();
        let m = Poly::from_ints(&[-1, 1]); // g - 1
        let c = Poly::from_coeffs(vec![rat(0, 1), rat(-1, 2), rat(1, 2)]); // g(g-1)/2
        let e1 = &c.scale(&rat(3, 1)) + &Poly::from_ints(&[3]); // sum of c, c+1, c+2
        let e2 = &(&(&c * &c).scale(&rat(3, 1)) + &c.scale(&rat(6, 1))) + &Poly::from_ints(&[2]);
        let m2 = &m * &m;
        let m3 = &m2 * &m;
        // Coefficient of Kf^2 after the fiber integral.
        let a = &(&(&(&m * &e2) - &(&m.scale(&rat(2, 1)) * &e1)) - &(&m2 * &e1))
            - &(&(&m.scale(&rat(3, 1)) + &m2.scale(&rat(3, 1))) + &m3);
        // Coefficient of Kf * L.
        let b = &(&(&e1.scale(&rat(12, 1)) - &(&m.scale(&rat(2, 1)) * &e1)) + &m.scale(&rat(6, 1)))
            + &m2.scale(&rat(3, 1));
        let _ = g;
        &a.scale(&rat(12, 1)) + &(&m.scale(&rat(2, 1)) * &b)
    }

    #[test]
    fn base_coefficient_matches_the_symmetric_expansion() {
        let (engine, notes) = lambda_coefficient_trace().unwrap();
        let oracle = symmetric_expansion();
        assert_eq!(engine.to_rat_poly(), oracle);
        assert_eq!(engine, GPoly::from_ints(&[-54, 174, -207, 129, -51, 9]));
        assert!(notes.iter().any(|n| n.contains("projection formula")));
    }

    #[test]
    fn base_coefficient_frozen_values() {
        let quintic = lambda_coefficient().unwrap();
        assert_eq!(quintic.eval(3).to_string(), "144");
        assert_eq!(quintic.eval(5).to_string(), "8016");
        assert_eq!(
            quintic.render(),
            "9*g^5 - 51*g^4 + 129*g^3 - 207*g^2 + 174*g - 54"
        );
    }

    #[test]
    fn curve_level_values_at_genus_five() {
        let w = class_w();
        let k1 = class_from(&[(Mono::new(1, 0, 0, 0), Poly::one())]);
        let w1 = class_add(&w, &k1);
        let w2 = class_add(&w1, &k1);
        let product = class_mul(&class_mul(&w, &w1), &w2);
        let (curve, _) = pushforward_p1(&normalize(&product)).unwrap();
        let at5 = |m: CurveMono| curve.get(&m).map(|p| p.eval(&rat(5, 1)));
        assert_eq!(at5(CurveMono { kp: 2, l: 0 }), Some(rat(532, 1)));
        assert_eq!(at5(CurveMono { kp: 1, l: 1 }), Some(rat(204, 1)));
        assert_eq!(at5(CurveMono { kp: 0, l: 2 }), Some(rat(-36, 1)));
        // 12 * 532 + (2*5 - 2) * 204 = 8016.
        assert_eq!(12 * 532 + 8 * 204, 8016);
    }

    #[test]
    fn normalization_is_linear() {
        let mut rng = stream(42, "intersect/linearity");
        for _ in 0..50 {
            let a = sample_class(&mut rng);
            let b = sample_class(&mut rng);
            let lhs = normalize(&class_add(&a, &b));
            let rhs = class_add(&normalize(&a), &normalize(&b));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn random_reduction_is_confluent() {
        let mut rng = stream(42, "intersect/confluence-unit");
        for trial in 0..200 {
            let c = sample_class(&mut rng);
            let canonical = normalize(&c);
            let randomized = random_reduce(&c, &mut rng);
            assert_eq!(randomized, canonical, "trial {trial} diverged on {c:?}");
        }
    }
}
