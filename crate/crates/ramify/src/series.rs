//! Truncated power series over an arbitrary coefficient field.
//!
//! A series is a plain `Vec` of coefficients in the local parameter,
//! constant term first, with a fixed truncation length agreed on by the
//! caller. These helpers are deliberately free functions over [`Field`]:
//! the expansion kernels compose them heavily and the field context makes
//! the prime-field and rational paths identical.

use crate::field::Field;

/// The zero series of length `ord`.
pub fn ser_zero<K: Field>(k: &K, ord: usize) -> Vec<K::Elem> {
    vec![k.zero(); ord]
}

/// The constant series `c` of length `ord`.
pub fn ser_const<K: Field>(k: &K, c: K::Elem, ord: usize) -> Vec<K::Elem> {
    let mut v = ser_zero(k, ord);
    if ord > 0 {
        v[0] = c;
    }
    v
}

/// Coefficient-wise sum, truncated to the shorter input.
pub fn ser_add<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    a.iter().zip(b).map(|(x, y)| k.add(x, y)).collect()
}

/// Coefficient-wise difference, truncated to the shorter input.
pub fn ser_sub<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    a.iter().zip(b).map(|(x, y)| k.sub(x, y)).collect()
}

/// Scalar multiple.
pub fn ser_scale<K: Field>(k: &K, c: &K::Elem, a: &[K::Elem]) -> Vec<K::Elem> {
    a.iter().map(|x| k.mul(c, x)).collect()
}

/// Product truncated to the shorter input's length.
pub fn ser_mul<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    let ord = a.len().min(b.len());
    let mut out = ser_zero(k, ord);
    for (i, x) in a.iter().enumerate().take(ord) {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(ord - i) {
            let t = k.mul(x, y);
            out[i + j] = k.add(&out[i + j], &t);
        }
    }
    out
}

/// `n`-th power (empty input allowed only for `n > 0`).
pub fn ser_pow<K: Field>(k: &K, a: &[K::Elem], n: usize) -> Vec<K::Elem> {
    let mut acc = ser_const(k, k.one(), a.len());
    for _ in 0..n {
        acc = ser_mul(k, &acc, a);
    }
    acc
}

/// Multiplicative inverse of a unit series (nonzero constant term), to the
/// input's length, by the standard recurrence.
///
/// # Panics
/// Panics if the constant term is zero.
pub fn ser_invert<K: Field>(k: &K, a: &[K::Elem]) -> Vec<K::Elem> {
    assert!(
        !a.is_empty() && !k.is_zero(&a[0]),
        "series inversion requires a unit constant term"
    );
    let c0 = k.inv(&a[0]).expect("unit constant term");
    let mut out = ser_zero(k, a.len());
    out[0] = c0.clone();
    for n in 1..a.len() {
        // coefficient of t^n in a * out must vanish.
        let mut s = k.zero();
        for i in 1..=n {
            let t = k.mul(&a[i], &out[n - i]);
            s = k.add(&s, &t);
        }
        out[n] = k.neg(&k.mul(&c0, &s));
    }
    out
}

/// Index of the first nonzero coefficient, or `None` if the truncation is
/// identically zero.
pub fn ser_valuation<K: Field>(k: &K, a: &[K::Elem]) -> Option<usize> {
    a.iter().position(|c| !k.is_zero(c))
}
