//! Exact dense linear algebra: reduced row echelon form and kernels.
//!
//! Row reduction is the single workhorse behind vanishing sequences (pivot
//! columns of an expansion matrix), independence checks, and the relation
//! solver. It is generic over [`Field`] so the same code serves the
//! rationals and prime fields; no pivoting heuristics are needed because the
//! arithmetic is exact.

use crate::field::{Field, Rationals};
use crate::rat::Rat;

/// Result of a reduction: the rank, the pivot column indices (strictly
/// increasing), and the reduced rows.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<E>>,
}

/// Reduced row echelon form by Gauss–Jordan elimination over any field.
///
/// Rows may have differing lengths; they are implicitly padded with zeros on
/// the right to the longest row.
pub fn rref_in<K: Field>(k: &K, rows: &[Vec<K::Elem>]) -> Echelon<K::Elem> {
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut m: Vec<Vec<K::Elem>> = rows
        .iter()
        .map(|r| {
            let mut row = r.clone();
            row.resize(ncols, k.zero());
            row
        })
        .collect();
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        // Find a row at or below r with a nonzero entry in this column.
        let Some(pr) = (r..nrows).find(|&i| !k.is_zero(&m[i][col])) else {
            continue;
        };
        m.swap(r, pr);
        // Normalize the pivot row.
        let inv = k.inv(&m[r][col]).expect("nonzero pivot");
        for c in col..ncols {
            m[r][c] = k.mul(&m[r][c], &inv);
        }
        // Clear the column everywhere else.
        for i in 0..nrows {
            if i != r && !k.is_zero(&m[i][col]) {
                let f = m[i][col].clone();
                for c in col..ncols {
                    let t = k.mul(&f, &m[r][c]);
                    m[i][c] = k.sub(&m[i][c], &t);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    Echelon {
        rank: r,
        pivots,
        rows: m,
    }
}

/// Reduced row echelon form over the rationals.
pub fn rref(rows: &[Vec<Rat>]) -> Echelon<Rat> {
    rref_in(&Rationals, rows)
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    rref(rows).rank
}

/// A basis of the right kernel `{v : M v = 0}` of the matrix whose rows are
/// given, over any field. Vectors have length `ncols`; one basis vector per
/// free column, with a 1 in its free column.
pub fn kernel_basis_in<K: Field>(k: &K, rows: &[Vec<K::Elem>], ncols: usize) -> Vec<Vec<K::Elem>> {
    let padded: Vec<Vec<K::Elem>> = rows
        .iter()
        .map(|r| {
            let mut row = r.clone();
            row.resize(ncols, k.zero());
            row
        })
        .collect();
    let ech = rref_in(k, &padded);
    let mut basis = Vec::new();
    for free in 0..ncols {
        if ech.pivots.contains(&free) {
            continue;
        }
        let mut v = vec![k.zero(); ncols];
        v[free] = k.one();
        for (row, &pc) in ech.pivots.iter().enumerate() {
            // Pivot variable = -(entry of reduced row in the free column).
            v[pc] = k.neg(&ech.rows[row][free]);
        }
        basis.push(v);
    }
    basis
}

/// Right-kernel basis over the rationals.
pub fn kernel_basis(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    kernel_basis_in(&Rationals, rows, ncols)
}
