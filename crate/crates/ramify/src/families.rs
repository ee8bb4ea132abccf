//! Degree relations from the standard one-parameter degenerations, and the
//! coefficient ratios they force.
//!
//! Each test family indexed by `i` (the genus split of its reducible
//! members) meets the boundary divisor classes `delta_1 .. delta_[g/2]` in
//! a small set of integer degrees, accumulated slot by slot in
//! [`degree_row`]. Pairing the family against a divisor class
//! `sum_l a_l * delta_l` that the families cannot meet yields one linear
//! relation per family; [`solve_relations`] intersects them and certifies
//! that exactly one ratio vector survives, normalized to `a_1 = 1`.
//!
//! The closed form the solver must reproduce is
//! `a_l = l (g - l) / (g - 1)` — see [`ratio_formula`] — and
//! [`verify_ratio_formula`] packages the comparison (plus the bookkeeping
//! identity that every degree row sums to `-1`, the base family's own
//! contribution) as report cases.

use crate::error::{Error, Result};
use crate::matrix::kernel_basis;
use crate::rat::{rat, rint, Rat};
use crate::report::Case;
use num_traits::Zero;

/// Number of boundary slots for genus `g`: `floor(g / 2)`.
pub fn slot_count(g: u64) -> usize {
    (g / 2) as usize
}

/// Folds an index into the slot range: classes `delta_j` and `delta_(g-j)`
/// coincide, so indices past the middle reflect back.
fn fold(g: u64, j: u64) -> usize {
    if j <= g / 2 {
        j as usize
    } else {
        (g - j) as usize
    }
}

/// Intersection degrees of the `i`-th test family against
/// `delta_1 .. delta_[g/2]`, as a row vector.
///
/// The family contributes `-2` on `delta_1` and `+1` on `delta_2` (its
/// base degeneration), `-1` on `delta_(i-1)`, `+2` on `delta_i`, and `-1`
/// on the reflection of `delta_(i+1)`; coincident slots accumulate.
/// Defined for `g >= 5` and `2 <= i <= g/2`.
pub fn degree_row(g: u64, i: u64) -> Result<Vec<Rat>> {
    if g < 5 {
        return Err(Error::OutOfRange(format!(
            "degree rows need genus at least 5, got {g}"
        )));
    }
    if i < 2 || 2 * i > g {
        return Err(Error::OutOfRange(format!(
            "family index {i} outside 2..={} for genus {g}",
            g / 2
        )));
    }
    let mut row = vec![Rat::zero(); slot_count(g)];
    let mut bump = |slot: usize, amount: i64| {
        // Slots are 1-based; the fold never leaves 1..=g/2 in the domain
        // above.
        row[slot - 1] += rint(amount);
    };
    bump(1, -2);
    bump(2, 1);
    bump((i - 1) as usize, -1);
    bump(i as usize, 2);
    bump(fold(g, i + 1), -1);
    Ok(row)
}

/// All degree rows for genus `g`, one per family index `2..=g/2`.
pub fn degree_rows(g: u64) -> Result<Vec<Vec<Rat>>> {
    (2..=g / 2).map(|i| degree_row(g, i)).collect()
}

/// The forced coefficient ratios `a_1 .. a_[g/2]` with `a_1 = 1`: the
/// one-dimensional common kernel of the degree rows.
///
/// Fails with [`Error::UnexpectedNullity`] if the rows do not cut the
/// solution space down to a single line.
pub fn solve_relations(g: u64) -> Result<Vec<Rat>> {
    let rows = degree_rows(g)?;
    let n = slot_count(g);
    let kernel = kernel_basis(&rows, n);
    if kernel.len() != 1 {
        return Err(Error::UnexpectedNullity {
            g,
            found: kernel.len(),
        });
    }
    let v = &kernel[0];
    if v[0].is_zero() {
        return Err(Error::UnexpectedNullity { g, found: 0 });
    }
    let lead = v[0].clone();
    Ok(v.iter().map(|x| x / &lead).collect())
}

/// The closed form `a_l = l (g - l) / (g - 1)`.
pub fn ratio_formula(g: u64, l: u64) -> Rat {
    rat((l * (g - l)) as i64, (g - 1) as i64)
}

/// Report cases comparing the solved ratios against the closed form, slot
/// by slot, plus the row-sum bookkeeping identity.
pub fn verify_ratio_formula(g: u64) -> Result<Vec<Case>> {
    let solution = solve_relations(g)?;
    let rows = degree_rows(g)?;
    let mut cases = Vec::new();
    for (idx, a) in solution.iter().enumerate() {
        let l = (idx + 1) as u64;
        cases.push(Case::compare(
            format!("g{g}|a{l}"),
            format!("kernel of {} degree rows, normalized to a1 = 1", rows.len()),
            ratio_formula(g, l).to_string(),
            a.to_string(),
            "coefficient-ratio",
        ));
    }
    let sums: Vec<String> = rows
        .iter()
        .map(|r| r.iter().sum::<Rat>().to_string())
        .collect();
    cases.push(Case::compare(
        format!("g{g}|row-sums"),
        "total degree of each family against the boundary slots",
        vec!["-1".to_string(); rows.len()].join(","),
        sums.join(","),
        "row-sum",
    ));
    Ok(cases)
}
