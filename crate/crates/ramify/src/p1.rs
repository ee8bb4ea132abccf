//! Twisted linear series on the projective line.
//!
//! Fix distinct finite points `R_1, ..., R_n` with multiplicities
//! `a_1, ..., a_n >= 1` (a [`Twist`]). The series under study is
//!
//! ```text
//! V = span{ 1/(x - R_i)^k : 1 <= i <= n, 2 <= k <= a_i + 1 }
//! ```
//!
//! inside the space of differentials with pole order at most `a_i + 1` at
//! each `R_i` (a function `f` stands for the differential `f dx`). The
//! machinery here computes, in exact arithmetic:
//!
//! - vanishing sequences and ramification weights of any such series at any
//!   point, via row reduction of local-expansion matrices
//!   ([`vanishing_sequence`]);
//! - the total ramification `(r+1)(d-r)` and its decomposition into weights
//!   at the support, at infinity, at a removed point, and outside — the
//!   outside part read off the Wronskian ([`exterior_parts`]);
//! - the one-parameter pencils interpolating between a series and its
//!   twice-twisted subspace at `R_1` ([`pencil_members`]);
//! - the subspace of sections vanishing at an extra point
//!   ([`series_minus_point`]).
//!
//! The `verify_*` functions package the expected weight laws as checkable
//! [`Case`] records: the support weights and orders of the full series, the
//! weight excesses `eps` of pencil members, and the analogous laws after
//! removing a point.

use crate::error::{Error, Result};
use crate::expand::{laurent_window, valuation_at, P1Point};
use crate::matrix::rref;
use crate::poly::Poly;
use crate::rat::Rat;
use crate::ratfn::{wronskian, RatFn};
use crate::report::Case;
use crate::sampling::{nonzero_small_rat, stream};
use num_traits::Zero;
use std::fmt::Write as _;

/// A twisting configuration: distinct finite support points with
/// multiplicities `>= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    points: Vec<(Rat, u64)>,
}

impl Twist {
    /// Builds a twist, checking that the support points are pairwise
    /// distinct and every multiplicity is at least 1.
    pub fn new(points: Vec<(Rat, u64)>) -> Result<Twist> {
        if points.is_empty() {
            return Err(Error::OutOfRange("twist needs at least one point".into()));
        }
        for (i, (p, a)) in points.iter().enumerate() {
            if *a == 0 {
                return Err(Error::InvalidMultiplicity {
                    found: 0,
                    reason: "multiplicities must be at least 1".into(),
                });
            }
            for (q, _) in &points[..i] {
                if p == q {
                    return Err(Error::CoincidentPoints(p.to_string()));
                }
            }
        }
        Ok(Twist { points })
    }

    /// Number of support points.
    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Sum of the multiplicities.
    pub fn total(&self) -> u64 {
        self.points.iter().map(|(_, a)| a).sum()
    }

    /// The `i`-th support point.
    pub fn point(&self, i: usize) -> &Rat {
        &self.points[i].0
    }

    /// The `i`-th multiplicity.
    pub fn mult(&self, i: usize) -> u64 {
        self.points[i].1
    }

    /// All `(point, multiplicity)` pairs.
    pub fn points(&self) -> &[(Rat, u64)] {
        &self.points
    }

    /// Stable label for report ids, e.g. `a=2,1;R=0,1`.
    pub fn label(&self) -> String {
        let mut s = String::from("a=");
        for (i, (_, a)) in self.points.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{a}");
        }
        s.push_str(";R=");
        for (i, (p, _)) in self.points.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{p}");
        }
        s
    }
}

/// A linear series on the projective line: an independent family of
/// rational functions viewed as differentials with poles bounded by a
/// twisting divisor.
///
/// The divisor lists `(point, allowance)` pairs: at a finite point `P` with
/// allowance `e`, sections satisfy `v_P(f) >= -e`; at infinity the
/// differential `dx` already has a double pole, so `v_inf(f) >= 2 - e`.
/// Negative allowances impose vanishing. The section vanishing order is the
/// valuation shifted by the allowance (and by `-2` at infinity).
#[derive(Clone, Debug)]
pub struct LinearSeries {
    basis: Vec<RatFn>,
    divisor: Vec<(P1Point, i64)>,
}

impl LinearSeries {
    /// Builds a series, validating independence of the basis and the pole
    /// constraints of every element against the divisor.
    pub fn new(basis: Vec<RatFn>, divisor: Vec<(P1Point, i64)>) -> Result<LinearSeries> {
        // Normalize: drop zero allowances, check distinctness.
        let divisor: Vec<(P1Point, i64)> = divisor.into_iter().filter(|(_, e)| *e != 0).collect();
        for (i, (p, _)) in divisor.iter().enumerate() {
            for (q, _) in &divisor[..i] {
                if p == q {
                    return Err(Error::CoincidentPoints(p.to_string()));
                }
            }
        }
        if basis.is_empty() {
            return Err(Error::OutOfRange("series needs a nonempty basis".into()));
        }
        let series = LinearSeries { basis, divisor };
        series.validate_sections()?;
        series.validate_independence()?;
        Ok(series)
    }

    fn validate_sections(&self) -> Result<()> {
        for f in &self.basis {
            if f.is_zero() {
                return Err(Error::DependentBasis {
                    rank: 0,
                    size: self.basis.len(),
                });
            }
            // Pole allowances at the finite divisor points, and the
            // requirement that no pole lies outside the support.
            let mut covered = 0;
            for (p, e) in &self.divisor {
                match p {
                    P1Point::Finite(c) => {
                        let m_den = f.den().root_multiplicity(c) as i64;
                        let m_num = f.num().root_multiplicity(c) as i64;
                        covered += m_den;
                        let val = m_num - m_den;
                        if val < -e {
                            return Err(Error::PoleOrderViolation {
                                point: c.to_string(),
                                found: -val,
                                allowed: *e,
                            });
                        }
                    }
                    P1Point::Infinity => {}
                }
            }
            let den_deg = f.den().degree().expect("nonzero denominator") as i64;
            if covered < den_deg {
                return Err(Error::PoleOrderViolation {
                    point: "a point outside the divisor support".into(),
                    found: den_deg - covered,
                    allowed: 0,
                });
            }
            // Behaviour at infinity: v_inf(f) = deg den - deg num >= 2 - e.
            let e_inf = self.allowance(&P1Point::Infinity);
            let num_deg = f.num().degree().expect("nonzero numerator") as i64;
            let v_inf = den_deg - num_deg;
            if v_inf - 2 < -e_inf {
                return Err(Error::PoleOrderViolation {
                    point: "inf".into(),
                    found: 2 - v_inf,
                    allowed: e_inf,
                });
            }
        }
        Ok(())
    }

    fn validate_independence(&self) -> Result<()> {
        // Put everything over a common denominator and row-reduce the
        // numerator coefficients.
        let common = self
            .basis
            .iter()
            .fold(Poly::one(), |acc, f| {
                let g = acc.gcd(f.den());
                (&acc.div_exact(&g) * f.den()).monic()
            });
        let rows: Vec<Vec<Rat>> = self
            .basis
            .iter()
            .map(|f| (f.num() * &common.div_exact(f.den())).coeffs().to_vec())
            .collect();
        let rank = rref(&rows).rank;
        if rank < self.basis.len() {
            return Err(Error::DependentBasis {
                rank,
                size: self.basis.len(),
            });
        }
        Ok(())
    }

    /// Dimension of the series as a vector space.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Projective rank `dim - 1`.
    pub fn rank(&self) -> i64 {
        self.dim() as i64 - 1
    }

    /// Degree of the ambient twisted-differential bundle:
    /// `-2 + sum of allowances`.
    pub fn ambient_degree(&self) -> i64 {
        -2 + self.divisor.iter().map(|(_, e)| e).sum::<i64>()
    }

    /// The divisor allowance at a point (0 off the recorded support).
    pub fn allowance(&self, p: &P1Point) -> i64 {
        self.divisor
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Basis elements.
    pub fn basis(&self) -> &[RatFn] {
        &self.basis
    }

    /// Divisor entries `(point, allowance)`, zero allowances dropped.
    pub fn divisor(&self) -> &[(P1Point, i64)] {
        &self.divisor
    }
}

/// The vanishing sequence of a series at a point: the strictly increasing
/// section orders, and the weight `sum(orders[j] - j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingSequence {
    /// Section vanishing orders, strictly increasing, one per dimension.
    pub orders: Vec<i64>,
    /// Ramification weight.
    pub weight: i64,
}

impl VanishingSequence {
    fn from_orders(orders: Vec<i64>) -> VanishingSequence {
        let weight = orders
            .iter()
            .enumerate()
            .map(|(j, o)| o - j as i64)
            .sum();
        VanishingSequence { orders, weight }
    }

    /// Number of sections vanishing to order at least `m` — the dimension
    /// of the subseries twisted down by `m` at this point.
    pub fn count_at_least(&self, m: i64) -> usize {
        self.orders.iter().filter(|&&o| o >= m).count()
    }
}

/// The full twisted series of a [`Twist`]: blocks `1/(x - R_i)^k` for
/// `k = 2..=a_i + 1`, inside differentials with allowance `a_i + 1` at each
/// `R_i`. Its dimension is the total multiplicity.
pub fn twisted_series(t: &Twist) -> LinearSeries {
    let mut basis = Vec::new();
    for (p, a) in t.points() {
        for k in 2..=(a + 1) {
            basis.push(RatFn::inv_linear_pow(p, k as usize));
        }
    }
    let divisor = t
        .points()
        .iter()
        .map(|(p, a)| (P1Point::Finite(p.clone()), *a as i64 + 1))
        .collect();
    LinearSeries::new(basis, divisor).expect("twisted basis is valid by construction")
}

/// Vanishing sequence of `series` at `p`, by row-reducing the matrix of
/// local expansions: column `s` holds the coefficient corresponding to
/// section order `s`, and the pivot columns are exactly the orders attained.
///
/// Truncation starts at `dim + max allowance + 2` and doubles on retry; a
/// basis that never reaches full rank past the ambient degree is dependent.
pub fn vanishing_sequence(series: &LinearSeries, p: &P1Point) -> Result<VanishingSequence> {
    let dim = series.dim();
    let e = series.allowance(p);
    // Section order s corresponds to exponent s + lo in the local parameter.
    let lo = match p {
        P1Point::Finite(_) => -e,
        P1Point::Infinity => 2 - e,
    };
    let max_allow = series
        .divisor
        .iter()
        .map(|(_, e)| (*e).max(0))
        .max()
        .unwrap_or(0) as usize;
    let d = series.ambient_degree().max(0) as usize;
    let mut len = dim + max_allow + 2;
    for _attempt in 0..3 {
        let rows = series
            .basis
            .iter()
            .map(|f| laurent_window(f, p, lo, len))
            .collect::<Result<Vec<_>>>()?;
        let ech = rref(&rows);
        if ech.rank == dim {
            let orders = ech.pivots.iter().map(|&c| c as i64).collect();
            return Ok(VanishingSequence::from_orders(orders));
        }
        if len > d + 1 {
            // Orders are bounded by the ambient degree, so the matrix has
            // all the information it will ever have: the basis is dependent.
            return Err(Error::DependentBasis {
                rank: ech.rank,
                size: dim,
            });
        }
        len *= 2;
    }
    Err(Error::TruncationInsufficient {
        point: p.to_string(),
        order: len,
    })
}

/// Total ramification `(r+1)(d-r)` of a series of rank `r` in a bundle of
/// degree `d` — the degree of the divisor cut out by the Wronskian section.
pub fn ramification_total(series: &LinearSeries) -> i64 {
    let r = series.rank();
    let d = series.ambient_degree();
    (r + 1) * (d - r)
}

/// Wronskian of the basis (nonzero for a valid series).
pub fn series_wronskian(series: &LinearSeries) -> RatFn {
    wronskian(series.basis())
}

/// Ramification weight at `p` read off the Wronskian `w` of the series: the
/// vanishing order of `w` as a section of the `k(k+1)/2`-th power of the
/// differential bundle twisted `k` times, where `k = dim`. Agrees with
/// `vanishing_sequence(series, p).weight`.
pub fn wronskian_weight(series: &LinearSeries, w: &RatFn, p: &P1Point) -> i64 {
    let k = series.dim() as i64;
    let e = series.allowance(p);
    let v = valuation_at(w, p)
        .finite()
        .expect("Wronskian of an independent family is nonzero");
    match p {
        P1Point::Finite(_) => v + k * e,
        P1Point::Infinity => v + k * e - k * (k + 1),
    }
}

/// The part of the ramification divisor supported away from the recorded
/// divisor points and infinity, read off the Wronskian numerator after
/// stripping the linear factors of the divisor support. No root-finding:
/// only the total degree and a squarefreeness certificate are extracted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorParts {
    /// Total weight outside the support and infinity (the degree of the
    /// stripped Wronskian numerator).
    pub outside_degree: i64,
    /// Whether every outside point is simple (stripped numerator
    /// squarefree). Meaningful only when `outside_degree > 0`.
    pub outside_squarefree: bool,
}

/// Computes [`ExteriorParts`] for a series with Wronskian `w`.
pub fn exterior_parts(series: &LinearSeries, w: &RatFn) -> ExteriorParts {
    let mut num = w.num().clone();
    for (p, _) in &series.divisor {
        if let P1Point::Finite(c) = p {
            let m = num.root_multiplicity(c);
            if m > 0 {
                num = num.div_exact(&Poly::linear(c).pow(m));
            }
        }
    }
    let deg = num.degree().expect("nonzero Wronskian numerator") as i64;
    ExteriorParts {
        outside_degree: deg,
        outside_squarefree: num.is_squarefree(),
    }
}

/// The subseries of sections vanishing at the extra finite point `p`, as a
/// series for the divisor lowered by one at `p`. Fails if `p` lies in the
/// support or if every section already vanishes there.
pub fn series_minus_point(series: &LinearSeries, p: &Rat) -> Result<LinearSeries> {
    let point = P1Point::Finite(p.clone());
    if series.allowance(&point) != 0 {
        return Err(Error::CoincidentPoints(format!(
            "{p} already appears in the divisor"
        )));
    }
    if series.dim() < 2 {
        return Err(Error::OutOfRange(
            "removing a point from a series of dimension < 2".into(),
        ));
    }
    // Section value at p: allowance is 0, so this is plain evaluation.
    let values: Vec<Rat> = series
        .basis
        .iter()
        .map(|f| f.eval(p).expect("points off the support are not poles"))
        .collect();
    let Some(j0) = values.iter().position(|c| !c.is_zero()) else {
        return Err(Error::BasePoint(p.to_string()));
    };
    let pivot = series.basis[j0].clone();
    let pv = values[j0].clone();
    let basis: Vec<RatFn> = series
        .basis
        .iter()
        .zip(&values)
        .enumerate()
        .filter(|(j, _)| *j != j0)
        .map(|(_, (f, c))| f - &pivot.scale(&(c / &pv)))
        .collect();
    let mut divisor = series.divisor.clone();
    divisor.push((point, -1));
    LinearSeries::new(basis, divisor)
}

/// One member of the pencil between a twisted series and its twice-twisted
/// subspace at the first support point.
#[derive(Clone, Debug)]
pub struct PencilMember {
    /// Description of the pencil parameter for the report.
    pub desc: String,
    /// The member itself.
    pub series: LinearSeries,
}

/// Members of the pencil of codimension-1 subspaces `V_1` with
/// `V(-2 R_1) ⊆ V_1 ⊂ V`: the fixed part is the full series minus its two
/// deepest poles at `R_1`, and the moving section sweeps
/// `alpha/(x-R_1)^{a_1} + beta/(x-R_1)^{a_1+1}`.
///
/// The three axis members `(1:0)`, `(0:1)`, `(1:1)` are always produced,
/// followed by `extra` seeded parameters `(1:t)` with `t != 0`. When
/// `a_1 = 1` the subspace `V(-2 R_1)` already has codimension 1, so the
/// pencil degenerates to that single forced member.
pub fn pencil_members(t: &Twist, extra: usize, seed: u64) -> Result<Vec<PencilMember>> {
    if t.total() < 2 {
        return Err(Error::OutOfRange(
            "pencil needs total multiplicity >= 2".into(),
        ));
    }
    let divisor: Vec<(P1Point, i64)> = t
        .points()
        .iter()
        .map(|(p, a)| (P1Point::Finite(p.clone()), *a as i64 + 1))
        .collect();
    let r1 = t.point(0);
    let a1 = t.mult(0);
    // Fixed part: all blocks except the two deepest poles at R_1.
    let mut fixed = Vec::new();
    for k in 2..=(a1 + 1).saturating_sub(2) {
        fixed.push(RatFn::inv_linear_pow(r1, k as usize));
    }
    for (p, a) in &t.points()[1..] {
        for k in 2..=(a + 1) {
            fixed.push(RatFn::inv_linear_pow(p, k as usize));
        }
    }
    if a1 == 1 {
        // V(-2 R_1) is itself the unique codimension-1 subspace containing
        // it; the moving part is empty.
        let series = LinearSeries::new(fixed, divisor)?;
        return Ok(vec![PencilMember {
            desc: "forced member (a_1 = 1)".into(),
            series,
        }]);
    }
    let e1 = RatFn::inv_linear_pow(r1, a1 as usize);
    let e2 = RatFn::inv_linear_pow(r1, a1 as usize + 1);
    let mut params: Vec<(String, RatFn)> = vec![
        ("(1:0)".into(), e1.clone()),
        ("(0:1)".into(), e2.clone()),
        ("(1:1)".into(), &e1 + &e2),
    ];
    let mut rng = stream(seed, &format!("pencil/{}", t.label()));
    for _ in 0..extra {
        let tval = nonzero_small_rat(&mut rng);
        params.push((format!("(1:{tval})"), &e1 + &e2.scale(&tval)));
    }
    params
        .into_iter()
        .map(|(desc, moving)| {
            let mut basis = fixed.clone();
            basis.push(moving);
            Ok(PencilMember {
                desc,
                series: LinearSeries::new(basis, divisor.clone())?,
            })
        })
        .collect()
}

/// The fixed pool of support points used by the exhaustive sweeps.
pub fn support_pool() -> Vec<Rat> {
    [0, 1, -1, 2].iter().map(|&n| crate::rat::rint(n)).collect()
}

/// Generic checkpoints, disjoint from [`support_pool`], for removed-point
/// and generic-weight checks.
pub fn generic_points() -> Vec<Rat> {
    vec![
        crate::rat::rat(1, 2),
        crate::rat::rat(-1, 3),
        crate::rat::rint(3),
        crate::rat::rat(5, 2),
        crate::rat::rint(-3),
    ]
}

/// Every twist with `1 <= n <= max_n` support points from [`support_pool`]
/// and multiplicities in `1..=max_a`, in a stable order.
pub fn standard_twist_pool(max_n: usize, max_a: u64) -> Vec<Twist> {
    let pool = support_pool();
    assert!(max_n <= pool.len(), "support pool has only {} points", pool.len());
    let mut out = Vec::new();
    for n in 1..=max_n {
        let points: Vec<Rat> = pool[..n].to_vec();
        // Odometer over multiplicity vectors in {1..max_a}^n.
        let mut mults = vec![1u64; n];
        loop {
            let spec: Vec<(Rat, u64)> = points
                .iter()
                .cloned()
                .zip(mults.iter().copied())
                .collect();
            out.push(Twist::new(spec).expect("pool twists are valid"));
            // Increment.
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                if mults[i] < max_a {
                    mults[i] += 1;
                    break;
                }
                mults[i] = 1;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    out
}

// ---- Verification suites ----

/// Checks the weight law of the full twisted series: at each `R_i` the
/// orders are `{0..a_i-1} ∪ {a_i+1..sum a}` with weight `sum_{j != i} a_j`,
/// the weight at infinity is zero, and the support exhausts the total
/// ramification `(n-1) sum a`. With `with_wronskian`, the same weights are
/// recomputed from the Wronskian's vanishing orders and its numerator is
/// certified to have no roots outside the support.
pub fn verify_twist_weights(t: &Twist, with_wronskian: bool) -> Result<Vec<Case>> {
    let v = twisted_series(t);
    let label = t.label();
    let input = format!("full series of {label}");
    let sum_a = t.total() as i64;
    let n = t.n() as i64;
    let total = ramification_total(&v);
    let mut cases = Vec::new();
    cases.push(Case::compare(
        format!("{label}|total"),
        &input,
        ((n - 1) * sum_a).to_string(),
        total.to_string(),
        "ramification-degree",
    ));
    let mut seqs = Vec::new();
    let mut support_weight = 0;
    for i in 0..t.n() {
        let a_i = t.mult(i) as i64;
        let seq = vanishing_sequence(&v, &P1Point::Finite(t.point(i).clone()))?;
        let expected_orders: Vec<i64> = (0..a_i).chain(a_i + 1..=sum_a).collect();
        let expected_weight = sum_a - a_i;
        cases.push(Case::compare(
            format!("{label}|R{i}|orders"),
            &input,
            format!("{expected_orders:?}"),
            format!("{:?}", seq.orders),
            "support-orders",
        ));
        cases.push(Case::compare(
            format!("{label}|R{i}|weight"),
            &input,
            expected_weight.to_string(),
            seq.weight.to_string(),
            "support-weight",
        ));
        support_weight += seq.weight;
        seqs.push(seq);
    }
    let seq_inf = vanishing_sequence(&v, &P1Point::Infinity)?;
    cases.push(Case::compare(
        format!("{label}|inf|weight"),
        &input,
        "0",
        seq_inf.weight.to_string(),
        "infinity-weight",
    ));
    cases.push(Case::compare(
        format!("{label}|exterior"),
        &input,
        "0",
        (total - support_weight - seq_inf.weight).to_string(),
        "exterior-count",
    ));
    if with_wronskian {
        let w = series_wronskian(&v);
        for (i, seq) in seqs.iter().enumerate() {
            let ww = wronskian_weight(&v, &w, &P1Point::Finite(t.point(i).clone()));
            cases.push(Case::compare(
                format!("{label}|R{i}|wronskian-order"),
                &input,
                seq.weight.to_string(),
                ww.to_string(),
                "wronskian-order",
            ));
        }
        let ww_inf = wronskian_weight(&v, &w, &P1Point::Infinity);
        cases.push(Case::compare(
            format!("{label}|inf|wronskian-order"),
            &input,
            seq_inf.weight.to_string(),
            ww_inf.to_string(),
            "wronskian-order",
        ));
        let parts = exterior_parts(&v, &w);
        cases.push(Case::compare(
            format!("{label}|wronskian-outside"),
            &input,
            "0",
            parts.outside_degree.to_string(),
            "exterior-count",
        ));
    }
    Ok(cases)
}

/// Checks the weight law of every pencil member: the excesses
/// `eps_i = weight(R_i) - base_i` lie in `{0, 1}` for the bases
/// `base_1 = (sum_{j != 1} a_j) + sum a - 2` and
/// `base_i = (sum_{j != i} a_j) - 1` otherwise, at most one excess is 1,
/// and the ramification left outside the support is `1 - sum eps` (hence a
/// single simple point when nonzero). The first `wronskian_members` members
/// additionally get a full Wronskian balance check.
pub fn verify_pencil_weights(
    t: &Twist,
    extra: usize,
    seed: u64,
    wronskian_members: usize,
) -> Result<Vec<Case>> {
    let members = pencil_members(t, extra, seed)?;
    let label = t.label();
    let sum_a = t.total() as i64;
    let mut cases = Vec::new();
    for (m_idx, member) in members.iter().enumerate() {
        let vm = &member.series;
        let input = format!("pencil member {} of {label}", member.desc);
        let mid = format!("{label}|m{m_idx:02}");
        let total = ramification_total(vm);
        let mut eps = Vec::new();
        let mut support_weight = 0;
        for i in 0..t.n() {
            let a_i = t.mult(i) as i64;
            let base = if i == 0 {
                (sum_a - a_i) + sum_a - 2
            } else {
                (sum_a - a_i) - 1
            };
            let seq = vanishing_sequence(vm, &P1Point::Finite(t.point(i).clone()))?;
            support_weight += seq.weight;
            eps.push(seq.weight - base);
        }
        let eps_ok = eps.iter().all(|&e| e == 0 || e == 1);
        cases.push(Case::judged(
            format!("{mid}|eps"),
            &input,
            "each excess in {0, 1}",
            format!("{eps:?}"),
            "pencil-eps",
            eps_ok,
        ));
        let eps_sum: i64 = eps.iter().sum();
        cases.push(Case::judged(
            format!("{mid}|eps-sum"),
            &input,
            "at most one excess",
            eps_sum.to_string(),
            "pencil-eps",
            eps_sum <= 1,
        ));
        let exterior = total - support_weight;
        cases.push(Case::compare(
            format!("{mid}|exterior"),
            &input,
            (1 - eps_sum).to_string(),
            exterior.to_string(),
            "exterior-count",
        ));
        if m_idx < wronskian_members {
            let w = series_wronskian(vm);
            let seq_inf = vanishing_sequence(vm, &P1Point::Infinity)?;
            let parts = exterior_parts(vm, &w);
            cases.push(Case::compare(
                format!("{mid}|wronskian-balance"),
                &input,
                exterior.to_string(),
                (seq_inf.weight + parts.outside_degree).to_string(),
                "wronskian-balance",
            ));
            let simple_ok = seq_inf.weight <= 1
                && (parts.outside_degree == 0 || parts.outside_squarefree);
            cases.push(Case::judged(
                format!("{mid}|exterior-simple"),
                &input,
                "exterior points all simple",
                format!(
                    "inf weight {}, outside degree {}, squarefree {}",
                    seq_inf.weight, parts.outside_degree, parts.outside_squarefree
                ),
                "exterior-simple",
                simple_ok,
            ));
        }
    }
    Ok(cases)
}

/// Checks the weight law of the subseries vanishing at a generic point `p`:
/// excesses over `(sum_{j != i} a_j) - 1` lie in `{0, 1}` with at most one
/// equal to 1, the total ramification is `(n-1)(sum a - 1)`, and the
/// ramification outside the support is `1 - sum eps`. With
/// `with_wronskian`, the outside part is decomposed honestly as
/// (weight at `p`) + (weight at infinity) + (roots elsewhere).
pub fn verify_punctured_weights(t: &Twist, p: &Rat, with_wronskian: bool) -> Result<Vec<Case>> {
    let v = twisted_series(t);
    let v1 = series_minus_point(&v, p)?;
    let label = t.label();
    let input = format!("series of {label} minus the point {p}");
    let pid = format!("{label}|P={p}");
    let sum_a = t.total() as i64;
    let n = t.n() as i64;
    let total = ramification_total(&v1);
    let mut cases = Vec::new();
    cases.push(Case::compare(
        format!("{pid}|total"),
        &input,
        ((n - 1) * (sum_a - 1)).to_string(),
        total.to_string(),
        "ramification-degree",
    ));
    let mut eps = Vec::new();
    let mut support_weight = 0;
    for i in 0..t.n() {
        let a_i = t.mult(i) as i64;
        let base = (sum_a - a_i) - 1;
        let seq = vanishing_sequence(&v1, &P1Point::Finite(t.point(i).clone()))?;
        support_weight += seq.weight;
        eps.push(seq.weight - base);
    }
    let eps_ok = eps.iter().all(|&e| e == 0 || e == 1);
    cases.push(Case::judged(
        format!("{pid}|eps"),
        &input,
        "each excess in {0, 1}",
        format!("{eps:?}"),
        "punctured-eps",
        eps_ok,
    ));
    let eps_sum: i64 = eps.iter().sum();
    cases.push(Case::judged(
        format!("{pid}|eps-sum"),
        &input,
        "at most one excess",
        eps_sum.to_string(),
        "punctured-eps",
        eps_sum <= 1,
    ));
    let exterior = total - support_weight;
    cases.push(Case::compare(
        format!("{pid}|exterior"),
        &input,
        (1 - eps_sum).to_string(),
        exterior.to_string(),
        "exterior-count",
    ));
    if with_wronskian {
        let w = series_wronskian(&v1);
        let seq_p = vanishing_sequence(&v1, &P1Point::Finite(p.clone()))?;
        let seq_inf = vanishing_sequence(&v1, &P1Point::Infinity)?;
        let parts = exterior_parts(&v1, &w);
        cases.push(Case::compare(
            format!("{pid}|wronskian-balance"),
            &input,
            exterior.to_string(),
            (seq_p.weight + seq_inf.weight + parts.outside_degree).to_string(),
            "wronskian-balance",
        ));
    }
    Ok(cases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    fn twist(spec: &[(i64, u64)]) -> Twist {
        Twist::new(spec.iter().map(|&(p, a)| (rint(p), a)).collect()).unwrap()
    }

    #[test]
    fn twist_validation() {
        assert!(Twist::new(vec![]).is_err());
        assert!(matches!(
            Twist::new(vec![(rint(0), 1), (rint(0), 2)]),
            Err(Error::CoincidentPoints(_))
        ));
        assert!(matches!(
            Twist::new(vec![(rint(0), 0)]),
            Err(Error::InvalidMultiplicity { .. })
        ));
        let t = twist(&[(0, 2), (1, 1)]);
        assert_eq!(t.n(), 2);
        assert_eq!(t.total(), 3);
        assert_eq!(t.label(), "a=2,1;R=0,1");
    }

    #[test]
    fn twisted_series_shape() {
        let t = twist(&[(0, 2), (1, 3)]);
        let v = twisted_series(&t);
        assert_eq!(v.dim(), 5);
        assert_eq!(v.rank(), 4);
        // degree = -2 + (a_1 + 1) + (a_2 + 1) = -2 + 3 + 4 = 5.
        assert_eq!(v.ambient_degree(), 5);
        assert_eq!(v.allowance(&P1Point::finite(0)), 3);
        assert_eq!(v.allowance(&P1Point::finite(1)), 4);
        assert_eq!(v.allowance(&P1Point::Infinity), 0);
        assert_eq!(v.allowance(&P1Point::finite(7)), 0);
    }

    #[test]
    fn series_rejects_unsupported_poles_and_dependence() {
        // Pole at 5 not in the divisor.
        let err = LinearSeries::new(
            vec![RatFn::inv_linear_pow(&rint(5), 1)],
            vec![(P1Point::finite(0), 2)],
        );
        assert!(matches!(err, Err(Error::PoleOrderViolation { .. })));
        // Pole too deep.
        let err = LinearSeries::new(
            vec![RatFn::inv_linear_pow(&rint(0), 3)],
            vec![(P1Point::finite(0), 2)],
        );
        assert!(matches!(err, Err(Error::PoleOrderViolation { .. })));
        // Dependent family.
        let f = RatFn::inv_linear_pow(&rint(0), 2);
        let err = LinearSeries::new(
            vec![f.clone(), f.scale(&rat(3, 2))],
            vec![(P1Point::finite(0), 3)],
        );
        assert!(matches!(err, Err(Error::DependentBasis { .. })));
        // Pole beyond the allowance at infinity: x^2 needs v_inf >= 2.
        let err = LinearSeries::new(
            vec![RatFn::from_poly(Poly::from_ints(&[0, 0, 1]))],
            vec![(P1Point::finite(0), 3)],
        );
        assert!(matches!(err, Err(Error::PoleOrderViolation { .. })));
    }

    #[test]
    fn vanishing_sequence_of_single_block() {
        // V for one point of multiplicity 2 at 0: {1/x^2, 1/x^3}.
        let t = twist(&[(0, 2)]);
        let v = twisted_series(&t);
        let seq = vanishing_sequence(&v, &P1Point::finite(0)).unwrap();
        assert_eq!(seq.orders, vec![0, 1]);
        assert_eq!(seq.weight, 0);
        // At infinity both sections vanish: orders {0, 1}, weight 0.
        let seq_inf = vanishing_sequence(&v, &P1Point::Infinity).unwrap();
        assert_eq!(seq_inf.orders, vec![0, 1]);
        assert_eq!(seq_inf.weight, 0);
        // Total ramification for n = 1 is zero.
        assert_eq!(ramification_total(&v), 0);
    }

    #[test]
    fn vanishing_sequence_two_simple_points() {
        // a = (1,1) at R = (0,1): V = {1/x^2, 1/(x-1)^2}, dim 2, degree 2.
        let t = twist(&[(0, 1), (1, 1)]);
        let v = twisted_series(&t);
        let seq0 = vanishing_sequence(&v, &P1Point::finite(0)).unwrap();
        assert_eq!(seq0.orders, vec![0, 2]);
        assert_eq!(seq0.weight, 1);
        let seq1 = vanishing_sequence(&v, &P1Point::finite(1)).unwrap();
        assert_eq!(seq1.orders, vec![0, 2]);
        assert_eq!(seq1.weight, 1);
        let seq_inf = vanishing_sequence(&v, &P1Point::Infinity).unwrap();
        assert_eq!(seq_inf.weight, 0);
        // Total (r+1)(d-r) = 2 * 1 = 2 = 1 + 1: nothing outside the support.
        assert_eq!(ramification_total(&v), 2);
        // Generic points are unramified.
        let seq_g = vanishing_sequence(&v, &P1Point::Finite(rat(1, 2))).unwrap();
        assert_eq!(seq_g.weight, 0);
    }

    #[test]
    fn wronskian_weight_agrees_with_sequences() {
        let t = twist(&[(0, 2), (1, 1)]);
        let v = twisted_series(&t);
        let w = series_wronskian(&v);
        for p in [
            P1Point::finite(0),
            P1Point::finite(1),
            P1Point::Infinity,
            P1Point::Finite(rat(1, 2)),
            P1Point::finite(-2),
        ] {
            let seq = vanishing_sequence(&v, &p).unwrap();
            assert_eq!(
                wronskian_weight(&v, &w, &p),
                seq.weight,
                "weight mismatch at {p}"
            );
        }
        // And the full series has no exterior ramification at all.
        let parts = exterior_parts(&v, &w);
        assert_eq!(parts.outside_degree, 0);
    }

    #[test]
    fn pencil_members_shape_and_weights() {
        // a = (2,2): hand-computed member weights.
        let t = twist(&[(0, 2), (1, 2)]);
        let members = pencil_members(&t, 2, 42).unwrap();
        assert_eq!(members.len(), 5); // three axes + two sampled
        for m in &members {
            assert_eq!(m.series.dim(), 3);
        }
        // Member (1:0) = e_1: weights (5, 1), eps = (1, 0).
        let m0 = &members[0].series;
        assert_eq!(
            vanishing_sequence(m0, &P1Point::finite(0)).unwrap().weight,
            5
        );
        assert_eq!(
            vanishing_sequence(m0, &P1Point::finite(1)).unwrap().weight,
            1
        );
        // Member (0:1) = e_2: weights (4, 1), eps = (0, 0), so one simple
        // exterior point remains.
        let m1 = &members[1].series;
        let w0 = vanishing_sequence(m1, &P1Point::finite(0)).unwrap();
        assert_eq!(w0.orders, vec![0, 3, 4]);
        assert_eq!(w0.weight, 4);
        assert_eq!(
            vanishing_sequence(m1, &P1Point::finite(1)).unwrap().weight,
            1
        );
        assert_eq!(ramification_total(m1), 6);
    }

    #[test]
    fn degenerate_pencil_is_forced() {
        let t = twist(&[(0, 1), (1, 1)]);
        let members = pencil_members(&t, 5, 42).unwrap();
        assert_eq!(members.len(), 1);
        let m = &members[0].series;
        assert_eq!(m.dim(), 1);
        // wt(R_1) = 2 forces eps_1 = 1.
        assert_eq!(vanishing_sequence(m, &P1Point::finite(0)).unwrap().weight, 2);
        assert_eq!(vanishing_sequence(m, &P1Point::finite(1)).unwrap().weight, 0);
    }

    #[test]
    fn pencil_rejects_trivial_twist() {
        let t = twist(&[(0, 1)]);
        assert!(pencil_members(&t, 0, 42).is_err());
    }

    #[test]
    fn removed_point_series() {
        let t = twist(&[(0, 1), (1, 1)]);
        let v = twisted_series(&t);
        let p = rat(1, 2);
        let v1 = series_minus_point(&v, &p).unwrap();
        assert_eq!(v1.dim(), 1);
        assert_eq!(v1.ambient_degree(), 1);
        assert_eq!(v1.allowance(&P1Point::Finite(p.clone())), -1);
        // The surviving section genuinely vanishes at p.
        let seq_p = vanishing_sequence(&v1, &P1Point::Finite(p)).unwrap();
        assert_eq!(seq_p.orders, vec![0]); // order measured in the lowered bundle
        // Removing a support point is rejected.
        assert!(series_minus_point(&v, &rint(0)).is_err());
        // Removing from a dimension-1 series is rejected.
        let t1 = twist(&[(0, 1)]);
        assert!(series_minus_point(&twisted_series(&t1), &rat(1, 3)).is_err());
    }

    #[test]
    fn standard_pool_counts() {
        let pool = standard_twist_pool(4, 3);
        assert_eq!(pool.len(), 3 + 9 + 27 + 81);
        let pool21 = standard_twist_pool(2, 1);
        assert_eq!(pool21.len(), 2);
        // Labels are unique.
        let mut labels: Vec<String> = pool.iter().map(|t| t.label()).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), 120);
    }

    #[test]
    fn verify_twist_weights_small() {
        for spec in [&[(0i64, 1u64), (1, 1)][..], &[(0, 2), (1, 1), (-1, 3)][..]] {
            let t = twist(spec);
            let cases = verify_twist_weights(&t, true).unwrap();
            for c in &cases {
                assert!(c.ok, "failed case {}: {} vs {}", c.id, c.expected, c.computed);
            }
        }
    }

    #[test]
    fn verify_pencil_weights_small() {
        for spec in [
            &[(0i64, 2u64), (1, 2)][..],
            &[(0, 1), (1, 1)][..],
            &[(0, 3)][..],
            &[(0, 1), (1, 2), (-1, 1)][..],
        ] {
            let t = twist(spec);
            let cases = verify_pencil_weights(&t, 4, 42, 3).unwrap();
            for c in &cases {
                assert!(c.ok, "failed case {}: {} vs {}", c.id, c.expected, c.computed);
            }
        }
    }

    #[test]
    fn verify_punctured_weights_small() {
        for spec in [&[(0i64, 2u64)][..], &[(0, 1), (1, 1)][..], &[(0, 2), (1, 1)][..]] {
            let t = twist(spec);
            let cases = verify_punctured_weights(&t, &rat(1, 2), true).unwrap();
            for c in &cases {
                assert!(c.ok, "failed case {}: {} vs {}", c.id, c.expected, c.computed);
            }
        }
    }
}
