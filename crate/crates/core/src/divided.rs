//! Divided differences of truncated power functions.
//!
//! The recurrence routines split the knots at `y` into `b` (knots `< y`) and
//! `c` (knots `>= y`) and fill a single row of the triangular table
//! `α[k][l] = Δ[(· - y)^(k+l-2)_+ : b_1..b_k, c_1..c_l]` (plus variant) or
//! `α[k][l] = Δ[(· - y)^(k+l-1)_- : b_1..b_k, c_1..c_l]` (minus variant),
//! using
//!
//! ```text
//! α[k][l] = ((c_l - y) α[k-1][l] + (y - b_k) α[k][l-1]) / (c_l - b_k).
//! ```
//!
//! Because `c_l >= y > b_k`, the denominator is always positive, so repeated
//! knots are handled without special cases.

use crate::error::{ChoquetError, Result};

/// Two knots closer than this are treated as repeated by the rational formula.
pub const KNOT_TOL: f64 = 1e-10;

/// Knot sequence `a_0, ..., a_n` (any order, repeats allowed).
#[derive(Debug, Clone, PartialEq)]
pub struct KnotVector(Vec<f64>);

impl KnotVector {
    pub fn new(knots: Vec<f64>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(ChoquetError::TooFewKnots(knots.len()));
        }
        if let Some(&k) = knots.iter().find(|k| !k.is_finite()) {
            return Err(ChoquetError::NonFiniteKnot(k));
        }
        Ok(Self(knots))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Order `n` of the divided difference (number of knots minus one).
    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn partition(&self, y: f64) -> PartitionedKnots {
        PartitionedKnots::split(&self.0, y)
    }

    fn hull(&self) -> (f64, f64) {
        self.0
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &k| {
                (lo.min(k), hi.max(k))
            })
    }
}

/// Knots split at `y`, shifted by `-y`: `below` holds `b_k - y < 0` and
/// `above` holds `c_l - y >= 0`, each in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionedKnots {
    pub below: Vec<f64>,
    pub above: Vec<f64>,
}

impl PartitionedKnots {
    pub fn split(knots: &[f64], y: f64) -> Self {
        let mut below = Vec::with_capacity(knots.len());
        let mut above = Vec::with_capacity(knots.len());
        for &a in knots {
            if a >= y {
                above.push(a - y);
            } else {
                below.push(a - y);
            }
        }
        Self { below, above }
    }
}

/// `Δ[(· - y)^(n-1)_+ : a_0, ..., a_n]` by the de Boor–Varsi recurrence, where
/// `n + 1` is the number of knots.
pub fn tp_plus_dd(knots: &[f64], y: f64) -> f64 {
    let mut table = Vec::with_capacity(knots.len() + 1);
    plus_recurrence(knots, y, &mut table)
}

/// `Δ[(· - y)^n_- : a_0, ..., a_n]` by the minus-variant recurrence.
pub fn tp_minus_dd(knots: &[f64], y: f64) -> f64 {
    let mut table = Vec::with_capacity(knots.len() + 1);
    minus_recurrence(knots, y, &mut table)
}

/// Plus recurrence with a caller-provided scratch row (reused across calls).
pub(crate) fn plus_recurrence(knots: &[f64], y: f64, table: &mut Vec<f64>) -> f64 {
    let PartitionedKnots { below, above } = PartitionedKnots::split(knots, y);
    let (r, s) = (below.len(), above.len());
    if r == 0 || s == 0 {
        return 0.0;
    }
    table.clear();
    table.resize(s + 1, 0.0);
    let b1 = below[0];
    table[1] = 1.0 / (above[0] - b1);
    for j in 2..=s {
        table[j] = -b1 * table[j - 1] / (above[j - 1] - b1);
    }
    for &bi in &below[1..] {
        for j in 1..=s {
            let cj = above[j - 1];
            table[j] = (cj * table[j] - bi * table[j - 1]) / (cj - bi);
        }
    }
    table[s]
}

/// Minus recurrence: row starts at `α[0][l] = 0`, and `α[k][0] = 1` for `k >= 1`.
pub(crate) fn minus_recurrence(knots: &[f64], y: f64, table: &mut Vec<f64>) -> f64 {
    let PartitionedKnots { below, above } = PartitionedKnots::split(knots, y);
    let s = above.len();
    if below.is_empty() {
        return 0.0;
    }
    if s == 0 {
        return 1.0;
    }
    table.clear();
    table.resize(s + 1, 0.0);
    table[0] = 1.0;
    for &bk in &below {
        for l in 1..=s {
            let cl = above[l - 1];
            table[l] = (cl * table[l] - bk * table[l - 1]) / (cl - bk);
        }
    }
    table[s]
}

/// Which truncated power to difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// `(x - y)^d` for `x > y`, else 0.
    Plus,
    /// `(x - y)^d` for `x < y`, else 0.
    Minus,
}

impl Truncation {
    pub fn eval(self, x: f64, y: f64, degree: i32) -> f64 {
        let d = x - y;
        let active = match self {
            Truncation::Plus => d > 0.0,
            Truncation::Minus => d < 0.0,
        };
        if active {
            d.powi(degree)
        } else {
            0.0
        }
    }
}

/// Divided difference of a truncated power via `Σ g(a_i) / Π_{j≠i} (a_i - a_j)`.
/// Requires pairwise distinct knots.
pub fn tp_dd_distinct(knots: &[f64], y: f64, variant: Truncation, degree: i32) -> Result<f64> {
    dd_generic(|x| variant.eval(x, y, degree), knots)
}

/// Divided difference of an arbitrary function at pairwise distinct knots.
pub fn dd_generic<F: Fn(f64) -> f64>(f: F, knots: &[f64]) -> Result<f64> {
    check_distinct(knots)?;
    let mut acc = 0.0;
    for (i, &ai) in knots.iter().enumerate() {
        let denom: f64 = knots
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &aj)| ai - aj)
            .product();
        acc += f(ai) / denom;
    }
    Ok(acc)
}

fn check_distinct(knots: &[f64]) -> Result<()> {
    if knots.len() < 2 {
        return Err(ChoquetError::TooFewKnots(knots.len()));
    }
    let mut sorted = knots.to_vec();
    sorted.sort_by(f64::total_cmp);
    if let Some(w) = sorted.windows(2).find(|w| w[1] - w[0] <= KNOT_TOL) {
        return Err(ChoquetError::RepeatedKnots(w[0], w[1]));
    }
    Ok(())
}

/// Normalized B-spline `M(t | a_0..a_n) = n Δ[(· - t)^(n-1)_+ : a_0..a_n]`.
pub fn bspline(knots: &KnotVector, t: f64) -> f64 {
    let (lo, hi) = knots.hull();
    if t < lo || t > hi {
        return 0.0;
    }
    knots.order() as f64 * tp_plus_dd(knots.as_slice(), t)
}
