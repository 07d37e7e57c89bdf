//! Globally adaptive Gauss–Legendre quadrature.
//!
//! Each panel is integrated with a 10-point Gauss–Legendre rule and with the
//! same rule on its two halves; the difference is the panel's error estimate.
//! The panel with the largest estimate is bisected until the summed estimate
//! drops below the absolute tolerance. Nodes never touch panel endpoints, so
//! integrable endpoint singularities are allowed.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{ChoquetError, Result};

const POINTS: usize = 10;
const MAX_PANELS: usize = 200_000;

fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(POINTS))
}

/// Nodes and weights on [-1, 1] by Newton iteration on the Legendre polynomial.
pub fn gauss_legendre(m: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=m {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

fn fixed<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule()
        .iter()
        .map(|&(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

struct Panel {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    error: f64,
}

impl Panel {
    fn new<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64) -> Self {
        let m = 0.5 * (a + b);
        let left = fixed(f, a, m);
        let right = fixed(f, m, b);
        let error = (whole - (left + right)).abs();
        Self {
            a,
            b,
            left,
            right,
            error,
        }
    }

    fn value(&self) -> f64 {
        self.left + self.right
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

#[derive(Default)]
struct ErrorSum {
    finite: f64,
    non_finite: usize,
}

impl ErrorSum {
    fn add(&mut self, e: f64) {
        if e.is_finite() {
            self.finite += e;
        } else {
            self.non_finite += 1;
        }
    }

    fn remove(&mut self, e: f64) {
        if e.is_finite() {
            self.finite -= e;
        } else {
            self.non_finite -= 1;
        }
    }

    fn converged(&self, tol: f64) -> bool {
        self.non_finite == 0 && self.finite <= tol
    }

    fn total(&self) -> f64 {
        if self.non_finite > 0 {
            f64::INFINITY
        } else {
            self.finite
        }
    }
}

/// `∫_a^b f` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    integrate_with_breaks(f, a, b, &[], tol)
}

/// `∫_a^b f` with initial panel boundaries at every break point inside (a, b).
/// Useful when `f` has kinks or jumps at known locations.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: f64,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut cuts: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|&x| x > lo && x < hi)
        .collect();
    cuts.push(lo);
    cuts.push(hi);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut heap = BinaryHeap::new();
    for w in cuts.windows(2) {
        let whole = fixed(&f, w[0], w[1]);
        heap.push(Panel::new(&f, w[0], w[1], whole));
    }
    // non-finite panel errors are counted apart so the running sum stays usable
    let mut ledger = ErrorSum::default();
    heap.iter().for_each(|p| ledger.add(p.error));
    while !ledger.converged(tol) {
        if heap.len() >= MAX_PANELS {
            let estimate: f64 = heap.iter().map(Panel::value).sum();
            return Err(ChoquetError::Quadrature {
                estimate,
                error: ledger.total(),
            });
        }
        let worst = heap.pop().expect("nonempty");
        ledger.remove(worst.error);
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            // panel cannot be split further in floating point; keep its estimate
            heap.push(Panel { error: 0.0, ..worst });
            continue;
        }
        let left = Panel::new(&f, worst.a, m, worst.left);
        let right = Panel::new(&f, m, worst.b, worst.right);
        ledger.add(left.error);
        ledger.add(right.error);
        heap.push(left);
        heap.push(right);
        if ledger.converged(tol) {
            // confirm against a fresh sum; the running one drifts
            ledger = ErrorSum::default();
            heap.iter().for_each(|p| ledger.add(p.error));
        }
    }
    let mut values: Vec<f64> = heap.iter().map(Panel::value).collect();
    values.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
    Ok(sign * values.iter().sum::<f64>())
}
