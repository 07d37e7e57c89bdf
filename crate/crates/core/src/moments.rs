//! First two raw moments of the Choquet integral for any input law, from
//! expected spacings of order statistics.
//!
//! With `D_k = X_{n-k+1:n} - X_{n-k:n}` and `X_{0:n} = 0`,
//!
//! ```text
//! E[Y]  = Σ_T ν(T) / C(n,|T|) · E[D_|T|]
//! E[Y²] = 2 Σ_{T1 ⊊ T2} ν(T1) ν(T2) / (C(|T2|,|T1|) C(n,|T2|)) · E[D_|T1| D_|T2|]
//!           + Σ_T ν(T)² / C(n,|T|) · E[D_|T|²]
//! ```
//!
//! Both sums are grouped by subset sizes. The pair sum needs
//! `W(s, t) = Σ_{|T2|=t} ν(T2) Σ_{T1 ⊊ T2, |T1|=s} ν(T1)`, which costs `O(3^n)`
//! by submask iteration; symmetric games use the closed form
//! `W(s, t) = C(n,t) C(t,s) v_s v_t` instead.

use serde::Serialize;

use crate::capacity::{binomial, SetFunction, Subset};
use crate::error::{ChoquetError, Result};
use crate::order_stats::OSMomentProvider;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistributionReport {
    pub mean: f64,
    pub sd: f64,
    pub variance: f64,
}

fn check_provider(g: &SetFunction, p: &dyn OSMomentProvider) -> Result<()> {
    if p.n() != g.n() {
        return Err(ChoquetError::InvalidParameter(format!(
            "moment provider is for n = {}, game has n = {}",
            p.n(),
            g.n()
        )));
    }
    Ok(())
}

/// Expected spacings `E[D_k]` and `E[D_k D_l]` for `1 <= k, l <= n`.
#[derive(Debug, Clone)]
pub struct SpacingMoments {
    n: usize,
    d1: Vec<f64>,
    d2: Vec<f64>,
}

impl SpacingMoments {
    pub fn new(p: &dyn OSMomentProvider) -> Result<Self> {
        let n = p.n();
        // order statistic index of the upper end of D_k, with rank 0 meaning X_{0:n} = 0
        let mean = |i: usize| if i == 0 { Ok(0.0) } else { p.mean(i) };
        let prod = |i: usize, j: usize| {
            if i == 0 || j == 0 {
                Ok(0.0)
            } else {
                p.product(i, j)
            }
        };
        let mut d1 = vec![0.0; n + 1];
        for (k, slot) in d1.iter_mut().enumerate().skip(1) {
            let a = n - k + 1;
            *slot = mean(a)? - mean(a - 1)?;
        }
        let mut d2 = vec![0.0; (n + 1) * (n + 1)];
        for k in 1..=n {
            for l in k..=n {
                let (a, b) = (n - k + 1, n - l + 1);
                let v = prod(a, b)? - prod(a, b - 1)? - prod(a - 1, b)? + prod(a - 1, b - 1)?;
                d2[k * (n + 1) + l] = v;
                d2[l * (n + 1) + k] = v;
            }
        }
        Ok(Self { n, d1, d2 })
    }

    /// `E[D_k]`; zero for `k = 0`.
    pub fn d1(&self, k: usize) -> f64 {
        self.d1[k]
    }

    /// `E[D_k D_l]`; zero when either index is 0.
    pub fn d2(&self, k: usize, l: usize) -> f64 {
        self.d2[k * (self.n + 1) + l]
    }
}

/// `E[Y]` for the law behind `p`.
pub fn mean(g: &SetFunction, p: &dyn OSMomentProvider) -> Result<f64> {
    check_provider(g, p)?;
    let spacings = SpacingMoments::new(p)?;
    Ok(mean_from(g, &spacings))
}

fn mean_from(g: &SetFunction, sp: &SpacingMoments) -> f64 {
    let n = g.n();
    let levels = g.level_sums();
    (1..=n).map(|t| levels[t] / binomial(n, t) * sp.d1(t)).sum()
}

/// `E[Y²]` for the law behind `p`.
pub fn second_raw_moment(g: &SetFunction, p: &dyn OSMomentProvider) -> Result<f64> {
    check_provider(g, p)?;
    let spacings = SpacingMoments::new(p)?;
    Ok(second_from(g, &spacings))
}

fn second_from(g: &SetFunction, sp: &SpacingMoments) -> f64 {
    let n = g.n();
    let pairs = nested_pair_sums(g);
    let mut squares = vec![0.0; n + 1];
    for (m, v) in g.values().iter().enumerate() {
        squares[m.count_ones() as usize] += v * v;
    }
    let mut acc = 0.0;
    for t in 1..=n {
        let ct = binomial(n, t);
        acc += squares[t] / ct * sp.d2(t, t);
        for s in 1..t {
            acc += 2.0 * pairs[s * (n + 1) + t] / (binomial(t, s) * ct) * sp.d2(s, t);
        }
    }
    acc
}

/// `W(s, t)` stored at `s * (n + 1) + t` for `s < t`.
fn nested_pair_sums(g: &SetFunction) -> Vec<f64> {
    let n = g.n();
    let mut w = vec![0.0; (n + 1) * (n + 1)];
    if g.is_symmetric(0.0) {
        let v: Vec<f64> = (0..=n).map(|k| g.value(((1u64 << k) - 1) as Subset)).collect();
        for t in 1..=n {
            for s in 1..t {
                w[s * (n + 1) + t] = binomial(n, t) * binomial(t, s) * v[s] * v[t];
            }
        }
        return w;
    }
    for t2 in 1..=g.full() {
        let v2 = g.value(t2);
        if v2 == 0.0 {
            continue;
        }
        let t = t2.count_ones() as usize;
        // proper nonempty submasks of t2
        let mut t1 = (t2 - 1) & t2;
        while t1 != 0 {
            let s = t1.count_ones() as usize;
            w[s * (n + 1) + t] += v2 * g.value(t1);
            t1 = (t1 - 1) & t2;
        }
    }
    w
}

/// Mean, variance and standard deviation. Rounding can push the variance
/// slightly below zero; the standard deviation then reports 0.
pub fn moments_report(g: &SetFunction, p: &dyn OSMomentProvider) -> Result<DistributionReport> {
    check_provider(g, p)?;
    let sp = SpacingMoments::new(p)?;
    let mean = mean_from(g, &sp);
    let variance = second_from(g, &sp) - mean * mean;
    Ok(DistributionReport {
        mean,
        sd: variance.max(0.0).sqrt(),
        variance,
    })
}
