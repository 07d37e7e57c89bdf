//! Seeded Monte Carlo sampling of the Choquet integral.
//!
//! Draws are generated in fixed chunks of [`CHUNK`] samples; chunk `k` uses
//! stream `k` of the seed (see [`crate::rng`]). Chunks run in parallel and are
//! concatenated in index order, so results do not depend on the thread count.

use rayon::prelude::*;
use serde::Serialize;

use crate::capacity::{choquet, SetFunction};
use crate::error::{ChoquetError, Result};
use crate::order_stats::Law;
use crate::rng::{open_unit, stream};

pub const CHUNK: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MCReport {
    pub n_samples: usize,
    pub mean: f64,
    pub sd: f64,
    pub standard_error: f64,
    /// Draws in generation order.
    #[serde(skip)]
    pub samples: Vec<f64>,
    /// Draws sorted ascending.
    #[serde(skip)]
    pub ecdf: Vec<f64>,
    pub ks_vs_reference: Option<f64>,
}

impl MCReport {
    /// Stores and returns the KS distance to `reference`.
    pub fn compare<F: Fn(f64) -> f64>(&mut self, reference: F) -> f64 {
        let d = ks_sorted(&self.ecdf, reference);
        self.ks_vs_reference = Some(d);
        d
    }

    /// Empirical raw moment of order `r`.
    pub fn raw_moment(&self, r: i32) -> f64 {
        self.samples.iter().map(|y| y.powi(r)).sum::<f64>() / self.n_samples as f64
    }
}

pub fn sample(g: &SetFunction, law: Law, n_samples: usize, seed: u64) -> Result<MCReport> {
    if n_samples < 2 {
        return Err(ChoquetError::InvalidParameter(format!(
            "need at least 2 samples, got {n_samples}"
        )));
    }
    let n = g.n();
    let chunks = n_samples.div_ceil(CHUNK);
    let samples: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream(seed, k as u64);
            let len = CHUNK.min(n_samples - k * CHUNK);
            let mut x = vec![0.0; n];
            (0..len)
                .map(|_| {
                    for xi in x.iter_mut() {
                        *xi = law.from_uniform(open_unit(&mut rng));
                    }
                    choquet(g, &x).expect("sample length matches n")
                })
                .collect::<Vec<f64>>()
        })
        .collect::<Vec<_>>()
        .concat();

    let m = n_samples as f64;
    let mean = samples.iter().sum::<f64>() / m;
    let ss: f64 = samples.iter().map(|y| (y - mean) * (y - mean)).sum();
    let sd = (ss / (m - 1.0)).sqrt();
    let mut ecdf = samples.clone();
    ecdf.sort_by(f64::total_cmp);
    Ok(MCReport {
        n_samples,
        mean,
        sd,
        standard_error: sd / m.sqrt(),
        samples,
        ecdf,
        ks_vs_reference: None,
    })
}

/// `sup_y |ECDF(y) - F(y)|` over the sample points, checking both one-sided gaps.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], reference: F) -> Result<f64> {
    if samples.len() < 2 {
        return Err(ChoquetError::InvalidParameter(format!(
            "need at least 2 samples, got {}",
            samples.len()
        )));
    }
    if samples.windows(2).all(|w| w[0] <= w[1]) {
        return Ok(ks_sorted(samples, reference));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(ks_sorted(&sorted, reference))
}

fn ks_sorted<F: Fn(f64) -> f64>(sorted: &[f64], reference: F) -> f64 {
    let m = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &y)| {
            let f = reference(y);
            ((i + 1) as f64 / m - f).max(f - i as f64 / m)
        })
        .fold(0.0, f64::max)
}

/// Two-sided KS critical value `c / sqrt(m)` at level 1% (`c = 1.63`).
pub fn ks_band_1pct(m: usize) -> f64 {
    1.63 / (m as f64).sqrt()
}
