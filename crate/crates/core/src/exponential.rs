//! Exact law of the Choquet integral of independent standard-exponential
//! inputs.
//!
//! Along a chain, `Y^σ` is a sum of independent exponentials with means
//! `c_m = ν_m^σ / m`. When these are positive and pairwise distinct the
//! hypoexponential density gives
//!
//! ```text
//! f(y) = (1/n!) Σ_σ Σ_i c_i^(n-2) / Π_{k≠i} (c_i - c_k) · exp(-y / c_i).
//! ```
//!
//! Games that violate the condition (for instance the minimum, where all but
//! one `c_m` vanish) are rejected; use Monte Carlo for those.

use crate::capacity::{enumerate_chains, factorial, Limits, SetFunction};
use crate::error::{ChoquetError, Result};
use crate::moments::{moments_report, DistributionReport};
use crate::order_stats::ExponentialMoments;

/// Relative gap below which two chain coefficients count as equal.
pub const COEFF_TOL: f64 = 1e-9;

/// One exponential term `a · exp(-y / c)` of the mixture, already divided by `n!`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Term {
    a: f64,
    c: f64,
}

/// Chain coefficients `c_m = ν_m^σ / m` of one permutation.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpChainCoeffs {
    /// 1-based permutation.
    pub sigma: Vec<usize>,
    pub c: Vec<f64>,
    pub regular: bool,
}

/// Coefficients of every chain, with regularity flags; no error on failure.
pub fn chain_coefficients(g: &SetFunction, limits: &Limits) -> Result<Vec<ExpChainCoeffs>> {
    Ok(enumerate_chains(g, limits)?
        .map(|chain| {
            let c = coefficients(&chain.nu_chain);
            ExpChainCoeffs {
                sigma: chain.sigma_one_based(),
                regular: irregularity(&c).is_none(),
                c,
            }
        })
        .collect())
}

fn coefficients(nu_chain: &[f64]) -> Vec<f64> {
    nu_chain[1..]
        .iter()
        .enumerate()
        .map(|(i, v)| v / (i + 1) as f64)
        .collect()
}

fn irregularity(c: &[f64]) -> Option<String> {
    if let Some(m) = c.iter().position(|&v| !(v > 0.0)) {
        return Some(format!("ν_{0}/{0} = {1} is not positive", m + 1, c[m]));
    }
    for i in 0..c.len() {
        for k in i + 1..c.len() {
            if (c[i] - c[k]).abs() <= COEFF_TOL * c[i].max(c[k]) {
                return Some(format!(
                    "ν_{0}/{0} = {2} and ν_{1}/{1} = {3} coincide; perturb the game or use Monte Carlo",
                    i + 1,
                    k + 1,
                    c[i],
                    c[k]
                ));
            }
        }
    }
    None
}

/// Density and distribution function of `Y` for exponential inputs.
#[derive(Debug, Clone)]
pub struct ExponentialChoquetDist {
    n: usize,
    terms: Vec<Term>,
}

impl ExponentialChoquetDist {
    pub fn new(g: &SetFunction, limits: &Limits) -> Result<Self> {
        let n = g.n();
        let scale = 1.0 / factorial(n);
        let mut terms = Vec::new();
        for chain in enumerate_chains(g, limits)? {
            let c = coefficients(&chain.nu_chain);
            if let Some(detail) = irregularity(&c) {
                return Err(ChoquetError::Irregular {
                    sigma: chain.sigma_one_based(),
                    detail,
                });
            }
            for (i, &ci) in c.iter().enumerate() {
                let denom: f64 = c
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i)
                    .map(|(_, &ck)| ci - ck)
                    .product();
                terms.push(Term {
                    a: scale * ci.powi(n as i32 - 2) / denom,
                    c: ci,
                });
            }
        }
        Ok(Self { n, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pdf(&self, y: f64) -> f64 {
        if y < 0.0 {
            return 0.0;
        }
        self.terms.iter().map(|t| t.a * (-y / t.c).exp()).sum()
    }

    pub fn cdf(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        let v: f64 = self
            .terms
            .iter()
            .map(|t| -t.a * t.c * (-y / t.c).exp_m1())
            .sum();
        v.clamp(0.0, 1.0)
    }

    /// Largest chain coefficient, the slowest decay scale of the density.
    pub fn max_scale(&self) -> f64 {
        self.terms.iter().map(|t| t.c).fold(0.0, f64::max)
    }
}

pub fn exp_pdf(g: &SetFunction, y: f64) -> Result<f64> {
    Ok(ExponentialChoquetDist::new(g, &Limits::default())?.pdf(y))
}

pub fn exp_cdf(g: &SetFunction, y: f64) -> Result<f64> {
    Ok(ExponentialChoquetDist::new(g, &Limits::default())?.cdf(y))
}

/// Mean and standard deviation from the exact exponential order statistics.
/// Needs no regularity.
pub fn exp_moments(g: &SetFunction) -> Result<DistributionReport> {
    moments_report(g, &ExponentialMoments::new(g.n()))
}
