//! Mixture-of-normals approximation for large `n`.
//!
//! Along each chain the integral is an L-statistic `Σ_i p_i X_{n-i+1:n}`, with
//! weight-generating function `J(i/n) = n p_{n-i+1}`. Under Stigler's
//! conditions its mean tends to `α(J, F) = ∫ J G` and `n` times its variance to
//!
//! ```text
//! β²(J, F) = 2 ∫∫_{u<v} J(u) J(v) u (1 - v) G'(u) G'(v) du dv,
//! ```
//!
//! so the law of `Y` is close to an equal-weight mixture of `n!` normals.

use rayon::prelude::*;

use crate::capacity::{enumerate_chains, Chain, Limits, SetFunction, MAX_ATTRIBUTES};
use crate::error::{ChoquetError, Result};
use crate::normal;
use crate::order_stats::{Law, OSMomentProvider, QuantileModel};
use crate::quadrature::integrate_with_breaks;

/// Weight-generating function on (0, 1).
#[derive(Debug, Clone, PartialEq)]
pub enum WeightFunction {
    /// `J(u) = values[i - 1]` for `u ∈ ((i-1)/n, i/n]`, with `n = values.len()`.
    Step(Vec<f64>),
    /// `J(u) = u^a`.
    Power(f64),
    Constant(f64),
}

impl WeightFunction {
    /// Step function with `J(i/n) = n p_{n-i+1}` along `chain`.
    pub fn from_chain(chain: &Chain) -> Self {
        let n = chain.weights.len();
        let values = (1..=n).map(|i| n as f64 * chain.weights[n - i]).collect();
        WeightFunction::Step(values)
    }

    pub fn eval(&self, u: f64) -> f64 {
        match self {
            WeightFunction::Step(values) => {
                let n = values.len();
                let i = (u * n as f64).ceil().clamp(1.0, n as f64) as usize;
                values[i - 1]
            }
            WeightFunction::Power(a) => u.powf(*a),
            WeightFunction::Constant(c) => *c,
        }
    }

    fn breaks(&self) -> Vec<f64> {
        match self {
            WeightFunction::Step(values) => {
                let n = values.len();
                (1..n).map(|i| i as f64 / n as f64).collect()
            }
            _ => Vec::new(),
        }
    }
}

/// Integration range and tolerance for the Stigler functionals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    /// The integrals run over `[trim, 1 - trim]`.
    pub trim: f64,
    pub tol: f64,
}

impl QuadOptions {
    pub fn for_law(law: Law) -> Self {
        match law {
            Law::Normal => Self { trim: 1e-9, tol: 1e-6 },
            Law::Uniform | Law::Exponential => Self { trim: 0.0, tol: 1e-8 },
        }
    }
}

pub fn alpha(j: &WeightFunction, qm: &dyn QuantileModel, opts: QuadOptions) -> Result<f64> {
    let breaks = j.breaks();
    integrate_with_breaks(
        |u| j.eval(u) * qm.quantile(u),
        opts.trim,
        1.0 - opts.trim,
        &breaks,
        opts.tol,
    )
}

fn derivative(qm: &dyn QuantileModel, u: f64) -> f64 {
    qm.derivatives(u).map_or(f64::NAN, |d| d[1])
}

/// `β²` as the iterated integral `2 ∫ J(v)(1-v)G'(v) I(v) dv` with
/// `I(v) = ∫_0^v J(u) u G'(u) du`, each level by adaptive quadrature.
pub fn beta2(j: &WeightFunction, qm: &dyn QuantileModel, opts: QuadOptions) -> Result<f64> {
    let breaks = j.breaks();
    let (lo, hi) = (opts.trim, 1.0 - opts.trim);
    let inner_tol = opts.tol * 1e-2;
    let failure = std::sync::Mutex::new(None);
    let outer = integrate_with_breaks(
        |v| {
            let inner = integrate_with_breaks(
                |u| j.eval(u) * u * derivative(qm, u),
                lo,
                v,
                &breaks,
                inner_tol,
            );
            match inner {
                Ok(i) => j.eval(v) * (1.0 - v) * derivative(qm, v) * i,
                Err(e) => {
                    failure.lock().expect("unpoisoned").get_or_insert(e);
                    0.0
                }
            }
        },
        lo,
        hi,
        &breaks,
        opts.tol / 2.0,
    )?;
    if let Some(e) = failure.into_inner().expect("unpoisoned") {
        return Err(e);
    }
    Ok(2.0 * outer)
}

/// Power-weight game `ν(S) = Σ_{j=1}^{|S|} (1/n)((n-j+1)/n)^a`, so
/// `p_i = (1/n)((n-i+1)/n)^a` along every chain and `J(u) = u^a`.
pub fn power_weight_game(n: usize, a: f64) -> Result<SetFunction> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(ChoquetError::InvalidParameter(format!(
            "exponent a must be positive, got {a}"
        )));
    }
    if n == 0 || n > MAX_ATTRIBUTES {
        return Err(ChoquetError::AttributeCount {
            n,
            max: MAX_ATTRIBUTES,
        });
    }
    let nf = n as f64;
    let mut by_size = vec![0.0; n + 1];
    for k in 1..=n {
        by_size[k] = by_size[k - 1] + ((nf - k as f64 + 1.0) / nf).powf(a) / nf;
    }
    SetFunction::symmetric(n, &by_size)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Component {
    pub weight: f64,
    pub mean: f64,
    pub variance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixtureApprox {
    pub components: Vec<Component>,
}

/// Mean and variance of `Σ_i p_i X_{n-i+1:n}` for chain weights `p`.
pub fn owa_moments(weights: &[f64], p: &dyn OSMomentProvider) -> Result<(f64, f64)> {
    let n = weights.len();
    let mut mean = 0.0;
    let mut second = 0.0;
    for i in 0..n {
        mean += weights[i] * p.mean(n - i)?;
        for k in 0..n {
            second += weights[i] * weights[k] * p.product(n - i, n - k)?;
        }
    }
    Ok((mean, second - mean * mean))
}

/// One normal per permutation, weight `1/n!`. Symmetric games give a single
/// component of weight 1, which keeps large `n` tractable.
pub fn mixture_approx(
    g: &SetFunction,
    p: &dyn OSMomentProvider,
    limits: &Limits,
) -> Result<MixtureApprox> {
    let n = g.n();
    if p.n() != n {
        return Err(ChoquetError::InvalidParameter(format!(
            "moment provider is for n = {}, game has n = {n}",
            p.n()
        )));
    }
    if g.is_symmetric(0.0) {
        let weights: Vec<f64> = {
            let mut prev = 0.0;
            (1..=n)
                .map(|k| {
                    let v = g.value(((1u64 << k) - 1) as u32);
                    let w = v - prev;
                    prev = v;
                    w
                })
                .collect()
        };
        let (mean, variance) = owa_moments(&weights, p)?;
        return Ok(MixtureApprox {
            components: vec![Component {
                weight: 1.0,
                mean,
                variance,
            }],
        });
    }
    let chains: Vec<Chain> = enumerate_chains(g, limits)?.collect();
    let weight = 1.0 / chains.len() as f64;
    let components = chains
        .par_iter()
        .map(|c| {
            let (mean, variance) = owa_moments(&c.weights, p)?;
            Ok(Component {
                weight,
                mean,
                variance,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MixtureApprox { components })
}

impl MixtureApprox {
    fn check(&self) -> Result<()> {
        match self.components.iter().position(|c| !(c.variance > 0.0)) {
            Some(index) => Err(ChoquetError::DegenerateComponent {
                index,
                variance: self.components[index].variance,
            }),
            None => Ok(()),
        }
    }

    pub fn pdf(&self, y: f64) -> Result<f64> {
        self.check()?;
        Ok(self
            .components
            .iter()
            .map(|c| {
                let s = c.variance.sqrt();
                c.weight * normal::pdf((y - c.mean) / s) / s
            })
            .sum())
    }

    pub fn cdf(&self, y: f64) -> Result<f64> {
        self.check()?;
        Ok(self
            .components
            .iter()
            .map(|c| c.weight * normal::cdf((y - c.mean) / c.variance.sqrt()))
            .sum())
    }
}

pub fn mixture_pdf(m: &MixtureApprox, y: f64) -> Result<f64> {
    m.pdf(y)
}

pub fn mixture_cdf(m: &MixtureApprox, y: f64) -> Result<f64> {
    m.cdf(y)
}
