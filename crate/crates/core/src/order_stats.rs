//! First and product moments of order statistics `X_{1:n} <= ... <= X_{n:n}`.
//!
//! Exact providers exist for the standard uniform and standard exponential
//! laws. Any law with a smooth quantile function `G = F^{-1}` can use the
//! David–Johnson series, which expands `G(U_{i:n})` around `r_i = i / (n + 1)`
//! and takes expectations with the exact uniform moments. The series is
//! available to order `(n + 2)^-2` and `(n + 2)^-3`.

use std::fmt;
use std::str::FromStr;

use crate::error::{ChoquetError, Result};
use crate::normal;

/// `G = F^{-1}` together with its first six derivatives.
pub trait QuantileModel: Send + Sync {
    fn quantile(&self, u: f64) -> f64;

    /// `[G, G', G'', ..., G^(6)]` at `u`.
    fn derivatives(&self, u: f64) -> Result<[f64; 7]>;
}

fn check_open_unit(u: f64) -> Result<()> {
    if u > 0.0 && u < 1.0 {
        Ok(())
    } else {
        Err(ChoquetError::QuantileDomain(u))
    }
}

fn check_finite(u: f64, d: [f64; 7]) -> Result<[f64; 7]> {
    match d.iter().position(|v| !v.is_finite()) {
        Some(order) => Err(ChoquetError::DerivativeFailure { u, order }),
        None => Ok(d),
    }
}

/// Standard normal quantile with closed-form derivatives in terms of
/// `G` and `f ∘ G`.
#[derive(Debug, Clone, Copy, Default)]
pub struct NormalQuantile;

pub fn normal_quantile_model() -> NormalQuantile {
    NormalQuantile
}

impl QuantileModel for NormalQuantile {
    fn quantile(&self, u: f64) -> f64 {
        normal::quantile(u)
    }

    fn derivatives(&self, u: f64) -> Result<[f64; 7]> {
        check_open_unit(u)?;
        let g = normal::quantile(u);
        let g2 = g * g;
        let inv_f = 1.0 / normal::pdf(g);
        let p = |k: i32| inv_f.powi(k);
        check_finite(
            u,
            [
                g,
                inv_f,
                g * p(2),
                (1.0 + 2.0 * g2) * p(3),
                g * (7.0 + 6.0 * g2) * p(4),
                (7.0 + g2 * (46.0 + 24.0 * g2)) * p(5),
                g * (127.0 + 326.0 * g2 + 120.0 * g2 * g2) * p(6),
            ],
        )
    }
}

/// `G(u) = u`.
#[derive(Debug, Clone, Copy, Default)]
pub struct UniformQuantile;

impl QuantileModel for UniformQuantile {
    fn quantile(&self, u: f64) -> f64 {
        u
    }

    fn derivatives(&self, u: f64) -> Result<[f64; 7]> {
        check_open_unit(u)?;
        Ok([u, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    }
}

/// `G(u) = -ln(1 - u)`, so `G^(k)(u) = (k - 1)! / (1 - u)^k`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExponentialQuantile;

impl QuantileModel for ExponentialQuantile {
    fn quantile(&self, u: f64) -> f64 {
        -(-u).ln_1p()
    }

    fn derivatives(&self, u: f64) -> Result<[f64; 7]> {
        check_open_unit(u)?;
        let inv = 1.0 / (1.0 - u);
        let mut d = [self.quantile(u), 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let mut fact = 1.0;
        for k in 1..7 {
            d[k] = fact * inv.powi(k as i32);
            fact *= k as f64;
        }
        check_finite(u, d)
    }
}

/// Source of `E[X_{i:n}]` and `E[X_{i:n} X_{j:n}]` (1-based ranks).
pub trait OSMomentProvider: Send + Sync {
    fn n(&self) -> usize;

    fn mean(&self, i: usize) -> Result<f64>;

    /// Product moment; argument order does not matter.
    fn product(&self, i: usize, j: usize) -> Result<f64>;
}

fn check_ranks(i: usize, j: usize, n: usize) -> Result<(usize, usize)> {
    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
    if lo == 0 || hi > n {
        return Err(ChoquetError::IndexOutOfRange { i, j, n });
    }
    Ok((lo, hi))
}

/// `E[U_{i:n}] = i / (n + 1)`.
pub fn uniform_mean(i: usize, n: usize) -> Result<f64> {
    check_ranks(i, i, n)?;
    Ok(i as f64 / (n + 1) as f64)
}

/// `E[U_{i:n} U_{j:n}] = i (j + 1) / ((n + 1)(n + 2))` for `i <= j`.
pub fn uniform_product(i: usize, j: usize, n: usize) -> Result<f64> {
    let (i, j) = check_ranks(i, j, n)?;
    Ok((i * (j + 1)) as f64 / ((n + 1) * (n + 2)) as f64)
}

/// `E[U_{i:n}^a U_{j:n}^b]` for `i < j` (or `i = j`, where it reduces to
/// `E[U_{i:n}^{a+b}]`), from the factorial formula
/// `n!/(n+a+b)! · (i+a-1)!/(i-1)! · (j+a+b-1)!/(j+a-1)!`.
pub fn uniform_raw_product(i: usize, a: u32, j: usize, b: u32, n: usize) -> Result<f64> {
    if i > j {
        return uniform_raw_product(j, b, i, a, n);
    }
    check_ranks(i, j, n)?;
    let (a, b) = (a as usize, b as usize);
    let mut v = 1.0;
    for k in 1..=a + b {
        v /= (n + k) as f64;
    }
    for k in 0..a {
        v *= (i + k) as f64;
    }
    for k in 0..b {
        v *= (j + a + k) as f64;
    }
    Ok(v)
}

/// `E[X_{i:n}] = Σ_{k=n-i+1}^{n} 1/k` for standard exponential samples.
pub fn exp_mean(i: usize, n: usize) -> Result<f64> {
    check_ranks(i, i, n)?;
    Ok((n - i + 1..=n).map(|k| 1.0 / k as f64).sum())
}

/// `E[X_{i:n} X_{j:n}] = Σ_{k=n-i+1}^{n} 1/k² + E[X_{i:n}] E[X_{j:n}]`, `i <= j`.
pub fn exp_product(i: usize, j: usize, n: usize) -> Result<f64> {
    let (i, j) = check_ranks(i, j, n)?;
    let cov: f64 = (n - i + 1..=n).map(|k| 1.0 / (k * k) as f64).sum();
    Ok(cov + exp_mean(i, n)? * exp_mean(j, n)?)
}

#[derive(Debug, Clone, Copy)]
pub struct UniformMoments {
    n: usize,
}

impl UniformMoments {
    pub fn new(n: usize) -> Self {
        Self { n }
    }
}

impl OSMomentProvider for UniformMoments {
    fn n(&self) -> usize {
        self.n
    }

    fn mean(&self, i: usize) -> Result<f64> {
        uniform_mean(i, self.n)
    }

    fn product(&self, i: usize, j: usize) -> Result<f64> {
        uniform_product(i, j, self.n)
    }
}

#[derive(Debug, Clone)]
pub struct ExponentialMoments {
    n: usize,
    means: Vec<f64>,
    variances: Vec<f64>,
}

impl ExponentialMoments {
    pub fn new(n: usize) -> Self {
        let mut means = vec![0.0; n + 1];
        let mut variances = vec![0.0; n + 1];
        for i in 1..=n {
            let k = (n - i + 1) as f64;
            means[i] = means[i - 1] + 1.0 / k;
            variances[i] = variances[i - 1] + 1.0 / (k * k);
        }
        Self {
            n,
            means,
            variances,
        }
    }
}

impl OSMomentProvider for ExponentialMoments {
    fn n(&self) -> usize {
        self.n
    }

    fn mean(&self, i: usize) -> Result<f64> {
        check_ranks(i, i, self.n)?;
        Ok(self.means[i])
    }

    fn product(&self, i: usize, j: usize) -> Result<f64> {
        let (i, j) = check_ranks(i, j, self.n)?;
        Ok(self.variances[i] + self.means[i] * self.means[j])
    }
}

/// Truncation order of the David–Johnson series, in powers of `1 / (n + 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeriesOrder {
    #[default]
    Second,
    Third,
}

impl SeriesOrder {
    pub fn from_order(order: usize) -> Result<Self> {
        match order {
            2 => Ok(Self::Second),
            3 => Ok(Self::Third),
            other => Err(ChoquetError::SeriesOrder(other)),
        }
    }

    pub fn as_usize(self) -> usize {
        match self {
            Self::Second => 2,
            Self::Third => 3,
        }
    }
}

/// Rank data cached by the David–Johnson provider.
#[derive(Debug, Clone, Copy)]
struct Rank {
    r: f64,
    s: f64,
    g: [f64; 7],
}

/// David–Johnson approximation of order-statistic moments.
#[derive(Debug, Clone)]
pub struct DavidJohnson {
    n: usize,
    order: SeriesOrder,
    ranks: Vec<Rank>,
}

impl DavidJohnson {
    pub fn new<Q: QuantileModel + ?Sized>(model: &Q, n: usize, order: SeriesOrder) -> Result<Self> {
        let ranks = (1..=n)
            .map(|i| {
                let r = i as f64 / (n + 1) as f64;
                Ok(Rank {
                    r,
                    s: 1.0 - r,
                    g: model.derivatives(r)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, order, ranks })
    }

    pub fn order(&self) -> SeriesOrder {
        self.order
    }

    fn rank(&self, i: usize) -> &Rank {
        &self.ranks[i - 1]
    }
}

/// `E[X_{i:n}]` by the David–Johnson series.
pub fn dj_mean<Q: QuantileModel + ?Sized>(
    model: &Q,
    i: usize,
    n: usize,
    order: SeriesOrder,
) -> Result<f64> {
    check_ranks(i, i, n)?;
    let r = i as f64 / (n + 1) as f64;
    let rank = Rank {
        r,
        s: 1.0 - r,
        g: model.derivatives(r)?,
    };
    Ok(series_mean(&rank, n, order))
}

/// `E[X_{i:n} X_{j:n}]` by the David–Johnson series.
pub fn dj_product<Q: QuantileModel + ?Sized>(
    model: &Q,
    i: usize,
    j: usize,
    n: usize,
    order: SeriesOrder,
) -> Result<f64> {
    let (i, j) = check_ranks(i, j, n)?;
    let rank = |k: usize| -> Result<Rank> {
        let r = k as f64 / (n + 1) as f64;
        Ok(Rank {
            r,
            s: 1.0 - r,
            g: model.derivatives(r)?,
        })
    };
    Ok(series_product(&rank(i)?, &rank(j)?, n, order))
}

fn series_mean(k: &Rank, n: usize, order: SeriesOrder) -> f64 {
    let inv = 1.0 / (n + 2) as f64;
    let Rank { r, s, g } = *k;
    let rs = r * s;
    let d = s - r;
    let mut v = g[0]
        + rs * inv / 2.0 * g[2]
        + rs * inv * inv * (d / 3.0 * g[3] + rs / 8.0 * g[4]);
    if order == SeriesOrder::Third {
        v += rs
            * inv.powi(3)
            * (-d / 3.0 * g[3]
                + (1.0 - 5.0 * rs) / 4.0 * g[4]
                + rs * d / 6.0 * g[5]
                + rs * rs / 48.0 * g[6]);
    }
    v
}

/// Product series for ranks `a <= b`.
fn series_product(a: &Rank, b: &Rank, n: usize, order: SeriesOrder) -> f64 {
    let inv = 1.0 / (n + 2) as f64;
    let (ri, si, gi) = (a.r, a.s, &a.g);
    let (rj, sj, gj) = (b.r, b.s, &b.g);
    let (di, dj) = (si - ri, sj - rj);
    let (pi, pj) = (ri * si, rj * sj);
    let cross = ri * sj;

    let first = cross * gi[1] * gj[1] + pi / 2.0 * gj[0] * gi[2] + pj / 2.0 * gi[0] * gj[2];
    let second = cross
        * (di * gi[2] * gj[1]
            + dj * gi[1] * gj[2]
            + pi / 2.0 * gi[3] * gj[1]
            + pj / 2.0 * gi[1] * gj[3]
            + cross / 2.0 * gi[2] * gj[2])
        + pi * pj / 4.0 * gi[2] * gj[2]
        + pi * gj[0] * (pi / 8.0 * gi[4] + di / 3.0 * gi[3])
        + pj * gi[0] * (pj / 8.0 * gj[4] + dj / 3.0 * gj[3]);
    let mut v = gi[0] * gj[0] + first * inv + second * inv * inv;

    if order == SeriesOrder::Third {
        // one rank carries all the derivatives, the other only G
        let lone = |p: f64, d: f64, g: &[f64; 7]| {
            -p * d / 3.0 * g[3]
                + p * (1.0 - 5.0 * p) / 4.0 * g[4]
                + p * p * d / 6.0 * g[5]
                + p * p * p / 48.0 * g[6]
        };
        let mixed = -cross * dj * gi[1] * gj[2] - cross * di * gi[2] * gj[1]
            + cross * (1.0 - 5.0 * pj) * gi[1] * gj[3]
            + cross * (1.0 - 5.0 * pi) * gi[3] * gj[1]
            + 5.0 / 6.0 * ri * rj * sj * sj * dj * gi[1] * gj[4]
            + 5.0 / 6.0 * ri * ri * si * sj * di * gi[4] * gj[1]
            + ri * rj * rj * sj.powi(3) / 8.0 * gi[1] * gj[5]
            + ri.powi(3) * si * si * sj / 8.0 * gi[5] * gj[1]
            + cross / 2.0 * (15.0 * ri * rj - 10.0 * ri - 5.0 * rj + 3.0) * gi[2] * gj[2]
            + cross / 6.0
                * (20.0 * ri * rj * rj - 25.0 * ri * rj + 6.0 * ri - 5.0 * rj * rj + 4.0 * rj)
                * gi[2]
                * gj[3]
            + cross / 6.0
                * (20.0 * ri * ri * rj - 15.0 * ri * ri - 15.0 * ri * rj + 9.0 * ri + rj)
                * gi[3]
                * gj[2]
            - ri * rj * sj * sj / 16.0 * (5.0 * ri * rj - 4.0 * ri - rj) * gi[2] * gj[4]
            - ri * ri * si * sj / 16.0 * (5.0 * ri * rj - 4.0 * ri - rj) * gi[4] * gj[2]
            - ri * ri * sj * sj / 12.0 * (5.0 * ri * rj - 2.0 * ri - 3.0 * rj) * gi[3] * gj[3];
        let third = gi[0] * lone(pj, dj, gj) + gj[0] * lone(pi, di, gi) + mixed;
        v += third * inv.powi(3);
    }
    v
}

impl OSMomentProvider for DavidJohnson {
    fn n(&self) -> usize {
        self.n
    }

    fn mean(&self, i: usize) -> Result<f64> {
        check_ranks(i, i, self.n)?;
        Ok(series_mean(self.rank(i), self.n, self.order))
    }

    fn product(&self, i: usize, j: usize) -> Result<f64> {
        let (i, j) = check_ranks(i, j, self.n)?;
        Ok(series_product(self.rank(i), self.rank(j), self.n, self.order))
    }
}

/// Input law of the i.i.d. sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Uniform,
    Exponential,
    Normal,
}

impl Law {
    /// Moment provider for samples of size `n`. The normal law uses the
    /// David–Johnson series at the given order; the others are exact.
    pub fn provider(self, n: usize, order: SeriesOrder) -> Result<Box<dyn OSMomentProvider>> {
        Ok(match self {
            Law::Uniform => Box::new(UniformMoments::new(n)),
            Law::Exponential => Box::new(ExponentialMoments::new(n)),
            Law::Normal => Box::new(DavidJohnson::new(&NormalQuantile, n, order)?),
        })
    }

    pub fn quantile_model(self) -> Box<dyn QuantileModel> {
        match self {
            Law::Uniform => Box::new(UniformQuantile),
            Law::Exponential => Box::new(ExponentialQuantile),
            Law::Normal => Box::new(NormalQuantile),
        }
    }

    /// Maps a uniform variate in (0, 1) to a draw from the law.
    #[inline]
    pub fn from_uniform(self, u: f64) -> f64 {
        match self {
            Law::Uniform => u,
            Law::Exponential => -u.ln(),
            Law::Normal => normal::quantile(u),
        }
    }

    pub fn mean(self) -> f64 {
        match self {
            Law::Uniform => 0.5,
            Law::Exponential => 1.0,
            Law::Normal => 0.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Law::Uniform => "uniform",
            Law::Exponential => "exponential",
            Law::Normal => "normal",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Law {
    type Err = ChoquetError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Law::Uniform),
            "exponential" => Ok(Law::Exponential),
            "normal" => Ok(Law::Normal),
            other => Err(ChoquetError::InvalidParameter(format!(
                "unknown law {other:?}; expected uniform, exponential or normal"
            ))),
        }
    }
}
