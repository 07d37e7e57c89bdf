//! Exact law of the Choquet integral of independent standard-uniform inputs.
//!
//! Every permutation `σ` contributes the chain `0 = ν_0^σ, ν_1^σ, ..., ν_n^σ`.
//! With `Δ` the divided difference on those knots,
//!
//! ```text
//! F(y) = (1/n!)     Σ_σ Δ[(· - y)^n_-]
//! f(y) = (1/(n-1)!) Σ_σ Δ[(· - y)^(n-1)_+] = (1/n!) Σ_σ M(y | chain)
//! ```
//!
//! Chains with identical knots are merged and carry a multiplicity, so a
//! symmetric game reduces to a single B-spline.

use rayon::prelude::*;

use crate::capacity::{binomial, enumerate_chains, factorial, Limits, SetFunction, Subset};
use crate::divided::{dd_generic, minus_recurrence, plus_recurrence};
use crate::error::{ChoquetError, Result};

/// Largest number of nested-subset chains the raw-moment enumeration visits.
pub const MAX_LEVEL_MAPS: f64 = 1e8;

#[derive(Debug, Clone)]
pub struct UniformChoquetDist {
    game: SetFunction,
    limits: Limits,
    /// Distinct chain knot rows, `n + 1` values each.
    knots: Vec<f64>,
    /// How many permutations share each row.
    counts: Vec<usize>,
    permutations: f64,
}

impl UniformChoquetDist {
    pub fn new(game: SetFunction, limits: &Limits) -> Result<Self> {
        let n = game.n();
        let width = n + 1;
        let mut rows: Vec<f64> = Vec::new();
        for chain in enumerate_chains(&game, limits)? {
            rows.extend_from_slice(&chain.nu_chain);
        }
        let total = rows.len() / width;
        let mut order: Vec<usize> = (0..total).collect();
        let row = |i: usize| &rows[i * width..(i + 1) * width];
        order.sort_by(|&a, &b| {
            row(a)
                .iter()
                .zip(row(b))
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let mut knots = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        for &i in &order {
            let r = row(i);
            let same = counts.last().is_some() && &knots[knots.len() - width..] == r;
            if same {
                *counts.last_mut().expect("nonempty") += 1;
            } else {
                knots.extend_from_slice(r);
                counts.push(1);
            }
        }
        Ok(Self {
            permutations: factorial(n),
            game,
            limits: *limits,
            knots,
            counts,
        })
    }

    pub fn game(&self) -> &SetFunction {
        &self.game
    }

    /// Distinct chain knot rows with their multiplicities.
    pub fn chains(&self) -> impl Iterator<Item = (&[f64], usize)> {
        self.knots
            .chunks_exact(self.game.n() + 1)
            .zip(self.counts.iter().copied())
    }

    /// `[min, max]` over all chain knots; the density vanishes outside.
    pub fn support(&self) -> (f64, f64) {
        self.knots
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &k| {
                (lo.min(k), hi.max(k))
            })
    }

    /// Distribution function before clamping to [0, 1].
    pub fn cdf_unclamped(&self, y: f64) -> f64 {
        let mut table = Vec::new();
        let sum: f64 = self
            .chains()
            .map(|(k, c)| c as f64 * minus_recurrence(k, y, &mut table))
            .sum();
        sum / self.permutations
    }

    pub fn cdf(&self, y: f64) -> f64 {
        self.cdf_unclamped(y).clamp(0.0, 1.0)
    }

    pub fn pdf(&self, y: f64) -> f64 {
        let n = self.game.n();
        let mut table = Vec::new();
        let sum: f64 = self
            .chains()
            .map(|(k, c)| c as f64 * plus_recurrence(k, y, &mut table))
            .sum();
        sum / factorial(n - 1)
    }

    /// `cdf` at every grid point, evaluated in parallel.
    pub fn cdf_grid(&self, ys: &[f64]) -> Vec<f64> {
        ys.par_iter().map(|&y| self.cdf(y)).collect()
    }

    pub fn pdf_grid(&self, ys: &[f64]) -> Vec<f64> {
        ys.par_iter().map(|&y| self.pdf(y)).collect()
    }

    /// Every distinct chain knot; for `n = 1` the density jumps there.
    pub fn knot_locations(&self) -> Vec<f64> {
        let mut k = self.knots.clone();
        k.sort_by(f64::total_cmp);
        k.dedup();
        k
    }

    /// `E[Y^r]` by summing over all nested chains `T_1 ⊆ ... ⊆ T_r ⊆ N`:
    ///
    /// ```text
    /// E[Y^r] = 1/C(n+r, r) Σ Π_i ν(T_i) / C(|T_{i+1}|, |T_i|),   T_{r+1} = N.
    /// ```
    ///
    /// A chain is a level map `l: N → {0..r}` with `T_i = {j : l(j) < i}`.
    pub fn raw_moment(&self, r: usize) -> Result<f64> {
        raw_moment(&self.game, r, &self.limits)
    }

    /// `E[Y]` in closed form, `(1/(n+1)) Σ_T ν(T) / C(n,|T|)`.
    pub fn mean(&self) -> f64 {
        mean_closed_form(&self.game)
    }

    /// `E[Y²]` in closed form,
    /// `2/((n+1)(n+2)) Σ_{T1 ⊆ T2} ν(T1) ν(T2) / (C(|T2|,|T1|) C(n,|T2|))`.
    pub fn second_moment(&self) -> f64 {
        second_moment_closed_form(&self.game)
    }

    /// `Σ_σ Δ[g : ν_0^σ, ..., ν_n^σ]`, which equals `E[g^(n)(Y)]`. The caller
    /// passes `g` itself. Every chain must have pairwise distinct knots.
    pub fn expect_gn<F: Fn(f64) -> f64>(&self, g: F) -> Result<f64> {
        let mut acc = 0.0;
        for (k, c) in self.chains() {
            acc += c as f64 * dd_generic(&g, k)?;
        }
        Ok(acc)
    }
}

pub fn raw_moment(g: &SetFunction, r: usize, limits: &Limits) -> Result<f64> {
    let n = g.n();
    if r == 0 {
        return Err(ChoquetError::MomentOrder {
            r,
            reason: "order must be at least 1".into(),
        });
    }
    if r > limits.r_max {
        return Err(ChoquetError::MomentOrder {
            r,
            reason: format!("exceeds r_max = {}", limits.r_max),
        });
    }
    let maps = ((r + 1) as f64).powi(n as i32);
    if maps > MAX_LEVEL_MAPS {
        return Err(ChoquetError::MomentOrder {
            r,
            reason: format!("(r+1)^n = {maps:.3e} nested chains exceeds {MAX_LEVEL_MAPS:.0e}"),
        });
    }
    let maps = maps as usize;
    let sizes: Vec<Vec<f64>> = (0..=n)
        .map(|t| (0..=t).map(|s| binomial(t, s)).collect())
        .collect();
    let full = g.full();
    let mut levels = vec![0usize; n];
    let mut masks = vec![0 as Subset; r + 1];
    let mut acc = 0.0;
    for _ in 0..maps {
        // T_i for i = 1..r; attribute j is in T_i iff levels[j] < i
        masks.iter_mut().for_each(|m| *m = 0);
        for (j, &l) in levels.iter().enumerate() {
            if l < r {
                masks[l + 1] |= 1 << j;
            }
        }
        for i in 2..=r {
            masks[i] |= masks[i - 1];
        }
        let mut term = 1.0;
        for i in 1..=r {
            let t = masks[i];
            let upper = if i == r { full } else { masks[i + 1] };
            let v = g.value(t);
            if v == 0.0 {
                term = 0.0;
                break;
            }
            term *= v / sizes[upper.count_ones() as usize][t.count_ones() as usize];
        }
        acc += term;
        // next level map, mixed radix r + 1
        for l in levels.iter_mut() {
            *l += 1;
            if *l <= r {
                break;
            }
            *l = 0;
        }
    }
    Ok(acc / binomial(n + r, r))
}

pub fn mean_closed_form(g: &SetFunction) -> f64 {
    let n = g.n();
    let levels = g.level_sums();
    (1..=n).map(|t| levels[t] / binomial(n, t)).sum::<f64>() / (n + 1) as f64
}

pub fn second_moment_closed_form(g: &SetFunction) -> f64 {
    let n = g.n();
    let mut acc = 0.0;
    for t2 in 1..=g.full() {
        let v2 = g.value(t2);
        if v2 == 0.0 {
            continue;
        }
        let t = t2.count_ones() as usize;
        let mut inner = 0.0;
        // all nonempty submasks of t2, including t2 itself
        let mut t1 = t2;
        while t1 != 0 {
            inner += g.value(t1) / binomial(t, t1.count_ones() as usize);
            t1 = (t1 - 1) & t2;
        }
        acc += v2 * inner / binomial(n, t);
    }
    2.0 * acc / ((n + 1) * (n + 2)) as f64
}
