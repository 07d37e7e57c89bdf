//! Games and capacities on a finite attribute set.
//!
//! A game on `N = {1, ..., n}` is stored as a table of `2^n` values indexed by
//! subset bitmask: attribute `i` corresponds to bit `i - 1`, so the mask of
//! `{1, 3}` is `0b101`. The table entry at mask 0 (the empty set) is always 0.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{ChoquetError, Result};
use crate::rng::open_unit;

/// Largest `n` a value table may have.
pub const MAX_ATTRIBUTES: usize = 24;
/// Default cap on `n` for anything that enumerates all `n!` permutations.
pub const DEFAULT_N_MAX: usize = 10;
/// Default cap on the raw-moment order of the nested-subset enumeration.
pub const DEFAULT_R_MAX: usize = 6;
/// Tolerance on `ν(N) = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Slack allowed on `ν(S) <= ν(S ∪ {i})`.
pub const MONOTONICITY_TOL: f64 = 1e-12;

/// Subset of `N` as a bitmask.
pub type Subset = u32;

/// Resource caps for enumeration-based operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum `n` for permutation enumeration.
    pub n_max: usize,
    /// Maximum raw-moment order for the nested-subset sum.
    pub r_max: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            n_max: DEFAULT_N_MAX,
            r_max: DEFAULT_R_MAX,
        }
    }
}

impl Limits {
    pub fn with_n_max(n_max: usize) -> Self {
        Self {
            n_max,
            ..Self::default()
        }
    }

    pub fn check_n(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            return Err(ChoquetError::TooManyAttributes {
                n,
                n_max: self.n_max,
            });
        }
        Ok(())
    }
}

/// A game `ν : 2^N → R` with `ν(∅) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SetFunction {
    n: usize,
    values: Vec<f64>,
}

impl SetFunction {
    /// Builds a game from a full bitmask-indexed table.
    pub fn from_values(n: usize, values: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_ATTRIBUTES {
            return Err(ChoquetError::AttributeCount {
                n,
                max: MAX_ATTRIBUTES,
            });
        }
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(ChoquetError::TableLength {
                n,
                got: values.len(),
                expected,
            });
        }
        if values[0] != 0.0 {
            return Err(ChoquetError::NonzeroEmptySet(values[0]));
        }
        if let Some((mask, &v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(ChoquetError::NonFiniteValue {
                subset: subset_label(mask as Subset),
                value: v,
            });
        }
        Ok(Self { n, values })
    }

    /// Builds a game from a value per subset; each subset is a list of 1-based
    /// attribute indices. Every nonempty subset must be present; the empty set
    /// may be listed only with value 0.
    pub fn make_game<I, S>(n: usize, entries: I, limits: &Limits) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: AsRef<[usize]>,
    {
        let cap = limits.n_max.min(MAX_ATTRIBUTES);
        if n == 0 || n > cap {
            return Err(ChoquetError::AttributeCount { n, max: cap });
        }
        let mut values = vec![f64::NAN; 1 << n];
        values[0] = 0.0;
        let mut seen = vec![false; 1 << n];
        for (attrs, value) in entries {
            let mask = mask_from_attributes(n, attrs.as_ref())?;
            if mask == 0 {
                if value != 0.0 {
                    return Err(ChoquetError::NonzeroEmptySet(value));
                }
                continue;
            }
            if seen[mask as usize] {
                return Err(ChoquetError::DuplicateSubset(subset_label(mask)));
            }
            if !value.is_finite() {
                return Err(ChoquetError::NonFiniteValue {
                    subset: subset_label(mask),
                    value,
                });
            }
            seen[mask as usize] = true;
            values[mask as usize] = value;
        }
        if let Some(mask) = (1..values.len()).find(|&m| !seen[m]) {
            return Err(ChoquetError::MissingSubset(subset_label(mask as Subset)));
        }
        Self::from_values(n, values)
    }

    /// Parses the capacity JSON format:
    /// `{"n": 3, "values": {"1": 0.1, "1,2": 0.7, ...}}`.
    pub fn from_json(text: &str, limits: &Limits) -> Result<Self> {
        let doc: GameDocument =
            serde_json::from_str(text).map_err(|e| ChoquetError::Json(e.to_string()))?;
        let mut entries = Vec::with_capacity(doc.values.len());
        for (key, value) in &doc.values {
            entries.push((parse_subset_key(key)?, *value));
        }
        Self::make_game(doc.n, entries, limits)
    }

    pub fn to_json(&self) -> String {
        let values = (1..self.values.len())
            .map(|m| (subset_key(m as Subset), self.values[m]))
            .collect();
        serde_json::to_string_pretty(&GameDocument {
            n: self.n,
            values,
        })
        .expect("game document serializes")
    }

    /// Symmetric game whose value depends only on subset size:
    /// `ν(T) = by_size[|T|]`, with `by_size[0]` ignored.
    pub fn symmetric(n: usize, by_size: &[f64]) -> Result<Self> {
        if by_size.len() != n + 1 {
            return Err(ChoquetError::InvalidParameter(format!(
                "symmetric game needs {} size values, got {}",
                n + 1,
                by_size.len()
            )));
        }
        if n == 0 || n > MAX_ATTRIBUTES {
            return Err(ChoquetError::AttributeCount {
                n,
                max: MAX_ATTRIBUTES,
            });
        }
        let values = (0..1usize << n)
            .map(|m| {
                if m == 0 {
                    0.0
                } else {
                    by_size[m.count_ones() as usize]
                }
            })
            .collect();
        Self::from_values(n, values)
    }

    /// Additive game `ν(T) = Σ_{i∈T} w_i`.
    pub fn additive(weights: &[f64]) -> Result<Self> {
        let n = weights.len();
        if n == 0 || n > MAX_ATTRIBUTES {
            return Err(ChoquetError::AttributeCount {
                n,
                max: MAX_ATTRIBUTES,
            });
        }
        let values = (0..1usize << n)
            .map(|m| {
                (0..n)
                    .filter(|&i| m & (1 << i) != 0)
                    .map(|i| weights[i])
                    .sum()
            })
            .collect();
        Self::from_values(n, values)
    }

    /// `ν(T) = 1` for every nonempty `T`; its Choquet integral is the maximum.
    pub fn max_capacity(n: usize) -> Result<Self> {
        let mut sizes = vec![1.0; n + 1];
        sizes[0] = 0.0;
        Self::symmetric(n, &sizes)
    }

    /// `ν(T) = 0` except `ν(N) = 1`; its Choquet integral is the minimum.
    pub fn min_capacity(n: usize) -> Result<Self> {
        let mut sizes = vec![0.0; n + 1];
        sizes[n] = 1.0;
        Self::symmetric(n, &sizes)
    }

    /// Random capacity: each proper subset draws a uniform value, the table is
    /// closed upward under inclusion, and `ν(N) = 1`.
    pub fn random_capacity<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if n == 0 || n > MAX_ATTRIBUTES {
            return Err(ChoquetError::AttributeCount {
                n,
                max: MAX_ATTRIBUTES,
            });
        }
        let full = (1usize << n) - 1;
        let mut values = vec![0.0; full + 1];
        // masks in increasing order visit every subset before its supersets
        for mask in 1..full {
            let mut v = open_unit(rng);
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    v = v.max(values[mask & !(1 << i)]);
                }
            }
            values[mask] = v;
        }
        values[full] = 1.0;
        Self::from_values(n, values)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn full(&self) -> Subset {
        ((1u64 << self.n) - 1) as Subset
    }

    #[inline]
    pub fn value(&self, mask: Subset) -> f64 {
        self.values[mask as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `ν(N)`.
    pub fn total(&self) -> f64 {
        self.values[self.full() as usize]
    }

    /// True when `ν(T)` depends only on `|T|` (within `tol`).
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let mut by_size = vec![None; self.n + 1];
        self.values.iter().enumerate().all(|(m, &v)| {
            let slot = &mut by_size[m.count_ones() as usize];
            match *slot {
                None => {
                    *slot = Some(v);
                    true
                }
                Some(first) => (v - first).abs() <= tol,
            }
        })
    }

    /// Sum of `ν(T)` over all `T` with `|T| = t`, for `t = 0..=n`.
    pub fn level_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n + 1];
        for (m, v) in self.values.iter().enumerate() {
            sums[m.count_ones() as usize] += v;
        }
        sums
    }
}

#[derive(Serialize, Deserialize)]
struct GameDocument {
    n: usize,
    values: BTreeMap<String, f64>,
}

const EMPTY_KEY: &str = "∅";

fn parse_subset_key(key: &str) -> Result<Vec<usize>> {
    let bad = |reason: &str| ChoquetError::BadSubsetKey {
        key: key.to_string(),
        reason: reason.to_string(),
    };
    if key == EMPTY_KEY {
        return Ok(Vec::new());
    }
    let mut attrs = Vec::new();
    for part in key.split(',') {
        let idx: usize = part
            .trim()
            .parse()
            .map_err(|_| bad("expected comma-separated attribute indices"))?;
        if let Some(&last) = attrs.last() {
            if idx <= last {
                return Err(bad("indices must be strictly ascending"));
            }
        }
        attrs.push(idx);
    }
    Ok(attrs)
}

/// Bitmask of a list of 1-based attributes.
pub fn mask_from_attributes(n: usize, attrs: &[usize]) -> Result<Subset> {
    let mut mask: Subset = 0;
    for &a in attrs {
        if a == 0 || a > n {
            return Err(ChoquetError::BadSubsetKey {
                key: format!("{attrs:?}"),
                reason: format!("attribute {a} outside 1..={n}"),
            });
        }
        let bit = 1 << (a - 1);
        if mask & bit != 0 {
            return Err(ChoquetError::BadSubsetKey {
                key: format!("{attrs:?}"),
                reason: format!("attribute {a} repeated"),
            });
        }
        mask |= bit;
    }
    Ok(mask)
}

/// 1-based attributes of a bitmask, ascending.
pub fn attributes_of(mask: Subset) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
}

/// JSON key of a subset: `"1,3"`, or `"∅"`.
pub fn subset_key(mask: Subset) -> String {
    if mask == 0 {
        return EMPTY_KEY.to_string();
    }
    let mut s = String::new();
    for (k, a) in attributes_of(mask).into_iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        write!(s, "{a}").unwrap();
    }
    s
}

fn subset_label(mask: Subset) -> String {
    subset_key(mask)
}

/// Result of [`check_capacity`].
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityCheck {
    pub is_monotone: bool,
    pub is_normalized: bool,
    /// First covering pair `(S, S ∪ {i})` found with `ν(S) > ν(S ∪ {i})`.
    pub violating_pair: Option<(Subset, Subset)>,
}

impl CapacityCheck {
    pub fn is_capacity(&self) -> bool {
        self.is_monotone && self.is_normalized
    }
}

/// Checks monotonicity over all covering pairs and normalization `ν(N) = 1`.
pub fn check_capacity(g: &SetFunction) -> CapacityCheck {
    let mut violating_pair = None;
    'outer: for s in 0..=g.full() {
        for i in 0..g.n() {
            let bit = 1 << i;
            if s & bit == 0 && g.value(s) - g.value(s | bit) > MONOTONICITY_TOL {
                violating_pair = Some((s, s | bit));
                break 'outer;
            }
        }
    }
    CapacityCheck {
        is_monotone: violating_pair.is_none(),
        is_normalized: (g.total() - 1.0).abs() <= NORMALIZATION_TOL,
        violating_pair,
    }
}

pub(crate) fn require_capacity(g: &SetFunction) -> Result<()> {
    let check = check_capacity(g);
    if let Some((s, t)) = check.violating_pair {
        return Err(ChoquetError::NotACapacity(format!(
            "ν({{{}}}) = {} > ν({{{}}}) = {}",
            subset_key(s),
            g.value(s),
            subset_key(t),
            g.value(t)
        )));
    }
    if !check.is_normalized {
        return Err(ChoquetError::NotACapacity(format!(
            "ν(N) = {} differs from 1",
            g.total()
        )));
    }
    Ok(())
}

/// Values of a game along the maximal chain of a permutation.
///
/// `sigma` holds 0-based attribute indices; `nu_chain[i]` is the value of the
/// first `i` attributes of `sigma`, and `weights[i] = nu_chain[i+1] - nu_chain[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    pub sigma: Vec<usize>,
    pub nu_chain: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Chain {
    /// `sigma` with 1-based attribute labels.
    pub fn sigma_one_based(&self) -> Vec<usize> {
        self.sigma.iter().map(|&i| i + 1).collect()
    }
}

fn validate_permutation(n: usize, sigma: &[usize]) -> Result<()> {
    if sigma.len() != n {
        return Err(ChoquetError::InvalidPermutation(format!(
            "length {} but n = {n}",
            sigma.len()
        )));
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(ChoquetError::InvalidPermutation(format!(
                "{sigma:?} is not a permutation of 0..{n}"
            )));
        }
        seen[s] = true;
    }
    Ok(())
}

/// Chain of `g` along `sigma` (0-based attribute indices).
pub fn chain_for(g: &SetFunction, sigma: &[usize]) -> Result<Chain> {
    validate_permutation(g.n(), sigma)?;
    Ok(build_chain(g, sigma.to_vec()))
}

fn build_chain(g: &SetFunction, sigma: Vec<usize>) -> Chain {
    let mut nu_chain = Vec::with_capacity(sigma.len() + 1);
    nu_chain.push(0.0);
    let mut mask: Subset = 0;
    for &s in &sigma {
        mask |= 1 << s;
        nu_chain.push(g.value(mask));
    }
    let weights = nu_chain.windows(2).map(|w| w[1] - w[0]).collect();
    Chain {
        sigma,
        nu_chain,
        weights,
    }
}

/// Discrete Choquet integral of `x` with respect to `g`.
///
/// Coordinates are sorted in decreasing order with a stable sort, so ties keep
/// their index order.
pub fn choquet(g: &SetFunction, x: &[f64]) -> Result<f64> {
    if x.len() != g.n() {
        return Err(ChoquetError::LengthMismatch {
            n: g.n(),
            got: x.len(),
        });
    }
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[b].total_cmp(&x[a]));
    Ok(choquet_along(g, x, &order))
}

/// `Σ_i (ν_i - ν_{i-1}) x_{σ(i)}` for a given ordering, with no sorting.
pub(crate) fn choquet_along(g: &SetFunction, x: &[f64], order: &[usize]) -> f64 {
    let mut mask: Subset = 0;
    let mut prev = 0.0;
    let mut acc = 0.0;
    for &i in order {
        mask |= 1 << i;
        let v = g.value(mask);
        acc += (v - prev) * x[i];
        prev = v;
    }
    acc
}

/// Degree of orness `Σ_{T ⊊ N} ν(T) / C(n, |T|) / (n - 1)`.
///
/// Equals `((n + 1) E[Y] - 1) / (n - 1)` where `E[Y]` is the mean of the
/// integral under independent standard-uniform inputs. 0 for the minimum,
/// 1 for the maximum.
pub fn orness(g: &SetFunction) -> Result<f64> {
    let n = g.n();
    if n < 2 {
        return Err(ChoquetError::TooFewAttributes { n, min: 2 });
    }
    require_capacity(g)?;
    let levels = g.level_sums();
    let sum: f64 = (1..n).map(|t| levels[t] / binomial(n, t)).sum();
    Ok(sum / (n - 1) as f64)
}

/// All `n!` chains of `g`, permutations in lexicographic order.
pub fn enumerate_chains<'a>(g: &'a SetFunction, limits: &Limits) -> Result<ChainIter<'a>> {
    limits.check_n(g.n())?;
    Ok(ChainIter {
        game: g,
        perms: Permutations::new(g.n()),
    })
}

pub struct ChainIter<'a> {
    game: &'a SetFunction,
    perms: Permutations,
}

impl Iterator for ChainIter<'_> {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        let sigma = self.perms.next()?;
        Some(build_chain(self.game, sigma))
    }
}

/// Permutations of `0..n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Permutations {
    current: Option<Vec<usize>>,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Self {
            current: Some((0..n).collect()),
        }
    }
}

impl Iterator for Permutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            self.current = Some(next);
        }
        Some(out)
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Binomial coefficient as a float (exact for the sizes used here).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::example_capacity;
    use proptest::prelude::*;

    /// Ascending-order form `Σ (x_(i) - x_(i-1)) ν({j : x_j >= x_(i)})`.
    fn choquet_ascending(g: &SetFunction, x: &[f64]) -> f64 {
        let mut sorted: Vec<f64> = x.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mut prev = 0.0;
        let mut acc = 0.0;
        for &level in &sorted {
            let mut mask = 0;
            for (j, &xj) in x.iter().enumerate() {
                if xj >= level {
                    mask |= 1 << j;
                }
            }
            acc += (level - prev) * g.value(mask);
            prev = level;
        }
        acc
    }

    #[test]
    fn smallest_game() {
        let g = SetFunction::make_game(1, [(vec![1], 1.0)], &Limits::default()).unwrap();
        assert_eq!(g.values(), &[0.0, 1.0]);
    }

    #[test]
    fn example_table_layout() {
        let g = example_capacity();
        assert_eq!(g.values(), &[0.0, 0.1, 0.2, 0.7, 0.55, 0.8, 0.6, 1.0]);
    }

    #[test]
    fn missing_subset_rejected() {
        let err = SetFunction::make_game(
            2,
            [(vec![1], 0.3), (vec![2], 0.4)],
            &Limits::default(),
        )
        .unwrap_err();
        assert_eq!(err, ChoquetError::MissingSubset("1,2".into()));
    }

    #[test]
    fn empty_set_must_be_zero() {
        let err = SetFunction::make_game(
            1,
            [(vec![], 0.2), (vec![1], 1.0)],
            &Limits::default(),
        )
        .unwrap_err();
        assert!(matches!(err, ChoquetError::NonzeroEmptySet(_)));
        assert!(SetFunction::from_values(1, vec![0.5, 1.0]).is_err());
    }

    #[test]
    fn n_out_of_range() {
        let limits = Limits::with_n_max(4);
        let err = SetFunction::make_game(5, Vec::<(Vec<usize>, f64)>::new(), &limits).unwrap_err();
        assert!(matches!(err, ChoquetError::AttributeCount { n: 5, max: 4 }));
        assert!(SetFunction::from_values(0, vec![0.0]).is_err());
    }

    #[test]
    fn json_round_trip_and_key_rules() {
        let text = r#"{"n": 3, "values": {"1": 0.1, "2": 0.2, "3": 0.55, "1,2": 0.7,
            "1,3": 0.8, "2,3": 0.6, "1,2,3": 1.0, "∅": 0}}"#;
        let g = SetFunction::from_json(text, &Limits::default()).unwrap();
        assert_eq!(g, example_capacity());
        let again = SetFunction::from_json(&g.to_json(), &Limits::default()).unwrap();
        assert_eq!(again, g);

        let unordered = r#"{"n": 2, "values": {"1": 0.1, "2": 0.2, "2,1": 1.0}}"#;
        assert!(matches!(
            SetFunction::from_json(unordered, &Limits::default()),
            Err(ChoquetError::BadSubsetKey { .. })
        ));
        let out_of_range = r#"{"n": 2, "values": {"1": 0.1, "3": 0.2, "1,2": 1.0}}"#;
        assert!(SetFunction::from_json(out_of_range, &Limits::default()).is_err());
        assert!(matches!(
            SetFunction::from_json("{\"n\": 2}", &Limits::default()),
            Err(ChoquetError::Json(_))
        ));
    }

    #[test]
    fn capacity_checks() {
        let check = check_capacity(&example_capacity());
        assert!(check.is_monotone && check.is_normalized);
        assert_eq!(check.violating_pair, None);

        let bad = SetFunction::make_game(
            2,
            [(vec![1], 0.5), (vec![2], 0.2), (vec![1, 2], 0.3)],
            &Limits::default(),
        )
        .unwrap();
        let check = check_capacity(&bad);
        assert!(!check.is_monotone);
        assert!(!check.is_normalized);
        assert_eq!(check.violating_pair, Some((0b01, 0b11)));

        let additive = SetFunction::additive(&[0.25; 4]).unwrap();
        assert!(check_capacity(&additive).is_capacity());
    }

    #[test]
    fn example_chain() {
        let c = chain_for(&example_capacity(), &[2, 0, 1]).unwrap();
        assert_eq!(c.nu_chain, vec![0.0, 0.55, 0.8, 1.0]);
        let expected = [0.55, 0.25, 0.2];
        for (w, e) in c.weights.iter().zip(expected) {
            assert!((w - e).abs() < 1e-15);
        }
        assert_eq!(c.sigma_one_based(), vec![3, 1, 2]);
    }

    #[test]
    fn single_attribute_chain() {
        let g = SetFunction::from_values(1, vec![0.0, 0.7]).unwrap();
        assert_eq!(chain_for(&g, &[0]).unwrap().weights, vec![0.7]);
    }

    #[test]
    fn symmetric_capacity_weights_are_uniform() {
        let g = SetFunction::symmetric(4, &[0.0, 0.25, 0.5, 0.75, 1.0]).unwrap();
        for chain in enumerate_chains(&g, &Limits::default()).unwrap() {
            for w in chain.weights {
                assert!((w - 0.25).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn invalid_permutations() {
        let g = example_capacity();
        assert!(chain_for(&g, &[0, 0, 1]).is_err());
        assert!(chain_for(&g, &[0, 1]).is_err());
        assert!(chain_for(&g, &[0, 1, 3]).is_err());
    }

    #[test]
    fn choquet_special_cases() {
        let g = example_capacity();
        assert!((choquet(&g, &[0.3, 0.3, 0.3]).unwrap() - 0.3).abs() < 1e-15);
        let max = SetFunction::max_capacity(3).unwrap();
        assert_eq!(choquet(&max, &[0.2, 0.9, 0.4]).unwrap(), 0.9);
        let min = SetFunction::min_capacity(3).unwrap();
        assert_eq!(choquet(&min, &[0.2, 0.9, 0.4]).unwrap(), 0.2);
        let x = [0.2, 0.9, 0.4];
        // sorted descending: 2, 3, 1 -> ν{2}=0.2, ν{2,3}=0.6, ν(N)=1
        let direct = 0.2 * 0.9 + 0.4 * 0.4 + 0.4 * 0.2;
        assert!((choquet(&g, &x).unwrap() - direct).abs() < 1e-15);
        assert!((choquet_ascending(&g, &x) - direct).abs() < 1e-15);
        assert!(matches!(
            choquet(&g, &[1.0, 2.0]),
            Err(ChoquetError::LengthMismatch { n: 3, got: 2 })
        ));
    }

    #[test]
    fn orness_values() {
        let o = orness(&example_capacity()).unwrap();
        assert!((o - 0.4916666666666667).abs() < 1e-15);
        let mean = SetFunction::additive(&[1.0 / 3.0; 3]).unwrap();
        assert!((orness(&mean).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(orness(&SetFunction::max_capacity(4).unwrap()).unwrap(), 1.0);
        assert_eq!(orness(&SetFunction::min_capacity(4).unwrap()).unwrap(), 0.0);
        let single = SetFunction::from_values(1, vec![0.0, 1.0]).unwrap();
        assert!(matches!(
            orness(&single),
            Err(ChoquetError::TooFewAttributes { .. })
        ));
    }

    #[test]
    fn chain_enumeration() {
        let g = example_capacity();
        let chains: Vec<Chain> = enumerate_chains(&g, &Limits::default()).unwrap().collect();
        assert_eq!(chains.len(), 6);
        assert_eq!(chains[0].sigma, vec![0, 1, 2]);
        assert_eq!(chains[5].sigma, vec![2, 1, 0]);
        for c in &chains {
            assert_eq!(c.nu_chain[3], 1.0);
            assert!((c.weights.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        }
        let two = SetFunction::max_capacity(2).unwrap();
        assert_eq!(enumerate_chains(&two, &Limits::default()).unwrap().count(), 2);
        assert!(enumerate_chains(&g, &Limits::with_n_max(2)).is_err());
    }

    #[test]
    fn lexicographic_permutations() {
        let perms: Vec<Vec<usize>> = Permutations::new(3).collect();
        assert_eq!(
            perms,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
        assert_eq!(Permutations::new(1).count(), 1);
        assert_eq!(Permutations::new(5).count(), 120);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(10, 0), 1.0);
        assert_eq!(binomial(3, 4), 0.0);
        assert_eq!(binomial(20, 10), 184756.0);
        assert_eq!(factorial(5), 120.0);
    }

    fn game_strategy() -> impl Strategy<Value = SetFunction> {
        (1usize..=5, any::<u64>()).prop_map(|(n, seed)| {
            SetFunction::random_capacity(n, &mut crate::rng::stream(seed, 0)).unwrap()
        })
    }

    fn capacity_and_point() -> impl Strategy<Value = (SetFunction, Vec<f64>)> {
        game_strategy().prop_flat_map(|g| {
            let n = g.n();
            (Just(g), prop::collection::vec(-5.0f64..5.0, n))
        })
    }

    proptest! {
        #[test]
        fn weights_telescope((g, _) in capacity_and_point()) {
            for chain in enumerate_chains(&g, &Limits::default()).unwrap() {
                prop_assert_eq!(chain.nu_chain[0], 0.0);
                let sum: f64 = chain.weights.iter().sum();
                prop_assert!((sum - g.total()).abs() < 1e-12);
            }
        }

        #[test]
        fn matches_ascending_form((g, x) in capacity_and_point()) {
            let a = choquet(&g, &x).unwrap();
            let b = choquet_ascending(&g, &x);
            prop_assert!((a - b).abs() < 1e-12, "{} vs {}", a, b);
        }

        #[test]
        fn between_min_and_max((g, x) in capacity_and_point()) {
            let c = choquet(&g, &x).unwrap();
            let lo = x.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(c >= lo - 1e-12 && c <= hi + 1e-12);
        }

        #[test]
        fn nondecreasing_in_each_coordinate(
            (g, x) in capacity_and_point(),
            k in 0usize..5,
            bump in 0.0f64..2.0,
        ) {
            let k = k % g.n();
            let mut y = x.clone();
            y[k] += bump;
            prop_assert!(choquet(&g, &y).unwrap() >= choquet(&g, &x).unwrap() - 1e-12);
        }

        #[test]
        fn translation_covariance((g, x) in capacity_and_point(), c in -3.0f64..3.0) {
            let shifted: Vec<f64> = x.iter().map(|v| v + c).collect();
            let lhs = choquet(&g, &shifted).unwrap();
            let rhs = choquet(&g, &x).unwrap() + c * g.total();
            prop_assert!((lhs - rhs).abs() < 1e-10);
        }

        #[test]
        fn ties_do_not_matter(g in game_strategy(), levels in prop::collection::vec(0u8..3, 5)) {
            let n = g.n();
            let x: Vec<f64> = levels[..n].iter().map(|&l| l as f64 * 0.5).collect();
            let reference = choquet(&g, &x).unwrap();
            for perm in Permutations::new(n) {
                let admissible = perm.windows(2).all(|w| x[w[0]] >= x[w[1]]);
                if admissible {
                    let v = choquet_along(&g, &x, &perm);
                    prop_assert!((v - reference).abs() < 1e-12);
                }
            }
        }

        #[test]
        fn symmetric_capacity_is_owa(n in 2usize..6, seed in any::<u64>(), x in prop::collection::vec(0.0f64..1.0, 6)) {
            let mut rng = crate::rng::stream(seed, 0);
            let mut sizes: Vec<f64> = (0..=n).map(|_| open_unit(&mut rng)).collect();
            sizes[0] = 0.0;
            sizes.sort_by(f64::total_cmp);
            let g = SetFunction::symmetric(n, &sizes).unwrap();
            let x = &x[..n];
            let mut desc = x.to_vec();
            desc.sort_by(|a, b| b.total_cmp(a));
            let owa: f64 = (0..n).map(|i| (sizes[i + 1] - sizes[i]) * desc[i]).sum();
            prop_assert!((choquet(&g, x).unwrap() - owa).abs() < 1e-12);
        }
    }
}
