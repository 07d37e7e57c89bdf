use thiserror::Error;

pub type Result<T> = std::result::Result<T, ChoquetError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChoquetError {
    #[error("number of attributes {n} out of range 1..={max}")]
    AttributeCount { n: usize, max: usize },

    #[error("value table has length {got}, expected 2^{n} = {expected}")]
    TableLength { n: usize, got: usize, expected: usize },

    #[error("game must vanish on the empty set, got {0}")]
    NonzeroEmptySet(f64),

    #[error("no value assigned to subset {{{0}}}")]
    MissingSubset(String),

    #[error("malformed subset key {key:?}: {reason}")]
    BadSubsetKey { key: String, reason: String },

    #[error("subset {{{0}}} assigned more than once")]
    DuplicateSubset(String),

    #[error("value for subset {{{subset}}} is not finite: {value}")]
    NonFiniteValue { subset: String, value: f64 },

    #[error("capacity JSON: {0}")]
    Json(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("input length {got} does not match number of attributes {n}")]
    LengthMismatch { n: usize, got: usize },

    #[error("not a capacity: {0}")]
    NotACapacity(String),

    #[error("operation requires n >= {min}, got n = {n}")]
    TooFewAttributes { n: usize, min: usize },

    #[error("n = {n} exceeds the chain-enumeration limit n_max = {n_max}")]
    TooManyAttributes { n: usize, n_max: usize },

    #[error("moment order {r} not supported: {reason}")]
    MomentOrder { r: usize, reason: String },

    #[error("knots {0} and {1} coincide within tolerance; use the recurrence instead")]
    RepeatedKnots(f64, f64),

    #[error("need at least 2 knots, got {0}")]
    TooFewKnots(usize),

    #[error("non-finite knot {0}")]
    NonFiniteKnot(f64),

    #[error("exponential regularity violated for permutation {sigma:?}: {detail}")]
    Irregular { sigma: Vec<usize>, detail: String },

    #[error("order-statistic index out of range: i = {i}, j = {j}, n = {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },

    #[error("quantile argument {0} outside (0, 1)")]
    QuantileDomain(f64),

    #[error("quantile derivative at u = {u} is not finite (order {order})")]
    DerivativeFailure { u: f64, order: usize },

    #[error("unsupported series order {0}; expected 2 or 3")]
    SeriesOrder(usize),

    #[error("quadrature did not converge: estimate {estimate}, error {error}")]
    Quadrature { estimate: f64, error: f64 },

    #[error("mixture component {index} has variance {variance}; use the exact distribution instead")]
    DegenerateComponent { index: usize, variance: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
