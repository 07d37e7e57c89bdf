//! Distribution and moments of the discrete Choquet integral
//! `Y = C_ν(X_1, ..., X_n)` of i.i.d. continuous random variables.
//!
//! * [`capacity`]: games, capacities, chains and the integral itself.
//! * [`divided`]: divided differences of truncated powers and B-splines.
//! * [`order_stats`]: order-statistic moment providers.
//! * [`moments`]: first two moments for any input law.
//! * [`uniform`] and [`exponential`]: exact distributions.
//! * [`asymptotic`]: mixture-of-normals approximation for large `n`.
//! * [`montecarlo`]: seeded simulation and KS comparison.

pub mod asymptotic;
pub mod capacity;
pub mod divided;
pub mod error;
pub mod exponential;
pub mod moments;
pub mod montecarlo;
pub mod normal;
pub mod order_stats;
pub mod quadrature;
pub mod rng;
pub mod uniform;

pub use capacity::{
    check_capacity, choquet, enumerate_chains, orness, CapacityCheck, Chain, Limits, SetFunction,
    Subset,
};
pub use error::{ChoquetError, Result};
pub use moments::{mean, moments_report, second_raw_moment, DistributionReport};
pub use order_stats::{Law, OSMomentProvider, QuantileModel, SeriesOrder};
pub use uniform::UniformChoquetDist;
