//! Extremal index estimation for stationary sequences.
//!
//! - [`estimator`]: the blocks estimator built on the tail dependence of an
//!   auxiliary bivariate sequence, averaged over random auxiliary draws.
//! - [`comparators`]: Ferro–Segers intervals and Northrop blocks estimators.
//! - [`sim`]: six stationary processes with known extremal index.
//! - [`bench`]: Monte Carlo rmse / abias study harness.

pub mod bench;
pub mod comparators;
pub mod ecdf;
mod error;
pub mod estimator;
pub mod seed;
mod series;
pub mod sim;

pub use error::{Error, Result};
pub use estimator::{estimate_theta, estimate_theta_single, EstimatorConfig, ThetaEstimate};
pub use seed::Execution;
pub use series::{FrechetSeries, PairSeries, TimeSeries};
pub use sim::{simulate, theoretical_theta, ModelSpec, Process};
