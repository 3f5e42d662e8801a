//! The modified empirical distribution function `F(x) = #{x_l <= x} / (n + 1)`.
//!
//! The `n + 1` denominator keeps every value strictly below 1, so `log F` and
//! `1 / (1 - F)` stay finite at the sample maximum.

use crate::error::{invalid, Result};

/// Modified empirical df of `sample` evaluated at `x`.
pub fn modified_empirical_cdf(sample: &[f64], x: f64) -> Result<f64> {
    if sample.is_empty() {
        return invalid("empirical df of an empty sample");
    }
    if sample.iter().any(|v| !v.is_finite()) {
        return invalid("empirical df sample contains a non-finite value");
    }
    let count = sample.iter().filter(|&&v| v <= x).count();
    Ok(count as f64 / (sample.len() + 1) as f64)
}

/// For each element, the number of sample values `<=` it.
///
/// Tied values all receive the largest rank of their tie group. The modified
/// empirical df at the sample points is `rank / (n + 1)`.
pub fn max_ranks(values: &[f64]) -> Vec<usize> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    values
        .iter()
        .map(|x| sorted.partition_point(|v| v <= x))
        .collect()
}

/// Modified empirical df evaluated at every sample point.
pub fn modified_ecdf_at_sample(values: &[f64]) -> Vec<f64> {
    let denom = (values.len() + 1) as f64;
    max_ranks(values).into_iter().map(|k| k as f64 / denom).collect()
}
