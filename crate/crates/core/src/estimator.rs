//! The one-parameter blocks estimator of the extremal index.
//!
//! Let `X_1..X_n` be the observed series, transformed to standard Fréchet
//! margins through its modified empirical df, and let `Xh_1..Xh_n` be an
//! independent iid standard Fréchet sequence. The pairs
//!
//! ```text
//! (Xh_i, max(Xh_i / 2, X_i / 2))
//! ```
//!
//! have component-wise block maxima whose limiting copula is
//! `C(u, v) = min(u * v^(θ/(1+θ)), v)`, with tail dependence coefficient
//! `λ = 1/(1 + θ)`. Estimating `λ` nonparametrically from the block maxima and
//! inverting gives `θ = 1/λ - 1`. The auxiliary sequence is random, so the
//! estimate is averaged over `M` independent auxiliary draws.

use rand::Rng;
use rand_distr::Open01;
use rayon::prelude::*;

use crate::ecdf::{max_ranks, modified_ecdf_at_sample};
use crate::error::{invalid, Result};
use crate::seed::{stream_rng, Execution};
use crate::series::{FrechetSeries, PairSeries, TimeSeries};

/// Tuning of the averaged estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EstimatorConfig {
    /// Block length `r`.
    pub block_length: usize,
    /// Number `M` of auxiliary draws averaged over.
    pub replicates: usize,
    /// Master seed; replicate `s` reads stream `s` under it.
    pub seed: u64,
}

impl EstimatorConfig {
    pub fn new(block_length: usize, replicates: usize, seed: u64) -> Self {
        Self { block_length, replicates, seed }
    }

    /// Checks the config against a series of length `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.replicates == 0 {
            return invalid("replicate count M must be at least 1");
        }
        check_block_length(n, self.block_length)
    }
}

fn check_block_length(n: usize, r: usize) -> Result<()> {
    if r == 0 {
        return invalid("block length must be at least 1");
    }
    if n / r < 2 {
        return invalid(format!(
            "block length {r} leaves {} complete block(s) in {n} observations, need at least 2",
            n / r
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThetaEstimate {
    /// The extremal index estimate, in `[0, 1]`.
    pub theta: f64,
    /// Tail dependence estimate before clamping. For averaged estimates this is
    /// the mean over replicates.
    pub lambda: f64,
    /// Individual replicate estimates, when more than one was averaged.
    pub per_replicate: Option<Vec<f64>>,
}

/// Maps a series to the standard Fréchet scale: `X_i -> -1 / log F(X_i)` with
/// `F` the modified empirical df of the whole series.
pub fn to_frechet(series: &TimeSeries) -> FrechetSeries {
    let values = modified_ecdf_at_sample(series.values())
        .into_iter()
        .map(|f| -1.0 / f.ln())
        .collect();
    FrechetSeries::new(values).expect("ranks in 1..=n map to positive finite values")
}

/// Standard Fréchet quantile function, `-1 / log(u)`.
#[inline]
pub fn frechet_quantile(u: f64) -> f64 {
    -1.0 / u.ln()
}

/// Draws `n` iid standard Fréchet values by inverse transform.
pub fn sample_frechet<R: Rng + ?Sized>(n: usize, rng: &mut R) -> FrechetSeries {
    let values = (0..n)
        .map(|_| frechet_quantile(rng.sample::<f64, _>(Open01)))
        .collect();
    FrechetSeries::new(values).expect("Open01 draws map to positive finite values")
}

/// Pairs `(x_hat[i], max(x_hat[i] / 2, x[i] / 2))`.
pub fn build_pairs(x: &FrechetSeries, x_hat: &FrechetSeries) -> Result<PairSeries> {
    if x.len() != x_hat.len() {
        return invalid(format!(
            "series length {} differs from auxiliary length {}",
            x.len(),
            x_hat.len()
        ));
    }
    let pairs = x_hat
        .values()
        .iter()
        .zip(x.values())
        .map(|(&h, &v)| (h, (0.5 * h).max(0.5 * v)))
        .collect();
    PairSeries::new(pairs)
}

/// Component-wise maxima over consecutive disjoint blocks of length `r`.
/// A trailing partial block is discarded.
pub fn block_maxima(pairs: &PairSeries, r: usize) -> Result<PairSeries> {
    check_block_length(pairs.len(), r)?;
    let maxima = pairs
        .pairs()
        .chunks_exact(r)
        .map(|block| {
            block
                .iter()
                .fold((f64::MIN, f64::MIN), |(a, b), &(x, y)| (a.max(x), b.max(y)))
        })
        .collect();
    PairSeries::new(maxima)
}

/// Rank-based estimate of the stable tail dependence function at `(1, 1)`:
///
/// ```text
/// l(1,1) = 1 / (1 - mean_i max(G1(Z_i1), G2(Z_i2))) - 1
/// ```
///
/// with `G1`, `G2` the modified empirical dfs of each coordinate.
pub fn estimate_stdf11(pairs: &PairSeries) -> Result<f64> {
    let m = pairs.len();
    if m < 2 {
        return invalid(format!("need at least 2 pairs, got {m}"));
    }
    let first: Vec<f64> = pairs.first().collect();
    let second: Vec<f64> = pairs.second().collect();
    // Both dfs share the denominator m + 1, so the maximum can be taken on
    // integer ranks and the mean formed with a single division.
    let rank_sum: u64 = max_ranks(&first)
        .into_iter()
        .zip(max_ranks(&second))
        .map(|(a, b)| a.max(b) as u64)
        .sum();
    let mean = rank_sum as f64 / (m as f64 * (m + 1) as f64);
    Ok(1.0 / (1.0 - mean) - 1.0)
}

/// Tail dependence coefficient from the stable tail dependence function.
#[inline]
pub fn lambda_from_stdf(l: f64) -> f64 {
    2.0 - l
}

/// Inverts `λ = 1/(1 + θ)`. `λ` is clamped to `[1/2, 1]` first so the result
/// lies in `[0, 1]`.
#[inline]
pub fn theta_from_lambda(lambda: f64) -> f64 {
    1.0 / lambda.clamp(0.5, 1.0) - 1.0
}

/// One estimate from a transformed series and a given auxiliary sequence.
pub fn estimate_with_auxiliary(
    x: &FrechetSeries,
    x_hat: &FrechetSeries,
    r: usize,
) -> Result<ThetaEstimate> {
    let pairs = build_pairs(x, x_hat)?;
    let maxima = block_maxima(&pairs, r)?;
    let lambda = lambda_from_stdf(estimate_stdf11(&maxima)?);
    Ok(ThetaEstimate {
        theta: theta_from_lambda(lambda),
        lambda,
        per_replicate: None,
    })
}

fn estimate_from_frechet<R: Rng + ?Sized>(
    x: &FrechetSeries,
    r: usize,
    rng: &mut R,
) -> Result<ThetaEstimate> {
    let x_hat = sample_frechet(x.len(), rng);
    estimate_with_auxiliary(x, &x_hat, r)
}

/// A single (non-averaged) estimate using one auxiliary draw from `rng`.
pub fn estimate_theta_single<R: Rng + ?Sized>(
    series: &TimeSeries,
    r: usize,
    rng: &mut R,
) -> Result<ThetaEstimate> {
    check_block_length(series.len(), r)?;
    estimate_from_frechet(&to_frechet(series), r, rng)
}

/// The averaged estimator: the mean of `M` single estimates, replicate `s`
/// drawing its auxiliary sequence from stream `s` of the master seed.
pub fn estimate_theta(series: &TimeSeries, config: &EstimatorConfig) -> Result<ThetaEstimate> {
    estimate_theta_with(series, config, Execution::Parallel)
}

pub fn estimate_theta_with(
    series: &TimeSeries,
    config: &EstimatorConfig,
    execution: Execution,
) -> Result<ThetaEstimate> {
    config.validate(series.len())?;
    let x = to_frechet(series);
    let replicate = |s: usize| {
        let mut rng = stream_rng(config.seed, s as u64);
        estimate_from_frechet(&x, config.block_length, &mut rng)
    };
    let estimates: Vec<ThetaEstimate> = match execution {
        Execution::Serial => (0..config.replicates).map(replicate).collect::<Result<_>>()?,
        Execution::Parallel => (0..config.replicates)
            .into_par_iter()
            .map(replicate)
            .collect::<Result<_>>()?,
    };

    let m = estimates.len() as f64;
    let thetas: Vec<f64> = estimates.iter().map(|e| e.theta).collect();
    let theta = thetas.iter().sum::<f64>() / m;
    let lambda = estimates.iter().map(|e| e.lambda).sum::<f64>() / m;
    Ok(ThetaEstimate {
        theta,
        lambda,
        per_replicate: Some(thetas),
    })
}
