//! Monte Carlo harness: root mean squared error and absolute mean bias of each
//! estimator against the ground-truth extremal index of the simulated model.
//!
//! Seeds: replicate `k` of a cell uses `rep = child_seed(cell.seed, k)`. The
//! series is simulated from stream 0 of `rep` and the new estimator's master
//! seed is `child_seed(rep, 1)`. Cells sharing a master seed and model therefore
//! see identical series, and extending `K` never changes earlier replicates.

use std::fmt;
use std::io::Write;

use rayon::prelude::*;

use crate::comparators::{empirical_quantile, ferro_segers, northrop, BlockConfig};
use crate::error::{invalid, Error, Result};
use crate::estimator::{estimate_theta_with, EstimatorConfig};
use crate::seed::{child_seed, stream_rng, Execution};
use crate::sim::{simulate, theoretical_theta, ModelSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EstimatorKind {
    /// The averaged blocks estimator with block length `r`.
    New { r: usize },
    /// Sliding-blocks Northrop estimator with block length `b`.
    Northrop { b: usize },
    /// Ferro–Segers at the empirical quantile of level `q`.
    FerroSegers { q: f64 },
}

impl EstimatorKind {
    pub fn name(&self) -> &'static str {
        match self {
            EstimatorKind::New { .. } => "new",
            EstimatorKind::Northrop { .. } => "northrop",
            EstimatorKind::FerroSegers { .. } => "ferro_segers",
        }
    }

    pub fn tuning(&self) -> String {
        match self {
            EstimatorKind::New { r } => r.to_string(),
            EstimatorKind::Northrop { b } => b.to_string(),
            EstimatorKind::FerroSegers { q } => q.to_string(),
        }
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EstimatorKind::New { r } => write!(f, "new(r={r})"),
            EstimatorKind::Northrop { b } => write!(f, "northrop(b={b})"),
            EstimatorKind::FerroSegers { q } => write!(f, "ferro_segers(q={q})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchCell {
    pub model: ModelSpec,
    pub estimator: EstimatorKind,
    /// Sample size of each simulated series.
    pub n: usize,
    /// Outer Monte Carlo replicates `K`.
    pub replicates: usize,
    /// Inner replicates `M`; only used by the new estimator.
    pub inner_replicates: usize,
    pub seed: u64,
}

impl BenchCell {
    pub fn validate(&self) -> Result<()> {
        if self.replicates < 2 {
            return invalid(format!("K = {} replicates, need at least 2", self.replicates));
        }
        if self.n == 0 {
            return invalid("sample size must be positive");
        }
        match self.estimator {
            EstimatorKind::New { r } => {
                EstimatorConfig::new(r, self.inner_replicates, 0).validate(self.n)?
            }
            EstimatorKind::Northrop { b } => {
                if b < 2 || b >= self.n {
                    return invalid(format!("Northrop block length {b} invalid for n = {}", self.n));
                }
            }
            EstimatorKind::FerroSegers { q } => {
                if !(0.0..=1.0).contains(&q) {
                    return invalid(format!("quantile level {q} outside [0, 1]"));
                }
            }
        }
        self.model.validate()
    }

    /// Estimate for replicate `k`; `Err` marks the replicate as missing.
    pub fn replicate_estimate(&self, k: usize, execution: Execution) -> Result<f64> {
        let rep = child_seed(self.seed, k as u64);
        let series = simulate(&self.model, self.n, &mut stream_rng(rep, 0))?;
        match self.estimator {
            EstimatorKind::New { r } => {
                let config = EstimatorConfig::new(r, self.inner_replicates, child_seed(rep, 1));
                Ok(estimate_theta_with(&series, &config, execution)?.theta)
            }
            EstimatorKind::Northrop { b } => northrop(&series, BlockConfig::sliding(b)),
            EstimatorKind::FerroSegers { q } => {
                ferro_segers(&series, empirical_quantile(&series, q)?)
            }
        }
    }
}

/// rmse and abias of `estimates` around `truth`.
///
/// rmse is formed as `sqrt(bias² + variance)`, algebraically equal to
/// `sqrt(mean((e - truth)²))`; this form keeps `rmse >= abias` exact in
/// floating point.
pub fn error_summary(estimates: &[f64], truth: f64) -> (f64, f64) {
    let k = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / k;
    let bias = mean - truth;
    let variance = estimates.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / k;
    ((bias * bias + variance).sqrt(), bias.abs())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub cell: BenchCell,
    pub truth: f64,
    /// One entry per replicate; `None` where the estimator failed.
    pub estimates: Vec<Option<f64>>,
    /// Failure messages of missing replicates, by replicate index.
    pub failures: Vec<(usize, String)>,
    pub rmse: f64,
    pub abias: f64,
}

impl BenchResult {
    pub fn effective_replicates(&self) -> usize {
        self.estimates.iter().flatten().count()
    }

    pub fn present_estimates(&self) -> Vec<f64> {
        self.estimates.iter().flatten().copied().collect()
    }

    pub fn mean_estimate(&self) -> f64 {
        let e = self.present_estimates();
        e.iter().sum::<f64>() / e.len() as f64
    }
}

pub fn run_cell(cell: &BenchCell) -> Result<BenchResult> {
    run_cell_with(cell, Execution::Parallel)
}

pub fn run_cell_with(cell: &BenchCell, execution: Execution) -> Result<BenchResult> {
    cell.validate()?;
    let truth = theoretical_theta(&cell.model)?.theta;
    let one = |k: usize| cell.replicate_estimate(k, execution);
    let outcomes: Vec<Result<f64>> = match execution {
        Execution::Serial => (0..cell.replicates).map(one).collect(),
        Execution::Parallel => (0..cell.replicates).into_par_iter().map(one).collect(),
    };

    let mut estimates = Vec::with_capacity(outcomes.len());
    let mut failures = Vec::new();
    for (k, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(e) => estimates.push(Some(e)),
            Err(err) => {
                estimates.push(None);
                failures.push((k, err.to_string()));
            }
        }
    }
    let present: Vec<f64> = estimates.iter().flatten().copied().collect();
    if present.len() < 2 {
        return Err(Error::InvalidInput(format!(
            "{} on {}: only {} of {} replicates produced an estimate",
            cell.estimator,
            cell.model,
            present.len(),
            cell.replicates
        )));
    }
    let (rmse, abias) = error_summary(&present, truth);
    Ok(BenchResult {
        cell: cell.clone(),
        truth,
        estimates,
        failures,
        rmse,
        abias,
    })
}

/// Runs every cell; results come back in input order and per-cell errors do
/// not stop the study.
pub fn run_study(cells: &[BenchCell]) -> Vec<Result<BenchResult>> {
    run_study_with(cells, Execution::Parallel)
}

pub fn run_study_with(cells: &[BenchCell], execution: Execution) -> Vec<Result<BenchResult>> {
    match execution {
        Execution::Serial => cells.iter().map(|c| run_cell_with(c, execution)).collect(),
        Execution::Parallel => cells.par_iter().map(|c| run_cell_with(c, execution)).collect(),
    }
}

/// Summary CSV: `model,estimator,tuning,n,K,M,rmse,abias`. `K` is the
/// effective replicate count; `M` is blank for the comparators. Failed cells
/// are skipped.
pub fn write_summary_csv<W: Write>(results: &[Result<BenchResult>], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["model", "estimator", "tuning", "n", "K", "M", "rmse", "abias"])?;
    for r in results.iter().flatten() {
        let c = &r.cell;
        let m = match c.estimator {
            EstimatorKind::New { .. } => c.inner_replicates.to_string(),
            _ => String::new(),
        };
        w.write_record([
            c.model.name().to_string(),
            c.estimator.name().to_string(),
            c.estimator.tuning(),
            c.n.to_string(),
            r.effective_replicates().to_string(),
            m,
            r.rmse.to_string(),
            r.abias.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Per-replicate audit CSV: `model,estimator,tuning,n,replicate,estimate,error`.
pub fn write_raw_csv<W: Write>(results: &[Result<BenchResult>], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["model", "estimator", "tuning", "n", "replicate", "estimate", "error"])?;
    for r in results.iter().flatten() {
        let c = &r.cell;
        for (k, e) in r.estimates.iter().enumerate() {
            let error = r
                .failures
                .iter()
                .find(|(i, _)| *i == k)
                .map(|(_, msg)| msg.as_str())
                .unwrap_or("");
            w.write_record([
                c.model.name(),
                c.estimator.name(),
                &c.estimator.tuning(),
                &c.n.to_string(),
                &k.to_string(),
                &e.map(|v| v.to_string()).unwrap_or_default(),
                error,
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
