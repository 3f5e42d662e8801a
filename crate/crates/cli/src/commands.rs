use std::io::Write;

use exind_core::comparators::{empirical_quantile, ferro_segers, northrop, BlockConfig};
use exind_core::seed::stream_rng;
use exind_core::{estimate_theta, simulate, EstimatorConfig, ModelSpec, TimeSeries};

use crate::model::parse_number;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    New,
    Northrop,
    FerroSegers,
}

impl Method {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "new" => Ok(Method::New),
            "northrop" => Ok(Method::Northrop),
            "ferro_segers" | "fs" => Ok(Method::FerroSegers),
            other => Err(format!("unknown method {other:?}; expected new, northrop or ferro_segers")),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Method::New => "new",
            Method::Northrop => "northrop",
            Method::FerroSegers => "ferro_segers",
        }
    }
}

/// Block lengths used for block-based methods when none are given.
pub const DEFAULT_BLOCK_GRID: [usize; 6] = [10, 20, 30, 40, 50, 70];

/// Quantile levels 0.40, 0.41, …, 0.99.
pub fn default_quantile_grid() -> Vec<f64> {
    (40..=99).map(|k| f64::from(k) / 100.0).collect()
}

/// Parses a quantile grid: a comma-separated list (`0.9,0.95`) or an
/// inclusive range `start:stop:step`.
pub fn parse_quantile_grid(s: &str) -> Result<Vec<f64>, String> {
    let grid: Vec<f64> = if s.contains(':') {
        let parts: Vec<f64> = s.split(':').map(parse_number).collect::<Result<_, _>>()?;
        let [start, stop, step] = parts[..] else {
            return Err(format!("quantile range {s:?} must be start:stop:step"));
        };
        if step.is_nan() || step <= 0.0 || stop < start {
            return Err(format!("quantile range {s:?} is empty"));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
            .collect()
    } else {
        s.split(',').map(parse_number).collect::<Result<_, _>>()?
    };
    if grid.is_empty() {
        return Err("empty quantile grid".into());
    }
    Ok(grid)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateConfig {
    pub method: Method,
    /// Block lengths (new, northrop) or quantile levels (ferro_segers).
    pub grid: Vec<f64>,
    pub replicates: usize,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateRow {
    pub method: Method,
    pub tuning: f64,
    pub estimate: Result<f64, String>,
}

fn block_length(t: f64) -> Result<usize, String> {
    if t >= 1.0 && t.fract() == 0.0 {
        Ok(t as usize)
    } else {
        Err(format!("block length {t} is not a positive integer"))
    }
}

/// One estimate per grid point; failures are kept per row.
pub fn estimate_grid(series: &TimeSeries, config: &EstimateConfig) -> Result<Vec<EstimateRow>, String> {
    if config.grid.is_empty() {
        return Err("empty tuning grid".into());
    }
    let seed = match (config.method, config.seed) {
        (Method::New, None) => return Err("the new estimator needs --seed (or EXIND_SEED)".into()),
        (_, s) => s.unwrap_or(0),
    };
    let rows = config
        .grid
        .iter()
        .map(|&tuning| {
            let estimate = match config.method {
                Method::New => block_length(tuning).and_then(|r| {
                    estimate_theta(series, &EstimatorConfig::new(r, config.replicates, seed))
                        .map(|e| e.theta)
                        .map_err(|e| e.to_string())
                }),
                Method::Northrop => block_length(tuning).and_then(|b| {
                    northrop(series, BlockConfig::sliding(b)).map_err(|e| e.to_string())
                }),
                Method::FerroSegers => empirical_quantile(series, tuning)
                    .and_then(|u| ferro_segers(series, u))
                    .map_err(|e| e.to_string()),
            };
            EstimateRow { method: config.method, tuning, estimate }
        })
        .collect();
    Ok(rows)
}

/// Estimates table: `method,tuning,estimate,error`.
pub fn write_estimates<W: Write>(rows: &[EstimateRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["method", "tuning", "estimate", "error"])?;
    for row in rows {
        let (estimate, error) = match &row.estimate {
            Ok(v) => (v.to_string(), String::new()),
            Err(e) => (String::new(), e.clone()),
        };
        w.write_record([row.method.name(), &row.tuning.to_string(), &estimate, &error])?;
    }
    w.flush()?;
    Ok(())
}

/// Simulated series for `(spec, n, seed)`; stream 0 of the seed.
pub fn simulate_series(spec: &ModelSpec, n: usize, seed: u64) -> Result<TimeSeries, String> {
    simulate(spec, n, &mut stream_rng(seed, 0)).map_err(|e| e.to_string())
}

/// Price path `P_0 = 1`, `P_t = P_{t-1} exp(X_t)` whose log-returns are `X`.
pub fn price_path(returns: &TimeSeries) -> Vec<f64> {
    let mut prices = Vec::with_capacity(returns.len() + 1);
    let mut log_p = 0.0f64;
    prices.push(1.0);
    for &x in returns.values() {
        log_p += x;
        prices.push(log_p.exp());
    }
    prices
}
