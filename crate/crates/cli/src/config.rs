//! Benchmark study configuration (TOML).
//!
//! ```toml
//! n = 1000
//! replicates = 100        # K
//! inner_replicates = 100  # M, new estimator only
//! seed = 20200101
//!
//! [[cells]]
//! models = ["MAR", "MM", "ARUnif", "ARCau", "ARCH", "MC"]
//! estimator = "new"       # new | northrop | ferro_segers
//! tuning = [10, 20, 30, 40, 50, 70]
//! ```
//!
//! Each `[[cells]]` group expands to one cell per (model, tuning) pair and may
//! override `n`, `replicates`, `inner_replicates`, `seed` and model `params`.

use std::collections::BTreeMap;
use std::path::Path;

use exind_core::bench::{BenchCell, EstimatorKind};
use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

use crate::model::{build_model, ParamValue};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("{path}: {message}")]
    Syntax { path: String, message: String },

    #[error("{path}:{line}: {message}")]
    Invalid { path: String, line: usize, message: String },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    n: Option<usize>,
    replicates: Option<usize>,
    inner_replicates: Option<usize>,
    seed: Option<u64>,
    #[serde(default)]
    cells: Vec<Spanned<RawGroup>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    models: Vec<Spanned<String>>,
    estimator: Spanned<String>,
    tuning: Spanned<Vec<f64>>,
    n: Option<usize>,
    replicates: Option<usize>,
    inner_replicates: Option<usize>,
    seed: Option<u64>,
    #[serde(default)]
    params: BTreeMap<String, toml::Value>,
}

const DEFAULT_INNER_REPLICATES: usize = 100;

fn line_of(source: &str, offset: usize) -> usize {
    source[..offset.min(source.len())].matches('\n').count() + 1
}

fn param_value(key: &str, v: &toml::Value) -> Result<ParamValue, String> {
    let num = |v: &toml::Value| match v {
        toml::Value::Float(x) => Ok(*x),
        toml::Value::Integer(i) => Ok(*i as f64),
        other => Err(format!("parameter {key}: {other} is not a number")),
    };
    match v {
        toml::Value::Array(items) => Ok(ParamValue::List(items.iter().map(num).collect::<Result<_, _>>()?)),
        other => Ok(ParamValue::Scalar(num(other)?)),
    }
}

fn estimator_kind(name: &str, tuning: f64) -> Result<EstimatorKind, String> {
    let block = || {
        if tuning >= 1.0 && tuning.fract() == 0.0 {
            Ok(tuning as usize)
        } else {
            Err(format!("block length {tuning} is not a positive integer"))
        }
    };
    match name {
        "new" => Ok(EstimatorKind::New { r: block()? }),
        "northrop" => Ok(EstimatorKind::Northrop { b: block()? }),
        "ferro_segers" => Ok(EstimatorKind::FerroSegers { q: tuning }),
        other => Err(format!("unknown estimator {other:?}; expected new, northrop or ferro_segers")),
    }
}

/// Parses a study config into its cells, in declaration order.
pub fn parse_config(source: &str, path: &str) -> Result<Vec<BenchCell>, ConfigError> {
    let raw: RawConfig = toml::from_str(source).map_err(|e| ConfigError::Syntax {
        path: path.to_string(),
        message: match e.span() {
            Some(span) => format!("line {}: {}", line_of(source, span.start), e.message()),
            None => e.message().to_string(),
        },
    })?;
    let invalid = |offset: usize, message: String| ConfigError::Invalid {
        path: path.to_string(),
        line: line_of(source, offset),
        message,
    };
    if raw.cells.is_empty() {
        return Err(invalid(source.len(), "no [[cells]] declared".into()));
    }

    let mut cells = Vec::new();
    for group in &raw.cells {
        let at = group.span().start;
        let g = group.get_ref();
        let required = |v: Option<usize>, fallback: Option<usize>, key: &str| {
            v.or(fallback).ok_or_else(|| invalid(at, format!("missing `{key}`")))
        };
        let n = required(g.n, raw.n, "n")?;
        let replicates = required(g.replicates, raw.replicates, "replicates")?;
        let inner_replicates = g
            .inner_replicates
            .or(raw.inner_replicates)
            .unwrap_or(DEFAULT_INNER_REPLICATES);
        let seed = g.seed.or(raw.seed).ok_or_else(|| invalid(at, "missing `seed`".into()))?;
        let params = g
            .params
            .iter()
            .map(|(k, v)| Ok((k.clone(), param_value(k, v)?)))
            .collect::<Result<Vec<_>, String>>()
            .map_err(|m| invalid(at, m))?;
        if g.models.is_empty() {
            return Err(invalid(at, "empty `models` list".into()));
        }
        if g.tuning.get_ref().is_empty() {
            return Err(invalid(g.tuning.span().start, "empty `tuning` list".into()));
        }

        if !matches!(g.estimator.get_ref().as_str(), "new" | "northrop" | "ferro_segers") {
            let message = estimator_kind(g.estimator.get_ref(), 1.0).unwrap_err();
            return Err(invalid(g.estimator.span().start, message));
        }

        for model in &g.models {
            let spec = build_model(model.get_ref(), &params).map_err(|m| invalid(model.span().start, m))?;
            for &t in g.tuning.get_ref() {
                let estimator = estimator_kind(g.estimator.get_ref(), t)
                    .map_err(|m| invalid(g.tuning.span().start, m))?;
                let cell = BenchCell {
                    model: spec.clone(),
                    estimator,
                    n,
                    replicates,
                    inner_replicates,
                    seed,
                };
                cell.validate().map_err(|e| invalid(g.tuning.span().start, e.to_string()))?;
                cells.push(cell);
            }
        }
    }
    Ok(cells)
}

pub fn read_config(path: &Path) -> Result<Vec<BenchCell>, ConfigError> {
    let display = path.display().to_string();
    let source = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: display.clone(), source })?;
    parse_config(&source, &display)
}
