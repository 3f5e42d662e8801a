//! Model specifications from a name plus `key=value` parameter overrides.

use exind_core::{ModelSpec, Process};

#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Scalar(f64),
    List(Vec<f64>),
}

/// Parses a number, accepting simple fractions such as `2/6`.
pub fn parse_number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: f64 = num.trim().parse().map_err(|_| format!("bad number {s:?}"))?;
        let den: f64 = den.trim().parse().map_err(|_| format!("bad number {s:?}"))?;
        return Ok(num / den);
    }
    s.parse().map_err(|_| format!("bad number {s:?}"))
}

/// Parses `key=value,key=value`. List values separate entries with `;`,
/// e.g. `alphas=2/6;1/6;3/6`.
pub fn parse_params(s: &str) -> Result<Vec<(String, ParamValue)>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|kv| !kv.is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| format!("parameter {kv:?} is not key=value"))?;
            let value = if v.contains(';') {
                ParamValue::List(v.split(';').map(parse_number).collect::<Result<_, _>>()?)
            } else {
                ParamValue::Scalar(parse_number(v)?)
            };
            Ok((k.trim().to_string(), value))
        })
        .collect()
}

fn scalar(key: &str, v: &ParamValue) -> Result<f64, String> {
    match v {
        ParamValue::Scalar(x) => Ok(*x),
        ParamValue::List(_) => Err(format!("parameter {key} takes a single number")),
    }
}

fn count(key: &str, v: &ParamValue) -> Result<u64, String> {
    let x = scalar(key, v)?;
    if x < 0.0 || x.fract() != 0.0 {
        return Err(format!("parameter {key} = {x} must be a nonnegative integer"));
    }
    Ok(x as u64)
}

/// The standard model `name`, with `params` overriding its defaults.
pub fn build_model(name: &str, params: &[(String, ParamValue)]) -> Result<ModelSpec, String> {
    let base = ModelSpec::standard(name).map_err(|e| e.to_string())?;
    let mut process = base.process;
    let mut burn_in = base.burn_in;
    for (key, value) in params {
        let key = key.as_str();
        match (&mut process, key) {
            (_, "burn_in") => burn_in = count(key, value)? as usize,
            (Process::ArCauchy { rho }, "rho") => *rho = scalar(key, value)?,
            (Process::ArUniform { r }, "r") => {
                *r = u32::try_from(count(key, value)?).map_err(|_| "r too large".to_string())?
            }
            (Process::MovingMaxima { alphas }, "alphas") => {
                *alphas = match value {
                    ParamValue::List(v) => v.clone(),
                    ParamValue::Scalar(x) => vec![*x],
                }
            }
            (Process::MaxAutoregressive { phi }, "phi") => *phi = scalar(key, value)?,
            (Process::MarkovLogistic { alpha }, "alpha") => *alpha = scalar(key, value)?,
            (Process::Arch { lambda, .. }, "lambda") => *lambda = scalar(key, value)?,
            (Process::Arch { beta, .. }, "beta") => *beta = scalar(key, value)?,
            _ => return Err(format!("model {name} has no parameter {key:?}")),
        }
    }
    let spec = ModelSpec { process, burn_in };
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}
