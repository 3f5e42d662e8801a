//! Independent reference implementations used only by tests. None of these
//! call into the library's estimator code paths.
#![allow(dead_code)]

/// Limiting copula of the auxiliary block maxima, `min(u v^(θ/(1+θ)), v)`.
pub fn bev_copula(u: f64, v: f64, theta: f64) -> f64 {
    (u * v.powf(theta / (1.0 + theta))).min(v)
}

/// `2 - (1 - C(u,u)) / (1 - u)`, the finite-u approximation of the tail
/// dependence coefficient.
pub fn tail_dependence_at(u: f64, theta: f64) -> f64 {
    2.0 - (1.0 - bev_copula(u, u, theta)) / (1.0 - u)
}

/// Intervals estimator, materializing the interexceedance times first.
pub fn naive_ferro_segers(values: &[f64], u: f64) -> Option<f64> {
    let mut positions = Vec::new();
    for (i, v) in values.iter().enumerate() {
        if *v > u {
            positions.push(i + 1);
        }
    }
    if positions.len() < 2 {
        return None;
    }
    let mut times = Vec::new();
    for i in 0..positions.len() - 1 {
        times.push((positions[i + 1] - positions[i]) as f64);
    }
    let nm1 = times.len() as f64;
    let max_t = times.iter().cloned().fold(0.0, f64::max);
    let est = if max_t <= 2.0 {
        let s: f64 = times.iter().sum();
        let s2: f64 = times.iter().map(|t| t * t).sum();
        2.0 * s * s / (nm1 * s2)
    } else {
        let s: f64 = times.iter().map(|t| t - 1.0).sum();
        let s2: f64 = times.iter().map(|t| (t - 1.0) * (t - 2.0)).sum();
        2.0 * s * s / (nm1 * s2)
    };
    Some(if est > 1.0 { 1.0 } else { est })
}

/// Northrop's estimator with an O(n^2) empirical df and explicit windows.
pub fn naive_northrop(values: &[f64], b: usize, sliding: bool) -> f64 {
    let n = values.len();
    let ecdf = |x: f64| values.iter().filter(|&&v| v <= x).count() as f64 / (n as f64 + 1.0);
    let starts: Vec<usize> = if sliding {
        (0..=n - b).collect()
    } else {
        (0..n / b).map(|j| j * b).collect()
    };
    let mut total = 0.0;
    for &s in &starts {
        let m = values[s..s + b].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        total += -(b as f64) * ecdf(m).ln();
    }
    let est = 1.0 / (total / starts.len() as f64);
    est.min(1.0)
}

/// Kolmogorov–Smirnov distance between a sample and a continuous df.
pub fn ks_statistic(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut s = sample.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

pub fn cauchy_cdf(x: f64) -> f64 {
    0.5 + x.atan() / std::f64::consts::PI
}

pub fn uniform_cdf(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

pub fn frechet_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-1.0 / x).exp()
    }
}

pub fn gumbel_cdf(x: f64) -> f64 {
    (-(-x).exp()).exp()
}
