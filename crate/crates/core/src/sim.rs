//! Stationary processes with known extremal index.
//!
//! | model  | recurrence                                         | θ        |
//! |--------|----------------------------------------------------|----------|
//! | ARCau  | `X_t = ρ X_{t-1} + (1-|ρ|) ε_t`, ε standard Cauchy  | `1 - ρ²` (ρ < 0) |
//! | ARUnif | `X_t = -X_{t-1}/r + ε_t`, ε uniform on `{1/r,…,1}` | `1 - 1/r²` |
//! | MM     | `X_t = max_j α_j Z_{t-j}`, Z iid standard Fréchet  | `max α_j` |
//! | MAR    | `X_t = max(φ X_{t-1}, (1-φ) Z_t)`                  | `1 - φ`  |
//! | MC     | Markov chain, Gumbel margins, logistic transitions | 0.328 at α = 1/2 |
//! | ARCH   | `X_t = (β + λ X_{t-1}²)^{1/2} W_t`, W iid N(0,1)     | 0.835 at λ = 1/2 |

use std::fmt;

use rand::Rng;
use rand_distr::{Cauchy, Distribution, Open01, StandardNormal};

use crate::error::{invalid, Error, Result};
use crate::estimator::frechet_quantile;
use crate::series::TimeSeries;

pub const DEFAULT_BURN_IN: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub enum Process {
    ArCauchy { rho: f64 },
    ArUniform { r: u32 },
    MovingMaxima { alphas: Vec<f64> },
    MaxAutoregressive { phi: f64 },
    MarkovLogistic { alpha: f64 },
    Arch { lambda: f64, beta: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub process: Process,
    pub burn_in: usize,
}

/// Extremal index of a catalogued model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundTruth {
    pub theta: f64,
}

impl ModelSpec {
    pub fn new(process: Process) -> Result<Self> {
        let spec = Self { process, burn_in: DEFAULT_BURN_IN };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = burn_in;
        self
    }

    pub fn ar_cauchy(rho: f64) -> Result<Self> {
        Self::new(Process::ArCauchy { rho })
    }

    pub fn ar_uniform(r: u32) -> Result<Self> {
        Self::new(Process::ArUniform { r })
    }

    pub fn moving_maxima(alphas: Vec<f64>) -> Result<Self> {
        Self::new(Process::MovingMaxima { alphas })
    }

    pub fn max_autoregressive(phi: f64) -> Result<Self> {
        Self::new(Process::MaxAutoregressive { phi })
    }

    pub fn markov_logistic(alpha: f64) -> Result<Self> {
        Self::new(Process::MarkovLogistic { alpha })
    }

    pub fn arch(lambda: f64, beta: f64) -> Result<Self> {
        Self::new(Process::Arch { lambda, beta })
    }

    /// The six benchmark models in their standard parameterizations, in the
    /// order MAR, MM, ARUnif, ARCau, ARCH, MC.
    pub fn benchmark_models() -> Vec<ModelSpec> {
        ["MAR", "MM", "ARUnif", "ARCau", "ARCH", "MC"]
            .into_iter()
            .map(|name| Self::standard(name).expect("catalogued name"))
            .collect()
    }

    /// A model by short name with its standard benchmark parameters.
    pub fn standard(name: &str) -> Result<Self> {
        match name {
            "ARCau" => Self::ar_cauchy(-0.6),
            "ARUnif" => Self::ar_uniform(2),
            "MM" => Self::moving_maxima(vec![2.0 / 6.0, 1.0 / 6.0, 3.0 / 6.0]),
            "MAR" => Self::max_autoregressive(0.5),
            "MC" | "MCLogistic" => Self::markov_logistic(0.5),
            "ARCH" => Self::arch(0.5, 1.9e-5),
            other => Err(Error::InvalidInput(format!(
                "unknown model {other:?}; expected one of ARCau, ARUnif, MM, MAR, MC, ARCH"
            ))),
        }
    }

    /// Short name used in tables and CSV output.
    pub fn name(&self) -> &'static str {
        match self.process {
            Process::ArCauchy { .. } => "ARCau",
            Process::ArUniform { .. } => "ARUnif",
            Process::MovingMaxima { .. } => "MM",
            Process::MaxAutoregressive { .. } => "MAR",
            Process::MarkovLogistic { .. } => "MC",
            Process::Arch { .. } => "ARCH",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match &self.process {
            Process::ArCauchy { rho } => {
                if !(rho.abs() < 1.0 && *rho != 0.0) {
                    return invalid(format!("ARCau rho = {rho} must lie in (-1, 0) ∪ (0, 1)"));
                }
            }
            Process::ArUniform { r } => {
                if *r < 2 {
                    return invalid(format!("ARUnif r = {r} must be at least 2"));
                }
            }
            Process::MovingMaxima { alphas } => {
                if alphas.is_empty() || alphas.iter().any(|a| !(a.is_finite() && *a >= 0.0)) {
                    return invalid("MM coefficients must be nonempty, finite and nonnegative");
                }
                let sum: f64 = alphas.iter().sum();
                if (sum - 1.0).abs() > 1e-12 {
                    return invalid(format!("MM coefficients sum to {sum}, not 1"));
                }
            }
            Process::MaxAutoregressive { phi } => {
                if !(*phi > 0.0 && *phi < 1.0) {
                    return invalid(format!("MAR phi = {phi} must lie in (0, 1)"));
                }
            }
            Process::MarkovLogistic { alpha } => {
                if !(*alpha > 0.0 && *alpha <= 1.0) {
                    return invalid(format!("MC alpha = {alpha} must lie in (0, 1]"));
                }
            }
            Process::Arch { lambda, beta } => {
                if !(*lambda > 0.0 && *lambda < 1.0) {
                    return invalid(format!("ARCH lambda = {lambda} must lie in (0, 1)"));
                }
                if !(beta.is_finite() && *beta > 0.0) {
                    return invalid(format!("ARCH beta = {beta} must be positive"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.process {
            Process::ArCauchy { rho } => write!(f, "ARCau(rho={rho})"),
            Process::ArUniform { r } => write!(f, "ARUnif(r={r})"),
            Process::MovingMaxima { alphas } => write!(f, "MM(alphas={alphas:?})"),
            Process::MaxAutoregressive { phi } => write!(f, "MAR(phi={phi})"),
            Process::MarkovLogistic { alpha } => write!(f, "MC(alpha={alpha})"),
            Process::Arch { lambda, beta } => write!(f, "ARCH(lambda={lambda}, beta={beta})"),
        }
    }
}

// Tabulated values for models without a simple closed form.
const MC_LOGISTIC_HALF_THETA: f64 = 0.328;
const ARCH_HALF_THETA: f64 = 0.835;

pub fn theoretical_theta(spec: &ModelSpec) -> Result<GroundTruth> {
    let theta = match &spec.process {
        Process::ArCauchy { rho } if *rho < 0.0 => 1.0 - rho * rho,
        Process::ArUniform { r } => 1.0 - 1.0 / f64::from(*r * *r),
        Process::MovingMaxima { alphas } => alphas.iter().copied().fold(0.0, f64::max),
        Process::MaxAutoregressive { phi } => 1.0 - phi,
        Process::MarkovLogistic { alpha } if *alpha == 0.5 => MC_LOGISTIC_HALF_THETA,
        // alpha = 1 is the independence copula
        Process::MarkovLogistic { alpha } if *alpha == 1.0 => 1.0,
        Process::Arch { lambda, .. } if *lambda == 0.5 => ARCH_HALF_THETA,
        _ => {
            return Err(Error::Unsupported(format!(
                "no catalogued extremal index for {spec}"
            )))
        }
    };
    Ok(GroundTruth { theta })
}

/// Simulates `n` observations after discarding `spec.burn_in` warm-up steps.
pub fn simulate<R: Rng + ?Sized>(spec: &ModelSpec, n: usize, rng: &mut R) -> Result<TimeSeries> {
    spec.validate()?;
    if n == 0 {
        return invalid("series length must be at least 1");
    }
    let total = n + spec.burn_in;
    let mut out = Vec::with_capacity(total);
    match &spec.process {
        Process::ArCauchy { rho } => {
            let innov = Cauchy::new(0.0, 1.0 - rho.abs()).expect("positive scale");
            let mut x = Cauchy::new(0.0, 1.0).expect("unit scale").sample(rng);
            for _ in 0..total {
                x = rho * x + innov.sample(rng);
                out.push(x);
            }
        }
        Process::ArUniform { r } => {
            let rf = f64::from(*r);
            let mut x: f64 = rng.sample(Open01);
            for _ in 0..total {
                let k = rng.random_range(1..=*r);
                x = -x / rf + f64::from(k) / rf;
                out.push(x);
            }
        }
        Process::MovingMaxima { alphas } => {
            // window[j] holds Z_{t-j}
            let q = alphas.len();
            let mut window: Vec<f64> = (0..q).map(|_| std_frechet(rng)).collect();
            for _ in 0..total {
                window.rotate_right(1);
                window[0] = std_frechet(rng);
                out.push(moving_maxima_step(alphas, &window));
            }
        }
        Process::MaxAutoregressive { phi } => {
            let mut x = std_frechet(rng);
            for _ in 0..total {
                x = (phi * x).max((1.0 - phi) * std_frechet(rng));
                out.push(x);
            }
        }
        Process::MarkovLogistic { alpha } => {
            let mut x = std_gumbel(rng);
            for _ in 0..total {
                let w: f64 = rng.sample(Open01);
                x = logistic_conditional_inverse(x, w, *alpha);
                out.push(x);
            }
        }
        Process::Arch { lambda, beta } => {
            let mut x = 0.0f64;
            for _ in 0..total {
                let w: f64 = rng.sample(StandardNormal);
                x = (beta + lambda * x * x).sqrt() * w;
                out.push(x);
            }
        }
    }
    out.drain(..spec.burn_in);
    TimeSeries::new(out)
}

/// `max_j alphas[j] * window[j]` where `window[j]` is `Z_{t-j}`.
pub fn moving_maxima_step(alphas: &[f64], window: &[f64]) -> f64 {
    alphas
        .iter()
        .zip(window)
        .map(|(a, z)| a * z)
        .fold(f64::NEG_INFINITY, f64::max)
}

fn std_frechet<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    frechet_quantile(rng.sample(Open01))
}

fn std_gumbel<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.sample(Open01);
    -(-u.ln()).ln()
}

/// `P(X_t <= next | X_{t-1} = prev)` for the logistic Markov chain on the
/// Gumbel scale.
///
/// With `x = e^{-prev}`, `y = e^{-next}` and `s = x^{1/α} + y^{1/α}`, the
/// derivative of the logistic copula in its first argument is
/// `exp(-s^α + x) s^{α-1} x^{1/α - 1}`, evaluated here in logs.
pub fn logistic_conditional_cdf(prev: f64, next: f64, alpha: f64) -> f64 {
    if alpha == 1.0 {
        return (-(-next).exp()).exp();
    }
    let a = -prev / alpha;
    let b = -next / alpha;
    let log_s = a.max(b) + (-(a - b).abs()).exp().ln_1p();
    let x = (-prev).exp();
    let log_h = -(alpha * log_s).exp() + (alpha - 1.0) * log_s + (1.0 / alpha - 1.0) * (-prev) + x;
    log_h.exp().min(1.0)
}

const BISECTION_TOL: f64 = 1e-10;

/// Solves `logistic_conditional_cdf(prev, next, alpha) = w` for `next` by
/// bisection on the Gumbel scale.
pub fn logistic_conditional_inverse(prev: f64, w: f64, alpha: f64) -> f64 {
    let cdf = |b: f64| logistic_conditional_cdf(prev, b, alpha);
    let (mut lo, mut hi) = (prev - 8.0, prev + 8.0);
    let (mut f_lo, mut f_hi) = (cdf(lo), cdf(hi));
    while f_lo > w {
        lo -= 2.0 * (hi - lo);
        f_lo = cdf(lo);
    }
    while f_hi < w {
        hi += 2.0 * (hi - lo);
        f_hi = cdf(hi);
    }
    while f_hi - f_lo >= BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = cdf(mid);
        if f_mid < w {
            (lo, f_lo) = (mid, f_mid);
        } else {
            (hi, f_hi) = (mid, f_mid);
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::stream_rng;

    #[test]
    fn moving_maxima_window_example() {
        let alphas = [2.0 / 6.0, 1.0 / 6.0, 3.0 / 6.0];
        assert_eq!(moving_maxima_step(&alphas, &[6.0, 6.0, 6.0]), 3.0);
    }

    #[test]
    fn catalogued_thetas() {
        let th = |name: &str| theoretical_theta(&ModelSpec::standard(name).unwrap()).unwrap().theta;
        assert!((th("ARCau") - 0.64).abs() < 1e-15);
        assert_eq!(th("ARUnif"), 0.75);
        assert_eq!(th("MM"), 0.5);
        assert_eq!(th("MAR"), 0.5);
        assert_eq!(th("MC"), 0.328);
        assert_eq!(th("ARCH"), 0.835);
    }

    #[test]
    fn uncatalogued_is_unsupported() {
        for spec in [
            ModelSpec::ar_cauchy(0.4).unwrap(),
            ModelSpec::markov_logistic(0.7).unwrap(),
            ModelSpec::arch(0.3, 1.0).unwrap(),
        ] {
            assert!(matches!(theoretical_theta(&spec), Err(Error::Unsupported(_))));
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(ModelSpec::ar_cauchy(0.0).is_err());
        assert!(ModelSpec::ar_cauchy(-1.0).is_err());
        assert!(ModelSpec::ar_uniform(1).is_err());
        assert!(ModelSpec::moving_maxima(vec![0.5, 0.4]).is_err());
        assert!(ModelSpec::moving_maxima(vec![]).is_err());
        assert!(ModelSpec::max_autoregressive(1.0).is_err());
        assert!(ModelSpec::markov_logistic(0.0).is_err());
        assert!(ModelSpec::arch(0.5, 0.0).is_err());
        assert!(ModelSpec::standard("GARCH").is_err());
    }

    #[test]
    fn mar_recurrence_lower_bound() {
        let spec = ModelSpec::max_autoregressive(0.5).unwrap();
        let s = simulate(&spec, 5000, &mut stream_rng(3, 0)).unwrap();
        assert!(s.values().windows(2).all(|w| w[1] >= 0.5 * w[0]));
    }

    #[test]
    fn deterministic_per_seed() {
        for spec in ModelSpec::benchmark_models() {
            let a = simulate(&spec, 200, &mut stream_rng(9, 0)).unwrap();
            let b = simulate(&spec, 200, &mut stream_rng(9, 0)).unwrap();
            let c = simulate(&spec, 200, &mut stream_rng(10, 0)).unwrap();
            assert_eq!(a, b, "{spec}");
            assert_ne!(a, c, "{spec}");
            assert_eq!(a.len(), 200);
        }
    }

    #[test]
    fn burn_in_is_discarded() {
        let spec = ModelSpec::max_autoregressive(0.5).unwrap();
        let long = simulate(&spec.clone().with_burn_in(0), 1100, &mut stream_rng(4, 0)).unwrap();
        let short = simulate(&spec, 100, &mut stream_rng(4, 0)).unwrap();
        assert_eq!(&long.values()[1000..], short.values());
    }

    #[test]
    fn logistic_conditional_cdf_limits() {
        for prev in [-1.0, 0.0, 2.5] {
            assert!(logistic_conditional_cdf(prev, -30.0, 0.5) < 1e-12);
            assert!(logistic_conditional_cdf(prev, 40.0, 0.5) > 1.0 - 1e-12);
            let mut last = 0.0;
            for k in -40..=80 {
                let c = logistic_conditional_cdf(prev, k as f64 * 0.25, 0.5);
                assert!(c >= last);
                last = c;
            }
        }
    }

    #[test]
    fn logistic_conditional_matches_finite_difference() {
        // dC/du of the logistic copula, by central differences on C itself.
        let alpha = 0.5;
        let copula = |u: f64, v: f64| {
            let s = (-u.ln()).powf(1.0 / alpha) + (-v.ln()).powf(1.0 / alpha);
            (-s.powf(alpha)).exp()
        };
        for (prev, next) in [(0.0f64, 0.0f64), (1.0, -0.5), (-0.5, 2.0), (3.0, 3.5)] {
            let u = (-(-prev).exp()).exp();
            let v = (-(-next).exp()).exp();
            let h = 1e-6;
            let fd = (copula(u + h, v) - copula(u - h, v)) / (2.0 * h);
            let got = logistic_conditional_cdf(prev, next, alpha);
            assert!((fd - got).abs() < 1e-6, "({prev},{next}): {fd} vs {got}");
        }
    }

    #[test]
    fn logistic_inverse_round_trips() {
        for prev in [-2.0, 0.0, 1.0, 6.0] {
            for w in [1e-9, 0.01, 0.3, 0.5, 0.9, 0.999999] {
                let x = logistic_conditional_inverse(prev, w, 0.5);
                assert!((logistic_conditional_cdf(prev, x, 0.5) - w).abs() < 1e-9);
            }
        }
    }
}
