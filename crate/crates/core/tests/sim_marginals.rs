mod oracles;

use exind_core::seed::stream_rng;
use exind_core::{simulate, ModelSpec};
use oracles::{cauchy_cdf, frechet_cdf, gumbel_cdf, ks_statistic, uniform_cdf};

const N: usize = 100_000;

type Cdf = fn(f64) -> f64;

fn sample(name: &str, seed: u64) -> Vec<f64> {
    simulate(&ModelSpec::standard(name).unwrap(), N, &mut stream_rng(seed, 0))
        .unwrap()
        .into_inner()
}

#[test]
fn marginals_match_their_laws() {
    let checks: [(&str, Cdf); 5] = [
        ("ARCau", cauchy_cdf),
        ("ARUnif", uniform_cdf),
        ("MM", frechet_cdf),
        ("MAR", frechet_cdf),
        ("MC", gumbel_cdf),
    ];
    for (name, cdf) in checks {
        let d = ks_statistic(&sample(name, 100), cdf);
        assert!(d < 0.01, "{name}: KS = {d}");
    }
}

#[test]
fn ar_cauchy_mass_below_one() {
    let x = sample("ARCau", 5);
    let p = x.iter().filter(|&&v| v <= 1.0).count() as f64 / N as f64;
    assert!((p - 0.75).abs() < 0.01, "P(X <= 1) = {p}");
}

#[test]
fn moving_maxima_pairs_are_shift_invariant() {
    let x = simulate(&ModelSpec::standard("MM").unwrap(), 2 * N, &mut stream_rng(8, 0))
        .unwrap()
        .into_inner();
    let (early, late) = x.split_at(N);
    let joint = |half: &[f64], a: f64, b: f64| {
        half.windows(2).filter(|w| w[0] <= a && w[1] <= b).count() as f64 / (half.len() - 1) as f64
    };
    for a in [0.5, 1.0, 2.0, 5.0] {
        for b in [0.5, 1.0, 2.0, 5.0] {
            let (p, q) = (joint(early, a, b), joint(late, a, b));
            // binomial standard error is at most 0.5/sqrt(N) ≈ 0.0016 per half
            assert!((p - q).abs() < 0.01, "({a},{b}): {p} vs {q}");
        }
    }
}

#[test]
fn arch_is_symmetric_and_scaled() {
    let x = sample("ARCH", 12);
    let mean = x.iter().sum::<f64>() / N as f64;
    let var = x.iter().map(|v| v * v).sum::<f64>() / N as f64;
    // stationary variance β / (1 - λ)
    assert!(mean.abs() < 1e-4, "mean {mean}");
    assert!((var / (1.9e-5 / 0.5) - 1.0).abs() < 0.1, "var {var}");
}
