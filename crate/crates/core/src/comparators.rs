//! Comparator estimators of the extremal index with a single tuning parameter:
//! the intervals estimator (threshold only) and the sliding blocks estimator
//! (block length only).

use crate::ecdf::max_ranks;
use crate::error::{invalid, Error, Result};
use crate::series::TimeSeries;

/// Positions (1-based, increasing) at which a series strictly exceeds `threshold`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExceedanceRecord {
    pub positions: Vec<usize>,
    pub threshold: f64,
}

impl ExceedanceRecord {
    /// Interexceedance times `T_i = positions[i+1] - positions[i]`.
    pub fn interexceedance_times(&self) -> impl Iterator<Item = usize> + '_ {
        self.positions.windows(2).map(|w| w[1] - w[0])
    }
}

pub fn exceedances(series: &TimeSeries, threshold: f64) -> ExceedanceRecord {
    let positions = series
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > threshold)
        .map(|(i, _)| i + 1)
        .collect();
    ExceedanceRecord { positions, threshold }
}

/// Ferro–Segers intervals estimator at threshold `threshold`.
///
/// With `N` exceedances and interexceedance times `T_1..T_{N-1}`:
/// if `max T <= 2`, `θ = 2 (ΣT)^2 / ((N-1) ΣT^2)`; otherwise
/// `θ = 2 (Σ(T-1))^2 / ((N-1) Σ(T-1)(T-2))`. Both are capped at 1.
pub fn ferro_segers(series: &TimeSeries, threshold: f64) -> Result<f64> {
    let record = exceedances(series, threshold);
    let found = record.positions.len();
    if found < 2 {
        return Err(Error::InsufficientExceedances { found, threshold });
    }
    let gaps = (found - 1) as f64;

    let mut max_gap = 0usize;
    let (mut s1, mut s2) = (0.0f64, 0.0f64);
    let (mut d1, mut d2) = (0.0f64, 0.0f64);
    for t in record.interexceedance_times() {
        max_gap = max_gap.max(t);
        let t = t as f64;
        s1 += t;
        s2 += t * t;
        d1 += t - 1.0;
        d2 += (t - 1.0) * (t - 2.0);
    }
    let theta = if max_gap <= 2 {
        2.0 * s1 * s1 / (gaps * s2)
    } else {
        2.0 * d1 * d1 / (gaps * d2)
    };
    Ok(theta.min(1.0))
}

/// Empirical quantile by the inverse of the empirical df: the order statistic
/// at 1-based index `ceil(p * n)`, clamped to `[1, n]`.
pub fn empirical_quantile(series: &TimeSeries, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return invalid(format!("quantile level {p} outside [0, 1]"));
    }
    let mut sorted = series.values().to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len();
    let k = ((p * n as f64).ceil() as usize).clamp(1, n);
    Ok(sorted[k - 1])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlockMode {
    Disjoint,
    #[default]
    Sliding,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockConfig {
    pub block_length: usize,
    pub mode: BlockMode,
}

impl BlockConfig {
    pub fn sliding(block_length: usize) -> Self {
        Self { block_length, mode: BlockMode::Sliding }
    }

    pub fn disjoint(block_length: usize) -> Self {
        Self { block_length, mode: BlockMode::Disjoint }
    }
}

/// Northrop's blocks estimator.
///
/// For each block maximum `M_j`, `V_j = -b log F(M_j)` with `F` the modified
/// empirical df of the full series; `θ = min(1, 1 / mean V)`. Sliding mode uses
/// all `n - b + 1` windows, disjoint mode the `floor(n / b)` complete blocks.
pub fn northrop(series: &TimeSeries, config: BlockConfig) -> Result<f64> {
    let n = series.len();
    let b = config.block_length;
    if b < 2 || b > n {
        return invalid(format!("block length {b} must lie in [2, {n}]"));
    }
    let blocks = match config.mode {
        BlockMode::Sliding => n - b + 1,
        BlockMode::Disjoint => n / b,
    };
    if blocks < 2 {
        return invalid(format!("block length {b} leaves {blocks} block(s), need at least 2"));
    }

    // The df at a block maximum is its rank over n + 1, so blocks can work on ranks.
    let ranks = max_ranks(series.values());
    let block_max_ranks: Vec<usize> = match config.mode {
        BlockMode::Sliding => sliding_max(&ranks, b),
        BlockMode::Disjoint => ranks
            .chunks_exact(b)
            .map(|c| *c.iter().max().expect("nonempty block"))
            .collect(),
    };
    let denom = (n + 1) as f64;
    let bf = b as f64;
    let sum_v: f64 = block_max_ranks
        .iter()
        .map(|&k| -bf * (k as f64 / denom).ln())
        .sum();
    let mean_v = sum_v / block_max_ranks.len() as f64;
    Ok((1.0 / mean_v).min(1.0))
}

/// Maxima over every window of length `w`, via a monotone deque.
fn sliding_max(values: &[usize], w: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(values.len() + 1 - w);
    let mut deque = std::collections::VecDeque::<usize>::new();
    for (i, &v) in values.iter().enumerate() {
        while deque.back().is_some_and(|&j| values[j] <= v) {
            deque.pop_back();
        }
        deque.push_back(i);
        if deque[0] + w <= i {
            deque.pop_front();
        }
        if i + 1 >= w {
            out.push(values[deque[0]]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ts(v: &[f64]) -> TimeSeries {
        TimeSeries::new(v.to_vec()).unwrap()
    }

    /// Series whose exceedances of 0.5 sit exactly at `positions` (1-based).
    fn with_exceedances_at(positions: &[usize], n: usize) -> TimeSeries {
        let mut v = vec![0.0; n];
        for &p in positions {
            v[p - 1] = 1.0;
        }
        ts(&v)
    }

    #[test]
    fn exceedance_positions() {
        let s = ts(&[1.0, 5.0, 2.0, 6.0]);
        assert_eq!(exceedances(&s, 4.0).positions, vec![2, 4]);
        assert!(exceedances(&s, 6.0).positions.is_empty());
        assert_eq!(exceedances(&s, 0.0).positions, vec![1, 2, 3, 4]);
    }

    #[test]
    fn ferro_segers_hand_values() {
        let s = with_exceedances_at(&[1, 2, 3, 13], 20);
        assert!((ferro_segers(&s, 0.5).unwrap() - 0.75).abs() < 1e-15);

        let s = with_exceedances_at(&[1, 2, 3], 10);
        assert_eq!(ferro_segers(&s, 0.5).unwrap(), 1.0);

        let s = with_exceedances_at(&[2, 7], 10);
        assert_eq!(ferro_segers(&s, 0.5).unwrap(), 1.0);
    }

    #[test]
    fn ferro_segers_needs_two_exceedances() {
        let s = with_exceedances_at(&[4], 10);
        assert!(matches!(
            ferro_segers(&s, 0.5),
            Err(Error::InsufficientExceedances { found: 1, .. })
        ));
    }

    #[test]
    fn northrop_hand_values() {
        let s = ts(&[1.0, 2.0, 3.0, 4.0]);
        let d = northrop(&s, BlockConfig::disjoint(2)).unwrap();
        let want_d = 1.0 / ((-2.0 * 0.4f64.ln() - 2.0 * 0.8f64.ln()) / 2.0);
        assert!((d - want_d).abs() < 1e-12);
        assert!((d - 0.8777).abs() < 1e-4);

        let sl = northrop(&s, BlockConfig::sliding(2)).unwrap();
        let want_s = 1.0 / ((-2.0 * 0.4f64.ln() - 2.0 * 0.6f64.ln() - 2.0 * 0.8f64.ln()) / 3.0);
        assert!((sl - want_s).abs() < 1e-12);
        assert!((sl - 0.9089).abs() < 1e-4);
    }

    #[test]
    fn northrop_rejects_too_few_blocks() {
        let s = ts(&[1.0, 2.0, 3.0]);
        assert!(northrop(&s, BlockConfig::disjoint(2)).is_err());
        assert!(northrop(&s, BlockConfig::sliding(3)).is_err());
        assert!(northrop(&s, BlockConfig::sliding(1)).is_err());
        assert!(northrop(&s, BlockConfig::sliding(2)).is_ok());
    }

    #[test]
    fn northrop_caps_at_one() {
        // every block maximum has rank n, so mean V = -b log(n/(n+1)) < 1
        let s = ts(&[3.0; 50]);
        assert_eq!(northrop(&s, BlockConfig::sliding(5)).unwrap(), 1.0);
    }

    #[test]
    fn quantiles_type_one() {
        let s = ts(&[5.0, 1.0, 4.0, 2.0, 3.0]);
        assert_eq!(empirical_quantile(&s, 0.0).unwrap(), 1.0);
        assert_eq!(empirical_quantile(&s, 0.2).unwrap(), 1.0);
        assert_eq!(empirical_quantile(&s, 0.21).unwrap(), 2.0);
        assert_eq!(empirical_quantile(&s, 1.0).unwrap(), 5.0);
        assert!(empirical_quantile(&s, 1.5).is_err());
        // the maximum as threshold leaves no strict exceedances
        assert!(ferro_segers(&s, empirical_quantile(&s, 1.0).unwrap()).is_err());
    }

    #[test]
    fn sliding_max_matches_naive() {
        let v = [3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5];
        for w in 1..=v.len() {
            let naive: Vec<usize> = v.windows(w).map(|c| *c.iter().max().unwrap()).collect();
            assert_eq!(sliding_max(&v, w), naive);
        }
    }

    proptest! {
        #[test]
        fn estimates_stay_in_unit_interval(
            v in prop::collection::vec(-100.0f64..100.0, 10..80),
            b in 2usize..5,
            q in 0.3f64..0.9,
        ) {
            let s = TimeSeries::new(v).unwrap();
            let u = empirical_quantile(&s, q).unwrap();
            if let Ok(t) = ferro_segers(&s, u) {
                prop_assert!((0.0..=1.0).contains(&t));
            }
            for cfg in [BlockConfig::sliding(b), BlockConfig::disjoint(b)] {
                let t = northrop(&s, cfg).unwrap();
                prop_assert!((0.0..=1.0).contains(&t));
            }
        }

        #[test]
        fn monotone_transform_invariance(v in prop::collection::vec(-3.0f64..3.0, 10..60), q in 0.3f64..0.9) {
            let s = TimeSeries::new(v).unwrap();
            let g = |x: f64| x.exp() * 2.0 + 1.0;
            let gs = s.map(g).unwrap();
            let u = empirical_quantile(&s, q).unwrap();
            prop_assert_eq!(ferro_segers(&s, u).ok(), ferro_segers(&gs, g(u)).ok());
            prop_assert_eq!(
                northrop(&s, BlockConfig::sliding(3)).unwrap(),
                northrop(&gs, BlockConfig::sliding(3)).unwrap()
            );
        }
    }
}
