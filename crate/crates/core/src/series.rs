use crate::error::{invalid, Result};

/// An ordered univariate sample. Values are finite; order carries the serial
/// dependence and is never changed.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries(Vec<f64>);

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return invalid("time series must be nonempty");
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return invalid(format!("non-finite value {} at index {i}", values[i]));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Applies `f` element-wise; the result is revalidated.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.0.iter().map(|&v| f(v)).collect())
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl TryFrom<Vec<f64>> for TimeSeries {
    type Error = crate::Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

/// A series on the standard Fréchet scale (all values strictly positive).
#[derive(Debug, Clone, PartialEq)]
pub struct FrechetSeries(Vec<f64>);

impl FrechetSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
            return invalid(format!("Fréchet value {} at index {i} is not finite and positive", values[i]));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// An ordered sequence of bivariate observations with positive coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSeries(Vec<(f64, f64)>);

impl PairSeries {
    pub fn new(pairs: Vec<(f64, f64)>) -> Result<Self> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if let Some(i) = pairs.iter().position(|&(a, b)| !(ok(a) && ok(b))) {
            return invalid(format!("pair {i} = {:?} has a non-positive or non-finite coordinate", pairs[i]));
        }
        Ok(Self(pairs))
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().map(|p| p.0)
    }

    pub fn second(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().map(|p| p.1)
    }
}
