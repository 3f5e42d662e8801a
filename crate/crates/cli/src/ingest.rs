//! Single-column numeric input files and series output.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use exind_core::TimeSeries;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    #[error("{path}:{line}: cannot parse {content:?} as a number")]
    NotNumeric { path: PathBuf, line: usize, content: String },

    #[error("{path}:{line}: non-finite value {content:?}")]
    NonFinite { path: PathBuf, line: usize, content: String },

    #[error("{path}:{line}: expected a single column, found {content:?}")]
    MultipleColumns { path: PathBuf, line: usize, content: String },

    #[error("{path}: no numeric rows")]
    Empty { path: PathBuf },

    #[error("{path}:{line}: price {value} is not strictly positive")]
    NonPositivePrice { path: PathBuf, line: usize, value: f64 },

    #[error("{path}: need at least 2 prices for log-returns, found {found}")]
    TooFewPrices { path: PathBuf, found: usize },
}

/// A parsed input file. `lines[i]` is the 1-based line holding observation `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetFile {
    pub path: PathBuf,
    pub series: TimeSeries,
    pub lines: Vec<usize>,
}

impl DatasetFile {
    pub fn read(path: impl AsRef<Path>) -> Result<Self, IngestError> {
        let path = path.as_ref().to_path_buf();
        let file = File::open(&path).map_err(|source| IngestError::Io { path: path.clone(), source })?;
        Self::parse(BufReader::new(file), path)
    }

    /// Parses newline-delimited values. Blank lines are skipped; the first
    /// nonblank line is taken as a header when it is not numeric.
    pub fn parse<R: BufRead>(reader: R, path: PathBuf) -> Result<Self, IngestError> {
        let mut values = Vec::new();
        let mut lines = Vec::new();
        let mut seen_first = false;
        for (i, line) in reader.lines().enumerate() {
            let line_no = i + 1;
            let raw = line.map_err(|source| IngestError::Io { path: path.clone(), source })?;
            let field = raw.trim();
            if field.is_empty() {
                continue;
            }
            let is_first = !seen_first;
            seen_first = true;
            if field.contains(',') {
                return Err(IngestError::MultipleColumns { path, line: line_no, content: raw });
            }
            let field = field.trim_matches('"').trim();
            match field.parse::<f64>() {
                Ok(v) if v.is_finite() => {
                    values.push(v);
                    lines.push(line_no);
                }
                Ok(_) => return Err(IngestError::NonFinite { path, line: line_no, content: raw }),
                Err(_) if is_first => continue,
                Err(_) => return Err(IngestError::NotNumeric { path, line: line_no, content: raw }),
            }
        }
        let series = TimeSeries::new(values).map_err(|_| IngestError::Empty { path: path.clone() })?;
        Ok(Self { path, series, lines })
    }

    /// Log-returns `log(P_t / P_{t-1})` of a price file.
    pub fn log_returns(&self) -> Result<TimeSeries, IngestError> {
        let prices = self.series.values();
        if let Some(i) = prices.iter().position(|&p| p <= 0.0) {
            return Err(IngestError::NonPositivePrice {
                path: self.path.clone(),
                line: self.lines[i],
                value: prices[i],
            });
        }
        if prices.len() < 2 {
            return Err(IngestError::TooFewPrices { path: self.path.clone(), found: prices.len() });
        }
        let returns = prices.windows(2).map(|w| (w[1] / w[0]).ln()).collect();
        Ok(TimeSeries::new(returns).expect("ratios of positive finite prices are finite"))
    }
}

/// Formats a value with 17 significant digits, enough to round-trip any f64.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes `values` one per row under a `value` header.
pub fn write_values<W: Write>(values: &[f64], mut out: W) -> io::Result<()> {
    writeln!(out, "value")?;
    for &v in values {
        writeln!(out, "{}", format_value(v))?;
    }
    out.flush()
}

pub fn write_values_to(values: &[f64], path: &Path) -> Result<(), IngestError> {
    let io_err = |source| IngestError::Io { path: path.to_path_buf(), source };
    let file = File::create(path).map_err(io_err)?;
    write_values(values, BufWriter::new(file)).map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<DatasetFile, IngestError> {
        DatasetFile::parse(text.as_bytes(), PathBuf::from("mem.csv"))
    }

    #[test]
    fn header_and_blank_lines() {
        let d = parse("price\n1.5\n\n2.5\n3\n").unwrap();
        assert_eq!(d.series.values(), &[1.5, 2.5, 3.0]);
        assert_eq!(d.lines, vec![2, 4, 5]);
        let d = parse("1\n2\n").unwrap();
        assert_eq!(d.series.values(), &[1.0, 2.0]);
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let e = parse("value\n1\nabc\n").unwrap_err();
        assert!(matches!(e, IngestError::NotNumeric { line: 3, .. }), "{e}");
        assert!(e.to_string().starts_with("mem.csv:3:"));
        assert!(matches!(parse("1\nNaN\n").unwrap_err(), IngestError::NonFinite { line: 2, .. }));
        assert!(matches!(parse("1\n-inf\n").unwrap_err(), IngestError::NonFinite { line: 2, .. }));
        assert!(matches!(parse("1,2\n").unwrap_err(), IngestError::MultipleColumns { line: 1, .. }));
        assert!(matches!(parse("value\n").unwrap_err(), IngestError::Empty { .. }));
    }

    #[test]
    fn log_returns_examples() {
        let r = parse(&format!("1\n{}\n", std::f64::consts::E)).unwrap().log_returns().unwrap();
        assert_eq!(r.values(), &[1.0]);
        let r = parse("2\n2\n2\n").unwrap().log_returns().unwrap();
        assert_eq!(r.values(), &[0.0, 0.0]);
        let r = parse("1\n2\n1\n").unwrap().log_returns().unwrap();
        assert!((r.values()[0] - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((r.values()[1] + std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn log_returns_errors() {
        let e = parse("p\n1\n0\n2\n").unwrap().log_returns().unwrap_err();
        assert!(matches!(e, IngestError::NonPositivePrice { line: 3, .. }), "{e}");
        assert!(matches!(
            parse("5\n").unwrap().log_returns().unwrap_err(),
            IngestError::TooFewPrices { found: 1, .. }
        ));
    }

    #[test]
    fn write_then_parse_is_lossless() {
        let values = vec![0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, f64::MIN_POSITIVE, -0.0];
        let mut buf = Vec::new();
        write_values(&values, &mut buf).unwrap();
        let back = DatasetFile::parse(buf.as_slice(), PathBuf::from("x")).unwrap();
        for (a, b) in values.iter().zip(back.series.values()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }
}
