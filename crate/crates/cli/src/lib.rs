//! Library side of the `exind` command-line tool: input parsing, model
//! parameters, per-command logic and the benchmark config format.

pub mod commands;
pub mod config;
pub mod ingest;
pub mod model;

use std::path::{Path, PathBuf};

/// Sibling path of the summary CSV holding the per-replicate audit rows:
/// `results.csv` -> `results_raw.csv`.
pub fn raw_output_path(summary: &Path) -> PathBuf {
    let stem = summary.file_stem().and_then(|s| s.to_str()).unwrap_or("bench");
    let ext = summary.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    summary.with_file_name(format!("{stem}_raw.{ext}"))
}
