use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use exind_cli::commands::{
    default_quantile_grid, estimate_grid, parse_quantile_grid, price_path, simulate_series,
    write_estimates, EstimateConfig, Method, DEFAULT_BLOCK_GRID,
};
use exind_cli::config::read_config;
use exind_cli::ingest::{write_values, DatasetFile};
use exind_cli::model::{build_model, parse_params};
use exind_cli::raw_output_path;
use exind_core::bench::{run_study_with, write_raw_csv, write_summary_csv};
use exind_core::Execution;

#[derive(Parser)]
#[command(name = "exind", version, about = "Extremal index estimation and simulation studies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a price file into log-returns.
    Logreturns {
        #[arg(long)]
        input: PathBuf,
        /// Output file (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Estimate the extremal index over a grid of tuning values.
    Estimate {
        #[arg(long)]
        input: PathBuf,
        /// new | northrop | ferro_segers
        #[arg(long, default_value = "new")]
        method: String,
        /// Block lengths for the new estimator.
        #[arg(long, value_delimiter = ',')]
        r: Vec<usize>,
        /// Block lengths for the Northrop estimator.
        #[arg(long, value_delimiter = ',')]
        b: Vec<usize>,
        /// Quantile levels for Ferro–Segers: a list or start:stop:step.
        #[arg(long)]
        quantile: Option<String>,
        /// Auxiliary replicates averaged by the new estimator.
        #[arg(long = "M", default_value_t = 1000)]
        replicates: usize,
        #[arg(long, env = "EXIND_SEED")]
        seed: Option<u64>,
        /// Treat the input as prices and estimate on their log-returns.
        #[arg(long)]
        log_returns: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Simulate one of the benchmark processes.
    Simulate {
        /// ARCau | ARUnif | MM | MAR | MC | ARCH
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: usize,
        #[arg(long, env = "EXIND_SEED")]
        seed: Option<u64>,
        /// Parameter overrides, e.g. `rho=-0.6` or `alphas=2/6;1/6;3/6,burn_in=500`.
        #[arg(long, default_value = "")]
        params: String,
        /// Write the price path exp(cumsum) instead of the raw series.
        #[arg(long)]
        as_prices: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a Monte Carlo study from a TOML config.
    Bench {
        #[arg(long)]
        config: PathBuf,
        /// Summary CSV; per-replicate rows go to `<stem>_raw.csv` beside it.
        #[arg(long)]
        output: PathBuf,
        /// Run replicates on the calling thread only.
        #[arg(long)]
        serial: bool,
    },
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Logreturns { input, output } => {
            let returns = DatasetFile::read(&input)?.log_returns()?;
            write_values(returns.values(), open_output(output.as_deref())?)?;
        }
        Command::Estimate { input, method, r, b, quantile, replicates, seed, log_returns, output } => {
            let data = DatasetFile::read(&input)?;
            let series = if log_returns { data.log_returns()? } else { data.series };
            let method = Method::parse(&method).map_err(|e| anyhow!(e))?;
            let blocks = |given: Vec<usize>| {
                let g = if given.is_empty() { DEFAULT_BLOCK_GRID.to_vec() } else { given };
                g.into_iter().map(|v| v as f64).collect::<Vec<_>>()
            };
            let grid = match method {
                Method::New => blocks(r),
                Method::Northrop => blocks(if b.is_empty() { r } else { b }),
                Method::FerroSegers => match quantile {
                    Some(q) => parse_quantile_grid(&q).map_err(|e| anyhow!(e))?,
                    None => default_quantile_grid(),
                },
            };
            let config = EstimateConfig { method, grid, replicates, seed };
            let rows = estimate_grid(&series, &config).map_err(|e| anyhow!(e))?;
            for row in &rows {
                if let Err(e) = &row.estimate {
                    eprintln!("warning: {} at {}: {e}", row.method.name(), row.tuning);
                }
            }
            write_estimates(&rows, open_output(output.as_deref())?)?;
        }
        Command::Simulate { model, n, seed, params, as_prices, output } => {
            let Some(seed) = seed else { bail!("simulate needs --seed (or EXIND_SEED)") };
            let params = parse_params(&params).map_err(|e| anyhow!(e))?;
            let spec = build_model(&model, &params).map_err(|e| anyhow!(e))?;
            let series = simulate_series(&spec, n, seed).map_err(|e| anyhow!(e))?;
            let values = if as_prices { price_path(&series) } else { series.into_inner() };
            write_values(&values, open_output(output.as_deref())?)
                .with_context(|| format!("writing {}", output.as_deref().map_or("stdout".into(), |p| p.display().to_string())))?;
        }
        Command::Bench { config, output, serial } => {
            let cells = read_config(&config)?;
            let execution = if serial { Execution::Serial } else { Execution::Parallel };
            let results = run_study_with(&cells, execution);
            for (cell, r) in cells.iter().zip(&results) {
                if let Err(e) = r {
                    eprintln!("warning: {} / {}: {e}", cell.model, cell.estimator);
                }
            }
            let raw = raw_output_path(&output);
            write_summary_csv(&results, open_output(Some(&output))?)?;
            write_raw_csv(&results, open_output(Some(&raw))?)?;
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
