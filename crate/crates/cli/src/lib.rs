//! Command-line driver: reads families, packings and caps as JSON, runs the checks in
//! `sepgeom-core` and writes JSON reports and SVG figures.

// `!(x > 0.0)` rejects NaN as well, which is the point
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod report;
pub mod schema;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use report::EXIT_INPUT;

#[derive(Debug, Parser)]
#[command(
    name = "sepgeom",
    version,
    about = "Separability checks for convex bodies, packings and caps"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct RunConfig {
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Directions or poles to sample; each command has its own default.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output path; for `both`, `.json` and `.svg` extensions are added.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Record elapsed time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Octahedral,
    Cuboctahedral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryArg {
    E2,
    S2,
    H2,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Decide whether a family of homothets is non-separable.
    CheckNs { file: PathBuf },
    /// Smallest homothetic cover of a family.
    Cover { file: PathBuf },
    /// Total separability of a translative packing.
    VerifyTs { file: PathBuf },
    /// Local separability of a translative packing.
    VerifyLs { file: PathBuf },
    /// ρ-separability of a translative packing.
    RhoSep {
        file: PathBuf,
        #[arg(long)]
        rho: f64,
    },
    /// Oler-type inequality; uses `polygon` from the file or the hull of the centers.
    Oler { file: PathBuf },
    /// Hull-area bounds for a TS packing.
    Density { file: PathBuf },
    /// Contact graph of a packing and/or the crystallization bound for `n` balls.
    Contact {
        file: Option<PathBuf>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 3)]
        dim: u32,
    },
    /// Lattice contact bounds and the spiral polyomino packing.
    Lattice {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        dim: u32,
    },
    /// Surface and volume bounds on a random guillotine partition.
    Kertesz {
        #[arg(long, default_value_t = 8)]
        cells: usize,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
    },
    /// Separation, total separability and covering of a cap family.
    Caps {
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        construction: Option<Construction>,
    },
    /// Separable Tammes radius or bounds for `k` caps.
    Tammes {
        #[arg(long)]
        k: usize,
    },
    /// Density of λ-separable disk packings.
    LambdaDensity {
        #[arg(long, value_enum)]
        geometry: GeometryArg,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        rho: Option<f64>,
    },
    /// Extrema of size functionals over non-separable unit-disk triples.
    #[command(name = "extremal-3disks")]
    Extremal3Disks {
        #[arg(long, default_value_t = 1_000_000)]
        grid: usize,
    },
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            bail!("--tolerance must be positive");
        }
        if self.samples.is_some_and(|s| s < 16) {
            bail!("--samples must be at least 16");
        }
        if self.format == Format::Both && self.out.is_none() {
            bail!("--format both needs --out");
        }
        Ok(())
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("SEPGEOM_THREADS") {
        let n: usize = v
            .parse()
            .with_context(|| format!("SEPGEOM_THREADS={v} is not a number"))?;
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn emit(cli: &Cli, outcome: &commands::Outcome) -> Result<()> {
    let cfg = &cli.config;
    let json = outcome.report.to_json();
    let svg = || {
        outcome
            .scene
            .as_ref()
            .map(|s| s.render())
            .context("this command produces no figure; use --format json")
    };
    match (cfg.format, &cfg.out) {
        (Format::Json, None) => std::io::stdout().write_all(json.as_bytes())?,
        (Format::Json, Some(p)) => fs::write(p, json)?,
        (Format::Svg, None) => std::io::stdout().write_all(svg()?.as_bytes())?,
        (Format::Svg, Some(p)) => fs::write(p, svg()?)?,
        (Format::Both, Some(p)) => {
            fs::write(p.with_extension("json"), json)?;
            fs::write(p.with_extension("svg"), svg()?)?;
        }
        (Format::Both, None) => unreachable!("rejected by validate"),
    }
    Ok(())
}

/// Runs a parsed command line and returns the report plus figure.
pub fn execute(cli: &Cli) -> Result<commands::Outcome> {
    cli.config.validate()?;
    configure_threads()?;
    let start = Instant::now();
    let mut outcome = commands::run(&cli.command, &cli.config)?;
    if cli.config.timing {
        outcome.report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(outcome)
}

/// Full program: parse, run, write; returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { 0 };
        }
    };
    match execute(&cli).and_then(|o| emit(&cli, &o).map(|_| o)) {
        Ok(o) => o.report.status.exit_code(),
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_INPUT
        }
    }
}
