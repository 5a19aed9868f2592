//! Command-line front end for the cored toolkit.
//!
//! The binary exposes one subcommand per stage of the workflow: `build`
//! classical codes, `product` them into CSS codes, `core` away the inert
//! scaffolding, probe `barrier` heights, run `kmc` dynamics, `calibrate`
//! decoder priors, `decode` single syndromes, measure memory `lifetime`
//! curves, and `export` artifacts to plain formats.

pub mod commands;
pub mod families;
pub mod formats;

use anyhow::{ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cored::kmc::RateKind;
use cored::product::Sector;

#[derive(Parser)]
#[command(
    name = "cored",
    version,
    about = "Cored product quantum memories: construction, dynamics, decoding, lifetimes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Build a classical code from a named family.
    Build(commands::build::BuildArgs),
    /// Hypergraph product of two classical codes.
    Product(commands::product::ProductArgs),
    /// Core a CSS code down to the carrier of its logicals.
    Core(commands::coring::CoreArgs),
    /// Energy barriers of classical codewords.
    Barrier(commands::barrier::BarrierArgs),
    /// Kinetic Monte Carlo trajectory of the thermal sector dynamics.
    Kmc(commands::kmc::KmcArgs),
    /// Fit per-qubit relaxation times and decoder priors from short runs.
    Calibrate(commands::calibrate::CalibrateArgs),
    /// Decode one syndrome with BP-OSD.
    Decode(commands::decode::DecodeArgs),
    /// Measure memory lifetimes across temperatures.
    Lifetime(commands::lifetime::LifetimeArgs),
    /// Export stored artifacts (matrices, codewords, logicals, tilings).
    Export(commands::export::ExportArgs),
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Build(args) => commands::build::run(&args),
        Command::Product(args) => commands::product::run(&args),
        Command::Core(args) => commands::coring::run(&args),
        Command::Barrier(args) => commands::barrier::run(&args),
        Command::Kmc(args) => commands::kmc::run(&args),
        Command::Calibrate(args) => commands::calibrate::run(&args),
        Command::Decode(args) => commands::decode::run(&args),
        Command::Lifetime(args) => commands::lifetime::run(&args),
        Command::Export(args) => commands::export::run(&args),
    }
}

/// Error-syndrome sector of a CSS code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SectorArg {
    X,
    Z,
}

impl From<SectorArg> for Sector {
    fn from(arg: SectorArg) -> Sector {
        match arg {
            SectorArg::X => Sector::X,
            SectorArg::Z => Sector::Z,
        }
    }
}

/// Single-flip acceptance rule of the thermal dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DynamicsArg {
    Metropolis,
    Glauber,
}

impl From<DynamicsArg> for RateKind {
    fn from(arg: DynamicsArg) -> RateKind {
        match arg {
            DynamicsArg::Metropolis => RateKind::Metropolis,
            DynamicsArg::Glauber => RateKind::Glauber,
        }
    }
}

/// Worker pool honoring the `CORED_WORKERS` environment variable; rayon's
/// default (one thread per CPU) applies when the variable is unset.
pub fn worker_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var("CORED_WORKERS") {
        let workers: usize = value
            .trim()
            .parse()
            .context("CORED_WORKERS must be a positive integer")?;
        ensure!(workers >= 1, "CORED_WORKERS must be at least 1");
        builder = builder.num_threads(workers);
    }
    builder.build().context("building the worker pool")
}
