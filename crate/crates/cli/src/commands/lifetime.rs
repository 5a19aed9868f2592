use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, ensure, Context, Result};
use clap::Args;
use cored::decode::BpOsdOptions;
use cored::lifetime::{summarize, LifetimeOptions, LifetimeRunner, PriorSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::commands::write_json;
use crate::formats::{load_code, priors_taus, read_priors};
use crate::{worker_pool, DynamicsArg, SectorArg};

#[derive(Debug, Args)]
pub struct LifetimeArgs {
    /// Experiment config JSON; explicit flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// CSS code JSON.
    #[arg(long)]
    pub code: Option<PathBuf>,

    /// Sector whose thermal flips are simulated (default X).
    #[arg(long, value_enum)]
    pub sector: Option<SectorArg>,

    /// Inverse temperature; repeat for a sweep.
    #[arg(long = "beta")]
    pub betas: Vec<f64>,

    #[arg(long, value_enum)]
    pub dynamics: Option<DynamicsArg>,

    /// Shots per temperature.
    #[arg(long)]
    pub shots: Option<u64>,

    #[arg(long)]
    pub seed: Option<u64>,

    /// Fixed readout interval (exclusive with --auto-t-ec).
    #[arg(long)]
    pub t_ec: Option<f64>,

    /// Set the readout interval per temperature from pilot shots.
    #[arg(long)]
    pub auto_t_ec: bool,

    /// Pilot shots behind --auto-t-ec.
    #[arg(long)]
    pub pilot_shots: Option<u64>,

    /// Right-censoring cap on readout intervals per shot.
    #[arg(long)]
    pub max_intervals: Option<u64>,

    /// Uniform decoder prior (exclusive with --priors).
    #[arg(long)]
    pub uniform_prior: Option<f64>,

    /// Per-qubit priors JSON from `calibrate` (exclusive with
    /// --uniform-prior).
    #[arg(long)]
    pub priors: Option<PathBuf>,

    /// Evaluate relaxation priors at t_ec instead of the cumulative
    /// elapsed time.
    #[arg(long)]
    pub fixed_prior_time: bool,

    /// Message-passing iterations per decode.
    #[arg(long)]
    pub iters: Option<usize>,

    /// Ordered-statistics search order per decode.
    #[arg(long)]
    pub osd_order: Option<usize>,

    /// Per-shot CSV output.
    #[arg(long)]
    pub out_csv: Option<PathBuf>,

    /// Per-temperature summary JSON output.
    #[arg(long)]
    pub out_json: Option<PathBuf>,
}

/// File form of the experiment: every field optional, flags win over it.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub code: Option<PathBuf>,
    pub sector: Option<SectorArg>,
    pub betas: Vec<f64>,
    pub dynamics: Option<DynamicsArg>,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    pub t_ec: Option<f64>,
    pub auto_t_ec: Option<bool>,
    pub pilot_shots: Option<u64>,
    pub max_intervals: Option<u64>,
    pub uniform_prior: Option<f64>,
    pub priors: Option<PathBuf>,
    pub fixed_prior_time: Option<bool>,
    pub iters: Option<usize>,
    pub osd_order: Option<usize>,
    pub out_csv: Option<PathBuf>,
    pub out_json: Option<PathBuf>,
}

struct Resolved {
    code: PathBuf,
    sector: SectorArg,
    betas: Vec<f64>,
    dynamics: DynamicsArg,
    shots: u64,
    seed: u64,
    t_ec: Option<f64>,
    auto_t_ec: bool,
    pilot_shots: u64,
    max_intervals: u64,
    uniform_prior: Option<f64>,
    priors: Option<PathBuf>,
    cumulative_priors: bool,
    decoder: BpOsdOptions,
    out_csv: Option<PathBuf>,
    out_json: Option<PathBuf>,
}

fn resolve(args: &LifetimeArgs) -> Result<Resolved> {
    let config: ExperimentConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            serde_json::from_str(&text)
                .with_context(|| format!("parsing config {}", path.display()))?
        }
        None => ExperimentConfig::default(),
    };
    let betas = if args.betas.is_empty() { config.betas.clone() } else { args.betas.clone() };
    ensure!(!betas.is_empty(), "pass at least one --beta (or betas in the config)");
    let defaults = BpOsdOptions::default();
    Ok(Resolved {
        code: args
            .code
            .clone()
            .or(config.code)
            .context("pass --code (or code in the config)")?,
        sector: args.sector.or(config.sector).unwrap_or(SectorArg::X),
        betas,
        dynamics: args.dynamics.or(config.dynamics).unwrap_or(DynamicsArg::Metropolis),
        shots: args.shots.or(config.shots).unwrap_or(256),
        seed: args.seed.or(config.seed).unwrap_or(0),
        t_ec: args.t_ec.or(config.t_ec),
        auto_t_ec: args.auto_t_ec || config.auto_t_ec.unwrap_or(false),
        pilot_shots: args.pilot_shots.or(config.pilot_shots).unwrap_or(16),
        max_intervals: args.max_intervals.or(config.max_intervals).unwrap_or(4096),
        uniform_prior: args.uniform_prior.or(config.uniform_prior),
        priors: args.priors.clone().or(config.priors),
        cumulative_priors: !(args.fixed_prior_time || config.fixed_prior_time.unwrap_or(false)),
        decoder: BpOsdOptions {
            iters: args.iters.or(config.iters).unwrap_or(defaults.iters),
            osd_order: args.osd_order.or(config.osd_order).unwrap_or(defaults.osd_order),
        },
        out_csv: args.out_csv.clone().or(config.out_csv),
        out_json: args.out_json.clone().or(config.out_json),
    })
}

#[derive(Serialize)]
struct BetaSummary {
    beta: f64,
    t_ec: f64,
    shots: usize,
    censored: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stderr: Option<f64>,
    restricted_mean: f64,
    max_surviving_density: f64,
}

pub fn run(args: &LifetimeArgs) -> Result<()> {
    let resolved = resolve(args)?;
    let loaded = load_code(&resolved.code)?.into_css(&resolved.code)?;
    let n = loaded.file.n;
    let prior_spec = match (&resolved.priors, resolved.uniform_prior) {
        (Some(path), None) => PriorSpec::Relaxation { taus: priors_taus(&read_priors(path, n)?) },
        (None, Some(p)) => {
            ensure!(p > 0.0 && p <= 0.5, "--uniform-prior must lie in (0, 0.5]");
            PriorSpec::Uniform(p)
        }
        _ => bail!("pass exactly one of --priors or --uniform-prior"),
    };
    match (resolved.t_ec, resolved.auto_t_ec) {
        (Some(t), false) => ensure!(t > 0.0, "--t-ec must be positive"),
        (None, true) => {}
        (Some(_), true) => bail!("--t-ec and --auto-t-ec are exclusive"),
        (None, false) => bail!("pass --t-ec or --auto-t-ec"),
    }

    let pool = worker_pool()?;
    let mut csv = String::from(
        "beta,t_ec,shot,failure_time,censored,intervals,steps,max_surviving_density,final_density\n",
    );
    let mut summaries = Vec::with_capacity(resolved.betas.len());
    for (b_index, &beta) in resolved.betas.iter().enumerate() {
        ensure!(beta >= 0.0, "beta must be nonnegative");
        let mut options = LifetimeOptions::new(resolved.t_ec.unwrap_or(1.0));
        options.max_intervals = resolved.max_intervals;
        options.cumulative_priors = resolved.cumulative_priors;
        options.decoder = resolved.decoder;
        let mut runner = LifetimeRunner::new(
            &loaded.css,
            resolved.sector.into(),
            resolved.dynamics.into(),
            beta,
            prior_spec.clone(),
            options,
        );
        // Independent shot streams per temperature.
        let run_seed = resolved
            .seed
            .wrapping_add((b_index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        if resolved.auto_t_ec {
            let t_ec = runner.pilot_t_ec(resolved.pilot_shots, run_seed);
            runner.set_t_ec(t_ec);
        }
        let t_ec = runner.options().t_ec;
        let outcomes = pool.install(|| {
            (0..resolved.shots)
                .into_par_iter()
                .map(|shot| runner.run_shot(run_seed, shot))
                .collect::<Vec<_>>()
        });
        for (shot, o) in outcomes.iter().enumerate() {
            writeln!(
                csv,
                "{beta},{t_ec},{shot},{},{},{},{},{},{}",
                o.failure_time,
                o.censored,
                o.intervals,
                o.steps,
                o.max_surviving_density,
                o.final_density
            )
            .expect("string writes cannot fail");
        }
        let summary = summarize(&outcomes);
        println!(
            "beta {beta}: t_ec = {t_ec:.4}, restricted mean = {:.4}, censored {}/{}",
            summary.restricted_mean, summary.censored, summary.shots
        );
        summaries.push(BetaSummary {
            beta,
            t_ec,
            shots: summary.shots,
            censored: summary.censored,
            mean: summary.mean,
            stderr: summary.stderr,
            restricted_mean: summary.restricted_mean,
            max_surviving_density: summary.max_surviving_density,
        });
    }
    if let Some(path) = &resolved.out_csv {
        std::fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &resolved.out_json {
        write_json(path, &summaries)?;
    }
    Ok(())
}
