use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{ensure, Context, Result};
use clap::Args;
use cored::decode::{fit_relaxation_time, DecoderPriors};
use cored::kmc::{BinTracker, KmcEngine, KmcOptions, RateTable, SectorModel};
use cored::rng::SplitMix64;
use rayon::prelude::*;

use crate::formats::{load_code, write_priors, LoadedCode, PriorEntry};
use crate::{worker_pool, DynamicsArg, SectorArg};

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    /// Code JSON (classical or CSS).
    #[arg(long)]
    pub code: PathBuf,

    /// Sector to calibrate for CSS inputs (default X).
    #[arg(long, value_enum)]
    pub sector: Option<SectorArg>,

    /// Inverse temperature.
    #[arg(long)]
    pub beta: f64,

    #[arg(long, value_enum, default_value_t = DynamicsArg::Metropolis)]
    pub dynamics: DynamicsArg,

    /// Independent trajectories to average flip fractions over.
    #[arg(long, default_value_t = 256)]
    pub shots: u64,

    /// Latest sample time.
    #[arg(long)]
    pub max_time: f64,

    /// Number of sample times, spaced uniformly up to --max-time.
    #[arg(long, default_value_t = 20)]
    pub num_times: usize,

    /// Decode time the output flip probabilities are evaluated at.
    #[arg(long)]
    pub t_decode: f64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Output priors JSON.
    #[arg(long)]
    pub out: PathBuf,

    /// Optional flip-fraction curves CSV (qubit, time, fraction).
    #[arg(long)]
    pub curves: Option<PathBuf>,
}

pub fn run(args: &CalibrateArgs) -> Result<()> {
    ensure!(args.max_time > 0.0, "--max-time must be positive");
    ensure!(args.num_times >= 1, "--num-times must be at least 1");
    ensure!(args.shots >= 1, "--shots must be at least 1");
    let loaded = load_code(&args.code)?;
    let h = match &loaded {
        LoadedCode::Classical(c) => c.h.clone(),
        LoadedCode::Css(c) => {
            let sector = args.sector.unwrap_or(SectorArg::X);
            c.css.matrix(sector.into()).clone()
        }
    };
    let model = SectorModel::new(&h);
    let n = model.num_qubits();
    let table = RateTable::new(args.dynamics.into(), args.beta, model.max_degree());
    let times: Vec<f64> = (1..=args.num_times)
        .map(|j| args.max_time * j as f64 / args.num_times as f64)
        .collect();

    // One flat flip-count table per shot, summed across the pool.
    let pool = worker_pool()?;
    let counts: Vec<u64> = pool.install(|| {
        (0..args.shots)
            .into_par_iter()
            .map(|shot| {
                let mut rng = SplitMix64::for_shot(args.seed, shot);
                let mut engine = KmcEngine::<BinTracker>::new(
                    model.clone(),
                    table.clone(),
                    KmcOptions::default(),
                );
                let mut local = vec![0u64; n * times.len()];
                for (j, &t) in times.iter().enumerate() {
                    engine.advance_to(t, &mut rng);
                    for q in engine.error().iter_ones() {
                        local[q * times.len() + j] += 1;
                    }
                }
                local
            })
            .reduce(
                || vec![0u64; n * times.len()],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(&b) {
                        *x += y;
                    }
                    a
                },
            )
    });

    let fractions: Vec<Vec<f64>> = (0..n)
        .map(|q| {
            times
                .iter()
                .enumerate()
                .map(|(j, _)| counts[q * times.len() + j] as f64 / args.shots as f64)
                .collect()
        })
        .collect();
    let taus: Vec<f64> = fractions
        .iter()
        .map(|curve| {
            let samples: Vec<(f64, f64)> =
                times.iter().copied().zip(curve.iter().copied()).collect();
            fit_relaxation_time(&samples).tau
        })
        .collect();
    let priors = DecoderPriors::from_relaxation(&taus, args.t_decode);
    let entries: Vec<PriorEntry> = (0..n)
        .map(|q| PriorEntry {
            qubit: q,
            tau: taus[q].is_finite().then_some(taus[q]),
            p: priors.get(q),
        })
        .collect();
    write_priors(&args.out, &entries)?;

    if let Some(curves_path) = &args.curves {
        let mut csv = String::from("qubit,time,fraction\n");
        for q in 0..n {
            for (j, &t) in times.iter().enumerate() {
                writeln!(csv, "{q},{t},{}", fractions[q][j]).expect("string writes cannot fail");
            }
        }
        std::fs::write(curves_path, csv)
            .with_context(|| format!("writing {}", curves_path.display()))?;
    }

    let finite: Vec<f64> = taus.iter().copied().filter(|t| t.is_finite()).collect();
    let span = match (
        finite.iter().copied().reduce(f64::min),
        finite.iter().copied().reduce(f64::max),
    ) {
        (Some(lo), Some(hi)) => format!("tau in [{lo:.3}, {hi:.3}]"),
        _ => String::from("no qubit flipped"),
    };
    println!(
        "calibrated {n} qubits over {} shots x {} times: {span}",
        args.shots,
        times.len()
    );
    Ok(())
}
