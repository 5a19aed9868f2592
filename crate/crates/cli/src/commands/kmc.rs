use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use cored::kmc::{
    ArrayTracker, BinTracker, FenwickTracker, KmcEngine, KmcOptions, RateTable, SectorModel,
    TransitionTracker,
};
use cored::rng::SplitMix64;
use cored::BinaryMatrix;

use crate::formats::{load_code, LoadedCode};
use crate::{DynamicsArg, SectorArg};

/// Data structure tracking the total transition rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TrackerArg {
    /// Rate bins per energy shift; constant-size updates.
    Binning,
    /// Fenwick tree over per-qubit rates.
    Fenwick,
    /// Flat array rescanned on every step.
    Array,
}

#[derive(Debug, Args)]
pub struct KmcArgs {
    /// Code JSON (classical or CSS).
    #[arg(long)]
    pub code: PathBuf,

    /// Sector to simulate for CSS inputs (default X).
    #[arg(long, value_enum)]
    pub sector: Option<SectorArg>,

    /// Inverse temperature.
    #[arg(long)]
    pub beta: f64,

    #[arg(long, value_enum, default_value_t = DynamicsArg::Metropolis)]
    pub dynamics: DynamicsArg,

    /// Number of flips to simulate (exclusive with --time).
    #[arg(long)]
    pub steps: Option<u64>,

    /// Physical end time in inverse attempt-rate units (exclusive with
    /// --steps).
    #[arg(long)]
    pub time: Option<f64>,

    #[arg(long, value_enum, default_value_t = TrackerArg::Binning)]
    pub tracker: TrackerArg,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Trajectory CSV with columns step, t, energy, density.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Number of trajectory rows to record.
    #[arg(long, default_value_t = 1000)]
    pub snapshots: u64,
}

enum Budget {
    Steps(u64),
    Time(f64),
}

struct Trajectory {
    csv: String,
    steps: u64,
    time: f64,
    energy: usize,
    density: f64,
    resyncs: u64,
}

fn simulate<T: TransitionTracker>(h: &BinaryMatrix, args: &KmcArgs, budget: &Budget) -> Trajectory {
    let model = SectorModel::new(h);
    let n = model.num_qubits();
    let table = RateTable::new(args.dynamics.into(), args.beta, model.max_degree());
    let mut engine = KmcEngine::<T>::new(model, table, KmcOptions::default());
    let mut rng = SplitMix64::new(args.seed);
    let mut csv = String::from("step,t,energy,density\n");
    let mut record = |engine: &KmcEngine<T>| {
        let stats = engine.stats();
        writeln!(
            csv,
            "{},{},{},{}",
            stats.steps,
            engine.time(),
            engine.energy(),
            engine.error().weight() as f64 / n as f64
        )
        .expect("string writes cannot fail");
    };
    record(&engine);
    match *budget {
        Budget::Steps(steps) => {
            let every = (steps / args.snapshots.max(1)).max(1);
            for s in 1..=steps {
                engine.step(&mut rng);
                if s % every == 0 || s == steps {
                    record(&engine);
                }
            }
        }
        Budget::Time(t_end) => {
            let slices = args.snapshots.max(1);
            for i in 1..=slices {
                engine.advance_to(t_end * i as f64 / slices as f64, &mut rng);
                record(&engine);
            }
        }
    }
    let stats = engine.stats();
    Trajectory {
        csv,
        steps: stats.steps,
        time: engine.time(),
        energy: engine.energy(),
        density: engine.error().weight() as f64 / n as f64,
        resyncs: stats.resyncs,
    }
}

pub fn run(args: &KmcArgs) -> Result<()> {
    let budget = match (args.steps, args.time) {
        (Some(s), None) => Budget::Steps(s),
        (None, Some(t)) => Budget::Time(t),
        _ => bail!("pass exactly one of --steps or --time"),
    };
    let loaded = load_code(&args.code)?;
    let h: BinaryMatrix = match &loaded {
        LoadedCode::Classical(c) => c.h.clone(),
        LoadedCode::Css(c) => {
            let sector = args.sector.unwrap_or(SectorArg::X);
            c.css.matrix(sector.into()).clone()
        }
    };
    let result = match args.tracker {
        TrackerArg::Binning => simulate::<BinTracker>(&h, args, &budget),
        TrackerArg::Fenwick => simulate::<FenwickTracker>(&h, args, &budget),
        TrackerArg::Array => simulate::<ArrayTracker>(&h, args, &budget),
    };
    if let Some(out) = &args.out {
        std::fs::write(out, &result.csv)
            .with_context(|| format!("writing {}", out.display()))?;
    }
    println!(
        "{}: {} steps, t = {:.6}, energy = {}, density = {:.4}, resyncs = {}",
        loaded.name(),
        result.steps,
        result.time,
        result.energy,
        result.density,
        result.resyncs
    );
    Ok(())
}
