//! Memory-lifetime measurement protocol.
//!
//! A shot initializes one sector in its ground state (no errors), evolves it
//! thermally with the kinetic Monte Carlo engine, and at every multiple of
//! the readout interval `T_ec` extracts the syndrome, decodes it, and asks
//! whether the residual (true error plus proposed correction) acts on the
//! encoded information. No recovery is ever applied; the physical state
//! keeps evolving and only the verdict is recorded. The shot's lifetime is
//! the time of the first failing readout. Shots that survive the interval
//! cap are right-censored and flagged.
//!
//! [`LifetimeRunner`] holds the immutable pieces (sector model, rate table,
//! logical checker, decoder template) so shots can run on worker threads
//! with nothing shared but `&self`.

use crate::decode::{BpOsd, BpOsdOptions, DecoderPriors};
use crate::f2::BitVector;
use crate::kmc::{BinTracker, KmcEngine, KmcOptions, RateKind, RateTable, SectorModel};
use crate::math;
use crate::product::{CssCode, LogicalChecker, Sector};
use crate::rng::SplitMix64;
use alloc::vec::Vec;

/// Where decoder priors come from during a run.
#[derive(Debug, Clone, PartialEq)]
pub enum PriorSpec {
    /// Same flip probability at every readout.
    Uniform(f64),
    /// Per-qubit relaxation times; the flip probability grows with the
    /// decode-time argument.
    Relaxation { taus: Vec<f64> },
}

impl PriorSpec {
    fn at(&self, n: usize, t_decode: f64) -> DecoderPriors {
        match self {
            Self::Uniform(p) => DecoderPriors::uniform(n, *p),
            Self::Relaxation { taus } => {
                assert_eq!(taus.len(), n, "one relaxation time per qubit");
                DecoderPriors::from_relaxation(taus, t_decode)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct LifetimeOptions {
    /// Readout interval in inverse-rate units.
    pub t_ec: f64,
    /// Right-censoring cap: a shot surviving this many readouts stops.
    pub max_intervals: u64,
    /// Evaluate relaxation priors at the cumulative elapsed time of each
    /// readout (the decoder sees all flips since t = 0). When false, priors
    /// are evaluated at `t_ec` regardless of the readout index.
    pub cumulative_priors: bool,
    pub decoder: BpOsdOptions,
    pub kmc: KmcOptions,
}

impl LifetimeOptions {
    pub fn new(t_ec: f64) -> Self {
        assert!(t_ec > 0.0, "readout interval must be positive");
        Self {
            t_ec,
            max_intervals: 1 << 20,
            cumulative_priors: true,
            decoder: BpOsdOptions::default(),
            kmc: KmcOptions::default(),
        }
    }
}

/// Outcome of a single shot.
#[derive(Debug, Clone, PartialEq)]
pub struct ShotOutcome {
    /// Time of the first failing readout, or of the last readout when
    /// censored.
    pub failure_time: f64,
    /// Readouts performed, including the failing one.
    pub intervals: u64,
    /// The shot hit the interval cap without failing.
    pub censored: bool,
    /// KMC steps consumed.
    pub steps: u64,
    /// Largest physical error density seen at a *surviving* readout.
    pub max_surviving_density: f64,
    /// Error density at the final readout, failing or censored.
    pub final_density: f64,
}

/// Aggregate over an ensemble of shots.
#[derive(Debug, Clone, PartialEq)]
pub struct LifetimeSummary {
    pub shots: usize,
    pub censored: usize,
    /// Mean failure time over uncensored shots; `None` when every shot was
    /// censored. Censored shots are excluded, not imputed.
    pub mean: Option<f64>,
    /// Standard error of that mean (sample standard deviation over the
    /// square root of the uncensored count).
    pub stderr: Option<f64>,
    /// Mean of `min(failure_time, cap)` over all shots, where cap is the
    /// censoring horizon. Well-defined with censoring and monotone-safe
    /// for trend comparisons.
    pub restricted_mean: f64,
    pub max_surviving_density: f64,
}

/// Reduces shot outcomes to ensemble statistics.
pub fn summarize(outcomes: &[ShotOutcome]) -> LifetimeSummary {
    assert!(!outcomes.is_empty(), "no shots to summarize");
    let uncensored: Vec<f64> = outcomes
        .iter()
        .filter(|o| !o.censored)
        .map(|o| o.failure_time)
        .collect();
    let (mean, stderr) = if uncensored.is_empty() {
        (None, None)
    } else {
        let n = uncensored.len() as f64;
        let mean = uncensored.iter().sum::<f64>() / n;
        let stderr = if uncensored.len() > 1 {
            let var =
                uncensored.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>() / (n - 1.0);
            Some(math::sqrt(var / n))
        } else {
            Some(0.0)
        };
        (Some(mean), stderr)
    };
    let restricted_mean =
        outcomes.iter().map(|o| o.failure_time).sum::<f64>() / outcomes.len() as f64;
    let max_surviving_density = outcomes
        .iter()
        .map(|o| o.max_surviving_density)
        .fold(0.0f64, f64::max);
    LifetimeSummary {
        shots: outcomes.len(),
        censored: outcomes.iter().filter(|o| o.censored).count(),
        mean,
        stderr,
        restricted_mean,
        max_surviving_density,
    }
}

/// Immutable per-experiment state; shots borrow it concurrently.
#[derive(Debug, Clone)]
pub struct LifetimeRunner {
    model: SectorModel,
    table: RateTable,
    checker: LogicalChecker,
    decoder: BpOsd,
    priors: PriorSpec,
    options: LifetimeOptions,
}

impl LifetimeRunner {
    pub fn new(
        css: &CssCode,
        sector: Sector,
        kind: RateKind,
        beta: f64,
        priors: PriorSpec,
        options: LifetimeOptions,
    ) -> Self {
        let h = css.matrix(sector);
        let model = SectorModel::new(h);
        let table = RateTable::new(kind, beta, model.max_degree());
        let checker = css.logical_checker(sector);
        let decoder = BpOsd::new(h, options.decoder);
        Self { model, table, checker, decoder, priors, options }
    }

    pub fn options(&self) -> &LifetimeOptions {
        &self.options
    }

    pub fn set_t_ec(&mut self, t_ec: f64) {
        assert!(t_ec > 0.0);
        self.options.t_ec = t_ec;
    }

    pub fn num_qubits(&self) -> usize {
        self.model.num_qubits()
    }

    /// Runs one shot on the stream derived from `(run_seed, shot)`.
    pub fn run_shot(&self, run_seed: u64, shot: u64) -> ShotOutcome {
        let mut rng = SplitMix64::for_shot(run_seed, shot);
        let mut engine =
            KmcEngine::<BinTracker>::new(self.model.clone(), self.table.clone(), self.options.kmc);
        let mut decoder = self.decoder.clone();
        let n = self.model.num_qubits() as f64;
        let mut max_surviving_density = 0.0f64;
        for k in 1..=self.options.max_intervals {
            let t_readout = k as f64 * self.options.t_ec;
            engine.advance_to(t_readout, &mut rng);
            let (failed, density) =
                self.readout(&mut decoder, &engine, t_readout, n);
            if failed {
                return ShotOutcome {
                    failure_time: t_readout,
                    intervals: k,
                    censored: false,
                    steps: engine.stats().steps,
                    max_surviving_density,
                    final_density: density,
                };
            }
            if density > max_surviving_density {
                max_surviving_density = density;
            }
        }
        let intervals = self.options.max_intervals;
        let final_density = engine.error().weight() as f64 / n;
        ShotOutcome {
            failure_time: intervals as f64 * self.options.t_ec,
            intervals,
            censored: true,
            steps: engine.stats().steps,
            max_surviving_density,
            final_density,
        }
    }

    fn readout(
        &self,
        decoder: &mut BpOsd,
        engine: &KmcEngine<BinTracker>,
        t_readout: f64,
        n: f64,
    ) -> (bool, f64) {
        let t_decode = if self.options.cumulative_priors {
            t_readout
        } else {
            self.options.t_ec
        };
        let priors = self.priors.at(self.model.num_qubits(), t_decode);
        let result = decoder
            .decode(engine.syndrome(), &priors)
            .expect("syndromes of real error patterns are consistent");
        let mut residual: BitVector = engine.error().clone();
        residual.xor_assign(&result.correction);
        let density = engine.error().weight() as f64 / n;
        (self.checker.is_failure(&residual), density)
    }

    /// Picks a readout interval from pilot shots: each pilot decodes at
    /// geometrically spaced times (factor 2, starting near the first-flip
    /// scale), takes the first failing readout as its lifetime estimate,
    /// and the mean over pilots is divided by 128 so a typical shot sees on
    /// the order of a hundred readouts. The same value should be reused
    /// across code sizes at a fixed temperature for fair comparisons.
    pub fn pilot_t_ec(&self, pilot_shots: u64, run_seed: u64) -> f64 {
        assert!(pilot_shots >= 1);
        // Ground-state total rate sets the time scale of the first flip.
        let probe = KmcEngine::<BinTracker>::new(
            self.model.clone(),
            self.table.clone(),
            self.options.kmc,
        );
        let t0 = 4.0 / probe.census_total();
        let mut total = 0.0;
        for shot in 0..pilot_shots {
            let mut rng = SplitMix64::for_shot(run_seed ^ 0x70696c6f74, shot);
            let mut engine = KmcEngine::<BinTracker>::new(
                self.model.clone(),
                self.table.clone(),
                self.options.kmc,
            );
            let mut decoder = self.decoder.clone();
            let mut t = t0;
            let n = self.model.num_qubits() as f64;
            for _ in 0..60 {
                engine.advance_to(t, &mut rng);
                let (failed, _) = self.readout(&mut decoder, &engine, t, n);
                if failed {
                    break;
                }
                t *= 2.0;
            }
            total += t;
        }
        total / pilot_shots as f64 / 128.0
    }
}
