//! Rejection-free kinetic Monte Carlo over one CSS sector.
//!
//! The dynamics flips one qubit at a time. Flipping `q` changes the energy
//! (the number of violated checks) by an integer `delta_q` determined by the
//! current syndrome, and the flip happens at rate `rate(delta_q)` given by a
//! Metropolis or Glauber table. Rejection-free simulation picks the next
//! flip directly with probability proportional to its rate and advances time
//! by an exponential draw with the total rate, so low temperatures cost no
//! rejected moves.
//!
//! Total rates are accumulated two ways. Each [`TransitionTracker`] keeps
//! its own running total for *selection*; different trackers sum in
//! different orders and so disagree in the last float bits. *Time* always
//! uses the census total, a sum over the integer count of qubits at each
//! delta in fixed ascending order, which makes trajectories bit-identical
//! across trackers when the decisions are injected through
//! [`KmcEngine::step_with`]. Tracker drift against the census is checked at
//! a configurable resync interval.
//!
//! Per-step work depends only on the check degrees, not on the number of
//! qubits, for the Fenwick and binned trackers ([`ArrayTracker`] scans and
//! is the reference implementation).

use crate::f2::{BinaryMatrix, BitVector};
use crate::math;
use crate::rng::SplitMix64;
use alloc::vec;
use alloc::vec::Vec;

/// Single-flip acceptance-rate family, satisfying detailed balance at
/// inverse temperature `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateKind {
    /// `min(1, exp(-beta * delta))`.
    Metropolis,
    /// `1 / (1 + exp(beta * delta))`.
    Glauber,
}

/// Precomputed flip rates for every reachable integer energy change.
#[derive(Debug, Clone)]
pub struct RateTable {
    kind: RateKind,
    beta: f64,
    /// Rate for delta, indexed by `delta + max_delta`.
    rates: Vec<f64>,
    max_delta: i32,
}

impl RateTable {
    pub fn new(kind: RateKind, beta: f64, max_delta: usize) -> Self {
        let s = max_delta as i32;
        let rates = (-s..=s)
            .map(|delta| {
                let d = f64::from(delta);
                match kind {
                    RateKind::Metropolis => {
                        if delta <= 0 {
                            1.0
                        } else {
                            math::exp(-beta * d)
                        }
                    }
                    RateKind::Glauber => 1.0 / (1.0 + math::exp(beta * d)),
                }
            })
            .collect();
        Self { kind, beta, rates, max_delta: s }
    }

    pub fn kind(&self) -> RateKind {
        self.kind
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn max_delta(&self) -> i32 {
        self.max_delta
    }

    #[inline]
    pub fn rate(&self, delta: i32) -> f64 {
        self.rates[(delta + self.max_delta) as usize]
    }
}

/// One sector of a CSS code in the flat form the inner loop wants:
/// checks per qubit and qubits per check, in CSR layout.
#[derive(Debug, Clone)]
pub struct SectorModel {
    h: BinaryMatrix,
    qubit_check_offsets: Vec<u32>,
    qubit_checks: Vec<u32>,
    check_support_offsets: Vec<u32>,
    check_supports: Vec<u32>,
    max_degree: usize,
}

impl SectorModel {
    pub fn new(h: &BinaryMatrix) -> Self {
        let n = h.cols();
        let mut supports: Vec<Vec<u32>> = Vec::with_capacity(h.rows());
        let mut per_qubit: Vec<Vec<u32>> = vec![Vec::new(); n];
        for r in 0..h.rows() {
            let s: Vec<u32> = h.row_support(r).into_iter().map(|q| q as u32).collect();
            for &q in &s {
                per_qubit[q as usize].push(r as u32);
            }
            supports.push(s);
        }
        let max_degree = per_qubit.iter().map(Vec::len).max().unwrap_or(0);
        let flatten = |lists: &[Vec<u32>]| {
            let mut offsets = Vec::with_capacity(lists.len() + 1);
            let mut flat = Vec::new();
            offsets.push(0u32);
            for l in lists {
                flat.extend_from_slice(l);
                offsets.push(flat.len() as u32);
            }
            (offsets, flat)
        };
        let (qubit_check_offsets, qubit_checks) = flatten(&per_qubit);
        let (check_support_offsets, check_supports) = flatten(&supports);
        Self {
            h: h.clone(),
            qubit_check_offsets,
            qubit_checks,
            check_support_offsets,
            check_supports,
            max_degree,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.qubit_check_offsets.len() - 1
    }

    pub fn num_checks(&self) -> usize {
        self.check_support_offsets.len() - 1
    }

    /// Largest number of checks on any qubit; bounds every `|delta|`.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn matrix(&self) -> &BinaryMatrix {
        &self.h
    }

    #[inline]
    fn checks_of(&self, q: usize) -> &[u32] {
        let lo = self.qubit_check_offsets[q] as usize;
        let hi = self.qubit_check_offsets[q + 1] as usize;
        &self.qubit_checks[lo..hi]
    }

    #[inline]
    fn support_of(&self, c: usize) -> &[u32] {
        let lo = self.check_support_offsets[c] as usize;
        let hi = self.check_support_offsets[c + 1] as usize;
        &self.check_supports[lo..hi]
    }
}

/// Maintains per-qubit flip rates and answers weighted selection queries.
///
/// `total` is the tracker's own running estimate of the rate sum; `select`
/// must return a qubit whose cumulative rate interval contains `target`.
/// Implementations may accumulate float error; `resync` recomputes from
/// scratch and reports how far the running total had drifted.
pub trait TransitionTracker {
    fn new(deltas: &[i32], table: &RateTable) -> Self;
    fn update(&mut self, q: usize, old_delta: i32, new_delta: i32, table: &RateTable);
    fn total(&self, deltas: &[i32], table: &RateTable) -> f64;
    fn select(&self, target: f64, deltas: &[i32], table: &RateTable) -> usize;
    fn resync(&mut self, deltas: &[i32], table: &RateTable) -> f64;
}

/// Reference tracker: no state, linear scans for everything.
#[derive(Debug, Clone, Default)]
pub struct ArrayTracker;

impl TransitionTracker for ArrayTracker {
    fn new(_deltas: &[i32], _table: &RateTable) -> Self {
        Self
    }

    fn update(&mut self, _q: usize, _old: i32, _new: i32, _table: &RateTable) {}

    fn total(&self, deltas: &[i32], table: &RateTable) -> f64 {
        deltas.iter().map(|&d| table.rate(d)).sum()
    }

    fn select(&self, target: f64, deltas: &[i32], table: &RateTable) -> usize {
        let mut acc = 0.0;
        let mut last_live = 0;
        for (q, &d) in deltas.iter().enumerate() {
            let r = table.rate(d);
            if r > 0.0 {
                acc += r;
                last_live = q;
                if target < acc {
                    return q;
                }
            }
        }
        last_live
    }

    fn resync(&mut self, _deltas: &[i32], _table: &RateTable) -> f64 {
        0.0
    }
}

/// Fenwick-tree tracker: logarithmic updates and selection.
#[derive(Debug, Clone)]
pub struct FenwickTracker {
    tree: Vec<f64>,
    len: usize,
}

impl FenwickTracker {
    fn build(deltas: &[i32], table: &RateTable) -> Vec<f64> {
        let n = deltas.len();
        let mut tree = vec![0.0; n + 1];
        for (q, &d) in deltas.iter().enumerate() {
            let mut i = q + 1;
            let r = table.rate(d);
            while i <= n {
                tree[i] += r;
                i += i & i.wrapping_neg();
            }
        }
        tree
    }

    fn prefix(&self, mut i: usize) -> f64 {
        let mut acc = 0.0;
        while i > 0 {
            acc += self.tree[i];
            i &= i - 1;
        }
        acc
    }
}

impl TransitionTracker for FenwickTracker {
    fn new(deltas: &[i32], table: &RateTable) -> Self {
        Self {
            tree: Self::build(deltas, table),
            len: deltas.len(),
        }
    }

    fn update(&mut self, q: usize, old: i32, new: i32, table: &RateTable) {
        let diff = table.rate(new) - table.rate(old);
        let mut i = q + 1;
        while i <= self.len {
            self.tree[i] += diff;
            i += i & i.wrapping_neg();
        }
    }

    fn total(&self, _deltas: &[i32], _table: &RateTable) -> f64 {
        self.prefix(self.len)
    }

    fn select(&self, mut target: f64, _deltas: &[i32], _table: &RateTable) -> usize {
        let mut pos = 0usize;
        let mut mask = self.len.next_power_of_two();
        while mask > 0 {
            let next = pos + mask;
            if next <= self.len && self.tree[next] <= target {
                target -= self.tree[next];
                pos = next;
            }
            mask >>= 1;
        }
        pos.min(self.len - 1)
    }

    fn resync(&mut self, deltas: &[i32], table: &RateTable) -> f64 {
        let before = self.total(deltas, table);
        self.tree = Self::build(deltas, table);
        let after = self.total(deltas, table);
        math::abs(before - after)
    }
}

/// Binned tracker: qubits grouped by their current delta. Selection walks
/// the handful of bins in ascending delta order and lands inside one by an
/// integer offset, so updates and selection cost only the degree bound, not
/// the qubit count. Removal swaps with the bin's last element.
#[derive(Debug, Clone)]
pub struct BinTracker {
    /// Members per delta bin, indexed by `delta + max_delta`.
    bins: Vec<Vec<u32>>,
    /// Position of each qubit inside its bin.
    slot: Vec<u32>,
}

impl TransitionTracker for BinTracker {
    fn new(deltas: &[i32], table: &RateTable) -> Self {
        let s = table.max_delta();
        let mut bins = vec![Vec::new(); (2 * s + 1) as usize];
        let mut slot = vec![0u32; deltas.len()];
        for (q, &d) in deltas.iter().enumerate() {
            let b = (d + s) as usize;
            slot[q] = bins[b].len() as u32;
            bins[b].push(q as u32);
        }
        Self { bins, slot }
    }

    fn update(&mut self, q: usize, old: i32, new: i32, table: &RateTable) {
        if old == new {
            return;
        }
        let s = table.max_delta();
        let from = &mut self.bins[(old + s) as usize];
        let at = self.slot[q] as usize;
        let moved = *from.last().expect("bin holds the qubit being moved");
        from[at] = moved;
        self.slot[moved as usize] = at as u32;
        from.pop();
        let to = &mut self.bins[(new + s) as usize];
        self.slot[q] = to.len() as u32;
        to.push(q as u32);
    }

    fn total(&self, _deltas: &[i32], table: &RateTable) -> f64 {
        let s = table.max_delta();
        let mut acc = 0.0;
        for (b, members) in self.bins.iter().enumerate() {
            if !members.is_empty() {
                acc += members.len() as f64 * table.rate(b as i32 - s);
            }
        }
        acc
    }

    fn select(&self, target: f64, _deltas: &[i32], table: &RateTable) -> usize {
        let s = table.max_delta();
        let mut acc = 0.0;
        let mut fallback = None;
        for (b, members) in self.bins.iter().enumerate() {
            if members.is_empty() {
                continue;
            }
            let rate = table.rate(b as i32 - s);
            if rate <= 0.0 {
                continue;
            }
            fallback = Some(members);
            let width = members.len() as f64 * rate;
            if target < acc + width {
                let idx = (((target - acc) / rate) as usize).min(members.len() - 1);
                return members[idx] as usize;
            }
            acc += width;
        }
        let members = fallback.expect("some transition has positive rate");
        members[members.len() - 1] as usize
    }

    fn resync(&mut self, deltas: &[i32], table: &RateTable) -> f64 {
        let before = self.total(deltas, table);
        *self = Self::new(deltas, table);
        math::abs(before - self.total(deltas, table))
    }
}

/// Engine tuning knobs.
#[derive(Debug, Clone, Copy)]
pub struct KmcOptions {
    /// Steps between tracker resyncs against the census total.
    pub resync_interval: u64,
    /// Recompute the syndrome and every delta from scratch after each step
    /// and compare; catastrophically slow, for debugging the bookkeeping.
    pub paranoid: bool,
}

impl Default for KmcOptions {
    fn default() -> Self {
        Self {
            resync_interval: 1 << 20,
            paranoid: false,
        }
    }
}

/// Running counters; cheap enough to keep on unconditionally.
#[derive(Debug, Clone, Copy, Default)]
pub struct KmcStats {
    pub steps: u64,
    pub resyncs: u64,
    /// Largest tracker-vs-census drift seen at a resync, relative to the
    /// census total.
    pub max_relative_drift: f64,
    /// Syndrome, delta, census, and tracker entries touched by the latest
    /// flip plus its census-total scan.
    pub last_step_touches: u64,
    /// Maximum of `last_step_touches` over the run. Depends only on check
    /// degrees and the rate-table width, never on the number of qubits.
    pub max_step_touches: u64,
}

/// Rejection-free single-sector simulator.
#[derive(Debug, Clone)]
pub struct KmcEngine<T: TransitionTracker> {
    model: SectorModel,
    table: RateTable,
    options: KmcOptions,
    tracker: T,
    /// Current error pattern.
    w: BitVector,
    /// Current syndrome `H w`.
    e: BitVector,
    energy: usize,
    deltas: Vec<i32>,
    /// Number of qubits at each delta, indexed by `delta + max_delta`.
    census: Vec<u64>,
    time: f64,
    stats: KmcStats,
}

/// The production configuration.
pub type BinnedEngine = KmcEngine<BinTracker>;

impl<T: TransitionTracker> KmcEngine<T> {
    /// Start from the zero error pattern at time zero.
    ///
    /// # Panics
    ///
    /// Panics if the rate table's delta range is narrower than the model's
    /// maximum check degree.
    pub fn new(model: SectorModel, table: RateTable, options: KmcOptions) -> Self {
        assert!(
            table.max_delta() >= model.max_degree() as i32,
            "rate table covers deltas up to {}, model needs {}",
            table.max_delta(),
            model.max_degree()
        );
        let n = model.num_qubits();
        assert!(n > 0, "empty model");
        let deltas: Vec<i32> = (0..n).map(|q| model.checks_of(q).len() as i32).collect();
        let mut census = vec![0u64; (2 * table.max_delta() + 1) as usize];
        for &d in &deltas {
            census[(d + table.max_delta()) as usize] += 1;
        }
        let tracker = T::new(&deltas, &table);
        let e = BitVector::zeros(model.num_checks());
        let w = BitVector::zeros(n);
        Self {
            model,
            table,
            options,
            tracker,
            w,
            e,
            energy: 0,
            deltas,
            census,
            time: 0.0,
            stats: KmcStats::default(),
        }
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn energy(&self) -> usize {
        self.energy
    }

    pub fn error(&self) -> &BitVector {
        &self.w
    }

    pub fn syndrome(&self) -> &BitVector {
        &self.e
    }

    pub fn stats(&self) -> KmcStats {
        self.stats
    }

    pub fn model(&self) -> &SectorModel {
        &self.model
    }

    pub fn delta(&self, q: usize) -> i32 {
        self.deltas[q]
    }

    /// Census total rate: integer qubit counts per delta times the rate
    /// table, summed in ascending delta order. Identical across trackers.
    pub fn census_total(&self) -> f64 {
        let s = self.table.max_delta();
        let mut acc = 0.0;
        for (b, &count) in self.census.iter().enumerate() {
            if count > 0 {
                acc += count as f64 * self.table.rate(b as i32 - s);
            }
        }
        acc
    }

    /// `census_total` with a panic when every transition has rate zero,
    /// which only happens when `exp(-beta * delta)` underflows for every
    /// occupied delta.
    fn positive_total(&self) -> f64 {
        let r = self.census_total();
        assert!(r > 0.0, "no transition has positive rate; beta too large for f64");
        r
    }

    /// Advance one flip with random decisions. Returns the flipped qubit.
    pub fn step(&mut self, rng: &mut SplitMix64) -> usize {
        let u_time = rng.next_f64();
        let target = rng.next_f64() * self.tracker.total(&self.deltas, &self.table);
        let q = self.tracker.select(target, &self.deltas, &self.table);
        self.commit(u_time, q);
        q
    }

    /// Advance one flip with injected decisions: `u_time` in `[0, 1)` feeds
    /// the exponential holding time, `q` is the transition to take. Used to
    /// replay identical trajectories through different trackers.
    pub fn step_with(&mut self, u_time: f64, q: usize) {
        self.commit(u_time, q);
    }

    /// Run until `t_end`. The state is whatever the last flip before
    /// `t_end` left behind; the clock is then set to `t_end`, which is
    /// sound because the holding times are memoryless.
    pub fn advance_to(&mut self, t_end: f64, rng: &mut SplitMix64) {
        while self.time < t_end {
            let r = self.positive_total();
            let dt = -math::ln(1.0 - rng.next_f64()) / r;
            if self.time + dt > t_end {
                self.time = t_end;
                return;
            }
            let target = rng.next_f64() * self.tracker.total(&self.deltas, &self.table);
            let q = self.tracker.select(target, &self.deltas, &self.table);
            self.flip(q);
            self.time += dt;
            self.after_step();
        }
    }

    fn commit(&mut self, u_time: f64, q: usize) {
        let r = self.positive_total();
        self.time += -math::ln(1.0 - u_time) / r;
        self.flip(q);
        self.after_step();
    }

    fn after_step(&mut self) {
        self.stats.steps += 1;
        if self.options.resync_interval > 0
            && self.stats.steps % self.options.resync_interval == 0
        {
            let drift = self.tracker.resync(&self.deltas, &self.table);
            let census = self.census_total();
            let relative = if census > 0.0 { drift / census } else { 0.0 };
            if relative > self.stats.max_relative_drift {
                self.stats.max_relative_drift = relative;
            }
            self.stats.resyncs += 1;
        }
        if self.options.paranoid {
            self.check_consistency();
        }
    }

    /// Flip `q`, updating the syndrome, the energy, and the deltas of every
    /// qubit sharing a check with `q` (including `q` itself, whose delta
    /// negates). Work scales with the square of the check degree.
    fn flip(&mut self, q: usize) {
        self.w.flip(q);
        let s = self.table.max_delta();
        // The census-total scan for this step's holding time, then one
        // touch per (check, neighbour) pair below.
        let mut touches = self.census.len() as u64;
        for ci in 0..self.model.checks_of(q).len() {
            let c = self.model.checks_of(q)[ci] as usize;
            let was_violated = self.e.get(c);
            self.e.flip(c);
            let shift = if was_violated { 2 } else { -2 };
            if was_violated {
                self.energy -= 1;
            } else {
                self.energy += 1;
            }
            for pi in 0..self.model.support_of(c).len() {
                let p = self.model.support_of(c)[pi] as usize;
                let old = self.deltas[p];
                let new = old + shift;
                self.deltas[p] = new;
                self.census[(old + s) as usize] -= 1;
                self.census[(new + s) as usize] += 1;
                self.tracker.update(p, old, new, &self.table);
                touches += 1;
            }
        }
        self.stats.last_step_touches = touches;
        if touches > self.stats.max_step_touches {
            self.stats.max_step_touches = touches;
        }
    }

    /// Recompute the syndrome, energy, and deltas from scratch and compare
    /// with the incremental state.
    pub fn check_consistency(&self) {
        let e = self.model.matrix().mul_vector(&self.w);
        assert_eq!(e, self.e, "syndrome bookkeeping diverged");
        assert_eq!(e.weight(), self.energy, "energy bookkeeping diverged");
        for q in 0..self.model.num_qubits() {
            let mut delta = 0i32;
            for &c in self.model.checks_of(q) {
                delta += if self.e.get(c as usize) { -1 } else { 1 };
            }
            assert_eq!(delta, self.deltas[q], "delta bookkeeping diverged at {q}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slead::repetition_chain;

    fn depleted_rep_model(n: usize) -> SectorModel {
        let mut code = repetition_chain(n);
        code.deplete(0).unwrap();
        SectorModel::new(code.check_matrix())
    }

    #[test]
    fn rate_tables_satisfy_detailed_balance() {
        for kind in [RateKind::Metropolis, RateKind::Glauber] {
            let table = RateTable::new(kind, 1.3, 4);
            for delta in -4..=4i32 {
                let forward = table.rate(delta);
                let backward = table.rate(-delta);
                let expected = math::exp(-1.3 * f64::from(delta));
                assert!(
                    math::abs(forward / backward - expected) < 1e-12,
                    "{kind:?} delta {delta}"
                );
            }
        }
    }

    #[test]
    fn rate_table_endpoints_are_exact() {
        let met = RateTable::new(RateKind::Metropolis, 2.5, 3);
        // Every downhill or flat Metropolis move is capped at exactly 1, so
        // they can all share a bin without float comparisons.
        assert_eq!(met.rate(0), 1.0);
        assert_eq!(met.rate(-3), 1.0);
        let gla = RateTable::new(RateKind::Glauber, 2.5, 3);
        assert_eq!(gla.rate(0), 0.5);
    }

    #[test]
    fn infinite_temperature_clock_ticks_at_one_over_n() {
        let model = depleted_rep_model(5);
        let table = RateTable::new(RateKind::Metropolis, 0.0, model.max_degree());
        let mut engine = KmcEngine::<BinTracker>::new(model, table, KmcOptions::default());
        let mut rng = SplitMix64::new(21);
        let steps = 100_000;
        for _ in 0..steps {
            engine.step(&mut rng);
        }
        // All rates are 1, so R = n and holding times average 1/5.
        let mean_dt = engine.time() / steps as f64;
        assert!(math::abs(mean_dt * 5.0 - 1.0) < 0.02, "mean dt {mean_dt}");
    }

    #[test]
    fn initial_deltas_equal_degrees() {
        let model = depleted_rep_model(5);
        let table = RateTable::new(RateKind::Metropolis, 1.0, model.max_degree());
        let engine = KmcEngine::<ArrayTracker>::new(model, table, KmcOptions::default());
        // Interior qubits touch two checks, the chain ends touch one.
        assert_eq!(engine.deltas, vec![1, 2, 2, 2, 1]);
        assert_eq!(engine.energy(), 0);
    }

    #[test]
    fn paranoid_mode_validates_bookkeeping() {
        let model = depleted_rep_model(6);
        let table = RateTable::new(RateKind::Glauber, 0.7, model.max_degree());
        let options = KmcOptions { paranoid: true, resync_interval: 64 };
        let mut engine = KmcEngine::<BinTracker>::new(model, table, options);
        let mut rng = SplitMix64::new(11);
        for _ in 0..2000 {
            engine.step(&mut rng);
        }
        assert_eq!(engine.stats().steps, 2000);
    }

    #[test]
    fn trackers_replay_identical_trajectories() {
        let model = depleted_rep_model(7);
        let table = RateTable::new(RateKind::Metropolis, 0.9, model.max_degree());
        let mut array =
            KmcEngine::<ArrayTracker>::new(model.clone(), table.clone(), KmcOptions::default());
        let mut fenwick =
            KmcEngine::<FenwickTracker>::new(model.clone(), table.clone(), KmcOptions::default());
        let mut binned =
            KmcEngine::<BinTracker>::new(model, table, KmcOptions::default());
        let mut rng = SplitMix64::new(0xfeed);
        for step in 0..5000 {
            let u = rng.next_f64();
            let q = rng.next_index(7);
            array.step_with(u, q);
            fenwick.step_with(u, q);
            binned.step_with(u, q);
            assert_eq!(array.error(), binned.error(), "w at step {step}");
            assert_eq!(array.syndrome(), binned.syndrome(), "e at step {step}");
            assert_eq!(array.energy(), binned.energy(), "E at step {step}");
            assert_eq!(array.time().to_bits(), binned.time().to_bits(), "t at {step}");
            assert_eq!(array.time().to_bits(), fenwick.time().to_bits());
            assert_eq!(array.error(), fenwick.error());
        }
    }

    #[test]
    fn selection_matches_rates_on_all_trackers() {
        let model = depleted_rep_model(6);
        let table = RateTable::new(RateKind::Metropolis, 1.1, model.max_degree());
        // Walk into a nonuniform state first.
        let mut engine =
            KmcEngine::<ArrayTracker>::new(model.clone(), table.clone(), KmcOptions::default());
        let mut rng = SplitMix64::new(5);
        for _ in 0..13 {
            engine.step(&mut rng);
        }
        let deltas = engine.deltas.clone();
        let rates: Vec<f64> = deltas.iter().map(|&d| table.rate(d)).collect();
        let total: f64 = rates.iter().sum();

        let array = ArrayTracker::new(&deltas, &table);
        let fenwick = FenwickTracker::new(&deltas, &table);
        let binned = BinTracker::new(&deltas, &table);
        let draws = 200_000;
        let mut counts = [[0u64; 6]; 3];
        let mut rng = SplitMix64::new(99);
        for _ in 0..draws {
            let u = rng.next_f64();
            counts[0][array.select(u * array.total(&deltas, &table), &deltas, &table)] += 1;
            counts[1][fenwick.select(u * fenwick.total(&deltas, &table), &deltas, &table)] += 1;
            counts[2][binned.select(u * binned.total(&deltas, &table), &deltas, &table)] += 1;
        }
        for (t, tracker_counts) in counts.iter().enumerate() {
            for q in 0..6 {
                let expected = rates[q] / total * draws as f64;
                let got = tracker_counts[q] as f64;
                assert!(
                    math::abs(got - expected) < 5.0 * math::sqrt(expected.max(1.0)),
                    "tracker {t} qubit {q}: {got} vs {expected}"
                );
            }
        }
    }

    #[test]
    fn occupancy_approaches_boltzmann() {
        // Depleted 4-chain: 16 states, beta 1. Expected occupancy of state w
        // is proportional to exp(-beta * energy(w)); the simulator weights
        // each visited state by the expected holding time 1 / R.
        let model = depleted_rep_model(4);
        let h = model.matrix().clone();
        let beta = 1.0;
        let table = RateTable::new(RateKind::Glauber, beta, model.max_degree());
        let mut engine = KmcEngine::<BinTracker>::new(model, table, KmcOptions::default());
        let mut rng = SplitMix64::new(4242);
        let mut occupancy = [0.0f64; 16];
        let steps = 400_000;
        for _ in 0..steps {
            let state = engine.error().support().iter().fold(0usize, |acc, &q| acc | 1 << q);
            occupancy[state] += 1.0 / engine.census_total();
            engine.step(&mut rng);
        }
        let z: f64 = occupancy.iter().sum();
        let mut boltzmann = [0.0f64; 16];
        for (state, b) in boltzmann.iter_mut().enumerate() {
            let mut w = BitVector::zeros(4);
            for q in 0..4 {
                if state & (1 << q) != 0 {
                    w.set(q, true);
                }
            }
            *b = math::exp(-beta * h.mul_vector(&w).weight() as f64);
        }
        let zb: f64 = boltzmann.iter().sum();
        let tv: f64 = occupancy
            .iter()
            .zip(&boltzmann)
            .map(|(o, b)| math::abs(o / z - b / zb))
            .sum::<f64>()
            / 2.0;
        assert!(tv < 0.05, "total variation {tv}");
    }

    #[test]
    fn advance_to_stops_at_the_requested_time() {
        let model = depleted_rep_model(5);
        let table = RateTable::new(RateKind::Metropolis, 2.0, model.max_degree());
        let mut engine = KmcEngine::<BinTracker>::new(model, table, KmcOptions::default());
        let mut rng = SplitMix64::new(7);
        engine.advance_to(3.5, &mut rng);
        assert_eq!(engine.time(), 3.5);
        engine.advance_to(10.0, &mut rng);
        assert_eq!(engine.time(), 10.0);
        engine.check_consistency();
    }

    #[test]
    fn resync_reports_only_tiny_drift_at_low_temperature() {
        // A full default resync interval at beta = 8, where the Fenwick sums
        // mix magnitudes from 1 down to exp(-16) and drift is at its worst.
        let model = depleted_rep_model(6);
        let table = RateTable::new(RateKind::Metropolis, 8.0, model.max_degree());
        let mut engine =
            KmcEngine::<FenwickTracker>::new(model, table, KmcOptions::default());
        let mut rng = SplitMix64::new(3);
        for _ in 0..1u64 << 20 {
            engine.step(&mut rng);
        }
        let stats = engine.stats();
        assert_eq!(stats.resyncs, 1);
        assert!(stats.max_relative_drift < 1e-6, "drift {}", stats.max_relative_drift);
    }

    #[test]
    fn step_touches_depend_on_degree_not_size() {
        for n in [8usize, 64] {
            let model = depleted_rep_model(n);
            let table = RateTable::new(RateKind::Metropolis, 1.0, model.max_degree());
            let mut engine =
                KmcEngine::<BinTracker>::new(model, table, KmcOptions::default());
            let mut rng = SplitMix64::new(17);
            for _ in 0..2000 {
                engine.step(&mut rng);
            }
            // Census scan (5 bins) plus at most 2 checks x 2 neighbours.
            assert!(engine.stats().max_step_touches <= 9, "n = {n}");
        }
    }

    #[test]
    fn glauber_and_metropolis_differ_in_time_scale_only_here() {
        // Same decision stream: flips identical, holding times differ.
        let model = depleted_rep_model(4);
        let met = RateTable::new(RateKind::Metropolis, 1.0, model.max_degree());
        let gla = RateTable::new(RateKind::Glauber, 1.0, model.max_degree());
        let mut a = KmcEngine::<ArrayTracker>::new(model.clone(), met, KmcOptions::default());
        let mut b = KmcEngine::<ArrayTracker>::new(model, gla, KmcOptions::default());
        let mut rng = SplitMix64::new(1);
        for _ in 0..100 {
            let u = rng.next_f64();
            let q = rng.next_index(4);
            a.step_with(u, q);
            b.step_with(u, q);
        }
        assert_eq!(a.error(), b.error());
        assert!(a.time() < b.time(), "Glauber rates are smaller, time runs slower");
    }
}
