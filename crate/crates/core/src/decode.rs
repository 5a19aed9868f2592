//! Syndrome decoding: min-sum belief propagation with ordered-statistics
//! fallback, an exhaustive maximum-likelihood oracle for small codes, and
//! calibration of decoder priors from relaxation data.
//!
//! The BP stage runs a parallel (flooding) schedule with a decaying
//! scaling factor; if its hard decision reproduces the syndrome it is
//! returned as-is. Otherwise OSD takes over: columns are ranked by the BP
//! posterior (least reliable first), Gaussian elimination picks a pivot
//! basis, and the solver keeps the lowest-soft-weight solution among the
//! OSD-0 candidate and a combination sweep over the least-reliable free
//! positions. Every returned correction reproduces the syndrome exactly.
//!
//! Priors come either from a uniform flip probability or from per-qubit
//! relaxation times fitted to flip-fraction curves `p(t) = (1 - e^{-t/tau})/2`.

use crate::f2::{BinaryMatrix, BitVector};
use crate::math;
use crate::rng::SplitMix64;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

/// Log-likelihood ratios are clamped to this magnitude everywhere.
pub const LLR_CLAMP: f64 = 30.0;
/// Calibrated priors never go below this flip probability.
pub const PRIOR_FLOOR: f64 = 1e-6;
/// Calibrated priors never reach a coin flip.
pub const PRIOR_CEIL: f64 = 0.5 - 1e-6;

/// Largest kernel dimension the exhaustive oracle will enumerate.
const ML_KERNEL_LIMIT: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeError {
    /// Syndrome length does not match the check count.
    DimensionMismatch { expected: usize, got: usize },
    /// The syndrome is outside the column space of the check matrix, so no
    /// error pattern can explain it.
    InconsistentSyndrome,
    /// The solution space is too large to enumerate exhaustively.
    BudgetExceeded { kernel_dim: usize },
}

impl core::fmt::Display for DecodeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::DimensionMismatch { expected, got } => {
                write!(f, "syndrome length {got} does not match {expected} checks")
            }
            Self::InconsistentSyndrome => write!(f, "syndrome is not in the check image"),
            Self::BudgetExceeded { kernel_dim } => {
                write!(f, "kernel dimension {kernel_dim} exceeds the enumeration budget")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DecodeError {}

/// Per-qubit flip probabilities feeding the decoder.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoderPriors {
    p: Vec<f64>,
}

impl DecoderPriors {
    /// Same probability for every qubit.
    ///
    /// # Panics
    ///
    /// Panics unless `0 < p <= 0.5`.
    pub fn uniform(n: usize, p: f64) -> Self {
        Self::from_probabilities(vec![p; n])
    }

    /// # Panics
    ///
    /// Panics unless every probability is in `(0, 0.5]`.
    pub fn from_probabilities(p: Vec<f64>) -> Self {
        for (q, &pq) in p.iter().enumerate() {
            assert!(
                pq > 0.0 && pq <= 0.5,
                "prior {pq} for qubit {q} is outside (0, 0.5]"
            );
        }
        Self { p }
    }

    /// Priors for decoding at time `t_decode` given per-qubit relaxation
    /// times: `p = (1 - e^{-t/tau}) / 2`, clamped to
    /// `[PRIOR_FLOOR, PRIOR_CEIL]`. Infinite `tau` (no flips ever observed)
    /// lands on the floor.
    pub fn from_relaxation(taus: &[f64], t_decode: f64) -> Self {
        assert!(t_decode > 0.0, "decode time must be positive");
        let p = taus
            .iter()
            .map(|&tau| {
                let raw = if tau.is_finite() {
                    0.5 * (1.0 - math::exp(-t_decode / tau))
                } else {
                    0.0
                };
                raw.clamp(PRIOR_FLOOR, PRIOR_CEIL)
            })
            .collect();
        Self { p }
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn get(&self, q: usize) -> f64 {
        self.p[q]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }

    /// Channel log-likelihood ratio `ln((1-p)/p)`, clamped. Nonnegative
    /// since `p <= 0.5`, and strictly decreasing in `p`.
    pub fn llr(&self, q: usize) -> f64 {
        let p = self.p[q];
        math::ln((1.0 - p) / p).clamp(-LLR_CLAMP, LLR_CLAMP)
    }
}

/// Min-sum scaling factor for (1-based) iteration `i`: approaches 1 from
/// 1/2 in plateaus of two.
pub fn scaling_factor(i: usize) -> f64 {
    1.0 - math::powf(2.0, -(i.div_ceil(2) as f64))
}

#[derive(Debug, Clone, Copy)]
pub struct BpOsdOptions {
    /// Flooding iterations before falling back to OSD.
    pub iters: usize,
    /// Free positions covered by the OSD combination sweep.
    pub osd_order: usize,
}

impl Default for BpOsdOptions {
    fn default() -> Self {
        Self { iters: 100, osd_order: 10 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    /// Satisfies `H * correction = syndrome` exactly.
    pub correction: BitVector,
    /// BP's own hard decision reproduced the syndrome.
    pub converged: bool,
    /// The correction came from the OSD fallback.
    pub osd_used: bool,
    /// Hamming weight of the correction.
    pub weight: usize,
}

/// Reusable decoder for one check matrix. Holds the Tanner graph in flat
/// form plus message scratch, so clone one instance per worker thread.
#[derive(Debug, Clone)]
pub struct BpOsd {
    h: BinaryMatrix,
    options: BpOsdOptions,
    /// Edge endpoints, grouped by check.
    check_offsets: Vec<u32>,
    edge_qubit: Vec<u32>,
    /// Edge ids incident to each qubit.
    qubit_offsets: Vec<u32>,
    qubit_edges: Vec<u32>,
    /// Qubit-to-check messages, indexed by edge.
    q2c: Vec<f64>,
    /// Check-to-qubit messages, indexed by edge.
    c2q: Vec<f64>,
    posterior: Vec<f64>,
}

impl BpOsd {
    pub fn new(h: &BinaryMatrix, options: BpOsdOptions) -> Self {
        let mut check_offsets = Vec::with_capacity(h.rows() + 1);
        let mut edge_qubit = Vec::new();
        let mut per_qubit: Vec<Vec<u32>> = vec![Vec::new(); h.cols()];
        check_offsets.push(0u32);
        for r in 0..h.rows() {
            for q in h.row_support(r) {
                per_qubit[q].push(edge_qubit.len() as u32);
                edge_qubit.push(q as u32);
            }
            check_offsets.push(edge_qubit.len() as u32);
        }
        let mut qubit_offsets = Vec::with_capacity(h.cols() + 1);
        let mut qubit_edges = Vec::new();
        qubit_offsets.push(0u32);
        for edges in &per_qubit {
            qubit_edges.extend_from_slice(edges);
            qubit_offsets.push(qubit_edges.len() as u32);
        }
        let edges = edge_qubit.len();
        Self {
            h: h.clone(),
            options,
            check_offsets,
            edge_qubit,
            qubit_offsets,
            qubit_edges,
            q2c: vec![0.0; edges],
            c2q: vec![0.0; edges],
            posterior: vec![0.0; h.cols()],
        }
    }

    pub fn matrix(&self) -> &BinaryMatrix {
        &self.h
    }

    /// BP posteriors from the latest `decode` call; useful for diagnostics.
    pub fn posteriors(&self) -> &[f64] {
        &self.posterior
    }

    fn check_edges(&self, c: usize) -> core::ops::Range<usize> {
        self.check_offsets[c] as usize..self.check_offsets[c + 1] as usize
    }

    fn qubit_edge_ids(&self, q: usize) -> &[u32] {
        let lo = self.qubit_offsets[q] as usize;
        let hi = self.qubit_offsets[q + 1] as usize;
        &self.qubit_edges[lo..hi]
    }

    fn hard_decision(&self) -> BitVector {
        let mut x = BitVector::zeros(self.h.cols());
        for (q, &post) in self.posterior.iter().enumerate() {
            if post < 0.0 {
                x.set(q, true);
            }
        }
        x
    }

    fn satisfies(&self, x: &BitVector, syndrome: &BitVector) -> bool {
        for c in 0..self.h.rows() {
            let mut parity = false;
            for e in self.check_edges(c) {
                parity ^= x.get(self.edge_qubit[e] as usize);
            }
            if parity != syndrome.get(c) {
                return false;
            }
        }
        true
    }

    pub fn decode(
        &mut self,
        syndrome: &BitVector,
        priors: &DecoderPriors,
    ) -> Result<DecodeResult, DecodeError> {
        if syndrome.len() != self.h.rows() || priors.len() != self.h.cols() {
            return Err(DecodeError::DimensionMismatch {
                expected: self.h.rows(),
                got: syndrome.len(),
            });
        }
        let n = self.h.cols();
        self.c2q.iter_mut().for_each(|m| *m = 0.0);
        for q in 0..n {
            self.posterior[q] = priors.llr(q);
        }
        // The channel-only decision handles the zero syndrome without any
        // message passing.
        let x = self.hard_decision();
        if self.satisfies(&x, syndrome) {
            let weight = x.weight();
            return Ok(DecodeResult { correction: x, converged: true, osd_used: false, weight });
        }

        for iter in 1..=self.options.iters {
            let alpha = scaling_factor(iter);
            for q in 0..n {
                let lo = self.qubit_offsets[q] as usize;
                let hi = self.qubit_offsets[q + 1] as usize;
                let total: f64 = priors.llr(q)
                    + self.qubit_edges[lo..hi].iter().map(|&e| self.c2q[e as usize]).sum::<f64>();
                for k in lo..hi {
                    let e = self.qubit_edges[k] as usize;
                    let v = total - self.c2q[e];
                    self.q2c[e] = v.clamp(-LLR_CLAMP, LLR_CLAMP);
                }
            }
            for c in 0..self.h.rows() {
                let range = self.check_edges(c);
                let mut min1 = f64::INFINITY;
                let mut min2 = f64::INFINITY;
                let mut arg1 = usize::MAX;
                let mut negative = syndrome.get(c);
                for e in range.clone() {
                    let a = math::abs(self.q2c[e]);
                    if a < min1 {
                        min2 = min1;
                        min1 = a;
                        arg1 = e;
                    } else if a < min2 {
                        min2 = a;
                    }
                    negative ^= self.q2c[e] < 0.0;
                }
                for e in range {
                    let a = if e == arg1 { min2 } else { min1 };
                    let a = alpha * a.min(LLR_CLAMP);
                    let neg = negative ^ (self.q2c[e] < 0.0);
                    self.c2q[e] = if neg { -a } else { a };
                }
            }
            for q in 0..n {
                let total: f64 = priors.llr(q)
                    + self.qubit_edge_ids(q).iter().map(|&e| self.c2q[e as usize]).sum::<f64>();
                self.posterior[q] = total.clamp(-LLR_CLAMP, LLR_CLAMP);
            }
            let x = self.hard_decision();
            if self.satisfies(&x, syndrome) {
                let weight = x.weight();
                return Ok(DecodeResult {
                    correction: x,
                    converged: true,
                    osd_used: false,
                    weight,
                });
            }
        }
        let correction = self.osd(syndrome)?;
        debug_assert_eq!(self.h.mul_vector(&correction), *syndrome);
        let weight = correction.weight();
        Ok(DecodeResult { correction, converged: false, osd_used: true, weight })
    }

    /// Ordered-statistics fallback: always syndrome-consistent when the
    /// syndrome is in the check image.
    fn osd(&self, syndrome: &BitVector) -> Result<BitVector, DecodeError> {
        let n = self.h.cols();
        let m = self.h.rows();
        // Least reliable first; negative posteriors (bits BP believes are
        // flipped) sort to the front and become pivots the solve can set.
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| {
            self.posterior[a]
                .partial_cmp(&self.posterior[b])
                .expect("posteriors are clamped and finite")
                .then(a.cmp(&b))
        });
        let mut syn_col = BinaryMatrix::zeros(m, 1);
        for c in syndrome.iter_ones() {
            syn_col.set(c, 0, true);
        }
        let mut work = self.h.select_cols(&perm).hconcat(&syn_col);
        let pivots = work.rref_in_place();
        if pivots.last() == Some(&n) {
            return Err(DecodeError::InconsistentSyndrome);
        }
        let rank = pivots.len();
        let s_tilde = work.column_vector(n);
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let sweep = &free[..free.len().min(self.options.osd_order)];
        let sweep_cols: Vec<BitVector> =
            sweep.iter().map(|&c| work.column_vector(c)).collect();

        // Candidate = subset of sweep positions forced to 1; pivots then
        // solve to x_P = s_tilde + sum of the chosen columns, row by row.
        let mut best: Option<(f64, Vec<usize>)> = None;
        let mut consider = |chosen: &[usize]| {
            let mut xp = s_tilde.clone();
            let mut soft = 0.0;
            for &j in chosen {
                xp.xor_assign(&sweep_cols[j]);
                soft += self.posterior[perm[sweep[j]]];
            }
            for r in 0..rank {
                if xp.get(r) {
                    soft += self.posterior[perm[pivots[r]]];
                }
            }
            if best.as_ref().is_none_or(|(s, _)| soft < *s) {
                best = Some((soft, chosen.to_vec()));
            }
        };
        consider(&[]);
        for j in 0..sweep.len() {
            consider(&[j]);
        }
        for j1 in 0..sweep.len() {
            for j2 in j1 + 1..sweep.len() {
                consider(&[j1, j2]);
            }
        }

        let (_, chosen) = best.expect("OSD-0 is always a candidate");
        let mut xp = s_tilde;
        let mut x = BitVector::zeros(n);
        for &j in &chosen {
            xp.xor_assign(&sweep_cols[j]);
            x.set(perm[sweep[j]], true);
        }
        for r in 0..rank {
            if xp.get(r) {
                x.set(perm[pivots[r]], true);
            }
        }
        Ok(x)
    }
}

/// One-shot convenience wrapper around [`BpOsd`].
pub fn bp_osd_decode(
    h: &BinaryMatrix,
    syndrome: &BitVector,
    priors: &DecoderPriors,
    options: BpOsdOptions,
) -> Result<DecodeResult, DecodeError> {
    BpOsd::new(h, options).decode(syndrome, priors)
}

/// Overlap bits of `x` with a list of logical representatives, packed
/// little-endian. Two syndrome-consistent corrections act identically on
/// the encoded information exactly when their labels agree.
pub fn logical_class(x: &BitVector, logicals: &[BitVector]) -> u64 {
    assert!(logicals.len() <= 64, "class labels are packed into 64 bits");
    let mut label = 0u64;
    for (i, l) in logicals.iter().enumerate() {
        if x.dot(l) {
            label |= 1 << i;
        }
    }
    label
}

#[derive(Debug, Clone)]
pub struct MlOutcome {
    /// Highest-probability solution inside the winning class.
    pub representative: BitVector,
    /// [`logical_class`] label of the winning class.
    pub class: u64,
    /// Log of the summed probability of the winning class, up to the
    /// class-independent constant `sum ln(1-p_q)`.
    pub log_mass: f64,
    /// Another class ties the winner within numerical tolerance.
    pub tied: bool,
}

/// Exhaustive maximum-likelihood decoding for small codes: enumerates every
/// solution of `H x = syndrome`, groups solutions into logical classes by
/// their overlap with `partner_logicals`, and picks the class with the
/// largest summed probability.
pub fn ml_decode_oracle(
    h: &BinaryMatrix,
    partner_logicals: &[BitVector],
    syndrome: &BitVector,
    priors: &DecoderPriors,
) -> Result<MlOutcome, DecodeError> {
    if syndrome.len() != h.rows() || priors.len() != h.cols() {
        return Err(DecodeError::DimensionMismatch { expected: h.rows(), got: syndrome.len() });
    }
    let x0 = h
        .solve(syndrome)
        .expect("lengths checked above")
        .ok_or(DecodeError::InconsistentSyndrome)?;
    let basis = h.kernel_basis();
    if basis.len() > ML_KERNEL_LIMIT {
        return Err(DecodeError::BudgetExceeded { kernel_dim: basis.len() });
    }
    let llrs: Vec<f64> = (0..h.cols()).map(|q| priors.llr(q)).collect();
    let basis_labels: Vec<u64> =
        basis.iter().map(|b| logical_class(b, partner_logicals)).collect();

    struct ClassAcc {
        log_mass: f64,
        best_cost: f64,
        best: BitVector,
    }
    // Probability of x is exp(-cost(x)) up to a constant, with
    // cost = sum of llr over the support.
    let mut x = x0;
    let mut cost: f64 = x.iter_ones().map(|q| llrs[q]).sum();
    let mut label = logical_class(&x, partner_logicals);
    let mut classes: BTreeMap<u64, ClassAcc> = BTreeMap::new();
    let logaddexp = |a: f64, b: f64| {
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        hi + math::ln(1.0 + math::exp(lo - hi))
    };
    let record = |x: &BitVector, cost: f64, label: u64, classes: &mut BTreeMap<u64, ClassAcc>| {
        classes
            .entry(label)
            .and_modify(|acc| {
                acc.log_mass = logaddexp(acc.log_mass, -cost);
                if cost < acc.best_cost {
                    acc.best_cost = cost;
                    acc.best = x.clone();
                }
            })
            .or_insert_with(|| ClassAcc { log_mass: -cost, best_cost: cost, best: x.clone() });
    };
    record(&x, cost, label, &mut classes);
    // Gray-code walk over the kernel: one basis flip per visited solution.
    for i in 1u64..1u64 << basis.len() {
        let j = i.trailing_zeros() as usize;
        for q in basis[j].iter_ones() {
            if x.get(q) {
                cost -= llrs[q];
            } else {
                cost += llrs[q];
            }
            x.flip(q);
        }
        label ^= basis_labels[j];
        record(&x, cost, label, &mut classes);
    }

    let winner = classes
        .iter()
        .max_by(|a, b| {
            a.1.log_mass
                .partial_cmp(&b.1.log_mass)
                .expect("finite masses")
                // BTreeMap iterates labels ascending; prefer the smaller
                // label on exact ties so the winner is deterministic.
                .then(b.0.cmp(a.0))
        })
        .expect("at least one solution exists");
    let tied = classes
        .iter()
        .any(|(label, acc)| label != winner.0 && (acc.log_mass - winner.1.log_mass) > -1e-9);
    Ok(MlOutcome {
        representative: winner.1.best.clone(),
        class: *winner.0,
        log_mass: winner.1.log_mass,
        tied,
    })
}

/// Relaxation-time fit for one flip-fraction curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationFit {
    /// Fitted time constant; infinite when no flips were observed.
    pub tau: f64,
    pub samples: usize,
}

/// Fits `p(t) = (1 - e^{-t/tau}) / 2` by regressing `ln(1 - 2 p_hat)`
/// against `-t/tau` through the origin: `tau = sum t^2 / sum t y` with
/// `y = -ln(1 - 2 p_hat)`.
///
/// Fractions at or above 1/2 are clamped just below it (the log diverges);
/// an all-zero curve has no information and yields infinite `tau`.
///
/// # Panics
///
/// Panics with fewer than two samples or nonpositive times.
pub fn fit_relaxation_time(samples: &[(f64, f64)]) -> RelaxationFit {
    assert!(samples.len() >= 2, "need at least two time samples");
    let mut tt = 0.0;
    let mut ty = 0.0;
    for &(t, p_hat) in samples {
        assert!(t > 0.0, "sample times must be positive");
        let p = p_hat.min(0.5 - 1e-9);
        let y = -math::ln(1.0 - 2.0 * p);
        tt += t * t;
        ty += t * y;
    }
    let tau = if ty > 0.0 { tt / ty } else { f64::INFINITY };
    RelaxationFit { tau, samples: samples.len() }
}

/// Per-qubit priors from flip-fraction curves: one relaxation fit per
/// qubit, evaluated at `t_decode`.
///
/// `flip_fractions[q][j]` is the observed flip fraction of qubit `q` at
/// `times[j]`.
pub fn calibrate_priors(
    times: &[f64],
    flip_fractions: &[Vec<f64>],
    t_decode: f64,
) -> DecoderPriors {
    let taus: Vec<f64> = flip_fractions
        .iter()
        .map(|curve| {
            assert_eq!(curve.len(), times.len(), "one fraction per sample time");
            let samples: Vec<(f64, f64)> =
                times.iter().copied().zip(curve.iter().copied()).collect();
            fit_relaxation_time(&samples).tau
        })
        .collect();
    DecoderPriors::from_relaxation(&taus, t_decode)
}

/// Mean flip fraction across qubits at each sample time; fitting this
/// pooled curve beats per-qubit fits when qubits share one time constant.
pub fn pooled_fractions(flip_fractions: &[Vec<f64>]) -> Vec<f64> {
    assert!(!flip_fractions.is_empty());
    let times = flip_fractions[0].len();
    let mut mean = vec![0.0; times];
    for curve in flip_fractions {
        assert_eq!(curve.len(), times);
        for (m, &p) in mean.iter_mut().zip(curve) {
            *m += p;
        }
    }
    for m in &mut mean {
        *m /= flip_fractions.len() as f64;
    }
    mean
}

/// Synthetic flip-fraction curves for calibration tests: `qubits`
/// independent spins with the given time constant, sampled as `shots`
/// Bernoulli draws of `p(t) = (1 - e^{-t/tau}) / 2` per time.
pub fn synthetic_relaxation(
    tau: f64,
    times: &[f64],
    shots: u64,
    qubits: usize,
    rng: &mut SplitMix64,
) -> Vec<Vec<f64>> {
    (0..qubits)
        .map(|_| {
            times
                .iter()
                .map(|&t| {
                    let p = 0.5 * (1.0 - math::exp(-t / tau));
                    let flips = (0..shots).filter(|_| rng.next_f64() < p).count();
                    flips as f64 / shots as f64
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::{ProductCode, Sector};
    use crate::slead::repetition_chain;

    fn cored_rep3_squared() -> ProductCode {
        let mut rep = repetition_chain(3);
        rep.deplete(0).unwrap();
        let h = rep.check_matrix().clone();
        ProductCode::hypergraph(&h, &h)
    }

    #[test]
    fn scaling_schedule_plateaus_toward_one() {
        let expected = [0.5, 0.5, 0.75, 0.75, 0.875, 0.875];
        for (i, &alpha) in expected.iter().enumerate() {
            assert_eq!(scaling_factor(i + 1), alpha);
        }
        assert!(scaling_factor(40) > 0.999);
    }

    #[test]
    fn channel_llr_decreases_with_flip_probability() {
        let priors = DecoderPriors::from_probabilities(vec![0.01, 0.1, 0.3, 0.5]);
        for q in 1..4 {
            assert!(priors.llr(q) < priors.llr(q - 1));
        }
        assert_eq!(priors.llr(3), 0.0);
    }

    #[test]
    fn zero_syndrome_needs_no_work() {
        let code = cored_rep3_squared();
        let h = code.css().matrix(Sector::X);
        let priors = DecoderPriors::uniform(h.cols(), 0.05);
        let result = bp_osd_decode(
            h,
            &BitVector::zeros(h.rows()),
            &priors,
            BpOsdOptions::default(),
        )
        .unwrap();
        assert!(result.converged);
        assert!(!result.osd_used);
        assert_eq!(result.weight, 0);
    }

    #[test]
    fn weight_one_errors_recover_exactly_in_both_sectors() {
        let code = cored_rep3_squared();
        for sector in [Sector::X, Sector::Z] {
            let h = code.css().matrix(sector);
            let mut decoder = BpOsd::new(h, BpOsdOptions::default());
            let priors = DecoderPriors::uniform(h.cols(), 0.05);
            for q in 0..h.cols() {
                let e = BitVector::from_support(h.cols(), &[q]);
                let syndrome = h.mul_vector(&e);
                let result = decoder.decode(&syndrome, &priors).unwrap();
                assert_eq!(result.correction, e, "{sector} qubit {q}");
            }
        }
    }

    #[test]
    fn corrections_always_reproduce_the_syndrome() {
        let code = cored_rep3_squared();
        let h = code.css().matrix(Sector::Z);
        let mut decoder = BpOsd::new(h, BpOsdOptions::default());
        let priors = DecoderPriors::uniform(h.cols(), 0.08);
        let mut rng = SplitMix64::new(31);
        for _ in 0..200 {
            let mut e = BitVector::zeros(h.cols());
            for _ in 0..3 {
                e.flip(rng.next_index(h.cols()));
            }
            let syndrome = h.mul_vector(&e);
            let result = decoder.decode(&syndrome, &priors).unwrap();
            assert_eq!(h.mul_vector(&result.correction), syndrome);
        }
    }

    #[test]
    fn pure_osd_finds_the_minimum_weight_pattern() {
        // iters = 0 skips BP entirely, so the posterior equals the uniform
        // channel LLR and OSD alone must solve the chain syndrome.
        let mut rep = repetition_chain(5);
        rep.deplete(0).unwrap();
        let h = rep.check_matrix();
        let priors = DecoderPriors::uniform(5, 0.1);
        let e = BitVector::from_support(5, &[2]);
        let syndrome = h.mul_vector(&e);
        let result =
            bp_osd_decode(h, &syndrome, &priors, BpOsdOptions { iters: 0, osd_order: 10 })
                .unwrap();
        assert!(result.osd_used);
        assert!(!result.converged);
        assert_eq!(result.correction, e);
    }

    #[test]
    fn unsatisfiable_syndromes_are_rejected() {
        // A zero check row can never be violated.
        let h = BinaryMatrix::from_supports(2, 3, &[vec![0, 1], vec![]]);
        let priors = DecoderPriors::uniform(3, 0.1);
        let syndrome = BitVector::from_support(2, &[1]);
        let err = bp_osd_decode(&h, &syndrome, &priors, BpOsdOptions::default()).unwrap_err();
        assert_eq!(err, DecodeError::InconsistentSyndrome);
    }

    #[test]
    fn decoding_is_deterministic() {
        let code = cored_rep3_squared();
        let h = code.css().matrix(Sector::X);
        let mut decoder = BpOsd::new(h, BpOsdOptions::default());
        let priors = DecoderPriors::uniform(h.cols(), 0.05);
        let e = BitVector::from_support(h.cols(), &[1, 7]);
        let syndrome = h.mul_vector(&e);
        let first = decoder.decode(&syndrome, &priors).unwrap();
        let second = decoder.decode(&syndrome, &priors).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn ml_oracle_prefers_minimum_weight_under_uniform_priors() {
        let mut rep = repetition_chain(5);
        rep.deplete(0).unwrap();
        let h = rep.check_matrix();
        let priors = DecoderPriors::uniform(5, 0.1);
        let e = BitVector::from_support(5, &[1]);
        let outcome = ml_decode_oracle(h, &[], &h.mul_vector(&e), &priors).unwrap();
        assert_eq!(outcome.representative, e);
        assert!(!outcome.tied);
    }

    #[test]
    fn ml_oracle_reports_exact_ties() {
        // One check over two bits: the two solutions of syndrome 1 sit in
        // different classes of the probe vector with identical mass.
        let h = BinaryMatrix::from_supports(1, 2, &[vec![0, 1]]);
        let probe = BitVector::from_support(2, &[0]);
        let priors = DecoderPriors::uniform(2, 0.2);
        let outcome =
            ml_decode_oracle(&h, &[probe], &BitVector::from_support(1, &[0]), &priors).unwrap();
        assert!(outcome.tied);
    }

    #[test]
    fn ml_oracle_matches_brute_force_on_random_codes() {
        let mut rng = SplitMix64::new(0xabcd);
        for trial in 0..10 {
            let n = 10;
            let m = 5;
            let mut h = BinaryMatrix::zeros(m, n);
            for r in 0..m {
                for c in 0..n {
                    if rng.next_f64() < 0.3 {
                        h.set(r, c, true);
                    }
                }
            }
            let probes: Vec<BitVector> = (0..2)
                .map(|_| {
                    let mut v = BitVector::zeros(n);
                    for q in 0..n {
                        if rng.next_f64() < 0.5 {
                            v.set(q, true);
                        }
                    }
                    v
                })
                .collect();
            let p: Vec<f64> = (0..n).map(|_| 0.05 + 0.4 * rng.next_f64()).collect();
            let priors = DecoderPriors::from_probabilities(p.clone());
            let mut e = BitVector::zeros(n);
            for _ in 0..2 {
                e.flip(rng.next_index(n));
            }
            let syndrome = h.mul_vector(&e);

            // Brute force over all 2^10 patterns.
            let mut masses: BTreeMap<u64, f64> = BTreeMap::new();
            for bits in 0u32..1 << n {
                let x = BitVector::from_bools(
                    &(0..n).map(|q| bits >> q & 1 == 1).collect::<Vec<_>>(),
                );
                if h.mul_vector(&x) != syndrome {
                    continue;
                }
                let prob: f64 = (0..n)
                    .map(|q| if x.get(q) { p[q] } else { 1.0 - p[q] })
                    .product();
                *masses.entry(logical_class(&x, &probes)).or_insert(0.0) += prob;
            }
            let (&expected_class, _) = masses
                .iter()
                .max_by(|a, b| a.1.partial_cmp(b.1).unwrap().then(b.0.cmp(a.0)))
                .unwrap();

            let outcome = ml_decode_oracle(&h, &probes, &syndrome, &priors).unwrap();
            assert_eq!(outcome.class, expected_class, "trial {trial}");
            assert_eq!(h.mul_vector(&outcome.representative), syndrome);
        }
    }

    #[test]
    fn oracle_budget_is_enforced() {
        let h = BinaryMatrix::zeros(1, 30);
        let priors = DecoderPriors::uniform(30, 0.1);
        let err =
            ml_decode_oracle(&h, &[], &BitVector::zeros(1), &priors).unwrap_err();
        assert_eq!(err, DecodeError::BudgetExceeded { kernel_dim: 30 });
    }

    #[test]
    fn noiseless_relaxation_data_fits_exactly() {
        let tau = 7.0;
        let samples: Vec<(f64, f64)> = (1..=10)
            .map(|j| {
                let t = j as f64;
                (t, 0.5 * (1.0 - math::exp(-t / tau)))
            })
            .collect();
        let fit = fit_relaxation_time(&samples);
        assert!(math::abs(fit.tau - tau) < 1e-9, "tau {}", fit.tau);
    }

    #[test]
    fn flipless_data_floors_the_prior() {
        let times = [1.0, 2.0, 3.0];
        let curves = vec![vec![0.0, 0.0, 0.0], vec![0.1, 0.2, 0.3]];
        let priors = calibrate_priors(&times, &curves, 2.0);
        assert_eq!(priors.get(0), PRIOR_FLOOR);
        assert!(priors.get(1) > PRIOR_FLOOR);
    }

    #[test]
    fn synthetic_curves_recover_the_time_constant() {
        let tau = 100.0;
        let times: Vec<f64> = (1..=20).map(|j| 5.0 * j as f64).collect();
        let mut rng = SplitMix64::new(808);
        let curves = synthetic_relaxation(tau, &times, 64, 64, &mut rng);
        let pooled = pooled_fractions(&curves);
        let samples: Vec<(f64, f64)> =
            times.iter().copied().zip(pooled.iter().copied()).collect();
        let fit = fit_relaxation_time(&samples);
        assert!(
            math::abs(fit.tau - tau) / tau < 0.05,
            "pooled fit {} too far from {tau}",
            fit.tau
        );
    }

    #[test]
    fn relaxation_priors_clamp_both_ends() {
        let priors = DecoderPriors::from_relaxation(&[f64::INFINITY, 1e-9, 50.0], 100.0);
        assert_eq!(priors.get(0), PRIOR_FLOOR);
        assert_eq!(priors.get(1), PRIOR_CEIL);
        let expected = 0.5 * (1.0 - math::exp(-2.0));
        assert!(math::abs(priors.get(2) - expected) < 1e-12);
    }
}
