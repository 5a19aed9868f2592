//! Energy barriers of codewords under single-bit dynamics.
//!
//! Flipping the support of a codeword one bit at a time walks through
//! partial configurations whose energy is the number of violated checks.
//! The energy barrier of the codeword is the smallest, over all orderings
//! of its support, of the largest energy seen along the way. It controls
//! how long a thermal environment needs to push a memory across a logical
//! operator, so lower bounds on it translate into lifetime guarantees.
//!
//! Two evaluators are provided. [`exact_barrier`] runs a minimax dynamic
//! program over subsets of the support and is exact but limited to supports
//! of at most [`EXACT_SUPPORT_LIMIT`] bits. [`greedy_barrier`] is a beam
//! search that only ever expands the lowest-energy successors of each beam
//! state; it returns an upper bound and handles the large fractal codewords
//! where the exact program is out of reach. [`path_multiplicity`] counts
//! the orderings that stay at or below a given energy cap, which
//! distinguishes a wide saddle from a narrow one at equal barrier height.

use crate::f2::{BinaryMatrix, BitVector};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

/// Largest support size accepted by the exact subset dynamic program.
pub const EXACT_SUPPORT_LIMIT: usize = 20;

/// Default beam width for [`greedy_barrier`].
pub const DEFAULT_BEAM_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BarrierError {
    /// Support exceeds [`EXACT_SUPPORT_LIMIT`]; use the greedy bound.
    SupportTooLarge { support: usize },
    /// The vector length does not match the check matrix.
    LengthMismatch { expected: usize, got: usize },
}

impl fmt::Display for BarrierError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BarrierError::SupportTooLarge { support } => write!(
                f,
                "support {support} exceeds the exact limit of {EXACT_SUPPORT_LIMIT}"
            ),
            BarrierError::LengthMismatch { expected, got } => {
                write!(f, "vector has {got} bits, check matrix expects {expected}")
            }
        }
    }
}

impl core::error::Error for BarrierError {}

/// Number of violated checks of a configuration.
pub fn energy(h: &BinaryMatrix, w: &BitVector) -> usize {
    h.mul_vector(w).weight()
}

/// Exact minimal energy barrier over all monotone orderings of `supp(c)`.
///
/// Dynamic program over subsets, processed level by level in subset size:
/// the barrier to reach a subset is the minimum over its elements `j` of
/// `max(barrier(S \ j), energy(S))`. Memory and time scale with the number
/// of subsets, hence the support limit.
pub fn exact_barrier(h: &BinaryMatrix, c: &BitVector) -> Result<usize, BarrierError> {
    let (support, columns) = support_columns(h, c)?;
    let k = support.len();
    if k == 0 {
        return Ok(0);
    }
    // Level maps: subset mask -> (barrier, syndrome of the partial sum).
    let mut level: BTreeMap<u32, (usize, BitVector)> = BTreeMap::new();
    level.insert(0, (0, BitVector::zeros(h.rows())));
    for _ in 0..k {
        let mut next: BTreeMap<u32, (usize, BitVector)> = BTreeMap::new();
        for (mask, (barrier, syndrome)) in &level {
            for j in 0..k {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let new_mask = mask | (1 << j);
                let e = syndrome.xor_weight(&columns[j]);
                let reach = e.max(*barrier);
                match next.get_mut(&new_mask) {
                    Some(entry) if entry.0 <= reach => {}
                    Some(entry) => entry.0 = reach,
                    None => {
                        let mut s = syndrome.clone();
                        s.xor_assign(&columns[j]);
                        next.insert(new_mask, (reach, s));
                    }
                }
            }
        }
        level = next;
    }
    let full = (level.into_iter().next().expect("final level is nonempty").1).0;
    Ok(full)
}

/// Number of monotone orderings of `supp(c)` whose running energy never
/// exceeds `max_energy`. Saturates at `u64::MAX`. A cap one below the exact
/// barrier always yields zero.
pub fn path_multiplicity(
    h: &BinaryMatrix,
    c: &BitVector,
    max_energy: usize,
) -> Result<u64, BarrierError> {
    let (support, columns) = support_columns(h, c)?;
    let k = support.len();
    if k == 0 {
        return Ok(1);
    }
    let mut level: BTreeMap<u32, (u64, BitVector)> = BTreeMap::new();
    level.insert(0, (1, BitVector::zeros(h.rows())));
    for _ in 0..k {
        let mut next: BTreeMap<u32, (u64, BitVector)> = BTreeMap::new();
        for (mask, (count, syndrome)) in &level {
            for j in 0..k {
                if mask & (1 << j) != 0 {
                    continue;
                }
                if syndrome.xor_weight(&columns[j]) > max_energy {
                    continue;
                }
                let new_mask = mask | (1 << j);
                match next.get_mut(&new_mask) {
                    Some(entry) => entry.0 = entry.0.saturating_add(*count),
                    None => {
                        let mut s = syndrome.clone();
                        s.xor_assign(&columns[j]);
                        next.insert(new_mask, (*count, s));
                    }
                }
            }
        }
        if next.is_empty() {
            return Ok(0);
        }
        level = next;
    }
    Ok(level.into_iter().next().map_or(0, |(_, (count, _))| count))
}

/// Seed states for the greedy beam search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GreedyInit {
    /// Start from the empty configuration.
    #[default]
    Empty,
    /// Start from every single-bit configuration at once.
    Singletons,
}

/// Tuning for [`greedy_barrier`].
#[derive(Debug, Clone, Copy)]
pub struct GreedyOptions {
    /// Beam states kept per step; lowest barriers survive pruning.
    pub beam_cap: usize,
    pub init: GreedyInit,
}

impl Default for GreedyOptions {
    fn default() -> Self {
        Self {
            beam_cap: DEFAULT_BEAM_CAP,
            init: GreedyInit::Empty,
        }
    }
}

/// Greedy upper bound on the energy barrier.
///
/// Each beam state expands only to the successors of minimal next energy;
/// duplicate subsets are merged keeping the lower barrier, and the beam is
/// pruned to `beam_cap` states by barrier (ties broken by subset, so runs
/// are deterministic). The result is an upper bound: the restriction to
/// lowest-energy successors can miss orderings that must climb early to
/// descend later.
///
/// # Panics
///
/// Panics if `c` is not a codeword of `h` or the lengths mismatch.
pub fn greedy_barrier(h: &BinaryMatrix, c: &BitVector, options: &GreedyOptions) -> usize {
    assert_eq!(c.len(), h.cols(), "codeword length");
    assert!(
        h.mul_vector(c).is_zero(),
        "greedy barrier expects a codeword"
    );
    let support: Vec<usize> = c.support();
    let k = support.len();
    if k == 0 {
        return 0;
    }
    let columns: Vec<BitVector> = support.iter().map(|&j| h.column_vector(j)).collect();

    // Beam entries: subset of flipped support positions -> (barrier, syndrome).
    let mut beam: BTreeMap<BitVector, (usize, BitVector)> = BTreeMap::new();
    let zero_syndrome = BitVector::zeros(h.rows());
    let steps_left;
    match options.init {
        GreedyInit::Empty => {
            beam.insert(BitVector::zeros(k), (0, zero_syndrome));
            steps_left = k;
        }
        GreedyInit::Singletons => {
            for j in 0..k {
                let mut mask = BitVector::zeros(k);
                mask.set(j, true);
                let e = columns[j].weight();
                beam.insert(mask, (e, columns[j].clone()));
            }
            steps_left = k - 1;
        }
    }

    for _ in 0..steps_left {
        let mut next: BTreeMap<BitVector, (usize, BitVector)> = BTreeMap::new();
        for (mask, (barrier, syndrome)) in &beam {
            let mut best = usize::MAX;
            for j in 0..k {
                if !mask.get(j) {
                    best = best.min(syndrome.xor_weight(&columns[j]));
                }
            }
            for j in 0..k {
                if mask.get(j) || syndrome.xor_weight(&columns[j]) != best {
                    continue;
                }
                let reach = best.max(*barrier);
                let mut new_mask = mask.clone();
                new_mask.set(j, true);
                match next.get_mut(&new_mask) {
                    Some(entry) if entry.0 <= reach => {}
                    Some(entry) => entry.0 = reach,
                    None => {
                        let mut s = syndrome.clone();
                        s.xor_assign(&columns[j]);
                        next.insert(new_mask, (reach, s));
                    }
                }
            }
        }
        if next.len() > options.beam_cap {
            let mut entries: Vec<(BitVector, (usize, BitVector))> = next.into_iter().collect();
            entries.sort_by(|a, b| (a.1 .0, &a.0).cmp(&(b.1 .0, &b.0)));
            entries.truncate(options.beam_cap);
            next = entries.into_iter().collect();
        }
        beam = next;
    }
    beam.values()
        .map(|(barrier, _)| *barrier)
        .min()
        .expect("beam never empties")
}

fn support_columns(
    h: &BinaryMatrix,
    c: &BitVector,
) -> Result<(Vec<usize>, Vec<BitVector>), BarrierError> {
    if c.len() != h.cols() {
        return Err(BarrierError::LengthMismatch {
            expected: h.cols(),
            got: c.len(),
        });
    }
    let support = c.support();
    if support.len() > EXACT_SUPPORT_LIMIT {
        return Err(BarrierError::SupportTooLarge {
            support: support.len(),
        });
    }
    let columns = support.iter().map(|&j| h.column_vector(j)).collect();
    Ok((support, columns))
}
