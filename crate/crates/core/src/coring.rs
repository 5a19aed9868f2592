//! Coring: stripping a product code down to the carrier of its logicals.
//!
//! Coring alternately measures out qubits that touch exactly one stabilizer
//! of a given sector (removing that stabilizer with them) and discards
//! stabilizers whose live support has shrunk to a single qubit (removing
//! that qubit with them). Qubits on the protected set, which callers
//! populate with the supports of the logical operators to keep, are never
//! measured out. Both transformations preserve the code dimension and the
//! minimum logical weight; what they remove is the inert scaffolding far
//! from the logicals.
//!
//! Weight-1 cleanup is unconditional: a stabilizer pinned to a single qubit
//! freezes it, so both go, protected or not. With the default blue-qubit
//! candidate set of [`core_product`] that situation never reaches a logical,
//! but a caller-supplied candidate set can steer the cascade into one, in
//! which case coring reports [`CoringError::LogicalSupportRemoved`] instead
//! of returning a code whose logicals no longer embed.
//!
//! All passes scan in ascending index order, so the reduction is
//! deterministic for a given input.

use crate::f2::{BinaryMatrix, BitVector};
use crate::product::{CssCode, ProductCode, Sector};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Failure modes of the coring reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoringError {
    /// Weight-1 cleanup consumed a qubit on a logical's support; the
    /// candidate set exposed the logical to the removal cascade.
    LogicalSupportRemoved { qubit: usize },
}

impl fmt::Display for CoringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoringError::LogicalSupportRemoved { qubit } => {
                write!(f, "coring removed qubit {qubit} on a logical's support")
            }
        }
    }
}

impl core::error::Error for CoringError {}

/// Removal counts for one coring round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RoundCounts {
    /// Qubits measured out in the Z pass (each takes one Z stabilizer).
    pub measured_z: usize,
    /// Qubits measured out in the X pass (each takes one X stabilizer).
    pub measured_x: usize,
    /// Qubits removed because a stabilizer became weight-1.
    pub trivial: usize,
}

impl RoundCounts {
    pub fn total(&self) -> usize {
        self.measured_z + self.measured_x + self.trivial
    }
}

/// What coring removed and in how many rounds.
#[derive(Debug, Clone, Default)]
pub struct CoringReport {
    /// Original indices of removed qubits, in removal order.
    pub removed_qubits: Vec<usize>,
    /// Original row indices of removed X stabilizers, in removal order.
    pub removed_x_checks: Vec<usize>,
    /// Original row indices of removed Z stabilizers, in removal order.
    pub removed_z_checks: Vec<usize>,
    /// Per-round removal counts; the final round is all zeros.
    pub rounds: Vec<RoundCounts>,
}

/// A cored code with the maps back to the original qubit and check indices.
#[derive(Debug, Clone)]
pub struct CoredCode {
    css: CssCode,
    kept_qubits: Vec<usize>,
    kept_x_checks: Vec<usize>,
    kept_z_checks: Vec<usize>,
    logical_x: Vec<BitVector>,
    logical_z: Vec<BitVector>,
    report: CoringReport,
}

impl CoredCode {
    pub fn css(&self) -> &CssCode {
        &self.css
    }

    pub fn num_qubits(&self) -> usize {
        self.css.num_qubits()
    }

    /// Original index of each surviving qubit, ascending.
    pub fn kept_qubits(&self) -> &[usize] {
        &self.kept_qubits
    }

    pub fn kept_x_checks(&self) -> &[usize] {
        &self.kept_x_checks
    }

    pub fn kept_z_checks(&self) -> &[usize] {
        &self.kept_z_checks
    }

    /// Sector-X logicals re-indexed to the surviving qubits.
    pub fn logical_x(&self) -> &[BitVector] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[BitVector] {
        &self.logical_z
    }

    pub fn logicals(&self, sector: Sector) -> &[BitVector] {
        match sector {
            Sector::X => &self.logical_x,
            Sector::Z => &self.logical_z,
        }
    }

    pub fn report(&self) -> &CoringReport {
        &self.report
    }
}

/// Core a CSS code, protecting the supports of the given logicals.
///
/// `candidates` lists the qubits the measuring passes may remove (weight-1
/// stabilizer cleanup applies everywhere). The logicals are re-indexed onto
/// the surviving qubits and returned with the reduced code.
///
/// # Panics
///
/// Panics if a logical or candidate index does not fit the code.
pub fn core_code(
    css: &CssCode,
    logical_x: &[BitVector],
    logical_z: &[BitVector],
    candidates: &[usize],
) -> Result<CoredCode, CoringError> {
    let n = css.num_qubits();
    let mut protected = vec![false; n];
    for l in logical_x.iter().chain(logical_z) {
        assert_eq!(l.len(), n, "logical length must match qubit count");
        for q in l.iter_ones() {
            protected[q] = true;
        }
    }
    let mut state = LiveState::new(css);
    let mut report = CoringReport::default();
    loop {
        let mut counts = RoundCounts::default();
        counts.measured_z = measure_pass(
            &mut state,
            Sector::Z,
            candidates,
            &protected,
            &mut report,
        );
        counts.measured_x = measure_pass(
            &mut state,
            Sector::X,
            candidates,
            &protected,
            &mut report,
        );
        counts.trivial = trivial_pass(&mut state, &mut report);
        let done = counts.total() == 0;
        report.rounds.push(counts);
        if done {
            break;
        }
    }

    let kept_qubits: Vec<usize> = (0..n).filter(|&q| state.qubit_live[q]).collect();
    let kept_x_checks: Vec<usize> =
        (0..css.hx().rows()).filter(|&r| state.x_live[r]).collect();
    let kept_z_checks: Vec<usize> =
        (0..css.hz().rows()).filter(|&r| state.z_live[r]).collect();
    let hx = css.hx().select_rows(&kept_x_checks).select_cols(&kept_qubits);
    let hz = css.hz().select_rows(&kept_z_checks).select_cols(&kept_qubits);
    let reduced = CssCode::new(hx, hz).expect("coring preserves orthogonality");

    let mut position = vec![usize::MAX; n];
    for (new, &old) in kept_qubits.iter().enumerate() {
        position[old] = new;
    }
    let remap = |l: &BitVector| -> Result<BitVector, CoringError> {
        let mut out = BitVector::zeros(kept_qubits.len());
        for q in l.iter_ones() {
            if position[q] == usize::MAX {
                return Err(CoringError::LogicalSupportRemoved { qubit: q });
            }
            out.set(position[q], true);
        }
        Ok(out)
    };
    Ok(CoredCode {
        logical_x: logical_x.iter().map(&remap).collect::<Result<_, _>>()?,
        logical_z: logical_z.iter().map(&remap).collect::<Result<_, _>>()?,
        css: reduced,
        kept_qubits,
        kept_x_checks,
        kept_z_checks,
        report,
    })
}

/// Core a hypergraph product around one bare logical per sector, using the
/// blue qubits as removal candidates. The bare logicals live on red qubits,
/// which keeps them out of the measuring passes' reach.
pub fn core_product(
    product: &ProductCode,
    c1: &BitVector,
    c2: &BitVector,
) -> Result<CoredCode, CoringError> {
    let lx = product.bare_logical(Sector::X, c1, c2);
    let lz = product.bare_logical(Sector::Z, c1, c2);
    let blue: Vec<usize> = (product.num_red()..product.num_qubits()).collect();
    core_code(product.css(), &[lx], &[lz], &blue)
}

/// Live masks plus incrementally maintained degree counts.
struct LiveState {
    qubit_live: Vec<bool>,
    x_live: Vec<bool>,
    z_live: Vec<bool>,
    /// Live stabilizers per qubit, one count per sector.
    x_degree: Vec<usize>,
    z_degree: Vec<usize>,
    /// Live qubits per stabilizer row.
    x_row_weight: Vec<usize>,
    z_row_weight: Vec<usize>,
    /// Row supports, fixed for the whole run.
    x_rows: Vec<Vec<usize>>,
    z_rows: Vec<Vec<usize>>,
    /// Rows per qubit, fixed for the whole run.
    x_cols: Vec<Vec<usize>>,
    z_cols: Vec<Vec<usize>>,
}

impl LiveState {
    fn new(css: &CssCode) -> Self {
        let n = css.num_qubits();
        let supports = |h: &BinaryMatrix| -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
            let mut rows = Vec::with_capacity(h.rows());
            let mut cols: Vec<Vec<usize>> = vec![Vec::new(); n];
            for r in 0..h.rows() {
                let s = h.row_support(r);
                for &q in &s {
                    cols[q].push(r);
                }
                rows.push(s);
            }
            (rows, cols)
        };
        let (x_rows, x_cols) = supports(css.hx());
        let (z_rows, z_cols) = supports(css.hz());
        Self {
            qubit_live: vec![true; n],
            x_live: vec![true; css.hx().rows()],
            z_live: vec![true; css.hz().rows()],
            x_degree: x_cols.iter().map(Vec::len).collect(),
            z_degree: z_cols.iter().map(Vec::len).collect(),
            x_row_weight: x_rows.iter().map(Vec::len).collect(),
            z_row_weight: z_rows.iter().map(Vec::len).collect(),
            x_rows,
            z_rows,
            x_cols,
            z_cols,
        }
    }

    fn remove_qubit(&mut self, q: usize) {
        debug_assert!(self.qubit_live[q]);
        self.qubit_live[q] = false;
        for &r in &self.x_cols[q] {
            if self.x_live[r] {
                self.x_row_weight[r] -= 1;
            }
        }
        for &r in &self.z_cols[q] {
            if self.z_live[r] {
                self.z_row_weight[r] -= 1;
            }
        }
    }

    fn remove_check(&mut self, sector: Sector, r: usize) {
        let (live, rows, x_deg, z_deg) = match sector {
            Sector::X => (&mut self.x_live, &self.x_rows, true, false),
            Sector::Z => (&mut self.z_live, &self.z_rows, false, true),
        };
        debug_assert!(live[r]);
        live[r] = false;
        for &q in &rows[r] {
            if self.qubit_live[q] {
                if x_deg {
                    self.x_degree[q] -= 1;
                }
                if z_deg {
                    self.z_degree[q] -= 1;
                }
            }
        }
    }

    /// The unique live stabilizer of the sector acting on `q`.
    fn lone_check(&self, sector: Sector, q: usize) -> usize {
        let (cols, live) = match sector {
            Sector::X => (&self.x_cols[q], &self.x_live),
            Sector::Z => (&self.z_cols[q], &self.z_live),
        };
        *cols
            .iter()
            .find(|&&r| live[r])
            .expect("degree count promised a live check")
    }
}

/// Measure out candidate qubits with sector degree exactly one. Returns the
/// number of removals; cascades within the pass are allowed, so a removal
/// can enable a later candidate in the same sweep.
fn measure_pass(
    state: &mut LiveState,
    sector: Sector,
    candidates: &[usize],
    protected: &[bool],
    report: &mut CoringReport,
) -> usize {
    let mut removed = 0;
    for &q in candidates {
        assert!(q < state.qubit_live.len(), "candidate {q} out of range");
        if !state.qubit_live[q] || protected[q] {
            continue;
        }
        let degree = match sector {
            Sector::X => state.x_degree[q],
            Sector::Z => state.z_degree[q],
        };
        if degree != 1 {
            continue;
        }
        let r = state.lone_check(sector, q);
        state.remove_check(sector, r);
        state.remove_qubit(q);
        report.removed_qubits.push(q);
        match sector {
            Sector::X => report.removed_x_checks.push(r),
            Sector::Z => report.removed_z_checks.push(r),
        }
        removed += 1;
    }
    removed
}

/// Drop stabilizers whose live support is a single qubit, together with
/// that qubit. X rows are scanned before Z rows, each in ascending order.
fn trivial_pass(state: &mut LiveState, report: &mut CoringReport) -> usize {
    let mut removed = 0;
    for sector in [Sector::X, Sector::Z] {
        let rows = match sector {
            Sector::X => state.x_rows.len(),
            Sector::Z => state.z_rows.len(),
        };
        for r in 0..rows {
            let (live, weight) = match sector {
                Sector::X => (state.x_live[r], state.x_row_weight[r]),
                Sector::Z => (state.z_live[r], state.z_row_weight[r]),
            };
            if !live || weight != 1 {
                continue;
            }
            let row = match sector {
                Sector::X => &state.x_rows[r],
                Sector::Z => &state.z_rows[r],
            };
            let q = *row
                .iter()
                .find(|&&q| state.qubit_live[q])
                .expect("weight count promised a live qubit");
            state.remove_check(sector, r);
            state.remove_qubit(q);
            report.removed_qubits.push(q);
            match sector {
                Sector::X => report.removed_x_checks.push(r),
                Sector::Z => report.removed_z_checks.push(r),
            }
            removed += 1;
        }
    }
    removed
}
