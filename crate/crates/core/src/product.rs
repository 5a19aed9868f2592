//! Hypergraph products of classical codes and the resulting CSS codes.
//!
//! Given check matrices `w1` (m1 x n1) and `w2` (m2 x n2), the product code
//! lives on `n1*n2 + m1*m2` qubits: a *red* qubit per vertex pair and a
//! *blue* qubit per check pair. The stabilizer matrices are
//!
//! ```text
//! HX = [ w1 (x) I_n2 | I_m1 (x) w2^T ]
//! HZ = [ I_n1 (x) w2 | w1^T (x) I_m2 ]
//! ```
//!
//! which are orthogonal by construction. Sector-X operators are elements of
//! `ker(HX)`; they act logically when they sit outside `rowspace(HZ)`, and
//! symmetrically for sector Z. Depleted slead factors with codewords `C1`,
//! `C2` give one bare logical per sector: `C1 (x) e_{v2}` (a column of red
//! qubits) and `e_{v1} (x) C2` (a row), crossing in exactly one qubit.

use crate::f2::{BinaryMatrix, BitVector, RowSpace};
use alloc::vec::Vec;
use core::fmt;

/// The two stabilizer sectors of a CSS code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    X,
    Z,
}

impl Sector {
    /// The opposite sector.
    #[must_use]
    pub fn other(self) -> Sector {
        match self {
            Sector::X => Sector::Z,
            Sector::Z => Sector::X,
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sector::X => f.write_str("X"),
            Sector::Z => f.write_str("Z"),
        }
    }
}

/// Errors for CSS code assembly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CssError {
    /// The two stabilizer matrices act on different qubit counts.
    ShapeMismatch { x_cols: usize, z_cols: usize },
    /// A pair of X and Z stabilizers anticommutes (odd support overlap).
    NotOrthogonal { x_row: usize, z_row: usize },
}

impl fmt::Display for CssError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CssError::ShapeMismatch { x_cols, z_cols } => {
                write!(f, "HX acts on {x_cols} qubits but HZ on {z_cols}")
            }
            CssError::NotOrthogonal { x_row, z_row } => {
                write!(f, "X stabilizer {x_row} anticommutes with Z stabilizer {z_row}")
            }
        }
    }
}

impl core::error::Error for CssError {}

/// A CSS stabilizer code given by a pair of orthogonal binary matrices.
#[derive(Debug, Clone)]
pub struct CssCode {
    hx: BinaryMatrix,
    hz: BinaryMatrix,
}

impl CssCode {
    /// Validate orthogonality (`HX . HZ^T = 0`) and wrap the matrices.
    pub fn new(hx: BinaryMatrix, hz: BinaryMatrix) -> Result<Self, CssError> {
        if hx.cols() != hz.cols() {
            return Err(CssError::ShapeMismatch {
                x_cols: hx.cols(),
                z_cols: hz.cols(),
            });
        }
        for xr in 0..hx.rows() {
            let xrow = hx.row_vector(xr);
            for zr in 0..hz.rows() {
                if xrow.dot(&hz.row_vector(zr)) {
                    return Err(CssError::NotOrthogonal { x_row: xr, z_row: zr });
                }
            }
        }
        Ok(Self { hx, hz })
    }

    pub fn num_qubits(&self) -> usize {
        self.hx.cols()
    }

    pub fn hx(&self) -> &BinaryMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BinaryMatrix {
        &self.hz
    }

    /// Check matrix whose kernel hosts the given sector's operators.
    pub fn matrix(&self, sector: Sector) -> &BinaryMatrix {
        match sector {
            Sector::X => &self.hx,
            Sector::Z => &self.hz,
        }
    }

    /// Number of logical qubits, `n - rank(HX) - rank(HZ)`.
    pub fn dimension(&self) -> usize {
        self.num_qubits() - self.hx.rank() - self.hz.rank()
    }

    /// Reusable membership test for one sector's logical classes.
    pub fn logical_checker(&self, sector: Sector) -> LogicalChecker {
        LogicalChecker {
            syndrome_matrix: self.matrix(sector).clone(),
            stabilizers: RowSpace::new(self.matrix(sector.other())),
        }
    }

    /// A full basis of the sector's logical operators: kernel vectors of the
    /// sector matrix that are independent modulo the opposite sector's row
    /// space. Returns `dimension()` vectors; each is a valid argument to
    /// [`LogicalChecker::is_failure`] and reports a failure.
    pub fn logical_basis(&self, sector: Sector) -> Vec<BitVector> {
        let mut space = PivotSpace::new();
        let stabilizers = self.matrix(sector.other());
        for r in 0..stabilizers.rows() {
            space.insert(stabilizers.row_vector(r));
        }
        let mut basis = Vec::new();
        for v in self.matrix(sector).kernel_basis() {
            if space.insert(v.clone()) {
                basis.push(v);
            }
        }
        basis
    }

    /// Whether `e` is a nontrivial logical operator of the sector: it must
    /// satisfy every sector check and must not be a product of
    /// opposite-sector stabilizers.
    ///
    /// # Panics
    ///
    /// Panics if `e` violates a sector check; callers are expected to test
    /// residuals after decoding, which are syndrome-free by construction.
    pub fn is_logical_failure(&self, sector: Sector, e: &BitVector) -> bool {
        self.logical_checker(sector).is_failure(e)
    }

    /// Smallest weight of a sector logical, searched by exhaustive
    /// enumeration of supports up to `max_weight`. Returns the first
    /// (lexicographically least) minimal-weight representative, or `None`
    /// if the sector has no logical of weight `<= max_weight`.
    pub fn min_logical_weight(&self, sector: Sector, max_weight: usize) -> Option<BitVector> {
        let h = self.matrix(sector);
        let stabilizers = RowSpace::new(self.matrix(sector.other()));
        let n = h.cols();
        let columns: Vec<BitVector> = (0..n).map(|c| h.column_vector(c)).collect();
        let mut syndrome = BitVector::zeros(h.rows());
        let mut chosen: Vec<usize> = Vec::new();
        for w in 1..=max_weight.min(n) {
            if let Some(found) = search_supports(
                &columns,
                &stabilizers,
                n,
                w,
                0,
                &mut syndrome,
                &mut chosen,
            ) {
                return Some(found);
            }
        }
        None
    }
}

/// Cached data for repeated logical-failure tests in one sector.
#[derive(Debug, Clone)]
pub struct LogicalChecker {
    syndrome_matrix: BinaryMatrix,
    stabilizers: RowSpace,
}

impl LogicalChecker {
    /// See [`CssCode::is_logical_failure`].
    ///
    /// # Panics
    ///
    /// Panics if `e` has a nonzero syndrome.
    pub fn is_failure(&self, e: &BitVector) -> bool {
        assert!(
            self.syndrome_matrix.mul_vector(e).is_zero(),
            "logical-failure test requires a syndrome-free pattern"
        );
        !self.stabilizers.contains(e)
    }
}

/// Incremental row-echelon span: vectors keyed by their leading column.
struct PivotSpace {
    rows: Vec<(usize, BitVector)>,
}

impl PivotSpace {
    fn new() -> Self {
        PivotSpace { rows: Vec::new() }
    }

    /// Reduces `v` against the span and absorbs the remainder. Returns
    /// `true` when `v` enlarged the span.
    fn insert(&mut self, mut v: BitVector) -> bool {
        loop {
            let Some(pivot) = v.first_one() else {
                return false;
            };
            match self.rows.binary_search_by_key(&pivot, |(p, _)| *p) {
                Ok(i) => v.xor_assign(&self.rows[i].1),
                Err(i) => {
                    self.rows.insert(i, (pivot, v));
                    return true;
                }
            }
        }
    }
}

fn search_supports(
    columns: &[BitVector],
    stabilizers: &RowSpace,
    n: usize,
    remaining: usize,
    start: usize,
    syndrome: &mut BitVector,
    chosen: &mut Vec<usize>,
) -> Option<BitVector> {
    if remaining == 0 {
        if syndrome.is_zero() {
            let candidate = BitVector::from_support(n, chosen);
            if !stabilizers.contains(&candidate) {
                return Some(candidate);
            }
        }
        return None;
    }
    for c in start..=(n - remaining) {
        syndrome.xor_assign(&columns[c]);
        chosen.push(c);
        let found =
            search_supports(columns, stabilizers, n, remaining - 1, c + 1, syndrome, chosen);
        chosen.pop();
        syndrome.xor_assign(&columns[c]);
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Where a product qubit comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitRole {
    /// Vertex pair `(v1, v2)`.
    Red(usize, usize),
    /// Check pair `(c1, c2)`.
    Blue(usize, usize),
}

/// A hypergraph product code that remembers its factor layout.
#[derive(Debug, Clone)]
pub struct ProductCode {
    css: CssCode,
    n1: usize,
    m1: usize,
    n2: usize,
    m2: usize,
}

impl ProductCode {
    /// Build the hypergraph product of two check matrices.
    pub fn hypergraph(w1: &BinaryMatrix, w2: &BinaryMatrix) -> Self {
        let (m1, n1) = (w1.rows(), w1.cols());
        let (m2, n2) = (w2.rows(), w2.cols());
        let hx = BinaryMatrix::kron(w1, &BinaryMatrix::identity(n2))
            .hconcat(&BinaryMatrix::kron(&BinaryMatrix::identity(m1), &w2.transpose()));
        let hz = BinaryMatrix::kron(&BinaryMatrix::identity(n1), w2)
            .hconcat(&BinaryMatrix::kron(&w1.transpose(), &BinaryMatrix::identity(m2)));
        let css = CssCode::new(hx, hz).expect("hypergraph products are orthogonal");
        Self { css, n1, m1, n2, m2 }
    }

    pub fn css(&self) -> &CssCode {
        &self.css
    }

    pub fn into_css(self) -> CssCode {
        self.css
    }

    pub fn num_qubits(&self) -> usize {
        self.css.num_qubits()
    }

    pub fn dimension(&self) -> usize {
        self.css.dimension()
    }

    pub fn num_red(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn num_blue(&self) -> usize {
        self.m1 * self.m2
    }

    pub fn factor_dims(&self) -> (usize, usize, usize, usize) {
        (self.n1, self.m1, self.n2, self.m2)
    }

    /// Qubit hosted on vertex pair `(v1, v2)`.
    pub fn red_index(&self, v1: usize, v2: usize) -> usize {
        assert!(v1 < self.n1 && v2 < self.n2);
        v1 * self.n2 + v2
    }

    /// Qubit hosted on check pair `(c1, c2)`.
    pub fn blue_index(&self, c1: usize, c2: usize) -> usize {
        assert!(c1 < self.m1 && c2 < self.m2);
        self.num_red() + c1 * self.m2 + c2
    }

    pub fn qubit_role(&self, q: usize) -> QubitRole {
        assert!(q < self.num_qubits());
        if q < self.num_red() {
            QubitRole::Red(q / self.n2, q % self.n2)
        } else {
            let b = q - self.num_red();
            QubitRole::Blue(b / self.m2, b % self.m2)
        }
    }

    /// X stabilizer indexed by `(c1, v2)`.
    pub fn x_check_index(&self, c1: usize, v2: usize) -> usize {
        assert!(c1 < self.m1 && v2 < self.n2);
        c1 * self.n2 + v2
    }

    /// Z stabilizer indexed by `(v1, c2)`.
    pub fn z_check_index(&self, v1: usize, c2: usize) -> usize {
        assert!(v1 < self.n1 && c2 < self.m2);
        v1 * self.m2 + c2
    }

    /// Bare logical built from factor codewords. Sector X uses the column
    /// `C1 (x) e_{v2}` with `v2` the lowest set bit of `c2`; sector Z uses
    /// the row `e_{v1} (x) C2`. Both live entirely on red qubits and their
    /// pairing overlap is the single qubit `(v1, v2)`.
    ///
    /// # Panics
    ///
    /// Panics if either codeword is zero or has the wrong length.
    pub fn bare_logical(&self, sector: Sector, c1: &BitVector, c2: &BitVector) -> BitVector {
        assert_eq!(c1.len(), self.n1, "first factor codeword length");
        assert_eq!(c2.len(), self.n2, "second factor codeword length");
        let mut out = BitVector::zeros(self.num_qubits());
        match sector {
            Sector::X => {
                let v2 = c2.first_one().expect("second factor codeword is zero");
                for v1 in c1.iter_ones() {
                    out.set(self.red_index(v1, v2), true);
                }
            }
            Sector::Z => {
                let v1 = c1.first_one().expect("first factor codeword is zero");
                for v2 in c2.iter_ones() {
                    out.set(self.red_index(v1, v2), true);
                }
            }
        }
        out
    }
}
