//! Bit-packed GF(2) vectors and matrices.
//!
//! Rows are packed into `u64` words (row-major), so row elimination is a
//! word-wide XOR sweep. All reductions pivot on the first set bit of the
//! candidate rows, which makes the reduced row echelon form (and everything
//! derived from it: rank, kernel basis, solutions) a deterministic function
//! of the input bit pattern.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Shape error for binary matrix operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionMismatch {
    pub expected: usize,
    pub got: usize,
}

impl fmt::Display for DimensionMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dimension mismatch: expected {}, got {}",
            self.expected, self.got
        )
    }
}

impl core::error::Error for DimensionMismatch {}

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Bit vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Vector with ones exactly at `support`.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// XOR another vector of the same length into this one.
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of unequal lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Weight of `self ^ other` without materializing the sum.
    pub fn xor_weight(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len, "xor of unequal lengths");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Parity of the overlap `<self, other>` over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot of unequal lengths");
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    /// Indices of set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            core::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    /// Index of the lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Dense bit-packed matrix over GF(2), row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = words_for(cols);
        Self {
            rows,
            cols,
            words_per_row,
            words: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Build from per-row support lists.
    pub fn from_supports(rows: usize, cols: usize, supports: &[Vec<usize>]) -> Self {
        assert_eq!(supports.len(), rows, "support list count != row count");
        let mut m = Self::zeros(rows, cols);
        for (r, support) in supports.iter().enumerate() {
            for &c in support {
                m.set(r, c, true);
            }
        }
        m
    }

    pub fn from_rows(rows: &[BitVector]) -> Self {
        let cols = rows.first().map_or(0, BitVector::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            m.row_mut(r).copy_from_slice(&row.words);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    fn row(&self, r: usize) -> &[u64] {
        &self.words[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    #[inline]
    fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.words[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        (self.row(r)[c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        let mask = 1u64 << (c % WORD_BITS);
        let w = &mut self.row_mut(r)[c / WORD_BITS];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn row_vector(&self, r: usize) -> BitVector {
        BitVector {
            len: self.cols,
            words: self.row(r).to_vec(),
        }
    }

    pub fn column_vector(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    /// Support (set-bit columns) of row `r`, ascending.
    pub fn row_support(&self, r: usize) -> Vec<usize> {
        self.row_vector(r).support()
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let (src_row, dst_row) = if src < dst {
            let (a, b) = self.words.split_at_mut(dst * self.words_per_row);
            (
                &a[src * self.words_per_row..(src + 1) * self.words_per_row],
                &mut b[..self.words_per_row],
            )
        } else {
            let (a, b) = self.words.split_at_mut(src * self.words_per_row);
            (
                &b[..self.words_per_row],
                &mut a[dst * self.words_per_row..(dst + 1) * self.words_per_row],
            )
        };
        for (d, s) in dst_row.iter_mut().zip(src_row) {
            *d ^= s;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words_per_row {
            self.words.swap(a * self.words_per_row + k, b * self.words_per_row + k);
        }
    }

    /// In-place reduced row echelon form. Returns the pivot columns in order.
    ///
    /// Columns are processed left to right; the pivot for each column is the
    /// first remaining row with that column as its leading bit, so the result
    /// is a deterministic canonical form.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            if next_row == self.rows {
                break;
            }
            let Some(pivot_row) = (next_row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(next_row, pivot_row);
            for r in 0..self.rows {
                if r != next_row && self.get(r, col) {
                    self.xor_row_into(next_row, r);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.rref_in_place().len()
    }

    /// Basis of the right kernel `{ x : A x = 0 }` in a canonical order
    /// (one basis vector per free column, free columns ascending).
    ///
    /// A zero matrix yields the standard basis; a full-column-rank matrix
    /// yields an empty vector.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let mut rref = self.clone();
        let pivots = rref.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = BitVector::zeros(self.cols);
            v.set(free, true);
            for (row, &pc) in pivots.iter().enumerate() {
                if rref.get(row, free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `A x = rhs`, or `None` when the system is
    /// inconsistent. Free variables are set to zero, so the result is
    /// deterministic.
    pub fn solve(&self, rhs: &BitVector) -> Result<Option<BitVector>, DimensionMismatch> {
        if rhs.len() != self.rows {
            return Err(DimensionMismatch {
                expected: self.rows,
                got: rhs.len(),
            });
        }
        // Eliminate on an augmented copy [A | rhs].
        let mut work = BinaryMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for (w, &src) in work.row_mut(r).iter_mut().zip(self.row(r)) {
                *w = src;
            }
            work.set(r, self.cols, rhs.get(r));
        }
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            if next_row == work.rows {
                break;
            }
            let Some(pivot_row) = (next_row..work.rows).find(|&r| work.get(r, col)) else {
                continue;
            };
            work.swap_rows(next_row, pivot_row);
            for r in 0..work.rows {
                if r != next_row && work.get(r, col) {
                    work.xor_row_into(next_row, r);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        // A leftover 1 in the augmented column means rhs is outside the image.
        for r in next_row..self.rows {
            if work.get(r, self.cols) {
                return Ok(None);
            }
        }
        let mut x = BitVector::zeros(self.cols);
        for (row, &col) in pivots.iter().enumerate() {
            if work.get(row, self.cols) {
                x.set(col, true);
            }
        }
        Ok(Some(x))
    }

    /// Whether `v` lies in the row space of this matrix.
    pub fn row_space_contains(&self, v: &BitVector) -> Result<bool, DimensionMismatch> {
        if v.len() != self.cols {
            return Err(DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok(RowSpace::new(self).contains(v))
    }

    /// Matrix product over GF(2).
    pub fn matmul(&self, other: &BinaryMatrix) -> Result<BinaryMatrix, DimensionMismatch> {
        if self.cols != other.rows {
            return Err(DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = BinaryMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in self.row_vector(r).iter_ones() {
                out.xor_external_row(r, other.row(k));
            }
        }
        Ok(out)
    }

    fn xor_external_row(&mut self, dst: usize, src: &[u64]) {
        for (d, s) in self.row_mut(dst).iter_mut().zip(src) {
            *d ^= s;
        }
    }

    /// Matrix-vector product `A x`.
    pub fn mul_vector(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.cols, "mul_vector shape");
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            let mut acc = 0u64;
            for (a, b) in self.row(r).iter().zip(&x.words) {
                acc ^= a & b;
            }
            if acc.count_ones() % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_vector(r).iter_ones() {
                out.set(c, r, true);
            }
        }
        out
    }

    /// Kronecker (tensor) product: `(self ⊗ other)[(i1,i2),(j1,j2)]`.
    pub fn kron(&self, other: &BinaryMatrix) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in self.row_vector(i1).iter_ones() {
                for i2 in 0..other.rows {
                    for j2 in other.row_vector(i2).iter_ones() {
                        out.set(i1 * other.rows + i2, j1 * other.cols + j2, true);
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.rows, other.rows, "hconcat row counts differ");
        let mut out = BinaryMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in self.row_vector(r).iter_ones() {
                out.set(r, c, true);
            }
            for c in other.row_vector(r).iter_ones() {
                out.set(r, self.cols + c, true);
            }
        }
        out
    }

    /// Copy of the matrix keeping only the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(rows.len(), self.cols);
        for (dst, &src) in rows.iter().enumerate() {
            out.row_mut(dst).copy_from_slice(self.row(src));
        }
        out
    }

    /// Copy of the matrix keeping only the listed columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (dst, &src) in cols.iter().enumerate() {
                if self.get(r, src) {
                    out.set(r, dst, true);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Reduced row echelon form of a matrix, retained for repeated row-space
/// membership queries.
#[derive(Debug, Clone)]
pub struct RowSpace {
    rows: Vec<BitVector>,
}

impl RowSpace {
    pub fn new(m: &BinaryMatrix) -> Self {
        let mut rref = m.clone();
        let pivot_count = rref.rref_in_place().len();
        let rows = (0..pivot_count).map(|r| rref.row_vector(r)).collect();
        Self { rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; membership iff the remainder vanishes.
    pub fn contains(&self, v: &BitVector) -> bool {
        let mut rem = v.clone();
        for row in &self.rows {
            let Some(lead) = row.first_one() else { continue };
            if rem.get(lead) {
                rem.xor_assign(row);
            }
        }
        rem.is_zero()
    }
}
