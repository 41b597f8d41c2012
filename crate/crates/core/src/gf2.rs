//! Dense linear algebra over GF(2).
//!
//! [`BitMatrix`] stores each row as a run of `u64` words, so row additions are
//! word-wide XORs. Column operations (the bread and butter of tableau
//! conjugation) touch one bit per row.

use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(cols: usize) -> usize {
    cols.div_ceil(WORD_BITS)
}

/// Dense bit matrix with word-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, true);
        }
        m
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, true);
            }
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries. Any nonzero entry counts as 1.
    ///
    /// # Panics
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged row {r}");
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Builds a `rows x cols` matrix from per-row supports (0-based column indices).
    pub fn from_supports(rows: usize, cols: usize, supports: &[Vec<usize>]) -> Self {
        assert_eq!(supports.len(), rows);
        let mut m = Self::zeros(rows, cols);
        for (r, supp) in supports.iter().enumerate() {
            for &c in supp {
                m.set(r, c, true);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<bool>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, &b) in col.iter().enumerate() {
                if b {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / WORD_BITS];
        let mask = 1u64 << (c % WORD_BITS);
        if v {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.stride + c / WORD_BITS] ^= 1u64 << (c % WORD_BITS);
    }

    #[inline]
    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// Row `r` as a vector of bits.
    pub fn row(&self, r: usize) -> Vec<bool> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    /// Column `c` as a vector of bits.
    pub fn column(&self, c: usize) -> Vec<bool> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Sorted column indices of the ones in row `r`.
    pub fn row_support(&self, r: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.row_words(r).iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * WORD_BITS + b);
                w &= w - 1;
            }
        }
        out
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row_words(r).iter().all(|&w| w == 0)
    }

    pub fn column_is_zero(&self, c: usize) -> bool {
        (0..self.rows).all(|r| !self.get(r, c))
    }

    /// `row[dst] += row[src]`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        if src == dst {
            // x + x = 0
            self.data[dst * self.stride..(dst + 1) * self.stride].fill(0);
            return;
        }
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s] as &[u64], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, &w) in b.iter_mut().zip(a) {
            *d ^= w;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// `col[dst] += col[src]`.
    pub fn add_col(&mut self, src: usize, dst: usize) {
        for r in 0..self.rows {
            if self.get(r, src) {
                self.flip(r, dst);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            let (x, y) = (self.get(r, a), self.get(r, b));
            if x != y {
                self.flip(r, a);
                self.flip(r, b);
            }
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_support(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    ///
    /// # Panics
    ///
    /// Panics on a dimension mismatch.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in self.row_support(r) {
                let src = other.row_words(k);
                let dst = &mut out.data[r * out.stride..(r + 1) * out.stride];
                for (d, &w) in dst.iter_mut().zip(src) {
                    *d ^= w;
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in self.row_support(r) {
                out.set(r, c, true);
            }
            for c in other.row_support(r) {
                out.set(r, self.cols + c, true);
            }
        }
        out
    }

    /// Vertical concatenation of `self` over `other`.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        BitMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        }
    }

    /// New matrix made of the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, j, true);
                }
            }
        }
        out
    }

    /// New matrix made of the listed rows, in order.
    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.data[i * self.stride..(i + 1) * self.stride].copy_from_slice(self.row_words(r));
        }
        out
    }

    /// Permutes columns so that column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> BitMatrix {
        assert_eq!(perm.len(), self.cols);
        self.select_columns(perm)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<&str> = (0..self.cols).map(|c| if self.get(r, c) { "1" } else { "0" }).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Outcome of [`rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrefResult {
    pub reduced: BitMatrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
    /// Column `j` of `reduced` is column `column_perm[j]` of the input.
    pub column_perm: Vec<usize>,
}

/// Gauss-Jordan elimination in place, searching pivots only in `col_order`
/// (in that order). Returns the pivot columns; row `i` has its pivot at
/// `pivots[i]` and the pivot column is zero elsewhere.
pub(crate) fn eliminate(m: &mut BitMatrix, col_order: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for &c in col_order {
        if next == m.rows {
            break;
        }
        let Some(p) = (next..m.rows).find(|&r| m.get(r, c)) else {
            continue;
        };
        m.swap_rows(p, next);
        for r in 0..m.rows {
            if r != next && m.get(r, c) {
                m.add_row(next, r);
            }
        }
        pivots.push(c);
        next += 1;
    }
    pivots
}

pub fn rank(m: &BitMatrix) -> usize {
    let mut work = m.clone();
    let order: Vec<usize> = (0..m.cols).collect();
    eliminate(&mut work, &order).len()
}

/// Reduced row-echelon form.
///
/// With `allow_column_swaps`, the pivot columns are moved to the front
/// (keeping their relative order, then the remaining columns in order) so the
/// leading `rank x rank` block is the identity; `column_perm` records the move.
pub fn rref(m: &BitMatrix, allow_column_swaps: bool) -> RrefResult {
    let mut reduced = m.clone();
    let order: Vec<usize> = (0..m.cols).collect();
    let pivots = eliminate(&mut reduced, &order);
    let rank = pivots.len();
    if !allow_column_swaps {
        return RrefResult {
            reduced,
            pivot_cols: pivots,
            rank,
            column_perm: order,
        };
    }
    let mut perm = pivots.clone();
    perm.extend((0..m.cols).filter(|c| !pivots.contains(c)));
    RrefResult {
        reduced: reduced.permute_columns(&perm),
        pivot_cols: (0..rank).collect(),
        rank,
        column_perm: perm,
    }
}

/// Solves `a * x = b` for `x` (a.cols x b.cols). Free variables are zero.
pub fn solve(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch {
            what: "solve",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let mut aug = a.hstack(b);
    let order: Vec<usize> = (0..a.cols).collect();
    let pivots = eliminate(&mut aug, &order);
    let rank = pivots.len();
    for r in rank..aug.rows {
        if let Some(c) = (a.cols..aug.cols).find(|&c| aug.get(r, c)) {
            return Err(Error::NoSolution { column: c - a.cols });
        }
    }
    let mut x = BitMatrix::zeros(a.cols, b.cols);
    for (r, &pc) in pivots.iter().enumerate() {
        for k in 0..b.cols {
            if aug.get(r, a.cols + k) {
                x.set(pc, k, true);
            }
        }
    }
    Ok(x)
}

/// Factors `m = p * q` with `p` of shape rows x rank and `q` of shape rank x cols.
///
/// `p` is the pivot columns of `m` and `q` the nonzero rows of its RREF.
pub fn rank_factorize(m: &BitMatrix) -> (BitMatrix, BitMatrix) {
    let r = rref(m, false);
    let p = m.select_columns(&r.pivot_cols);
    let keep: Vec<usize> = (0..r.rank).collect();
    let q = r.reduced.select_rows(&keep);
    (p, q)
}

/// True iff `a` and `b` span the same row space.
pub fn row_space_equal(a: &BitMatrix, b: &BitMatrix) -> Result<bool> {
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch {
            what: "row_space_equal",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let ra = rank(a);
    Ok(ra == rank(b) && ra == rank(&a.vstack(b)))
}

/// True iff `v` (length `m.cols`) lies in the row space of `m`.
pub fn in_row_space(m: &BitMatrix, v: &[bool]) -> bool {
    let mut row = BitMatrix::zeros(1, m.cols);
    for (c, &b) in v.iter().enumerate() {
        row.set(0, c, b);
    }
    rank(m) == rank(&m.vstack(&row))
}
