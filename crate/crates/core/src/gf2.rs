//! Dense matrices over GF(2) with bit-packed rows.
//!
//! Rows are stored as runs of `u64` words; bit `j % 64` of word `j / 64`
//! holds column `j`. Bits past `cols` are always zero.

use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(cols: usize) -> usize {
    cols.div_ceil(WORD_BITS)
}

/// A dense matrix over GF(2).
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

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of booleans. All rows must have length `cols`.
    pub fn from_rows<R: AsRef<[bool]>>(rows: &[R], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, &bit) in row.iter().enumerate() {
                m.set(i, j, bit);
            }
        }
        Ok(m)
    }

    /// Convenience constructor from 0/1 integers, used heavily in tests.
    pub fn from_bits(rows: &[&[u8]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let bools: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| r.iter().map(|&b| b != 0).collect())
            .collect();
        Self::from_rows(&bools, cols)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols, "index ({row}, {col}) out of bounds");
        (self.data[row * self.stride + col / WORD_BITS] >> (col % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows && col < self.cols, "index ({row}, {col}) out of bounds");
        let word = &mut self.data[row * self.stride + col / WORD_BITS];
        let mask = 1u64 << (col % WORD_BITS);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, row: usize, col: usize) {
        assert!(row < self.rows && col < self.cols, "index ({row}, {col}) out of bounds");
        self.data[row * self.stride + col / WORD_BITS] ^= 1u64 << (col % WORD_BITS);
    }

    /// The packed words of one row.
    #[inline]
    pub fn row_words(&self, row: usize) -> &[u64] {
        &self.data[row * self.stride..(row + 1) * self.stride]
    }

    /// True when every entry of column `col` is zero.
    pub fn column_is_zero(&self, col: usize) -> bool {
        (0..self.rows).all(|r| !self.get(r, col))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// GF(2) rank. Elimination runs on a copy of the packed rows.
    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        eliminate(&mut work, self.rows, self.stride)
    }

    /// The submatrix formed by the listed columns, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> Result<Self> {
        if let Some(&bad) = idx.iter().find(|&&j| j >= self.cols) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: self.cols,
            });
        }
        let mut m = Self::zeros(self.rows, idx.len());
        for r in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                if self.get(r, j) {
                    m.set(r, k, true);
                }
            }
        }
        Ok(m)
    }

    /// The principal submatrix on the index set `s`, taken in ascending order.
    pub fn principal_submatrix(&self, s: &[usize]) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut idx = s.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if let Some(&bad) = idx.iter().find(|&&j| j >= self.rows) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: self.rows,
            });
        }
        let mut m = Self::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                if self.get(i, j) {
                    m.set(a, b, true);
                }
            }
        }
        Ok(m)
    }

    /// Columns of `self` followed by columns of `right`.
    pub fn hconcat(&self, right: &Self) -> Result<Self> {
        if self.rows != right.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: right.rows,
            });
        }
        let mut m = Self::zeros(self.rows, self.cols + right.cols);
        for r in 0..self.rows {
            for j in 0..self.cols {
                if self.get(r, j) {
                    m.set(r, j, true);
                }
            }
            for j in 0..right.cols {
                if right.get(r, j) {
                    m.set(r, self.cols + j, true);
                }
            }
        }
        Ok(m)
    }

    /// The matrix with one row and one column removed.
    pub fn delete_row_col(&self, row: usize, col: usize) -> Result<Self> {
        if row >= self.rows {
            return Err(Error::IndexOutOfRange {
                index: row,
                len: self.rows,
            });
        }
        if col >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: col,
                len: self.cols,
            });
        }
        Ok(self.without_row(row).without_column(col))
    }

    pub(crate) fn without_column(&self, col: usize) -> Self {
        let keep: Vec<usize> = (0..self.cols).filter(|&j| j != col).collect();
        self.select_columns(&keep).expect("indices in range")
    }

    pub(crate) fn without_row(&self, row: usize) -> Self {
        let mut m = Self::zeros(self.rows - 1, self.cols);
        let mut dst = 0;
        for r in 0..self.rows {
            if r == row {
                continue;
            }
            m.data[dst * m.stride..(dst + 1) * m.stride].copy_from_slice(self.row_words(r));
            dst += 1;
        }
        m
    }

    /// `row[dst] += row[src]` over GF(2).
    pub(crate) fn add_row(&mut self, src: usize, dst: usize) {
        let stride = self.stride;
        for k in 0..stride {
            let w = self.data[src * stride + k];
            self.data[dst * stride + k] ^= w;
        }
    }

    /// Sum of this matrix and the identity. Requires a square matrix.
    pub fn plus_identity(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut m = self.clone();
        for i in 0..self.rows {
            m.toggle(i, i);
        }
        Ok(m)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|c| if self.get(r, c) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// Forward elimination over `nrows` packed rows of `stride` words each.
/// Each nonzero row pivots on its lowest set column; the return value is the
/// pivot count. The buffer is clobbered.
pub fn eliminate(words: &mut [u64], nrows: usize, stride: usize) -> usize {
    if stride == 1 {
        return rank_words(&mut words[..nrows]);
    }
    let mut rank = 0;
    for i in 0..nrows {
        let row = &words[i * stride..(i + 1) * stride];
        let Some(pivot) = lowest_bit(row) else {
            continue;
        };
        rank += 1;
        let (wi, mask) = (pivot / WORD_BITS, 1u64 << (pivot % WORD_BITS));
        let (head, tail) = words.split_at_mut((i + 1) * stride);
        let src = &head[i * stride..];
        for other in tail.chunks_exact_mut(stride) {
            if other[wi] & mask != 0 {
                for (d, s) in other.iter_mut().zip(src) {
                    *d ^= s;
                }
            }
        }
    }
    rank
}

fn lowest_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(k, &w)| k * WORD_BITS + w.trailing_zeros() as usize)
}

/// Rank of a set of vectors that each fit in one word. Clobbers `rows`.
#[inline]
pub fn rank_words(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let r = rows[i];
        if r == 0 {
            continue;
        }
        rank += 1;
        let mask = r & r.wrapping_neg();
        for other in &mut rows[i + 1..] {
            if *other & mask != 0 {
                *other ^= r;
            }
        }
    }
    rank
}

/// Incremental echelon basis for single-word vectors, keyed by lowest set bit.
#[derive(Clone, Debug)]
pub(crate) struct WordBasis {
    pivots: [u64; 64],
    present: u64,
    rank: usize,
}

impl Default for WordBasis {
    fn default() -> Self {
        Self {
            pivots: [0; 64],
            present: 0,
            rank: 0,
        }
    }
}

impl WordBasis {
    /// Reduces `v` against the basis; inserts it when independent. Returns
    /// whether the rank grew.
    #[inline]
    pub(crate) fn insert(&mut self, mut v: u64) -> bool {
        while v != 0 {
            let low = v.trailing_zeros() as usize;
            if self.present >> low & 1 == 0 {
                self.pivots[low] = v;
                self.present |= 1 << low;
                self.rank += 1;
                return true;
            }
            v ^= self.pivots[low];
        }
        false
    }

    #[inline]
    pub(crate) fn rank(&self) -> usize {
        self.rank
    }
}
