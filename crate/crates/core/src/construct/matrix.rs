use crate::{Error, Result};

/// Dense bit-packed GF(2) matrix with a sparse row/column index built once at
/// construction. The matrix is immutable afterwards.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
    row_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    col_ptr: Vec<usize>,
    col_idx: Vec<usize>,
}

impl std::fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BinaryMatrix({}x{}, nnz={})", self.rows, self.cols, self.nnz())
    }
}

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

impl BinaryMatrix {
    /// Builds a matrix from the column indices of the ones in each row.
    /// Duplicate indices within a row cancel in pairs (GF(2) addition).
    pub fn from_row_supports(rows: usize, cols: usize, supports: &[Vec<usize>]) -> Result<Self> {
        if supports.len() != rows {
            return Err(Error::LengthMismatch {
                expected: rows,
                got: supports.len(),
            });
        }
        let words_per_row = words_for(cols);
        let mut bits = vec![0u64; rows * words_per_row];
        for (r, support) in supports.iter().enumerate() {
            for &c in support {
                if c >= cols {
                    return Err(Error::params(format!(
                        "column index {c} out of range for {cols} columns"
                    )));
                }
                bits[r * words_per_row + c / 64] ^= 1 << (c % 64);
            }
        }
        Ok(Self::from_bits(rows, cols, bits))
    }

    /// Builds a matrix from 0/1 rows; any nonzero byte counts as a one.
    pub fn from_dense(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut supports = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            supports.push(
                row.iter()
                    .enumerate()
                    .filter(|(_, &b)| b != 0)
                    .map(|(c, _)| c)
                    .collect(),
            );
        }
        Self::from_row_supports(rows.len(), cols, &supports)
    }

    pub fn identity(n: usize) -> Self {
        let supports: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        Self::from_row_supports(n, n, &supports).expect("identity is well formed")
    }

    pub(crate) fn from_bits(rows: usize, cols: usize, bits: Vec<u64>) -> Self {
        let words_per_row = words_for(cols);
        debug_assert_eq!(bits.len(), rows * words_per_row);
        let mut row_ptr = Vec::with_capacity(rows + 1);
        let mut row_idx = Vec::new();
        let mut col_count = vec![0usize; cols];
        row_ptr.push(0);
        for r in 0..rows {
            for (w, &word) in bits[r * words_per_row..(r + 1) * words_per_row].iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let c = w * 64 + word.trailing_zeros() as usize;
                    row_idx.push(c);
                    col_count[c] += 1;
                    word &= word - 1;
                }
            }
            row_ptr.push(row_idx.len());
        }
        let mut col_ptr = Vec::with_capacity(cols + 1);
        col_ptr.push(0);
        for c in 0..cols {
            col_ptr.push(col_ptr[c] + col_count[c]);
        }
        let mut fill = col_ptr[..cols].to_vec();
        let mut col_idx = vec![0usize; row_idx.len()];
        for r in 0..rows {
            for &c in &row_idx[row_ptr[r]..row_ptr[r + 1]] {
                col_idx[fill[c]] = r;
                fill[c] += 1;
            }
        }
        BinaryMatrix {
            rows,
            cols,
            words_per_row,
            bits,
            row_ptr,
            row_idx,
            col_ptr,
            col_idx,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.row_idx.len()
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.bits[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1
    }

    /// Sorted column indices of the ones in row `r`.
    pub fn row(&self, r: usize) -> &[usize] {
        &self.row_idx[self.row_ptr[r]..self.row_ptr[r + 1]]
    }

    /// Sorted row indices of the ones in column `c`.
    pub fn col(&self, c: usize) -> &[usize] {
        &self.col_idx[self.col_ptr[c]..self.col_ptr[c + 1]]
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_ptr[r + 1] - self.row_ptr[r]
    }

    pub fn col_weight(&self, c: usize) -> usize {
        self.col_ptr[c + 1] - self.col_ptr[c]
    }

    pub fn words_per_row(&self) -> usize {
        self.words_per_row
    }

    /// Packed words of row `r`; bit `c % 64` of word `c / 64` is entry `(r, c)`.
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    pub(crate) fn packed(&self) -> &[u64] {
        &self.bits
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) as u8).collect())
            .collect()
    }

    /// Horizontal concatenation of matrices with equal row counts.
    pub fn hstack(blocks: &[BinaryMatrix]) -> Result<Self> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let mut supports = vec![Vec::new(); rows];
        let mut offset = 0;
        for b in blocks {
            if b.rows != rows {
                return Err(Error::LengthMismatch {
                    expected: rows,
                    got: b.rows,
                });
            }
            for (r, s) in supports.iter_mut().enumerate() {
                s.extend(b.row(r).iter().map(|c| c + offset));
            }
            offset += b.cols;
        }
        Self::from_row_supports(rows, offset, &supports)
    }

    /// Matrix with column `c` of `self` moved to position `perm[c]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: perm.len(),
            });
        }
        let supports: Vec<Vec<usize>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(|&c| perm[c]).collect())
            .collect();
        Self::from_row_supports(self.rows, self.cols, &supports)
    }
}
