//! Bit-parallel Gaussian elimination over GF(2).

use crate::construct::{words_for, BinaryMatrix};

/// Rank of `h` over GF(2). `h` is copied, not modified.
pub fn gf2_rank(h: &BinaryMatrix) -> usize {
    let wpr = h.words_per_row();
    let mut rows: Vec<u64> = h.packed().to_vec();
    let n_rows = h.rows();
    let mut rank = 0;
    for col in 0..h.cols() {
        if rank == n_rows {
            break;
        }
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..n_rows).find(|&r| rows[r * wpr + w] & bit != 0) else {
            continue;
        };
        if pivot != rank {
            for k in w..wpr {
                rows.swap(pivot * wpr + k, rank * wpr + k);
            }
        }
        let (head, tail) = rows.split_at_mut((rank + 1) * wpr);
        let pivot_row = &head[rank * wpr..];
        for chunk in tail.chunks_exact_mut(wpr) {
            if chunk[w] & bit != 0 {
                for k in w..wpr {
                    chunk[k] ^= pivot_row[k];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Null space of `h` as packed words (`words_for(cols)` words per vector).
pub(crate) fn null_space_packed(h: &BinaryMatrix) -> Vec<Vec<u64>> {
    let wpr = h.words_per_row();
    let n_rows = h.rows();
    let cols = h.cols();
    let mut rows: Vec<u64> = h.packed().to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == n_rows {
            break;
        }
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..n_rows).find(|&r| rows[r * wpr + w] & bit != 0) else {
            continue;
        };
        if pivot != rank {
            for k in 0..wpr {
                rows.swap(pivot * wpr + k, rank * wpr + k);
            }
        }
        let pivot_row: Vec<u64> = rows[rank * wpr..(rank + 1) * wpr].to_vec();
        for (r, chunk) in rows.chunks_exact_mut(wpr).enumerate() {
            if r != rank && chunk[w] & bit != 0 {
                for k in w..wpr {
                    chunk[k] ^= pivot_row[k];
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }

    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let wv = words_for(cols);
    let mut basis = Vec::with_capacity(cols - rank);
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u64; wv];
        v[free / 64] |= 1 << (free % 64);
        let (w, bit) = (free / 64, 1u64 << (free % 64));
        for (r, &p) in pivots.iter().enumerate() {
            if rows[r * wpr + w] & bit != 0 {
                v[p / 64] |= 1 << (p % 64);
            }
        }
        basis.push(v);
    }
    basis
}

/// Minimum Hamming weight of a nonzero codeword in the null space of `h`, by
/// Gray-code enumeration of all `2^k - 1` nonzero codewords. Returns `None`
/// when the dimension exceeds `max_dimension` or is zero.
pub fn exhaustive_min_distance(h: &BinaryMatrix, max_dimension: usize) -> Option<usize> {
    let basis = null_space_packed(h);
    let k = basis.len();
    if k == 0 || k > max_dimension || k >= 64 {
        return None;
    }
    let wv = words_for(h.cols());
    let mut word = vec![0u64; wv];
    let mut best = usize::MAX;
    for i in 1u64..(1u64 << k) {
        let flip = i.trailing_zeros() as usize;
        for (a, b) in word.iter_mut().zip(&basis[flip]) {
            *a ^= b;
        }
        let w: u32 = word.iter().map(|x| x.count_ones()).sum();
        best = best.min(w as usize);
    }
    Some(best)
}
