use super::{syndrome_is_zero, DecodeOutcome};
use crate::construct::BinaryMatrix;
use crate::{Error, Result};

/// Magnitude limit applied to every message and to the channel LLRs.
pub const LLR_CLAMP: f64 = 30.0;

/// Flooding sum-product decoder. Edge storage is built once per matrix and
/// reused across frames.
#[derive(Clone, Debug)]
pub struct BpDecoder<'a> {
    h: &'a BinaryMatrix,
    /// Edges in row order: `row_ptr[r]..row_ptr[r + 1]` are the edges of check `r`.
    row_ptr: Vec<usize>,
    edge_var: Vec<usize>,
    /// Edge indices incident to each variable.
    var_ptr: Vec<usize>,
    var_edges: Vec<usize>,
}

impl<'a> BpDecoder<'a> {
    pub fn new(h: &'a BinaryMatrix) -> Self {
        let mut row_ptr = Vec::with_capacity(h.rows() + 1);
        let mut edge_var = Vec::with_capacity(h.nnz());
        row_ptr.push(0);
        for r in 0..h.rows() {
            edge_var.extend_from_slice(h.row(r));
            row_ptr.push(edge_var.len());
        }
        let mut var_ptr = vec![0usize; h.cols() + 1];
        for &v in &edge_var {
            var_ptr[v + 1] += 1;
        }
        for v in 0..h.cols() {
            var_ptr[v + 1] += var_ptr[v];
        }
        let mut fill = var_ptr.clone();
        let mut var_edges = vec![0usize; edge_var.len()];
        for (e, &v) in edge_var.iter().enumerate() {
            var_edges[fill[v]] = e;
            fill[v] += 1;
        }
        BpDecoder {
            h,
            row_ptr,
            edge_var,
            var_ptr,
            var_edges,
        }
    }

    pub fn matrix(&self) -> &BinaryMatrix {
        self.h
    }

    /// Decodes channel LLRs. A posterior of exactly zero leaves the bit
    /// undecided, reported as `0` with `converged = false`.
    pub fn decode(&self, llr: &[f64], max_iter: usize) -> Result<DecodeOutcome> {
        let n = self.h.cols();
        if llr.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: llr.len(),
            });
        }
        let channel: Vec<f64> = llr.iter().map(|&l| clamp(l)).collect();
        let mut total = channel.clone();
        let (mut bits, mut converged) = self.decide(&total);
        if converged || max_iter == 0 {
            return Ok(DecodeOutcome {
                bits,
                converged,
                iterations_used: 0,
                residual: Vec::new(),
            });
        }

        let ne = self.edge_var.len();
        let mut v2c: Vec<f64> = self.edge_var.iter().map(|&v| channel[v]).collect();
        let mut c2v = vec![0.0f64; ne];
        let mut t = Vec::new();
        let mut back = Vec::new();
        let mut iterations = 0;
        while iterations < max_iter {
            iterations += 1;
            for r in 0..self.h.rows() {
                let (lo, hi) = (self.row_ptr[r], self.row_ptr[r + 1]);
                let deg = hi - lo;
                t.clear();
                t.extend(v2c[lo..hi].iter().map(|&m| (0.5 * m).tanh()));
                back.clear();
                back.resize(deg + 1, 1.0);
                for i in (0..deg).rev() {
                    back[i] = back[i + 1] * t[i];
                }
                let mut fwd = 1.0;
                for i in 0..deg {
                    let p = fwd * back[i + 1];
                    c2v[lo + i] = clamp(2.0 * p.atanh());
                    fwd *= t[i];
                }
            }
            for v in 0..n {
                let edges = &self.var_edges[self.var_ptr[v]..self.var_ptr[v + 1]];
                let sum: f64 = channel[v] + edges.iter().map(|&e| c2v[e]).sum::<f64>();
                total[v] = sum;
                for &e in edges {
                    v2c[e] = clamp(sum - c2v[e]);
                }
            }
            (bits, converged) = self.decide(&total);
            if converged {
                break;
            }
        }
        Ok(DecodeOutcome {
            bits,
            converged,
            iterations_used: iterations,
            residual: Vec::new(),
        })
    }

    fn decide(&self, total: &[f64]) -> (Vec<u8>, bool) {
        let undecided = total.iter().any(|&l| l == 0.0 || l.is_nan());
        let bits: Vec<u8> = total.iter().map(|&l| (l < 0.0) as u8).collect();
        let ok = !undecided && syndrome_is_zero(self.h, &bits);
        (bits, ok)
    }
}

fn clamp(x: f64) -> f64 {
    if x.is_nan() {
        0.0
    } else {
        x.clamp(-LLR_CLAMP, LLR_CLAMP)
    }
}

/// One-shot wrapper around [`BpDecoder`].
pub fn bp_decode(h: &BinaryMatrix, llr: &[f64], max_iter: usize) -> Result<DecodeOutcome> {
    BpDecoder::new(h).decode(llr, max_iter)
}
