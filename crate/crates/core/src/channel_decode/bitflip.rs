use super::{syndrome_unchecked, DecodeOutcome};
use crate::construct::BinaryMatrix;
use crate::{Error, Result};

/// Parallel bit flipping on hard decisions.
///
/// Each round flips every bit that sits in more unsatisfied checks than
/// satisfied ones. Stops on a zero syndrome, when no bit qualifies, or after
/// `max_iter` rounds.
pub fn bit_flip_decode(h: &BinaryMatrix, bits: &[u8], max_iter: usize) -> Result<DecodeOutcome> {
    if bits.len() != h.cols() {
        return Err(Error::LengthMismatch {
            expected: h.cols(),
            got: bits.len(),
        });
    }
    let mut word: Vec<u8> = bits.iter().map(|b| b & 1).collect();
    let mut s = syndrome_unchecked(h, &word);
    let mut iterations = 0;
    while iterations < max_iter && s.contains(&1) {
        let flips: Vec<usize> = (0..h.cols())
            .filter(|&c| {
                let unsat = h.col(c).iter().filter(|&&r| s[r] == 1).count();
                2 * unsat > h.col_weight(c)
            })
            .collect();
        if flips.is_empty() {
            break;
        }
        iterations += 1;
        for &c in &flips {
            word[c] ^= 1;
            for &r in h.col(c) {
                s[r] ^= 1;
            }
        }
    }
    Ok(DecodeOutcome {
        converged: s.iter().all(|&x| x == 0),
        bits: word,
        iterations_used: iterations,
        residual: Vec::new(),
    })
}
