use super::DecodeOutcome;
use crate::construct::BinaryMatrix;

/// Peeling decoder for the all-zero transmission with the given erased positions.
pub fn peel_decode(h: &BinaryMatrix, erased: &[usize]) -> DecodeOutcome {
    let mut received = vec![Some(0u8); h.cols()];
    for &c in erased {
        received[c] = None;
    }
    peel_decode_word(h, &received)
}

/// Repeatedly resolves a check with a single erased neighbour. Whatever remains
/// is the largest stopping set inside the erasure pattern; those positions are
/// reported in `residual` and left as 0 in `bits`.
/// `iterations_used` counts resolved erasures.
pub fn peel_decode_word(h: &BinaryMatrix, received: &[Option<u8>]) -> DecodeOutcome {
    peel_with(h, received, |pending| pending.len() - 1)
}

pub(crate) fn peel_with(
    h: &BinaryMatrix,
    received: &[Option<u8>],
    mut pick: impl FnMut(&[usize]) -> usize,
) -> DecodeOutcome {
    assert_eq!(received.len(), h.cols(), "received word length must equal cols");
    let mut bits: Vec<u8> = received.iter().map(|b| b.unwrap_or(0)).collect();
    let mut erased: Vec<bool> = received.iter().map(Option::is_none).collect();
    let mut open: Vec<u32> = (0..h.rows())
        .map(|r| h.row(r).iter().filter(|&&c| erased[c]).count() as u32)
        .collect();
    let mut pending: Vec<usize> = (0..h.rows()).filter(|&r| open[r] == 1).collect();
    let mut resolved = 0;
    while !pending.is_empty() {
        let i = pick(&pending);
        let r = pending.swap_remove(i);
        if open[r] != 1 {
            continue;
        }
        let Some(&target) = h.row(r).iter().find(|&&c| erased[c]) else {
            continue;
        };
        bits[target] = h
            .row(r)
            .iter()
            .filter(|&&c| c != target)
            .fold(0, |acc, &c| acc ^ bits[c]);
        erased[target] = false;
        resolved += 1;
        for &rr in h.col(target) {
            open[rr] -= 1;
            if open[rr] == 1 {
                pending.push(rr);
            }
        }
    }
    let residual: Vec<usize> = (0..h.cols()).filter(|&c| erased[c]).collect();
    DecodeOutcome {
        converged: residual.is_empty() && super::syndrome_is_zero(h, &bits),
        bits,
        iterations_used: resolved,
        residual,
    }
}
