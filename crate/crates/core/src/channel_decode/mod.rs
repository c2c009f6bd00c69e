//! Channel models and iterative decoders.
//!
//! LLRs are `log P(bit = 0) / P(bit = 1)`: positive values favour 0, and the
//! antipodal map sends bit `b` to `1 - 2b`.

mod bitflip;
mod bp;
mod peel;

pub use bitflip::bit_flip_decode;
pub use bp::{bp_decode, BpDecoder, LLR_CLAMP};
pub use peel::{peel_decode, peel_decode_word};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::analysis::null_space_packed;
use crate::construct::BinaryMatrix;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "channel", rename_all = "snake_case")]
pub enum ChannelModel {
    /// Binary erasure channel with erasure probability `epsilon`.
    Bec { epsilon: f64 },
    /// Binary symmetric channel with crossover probability `p`.
    Bsc { p: f64 },
    /// BPSK over AWGN at `ebn0_db`, normalised by code `rate`.
    BiAwgn { ebn0_db: f64, rate: f64 },
}

impl ChannelModel {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            ChannelModel::Bec { epsilon } => (0.0..=1.0).contains(&epsilon),
            ChannelModel::Bsc { p } => (0.0..=0.5).contains(&p),
            ChannelModel::BiAwgn { ebn0_db, rate } => ebn0_db.is_finite() && rate > 0.0 && rate <= 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::params(format!("channel parameters out of range: {self:?}")))
        }
    }

    /// `σ² = 1 / (2 r 10^{Eb/N0 / 10})` for the AWGN channel.
    pub fn noise_variance(&self) -> Option<f64> {
        match *self {
            ChannelModel::BiAwgn { ebn0_db, rate } => Some(1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0))),
            _ => None,
        }
    }
}

/// What the receiver sees, one entry per transmitted bit.
#[derive(Clone, Debug, PartialEq)]
pub enum ChannelOutput {
    Hard(Vec<u8>),
    Erased(Vec<Option<u8>>),
    Soft(Vec<f64>),
}

pub fn channel_transmit<R: Rng + ?Sized>(
    channel: &ChannelModel,
    codeword: &[u8],
    rng: &mut R,
) -> Result<ChannelOutput> {
    channel.validate()?;
    Ok(match *channel {
        ChannelModel::Bec { epsilon } => ChannelOutput::Erased(
            codeword
                .iter()
                .map(|&b| if rng.random::<f64>() < epsilon { None } else { Some(b) })
                .collect(),
        ),
        ChannelModel::Bsc { p } => {
            ChannelOutput::Hard(codeword.iter().map(|&b| b ^ (rng.random::<f64>() < p) as u8).collect())
        }
        ChannelModel::BiAwgn { .. } => {
            let var = channel.noise_variance().expect("awgn");
            let sigma = var.sqrt();
            ChannelOutput::Soft(
                codeword
                    .iter()
                    .map(|&b| {
                        let noise: f64 = rng.sample(StandardNormal);
                        let y = 1.0 - 2.0 * b as f64 + sigma * noise;
                        2.0 * y / var
                    })
                    .collect(),
            )
        }
    })
}

/// Result of one decoding attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub bits: Vec<u8>,
    /// True only when every bit is decided and the syndrome is zero.
    pub converged: bool,
    pub iterations_used: usize,
    /// Unresolved erasures (peeling decoder only).
    pub residual: Vec<usize>,
}

/// `H · wordᵀ` over GF(2).
pub fn syndrome(h: &BinaryMatrix, word: &[u8]) -> Result<Vec<u8>> {
    if word.len() != h.cols() {
        return Err(Error::LengthMismatch {
            expected: h.cols(),
            got: word.len(),
        });
    }
    Ok(syndrome_unchecked(h, word))
}

pub(crate) fn syndrome_unchecked(h: &BinaryMatrix, word: &[u8]) -> Vec<u8> {
    (0..h.rows())
        .map(|r| h.row(r).iter().fold(0u8, |acc, &c| acc ^ (word[c] & 1)))
        .collect()
}

pub(crate) fn syndrome_is_zero(h: &BinaryMatrix, word: &[u8]) -> bool {
    (0..h.rows()).all(|r| h.row(r).iter().fold(0u8, |acc, &c| acc ^ (word[c] & 1)) == 0)
}

/// `cols - rank` independent codewords spanning the null space of `h`.
pub fn null_space_basis(h: &BinaryMatrix) -> Vec<Vec<u8>> {
    null_space_packed(h)
        .into_iter()
        .map(|v| (0..h.cols()).map(|c| (v[c / 64] >> (c % 64) & 1) as u8).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::gf2_rank;
    use crate::construct::{build_type2, select_cosets};
    use rand::SeedableRng;

    #[test]
    fn syndromes() {
        let h = BinaryMatrix::identity(4);
        assert_eq!(syndrome(&h, &[0; 4]).unwrap(), vec![0; 4]);
        assert_eq!(syndrome(&h, &[0, 0, 1, 0]).unwrap(), vec![0, 0, 1, 0]);
        assert!(matches!(syndrome(&h, &[0; 3]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn type2_null_space() {
        let code = build_type2(31, 2, &select_cosets(31, 2, 3).unwrap()).unwrap();
        let basis = null_space_basis(&code.h);
        assert_eq!(basis.len(), 62);
        assert_eq!(gf2_rank(&code.h), 31);
        for v in &basis {
            assert!(syndrome(&code.h, v).unwrap().iter().all(|&s| s == 0));
        }
        assert!(null_space_basis(&BinaryMatrix::identity(5)).is_empty());
    }

    #[test]
    fn noiseless_channels() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let word = vec![0u8, 1, 1, 0, 1];
        assert_eq!(
            channel_transmit(&ChannelModel::Bec { epsilon: 0.0 }, &word, &mut rng).unwrap(),
            ChannelOutput::Erased(word.iter().map(|&b| Some(b)).collect())
        );
        assert_eq!(
            channel_transmit(&ChannelModel::Bsc { p: 0.0 }, &word, &mut rng).unwrap(),
            ChannelOutput::Hard(word.clone())
        );
        let ChannelOutput::Soft(llr) = channel_transmit(
            &ChannelModel::BiAwgn {
                ebn0_db: 60.0,
                rate: 0.5,
            },
            &word,
            &mut rng,
        )
        .unwrap() else {
            panic!("soft output expected");
        };
        let decided: Vec<u8> = llr.iter().map(|&l| (l < 0.0) as u8).collect();
        assert_eq!(decided, word);
        assert!(channel_transmit(&ChannelModel::Bsc { p: 0.7 }, &word, &mut rng).is_err());
    }

    #[test]
    fn awgn_variance() {
        let ch = ChannelModel::BiAwgn {
            ebn0_db: 0.0,
            rate: 0.5,
        };
        assert!((ch.noise_variance().unwrap() - 1.0).abs() < 1e-12);
        let ch = ChannelModel::BiAwgn {
            ebn0_db: 10.0,
            rate: 1.0,
        };
        assert!((ch.noise_variance().unwrap() - 0.05).abs() < 1e-12);
    }

    #[test]
    fn erasure_rate_is_plausible() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let ChannelOutput::Erased(out) =
            channel_transmit(&ChannelModel::Bec { epsilon: 0.25 }, &vec![0u8; 40_000], &mut rng).unwrap()
        else {
            panic!()
        };
        let frac = out.iter().filter(|x| x.is_none()).count() as f64 / 40_000.0;
        assert!((frac - 0.25).abs() < 0.01);
    }
}
