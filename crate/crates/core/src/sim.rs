//! Monte Carlo BER/FER sweeps.
//!
//! Every frame draws its randomness from its own generator, seeded by
//! [`per_trial_seed`] from the master seed, the grid index and the frame index.
//! Frames run in parallel in fixed-size batches and are folded back in frame
//! order, so the stop rule fires at the same frame whatever the thread count.

use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{find_four_cycle, gf2_rank};
use crate::channel_decode::{
    bit_flip_decode, channel_transmit, null_space_basis, peel_decode_word, BpDecoder, ChannelModel, ChannelOutput,
    DecodeOutcome, LLR_CLAMP,
};
use crate::construct::LdpcCode;
use crate::{Error, Result};

/// Frames evaluated per parallel batch. Fixed so that results do not depend on
/// the thread count.
const BATCH: u64 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimChannel {
    /// Grid is Eb/N0 in dB.
    Awgn,
    /// Grid is the crossover probability.
    Bsc,
    /// Grid is the erasure probability.
    Bec,
}

/// Which rate enters `σ²` on the AWGN channel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateNormalization {
    /// `dimension / cols` from the GF(2) rank.
    #[default]
    True,
    Design,
}

/// Decoder for the AWGN and BSC channels; the BEC always uses peeling.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecoderChoice {
    #[default]
    SumProduct,
    /// Hard-decision bit flipping (BSC only).
    BitFlip,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimPlan {
    pub channel: SimChannel,
    pub grid: Vec<f64>,
    pub max_iter: usize,
    pub min_bit_errors: u64,
    pub max_frames: u64,
    pub seed: u64,
    pub rate: RateNormalization,
    pub decoder: DecoderChoice,
    /// Transmit random codewords instead of the all-zero word.
    pub random_codewords: bool,
}

impl SimPlan {
    pub fn new(channel: SimChannel, grid: Vec<f64>) -> Self {
        SimPlan {
            channel,
            grid,
            max_iter: 50,
            min_bit_errors: 100,
            max_frames: 200_000,
            seed: 0,
            rate: RateNormalization::True,
            decoder: DecoderChoice::SumProduct,
            random_codewords: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::params("simulation grid is empty"));
        }
        if self.min_bit_errors == 0 {
            return Err(Error::params("min_bit_errors must be at least 1"));
        }
        if self.max_frames == 0 {
            return Err(Error::params("max_frames must be at least 1"));
        }
        if self.decoder == DecoderChoice::BitFlip && self.channel != SimChannel::Bsc {
            return Err(Error::params("bit flipping is only available on the BSC"));
        }
        for &x in &self.grid {
            let ok = match self.channel {
                SimChannel::Awgn => x.is_finite(),
                SimChannel::Bsc => (0.0..=0.5).contains(&x),
                SimChannel::Bec => (0.0..=1.0).contains(&x),
            };
            if !ok {
                return Err(Error::params(format!(
                    "grid value {x} out of range for {:?}",
                    self.channel
                )));
            }
        }
        Ok(())
    }
}

/// Inclusive grid `a, a + step, ...` up to `b` (with a small tolerance).
pub fn linear_grid(a: f64, b: f64, step: f64) -> Result<Vec<f64>> {
    if !(a.is_finite() && b.is_finite() && step.is_finite()) || step <= 0.0 || b < a {
        return Err(Error::params(format!("bad grid {a}:{b}:{step}")));
    }
    let count = ((b - a) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| a + step * i as f64).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimPoint {
    /// Eb/N0 in dB, or the channel probability for BSC/BEC.
    pub param: f64,
    pub frames: u64,
    pub bits: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub ber: f64,
    pub fer: f64,
    pub mean_iters: f64,
    /// The only field that varies between identical runs.
    pub wall_time_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub plan: SimPlan,
    pub seed: u64,
    /// Rate used for the AWGN noise variance.
    pub rate: f64,
    pub points: Vec<SimPoint>,
    pub warnings: Vec<String>,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `splitmix(splitmix(splitmix(master) ^ grid) ^ frame)`, where `splitmix` is
/// the SplitMix64 finaliser.
pub fn per_trial_seed(master: u64, grid_index: u64, frame_index: u64) -> u64 {
    splitmix(splitmix(splitmix(master) ^ grid_index) ^ frame_index)
}

#[derive(Clone, Copy, Default)]
struct FrameStats {
    bit_errors: u64,
    frame_error: bool,
    iterations: u64,
}

struct Runner<'a> {
    code: &'a LdpcCode,
    plan: &'a SimPlan,
    bp: BpDecoder<'a>,
    basis: Vec<Vec<u8>>,
}

impl Runner<'_> {
    fn frame(&self, channel: &ChannelModel, grid: u64, frame: u64) -> Result<FrameStats> {
        let n = self.code.h.cols();
        let mut rng = ChaCha8Rng::seed_from_u64(per_trial_seed(self.plan.seed, grid, frame));
        let mut word = vec![0u8; n];
        if self.plan.random_codewords {
            for v in &self.basis {
                if rng.random::<bool>() {
                    for (w, b) in word.iter_mut().zip(v) {
                        *w ^= b;
                    }
                }
            }
        }
        let out: DecodeOutcome = match channel_transmit(channel, &word, &mut rng)? {
            ChannelOutput::Soft(llr) => self.bp.decode(&llr, self.plan.max_iter)?,
            ChannelOutput::Hard(bits) => match self.plan.decoder {
                DecoderChoice::BitFlip => bit_flip_decode(&self.code.h, &bits, self.plan.max_iter)?,
                DecoderChoice::SumProduct => {
                    let ChannelModel::Bsc { p } = *channel else {
                        unreachable!()
                    };
                    let mag = if p == 0.0 { LLR_CLAMP } else { ((1.0 - p) / p).ln() };
                    let llr: Vec<f64> = bits.iter().map(|&b| if b == 1 { -mag } else { mag }).collect();
                    self.bp.decode(&llr, self.plan.max_iter)?
                }
            },
            ChannelOutput::Erased(rx) => peel_decode_word(&self.code.h, &rx),
        };
        let mut errors = out.bits.iter().zip(&word).filter(|(a, b)| a != b).count() as u64;
        // unresolved erasures are failures, never guesses
        errors += out.residual.iter().filter(|&&c| out.bits[c] == word[c]).count() as u64;
        Ok(FrameStats {
            bit_errors: errors,
            frame_error: errors > 0,
            iterations: out.iterations_used as u64,
        })
    }

    fn point(&self, grid: usize, param: f64, rate: f64) -> Result<SimPoint> {
        let channel = match self.plan.channel {
            SimChannel::Awgn => ChannelModel::BiAwgn { ebn0_db: param, rate },
            SimChannel::Bsc => ChannelModel::Bsc { p: param },
            SimChannel::Bec => ChannelModel::Bec { epsilon: param },
        };
        channel.validate()?;
        let start = Instant::now();
        let n = self.code.h.cols() as u64;
        let (mut frames, mut bit_errors, mut frame_errors, mut iters) = (0u64, 0u64, 0u64, 0u64);
        'outer: while frames < self.plan.max_frames {
            let end = (frames + BATCH).min(self.plan.max_frames);
            let batch: Vec<FrameStats> = (frames..end)
                .into_par_iter()
                .map(|f| self.frame(&channel, grid as u64, f))
                .collect::<Result<_>>()?;
            for s in batch {
                frames += 1;
                bit_errors += s.bit_errors;
                frame_errors += s.frame_error as u64;
                iters += s.iterations;
                if bit_errors >= self.plan.min_bit_errors {
                    break 'outer;
                }
            }
        }
        let bits = frames * n;
        Ok(SimPoint {
            param,
            frames,
            bits,
            bit_errors,
            frame_errors,
            ber: bit_errors as f64 / bits as f64,
            fer: frame_errors as f64 / frames as f64,
            mean_iters: iters as f64 / frames as f64,
            wall_time_s: start.elapsed().as_secs_f64(),
        })
    }
}

pub fn run_sweep(code: &LdpcCode, plan: &SimPlan) -> Result<SimResult> {
    plan.validate()?;
    let h = &code.h;
    let dimension = h.cols() - gf2_rank(h);
    if dimension == 0 {
        return Err(Error::ZeroRate);
    }
    let mut warnings = code.warnings.clone();
    if let Some(w) = find_four_cycle(h) {
        let msg = format!("Tanner graph has a 4-cycle (rows {:?}, cols {:?})", w.rows, w.cols);
        log::warn!("{msg}");
        warnings.push(msg);
    }
    let rate = match plan.rate {
        RateNormalization::True => dimension as f64 / h.cols() as f64,
        RateNormalization::Design => code.design_rate().to_f64(),
    };
    if plan.channel == SimChannel::Awgn && rate <= 0.0 {
        return Err(Error::ZeroRate);
    }
    let runner = Runner {
        code,
        plan,
        bp: BpDecoder::new(h),
        basis: if plan.random_codewords {
            null_space_basis(h)
        } else {
            Vec::new()
        },
    };
    let mut points = Vec::with_capacity(plan.grid.len());
    for (i, &x) in plan.grid.iter().enumerate() {
        let p = runner.point(i, x, rate)?;
        log::info!(
            "point {x}: {} frames, {} bit errors, ber {:.3e}",
            p.frames,
            p.bit_errors,
            p.ber
        );
        points.push(p);
    }
    Ok(SimResult {
        plan: plan.clone(),
        seed: plan.seed,
        rate,
        points,
        warnings,
    })
}

pub const CSV_HEADER: &str = "ebn0_db,frames,bits,bit_errors,frame_errors,ber,fer,mean_iters";

/// C-style `%g` with 6 significant digits.
pub fn format_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if !(-4..6).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{x:.*}", (5 - exp) as usize)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Header plus one row per grid point. The first column holds the grid value
/// whatever the channel.
pub fn emit_csv(result: &SimResult) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for p in &result.points {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            format_g(p.param),
            p.frames,
            p.bits,
            p.bit_errors,
            p.frame_errors,
            format_g(p.ber),
            format_g(p.fer),
            format_g(p.mean_iters)
        );
    }
    out
}
