//! Regular LDPC codes built from nonprimitive narrow-sense BCH codes and from
//! cyclotomic cosets.
//!
//! The crate is organised bottom-up:
//!
//! - [`galois`]: multiplicative orders, cyclotomic cosets, admissible code lengths.
//! - [`bch`]: BCH parameters, closed-form and brute-force dimensions, exponent matrices.
//! - [`construct`]: bit-packed binary matrices and the two circulant constructions.
//! - [`analysis`]: regularity, 4-cycles, girth, GF(2) rank, stopping distance, reports.
//! - [`channel_decode`]: channel models plus peeling, bit-flipping and sum-product decoders.
//! - [`sim`]: deterministic Monte Carlo BER/FER sweeps.
//! - [`cli_io`]: alist interchange, JSON reports and the command-line front end.

pub mod analysis;
pub mod bch;
pub mod channel_decode;
pub mod cli_io;
pub mod construct;
mod error;
pub mod galois;
mod ratio;
pub mod sim;

pub use error::{Error, Result};
pub use ratio::Ratio;
