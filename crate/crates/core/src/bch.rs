//! Nonprimitive narrow-sense BCH codes.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::galois::{cyclotomic_coset, gcd, CodeFieldParams};
use crate::{Error, Result};

/// Field parameters plus a designed distance `δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BchSpec {
    pub params: CodeFieldParams,
    pub delta: u64,
    pub within_delta_max: bool,
}

impl BchSpec {
    pub fn new(params: CodeFieldParams, delta: u64) -> Result<Self> {
        if delta < 2 || delta > params.n {
            return Err(Error::params(format!(
                "designed distance {delta} must lie in [2, n = {}]",
                params.n
            )));
        }
        Ok(BchSpec {
            params,
            delta,
            within_delta_max: delta <= delta_max(&params),
        })
    }

    pub fn from_values(q: u64, m: u64, n: u64, delta: u64) -> Result<Self> {
        Self::new(CodeFieldParams::with_order(q, m, n)?, delta)
    }
}

/// `min(⌊n q^⌈m/2⌉ / (q^m - 1)⌋, n)`.
pub fn delta_max(params: &CodeFieldParams) -> u64 {
    params.coset_size_limit().min(params.n)
}

/// Closed-form dimension `n - m ⌈(δ-1)(q-1)/q⌉`, valid for `2 <= δ <= δ_max`.
pub fn bch_dimension(spec: &BchSpec) -> Result<u64> {
    let p = &spec.params;
    let max = delta_max(p);
    if spec.delta < 2 || spec.delta > max {
        return Err(Error::DeltaOutOfRange { delta: spec.delta, max });
    }
    let blocks = ((spec.delta - 1) * (p.q - 1)).div_ceil(p.q);
    Ok(p.n - p.m * blocks)
}

/// `n - |C_1 ∪ … ∪ C_{δ-1}|` with cosets taken modulo `n`.
pub fn bch_dimension_oracle(n: u64, q: u64, delta: u64) -> Result<u64> {
    if gcd(n, q) != 1 {
        return Err(Error::NotCoprime { q, n });
    }
    if delta < 2 || delta > n {
        return Err(Error::params(format!("designed distance {delta} must lie in [2, {n}]")));
    }
    let mut zeros = BTreeSet::new();
    for x in 1..delta {
        if zeros.contains(&(x % n)) {
            continue;
        }
        zeros.extend(cyclotomic_coset(x, n, q)?.elements);
    }
    Ok(n - zeros.len() as u64)
}

/// Minimum-distance bounds attached to a BCH spec. Neither is asserted as the
/// true minimum distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceBounds {
    /// The classical BCH bound `d >= δ`.
    pub standard_bch_bound: u64,
    /// `δ + 1` for odd `δ`, `δ + 2` for even `δ`; stated without proof.
    pub claimed_bound: u64,
}

pub fn bch_distance_bounds(spec: &BchSpec) -> DistanceBounds {
    let d = spec.delta;
    DistanceBounds {
        standard_bch_bound: d,
        claimed_bound: if d % 2 == 1 { d + 1 } else { d + 2 },
    }
}

/// The BCH parity-check matrix written as exponents of `α`: row `i` (1-based,
/// `1 <= i <= δ-1`) holds `i·j mod μ` for `j = 0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMatrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    entries: Vec<u64>,
}

impl ExponentMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Entry with 1-based row `i` and 0-based column `j`, as in `α^{i·j}`.
    pub fn entry(&self, i: usize, j: usize) -> u64 {
        assert!(i >= 1 && i <= self.rows && j < self.cols, "index out of range");
        self.entries[(i - 1) * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[(i - 1) * self.cols..i * self.cols]
    }
}

pub fn symbolic_parity_check(spec: &BchSpec) -> ExponentMatrix {
    let p = &spec.params;
    let rows = (spec.delta - 1) as usize;
    let cols = p.n as usize;
    let mut entries = Vec::with_capacity(rows * cols);
    for i in 1..=rows as u64 {
        for j in 0..p.n {
            entries.push(((i as u128 * j as u128) % p.mu as u128) as u64);
        }
    }
    ExponentMatrix {
        rows,
        cols,
        modulus: p.mu,
        entries,
    }
}
