//! Binary parity-check matrices from circulant expansions.
//!
//! Exponent `i` of `α` maps to the 0-based position `(i - 1) mod μ`, so that
//! `A(α^1)` is the identity and `z(α^2)` has its one in the second slot.
//! Exponent 0 (the element 1) therefore lands on position `μ - 1`. Coset
//! elements are placed the same way: element `c` goes to position `(c - 1) mod n`.

mod matrix;

pub(crate) use matrix::words_for;
pub use matrix::BinaryMatrix;

use serde::{Deserialize, Serialize};

use crate::bch::BchSpec;
use crate::galois::{coset_leaders, coset_size_bound_holds, gcd, is_prime, multiplicative_order, CyclotomicCoset};
use crate::{Error, Ratio, Result};

/// How a code was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CodeKind {
    /// Circulant expansion of a BCH exponent matrix.
    TypeI { spec: BchSpec },
    /// Concatenated cyclotomic-coset circulants.
    TypeII { n: u64, q: u64, m: u64, leaders: Vec<u64> },
    /// Read from a file; no construction metadata.
    Imported,
}

/// A parity-check matrix together with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LdpcCode {
    pub h: BinaryMatrix,
    pub kind: CodeKind,
    /// Common column weight `ρ`, when the matrix is column-regular.
    pub col_weight: Option<usize>,
    /// Common row weight `λ`, when the matrix is row-regular.
    pub row_weight: Option<usize>,
    pub warnings: Vec<String>,
}

impl LdpcCode {
    pub fn from_matrix(h: BinaryMatrix) -> Self {
        let common = |w: Vec<usize>| match w.first() {
            Some(&first) if w.iter().all(|&x| x == first) => Some(first),
            _ => None,
        };
        let col_weight = common((0..h.cols()).map(|c| h.col_weight(c)).collect());
        let row_weight = common((0..h.rows()).map(|r| h.row_weight(r)).collect());
        LdpcCode {
            h,
            kind: CodeKind::Imported,
            col_weight,
            row_weight,
            warnings: Vec::new(),
        }
    }

    /// Circulant size `μ` of a Type-I code.
    pub fn mu(&self) -> Option<u64> {
        match &self.kind {
            CodeKind::TypeI { spec } => Some(spec.params.mu),
            _ => None,
        }
    }

    /// Rate predicted by the construction: `(n - δ + 1)/n` for Type-I,
    /// `(ℓ - 1)/ℓ` for Type-II, `1 - rows/cols` for imported matrices.
    pub fn design_rate(&self) -> Ratio {
        match &self.kind {
            CodeKind::TypeI { spec } => {
                let n = spec.params.n;
                Ratio::new(n + 1 - spec.delta, n)
            }
            CodeKind::TypeII { leaders, .. } => {
                let l = leaders.len() as u64;
                Ratio::new(l - 1, l)
            }
            CodeKind::Imported => {
                let (r, c) = (self.h.rows() as u64, self.h.cols() as u64);
                Ratio::new(c.saturating_sub(r), c.max(1))
            }
        }
    }
}

fn position(exponent: u64, offset: u64, modulus: u64) -> usize {
    ((exponent % modulus + offset % modulus + modulus - 1) % modulus) as usize
}

/// `z(α^e)`: length-`μ` vector with a single one at `(e - 1) mod μ`.
pub fn location_vector(exponent: u64, mu: u64) -> Vec<u8> {
    assert!(mu >= 1, "μ must be positive");
    let mut v = vec![0u8; mu as usize];
    v[position(exponent, 0, mu)] = 1;
    v
}

/// `A(α^e)`: row `r` is `z(α^{e+r})`.
pub fn circulant(exponent: u64, mu: u64) -> BinaryMatrix {
    assert!(mu >= 1, "μ must be positive");
    let supports: Vec<Vec<usize>> = (0..mu).map(|r| vec![position(exponent + r, 0, mu)]).collect();
    BinaryMatrix::from_row_supports(mu as usize, mu as usize, &supports).expect("circulant is well formed")
}

/// Type-I matrix: block `(i, j)` is `A(α^{i·j mod μ})` for `i = 1..δ`, `j = 0..n`.
pub fn build_type1(spec: &BchSpec) -> LdpcCode {
    build_type1_with_offset(spec, 0)
}

/// Type-I construction with every location vector rotated by `offset`,
/// i.e. exponent `i` placed at `(i + offset - 1) mod μ`.
pub fn build_type1_with_offset(spec: &BchSpec, offset: u64) -> LdpcCode {
    let p = &spec.params;
    let mu = p.mu;
    let block_rows = spec.delta - 1;
    let rows = (block_rows * mu) as usize;
    let cols = (p.n * mu) as usize;
    let mut supports = Vec::with_capacity(rows);
    for i in 1..=block_rows {
        for r in 0..mu {
            supports.push(
                (0..p.n)
                    .map(|j| {
                        let e = ((i as u128 * j as u128) % mu as u128) as u64;
                        (j * mu) as usize + position(e + r, offset, mu)
                    })
                    .collect::<Vec<_>>(),
            );
        }
    }
    let h = BinaryMatrix::from_row_supports(rows, cols, &supports).expect("type-I supports are in range");

    let mut warnings = Vec::new();
    if !is_prime(p.n) {
        warnings.push(format!(
            "length n = {} is composite; 4-cycle freedom is only guaranteed for prime n",
            p.n
        ));
    }
    if !spec.within_delta_max {
        warnings.push(format!("designed distance {} exceeds delta_max", spec.delta));
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    LdpcCode {
        h,
        kind: CodeKind::TypeI { spec: *spec },
        col_weight: Some(block_rows as usize),
        row_weight: Some(p.n as usize),
        warnings,
    }
}

/// `y(γ^shift C_x)`: ones at `(c + shift - 1) mod n` for every `c` in the coset.
pub fn coset_row(coset: &CyclotomicCoset, shift: u64, n: u64) -> Vec<u8> {
    assert_eq!(coset.modulus, n, "coset modulus must equal n");
    let mut v = vec![0u8; n as usize];
    for &c in &coset.elements {
        v[position(c + shift % n, 0, n)] = 1;
    }
    v
}

/// `n × n` circulant whose row `r` is `coset_row(coset, r)`.
pub fn coset_circulant(coset: &CyclotomicCoset, n: u64) -> BinaryMatrix {
    assert_eq!(coset.modulus, n, "coset modulus must equal n");
    let supports: Vec<Vec<usize>> = (0..n)
        .map(|r| coset.elements.iter().map(|&c| position(c + r, 0, n)).collect())
        .collect();
    BinaryMatrix::from_row_supports(n as usize, n as usize, &supports).expect("coset circulant is well formed")
}

/// Outcome of [`validate_coset_for_type2`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CosetCheck {
    Valid,
    WrongModulus {
        modulus: u64,
    },
    WrongSize {
        size: usize,
        expected: u64,
    },
    /// Two elements differ by `shift` in two different ways, so the circulant
    /// rows `r` and `r + shift` share two ones.
    RepeatedDifference {
        shift: u64,
    },
}

impl CosetCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, CosetCheck::Valid)
    }
}

/// A coset is admissible when it has `m` elements and all pairwise differences
/// modulo `n` are distinct. The returned witness is the smallest bad shift.
pub fn validate_coset_for_type2(coset: &CyclotomicCoset, n: u64, m: u64) -> CosetCheck {
    if coset.modulus != n {
        return CosetCheck::WrongModulus { modulus: coset.modulus };
    }
    if coset.len() as u64 != m {
        return CosetCheck::WrongSize {
            size: coset.len(),
            expected: m,
        };
    }
    let mut seen = vec![0u8; n as usize];
    for &a in &coset.elements {
        for &b in &coset.elements {
            if a != b {
                let d = ((a + n - b) % n) as usize;
                seen[d] = seen[d].saturating_add(1);
            }
        }
    }
    match seen.iter().position(|&k| k > 1) {
        Some(d) => CosetCheck::RepeatedDifference { shift: d as u64 },
        None => CosetCheck::Valid,
    }
}

/// The `ell` smallest leaders `x >= 1` whose cosets lie in the equal-size range
/// and pass [`validate_coset_for_type2`].
pub fn select_cosets(n: u64, q: u64, ell: usize) -> Result<Vec<CyclotomicCoset>> {
    if ell == 0 {
        return Err(Error::params("at least one coset is required"));
    }
    let m = multiplicative_order(q, n)?;
    let admissible: Vec<CyclotomicCoset> = coset_leaders(n, q)?
        .into_iter()
        .filter(|c| c.leader >= 1 && coset_size_bound_holds(c.leader, n, q, m))
        .filter(|c| validate_coset_for_type2(c, n, m).is_valid())
        .collect();
    if admissible.len() < ell {
        return Err(Error::NotEnoughCosets {
            n,
            requested: ell,
            found: admissible.len(),
        });
    }
    Ok(admissible.into_iter().take(ell).collect())
}

/// Type-II matrix `[H_{C_x1} H_{C_x2} … H_{C_xℓ}]` of size `n × ℓn`.
pub fn build_type2(n: u64, q: u64, cosets: &[CyclotomicCoset]) -> Result<LdpcCode> {
    if cosets.is_empty() {
        return Err(Error::params("at least one coset is required"));
    }
    if gcd(n, q) != 1 {
        return Err(Error::NotCoprime { q, n });
    }
    let m = multiplicative_order(q, n)?;
    let mut leaders: Vec<u64> = Vec::with_capacity(cosets.len());
    for c in cosets {
        let check = validate_coset_for_type2(c, n, m);
        if !check.is_valid() {
            return Err(Error::InvalidCoset {
                leader: c.leader,
                reason: format!("{check:?}"),
            });
        }
        if leaders.contains(&c.leader) {
            return Err(Error::InvalidCoset {
                leader: c.leader,
                reason: "leader used twice".into(),
            });
        }
        leaders.push(c.leader);
    }
    let blocks: Vec<BinaryMatrix> = cosets.iter().map(|c| coset_circulant(c, n)).collect();
    let h = BinaryMatrix::hstack(&blocks)?;
    Ok(LdpcCode {
        h,
        kind: CodeKind::TypeII { n, q, m, leaders },
        col_weight: Some(m as usize),
        row_weight: Some(m as usize * cosets.len()),
        warnings: Vec::new(),
    })
}
