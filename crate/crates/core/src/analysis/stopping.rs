//! Stopping sets and stopping distance.
//!
//! A column set `S` is a stopping set when no row meets `S` exactly once.
//! Finding the smallest one is NP-hard, so the search is bounded by a subset
//! size budget and by an a priori work estimate.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel_decode::peel_decode;
use crate::construct::{BinaryMatrix, CodeKind, LdpcCode};
use crate::{Error, Result};

/// Default cap on the a priori stopping-search estimate.
pub const DEFAULT_WORK_LIMIT: u128 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoppingConfig {
    pub work_limit: u128,
}

impl Default for StoppingConfig {
    fn default() -> Self {
        StoppingConfig {
            work_limit: DEFAULT_WORK_LIMIT,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    /// A stopping set of size `value` was found and none smaller exists.
    Exact,
    /// Every subset of size `<= budget` was refuted; `value = budget + 1`.
    LowerBoundOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoppingSearchResult {
    pub status: SearchStatus,
    pub value: usize,
    pub witness: Option<Vec<usize>>,
    pub budget: usize,
}

impl StoppingSearchResult {
    /// Certified lower bound on the stopping distance.
    pub fn lower_bound(&self) -> usize {
        self.value
    }
}

pub fn is_stopping_set(h: &BinaryMatrix, cols: &[usize]) -> bool {
    let mut set: Vec<usize> = cols.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.is_empty() {
        return false;
    }
    let mut count = vec![0u32; h.rows()];
    for &c in &set {
        for &r in h.col(c) {
            count[r] += 1;
        }
    }
    !count.contains(&1)
}

/// Worst-case node count of the search:
/// `cols · min((λ_max - 1)^(b - 1), (cols - 1)!/(cols - b)!)` with `b = min(budget, cols)`.
pub fn stopping_search_estimate(h: &BinaryMatrix, budget: usize) -> u128 {
    if budget == 0 {
        return 0;
    }
    let lambda = (0..h.rows()).map(|r| h.row_weight(r)).max().unwrap_or(0) as u128;
    let branch = lambda.saturating_sub(1).max(1);
    let cols = h.cols() as u128;
    // per start column: at most branch^(b-1) paths, and no more than the
    // number of ordered choices of the other b-1 members
    let (mut paths, mut ordered) = (1u128, 1u128);
    for i in 1..budget.min(h.cols()) as u128 {
        paths = paths.saturating_mul(branch);
        ordered = ordered.saturating_mul(cols - i);
    }
    cols.saturating_mul(paths.min(ordered))
}

pub fn stopping_distance(h: &BinaryMatrix, budget: usize) -> Result<StoppingSearchResult> {
    stopping_distance_with(h, budget, &StoppingConfig::default())
}

/// Smallest stopping set of size at most `budget`.
///
/// For each size limit `k = 1, 2, …` and each possible smallest member, a
/// depth-first search grows the set. Any row met exactly once must receive
/// another member from its own support, so only those columns are tried, and
/// a branch is cut when the weight-one rows cannot all be repaired by the
/// remaining slots. The witness is the first set found in this fixed order.
pub fn stopping_distance_with(
    h: &BinaryMatrix,
    budget: usize,
    config: &StoppingConfig,
) -> Result<StoppingSearchResult> {
    if budget == 0 {
        return Err(Error::params("stopping-set budget must be at least 1"));
    }
    let estimate = stopping_search_estimate(h, budget);
    if estimate > config.work_limit {
        return Err(Error::BudgetTooLarge {
            estimate,
            limit: config.work_limit,
        });
    }
    let max_col_weight = (0..h.cols()).map(|c| h.col_weight(c)).max().unwrap_or(0).max(1);
    for k in 1..=budget.min(h.cols()) {
        let found = (0..h.cols())
            .into_par_iter()
            .map_init(|| Search::new(h, max_col_weight), |search, start| search.run(start, k))
            .find_first(Option::is_some)
            .flatten();
        if let Some(mut witness) = found {
            witness.sort_unstable();
            return Ok(StoppingSearchResult {
                status: SearchStatus::Exact,
                value: witness.len(),
                witness: Some(witness),
                budget,
            });
        }
    }
    Ok(StoppingSearchResult {
        status: SearchStatus::LowerBoundOnly,
        value: budget + 1,
        witness: None,
        budget,
    })
}

struct Search<'a> {
    h: &'a BinaryMatrix,
    max_col_weight: usize,
    count: Vec<u32>,
    members: Vec<usize>,
    start: usize,
    limit: usize,
}

impl<'a> Search<'a> {
    fn new(h: &'a BinaryMatrix, max_col_weight: usize) -> Self {
        Search {
            h,
            max_col_weight,
            count: vec![0; h.rows()],
            members: Vec::new(),
            start: 0,
            limit: 0,
        }
    }

    fn run(&mut self, start: usize, limit: usize) -> Option<Vec<usize>> {
        self.start = start;
        self.limit = limit;
        self.push(start);
        let found = self.dfs();
        let result = found.then(|| self.members.clone());
        while let Some(c) = self.members.pop() {
            for &r in self.h.col(c) {
                self.count[r] -= 1;
            }
        }
        result
    }

    fn push(&mut self, c: usize) {
        for &r in self.h.col(c) {
            self.count[r] += 1;
        }
        self.members.push(c);
    }

    fn pop(&mut self) {
        let c = self.members.pop().expect("nonempty");
        for &r in self.h.col(c) {
            self.count[r] -= 1;
        }
    }

    fn dfs(&mut self) -> bool {
        // a row met once is met by exactly one member, so this visits it once
        let mut weight_one = 0usize;
        let mut forced: Option<(usize, usize)> = None;
        for &m in &self.members {
            for &r in self.h.col(m) {
                if self.count[r] != 1 {
                    continue;
                }
                weight_one += 1;
                let options = self
                    .h
                    .row(r)
                    .iter()
                    .filter(|&&c| c > self.start && !self.members.contains(&c))
                    .count();
                if forced.is_none_or(|(_, best)| options < best) {
                    forced = Some((r, options));
                }
            }
        }
        let Some((row, options)) = forced else {
            return true;
        };
        let room = self.limit - self.members.len();
        if options == 0 || room == 0 || weight_one.div_ceil(self.max_col_weight) > room {
            return false;
        }
        let h = self.h;
        for &c in h.row(row) {
            if c <= self.start || self.members.contains(&c) {
                continue;
            }
            self.push(c);
            if self.dfs() {
                return true;
            }
            self.pop();
        }
        false
    }
}

/// Stopping distance as the size of the smallest erasure pattern on which the
/// peeling decoder fails, by enumerating patterns in increasing size.
/// `None` when no pattern fails. Only for matrices with at most `max_cols` columns.
pub fn peeling_stopping_distance(h: &BinaryMatrix, max_cols: usize) -> Result<Option<usize>> {
    let n = h.cols();
    if n > max_cols || n >= 64 {
        return Err(Error::params(format!(
            "peeling oracle limited to {max_cols} columns, matrix has {n}"
        )));
    }
    for k in 1..=n {
        // Gosper's hack over all k-subsets of n columns
        let mut mask: u64 = (1 << k) - 1;
        while mask < 1 << n {
            let erased: Vec<usize> = (0..n).filter(|&c| mask >> c & 1 == 1).collect();
            if !peel_decode(h, &erased).converged {
                return Ok(Some(k));
            }
            let low = mask & mask.wrapping_neg();
            let ripple = mask + low;
            mask = (((ripple ^ mask) >> 2) / low) | ripple;
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum ClaimStatus {
    /// Budget 0: nothing searched.
    NoCertification,
    /// No stopping set of size `<= budget`; `s >= lower_bound`.
    CertifiedAtLeast { lower_bound: usize },
    /// A stopping set smaller than `μ + 1` exists.
    Refuted { size: usize, witness: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoppingClaimReport {
    /// The claimed smallest stopping-set size `μ + 1`.
    pub claimed: usize,
    pub budget: usize,
    pub status: ClaimStatus,
    /// Whether a supplied candidate set of size `μ + 1` is a stopping set.
    pub candidate_confirmed: Option<bool>,
}

/// Checks the claimed stopping distance `μ + 1` of a Type-I code as far as a
/// bounded search allows.
pub fn type1_stopping_claim_check(
    code: &LdpcCode,
    budget: usize,
    candidate: Option<&[usize]>,
    config: &StoppingConfig,
) -> Result<StoppingClaimReport> {
    let CodeKind::TypeI { spec } = &code.kind else {
        return Err(Error::params("stopping claim check applies to Type-I codes only"));
    };
    let claimed = spec.params.mu as usize + 1;
    let candidate_confirmed = candidate.map(|c| {
        let mut set = c.to_vec();
        set.sort_unstable();
        set.dedup();
        set.len() == claimed && is_stopping_set(&code.h, &set)
    });
    let status = if budget == 0 {
        ClaimStatus::NoCertification
    } else {
        // sets of size >= μ + 1 cannot refute the claim
        let effective = budget.min(claimed - 1).max(1);
        let result = stopping_distance_with(&code.h, effective, config)?;
        match result.status {
            SearchStatus::Exact => ClaimStatus::Refuted {
                size: result.value,
                witness: result.witness.unwrap_or_default(),
            },
            SearchStatus::LowerBoundOnly => ClaimStatus::CertifiedAtLeast {
                lower_bound: result.value.min(claimed),
            },
        }
    };
    Ok(StoppingClaimReport {
        claimed,
        budget,
        status,
        candidate_confirmed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Exhaustive scan of all subsets, independent of the pruned search.
    fn brute_stopping_distance(h: &BinaryMatrix) -> Option<usize> {
        let n = h.cols();
        (1u32..(1 << n))
            .filter(|mask| {
                let set: Vec<usize> = (0..n).filter(|&c| mask >> c & 1 == 1).collect();
                is_stopping_set(h, &set)
            })
            .map(|m| m.count_ones() as usize)
            .min()
    }

    #[test]
    fn stopping_set_definition() {
        let h = BinaryMatrix::from_dense(&[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 0, 1, 0]]).unwrap();
        assert!(!is_stopping_set(&h, &[0, 1]));
        assert!(is_stopping_set(&h, &[0, 1, 2]));
        // column 3 is empty, so it alone is a stopping set
        assert!(is_stopping_set(&h, &[3]));
        assert!(!is_stopping_set(&h, &[]));
        assert!(!is_stopping_set(&BinaryMatrix::identity(3), &[1]));
    }

    #[test]
    fn hand_matrix() {
        // rows 1100, 0110, 1010 plus a weight-one row tying down nothing else
        let h = BinaryMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        assert_eq!(brute_stopping_distance(&h), Some(3));
        let r = stopping_distance(&h, 3).unwrap();
        assert_eq!(r.status, SearchStatus::Exact);
        assert_eq!((r.value, r.witness.as_deref()), (3, Some(&[0usize, 1, 2][..])));
        let r = stopping_distance(&h, 2).unwrap();
        assert_eq!((r.status, r.value), (SearchStatus::LowerBoundOnly, 3));

        // with a fourth, empty column the distance drops to 1
        let h = BinaryMatrix::from_dense(&[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 0, 1, 0]]).unwrap();
        let r = stopping_distance(&h, 4).unwrap();
        assert_eq!((r.status, r.value), (SearchStatus::Exact, 1));
        assert_eq!(r.witness, Some(vec![3]));
    }

    #[test]
    fn identity_has_no_stopping_sets() {
        let h = BinaryMatrix::identity(6);
        for b in 1..=6 {
            let r = stopping_distance(&h, b).unwrap();
            assert_eq!((r.status, r.value), (SearchStatus::LowerBoundOnly, b + 1));
        }
        assert_eq!(peeling_stopping_distance(&h, 22).unwrap(), None);
    }

    #[test]
    fn budget_guard() {
        let h = BinaryMatrix::from_dense(&[vec![1; 40]]).unwrap();
        let cfg = StoppingConfig { work_limit: 1000 };
        assert!(matches!(
            stopping_distance_with(&h, 3, &cfg),
            Err(Error::BudgetTooLarge { .. })
        ));
        assert!(stopping_distance(&h, 0).is_err());
    }

    #[test]
    fn pruned_search_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let rows = rng.random_range(2..9);
            let cols = rng.random_range(2..13);
            let dense: Vec<Vec<u8>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.random_bool(0.3) as u8).collect())
                .collect();
            let h = BinaryMatrix::from_dense(&dense).unwrap();
            let brute = brute_stopping_distance(&h);
            let r = stopping_distance(&h, cols).unwrap();
            match brute {
                Some(s) => {
                    assert_eq!((r.status, r.value), (SearchStatus::Exact, s));
                    assert!(is_stopping_set(&h, r.witness.as_ref().unwrap()));
                }
                None => assert_eq!(r.status, SearchStatus::LowerBoundOnly),
            }
            assert_eq!(peeling_stopping_distance(&h, 22).unwrap(), brute);
        }
    }
}
