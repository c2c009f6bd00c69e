//! Structural checks on parity-check matrices.
//!
//! Column weight is written `ρ` and row weight `λ` throughout, so a Type-I
//! code from a designed distance `δ` and length `n` is a `(δ - 1, n)` code.

mod rank;
mod report;
mod stopping;

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub(crate) use rank::null_space_packed;
pub use rank::{exhaustive_min_distance, gf2_rank};
pub use report::{code_dimension_and_rates, structure_report, AnalysisConfig, CodeRates, StructureReport};
pub use stopping::{
    is_stopping_set, peeling_stopping_distance, stopping_distance, stopping_distance_with, stopping_search_estimate,
    type1_stopping_claim_check, ClaimStatus, SearchStatus, StoppingClaimReport, StoppingConfig, StoppingSearchResult,
};

use crate::construct::BinaryMatrix;
use crate::{Error, Result};

/// Bipartite view of `h`: variable node `v` per column, check node `c` per row.
#[derive(Clone, Copy, Debug)]
pub struct TannerGraph<'a> {
    h: &'a BinaryMatrix,
}

impl<'a> TannerGraph<'a> {
    pub fn new(h: &'a BinaryMatrix) -> Self {
        TannerGraph { h }
    }

    pub fn variable_count(&self) -> usize {
        self.h.cols()
    }

    pub fn check_count(&self) -> usize {
        self.h.rows()
    }

    /// Checks adjacent to variable `v`.
    pub fn checks_of(&self, v: usize) -> &'a [usize] {
        self.h.col(v)
    }

    /// Variables adjacent to check `c`.
    pub fn variables_of(&self, c: usize) -> &'a [usize] {
        self.h.row(c)
    }

    pub fn variable_degree(&self, v: usize) -> usize {
        self.h.col_weight(v)
    }

    pub fn check_degree(&self, c: usize) -> usize {
        self.h.row_weight(c)
    }
}

/// Common `(ρ, λ)` = (column weight, row weight).
pub fn check_regularity(h: &BinaryMatrix) -> Result<(usize, usize)> {
    if h.rows() == 0 || h.cols() == 0 {
        return Err(Error::params("empty matrix"));
    }
    let rho = h.col_weight(0);
    if let Some(c) = (0..h.cols()).find(|&c| h.col_weight(c) != rho) {
        return Err(Error::NotRegular {
            axis: "column",
            index: c,
            weight: h.col_weight(c),
            expected: rho,
        });
    }
    let lambda = h.row_weight(0);
    if let Some(r) = (0..h.rows()).find(|&r| h.row_weight(r) != lambda) {
        return Err(Error::NotRegular {
            axis: "row",
            index: r,
            weight: h.row_weight(r),
            expected: lambda,
        });
    }
    Ok((rho, lambda))
}

/// Two rows and two columns whose four intersections are all ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourCycle {
    pub rows: [usize; 2],
    pub cols: [usize; 2],
}

/// First column pair sharing two rows, scanning columns in ascending order.
pub fn find_four_cycle(h: &BinaryMatrix) -> Option<FourCycle> {
    const NONE: usize = usize::MAX;
    let mut owner = vec![NONE; h.cols()];
    let mut via = vec![0usize; h.cols()];
    for c in 0..h.cols() {
        for &r in h.col(c) {
            for &other in h.row(r) {
                if other <= c {
                    continue;
                }
                if owner[other] == c {
                    return Some(FourCycle {
                        rows: [via[other], r],
                        cols: [c, other],
                    });
                }
                owner[other] = c;
                via[other] = r;
            }
        }
    }
    None
}

/// Length of the shortest cycle in the Tanner graph, `None` when acyclic.
///
/// Breadth-first search from every variable node; a search stops expanding
/// once no shorter cycle than the best one known can appear.
pub fn girth(h: &BinaryMatrix) -> Option<usize> {
    let cols = h.cols();
    let total = cols + h.rows();
    let best = AtomicUsize::new(usize::MAX);
    (0..cols).into_par_iter().for_each_init(
        || (vec![u32::MAX; total], vec![u32::MAX; total], Vec::<usize>::new()),
        |(dist, parent, queue), start| {
            queue.clear();
            queue.push(start);
            dist[start] = 0;
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                let du = dist[u] as usize;
                // cycles are even, so anything found from depth du has length >= 2du + 2
                if 2 * du + 2 >= best.load(Ordering::Relaxed) {
                    break;
                }
                let (adjacent, shift) = if u < cols {
                    (h.col(u), cols)
                } else {
                    (h.row(u - cols), 0)
                };
                for &x in adjacent {
                    let w = x + shift;
                    if parent[u] as usize == w {
                        continue;
                    }
                    if dist[w] == u32::MAX {
                        dist[w] = du as u32 + 1;
                        parent[w] = u as u32;
                        queue.push(w);
                    } else {
                        best.fetch_min(du + dist[w] as usize + 1, Ordering::Relaxed);
                    }
                }
            }
            for &u in queue.iter() {
                dist[u] = u32::MAX;
                parent[u] = u32::MAX;
            }
        },
    );
    match best.into_inner() {
        usize::MAX => None,
        g => Some(g),
    }
}
