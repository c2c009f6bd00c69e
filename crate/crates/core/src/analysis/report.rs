use serde::{Deserialize, Serialize};

use super::stopping::{
    stopping_distance_with, stopping_search_estimate, SearchStatus, StoppingConfig, StoppingSearchResult,
};
use super::{
    check_regularity, exhaustive_min_distance, find_four_cycle, gf2_rank, girth, peeling_stopping_distance, FourCycle,
};
use crate::bch::{bch_dimension, bch_distance_bounds, DistanceBounds};
use crate::construct::{CodeKind, LdpcCode};
use crate::{Ratio, Result};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    /// Largest stopping-set size searched. `None` picks `ρ + 2`, lowered until
    /// the search estimate fits the work limit.
    pub stopping_budget: Option<usize>,
    pub stopping: StoppingConfig,
    /// Exhaustive minimum distance is computed only up to this code dimension.
    pub min_distance_max_dimension: usize,
    /// The peeling cross-check of the stopping distance runs only up to this many columns.
    pub peel_oracle_max_cols: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            stopping_budget: None,
            stopping: StoppingConfig::default(),
            min_distance_max_dimension: 20,
            peel_oracle_max_cols: 22,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRates {
    pub rank: usize,
    pub dimension: usize,
    pub design_rate: Ratio,
    pub true_rate: Ratio,
}

pub fn code_dimension_and_rates(code: &LdpcCode) -> CodeRates {
    let rank = gf2_rank(&code.h);
    let cols = code.h.cols();
    let dimension = cols - rank;
    CodeRates {
        rank,
        dimension,
        design_rate: code.design_rate(),
        true_rate: Ratio::new(dimension as u64, cols.max(1) as u64),
    }
}

/// Everything the analysis module can say about one code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub schema_version: u32,
    pub kind: CodeKind,
    pub rows: usize,
    pub cols: usize,
    /// Column weight, when constant.
    pub rho: Option<usize>,
    /// Row weight, when constant.
    pub lambda: Option<usize>,
    pub regular: bool,
    pub four_cycle_free: bool,
    pub four_cycle: Option<FourCycle>,
    /// `None` means the Tanner graph is acyclic.
    pub girth: Option<usize>,
    pub rank: usize,
    /// `(δ - 1)μ - (δ - 2)` for Type-I codes.
    pub rank_formula: Option<usize>,
    pub dimension: usize,
    /// `cols - rows`, the dimension a full-rank `H` would give.
    pub full_rank_dimension: usize,
    pub design_rate: Ratio,
    pub true_rate: Ratio,
    pub stopping: Option<StoppingSearchResult>,
    /// `s / cols`, when the stopping distance is exact.
    pub stopping_ratio: Option<Ratio>,
    /// Stopping distance from the peeling-decoder oracle (small matrices only).
    pub peeling_stopping_distance: Option<usize>,
    /// Exhaustive minimum distance (small dimensions only).
    pub min_distance: Option<usize>,
    /// BCH-level data for Type-I codes.
    pub bch_dimension: Option<u64>,
    pub distance_bounds: Option<DistanceBounds>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

fn default_budget(code: &LdpcCode, cfg: &AnalysisConfig) -> usize {
    let rho = code.col_weight.unwrap_or(1);
    let mut budget = (rho + 2).min(code.h.cols());
    while budget > 0 && stopping_search_estimate(&code.h, budget) > cfg.stopping.work_limit {
        budget -= 1;
    }
    budget
}

pub fn structure_report(code: &LdpcCode, cfg: &AnalysisConfig) -> Result<StructureReport> {
    let h = &code.h;
    let regularity = check_regularity(h);
    let (rho, lambda) = match &regularity {
        Ok((r, l)) => (Some(*r), Some(*l)),
        Err(_) => (code.col_weight, code.row_weight),
    };
    let four_cycle = find_four_cycle(h);
    let girth = girth(h);
    let rates = code_dimension_and_rates(code);
    let mut notes = Vec::new();

    let budget = cfg.stopping_budget.unwrap_or_else(|| default_budget(code, cfg));
    let stopping = if budget == 0 {
        notes.push("stopping-set search skipped (budget 0)".into());
        None
    } else {
        Some(stopping_distance_with(h, budget, &cfg.stopping)?)
    };
    let stopping_ratio = stopping
        .as_ref()
        .filter(|s| s.status == SearchStatus::Exact)
        .map(|s| Ratio::new(s.value as u64, h.cols() as u64));

    let peeling = if h.cols() <= cfg.peel_oracle_max_cols {
        peeling_stopping_distance(h, cfg.peel_oracle_max_cols)?
    } else {
        None
    };

    let min_distance = exhaustive_min_distance(h, cfg.min_distance_max_dimension);
    if let (Some(d), Some(s)) = (min_distance, &stopping) {
        if s.lower_bound() > d && s.status == SearchStatus::LowerBoundOnly {
            notes.push(format!(
                "certified stopping bound {} exceeds d_min {d}",
                s.lower_bound()
            ));
        }
    }
    if min_distance.is_none() {
        if let Some(s) = &stopping {
            notes.push(format!(
                "d_min not computed; bounded below by s(H) >= {}",
                s.lower_bound()
            ));
        }
    }

    let (rank_formula, bch_dim, bounds) = match &code.kind {
        CodeKind::TypeI { spec } => {
            let mu = spec.params.mu as usize;
            let d = spec.delta as usize;
            let formula = (d - 1) * mu - (d - 2);
            if formula != rates.rank {
                notes.push(format!("rank {} differs from (δ-1)μ-(δ-2) = {formula}", rates.rank));
            }
            (Some(formula), bch_dimension(spec).ok(), Some(bch_distance_bounds(spec)))
        }
        _ => (None, None, None),
    };
    let full_rank_dimension = h.cols().saturating_sub(h.rows());
    if full_rank_dimension != rates.dimension {
        notes.push(format!(
            "H is rank deficient: dimension {} rather than cols - rows = {full_rank_dimension}",
            rates.dimension
        ));
    }
    if four_cycle.is_some() {
        notes.push("Tanner graph contains 4-cycles".into());
    }

    Ok(StructureReport {
        schema_version: REPORT_SCHEMA_VERSION,
        kind: code.kind.clone(),
        rows: h.rows(),
        cols: h.cols(),
        rho,
        lambda,
        regular: regularity.is_ok(),
        four_cycle_free: four_cycle.is_none(),
        four_cycle,
        girth,
        rank: rates.rank,
        rank_formula,
        dimension: rates.dimension,
        full_rank_dimension,
        design_rate: rates.design_rate,
        true_rate: rates.true_rate,
        stopping,
        stopping_ratio,
        peeling_stopping_distance: peeling,
        min_distance,
        bch_dimension: bch_dim,
        distance_bounds: bounds,
        warnings: code.warnings.clone(),
        notes,
    })
}
