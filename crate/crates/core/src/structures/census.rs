use std::fmt;

use serde::Serialize;

use super::{map_shards, subsets_up_to, Parallelism};
use crate::decoder::{
    convergence_report, decode_error, ConvergenceReport, DecodeStatus, ErrorPattern, GallagerB,
    Outcome, DEFAULT_MAX_ITERS,
};
use crate::error::{Error, Result};
use crate::families::graph_checksum;
use crate::gf2::BitMatrix;
use crate::tanner::{TannerGraph, VarSubset};

#[derive(Clone, Copy, Debug)]
pub struct CensusConfig {
    pub parallelism: Parallelism,
    pub max_iters: usize,
}

impl Default for CensusConfig {
    fn default() -> Self {
        Self {
            parallelism: Parallelism::default(),
            max_iters: DEFAULT_MAX_ITERS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub subset: VarSubset,
    pub outcome: Outcome,
    pub status: DecodeStatus,
    pub report: ConvergenceReport,
}

/// Smallest failure-inducing size, or only a lower bound when nothing up to
/// the tested weight failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalNumber {
    Exactly(usize),
    GreaterThan(usize),
}

impl fmt::Display for CriticalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriticalNumber::Exactly(m) => write!(f, "{m}"),
            CriticalNumber::GreaterThan(w) => write!(f, "> {w}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureCensus {
    /// SHA-256 of the graph's canonical edge text.
    pub graph_id: String,
    pub tested_weight_bound: usize,
    pub patterns_tested: usize,
    pub failure_inducing_sets: Vec<FailureRecord>,
    pub critical_number: CriticalNumber,
    /// Number of failure-inducing sets of size `μ` (0 when `μ` is unknown).
    pub strength: usize,
}

pub fn census_failure_inducing(
    graph: &TannerGraph,
    stabilizers: &BitMatrix,
    w_max: usize,
) -> Result<FailureCensus> {
    census_failure_inducing_with(graph, stabilizers, w_max, &CensusConfig::default())
}

/// Decodes every error pattern of weight `1..=w_max` and keeps those that
/// are neither exact nor degenerate recoveries.
pub fn census_failure_inducing_with(
    graph: &TannerGraph,
    stabilizers: &BitMatrix,
    w_max: usize,
    config: &CensusConfig,
) -> Result<FailureCensus> {
    let n = graph.num_vars();
    if w_max > n {
        return Err(Error::DimensionMismatch {
            context: "census weight bound exceeds variable count",
            expected: n,
            found: w_max,
        });
    }
    if stabilizers.num_cols() != n {
        return Err(Error::DimensionMismatch {
            context: "stabilizer columns",
            expected: n,
            found: stabilizers.num_cols(),
        });
    }
    let pool: Vec<usize> = (0..n).collect();
    let (failures, patterns_tested) = failures_over(graph, stabilizers, &pool, w_max, config)?;
    let (critical_number, strength) = match failures.first() {
        Some(first) => {
            let mu = first.subset.len();
            let strength = failures.iter().filter(|f| f.subset.len() == mu).count();
            (CriticalNumber::Exactly(mu), strength)
        }
        None => (CriticalNumber::GreaterThan(w_max), 0),
    };
    Ok(FailureCensus {
        graph_id: graph_checksum(graph),
        tested_weight_bound: w_max,
        patterns_tested,
        failure_inducing_sets: failures,
        critical_number,
        strength,
    })
}

/// Decodes every nonempty subset of `pool` up to `w_max` elements on the
/// whole graph. Returns the failures in enumeration order and the number of
/// patterns tried.
pub(crate) fn failures_over(
    graph: &TannerGraph,
    stabilizers: &BitMatrix,
    pool: &[usize],
    w_max: usize,
    config: &CensusConfig,
) -> Result<(Vec<FailureRecord>, usize)> {
    let n = graph.num_vars();
    let patterns = subsets_up_to(pool, w_max);
    let results = map_shards(
        &patterns,
        config.parallelism,
        || GallagerB::new(graph).with_max_iters(config.max_iters),
        |decoder, support| -> Result<Option<FailureRecord>> {
            let e = ErrorPattern::from_support(n, support.iter().copied());
            let (trace, outcome) = decode_error(decoder, &e, stabilizers)?;
            if outcome.is_success() {
                return Ok(None);
            }
            Ok(Some(FailureRecord {
                subset: VarSubset::new(n, support.iter().copied())?,
                outcome,
                status: trace.status,
                report: convergence_report(&trace, &e, &trace.syndrome),
            }))
        },
    );
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    Ok((failures, patterns.len()))
}

pub fn census_absorbing(
    graph: &TannerGraph,
    a_max: usize,
) -> Result<Vec<(VarSubset, (usize, usize))>> {
    census_absorbing_with(graph, a_max, Parallelism::default())
}

/// Every absorbing set of size `1..=a_max`, by size then lexicographically.
/// The enumeration is exhaustive; no pruning is applied.
pub fn census_absorbing_with(
    graph: &TannerGraph,
    a_max: usize,
    parallelism: Parallelism,
) -> Result<Vec<(VarSubset, (usize, usize))>> {
    let n = graph.num_vars();
    if a_max > n {
        return Err(Error::DimensionMismatch {
            context: "census size bound exceeds variable count",
            expected: n,
            found: a_max,
        });
    }
    let pool: Vec<usize> = (0..n).collect();
    let candidates = subsets_up_to(&pool, a_max);
    let found = map_shards(
        &candidates,
        parallelism,
        || (),
        |_, members| -> Result<Option<(VarSubset, (usize, usize))>> {
            let s = VarSubset::new(n, members.iter().copied())?;
            Ok(graph.is_absorbing(&s)?.map(|ab| (s, ab)))
        },
    );
    found.into_iter().filter_map(Result::transpose).collect()
}
