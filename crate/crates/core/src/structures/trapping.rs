use super::census::{failures_over, CensusConfig, FailureRecord};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::tanner::{TannerGraph, VarSubset};

/// The first failure-inducing `F ⊆ T` with `|F| <= w_max`, in size-then-lex
/// order. Errors are confined to `T`; decoding runs on the whole graph.
pub fn is_trapping_set(
    graph: &TannerGraph,
    t: &VarSubset,
    stabilizers: &BitMatrix,
    w_max: usize,
) -> Result<Option<VarSubset>> {
    let found = failure_inducing_within(graph, t, stabilizers, w_max, &CensusConfig::default())?;
    Ok(found.into_iter().next().map(|f| f.subset))
}

/// Every failure-inducing subset of `T` up to `w_max` elements.
pub fn failure_inducing_within(
    graph: &TannerGraph,
    t: &VarSubset,
    stabilizers: &BitMatrix,
    w_max: usize,
    config: &CensusConfig,
) -> Result<Vec<FailureRecord>> {
    if t.is_empty() {
        return Err(Error::EmptySubset);
    }
    if t.universe() != graph.num_vars() {
        return Err(Error::DimensionMismatch {
            context: "variable subset universe",
            expected: graph.num_vars(),
            found: t.universe(),
        });
    }
    if stabilizers.num_cols() != graph.num_vars() {
        return Err(Error::DimensionMismatch {
            context: "stabilizer columns",
            expected: graph.num_vars(),
            found: stabilizers.num_cols(),
        });
    }
    Ok(failures_over(graph, stabilizers, t.members(), w_max, config)?.0)
}
