//! Failure structures: censuses, trapping-set witnesses, symmetric
//! stabilizers, absorbing partitions and theorem certificates.

mod census;
mod certify;
mod isomorphism;
mod partition;
mod symmetric;
mod trapping;

pub use census::{
    census_absorbing, census_absorbing_with, census_failure_inducing,
    census_failure_inducing_with, CensusConfig, CriticalNumber, FailureCensus, FailureRecord,
};
pub use certify::{
    certify, certify_with, Certificate, CertificateKind, CertifyConfig, CertifyReport, Connector, CrossCheck,
    DecodedOn, Witness,
};
pub use isomorphism::is_isomorphic;
pub use partition::partition_into_absorbing;
pub use symmetric::check_symmetric_stabilizer;
pub use trapping::{failure_inducing_within, is_trapping_set};

use itertools::Itertools;
use serde::Serialize;

/// How subset enumerations are evaluated.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parallelism {
    Sequential,
    /// Shards run on the rayon pool. Without the `parallel` feature this
    /// behaves like `Sequential`.
    Parallel,
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }
}

const SHARD_SIZE: usize = 64;

/// Maps `f` over `items` in shards, keeping input order. `init` builds the
/// per-shard state (typically a decoder).
pub(crate) fn map_shards<T, S, R, I, F>(
    items: &[T],
    parallelism: Parallelism,
    init: I,
    f: F,
) -> Vec<R>
where
    T: Sync,
    R: Send,
    I: Fn() -> S + Sync,
    F: Fn(&mut S, &T) -> R + Sync,
{
    let run = |chunk: &[T]| {
        let mut state = init();
        chunk.iter().map(|t| f(&mut state, t)).collect::<Vec<R>>()
    };
    match parallelism {
        #[cfg(feature = "parallel")]
        Parallelism::Parallel => {
            use rayon::prelude::*;
            items.par_chunks(SHARD_SIZE).map(run).collect::<Vec<_>>().into_iter().flatten().collect()
        }
        _ => items.chunks(SHARD_SIZE).flat_map(run).collect(),
    }
}

/// All subsets of `pool` with size in `1..=max`, ordered by size and then
/// lexicographically.
pub(crate) fn subsets_up_to(pool: &[usize], max: usize) -> Vec<Vec<usize>> {
    (1..=max.min(pool.len()))
        .flat_map(|k| pool.iter().copied().combinations(k))
        .collect()
}
