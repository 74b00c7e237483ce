use itertools::Itertools;

use super::certify::{Certificate, CertificateKind, Witness};
use super::isomorphism::is_isomorphic;
use crate::error::{Error, Result};
use crate::tanner::{TannerGraph, VarSubset};

/// Looks for a split of `S` into an even number of equal-size parts whose
/// induced subgraphs are pairwise isomorphic and share one odd-check set.
///
/// `S` must be a stabilizer (its indicator lies in the rowspace of `H`),
/// `G_S` must have no odd checks and every member must touch at least one
/// check. Part counts are tried in increasing order; for each count,
/// splits into absorbing parts are preferred over arbitrary ones. A found
/// split whose union is not `(|S|,0)`-absorbing is an internal error.
pub fn check_symmetric_stabilizer(
    graph: &TannerGraph,
    s: &VarSubset,
) -> Result<Option<Certificate>> {
    let profile = graph.induced_profile(s)?;
    if profile.b() != 0 || s.members().iter().any(|&v| graph.var_degree(v) == 0) {
        return Ok(None);
    }
    if !graph.to_biadjacency().rowspace_contains(&s.indicator())? {
        return Ok(None);
    }
    let a = s.len();
    for m in (2..=a).step_by(2).filter(|m| a.is_multiple_of(*m)) {
        for absorbing_only in [true, false] {
            let mut search = Search {
                graph,
                n: graph.num_vars(),
                part_size: a / m,
                absorbing_only,
                reference: None,
            };
            if let Some(parts) = search.run(s.members())? {
                if graph.is_absorbing(s)? != Some((a, 0)) {
                    return Err(Error::InvariantViolation(format!(
                        "symmetric stabilizer {s} is not ({a},0)-absorbing"
                    )));
                }
                return Ok(Some(Certificate::new(
                    CertificateKind::SymmetricStabilizer,
                    Witness {
                        subsets: parts,
                        connectors: Vec::new(),
                        designated_checks: Vec::new(),
                    },
                )));
            }
        }
    }
    Ok(None)
}

struct Search<'g> {
    graph: &'g TannerGraph,
    n: usize,
    part_size: usize,
    absorbing_only: bool,
    /// Induced graph and odd checks of the first part.
    reference: Option<(TannerGraph, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, remaining: &[usize]) -> Result<Option<Vec<VarSubset>>> {
        if remaining.is_empty() {
            return Ok(Some(Vec::new()));
        }
        let (&first, rest) = remaining.split_first().ok_or(Error::EmptySubset)?;
        for chosen in rest.iter().copied().combinations(self.part_size - 1) {
            let part = VarSubset::new(self.n, std::iter::once(first).chain(chosen.iter().copied()))?;
            let profile = self.graph.induced_profile(&part)?;
            if self.absorbing_only && !profile.is_absorbing() {
                continue;
            }
            let (local, _) = self.graph.induced_graph(&part)?;
            let is_first = self.reference.is_none();
            match &self.reference {
                Some((ref_graph, ref_odd)) => {
                    if profile.odd_checks != *ref_odd || !is_isomorphic(ref_graph, &local) {
                        continue;
                    }
                }
                None => self.reference = Some((local, profile.odd_checks.clone())),
            }
            let left: Vec<usize> = rest.iter().copied().filter(|v| !chosen.contains(v)).collect();
            if let Some(mut tail) = self.run(&left)? {
                tail.insert(0, part);
                return Ok(Some(tail));
            }
            if is_first {
                self.reference = None;
            }
        }
        Ok(None)
    }
}
