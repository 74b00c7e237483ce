use itertools::Itertools;

use crate::error::{Error, Result};
use crate::tanner::{TannerGraph, VarSubset};

/// Splits `S` into `parts` disjoint absorbing sets, if possible.
///
/// Parts are listed by smallest member; the search tries first parts in
/// size-then-lex order, so the answer is deterministic. When `parts = 2` and
/// `S` itself is `(a,0)`-absorbing, both halves must share their odd checks;
/// a violation is reported as an internal error.
pub fn partition_into_absorbing(
    graph: &TannerGraph,
    s: &VarSubset,
    parts: usize,
) -> Result<Option<Vec<VarSubset>>> {
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    if parts == 0 || parts > s.len() {
        return Ok(None);
    }
    let n = graph.num_vars();
    let found = split(graph, n, s.members(), parts)?;
    if let Some(found) = &found {
        let whole_even = graph.is_absorbing(s)?.is_some_and(|(_, b)| b == 0);
        if parts == 2 && whole_even {
            let p1 = graph.induced_profile(&found[0])?;
            let p2 = graph.induced_profile(&found[1])?;
            if p1.odd_checks != p2.odd_checks || p1.b() != p2.b() {
                return Err(Error::InvariantViolation(format!(
                    "absorbing halves {} and {} of an even-check set have different odd checks",
                    found[0], found[1]
                )));
            }
        }
    }
    Ok(found)
}

fn split(
    graph: &TannerGraph,
    n: usize,
    remaining: &[usize],
    parts: usize,
) -> Result<Option<Vec<VarSubset>>> {
    if parts == 1 {
        let last = VarSubset::new(n, remaining.iter().copied())?;
        return Ok(graph.is_absorbing(&last)?.map(|_| vec![last]));
    }
    let (&first, rest) = remaining.split_first().expect("nonempty remainder");
    // Leave at least one element for each later part.
    for extra in 0..=rest.len() - (parts - 1) {
        for chosen in rest.iter().copied().combinations(extra) {
            let part = VarSubset::new(n, std::iter::once(first).chain(chosen.iter().copied()))?;
            if graph.is_absorbing(&part)?.is_none() {
                continue;
            }
            let left: Vec<usize> = rest.iter().copied().filter(|v| !chosen.contains(v)).collect();
            if let Some(mut tail) = split(graph, n, &left, parts - 1)? {
                tail.insert(0, part);
                return Ok(Some(tail));
            }
        }
    }
    Ok(None)
}
