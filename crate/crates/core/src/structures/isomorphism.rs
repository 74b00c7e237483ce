use crate::tanner::TannerGraph;

/// Type-preserving isomorphism test for small Tanner graphs.
///
/// Backtracks over variable bijections, pairing only variables of equal
/// degree and pruning on shared-check counts between mapped pairs. A full
/// bijection is accepted when it carries the multiset of check
/// neighbourhoods of `g1` onto that of `g2`.
pub fn is_isomorphic(g1: &TannerGraph, g2: &TannerGraph) -> bool {
    if g1.num_vars() != g2.num_vars()
        || g1.num_checks() != g2.num_checks()
        || g1.num_edges() != g2.num_edges()
    {
        return false;
    }
    let degrees = |g: &TannerGraph, vars: bool| {
        let mut d: Vec<usize> = if vars {
            (0..g.num_vars()).map(|v| g.var_degree(v)).collect()
        } else {
            (0..g.num_checks()).map(|c| g.check_degree(c)).collect()
        };
        d.sort_unstable();
        d
    };
    if degrees(g1, true) != degrees(g2, true) || degrees(g1, false) != degrees(g2, false) {
        return false;
    }

    let n = g1.num_vars();
    let shared1 = shared_counts(g1);
    let shared2 = shared_counts(g2);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g1.var_degree(v)));

    let mut target = neighbourhoods(g2, &(0..n).collect::<Vec<_>>());
    target.sort_unstable();

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(
        0, &order, g1, g2, &shared1, &shared2, &mut map, &mut used, &target,
    )
}

#[allow(clippy::too_many_arguments)]
fn search(
    depth: usize,
    order: &[usize],
    g1: &TannerGraph,
    g2: &TannerGraph,
    shared1: &[Vec<usize>],
    shared2: &[Vec<usize>],
    map: &mut [usize],
    used: &mut [bool],
    target: &[Vec<usize>],
) -> bool {
    if depth == order.len() {
        let mut mapped = neighbourhoods(g1, map);
        mapped.sort_unstable();
        return mapped == target;
    }
    let v = order[depth];
    for w in 0..g2.num_vars() {
        if used[w] || g2.var_degree(w) != g1.var_degree(v) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| shared1[v][u] == shared2[w][map[u]]);
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if search(depth + 1, order, g1, g2, shared1, shared2, map, used, target) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// `shared[u][v]`: number of checks adjacent to both `u` and `v`.
fn shared_counts(g: &TannerGraph) -> Vec<Vec<usize>> {
    let n = g.num_vars();
    let mut shared = vec![vec![0; n]; n];
    for c in 0..g.num_checks() {
        let nb = g.check_neighbors(c);
        for &u in nb {
            for &v in nb {
                shared[u][v] += 1;
            }
        }
    }
    shared
}

/// Check neighbourhoods with variables renamed through `map`, each sorted.
fn neighbourhoods(g: &TannerGraph, map: &[usize]) -> Vec<Vec<usize>> {
    (0..g.num_checks())
        .map(|c| {
            let mut nb: Vec<usize> = g.check_neighbors(c).iter().map(|&v| map[v]).collect();
            nb.sort_unstable();
            nb
        })
        .collect()
}
