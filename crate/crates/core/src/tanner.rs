//! Tanner graphs, induced subgraphs and the absorbing-set predicate.
//!
//! Indices are zero-based internally. Human-facing renderings (`v1`, `c3`)
//! are one-based to match the usual node labels.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Bipartite graph of variable and check nodes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TannerGraph {
    num_vars: usize,
    check_adj: Vec<Vec<usize>>,
    var_adj: Vec<Vec<usize>>,
}

impl TannerGraph {
    /// Edge `(v_i, c_j)` exists iff `h[j][i] = 1`.
    pub fn from_biadjacency(h: &BitMatrix) -> Self {
        let check_adj: Vec<Vec<usize>> = h.rows().iter().map(BitVector::support).collect();
        Self::from_check_lists(h.num_cols(), check_adj)
    }

    fn from_check_lists(num_vars: usize, check_adj: Vec<Vec<usize>>) -> Self {
        let mut var_adj = vec![Vec::new(); num_vars];
        for (c, vars) in check_adj.iter().enumerate() {
            for &v in vars {
                var_adj[v].push(c);
            }
        }
        Self {
            num_vars,
            check_adj,
            var_adj,
        }
    }

    /// Builds a graph from `(variable, check)` pairs. Duplicate or
    /// out-of-range edges are rejected.
    pub fn from_edges(num_vars: usize, num_checks: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut check_adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); num_checks];
        for &(v, c) in edges {
            if v >= num_vars {
                return Err(Error::IndexOutOfRange {
                    kind: "variable",
                    index: v,
                    size: num_vars,
                });
            }
            if c >= num_checks {
                return Err(Error::IndexOutOfRange {
                    kind: "check",
                    index: c,
                    size: num_checks,
                });
            }
            if !check_adj[c].insert(v) {
                return Err(Error::DuplicateEdge {
                    variable: v,
                    check: c,
                });
            }
        }
        Ok(Self::from_check_lists(
            num_vars,
            check_adj.into_iter().map(|s| s.into_iter().collect()).collect(),
        ))
    }

    pub fn to_biadjacency(&self) -> BitMatrix {
        let mut h = BitMatrix::zeros(self.num_checks(), self.num_vars);
        for (c, vars) in self.check_adj.iter().enumerate() {
            for &v in vars {
                h.set(c, v, true);
            }
        }
        h
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    #[inline]
    pub fn num_checks(&self) -> usize {
        self.check_adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.check_adj.iter().map(Vec::len).sum()
    }

    /// Checks adjacent to variable `v`, ascending.
    #[inline]
    pub fn var_neighbors(&self, v: usize) -> &[usize] {
        &self.var_adj[v]
    }

    /// Variables adjacent to check `c`, ascending.
    #[inline]
    pub fn check_neighbors(&self, c: usize) -> &[usize] {
        &self.check_adj[c]
    }

    pub fn var_degree(&self, v: usize) -> usize {
        self.var_adj[v].len()
    }

    pub fn check_degree(&self, c: usize) -> usize {
        self.check_adj[c].len()
    }

    /// All edges as `(variable, check)`, ordered by check then variable.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.check_adj
            .iter()
            .enumerate()
            .flat_map(|(c, vars)| vars.iter().map(move |&v| (v, c)))
    }

    /// `N(S)`: checks adjacent to at least one member of `subset`.
    pub fn neighborhood(&self, subset: &VarSubset) -> Vec<usize> {
        let set: BTreeSet<usize> = subset
            .members()
            .iter()
            .flat_map(|&v| self.var_adj[v].iter().copied())
            .collect();
        set.into_iter().collect()
    }

    /// Degree of check `c` inside `G_S`.
    fn inner_degree(&self, c: usize, subset: &VarSubset) -> usize {
        self.check_adj[c]
            .iter()
            .filter(|v| subset.contains(**v))
            .count()
    }

    /// `(a, b)`, odd/even checks and per-variable tallies of `G_S`.
    pub fn induced_profile(&self, subset: &VarSubset) -> Result<SubgraphProfile> {
        self.require_subset(subset)?;
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut odd_checks = Vec::new();
        let mut even_checks = Vec::new();
        let mut odd = vec![false; self.num_checks()];
        for c in self.neighborhood(subset) {
            if self.inner_degree(c, subset) % 2 == 1 {
                odd_checks.push(c);
                odd[c] = true;
            } else {
                even_checks.push(c);
            }
        }
        let tallies = subset
            .members()
            .iter()
            .map(|&v| {
                let odd_nbrs = self.var_adj[v].iter().filter(|&&c| odd[c]).count();
                VarTally {
                    variable: v,
                    even_nbrs: self.var_adj[v].len() - odd_nbrs,
                    odd_nbrs,
                }
            })
            .collect();
        Ok(SubgraphProfile {
            variables: subset.members().to_vec(),
            odd_checks,
            even_checks,
            tallies,
        })
    }

    /// Returns `(a, b)` when every member has strictly more even-degree than
    /// odd-degree check neighbours in `G_S`.
    pub fn is_absorbing(&self, subset: &VarSubset) -> Result<Option<(usize, usize)>> {
        let profile = self.induced_profile(subset)?;
        Ok(profile.is_absorbing().then(|| profile.ab()))
    }

    /// True iff every listed check has all of its host-graph neighbours in
    /// `subset`.
    pub fn closure_condition(&self, subset: &VarSubset, checks: &[usize]) -> bool {
        checks
            .iter()
            .all(|&c| self.check_adj[c].iter().all(|&v| subset.contains(v)))
    }

    /// Connectivity, acyclicity and leaves of `G_S`.
    pub fn structure_summary(&self, subset: &VarSubset) -> Result<StructureSummary> {
        self.require_subset(subset)?;
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let checks = self.neighborhood(subset);
        let check_index: BTreeMap<usize, usize> =
            checks.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let nv = subset.len();
        // Node ids: variables 0..nv, checks nv..
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv + checks.len()];
        let mut edges = 0;
        for (vi, &v) in subset.members().iter().enumerate() {
            for c in &self.var_adj[v] {
                let ci = nv + check_index[c];
                adj[vi].push(ci);
                adj[ci].push(vi);
                edges += 1;
            }
        }
        let nodes = adj.len();
        let mut seen = vec![false; nodes];
        let mut components = 0;
        for start in 0..nodes {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        let leaves = adj
            .iter()
            .enumerate()
            .filter(|(_, a)| a.len() == 1)
            .map(|(i, _)| {
                if i < nv {
                    Node::Var(subset.members()[i])
                } else {
                    Node::Check(checks[i - nv])
                }
            })
            .collect();
        Ok(StructureSummary {
            connected: components == 1,
            acyclic: edges + components == nodes,
            leaves,
        })
    }

    /// The graph `G_S` relabelled to local indices: variables follow the
    /// order of `subset`, checks follow ascending `N(S)`. Returns the local
    /// graph and the host index of each local check.
    pub fn induced_graph(&self, subset: &VarSubset) -> Result<(TannerGraph, Vec<usize>)> {
        self.require_subset(subset)?;
        let checks = self.neighborhood(subset);
        let local_var: BTreeMap<usize, usize> = subset
            .members()
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let check_adj = checks
            .iter()
            .map(|&c| {
                self.check_adj[c]
                    .iter()
                    .filter_map(|v| local_var.get(v).copied())
                    .collect()
            })
            .collect();
        Ok((
            TannerGraph::from_check_lists(subset.len(), check_adj),
            checks,
        ))
    }

    /// Parity-check matrix of `G_S` (`H_A` for an absorbing set `A`).
    pub fn induced_matrix(&self, subset: &VarSubset) -> Result<BitMatrix> {
        Ok(self.induced_graph(subset)?.0.to_biadjacency())
    }

    pub fn full_subset(&self) -> VarSubset {
        VarSubset {
            universe: self.num_vars,
            members: (0..self.num_vars).collect(),
        }
    }

    fn require_subset(&self, subset: &VarSubset) -> Result<()> {
        if subset.universe != self.num_vars {
            return Err(Error::DimensionMismatch {
                context: "variable subset universe",
                expected: self.num_vars,
                found: subset.universe,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for TannerGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TannerGraph {{ vars: {}, checks: {}, edges: {} }}",
            self.num_vars,
            self.num_checks(),
            self.num_edges()
        )
    }
}

/// A set of variable nodes of a graph with `universe` variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSubset {
    universe: usize,
    members: Vec<usize>,
}

impl VarSubset {
    /// Members are sorted and deduplicated; out-of-range indices are
    /// rejected.
    pub fn new<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Result<Self> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&v| v >= universe) {
            return Err(Error::IndexOutOfRange {
                kind: "variable",
                index: bad,
                size: universe,
            });
        }
        Ok(Self {
            universe,
            members: set.into_iter().collect(),
        })
    }

    /// Like [`VarSubset::new`] with one-based labels (`v1` is `1`).
    pub fn from_labels<I: IntoIterator<Item = usize>>(universe: usize, labels: I) -> Result<Self> {
        let mut zero_based = Vec::new();
        for l in labels {
            if l == 0 {
                return Err(Error::IndexOutOfRange {
                    kind: "variable label",
                    index: 0,
                    size: universe,
                });
            }
            zero_based.push(l - 1);
        }
        Self::new(universe, zero_based)
    }

    pub fn from_indicator(v: &BitVector) -> Self {
        Self {
            universe: v.len(),
            members: v.support(),
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn indicator(&self) -> BitVector {
        BitVector::from_support(self.universe, self.members.iter().copied())
    }

    pub fn is_disjoint(&self, other: &VarSubset) -> bool {
        self.members.iter().all(|v| !other.contains(*v))
    }

    pub fn union(&self, other: &VarSubset) -> VarSubset {
        let set: BTreeSet<usize> = self.members.iter().chain(&other.members).copied().collect();
        VarSubset {
            universe: self.universe.max(other.universe),
            members: set.into_iter().collect(),
        }
    }

    pub fn difference(&self, other: &VarSubset) -> VarSubset {
        VarSubset {
            universe: self.universe,
            members: self
                .members
                .iter()
                .copied()
                .filter(|v| !other.contains(*v))
                .collect(),
        }
    }

    /// One-based labels, e.g. `[1, 3]` for `{v1, v3}`.
    pub fn labels(&self) -> Vec<usize> {
        self.members.iter().map(|v| v + 1).collect()
    }
}

impl fmt::Display for VarSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_nodes('v', &self.members))
    }
}

impl fmt::Debug for VarSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for VarSubset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

/// Renders zero-based indices as `{v1,v2}` style one-based labels.
pub fn format_nodes(prefix: char, indices: &[usize]) -> String {
    let body: Vec<String> = indices.iter().map(|i| format!("{prefix}{}", i + 1)).collect();
    format!("{{{}}}", body.join(","))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VarTally {
    pub variable: usize,
    pub even_nbrs: usize,
    pub odd_nbrs: usize,
}

/// Degree profile of an induced subgraph `G_S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgraphProfile {
    pub variables: Vec<usize>,
    /// `O_S`: checks of odd degree in `G_S`, ascending.
    pub odd_checks: Vec<usize>,
    /// `E_S`: checks of even (nonzero) degree in `G_S`, ascending.
    pub even_checks: Vec<usize>,
    pub tallies: Vec<VarTally>,
}

impl SubgraphProfile {
    pub fn a(&self) -> usize {
        self.variables.len()
    }

    pub fn b(&self) -> usize {
        self.odd_checks.len()
    }

    pub fn ab(&self) -> (usize, usize) {
        (self.a(), self.b())
    }

    pub fn is_absorbing(&self) -> bool {
        self.tallies.iter().all(|t| t.even_nbrs > t.odd_nbrs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Node {
    Var(usize),
    Check(usize),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Var(v) => write!(f, "v{}", v + 1),
            Node::Check(c) => write!(f, "c{}", c + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureSummary {
    pub connected: bool,
    pub acyclic: bool,
    pub leaves: Vec<Node>,
}
