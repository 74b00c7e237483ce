use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use super::symmetric::check_symmetric_stabilizer;
use crate::decoder::{convergence_report, decode_error, ErrorPattern, GallagerB, Outcome, DEFAULT_MAX_ITERS};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::tanner::{format_nodes, SubgraphProfile, TannerGraph, VarSubset};

/// Which failure result a certificate instantiates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// An absorbing set with odd checks, decoded alone, ends with those
    /// checks unmatched.
    AbsorbingMismatch,
    /// An even-check absorbing set whose all-ones vector is not a
    /// stabilizer produces a logical error.
    EvenLogicalError,
    /// Two halves of an even-check union share their odd checks.
    SharedOddChecks,
    /// Two closed absorbing sets with overlapping odd checks.
    OverlappingOddChecks,
    /// A path of degree-2 nodes joins two absorbing sets.
    PathConnector,
    /// Several disjoint paths join two absorbing sets.
    MultiplePaths,
    /// A tree touching one odd check of `A1` joins two absorbing sets.
    TreeConnector,
    /// Several such trees.
    MultipleTrees,
    /// Trees joining three or more absorbing sets.
    TreeNetwork,
    /// An even-check set splits into isomorphic parts with shared odd checks.
    SymmetricStabilizer,
}

impl CertificateKind {
    pub const ALL: [CertificateKind; 10] = [
        CertificateKind::AbsorbingMismatch,
        CertificateKind::EvenLogicalError,
        CertificateKind::SharedOddChecks,
        CertificateKind::OverlappingOddChecks,
        CertificateKind::PathConnector,
        CertificateKind::MultiplePaths,
        CertificateKind::TreeConnector,
        CertificateKind::MultipleTrees,
        CertificateKind::TreeNetwork,
        CertificateKind::SymmetricStabilizer,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::AbsorbingMismatch => "absorbing_mismatch",
            CertificateKind::EvenLogicalError => "even_logical_error",
            CertificateKind::SharedOddChecks => "shared_odd_checks",
            CertificateKind::OverlappingOddChecks => "overlapping_odd_checks",
            CertificateKind::PathConnector => "path_connector",
            CertificateKind::MultiplePaths => "multiple_paths",
            CertificateKind::TreeConnector => "tree_connector",
            CertificateKind::MultipleTrees => "multiple_trees",
            CertificateKind::TreeNetwork => "tree_network",
            CertificateKind::SymmetricStabilizer => "symmetric_stabilizer",
        }
    }
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A tree of nodes outside every given set, whose leaves are set variables.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Connector {
    pub variables: Vec<usize>,
    pub checks: Vec<usize>,
    /// Set variables the tree ends on.
    pub endpoints: Vec<usize>,
    /// Indices (into `[A1, others...]`) of the sets it touches.
    pub touches: Vec<usize>,
    /// A simple path whose interior nodes all have degree 2 in the host.
    pub is_path: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    /// `A1` first, then the other sets involved.
    pub subsets: Vec<VarSubset>,
    pub connectors: Vec<Connector>,
    /// Checks the result predicts to stay unmatched, ascending.
    pub designated_checks: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodedOn {
    Host,
    Induced,
}

/// The decoder run that confirmed a certificate, on the error `A1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CrossCheck {
    pub decoded_on: DecodedOn,
    pub outcome: Outcome,
    /// Unmatched checks, in host numbering.
    pub unmatched: Vec<usize>,
    /// Whether the unmatched checks are exactly the designated ones.
    pub exact: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub witness: Witness,
    pub cross_check: Option<CrossCheck>,
}

impl Certificate {
    pub(crate) fn new(kind: CertificateKind, witness: Witness) -> Self {
        Certificate {
            kind,
            witness,
            cross_check: None,
        }
    }

    /// Re-derives the certificate from its witness sets on `graph`.
    pub fn recheck(&self, graph: &TannerGraph) -> Result<bool> {
        let sets = &self.witness.subsets;
        if self.kind == CertificateKind::SymmetricStabilizer {
            let union = sets.iter().skip(1).fold(sets[0].clone(), |u, s| u.union(s));
            return Ok(check_symmetric_stabilizer(graph, &union)?.is_some());
        }
        let found = certify(graph, &sets[0], &sets[1..])?;
        Ok(found.certificates.iter().any(|c| {
            c.kind == self.kind && c.witness.designated_checks == self.witness.designated_checks
        }))
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self.witness.subsets.iter().map(ToString::to_string).collect();
        write!(
            f,
            "{}: sets {} designated {}",
            self.kind,
            sets.join(" "),
            format_nodes('c', &self.witness.designated_checks)
        )?;
        if let Some(x) = &self.cross_check {
            write!(
                f,
                " -> {:?} unmatched {}{}",
                x.outcome,
                format_nodes('c', &x.unmatched),
                if x.exact { " (exact)" } else { "" }
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CertifyConfig {
    /// Components bigger than this (variables plus checks plus endpoints)
    /// are not considered as connectors.
    pub max_connector_nodes: usize,
    pub max_iters: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            max_connector_nodes: 20,
            max_iters: DEFAULT_MAX_ITERS,
        }
    }
}

/// Certificates that hold, plus the reason each other result does not apply.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CertifyReport {
    pub certificates: Vec<Certificate>,
    pub unsatisfied: Vec<(CertificateKind, String)>,
}

impl CertifyReport {
    pub fn get(&self, kind: CertificateKind) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.kind == kind)
    }
}

pub fn certify(graph: &TannerGraph, a1: &VarSubset, others: &[VarSubset]) -> Result<CertifyReport> {
    certify_with(graph, a1, others, &CertifyConfig::default())
}

/// Checks every failure result against `A1` and the other sets.
///
/// Each certificate that holds is confirmed by decoding the error `A1`; a
/// disagreement between a satisfied hypothesis and the decoder is an
/// internal error.
pub fn certify_with(
    graph: &TannerGraph,
    a1: &VarSubset,
    others: &[VarSubset],
    config: &CertifyConfig,
) -> Result<CertifyReport> {
    let sets: Vec<&VarSubset> = std::iter::once(a1).chain(others).collect();
    let mut profiles = Vec::with_capacity(sets.len());
    for s in &sets {
        if s.universe() != graph.num_vars() {
            return Err(Error::DimensionMismatch {
                context: "variable subset universe",
                expected: graph.num_vars(),
                found: s.universe(),
            });
        }
        profiles.push(graph.induced_profile(s)?);
    }
    let ctx = Context {
        graph,
        sets: &sets,
        profiles: &profiles,
        config,
    };
    let mut report = CertifyReport {
        certificates: Vec::new(),
        unsatisfied: Vec::new(),
    };
    for kind in CertificateKind::ALL {
        match ctx.evaluate(kind)? {
            Ok(mut cert) => {
                if kind != CertificateKind::SymmetricStabilizer {
                    cert.cross_check = Some(ctx.cross_check(&cert)?);
                }
                report.certificates.push(cert);
            }
            Err(reason) => report.unsatisfied.push((kind, reason)),
        }
    }
    Ok(report)
}

struct Context<'a> {
    graph: &'a TannerGraph,
    sets: &'a [&'a VarSubset],
    profiles: &'a [SubgraphProfile],
    config: &'a CertifyConfig,
}

type Verdict = std::result::Result<Certificate, String>;

macro_rules! require {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Ok(Err(format!($($msg)*)));
        }
    };
}

impl Context<'_> {
    fn witness(&self, sets: usize, connectors: Vec<Connector>, designated: BTreeSet<usize>) -> Witness {
        Witness {
            subsets: self.sets[..sets].iter().map(|s| (*s).clone()).collect(),
            connectors,
            designated_checks: designated.into_iter().collect(),
        }
    }

    fn odd(&self, i: usize) -> BTreeSet<usize> {
        self.profiles[i].odd_checks.iter().copied().collect()
    }

    /// Every set absorbing with at least one odd check, pairwise disjoint,
    /// and closed over its even checks.
    fn common(&self, count: usize) -> std::result::Result<(), String> {
        for i in 0..count {
            let p = &self.profiles[i];
            if !p.is_absorbing() {
                return Err(format!("{} is not absorbing", self.sets[i]));
            }
            if p.b() == 0 {
                return Err(format!("{} has no odd checks", self.sets[i]));
            }
            if !self.graph.closure_condition(self.sets[i], &p.even_checks) {
                return Err(format!("even checks of {} reach outside it", self.sets[i]));
            }
            for j in 0..i {
                if !self.sets[i].is_disjoint(self.sets[j]) {
                    return Err(format!("{} and {} overlap", self.sets[j], self.sets[i]));
                }
            }
        }
        Ok(())
    }

    fn evaluate(&self, kind: CertificateKind) -> Result<Verdict> {
        use CertificateKind::*;
        let g = self.graph;
        let k = self.sets.len();
        match kind {
            AbsorbingMismatch => {
                let p = &self.profiles[0];
                require!(p.is_absorbing(), "{} is not absorbing", self.sets[0]);
                require!(p.b() > 0, "{} has no odd checks", self.sets[0]);
                Ok(Ok(Certificate::new(kind, self.witness(1, vec![], self.odd(0)))))
            }
            EvenLogicalError => {
                let p = &self.profiles[0];
                require!(
                    p.is_absorbing() && p.b() == 0,
                    "{} is not absorbing with only even checks",
                    self.sets[0]
                );
                let h = g.induced_matrix(self.sets[0])?;
                let ones = BitVector::ones(self.sets[0].len());
                require!(
                    !h.rowspace_contains(&ones)?,
                    "the all-ones vector on {} is a stabilizer",
                    self.sets[0]
                );
                Ok(Ok(Certificate::new(kind, self.witness(1, vec![], BTreeSet::new()))))
            }
            SharedOddChecks => {
                require!(k == 2, "needs exactly one other set");
                let union = self.sets[0].union(self.sets[1]);
                require!(self.sets[0].is_disjoint(self.sets[1]), "the sets overlap");
                for i in 0..2 {
                    require!(
                        self.profiles[i].is_absorbing() && self.profiles[i].b() > 0,
                        "{} is not absorbing with odd checks",
                        self.sets[i]
                    );
                }
                let up = g.induced_profile(&union)?;
                require!(up.is_absorbing() && up.b() == 0, "the union is not absorbing with only even checks");
                require!(
                    g.closure_condition(&union, &g.neighborhood(&union)),
                    "the union's checks reach outside it"
                );
                if self.odd(0) != self.odd(1) {
                    return Err(Error::InvariantViolation(format!(
                        "halves {} and {} of an even-check union have different odd checks",
                        self.sets[0], self.sets[1]
                    )));
                }
                Ok(Ok(Certificate::new(kind, self.witness(2, vec![], self.odd(0)))))
            }
            OverlappingOddChecks => {
                require!(k == 2, "needs exactly one other set");
                if let Err(reason) = self.common(2) {
                    return Ok(Err(reason));
                }
                let d: BTreeSet<usize> = self.odd(0).intersection(&self.odd(1)).copied().collect();
                require!(!d.is_empty(), "the odd checks do not overlap");
                Ok(Ok(Certificate::new(kind, self.witness(2, vec![], d))))
            }
            PathConnector | MultiplePaths => {
                require!(k == 2, "needs exactly one other set");
                if let Err(reason) = self.common(2) {
                    return Ok(Err(reason));
                }
                let paths: Vec<Connector> = self
                    .connectors()?
                    .into_iter()
                    .filter(|c| c.is_path && c.touches == [0, 1])
                    .collect();
                let need = if kind == PathConnector { 1 } else { 2 };
                require!(paths.len() >= need, "found {} path connector(s), need {need}", paths.len());
                let mut designated = self.odd(0);
                designated.extend(paths.iter().flat_map(|p| p.checks.iter().copied()));
                Ok(Ok(Certificate::new(kind, self.witness(2, paths, designated))))
            }
            TreeConnector | MultipleTrees => {
                require!(k == 2, "needs exactly one other set");
                if let Err(reason) = self.common(2) {
                    return Ok(Err(reason));
                }
                let odd = self.odd(0);
                let trees: Vec<Connector> = self
                    .connectors()?
                    .into_iter()
                    .filter(|c| c.touches == [0, 1] && touching(c, &odd).len() == 1)
                    .collect();
                let need = if kind == TreeConnector { 1 } else { 2 };
                require!(
                    trees.len() >= need,
                    "found {} tree(s) touching one odd check of A1, need {need}",
                    trees.len()
                );
                let designated = trees.iter().flat_map(|t| touching(t, &odd)).collect();
                Ok(Ok(Certificate::new(kind, self.witness(2, trees, designated))))
            }
            TreeNetwork => {
                require!(k >= 3, "needs at least two other sets");
                if let Err(reason) = self.common(k) {
                    return Ok(Err(reason));
                }
                let odd = self.odd(0);
                let trees = self.connectors()?;
                let incident: Vec<&Connector> = trees.iter().filter(|t| t.touches.contains(&0)).collect();
                require!(!incident.is_empty(), "no tree touches A1");
                for t in &incident {
                    let n = touching(t, &odd).len();
                    require!(n == 1, "a tree touches {n} odd checks of A1");
                }
                let designated = incident.iter().flat_map(|t| touching(t, &odd)).collect();
                Ok(Ok(Certificate::new(kind, self.witness(k, trees.clone(), designated))))
            }
            SymmetricStabilizer => {
                let union = self.sets[1..].iter().fold(self.sets[0].clone(), |u, s| u.union(s));
                Ok(check_symmetric_stabilizer(g, &union)?
                    .ok_or_else(|| format!("{union} has no symmetric split")))
            }
        }
    }

    fn cross_check(&self, cert: &Certificate) -> Result<CrossCheck> {
        use CertificateKind::*;
        let a1 = self.sets[0];
        let induced = matches!(cert.kind, AbsorbingMismatch | EvenLogicalError);
        let (graph, check_map) = if induced {
            let (local, map) = self.graph.induced_graph(a1)?;
            (local, Some(map))
        } else {
            (self.graph.clone(), None)
        };
        let e = if induced {
            ErrorPattern::from_support(a1.len(), 0..a1.len())
        } else {
            ErrorPattern::from_subset(a1)
        };
        let decoder = GallagerB::new(&graph).with_max_iters(self.config.max_iters);
        let (trace, outcome) = decode_error(&decoder, &e, &graph.to_biadjacency())?;
        let report = convergence_report(&trace, &e, &trace.syndrome);
        let unmatched: Vec<usize> = match &check_map {
            Some(map) => report.checks_not_matched.iter().map(|&c| map[c]).collect(),
            None => report.checks_not_matched,
        };
        let expected_ok = if cert.kind == EvenLogicalError {
            outcome == Outcome::LogicalError
        } else {
            outcome.is_syndrome_mismatch()
        };
        let designated = &cert.witness.designated_checks;
        let covered = designated.iter().all(|c| unmatched.contains(c));
        if !expected_ok || !covered {
            return Err(Error::InvariantViolation(format!(
                "{} holds for {} but decoding gives {:?} with unmatched {}",
                cert.kind,
                a1,
                outcome,
                format_nodes('c', &unmatched)
            )));
        }
        Ok(CrossCheck {
            decoded_on: if induced { DecodedOn::Induced } else { DecodedOn::Host },
            outcome,
            exact: unmatched == *designated,
            unmatched,
        })
    }

    /// Trees between the sets through nodes outside them and outside their
    /// even checks.
    fn connectors(&self) -> Result<Vec<Connector>> {
        let g = self.graph;
        let mut owner: HashMap<usize, usize> = HashMap::new();
        for (i, s) in self.sets.iter().enumerate() {
            for &v in s.members() {
                owner.insert(v, i);
            }
        }
        let blocked: BTreeSet<usize> = self
            .profiles
            .iter()
            .flat_map(|p| p.even_checks.iter().copied())
            .collect();
        // Node ids: variables as-is, checks offset by n.
        let n = g.num_vars();
        let free = |id: usize| {
            if id < n {
                !owner.contains_key(&id)
            } else {
                !blocked.contains(&(id - n))
            }
        };
        let neighbours = |id: usize| -> Vec<usize> {
            if id < n {
                g.var_neighbors(id).iter().map(|&c| c + n).collect()
            } else {
                g.check_neighbors(id - n).to_vec()
            }
        };

        let mut seen = vec![false; n + g.num_checks()];
        let mut out = Vec::new();
        for start in 0..n + g.num_checks() {
            if seen[start] || !free(start) {
                continue;
            }
            let mut nodes = BTreeSet::new();
            let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                nodes.insert(u);
                for w in neighbours(u) {
                    if free(w) {
                        adj.entry(u).or_default().insert(w);
                        if !seen[w] {
                            seen[w] = true;
                            queue.push_back(w);
                        }
                    } else if w < n {
                        // A set variable hanging off a free check.
                        adj.entry(u).or_default().insert(w);
                        adj.entry(w).or_default().insert(u);
                    }
                }
            }
            let endpoints_all: BTreeSet<usize> = adj.keys().copied().filter(|&u| !free(u)).collect();
            if nodes.len() + endpoints_all.len() > self.config.max_connector_nodes {
                continue;
            }
            nodes.extend(endpoints_all.iter().copied());
            // Strip dangling branches that do not end on a set variable.
            loop {
                let leaf = nodes
                    .iter()
                    .copied()
                    .find(|&u| free(u) && adj.get(&u).map_or(0, BTreeSet::len) <= 1);
                let Some(leaf) = leaf else { break };
                nodes.remove(&leaf);
                if let Some(nb) = adj.remove(&leaf) {
                    for w in nb {
                        if let Some(set) = adj.get_mut(&w) {
                            set.remove(&leaf);
                        }
                    }
                }
            }
            nodes.retain(|u| adj.get(u).is_some_and(|s| !s.is_empty()));
            let edges: usize = nodes.iter().map(|u| adj[u].len()).sum::<usize>() / 2;
            if nodes.is_empty() || edges + 1 != nodes.len() {
                continue;
            }
            let endpoints: Vec<usize> = nodes.iter().copied().filter(|&u| !free(u)).collect();
            let touches: BTreeSet<usize> = endpoints.iter().map(|v| owner[v]).collect();
            if touches.len() < 2 {
                continue;
            }
            let interior: Vec<usize> = nodes.iter().copied().filter(|&u| free(u)).collect();
            let is_path = endpoints.len() == 2
                && interior.iter().all(|&u| {
                    adj[&u].len() == 2
                        && if u < n {
                            g.var_degree(u) == 2
                        } else {
                            g.check_degree(u - n) == 2
                        }
                });
            out.push(Connector {
                variables: interior.iter().copied().filter(|&u| u < n).collect(),
                checks: interior.iter().filter(|&&u| u >= n).map(|&u| u - n).collect(),
                endpoints,
                touches: touches.into_iter().collect(),
                is_path,
            });
        }
        Ok(out)
    }
}

fn touching(c: &Connector, odd: &BTreeSet<usize>) -> Vec<usize> {
    c.checks.iter().copied().filter(|x| odd.contains(x)).collect()
}
