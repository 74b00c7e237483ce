//! Generators for paths, cycles, theta graphs and dumbbells, plus the
//! hand-transcribed fixture graphs.
//!
//! Theta and dumbbell parameters count edges, not nodes.

mod fixtures;

pub use fixtures::{edge_text, fixture, fixture_by_name, graph_checksum, Fixture, FixtureName};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tanner::TannerGraph;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaVariant {
    /// Both degree-3 junctions are variable nodes.
    JunctionsAreVariables,
    /// Both degree-3 junctions are check nodes.
    JunctionsAreChecks,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    /// `v1 c1 v2 ... c_{a-1} v_a`.
    Path { a: usize },
    /// `v1 c1 v2 ... v_a c_a v1`.
    Cycle { a: usize },
    /// Two junctions joined by three disjoint paths of `a`, `b`, `c` edges.
    Theta {
        a: usize,
        b: usize,
        c: usize,
        variant: ThetaVariant,
    },
    /// Cycles of `a1` and `a2` edges joined at variable nodes by a path of
    /// `b` edges. With `b = 0` the cycles share one variable.
    Dumbbell { a1: usize, a2: usize, b: usize },
}

/// Builds the canonical labelling of a family member.
pub fn generate(spec: &FamilySpec) -> Result<TannerGraph> {
    match *spec {
        FamilySpec::Path { a } => {
            if a < 2 {
                return Err(invalid(format!("path needs a >= 2, got a = {a}")));
            }
            let edges: Vec<_> = (0..a - 1).flat_map(|i| [(i, i), (i + 1, i)]).collect();
            TannerGraph::from_edges(a, a - 1, &edges)
        }
        FamilySpec::Cycle { a } => {
            if a < 2 {
                return Err(invalid(format!("cycle needs a >= 2, got a = {a}")));
            }
            TannerGraph::from_edges(a, a, &cycle_edges(a, 0, 0))
        }
        FamilySpec::Theta { a, b, c, variant } => theta(a, b, c, variant),
        FamilySpec::Dumbbell { a1, a2, b } => dumbbell(a1, a2, b),
    }
}

/// A cycle on `a` variables with one extra degree-1 check hanging off each
/// listed variable (zero-based, no repeats). Every variable keeps two even
/// neighbours against at most one odd one, so the whole set is absorbing.
pub fn cycle_with_pendants(a: usize, pendants: &[usize]) -> Result<TannerGraph> {
    if a < 2 {
        return Err(invalid(format!("cycle needs a >= 2, got a = {a}")));
    }
    let mut edges = cycle_edges(a, 0, 0);
    for (i, &v) in pendants.iter().enumerate() {
        if v >= a {
            return Err(invalid(format!("pendant variable {v} outside cycle of {a}")));
        }
        edges.push((v, a + i));
    }
    TannerGraph::from_edges(a, a + pendants.len(), &edges)
}

fn invalid(msg: String) -> Error {
    Error::InvalidFamily(msg)
}

fn cycle_edges(a: usize, var_offset: usize, check_offset: usize) -> Vec<(usize, usize)> {
    (0..a)
        .flat_map(|i| {
            [
                (var_offset + i, check_offset + i),
                (var_offset + (i + 1) % a, check_offset + i),
            ]
        })
        .collect()
}

/// Incremental builder for alternating paths.
struct Builder {
    vars: usize,
    checks: usize,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn new(vars: usize, checks: usize) -> Self {
        Self {
            vars,
            checks,
            edges: Vec::new(),
        }
    }

    /// Walks `len` edges from variable `from` to variable `to`, creating
    /// interior nodes as needed. `len` must be even.
    fn var_path(&mut self, from: usize, to: usize, len: usize) {
        let mut cur = from;
        for step in 0..len / 2 {
            let c = self.checks;
            self.checks += 1;
            self.edges.push((cur, c));
            let next = if step + 1 == len / 2 {
                to
            } else {
                self.vars += 1;
                self.vars - 1
            };
            self.edges.push((next, c));
            cur = next;
        }
    }

    /// Walks `len` edges from check `from` to check `to`. `len` must be even.
    fn check_path(&mut self, from: usize, to: usize, len: usize) {
        let mut cur = from;
        for step in 0..len / 2 {
            let v = self.vars;
            self.vars += 1;
            self.edges.push((v, cur));
            let next = if step + 1 == len / 2 {
                to
            } else {
                self.checks += 1;
                self.checks - 1
            };
            self.edges.push((v, next));
            cur = next;
        }
    }

    fn build(self) -> Result<TannerGraph> {
        TannerGraph::from_edges(self.vars, self.checks, &self.edges)
    }
}

fn theta(a: usize, b: usize, c: usize, variant: ThetaVariant) -> Result<TannerGraph> {
    for (name, len) in [("a", a), ("b", b), ("c", c)] {
        if len < 2 || len % 2 != 0 {
            return Err(invalid(format!(
                "theta path {name} = {len}: paths between same-type junctions need an even length >= 2"
            )));
        }
    }
    // Junction u is node 0 and w is node 1 of the junction type.
    let mut builder = match variant {
        ThetaVariant::JunctionsAreVariables => Builder::new(2, 0),
        ThetaVariant::JunctionsAreChecks => Builder::new(0, 2),
    };
    for len in [a, b, c] {
        match variant {
            ThetaVariant::JunctionsAreVariables => builder.var_path(0, 1, len),
            ThetaVariant::JunctionsAreChecks => builder.check_path(0, 1, len),
        }
    }
    builder.build()
}

fn dumbbell(a1: usize, a2: usize, b: usize) -> Result<TannerGraph> {
    for (name, len) in [("a1", a1), ("a2", a2)] {
        if len < 4 || len % 2 != 0 {
            return Err(invalid(format!(
                "dumbbell cycle {name} = {len}: an alternating cycle needs an even length >= 4"
            )));
        }
    }
    if !b.is_multiple_of(2) {
        return Err(invalid(format!(
            "dumbbell path b = {b}: a path joining two variable nodes needs an even length"
        )));
    }
    let (n1, n2) = (a1 / 2, a2 / 2);
    let mut edges = cycle_edges(n1, 0, 0);
    // With b = 0 the second cycle's first variable is v1 itself.
    let shared = usize::from(b == 0);
    let second = |i: usize| if b == 0 && i == 0 { 0 } else { n1 + i - shared };
    edges.extend(cycle_edges(n2, 0, n1).into_iter().map(|(v, c)| (second(v), c)));
    let mut builder = Builder::new(n1 + n2 - shared, n1 + n2);
    builder.edges = edges;
    if b > 0 {
        builder.var_path(0, n1, b);
    }
    builder.build()
}
