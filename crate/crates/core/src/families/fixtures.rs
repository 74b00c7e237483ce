//! Literal edge lists of the named example graphs.
//!
//! Everything here is one-based `(variable, check)` so each list can be read
//! against the drawings node by node. The SHA-256 of the canonical edge text
//! is pinned in the tests; any transcription change shows up there.

use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::tanner::{TannerGraph, VarSubset};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FixtureName {
    Fig1,
    Fig2a,
    Fig3a,
    Fig5,
    Fig6,
    Ex7H,
}

impl FixtureName {
    pub const ALL: [FixtureName; 6] = [
        FixtureName::Fig1,
        FixtureName::Fig2a,
        FixtureName::Fig3a,
        FixtureName::Fig5,
        FixtureName::Fig6,
        FixtureName::Ex7H,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FixtureName::Fig1 => "fig1",
            FixtureName::Fig2a => "fig2a",
            FixtureName::Fig3a => "fig3a",
            FixtureName::Fig5 => "fig5",
            FixtureName::Fig6 => "fig6",
            FixtureName::Ex7H => "ex7_H",
        }
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FixtureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(FixtureName::Fig1),
            "fig2a" => Ok(FixtureName::Fig2a),
            "fig3a" => Ok(FixtureName::Fig3a),
            "fig5" => Ok(FixtureName::Fig5),
            "fig6" => Ok(FixtureName::Fig6),
            "ex7_H" | "ex7" => Ok(FixtureName::Ex7H),
            other => Err(Error::UnknownFixture(other.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: FixtureName,
    pub graph: TannerGraph,
    /// Named variable subsets drawn or discussed alongside the graph.
    pub subsets: Vec<(&'static str, VarSubset)>,
}

impl Fixture {
    pub fn subset(&self, name: &str) -> Option<&VarSubset> {
        self.subsets.iter().find(|(n, _)| *n == name).map(|(_, s)| s)
    }

    /// Hex SHA-256 of the canonical edge text (see [`edge_text`]).
    pub fn checksum(&self) -> String {
        graph_checksum(&self.graph)
    }
}

/// `"n k\n"` followed by one `"v c\n"` line per edge, one-based, in
/// check-major order.
pub fn edge_text(graph: &TannerGraph) -> String {
    let mut s = format!("{} {}\n", graph.num_vars(), graph.num_checks());
    for (v, c) in graph.edges() {
        s.push_str(&format!("{} {}\n", v + 1, c + 1));
    }
    s
}

pub fn graph_checksum(graph: &TannerGraph) -> String {
    let digest = Sha256::digest(edge_text(graph).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

const FIG1: &[(usize, usize)] = &[
    (1, 1), (2, 1), (1, 4), (4, 4), (4, 3), (3, 3),
    (2, 2), (3, 2), (1, 6), (3, 6), (2, 5), (4, 7),
];

const FIG2A: &[(usize, usize)] = &[
    (1, 1), (2, 1), (1, 4), (4, 4), (4, 3), (3, 3), (2, 2), (3, 2),
    (1, 5), (5, 5), (5, 6), (3, 6), (5, 7), (2, 8), (4, 9),
];

const FIG3A: &[(usize, usize)] = &[
    // Pendant checks.
    (1, 1), (2, 2), (3, 3), (4, 4), (5, 5),
    // Outer cycle.
    (1, 6), (2, 6), (2, 7), (3, 7), (3, 8), (4, 8), (4, 9), (5, 9), (5, 10), (1, 10),
    // Inner star.
    (1, 11), (3, 11), (1, 14), (4, 14), (2, 12), (4, 12), (2, 15), (5, 15), (5, 13), (3, 13),
];

const FIG5: &[(usize, usize)] = &[
    // Outer 10-cycle.
    (1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (4, 3), (4, 4), (5, 4), (5, 5), (6, 5),
    (6, 6), (7, 6), (7, 7), (8, 7), (8, 8), (9, 8), (9, 9), (10, 9), (10, 10), (1, 10),
    // Spokes from the odd variables.
    (1, 11), (1, 12), (3, 13), (3, 14), (5, 15), (5, 16), (7, 17), (7, 18), (9, 19), (9, 20),
    // Spokes from the even variables.
    (8, 11), (8, 16), (4, 12), (4, 17), (10, 13), (10, 18), (6, 14), (6, 19), (2, 15), (2, 20),
    // Chords.
    (1, 21), (6, 21), (3, 22), (8, 22), (5, 23), (10, 23), (2, 24), (7, 24), (4, 25), (9, 25),
];

const FIG6: &[(usize, usize)] = &[
    (1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (4, 3), (1, 4), (5, 4), (2, 5), (6, 5),
    (3, 6), (7, 6), (4, 7), (8, 7), (5, 8), (6, 8), (6, 9), (7, 9), (7, 10), (8, 10),
];

/// Row supports of the 14x11 classical parity-check matrix.
const EX7_ROWS: &[[usize; 2]] = &[
    [1, 2], [2, 3], [3, 4], [4, 5], [5, 6], [6, 7], [7, 8],
    [8, 9], [9, 10], [10, 11], [1, 11], [2, 10], [3, 6], [7, 9],
];

fn build(n: usize, k: usize, edges: &[(usize, usize)]) -> TannerGraph {
    let zero: Vec<_> = edges.iter().map(|&(v, c)| (v - 1, c - 1)).collect();
    TannerGraph::from_edges(n, k, &zero).expect("fixture edge list is well formed")
}

fn labels(n: usize, l: &[usize]) -> VarSubset {
    VarSubset::from_labels(n, l.iter().copied()).expect("fixture subset in range")
}

pub fn fixture(name: FixtureName) -> Fixture {
    let (graph, subsets) = match name {
        FixtureName::Fig1 => (build(4, 7, FIG1), vec![("T", labels(4, &[1, 2, 3, 4]))]),
        FixtureName::Fig2a => (
            build(5, 9, FIG2A),
            vec![("T", labels(5, &[1, 2, 3, 4, 5])), ("F", labels(5, &[2, 4, 5]))],
        ),
        FixtureName::Fig3a => (build(5, 15, FIG3A), vec![("T", labels(5, &[1, 2, 3, 4, 5]))]),
        FixtureName::Fig5 => (build(10, 25, FIG5), vec![("S", labels(10, &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]))]),
        FixtureName::Fig6 => (
            build(8, 10, FIG6),
            vec![
                ("S", labels(8, &[1, 2, 3, 4, 5, 6, 7, 8])),
                ("A1", labels(8, &[1, 2, 5, 6])),
                ("A2", labels(8, &[3, 4, 7, 8])),
            ],
        ),
        FixtureName::Ex7H => {
            let edges: Vec<(usize, usize)> = EX7_ROWS
                .iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().map(move |&v| (v, r + 1)))
                .collect();
            (
                build(11, 14, &edges),
                vec![
                    ("A", labels(11, &[1, 2, 10, 11])),
                    ("B", labels(11, &[3, 4, 5, 6])),
                    ("C", labels(11, &[7, 8, 9])),
                ],
            )
        }
    };
    Fixture {
        name,
        graph,
        subsets,
    }
}

pub fn fixture_by_name(name: &str) -> Result<Fixture> {
    Ok(fixture(name.parse()?))
}
