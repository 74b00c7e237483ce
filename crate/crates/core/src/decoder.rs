//! Syndrome-based Gallager-B decoding with full trace capture.
//!
//! Messages live on edges, indexed in the order of [`TannerGraph::edges`]
//! (check-major). Iteration 0 is the all-zero starting point; every later
//! iteration is one flooding round: all checks update, then all variables.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::tanner::{format_nodes, TannerGraph, VarSubset};

pub const DEFAULT_MAX_ITERS: usize = 100;

/// Error pattern over the variable nodes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ErrorPattern {
    bits: BitVector,
}

impl ErrorPattern {
    pub fn new(bits: BitVector) -> Self {
        Self { bits }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(BitVector::zeros(n))
    }

    pub fn from_support<I: IntoIterator<Item = usize>>(n: usize, support: I) -> Self {
        Self::new(BitVector::from_support(n, support))
    }

    pub fn from_subset(subset: &VarSubset) -> Self {
        Self::new(subset.indicator())
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        self.bits.support()
    }
}

/// Syndrome over the check nodes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Syndrome {
    bits: BitVector,
}

impl Syndrome {
    pub fn new(bits: BitVector) -> Self {
        Self { bits }
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// `σ = H e^T`.
pub fn compute_syndrome(graph: &TannerGraph, e: &ErrorPattern) -> Result<Syndrome> {
    if e.len() != graph.num_vars() {
        return Err(Error::DimensionMismatch {
            context: "error pattern length",
            expected: graph.num_vars(),
            found: e.len(),
        });
    }
    let mut s = BitVector::zeros(graph.num_checks());
    for (v, c) in graph.edges() {
        if e.bits.get(v) {
            s.flip(c);
        }
    }
    Ok(Syndrome::new(s))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IterationRecord {
    pub iteration: usize,
    /// Variable-to-check messages, one bit per edge.
    pub var_to_check: BitVector,
    /// Check-to-variable messages, one bit per edge.
    pub check_to_var: BitVector,
    pub estimated_error: BitVector,
    pub estimated_syndrome: BitVector,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecodeStatus {
    Matched { iteration: usize },
    /// The message state at `cycle_start` recurs at `cycle_start + period`.
    Oscillating { cycle_start: usize, period: usize },
    UnmatchedAtMaxIters { max_iters: usize },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecodeTrace {
    pub syndrome: Syndrome,
    pub iterations: Vec<IterationRecord>,
    pub status: DecodeStatus,
    pub final_estimate: ErrorPattern,
}

impl DecodeTrace {
    /// Records that repeat forever after decoding stops: the matching
    /// iteration, one full period of the detected cycle, or the last record.
    pub fn terminal_window(&self) -> &[IterationRecord] {
        match self.status {
            DecodeStatus::Matched { iteration } => &self.iterations[iteration..=iteration],
            DecodeStatus::Oscillating {
                cycle_start,
                period,
            } => &self.iterations[cycle_start + 1..=cycle_start + period],
            DecodeStatus::UnmatchedAtMaxIters { .. } => {
                let last = self.iterations.len() - 1;
                &self.iterations[last..]
            }
        }
    }

    pub fn matched(&self) -> bool {
        matches!(self.status, DecodeStatus::Matched { .. })
    }

    /// True when a state cycle was found and `ê`, `σ̂` are constant on it.
    pub fn converged(&self) -> bool {
        match self.status {
            DecodeStatus::Matched { .. } => true,
            DecodeStatus::Oscillating { .. } => {
                let w = self.terminal_window();
                w.iter().all(|r| {
                    r.estimated_error == w[0].estimated_error
                        && r.estimated_syndrome == w[0].estimated_syndrome
                })
            }
            DecodeStatus::UnmatchedAtMaxIters { .. } => false,
        }
    }

    /// One line per iteration plus a status line. With `messages`, each line
    /// also carries the raw edge messages.
    pub fn render(&self, messages: bool) -> String {
        let mut out = String::new();
        for r in &self.iterations {
            let _ = write!(
                out,
                "iter {:>3}  syn_hat={}  e_hat={}",
                r.iteration,
                r.estimated_syndrome,
                format_nodes('v', &r.estimated_error.support())
            );
            if messages {
                let _ = write!(out, "  v2c={}  c2v={}", r.var_to_check, r.check_to_var);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "status: {}", status_line(&self.status));
        out
    }
}

pub fn status_line(status: &DecodeStatus) -> String {
    match *status {
        DecodeStatus::Matched { iteration } => format!("matched at iteration {iteration}"),
        DecodeStatus::Oscillating {
            cycle_start,
            period,
        } => format!("oscillating from iteration {cycle_start} with period {period}"),
        DecodeStatus::UnmatchedAtMaxIters { max_iters } => {
            format!("unmatched after {max_iters} iterations")
        }
    }
}

/// Decoder bound to one graph. Edge bookkeeping is built once and reused
/// across many decodes.
#[derive(Clone, Debug)]
pub struct GallagerB<'g> {
    graph: &'g TannerGraph,
    max_iters: usize,
    edge_var: Vec<usize>,
    check_edges: Vec<Vec<usize>>,
    var_edges: Vec<Vec<usize>>,
}

impl<'g> GallagerB<'g> {
    pub fn new(graph: &'g TannerGraph) -> Self {
        let mut edge_var = Vec::with_capacity(graph.num_edges());
        let mut check_edges = vec![Vec::new(); graph.num_checks()];
        let mut var_edges = vec![Vec::new(); graph.num_vars()];
        for (e, (v, c)) in graph.edges().enumerate() {
            edge_var.push(v);
            check_edges[c].push(e);
            var_edges[v].push(e);
        }
        Self {
            graph,
            max_iters: DEFAULT_MAX_ITERS,
            edge_var,
            check_edges,
            var_edges,
        }
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    pub fn graph(&self) -> &'g TannerGraph {
        self.graph
    }

    pub fn decode(&self, syndrome: &Syndrome) -> Result<DecodeTrace> {
        let g = self.graph;
        if syndrome.len() != g.num_checks() {
            return Err(Error::DimensionMismatch {
                context: "syndrome length",
                expected: g.num_checks(),
                found: syndrome.len(),
            });
        }
        if self.max_iters == 0 {
            return Err(Error::DimensionMismatch {
                context: "max_iters must be at least",
                expected: 1,
                found: 0,
            });
        }
        let sigma = syndrome.bits();
        let ne = self.edge_var.len();
        let mut v2c = BitVector::zeros(ne);
        let mut records = vec![IterationRecord {
            iteration: 0,
            var_to_check: v2c.clone(),
            check_to_var: BitVector::zeros(ne),
            estimated_error: BitVector::zeros(g.num_vars()),
            estimated_syndrome: BitVector::zeros(g.num_checks()),
        }];
        let finish = |records: Vec<IterationRecord>, status| {
            let final_estimate = ErrorPattern::new(records.last().unwrap().estimated_error.clone());
            DecodeTrace {
                syndrome: syndrome.clone(),
                iterations: records,
                status,
                final_estimate,
            }
        };
        if sigma.is_zero() {
            return Ok(finish(records, DecodeStatus::Matched { iteration: 0 }));
        }
        let mut seen: HashMap<BitVector, usize> = HashMap::from([(v2c.clone(), 0)]);

        for it in 1..=self.max_iters {
            let mut c2v = BitVector::zeros(ne);
            for (c, edges) in self.check_edges.iter().enumerate() {
                let total = edges.iter().fold(sigma.get(c), |acc, &e| acc ^ v2c.get(e));
                for &e in edges {
                    c2v.set(e, total ^ v2c.get(e));
                }
            }

            let mut next = BitVector::zeros(ne);
            let mut e_hat = BitVector::zeros(g.num_vars());
            for (v, edges) in self.var_edges.iter().enumerate() {
                let ones = edges.iter().filter(|&&e| c2v.get(e)).count();
                let deg = edges.len();
                // Strict majority; ties resolve to 0.
                e_hat.set(v, 2 * ones > deg);
                for &e in edges {
                    let extrinsic = ones - usize::from(c2v.get(e));
                    next.set(e, 2 * extrinsic > deg - 1);
                }
            }

            let mut s_hat = BitVector::zeros(g.num_checks());
            for (c, edges) in self.check_edges.iter().enumerate() {
                s_hat.set(c, edges.iter().fold(false, |acc, &e| acc ^ next.get(e)));
            }

            v2c = next;
            let matched = s_hat == *sigma;
            records.push(IterationRecord {
                iteration: it,
                var_to_check: v2c.clone(),
                check_to_var: c2v,
                estimated_error: e_hat,
                estimated_syndrome: s_hat,
            });
            if matched {
                return Ok(finish(records, DecodeStatus::Matched { iteration: it }));
            }
            if let Some(&start) = seen.get(&v2c) {
                return Ok(finish(
                    records,
                    DecodeStatus::Oscillating {
                        cycle_start: start,
                        period: it - start,
                    },
                ));
            }
            seen.insert(v2c.clone(), it);
        }
        Ok(finish(
            records,
            DecodeStatus::UnmatchedAtMaxIters {
                max_iters: self.max_iters,
            },
        ))
    }
}

pub fn gallager_b_decode(
    graph: &TannerGraph,
    syndrome: &Syndrome,
    max_iters: usize,
) -> Result<DecodeTrace> {
    GallagerB::new(graph).with_max_iters(max_iters).decode(syndrome)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    ExactRecovery,
    DegenerateRecovery,
    LogicalError,
    SyndromeMismatchConverged,
    SyndromeMismatchOscillating,
}

impl Outcome {
    /// Decoding counts as successful for exact and degenerate recoveries.
    pub fn is_success(self) -> bool {
        matches!(self, Outcome::ExactRecovery | Outcome::DegenerateRecovery)
    }

    pub fn is_syndrome_mismatch(self) -> bool {
        matches!(
            self,
            Outcome::SyndromeMismatchConverged | Outcome::SyndromeMismatchOscillating
        )
    }
}

pub fn classify_outcome(
    e: &ErrorPattern,
    trace: &DecodeTrace,
    stabilizers: &BitMatrix,
) -> Result<Outcome> {
    if stabilizers.num_cols() != e.len() {
        return Err(Error::DimensionMismatch {
            context: "stabilizer columns",
            expected: e.len(),
            found: stabilizers.num_cols(),
        });
    }
    if trace.final_estimate.len() != e.len() {
        return Err(Error::DimensionMismatch {
            context: "error pattern length",
            expected: trace.final_estimate.len(),
            found: e.len(),
        });
    }
    if !trace.matched() {
        return Ok(if trace.converged() {
            Outcome::SyndromeMismatchConverged
        } else {
            Outcome::SyndromeMismatchOscillating
        });
    }
    let residual = e.bits().xor(trace.final_estimate.bits());
    Ok(if residual.is_zero() {
        Outcome::ExactRecovery
    } else if stabilizers.rowspace_contains(&residual)? {
        Outcome::DegenerateRecovery
    } else {
        Outcome::LogicalError
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct ConvergenceReport {
    pub vars_not_converged: Vec<usize>,
    pub checks_not_matched: Vec<usize>,
}

/// Variables whose estimate changes, and checks whose estimated syndrome
/// ever differs from the input, over the terminal window.
///
/// `e` is accepted for interface symmetry with [`classify_outcome`]; the
/// verdicts depend only on the trace and `σ`.
pub fn convergence_report(
    trace: &DecodeTrace,
    _e: &ErrorPattern,
    syndrome: &Syndrome,
) -> ConvergenceReport {
    let window = trace.terminal_window();
    let first = &window[0];
    let vars_not_converged = (0..first.estimated_error.len())
        .filter(|&v| {
            window
                .iter()
                .any(|r| r.estimated_error.get(v) != first.estimated_error.get(v))
        })
        .collect();
    let checks_not_matched = (0..syndrome.len())
        .filter(|&c| {
            window
                .iter()
                .any(|r| r.estimated_syndrome.get(c) != syndrome.bits().get(c))
        })
        .collect();
    ConvergenceReport {
        vars_not_converged,
        checks_not_matched,
    }
}

/// Syndrome, decode and classify in one step.
pub fn decode_error(
    decoder: &GallagerB<'_>,
    e: &ErrorPattern,
    stabilizers: &BitMatrix,
) -> Result<(DecodeTrace, Outcome)> {
    let s = compute_syndrome(decoder.graph(), e)?;
    let trace = decoder.decode(&s)?;
    let outcome = classify_outcome(e, &trace, stabilizers)?;
    Ok((trace, outcome))
}
