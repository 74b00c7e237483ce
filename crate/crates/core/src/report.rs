//! Structured analysis reports.
//!
//! A report records what was run, on which input (with a SHA-256 of the
//! input), and the result. Serialization is deterministic: struct fields
//! keep declaration order and every map is sorted, so two runs on the same
//! input produce identical bytes. Bit vectors are written both as bit
//! strings (index 1 first) and as 1-based support lists.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::decoder::{ConvergenceReport, DecodeTrace, ErrorPattern, Outcome};
use crate::gf2::BitVector;
use crate::structures::FailureCensus;
use crate::tanner::format_nodes;

pub const TOOL_NAME: &str = "qldpc-absorb";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InputSource {
    Fixture,
    File,
    Family,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InputDescriptor {
    pub source: InputSource,
    /// Fixture name, file path or family description.
    pub name: String,
    /// Hex SHA-256 of the input: file bytes for files, the canonical edge
    /// list otherwise.
    pub sha256: String,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct AnalysisReport {
    pub tool: String,
    pub version: String,
    /// Arguments after the program name.
    pub command: Vec<String>,
    pub inputs: Vec<InputDescriptor>,
    pub parameters: BTreeMap<String, Value>,
    pub result: Value,
}

impl AnalysisReport {
    pub fn new(command: Vec<String>, inputs: Vec<InputDescriptor>, result: Value) -> Self {
        AnalysisReport {
            tool: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
            command,
            inputs,
            parameters: BTreeMap::new(),
            result,
        }
    }

    pub fn with_parameter(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(key.into(), to_value(value));
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values serialize");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

/// `{"bits": "0110", "support": ["c2", "c3"]}`.
pub fn bits_value(v: &BitVector, prefix: char) -> Value {
    json!({
        "bits": v.to_bit_string(),
        "support": labels(&v.support(), prefix),
    })
}

fn labels(indices: &[usize], prefix: char) -> Vec<String> {
    indices.iter().map(|i| format!("{prefix}{}", i + 1)).collect()
}

fn convergence_value(r: &ConvergenceReport) -> Value {
    json!({
        "vars_not_converged": labels(&r.vars_not_converged, 'v'),
        "checks_not_matched": labels(&r.checks_not_matched, 'c'),
    })
}

/// Decode result. `error` and `outcome` are present when the true error is
/// known; with `messages` every iteration carries its edge messages.
pub fn trace_payload(
    trace: &DecodeTrace,
    error: Option<&ErrorPattern>,
    outcome: Option<Outcome>,
    report: &ConvergenceReport,
    messages: bool,
) -> Value {
    let iterations: Vec<Value> = trace
        .iterations
        .iter()
        .map(|r| {
            let mut row = json!({
                "iteration": r.iteration,
                "syndrome_estimate": bits_value(&r.estimated_syndrome, 'c'),
                "error_estimate": bits_value(&r.estimated_error, 'v'),
            });
            if messages {
                row["var_to_check"] = json!(r.var_to_check.to_bit_string());
                row["check_to_var"] = json!(r.check_to_var.to_bit_string());
            }
            row
        })
        .collect();
    let window: Vec<Value> = trace
        .terminal_window()
        .iter()
        .map(|r| {
            json!({
                "iteration": r.iteration,
                "syndrome_estimate": bits_value(&r.estimated_syndrome, 'c'),
                "error_estimate": bits_value(&r.estimated_error, 'v'),
            })
        })
        .collect();
    let mut out = json!({
        "syndrome": bits_value(trace.syndrome.bits(), 'c'),
        "status": to_value(trace.status),
        "converged": trace.converged(),
        "final_estimate": bits_value(trace.final_estimate.bits(), 'v'),
        "terminal_window": window,
        "convergence": convergence_value(report),
        "iterations": iterations,
    });
    if let Some(e) = error {
        out["error"] = bits_value(e.bits(), 'v');
    }
    if let Some(o) = outcome {
        out["outcome"] = to_value(o);
    }
    out
}

/// Census result, with an explicit marker when nothing failed.
pub fn census_payload(census: &FailureCensus) -> Value {
    let sets: Vec<Value> = census
        .failure_inducing_sets
        .iter()
        .map(|f| {
            json!({
                "subset": format_nodes('v', f.subset.members()),
                "outcome": to_value(f.outcome),
                "status": to_value(f.status),
                "convergence": convergence_value(&f.report),
            })
        })
        .collect();
    let mut out = json!({
        "graph": census.graph_id,
        "tested_weight_bound": census.tested_weight_bound,
        "patterns_tested": census.patterns_tested,
        "critical_number": census.critical_number.to_string(),
        "strength": census.strength,
        "failure_inducing_sets": sets,
    });
    if census.failure_inducing_sets.is_empty() {
        out["marker"] = json!(format!(
            "no failure-inducing sets <= {}",
            census.tested_weight_bound
        ));
    }
    out
}

pub fn value_of(v: impl Serialize) -> Value {
    to_value(v)
}
