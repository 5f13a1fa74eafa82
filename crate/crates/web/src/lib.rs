//! Browser entry points. Every function takes plain arguments and returns a
//! JSON string; failures come back as `{"error": "..."}` so the page never
//! has to catch exceptions.
//!
//! The same functions are plain Rust, which keeps them testable natively.

use std::collections::BTreeMap;
use std::sync::Arc;

use critlab_core::discharging::{bound_chain, bound_table, bound_theorem1, DEFAULT_C, MIN_DELTA};
use critlab_core::lemmas::{prune, PruneOptions};
use critlab_core::solver::{chromatic_index, is_edge_delta_critical};
use critlab_core::{ExactReal, Graph, SolveBudget};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Search nodes allowed per request, so a large input cannot hang the tab.
const NODE_LIMIT: u64 = 2_000_000;
/// The browser curve is capped to keep the response small.
const MAX_SPAN: usize = 2000;

fn respond<T: Serialize>(result: Result<T, String>) -> String {
    let value = match result {
        Ok(v) => serde_json::to_value(v).unwrap_or_else(|e| json!({ "error": e.to_string() })),
        Err(e) => json!({ "error": e }),
    };
    value.to_string()
}

#[derive(Serialize)]
struct CurvePoint {
    delta: usize,
    theorem1: String,
    chain: f64,
    /// Approximate value of every tabulated bound, keyed by name.
    bounds: BTreeMap<&'static str, f64>,
}

fn curve(from: usize, to: usize) -> Result<Vec<CurvePoint>, String> {
    if from < MIN_DELTA {
        return Err(format!("the bound needs Δ >= {MIN_DELTA}"));
    }
    if to < from || to - from > MAX_SPAN {
        return Err(format!("choose {from} <= to <= {}", from + MAX_SPAN));
    }
    let c = ExactReal::from_integer(DEFAULT_C);
    (from..=to)
        .map(|delta| {
            let line = bound_theorem1(delta).map_err(|e| e.to_string())?;
            let chain = bound_chain(delta, &c).map_err(|e| e.to_string())?;
            let bounds = bound_table(delta, None)
                .map_err(|e| e.to_string())?
                .into_iter()
                .filter(|row| row.approx.is_finite())
                .map(|row| (row.name, row.approx))
                .collect();
            Ok(CurvePoint { delta, theorem1: line.value.to_decimal(6), chain: chain.bound.to_f64(), bounds })
        })
        .collect()
}

pub fn bound_curve_json(from: usize, to: usize) -> String {
    respond(curve(from, to))
}

fn analyze(text: &str) -> Result<serde_json::Value, String> {
    let g = Graph::from_graph6(text.trim()).map_err(|e| e.to_string())?;
    let budget = SolveBudget::nodes(NODE_LIMIT);
    let chi = chromatic_index(&g, &budget).map_err(|e| e.to_string())?;
    let critical = is_edge_delta_critical(&g, &budget).map_err(|e| e.to_string())?;
    Ok(json!({
        "graph6": g.to_graph6(),
        "n": g.vertex_count(),
        "m": g.edge_count(),
        "delta": chi.delta,
        "average_degree": g.average_degree().to_string(),
        "chi_prime": chi.value,
        "class": if chi.value == chi.delta { 1 } else { 2 },
        "critical": critical.is_critical,
        "witness": critical.witness,
        "coloring": chi.coloring.to_record(),
    }))
}

pub fn analyze_graph6_json(text: &str) -> String {
    respond(analyze(text))
}

fn woodall(delta: usize, k: usize) -> Result<serde_json::Value, String> {
    let g = Arc::new(Graph::woodall_example(delta, k).map_err(|e| e.to_string())?);
    let options = PruneOptions { budget: SolveBudget::nodes(NODE_LIMIT), ..PruneOptions::default() };
    let report = prune(&g, &options).map_err(|e| e.to_string())?;
    let verified = report.certificate.as_ref().map(|c| c.verify(&g));
    Ok(json!({
        "graph6": g.to_graph6(),
        "n": g.vertex_count(),
        "m": g.edge_count(),
        "delta": g.max_degree(),
        "average_degree": g.average_degree().to_string(),
        "reason": report.certificate.as_ref().map(|c| c.reason()),
        "stage": report.stage,
        "verified": verified,
        "budget_exhausted": report.budget_exhausted,
        "colorings_checked": report.colorings_checked,
        "certificate": report.certificate,
    }))
}

pub fn woodall_prune_json(delta: usize, k: usize) -> String {
    respond(woodall(delta, k))
}

#[wasm_bindgen]
pub fn bound_curve(from: u32, to: u32) -> String {
    bound_curve_json(from as usize, to as usize)
}

#[wasm_bindgen]
pub fn analyze_graph6(text: &str) -> String {
    analyze_graph6_json(text)
}

#[wasm_bindgen]
pub fn woodall_prune(delta: u32, k: u32) -> String {
    woodall_prune_json(delta as usize, k as usize)
}
