//! One function per subcommand, each turning a graph into record fields.

use std::sync::Arc;

use critlab_core::discharging::{
    bound_chain, bound_table, bound_theorem1, q_of, verify_claims, QBranch, MIN_DELTA,
};
use critlab_core::fans::{
    build_tashkinov_tree, build_vizing_fan, check_broom, check_p4, enumerate_kierstead_paths,
    enumerate_simple_brooms,
};
use critlab_core::lemmas::{check_pp, check_ppp, check_val, check_w22, check_w23, prune, PruneOptions};
use critlab_core::sampling::{colorings_without_edge, SampleSpec};
use critlab_core::solver::{chromatic_index_metered, is_edge_delta_critical};
use critlab_core::{ExactReal, Graph, SolveBudget, SolveError};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cli::LemmaName;
use crate::stream::{Outcome, Record, Status};

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("records serialize")
}

fn budget_outcome(nodes: u64) -> Outcome {
    let mut o = Outcome::error(format!("search budget exhausted after {nodes} nodes"), Status::BudgetExhausted);
    o.fields.insert("budget_exhausted".into(), true.into());
    o
}

/// `--q auto` is the Δ-dependent threshold and needs `Δ >= 56`.
pub fn resolve_q(arg: &str, delta: usize) -> Result<(ExactReal, Option<QBranch>), String> {
    if arg == "auto" {
        return q_of(delta)
            .map(|c| (c.q, Some(c.branch)))
            .map_err(|_| format!("--q auto needs Δ >= {MIN_DELTA}, graph has Δ = {delta}; pass an explicit --q"));
    }
    arg.parse::<ExactReal>().map(|q| (q, None)).map_err(|e| e.to_string())
}

pub const CHI_COLUMNS: &[&str] = &["n", "m", "delta", "chi_prime", "class", "nodes"];

pub fn chi(g: &Graph, budget: &SolveBudget) -> Outcome {
    let mut meter = budget.meter();
    match chromatic_index_metered(g, &mut meter) {
        Ok(chi) => {
            let mut r = Record::new();
            r.insert("n".into(), g.vertex_count().into());
            r.insert("m".into(), g.edge_count().into());
            r.insert("delta".into(), chi.delta.into());
            r.insert("chi_prime".into(), chi.value.into());
            r.insert("class".into(), if chi.is_class_one() { 1 } else { 2 }.into());
            r.insert("nodes".into(), meter.nodes().into());
            Outcome::ok(r)
        }
        Err(SolveError::BudgetExhausted { nodes }) => budget_outcome(nodes),
        Err(e) => Outcome::error(e, Status::InputError),
    }
}

pub const CRITICAL_COLUMNS: &[&str] = &["delta", "chi_prime", "critical", "nodes", "witness"];

pub fn critical(g: &Graph, budget: &SolveBudget, witness: bool) -> Outcome {
    match is_edge_delta_critical(g, budget) {
        Ok(v) => {
            let mut r = Record::new();
            r.insert("delta".into(), v.delta.into());
            r.insert("chi_prime".into(), v.chi_prime.into());
            r.insert("critical".into(), v.is_critical.into());
            r.insert("nodes".into(), v.nodes.into());
            if witness {
                r.insert("witness".into(), to_value(&v.witness));
            }
            Outcome::ok(r)
        }
        Err(e) => match e.source {
            SolveError::BudgetExhausted { nodes } => {
                let mut o = budget_outcome(nodes);
                o.fields.insert("edges_done".into(), e.edges_done.into());
                o.fields.insert("edges_total".into(), e.edges_total.into());
                o
            }
            other => Outcome::error(other, Status::InputError),
        },
    }
}

/// `Some(keep)` or `None` when the budget ran out.
pub fn filter(g: &Graph, budget: &SolveBudget, critical: bool, class_two: bool) -> Result<bool, String> {
    let v = is_edge_delta_critical(g, budget).map_err(|e| e.to_string())?;
    Ok((!critical || v.is_critical) && (!class_two || v.chi_prime > v.delta))
}

pub const LEMMA_COLUMNS: &[&str] = &["delta", "q", "holds", "lemmas"];

pub fn lemmas(g: &Graph, which: &[LemmaName], q_arg: &str) -> Outcome {
    let delta = g.max_degree();
    let needs_q = which.iter().any(|l| matches!(l, LemmaName::Ppp | LemmaName::Pp));
    let q = if needs_q {
        match resolve_q(q_arg, delta) {
            Ok((q, _)) => Some(q),
            Err(e) => return Outcome::error(e, Status::InputError),
        }
    } else {
        None
    };
    let verdicts: Vec<_> = which
        .iter()
        .map(|l| match l {
            LemmaName::Val => check_val(g),
            LemmaName::W22 => check_w22(g),
            LemmaName::W23 => check_w23(g),
            LemmaName::Ppp => check_ppp(g, q.as_ref().expect("resolved above")),
            LemmaName::Pp => check_pp(g, q.as_ref().expect("resolved above")),
        })
        .collect();
    let holds = verdicts.iter().all(|v| v.holds);
    let mut r = Record::new();
    r.insert("delta".into(), delta.into());
    r.insert("q".into(), q.map_or(Value::Null, |q| to_value(&q)));
    r.insert("holds".into(), holds.into());
    r.insert("lemmas".into(), to_value(&verdicts));
    Outcome { fields: r, status: if holds { Status::Ok } else { Status::Violation } }
}

pub const PRUNE_COLUMNS: &[&str] =
    &["delta", "reason", "stage", "verified", "budget_exhausted", "colorings_checked", "certificate"];

pub fn prune_graph(g: &Graph, options: &PruneOptions) -> Outcome {
    let g = Arc::new(g.clone());
    let report = match prune(&g, options) {
        Ok(r) => r,
        Err(e) => return Outcome::error(e, Status::InputError),
    };
    let mut r = Record::new();
    r.insert("delta".into(), g.max_degree().into());
    r.insert("reason".into(), report.certificate.as_ref().map(|c| c.reason()).into());
    r.insert("stage".into(), to_value(&report.stage));
    r.insert("verified".into(), report.certificate.as_ref().map(|c| c.verify(&g)).into());
    r.insert("budget_exhausted".into(), report.budget_exhausted.into());
    r.insert("colorings_checked".into(), report.colorings_checked.into());
    r.insert("certificate".into(), to_value(&report.certificate));
    let status = if report.certificate.is_some() {
        Status::Violation
    } else if report.budget_exhausted {
        Status::BudgetExhausted
    } else {
        Status::Ok
    };
    Outcome { fields: r, status }
}

pub const FAN_COLUMNS: &[&str] = &[
    "delta",
    "colorings",
    "fans",
    "fan_violations",
    "paths",
    "p4_violations",
    "brooms",
    "broom_violations",
    "tashkinov_trees",
    "tashkinov_elementary",
    "first_violation",
];

#[derive(Default, Serialize)]
struct FanCounts {
    colorings: usize,
    fans: usize,
    fan_violations: usize,
    paths: usize,
    p4_violations: usize,
    brooms: usize,
    broom_violations: usize,
    tashkinov_trees: usize,
    tashkinov_elementary: usize,
}

pub fn fans(g: &Graph, spec: &SampleSpec, budget: &SolveBudget, trace: bool) -> Outcome {
    let g = Arc::new(g.clone());
    let mut meter = budget.meter();
    let mut n = FanCounts::default();
    let mut first_violation = Value::Null;
    let mut traces = Vec::new();
    let note = |what: &str, detail: Value, first: &mut Value| {
        if first.is_null() {
            *first = json!({ "kind": what, "detail": detail });
        }
    };
    for (e, [x, y]) in g.edges() {
        let sample = match colorings_without_edge(&g, e, spec, &mut meter) {
            Ok(s) => s,
            Err(SolveError::BudgetExhausted { nodes }) => return budget_outcome(nodes),
            Err(err) => return Outcome::error(err, Status::InputError),
        };
        for (i, phi) in sample.colorings.iter().enumerate() {
            n.colorings += 1;
            for a in [x, y] {
                let fan = build_vizing_fan(phi, e, a).expect("e is the uncolored edge");
                n.fans += 1;
                if let Some(shared) = fan.elementary_violation(phi) {
                    n.fan_violations += 1;
                    note("fan", json!({ "fan": fan, "shared": shared, "coloring": phi.to_record() }), &mut first_violation);
                }
                for path in enumerate_kierstead_paths(phi, e, a, 3).expect("e is the uncolored edge") {
                    if path.len() != 4 {
                        continue;
                    }
                    n.paths += 1;
                    let verdicts = check_p4(phi, &path).expect("enumerated paths are valid");
                    if let Some(v) = verdicts.iter().find(|v| v.violated()) {
                        n.p4_violations += 1;
                        note("p4", json!({ "item": v.item, "path": path, "coloring": phi.to_record() }), &mut first_violation);
                    }
                }
                for broom in enumerate_simple_brooms(phi, e, a, g.vertex_count()).expect("e is the uncolored edge") {
                    if broom.len() < 3 {
                        continue;
                    }
                    let v = check_broom(phi, &broom).expect("enumerated brooms are valid");
                    if v.applies {
                        n.brooms += 1;
                    }
                    if v.violated() {
                        n.broom_violations += 1;
                        note("broom", json!({ "broom": broom, "coloring": phi.to_record() }), &mut first_violation);
                    }
                }
                let tree = build_tashkinov_tree(phi, e, a).expect("e is the uncolored edge");
                n.tashkinov_trees += 1;
                if tree.is_elementary(phi) {
                    n.tashkinov_elementary += 1;
                }
                if trace && i == 0 {
                    traces.push(json!({ "edge": e, "center": a, "fan": fan, "tashkinov_tree": tree }));
                }
            }
        }
    }
    let violations = n.fan_violations + n.p4_violations + n.broom_violations;
    let mut r = Record::new();
    r.insert("delta".into(), g.max_degree().into());
    if let Value::Object(counts) = to_value(&n) {
        r.extend(counts);
    }
    r.insert("first_violation".into(), first_violation);
    if trace {
        r.insert("trace".into(), Value::Array(traces));
    }
    Outcome { fields: r, status: if violations > 0 { Status::Violation } else { Status::Ok } }
}

pub const DISCHARGE_COLUMNS: &[&str] =
    &["delta", "q", "q_decimal", "branch", "conserved", "charge", "partition", "claims", "claims_hold"];

pub fn discharge(g: &Graph, q_arg: &str, c: i64, transfers: bool) -> Outcome {
    let delta = g.max_degree();
    let (q, branch) = match resolve_q(q_arg, delta) {
        Ok(v) => v,
        Err(e) => return Outcome::error(e, Status::InputError),
    };
    let report = match verify_claims(g, &q, c) {
        Ok(r) => r,
        Err(e) => return Outcome::error(e, Status::InputError),
    };
    let mut r = Record::new();
    r.insert("delta".into(), delta.into());
    r.insert("q".into(), to_value(&q));
    r.insert("q_decimal".into(), q.to_decimal(10).into());
    r.insert("branch".into(), to_value(&branch));
    r.insert("conserved".into(), report.ledger.is_conserved().into());
    r.insert("charge".into(), to_value(&report.ledger.charge));
    if transfers {
        r.insert("transfers".into(), to_value(&report.ledger.transfers));
    }
    let p = &report.partition;
    r.insert(
        "partition".into(),
        json!({ "c": c, "x1": p.x1, "nx1": p.nx1, "z1": p.z1, "z2": p.z2, "b1": p.b1, "b2": p.b2 }),
    );
    r.insert("claims".into(), to_value(&report.claims));
    r.insert("claims_hold".into(), report.all_hold().into());
    let status = if report.all_hold() { Status::Ok } else { Status::Violation };
    Outcome { fields: r, status }
}

pub fn parse_delta_range(text: &str) -> Result<(usize, usize), String> {
    let bad = || format!("expected `A..B` or a single Δ, got `{text}`");
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (text, text),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

pub const TABLE_NAMES: &[&str] = &[
    "fiorini",
    "haile",
    "sanders-zhao",
    "woodall-sqrt",
    "woodall-2/3(Δ+1)",
    "woodall-2Δ/3+1",
    "woodall-2/3(Δ+2)",
    "theorem-1",
    "conjecture",
];

pub struct BoundFlags {
    pub chain: bool,
    pub table: bool,
    pub c: ExactReal,
    pub n: Option<usize>,
    pub digits: u32,
}

pub fn bound_columns(flags: &BoundFlags) -> Vec<&'static str> {
    let mut cols = vec!["delta", "theorem1", "beats_two_thirds", "q", "branch"];
    if flags.chain {
        cols.extend(["route", "gap", "f", "f_prime", "f1", "f2", "chain", "chain_minus_theorem1", "relaxed"]);
    }
    if flags.table {
        cols.extend(TABLE_NAMES);
    }
    cols.push("error");
    cols
}

pub fn bound_row(delta: usize, flags: &BoundFlags) -> (Record, Status) {
    let digits = flags.digits;
    let dec = |v: &ExactReal| Value::String(v.to_decimal(digits));
    let opt = |v: &Option<ExactReal>| v.as_ref().map_or(Value::Null, dec);
    let mut r = Record::new();
    r.insert("delta".into(), delta.into());
    let mut status = Status::Ok;
    match bound_theorem1(delta) {
        Ok(b) => {
            let q = q_of(delta).expect("same range as the bound");
            r.insert("theorem1".into(), dec(&b.value));
            r.insert("beats_two_thirds".into(), b.beats_two_thirds.into());
            r.insert("q".into(), dec(&q.q));
            r.insert("branch".into(), to_value(&q.branch));
        }
        Err(e) if !flags.table => {
            r.insert("error".into(), e.to_string().into());
            status = Status::InputError;
        }
        Err(_) => {}
    }
    if flags.chain && delta >= MIN_DELTA {
        match bound_chain(delta, &flags.c) {
            Ok(ch) => {
                let line = bound_theorem1(delta).expect("Δ in range").value;
                r.insert("route".into(), to_value(&ch.route));
                r.insert("gap".into(), dec(&ch.gap));
                r.insert("f".into(), opt(&ch.f));
                r.insert("f_prime".into(), opt(&ch.f_prime));
                r.insert("f1".into(), opt(&ch.f1));
                r.insert("f2".into(), opt(&ch.f2));
                r.insert("chain".into(), dec(&ch.bound));
                r.insert("chain_minus_theorem1".into(), dec(&(&ch.bound - &line)));
                r.insert("relaxed".into(), opt(&ch.relaxed));
            }
            Err(e) => {
                r.insert("error".into(), e.to_string().into());
                status = Status::InputError;
            }
        }
    }
    if flags.table {
        match bound_table(delta, flags.n) {
            Ok(rows) => {
                for row in rows {
                    let v = match &row.value {
                        critlab_core::discharging::BoundValue::Exact(v) => dec(v),
                        critlab_core::discharging::BoundValue::Decimal(s) => Value::String(s.clone()),
                    };
                    r.insert(row.name.into(), v);
                }
            }
            Err(e) => {
                r.insert("error".into(), e.to_string().into());
                status = Status::InputError;
            }
        }
    }
    (r, status)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_ranges() {
        assert_eq!(parse_delta_range("56..70"), Ok((56, 70)));
        assert_eq!(parse_delta_range("56..=70"), Ok((56, 70)));
        assert_eq!(parse_delta_range("66"), Ok((66, 66)));
        assert!(parse_delta_range("70..56").is_err());
        assert!(parse_delta_range("x").is_err());
    }

    #[test]
    fn q_resolution() {
        assert!(resolve_q("auto", 10).is_err());
        let (q, branch) = resolve_q("auto", 65).unwrap();
        assert_eq!(q, ExactReal::from_ratio(187, 4));
        assert_eq!(branch, Some(QBranch::ThreeQuarters));
        assert_eq!(resolve_q("7/3", 4).unwrap().0, ExactReal::from_ratio(7, 3));
    }

    #[test]
    fn bound_row_at_66() {
        let flags = BoundFlags { chain: true, table: false, c: ExactReal::from_integer(18), n: None, digits: 5 };
        let (r, status) = bound_row(66, &flags);
        assert_eq!(status, Status::Ok);
        assert_eq!(r["theorem1"], "45.54248");
        assert_eq!(r["route"], "balanced");
        assert_eq!(r["f1"], "-0.04638");
    }
}
