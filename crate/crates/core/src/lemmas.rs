//! Adjacency lemmas as executable predicates, and a pruner that turns their
//! failures into certificates of non-criticality.
//!
//! Every lemma here is stated for edge-`Δ`-critical graphs, so a violation on
//! any input proves that input is not edge-`Δ`-critical.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{
    p_params, p_params_q, sigma_int, sigma_q, woodall_sigma, ColorSet, ColoringError,
    ColoringRecord, PartialEdgeColoring, SharedMissing,
};
use crate::discharging::{claim4_pairs, claim4_y_sets, Claim4Report, DischargeError};
use crate::exact::ExactReal;
use crate::fans::{
    build_vizing_fan, check_broom, check_p4, enumerate_kierstead_paths, enumerate_simple_brooms, FanError, FanTree,
};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::sampling::{colorings_without_edge, SampleSpec};
use crate::solver::{SolveBudget, SolveError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("{x} and {y} are not adjacent")]
    NotAnEdge { x: VertexId, y: VertexId },
    #[error("not a Δ-coloring of G - xy: {0}")]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Discharge(#[from] DischargeError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    Val,
    W22,
    W23,
    Ppp,
    Pp,
    Lemfact1,
    Lemfact2,
    Lemfact3,
}

/// The quantifier instance at which a lemma fails, with both sides of the
/// failed inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaFailure {
    pub x: VertexId,
    pub y: Option<VertexId>,
    pub z: Option<VertexId>,
    pub have: ExactReal,
    pub need: ExactReal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaVerdict {
    pub lemma: LemmaId,
    pub holds: bool,
    /// Instances evaluated.
    pub checked: usize,
    /// Instances outside the lemma's hypotheses.
    pub not_applicable: usize,
    pub failure: Option<LemmaFailure>,
}

impl LemmaVerdict {
    fn new(lemma: LemmaId) -> Self {
        LemmaVerdict { lemma, holds: true, checked: 0, not_applicable: 0, failure: None }
    }

    fn record(&mut self, x: VertexId, y: Option<VertexId>, z: Option<VertexId>, have: ExactReal, need: ExactReal) {
        self.checked += 1;
        if have < need && self.failure.is_none() {
            self.holds = false;
            self.failure = Some(LemmaFailure { x, y, z, have, need });
        }
    }
}

fn int(v: i64) -> ExactReal {
    ExactReal::from_integer(v)
}

fn ordered_pairs(g: &Graph) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
    (0..g.vertex_count()).flat_map(move |x| g.neighbors(x).map(move |y| (x, y)))
}

/// `(σ_Δ(x, y), Δ - d(x) + 1)`
pub fn val_instance(g: &Graph, x: VertexId, y: VertexId) -> (i64, i64) {
    let delta = g.max_degree() as i64;
    (sigma_int(g, x, y, delta) as i64, delta - g.degree(x) as i64 + 1)
}

/// Vizing's adjacency lemma over every ordered adjacent pair.
pub fn check_val(g: &Graph) -> LemmaVerdict {
    let mut v = LemmaVerdict::new(LemmaId::Val);
    for (x, y) in ordered_pairs(g) {
        let (have, need) = val_instance(g, x, y);
        v.record(x, Some(y), None, int(have), int(need));
    }
    v
}

/// Count of `z ∈ N(x) - y` with `σ(x, z) >= 2Δ - d(x) - σ(x, y)`, against
/// `Δ - σ(x, y)`.
pub fn w22_instance(g: &Graph, x: VertexId, y: VertexId) -> (i64, i64) {
    let delta = g.max_degree() as i64;
    let s_xy = woodall_sigma(g, x, y) as i64;
    let bar = 2 * delta - g.degree(x) as i64 - s_xy;
    let count = g
        .neighbors(x)
        .filter(|&z| z != y && woodall_sigma(g, x, z) as i64 >= bar)
        .count();
    (count as i64, delta - s_xy)
}

pub fn check_w22(g: &Graph) -> LemmaVerdict {
    let mut v = LemmaVerdict::new(LemmaId::W22);
    for (x, y) in ordered_pairs(g) {
        let (have, need) = w22_instance(g, x, y);
        v.record(x, Some(y), None, int(have), int(need));
    }
    v
}

/// Count of neighbors `y` with `σ(x, y) >= Δ - p(x) - 1`, against
/// `d(x) - p(x) - 1`. `None` for isolated `x`.
pub fn w23_instance(g: &Graph, x: VertexId) -> Option<(i64, i64)> {
    let (_, p) = p_params(g, x)?;
    let delta = g.max_degree() as i64;
    let count = g
        .neighbors(x)
        .filter(|&y| woodall_sigma(g, x, y) as i64 >= delta - p - 1)
        .count();
    Some((count as i64, g.degree(x) as i64 - p - 1))
}

pub fn check_w23(g: &Graph) -> LemmaVerdict {
    let mut v = LemmaVerdict::new(LemmaId::W23);
    for x in 0..g.vertex_count() {
        match w23_instance(g, x) {
            Some((have, need)) => v.record(x, None, None, int(have), int(need)),
            None => v.not_applicable += 1,
        }
    }
    v
}

/// `Δ/2 < q <= Δ - d(x)/2 - 2`
pub fn in_q_window(g: &Graph, x: VertexId, q: &ExactReal) -> bool {
    let delta = g.max_degree() as i64;
    *q > ExactReal::from_ratio(delta, 2) && *q <= ExactReal::from_ratio(2 * delta - g.degree(x) as i64 - 4, 2)
}

/// Count of `z ∈ N(x) - y` with `σ_q(x, z) >= 2Δ - d(x) - σ_q(x, y) - 4`,
/// against `Δ - σ_q(x, y) - 2`; `None` outside the `q` window.
pub fn ppp_instance(g: &Graph, x: VertexId, y: VertexId, q: &ExactReal) -> Option<(i64, i64)> {
    if !in_q_window(g, x, q) {
        return None;
    }
    let delta = g.max_degree() as i64;
    let s_xy = sigma_q(g, x, y, q) as i64;
    let bar = 2 * delta - g.degree(x) as i64 - s_xy - 4;
    let count = g
        .neighbors(x)
        .filter(|&z| z != y && sigma_q(g, x, z, q) as i64 >= bar)
        .count();
    Some((count as i64, delta - s_xy - 2))
}

pub fn check_ppp(g: &Graph, q: &ExactReal) -> LemmaVerdict {
    let mut v = LemmaVerdict::new(LemmaId::Ppp);
    for (x, y) in ordered_pairs(g) {
        match ppp_instance(g, x, y, q) {
            Some((have, need)) => v.record(x, Some(y), None, int(have), int(need)),
            None => v.not_applicable += 1,
        }
    }
    v
}

/// Count of neighbors `y` with `σ_q(x, y) >= Δ - p(x, q) - 5`, against
/// `d(x) - p(x, q) - 3`; `None` outside the window or for isolated `x`.
pub fn pp_instance(g: &Graph, x: VertexId, q: &ExactReal) -> Option<(i64, i64)> {
    if !in_q_window(g, x, q) {
        return None;
    }
    let (_, p) = p_params_q(g, x, q)?;
    let delta = g.max_degree() as i64;
    let count = g
        .neighbors(x)
        .filter(|&y| sigma_q(g, x, y, q) as i64 >= delta - p - 5)
        .count();
    Some((count as i64, g.degree(x) as i64 - p - 3))
}

pub fn check_pp(g: &Graph, q: &ExactReal) -> LemmaVerdict {
    let mut v = LemmaVerdict::new(LemmaId::Pp);
    for x in 0..g.vertex_count() {
        match pp_instance(g, x, q) {
            Some((have, need)) => v.record(x, None, None, int(have), int(need)),
            None => v.not_applicable += 1,
        }
    }
    v
}

/// Checks that `phi` is a proper `Δ(G)`-coloring of `G - xy`.
pub fn require_coloring_without(phi: &PartialEdgeColoring, x: VertexId, y: VertexId) -> Result<EdgeId, LemmaError> {
    let g = phi.graph();
    let e = g.edge_between(x, y).ok_or(LemmaError::NotAnEdge { x, y })?;
    if phi.palette() != g.max_degree() {
        return Err(ColoringError::Precondition(format!(
            "palette {} differs from Δ = {}",
            phi.palette(),
            g.max_degree()
        ))
        .into());
    }
    if phi.uncolored_edges() != vec![e] {
        return Err(ColoringError::Precondition(format!("{x}{y} must be the only uncolored edge")).into());
    }
    phi.validate()?;
    Ok(e)
}

/// `Z = {z ∈ N(x) - y : d(z) > q, φ(xz) ∈ φ̄(y)}`
pub fn lemfact_z(phi: &PartialEdgeColoring, x: VertexId, y: VertexId, q: &ExactReal) -> Vec<VertexId> {
    let g = phi.graph();
    let missing_y = phi.missing_colors(y);
    g.incident(x)
        .iter()
        .filter(|&&(z, e)| {
            z != y && ExactReal::from(g.degree(z)) > *q && phi.color(e).is_some_and(|c| missing_y.contains(c))
        })
        .map(|&(z, _)| z)
        .collect()
}

/// The three inequalities about `Z` for `φ ∈ C^Δ(G - xy)`, when
/// `d(x) < q <= Δ - 1`; outside that range all three are not applicable.
pub fn check_lemfact(
    phi: &PartialEdgeColoring,
    x: VertexId,
    y: VertexId,
    q: &ExactReal,
) -> Result<[LemmaVerdict; 3], LemmaError> {
    require_coloring_without(phi, x, y)?;
    let g = phi.graph();
    let mut out = [
        LemmaVerdict::new(LemmaId::Lemfact1),
        LemmaVerdict::new(LemmaId::Lemfact2),
        LemmaVerdict::new(LemmaId::Lemfact3),
    ];
    let delta = g.max_degree() as i64;
    let (dx, dy) = (g.degree(x) as i64, g.degree(y) as i64);
    if !(ExactReal::from(dx as usize) < *q && *q <= int(delta - 1)) {
        for v in &mut out {
            v.not_applicable += 1;
        }
        return Ok(out);
    }
    let slack = int(delta) - q;
    let z_set = lemfact_z(phi, x, y, q);

    let floor1 = ExactReal::from_rational((int(dx + dy - delta - 2) / &slack).floor().into());
    let need1 = int(delta - dy + 1) - floor1;
    out[0].record(x, Some(y), None, ExactReal::from(z_set.len()), need1);

    let have2 = z_set
        .iter()
        .fold(ExactReal::zero(), |acc, &z| acc + (ExactReal::from(g.degree(z)) - q));
    let need2 = int(delta - dy + 1) * &slack - int(dx + dy - delta - 2);
    out[1].record(x, Some(y), None, have2, need2);

    for &z in &z_set {
        let dz = g.degree(z) as i64;
        let floor3 = ExactReal::from_rational((int(dx + dy + dz - 2 * delta - 2) / &slack).floor().into());
        let need3 = int(2 * delta - dx - dy + 1) - floor3;
        out[2].record(x, Some(y), Some(z), ExactReal::from(sigma_q(g, x, z, q)), need3);
    }
    if z_set.is_empty() {
        out[2].not_applicable += 1;
    }
    Ok(out)
}

/// Why a graph cannot be edge-`Δ`-critical.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Certificate {
    Disconnected,
    /// An edge with `d(x) + d(y) < Δ + 2`.
    DegreeSum { x: VertexId, y: VertexId, sum: usize, need: usize },
    Val(LemmaFailure),
    W22(LemmaFailure),
    W23(LemmaFailure),
    /// `G - xy` has no `Δ`-coloring, so `xy` is not critical.
    NonCriticalEdge { x: VertexId, y: VertexId },
    /// A Vizing fan whose vertex set is not elementary.
    FanViolation { fan: FanTree, shared: SharedMissing, coloring: ColoringRecord },
    P4Violation {
        item: u8,
        path: FanTree,
        shared: Option<SharedMissing>,
        overlap: Option<ColorSet>,
        coloring: ColoringRecord,
    },
    BroomViolation { broom: FanTree, shared: SharedMissing, coloring: ColoringRecord },
    LemfactViolation { item: u8, q: ExactReal, failure: LemmaFailure, coloring: ColoringRecord },
    /// The `Y²` count falls short; the argument behind it uses the
    /// four-vertex Kierstead path conclusion together with Kempe swaps.
    Claim4Violation { q: ExactReal, report: Claim4Report, coloring: ColoringRecord },
}

impl Certificate {
    pub fn reason(&self) -> &'static str {
        match self {
            Certificate::Disconnected => "disconnected",
            Certificate::DegreeSum { .. } => "degree-sum",
            Certificate::Val(_) => "val",
            Certificate::W22(_) => "w22",
            Certificate::W23(_) => "w23",
            Certificate::NonCriticalEdge { .. } => "non-critical-edge",
            Certificate::FanViolation { .. } => "fan-violation",
            Certificate::P4Violation { .. } => "p4-violation",
            Certificate::BroomViolation { .. } => "broom-violation",
            Certificate::LemfactViolation { .. } => "lemfact-violation",
            Certificate::Claim4Violation { .. } => "claim4-violation",
        }
    }

    pub fn is_coloring_dependent(&self) -> bool {
        matches!(
            self,
            Certificate::FanViolation { .. }
                | Certificate::P4Violation { .. }
                | Certificate::BroomViolation { .. }
                | Certificate::LemfactViolation { .. }
                | Certificate::Claim4Violation { .. }
        )
    }

    /// Re-checks the certificate against `g` from scratch. Solver-based
    /// certificates (`NonCriticalEdge`) are re-solved.
    pub fn verify(&self, g: &Arc<Graph>) -> bool {
        let rebuild = |rec: &ColoringRecord, x: VertexId, y: VertexId| -> Option<PartialEdgeColoring> {
            let phi = PartialEdgeColoring::from_record(g.clone(), rec).ok()?;
            require_coloring_without(&phi, x, y).ok()?;
            Some(phi)
        };
        let lemma_fails = |f: &LemmaFailure, have: i64, need: i64| {
            have < need && f.have == int(have) && f.need == int(need)
        };
        match self {
            Certificate::Disconnected => !g.is_connected(),
            Certificate::DegreeSum { x, y, .. } => {
                g.is_adjacent(*x, *y) && g.degree(*x) + g.degree(*y) < g.max_degree() + 2
            }
            Certificate::Val(f) => f.y.is_some_and(|y| {
                g.is_adjacent(f.x, y) && {
                    let (h, n) = val_instance(g, f.x, y);
                    lemma_fails(f, h, n)
                }
            }),
            Certificate::W22(f) => f.y.is_some_and(|y| {
                g.is_adjacent(f.x, y) && {
                    let (h, n) = w22_instance(g, f.x, y);
                    lemma_fails(f, h, n)
                }
            }),
            Certificate::W23(f) => w23_instance(g, f.x).is_some_and(|(h, n)| lemma_fails(f, h, n)),
            Certificate::NonCriticalEdge { x, y } => g.edge_between(*x, *y).is_some_and(|e| {
                let h = g.delete_edge(e).expect("live edge");
                matches!(
                    crate::solver::is_k_edge_colorable(&h, g.max_degree(), &SolveBudget::unlimited()),
                    Ok(crate::solver::Decision::No)
                )
            }),
            Certificate::FanViolation { fan, coloring, .. } => {
                let (x, y) = (fan.vertices[0], fan.vertices[1]);
                rebuild(coloring, x, y).is_some_and(|phi| fan.validate(&phi).is_ok() && !fan.is_elementary(&phi))
            }
            Certificate::P4Violation { item, path, coloring, .. } => {
                let (x, y) = (path.vertices[0], path.vertices[1]);
                rebuild(coloring, x, y).is_some_and(|phi| {
                    check_p4(&phi, path).is_ok_and(|v| v.get(*item as usize - 1).is_some_and(|v| v.violated()))
                })
            }
            Certificate::BroomViolation { broom, coloring, .. } => {
                let (x, y) = (broom.vertices[0], broom.vertices[1]);
                rebuild(coloring, x, y).is_some_and(|phi| check_broom(&phi, broom).is_ok_and(|v| v.violated()))
            }
            Certificate::LemfactViolation { item, q, failure, coloring } => {
                let Some(y) = failure.y else { return false };
                rebuild(coloring, failure.x, y).is_some_and(|phi| {
                    check_lemfact(&phi, failure.x, y, q)
                        .is_ok_and(|v| v.get(*item as usize - 1).is_some_and(|v| !v.holds))
                })
            }
            Certificate::Claim4Violation { q, report, coloring } => {
                g.max_degree() >= 6
                    && rebuild(coloring, report.x, report.y).is_some_and(|phi| {
                        claim4_y_sets(&phi, report.x, report.y, q).is_ok_and(|r| !r.holds && r == *report)
                    })
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct PruneOptions {
    pub samples: SampleSpec,
    pub budget: SolveBudget,
    /// Run the `Z`-set probe for every integer `q` in range.
    pub lemfact: bool,
    /// Threshold `q` for the `Y²` probe; the probe runs only when set and
    /// `Δ >= 6`.
    pub claim4_q: Option<ExactReal>,
}

impl Default for PruneOptions {
    fn default() -> Self {
        PruneOptions { samples: SampleSpec::default(), budget: SolveBudget::unlimited(), lemfact: true, claim4_q: None }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PruneStage {
    Structure,
    Val,
    Woodall,
    Colorings,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PruneReport {
    pub certificate: Option<Certificate>,
    pub stage: Option<PruneStage>,
    /// The solver ran out of budget before all probes finished.
    pub budget_exhausted: bool,
    pub colorings_checked: usize,
}

impl PruneReport {
    fn found(stage: PruneStage, certificate: Certificate, colorings_checked: usize) -> Self {
        PruneReport { certificate: Some(certificate), stage: Some(stage), budget_exhausted: false, colorings_checked }
    }
}

/// All coloring-dependent probes for one `φ ∈ C^Δ(G - xy)`, both
/// orientations of `xy`. Returns the first violation.
pub fn probe_coloring(
    phi: &PartialEdgeColoring,
    x: VertexId,
    y: VertexId,
    options: &PruneOptions,
) -> Result<Option<Certificate>, LemmaError> {
    let e = require_coloring_without(phi, x, y)?;
    let g = phi.graph();
    let delta = g.max_degree();
    for (a, b) in [(x, y), (y, x)] {
        let fan = build_vizing_fan(phi, e, a)?;
        if let Some(shared) = fan.elementary_violation(phi) {
            return Ok(Some(Certificate::FanViolation { fan, shared, coloring: phi.to_record() }));
        }
        for path in enumerate_kierstead_paths(phi, e, a, 3)? {
            if path.len() != 4 {
                continue;
            }
            let verdicts = check_p4(phi, &path)?;
            if let Some(v) = verdicts.iter().find(|v| v.violated()) {
                return Ok(Some(Certificate::P4Violation {
                    item: v.item,
                    shared: v.shared,
                    overlap: v.overlap,
                    path,
                    coloring: phi.to_record(),
                }));
            }
        }
        for broom in enumerate_simple_brooms(phi, e, a, g.vertex_count())? {
            if broom.len() < 3 {
                continue;
            }
            let v = check_broom(phi, &broom)?;
            if v.violated() {
                let shared = v.shared.expect("violations carry a witness");
                return Ok(Some(Certificate::BroomViolation { broom, shared, coloring: phi.to_record() }));
            }
        }
        if options.lemfact {
            for q in g.degree(a) + 1..delta {
                let q = ExactReal::from(q);
                let verdicts = check_lemfact(phi, a, b, &q)?;
                if let Some((i, v)) = verdicts.iter().enumerate().find(|(_, v)| !v.holds) {
                    return Ok(Some(Certificate::LemfactViolation {
                        item: i as u8 + 1,
                        q,
                        failure: v.failure.clone().expect("failing verdicts carry a failure"),
                        coloring: phi.to_record(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn structure_stage(g: &Graph) -> Option<Certificate> {
    if !g.is_connected() {
        return Some(Certificate::Disconnected);
    }
    let delta = g.max_degree();
    for (_, [x, y]) in g.edges() {
        let sum = g.degree(x) + g.degree(y);
        if sum < delta + 2 {
            return Some(Certificate::DegreeSum { x, y, sum, need: delta + 2 });
        }
    }
    None
}

/// Cheap-to-expensive search for a non-criticality certificate. `None`
/// means every probe passed, which proves nothing.
pub fn prune(g: &Arc<Graph>, options: &PruneOptions) -> Result<PruneReport, LemmaError> {
    if let Some(c) = structure_stage(g) {
        return Ok(PruneReport::found(PruneStage::Structure, c, 0));
    }
    let val = check_val(g);
    if let Some(f) = val.failure {
        return Ok(PruneReport::found(PruneStage::Val, Certificate::Val(f), 0));
    }
    let w22 = check_w22(g);
    if let Some(f) = w22.failure {
        return Ok(PruneReport::found(PruneStage::Woodall, Certificate::W22(f), 0));
    }
    let w23 = check_w23(g);
    if let Some(f) = w23.failure {
        return Ok(PruneReport::found(PruneStage::Woodall, Certificate::W23(f), 0));
    }

    let mut meter = options.budget.meter();
    let mut checked = 0;
    let exhausted = |checked| PruneReport {
        certificate: None,
        stage: None,
        budget_exhausted: true,
        colorings_checked: checked,
    };
    for (e, [x, y]) in g.edges() {
        let sample = match colorings_without_edge(g, e, &options.samples, &mut meter) {
            Ok(s) => s,
            Err(SolveError::BudgetExhausted { .. }) => return Ok(exhausted(checked)),
            Err(err) => return Err(ColoringError::Precondition(err.to_string()).into()),
        };
        if sample.colorings.is_empty() {
            return Ok(PruneReport::found(PruneStage::Colorings, Certificate::NonCriticalEdge { x, y }, checked));
        }
        for phi in &sample.colorings {
            checked += 1;
            if let Some(c) = probe_coloring(phi, x, y, options)? {
                return Ok(PruneReport::found(PruneStage::Colorings, c, checked));
            }
        }
    }

    if let Some(q) = options.claim4_q.as_ref().filter(|_| g.max_degree() >= 6) {
        for (x, y) in claim4_pairs(g, q) {
            let e = g.edge_between(x, y).expect("pairs are edges");
            let sample = match colorings_without_edge(g, e, &options.samples, &mut meter) {
                Ok(s) => s,
                Err(SolveError::BudgetExhausted { .. }) => return Ok(exhausted(checked)),
                Err(err) => return Err(ColoringError::Precondition(err.to_string()).into()),
            };
            for phi in &sample.colorings {
                checked += 1;
                let report = claim4_y_sets(phi, x, y, q)?;
                if !report.holds {
                    return Ok(PruneReport::found(
                        PruneStage::Colorings,
                        Certificate::Claim4Violation { q: q.clone(), report, coloring: phi.to_record() },
                        checked,
                    ));
                }
            }
        }
    }
    Ok(PruneReport { certificate: None, stage: None, budget_exhausted: false, colorings_checked: checked })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn val_examples() {
        assert!(check_val(&Graph::complete(3).unwrap()).holds);
        assert!(check_val(&Graph::cycle(5).unwrap()).holds);
        let v = check_val(&Graph::star(3));
        assert!(!v.holds);
        let f = v.failure.unwrap();
        assert_eq!((f.x, f.y), (0, Some(1)));
        assert_eq!((f.have, f.need), (int(0), int(1)));
    }

    #[test]
    fn woodall_lemmas_on_cycles() {
        for n in [3, 5, 7, 9] {
            let c = Graph::cycle(n).unwrap();
            assert!(check_w22(&c).holds, "C{n}");
            assert!(check_w23(&c).holds, "C{n}");
        }
    }

    #[test]
    fn woodall_example_passes_cheap_lemmas() {
        let g = Graph::woodall_example(6, 3).unwrap();
        assert!(check_val(&g).holds);
        assert!(check_w22(&g).holds);
        assert!(check_w23(&g).holds);
    }

    #[test]
    fn empty_q_window() {
        let g = Graph::cycle(5).unwrap();
        // Δ/2 = 1 < q but Δ - d/2 - 2 = -1
        let v = check_ppp(&g, &int(2));
        assert!(v.holds);
        assert_eq!(v.checked, 0);
        assert_eq!(v.not_applicable, 10);
        assert!(check_pp(&g, &int(2)).holds);
    }

    #[test]
    fn lemfact_boundary() {
        // C5 minus an edge: d(x) = 2 = Δ, so no q fits d(x) < q <= Δ - 1
        let g = Arc::new(Graph::cycle(5).unwrap());
        let e = g.edge_between(0, 1).unwrap();
        let h = g.delete_edge(e).unwrap();
        let found = crate::solver::search_coloring(
            &h,
            2,
            &crate::solver::SearchOptions::default(),
            &mut SolveBudget::unlimited().meter(),
        )
        .unwrap()
        .unwrap();
        let phi = PartialEdgeColoring::from_assignment(g.clone(), 2, found).unwrap();
        let v = check_lemfact(&phi, 0, 1, &int(1)).unwrap();
        assert!(v.iter().all(|v| v.holds && v.not_applicable == 1));
    }

    #[test]
    fn prune_examples() {
        let opts = PruneOptions::default();
        let star = Arc::new(Graph::star(3));
        let r = prune(&star, &opts).unwrap();
        assert!(matches!(r.certificate, Some(Certificate::DegreeSum { .. })));
        assert!(r.certificate.unwrap().verify(&star));
        let c5 = Arc::new(Graph::cycle(5).unwrap());
        assert_eq!(prune(&c5, &opts).unwrap().certificate, None);
    }
}
