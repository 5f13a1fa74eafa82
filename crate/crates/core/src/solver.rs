//! Exact chromatic-index decision and edge-criticality tests.
//!
//! The search colors the most constrained edge first, tries colors in
//! ascending order, and treats all colors not yet used anywhere as
//! interchangeable (only the smallest one is tried). The star of a maximum
//! degree vertex is pinned to `1..d` up front. At a dead end a single Kempe
//! flip is attempted to free a color for the stuck edge before backtracking;
//! this only ever adds branches, so a "no" still means the whole tree was
//! exhausted.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::coloring::{kempe_chain, Color, ColoringRecord, PartialEdgeColoring};
use crate::graph::{EdgeId, Graph, VertexId};

/// Largest palette the exhaustive search handles (one `u64` mask per vertex).
pub const MAX_SEARCH_COLORS: usize = 64;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveBudget {
    pub node_limit: Option<u64>,
    pub wall_limit: Option<Duration>,
}

impl SolveBudget {
    pub fn unlimited() -> Self {
        SolveBudget::default()
    }

    pub fn nodes(limit: u64) -> Self {
        SolveBudget { node_limit: Some(limit), wall_limit: None }
    }

    pub fn meter(&self) -> Meter {
        Meter {
            node_limit: self.node_limit,
            deadline: self.wall_limit.map(|d| (Instant::now(), d)),
            nodes: 0,
        }
    }
}

/// Running account of search effort against a [`SolveBudget`]. One meter can
/// be threaded through several solves so a budget covers a whole job.
#[derive(Debug)]
pub struct Meter {
    node_limit: Option<u64>,
    deadline: Option<(Instant, Duration)>,
    nodes: u64,
}

impl Meter {
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.node_limit.is_some_and(|l| self.nodes > l) {
            return false;
        }
        if self.nodes.is_multiple_of(1024) {
            if let Some((start, limit)) = self.deadline {
                if start.elapsed() > limit {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("unsupported instance: {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decision {
    /// A proper total coloring with the requested palette.
    Yes(PartialEdgeColoring),
    /// Exhaustive search found no coloring.
    No,
    BudgetExhausted,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }
}

/// Search knobs; the defaults are what every public entry point uses.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub kempe_repair: bool,
    pub pin_star: bool,
    /// Shuffle color trial order (for sampling diverse colorings).
    pub shuffle_seed: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { kempe_repair: true, pin_star: true, shuffle_seed: None }
    }
}

const NONE: u32 = u32::MAX;

enum Flow {
    Found,
    NotFound,
    Aborted,
}

struct Search<'m> {
    k: usize,
    ends: Vec<[usize; 2]>,
    color: Vec<u8>,
    used: Vec<u64>,
    at: Vec<u32>,
    count: Vec<u32>,
    uncolored: usize,
    full: u64,
    repair: bool,
    rng: Option<rand_chacha::ChaCha8Rng>,
    meter: &'m mut Meter,
}

impl<'m> Search<'m> {
    fn new(g: &Graph, k: usize, meter: &'m mut Meter) -> (Self, Vec<EdgeId>) {
        let ids: Vec<EdgeId> = g.edge_ids().collect();
        let ends = ids.iter().map(|&e| g.endpoints(e).unwrap()).collect();
        let n = g.vertex_count();
        let search = Search {
            k,
            ends,
            color: vec![0; ids.len()],
            used: vec![0; n],
            at: vec![NONE; n * (k + 1)],
            count: vec![0; k + 1],
            uncolored: ids.len(),
            full: if k == 64 { u64::MAX } else { (1u64 << k) - 1 },
            repair: false,
            rng: None,
            meter,
        };
        (search, ids)
    }

    fn assign(&mut self, e: usize, c: u8) {
        debug_assert_eq!(self.color[e], 0);
        self.color[e] = c;
        for w in self.ends[e] {
            self.used[w] |= 1 << (c - 1);
            self.at[w * (self.k + 1) + c as usize] = e as u32;
        }
        self.count[c as usize] += 1;
        self.uncolored -= 1;
    }

    fn clear(&mut self, e: usize) -> u8 {
        let c = std::mem::take(&mut self.color[e]);
        debug_assert!(c != 0);
        for w in self.ends[e] {
            self.used[w] &= !(1 << (c - 1));
            self.at[w * (self.k + 1) + c as usize] = NONE;
        }
        self.count[c as usize] -= 1;
        self.uncolored += 1;
        c
    }

    fn available(&self, e: usize) -> u64 {
        let [u, v] = self.ends[e];
        !(self.used[u] | self.used[v]) & self.full
    }

    fn select(&self) -> Option<(usize, u64)> {
        let mut best: Option<(usize, u64)> = None;
        for e in 0..self.color.len() {
            if self.color[e] != 0 {
                continue;
            }
            let avail = self.available(e);
            if best.is_none_or(|(_, b)| avail.count_ones() < b.count_ones()) {
                best = Some((e, avail));
                if avail == 0 {
                    break;
                }
            }
        }
        best
    }

    /// Chain from `start` alternating `first`, `second`; returns its edges or
    /// `None` if it reaches `avoid`.
    fn chain(&self, start: usize, first: u8, second: u8, avoid: usize) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        let (mut cur, mut c) = (start, first);
        loop {
            let e = self.at[cur * (self.k + 1) + c as usize];
            if e == NONE {
                return Some(out);
            }
            let e = e as usize;
            let [a, b] = self.ends[e];
            let next = if a == cur { b } else { a };
            if next == avoid {
                return None;
            }
            out.push(e);
            cur = next;
            c = if c == first { second } else { first };
        }
    }

    fn flip(&mut self, edges: &[usize], a: u8, b: u8) {
        let old: Vec<u8> = edges.iter().map(|&e| self.clear(e)).collect();
        for (&e, c) in edges.iter().zip(old) {
            self.assign(e, if c == a { b } else { a });
        }
    }

    /// One Kempe flip that frees a color for the stuck edge `e = uv`.
    fn try_repair(&mut self, e: usize) -> Option<(Vec<usize>, u8, u8)> {
        let [u, v] = self.ends[e];
        let free_u = !self.used[u] & self.full;
        let free_v = !self.used[v] & self.full;
        for (x, y, fx, fy) in [(u, v, free_u, free_v), (v, u, free_v, free_u)] {
            // alpha free at x but used at y, beta free at y
            let mut alphas = fx & !fy;
            while alphas != 0 {
                let alpha = alphas.trailing_zeros() as u8 + 1;
                alphas &= alphas - 1;
                let mut betas = fy;
                while betas != 0 {
                    let beta = betas.trailing_zeros() as u8 + 1;
                    betas &= betas - 1;
                    if let Some(path) = self.chain(y, alpha, beta, x) {
                        self.flip(&path, alpha, beta);
                        self.assign(e, alpha);
                        return Some((path, alpha, beta));
                    }
                }
            }
        }
        None
    }

    fn dfs(&mut self, repaired: bool) -> Flow {
        if self.uncolored == 0 {
            return Flow::Found;
        }
        if !self.meter.tick() {
            return Flow::Aborted;
        }
        let Some((e, avail)) = self.select() else {
            return Flow::Found;
        };
        if avail == 0 {
            if self.repair && !repaired {
                if let Some((path, a, b)) = self.try_repair(e) {
                    match self.dfs(true) {
                        Flow::NotFound => {}
                        other => return other,
                    }
                    self.clear(e);
                    self.flip(&path, a, b);
                }
            }
            return Flow::NotFound;
        }
        let mut order: Vec<u8> = (0..self.k as u8).filter(|c| avail >> c & 1 == 1).map(|c| c + 1).collect();
        if let Some(rng) = self.rng.as_mut() {
            order.shuffle(rng);
        }
        let mut fresh_tried = false;
        for c in order {
            if self.count[c as usize] == 0 {
                if fresh_tried {
                    continue;
                }
                fresh_tried = true;
            }
            self.assign(e, c);
            match self.dfs(repaired) {
                Flow::NotFound => {}
                other => return other,
            }
            self.clear(e);
        }
        Flow::NotFound
    }
}

/// Pins the edges at the first maximum-degree vertex to colors `1..d`.
fn pin_star(search: &mut Search<'_>, g: &Graph) -> bool {
    let Some(v) = (0..g.vertex_count()).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))) else {
        return true;
    };
    if g.degree(v) > search.k {
        return false;
    }
    let local: Vec<usize> = (0..search.ends.len())
        .filter(|&e| search.ends[e].contains(&v))
        .collect();
    for (i, e) in local.into_iter().enumerate() {
        search.assign(e, i as u8 + 1);
    }
    true
}

/// Exhaustive search for a proper `k`-edge-coloring of `g`.
pub fn search_coloring(
    g: &Graph,
    k: usize,
    options: &SearchOptions,
    meter: &mut Meter,
) -> Result<Option<Vec<(EdgeId, Color)>>, SolveError> {
    if k > MAX_SEARCH_COLORS {
        return Err(SolveError::Unsupported(format!(
            "exhaustive search supports at most {MAX_SEARCH_COLORS} colors, asked for {k}"
        )));
    }
    if g.max_degree() > k {
        return Ok(None);
    }
    let (mut search, ids) = Search::new(g, k, meter);
    search.repair = options.kempe_repair;
    if let Some(seed) = options.shuffle_seed {
        use rand::SeedableRng;
        search.rng = Some(rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    }
    if options.pin_star && !pin_star(&mut search, g) {
        return Ok(None);
    }
    match search.dfs(false) {
        Flow::Found => Ok(Some(
            ids.iter().zip(&search.color).map(|(&e, &c)| (e, c)).collect(),
        )),
        Flow::NotFound => Ok(None),
        Flow::Aborted => Err(SolveError::BudgetExhausted { nodes: search.meter.nodes() }),
    }
}

/// Is `g` properly edge-colorable with `k` colors?
pub fn is_k_edge_colorable(g: &Graph, k: usize, budget: &SolveBudget) -> Result<Decision, SolveError> {
    let mut meter = budget.meter();
    decide(g, k, &mut meter)
}

fn decide(g: &Graph, k: usize, meter: &mut Meter) -> Result<Decision, SolveError> {
    let graph = Arc::new(g.clone());
    let delta = g.max_degree();
    if g.edge_count() == 0 {
        return Ok(Decision::Yes(PartialEdgeColoring::new(graph, k).map_err(unsupported)?));
    }
    if k < delta {
        return Ok(Decision::No);
    }
    if k > delta {
        // Vizing: Δ + 1 colors always suffice
        let phi = vizing_color(g);
        let lifted = PartialEdgeColoring::from_assignment(graph, k, phi.assignment())
            .map_err(unsupported)?;
        return Ok(Decision::Yes(lifted));
    }
    match search_coloring(g, k, &SearchOptions::default(), meter) {
        Ok(Some(assignment)) => {
            let phi = PartialEdgeColoring::from_assignment(graph, k, assignment)
                .expect("search emits proper colorings");
            debug_assert!(phi.is_total());
            Ok(Decision::Yes(phi))
        }
        Ok(None) => Ok(Decision::No),
        Err(SolveError::BudgetExhausted { .. }) => Ok(Decision::BudgetExhausted),
        Err(e) => Err(e),
    }
}

fn unsupported(e: crate::coloring::ColoringError) -> SolveError {
    SolveError::Unsupported(e.to_string())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChromaticIndex {
    pub delta: usize,
    pub value: usize,
    /// A proper coloring using `value` colors.
    pub coloring: PartialEdgeColoring,
}

impl ChromaticIndex {
    pub fn is_class_one(&self) -> bool {
        self.value == self.delta
    }
}

/// `χ'(g)`, which is `Δ` or `Δ + 1`; zero for edgeless graphs.
pub fn chromatic_index(g: &Graph, budget: &SolveBudget) -> Result<ChromaticIndex, SolveError> {
    let mut meter = budget.meter();
    chromatic_index_metered(g, &mut meter)
}

pub fn chromatic_index_metered(g: &Graph, meter: &mut Meter) -> Result<ChromaticIndex, SolveError> {
    let delta = g.max_degree();
    match decide(g, delta, meter)? {
        Decision::Yes(coloring) => Ok(ChromaticIndex { delta, value: delta, coloring }),
        Decision::No => {
            let coloring = vizing_color(g);
            Ok(ChromaticIndex { delta, value: delta + 1, coloring })
        }
        Decision::BudgetExhausted => Err(SolveError::BudgetExhausted { nodes: meter.nodes() }),
    }
}

/// Proper `(Δ + 1)`-edge-coloring by Misra–Gries fan rotation.
pub fn vizing_color(g: &Graph) -> PartialEdgeColoring {
    let graph = Arc::new(g.clone());
    let k = g.max_degree() + 1;
    let mut phi = PartialEdgeColoring::new(graph, k).expect("palette within limits");
    for (e, [u, v]) in g.edges() {
        color_edge_by_fan(&mut phi, e, u, v);
    }
    debug_assert!(phi.validate().is_ok() && phi.is_total());
    phi
}

fn maximal_fan(phi: &PartialEdgeColoring, u: VertexId, v: VertexId) -> Vec<VertexId> {
    let mut fan = vec![v];
    loop {
        let last = *fan.last().unwrap();
        let next = phi.missing_colors(last).iter().find_map(|c| {
            phi.neighbor_via(u, c).filter(|w| !fan.contains(w))
        });
        match next {
            Some(w) => fan.push(w),
            None => return fan,
        }
    }
}

fn color_edge_by_fan(phi: &mut PartialEdgeColoring, e: EdgeId, u: VertexId, v: VertexId) {
    let g = phi.shared_graph().clone();
    let fan = maximal_fan(phi, u, v);
    let c = phi.missing_colors(u).first().expect("u misses a color under Δ+1 colors");
    let last = *fan.last().unwrap();
    let d = phi.missing_colors(last).first().expect("fan vertex misses a color");
    if c != d {
        let chain = kempe_chain(phi, u, d, c).expect("distinct colors");
        phi.kempe_flip(&chain).expect("fresh chain");
    }
    // longest prefix that is still a fan, stopping at the first vertex missing d
    let edge_to = |w: VertexId| g.edge_between(u, w).unwrap();
    let mut w_idx = None;
    for (i, &w) in fan.iter().enumerate() {
        if i > 0 {
            let col = phi.color(edge_to(w));
            if !col.is_some_and(|col| phi.missing_colors(fan[i - 1]).contains(col)) {
                break;
            }
        }
        if phi.missing_colors(w).contains(d) {
            w_idx = Some(i);
            break;
        }
    }
    let w_idx = w_idx.expect("Misra–Gries guarantees a rotation target");
    for i in 0..w_idx {
        let shifted = phi.uncolor(edge_to(fan[i + 1])).unwrap();
        phi.set_color(edge_to(fan[i]), shifted).expect("fan rotation stays proper");
    }
    debug_assert_eq!(edge_to(fan[0]), e);
    phi.set_color(edge_to(fan[w_idx]), d).expect("d is free at both ends");
}

/// Is `e` critical, i.e. `χ'(G - e) < χ'(G)`?
pub fn is_critical_edge(g: &Graph, e: EdgeId, budget: &SolveBudget) -> Result<bool, SolveError> {
    let mut meter = budget.meter();
    let h = g
        .delete_edge(e)
        .map_err(|err| SolveError::Unsupported(err.to_string()))?;
    let full = chromatic_index_metered(g, &mut meter)?.value;
    let less = chromatic_index_metered(&h, &mut meter)?.value;
    Ok(less < full)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CriticalityWitness {
    /// A `Δ`-coloring of the whole graph.
    ClassOne { coloring: ColoringRecord },
    /// Class two but disconnected, hence some component's edges are not critical.
    Disconnected,
    /// `G - e` still needs `Δ + 1` colors.
    NonCriticalEdge { edge: EdgeId, u: VertexId, v: VertexId },
    /// A `Δ`-coloring of `G - e` for every edge `e`.
    Critical { colorings: Vec<(EdgeId, ColoringRecord)> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalityVerdict {
    pub delta: usize,
    pub chi_prime: usize,
    pub is_critical: bool,
    pub nodes: u64,
    pub witness: CriticalityWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{source} (criticality checked for {edges_done} of {edges_total} edges)")]
pub struct CriticalityError {
    pub source: SolveError,
    pub edges_done: usize,
    pub edges_total: usize,
}

/// Decides edge-`Δ`-criticality: class two and every edge critical.
pub fn is_edge_delta_critical(
    g: &Graph,
    budget: &SolveBudget,
) -> Result<CriticalityVerdict, CriticalityError> {
    let mut meter = budget.meter();
    let m = g.edge_count();
    let wrap = |source, done| CriticalityError { source, edges_done: done, edges_total: m };
    let chi = chromatic_index_metered(g, &mut meter).map_err(|e| wrap(e, 0))?;
    let delta = chi.delta;
    let verdict = |is_critical, witness, nodes| CriticalityVerdict {
        delta,
        chi_prime: chi.value,
        is_critical,
        nodes,
        witness,
    };
    if chi.is_class_one() {
        let w = CriticalityWitness::ClassOne { coloring: chi.coloring.to_record() };
        return Ok(verdict(false, w, meter.nodes()));
    }
    if !g.is_connected() {
        return Ok(verdict(false, CriticalityWitness::Disconnected, meter.nodes()));
    }
    let mut colorings = Vec::with_capacity(m);
    for (done, (e, [u, v])) in g.edges().enumerate() {
        let h = g.delete_edge(e).expect("live edge");
        match decide(&h, delta, &mut meter).map_err(|err| wrap(err, done))? {
            Decision::Yes(phi) => colorings.push((e, phi.to_record())),
            Decision::No => {
                let w = CriticalityWitness::NonCriticalEdge { edge: e, u, v };
                return Ok(verdict(false, w, meter.nodes()));
            }
            Decision::BudgetExhausted => {
                return Err(wrap(SolveError::BudgetExhausted { nodes: meter.nodes() }, done))
            }
        }
    }
    Ok(verdict(true, CriticalityWitness::Critical { colorings }, meter.nodes()))
}

type Visitor<'a> = dyn FnMut(&[(EdgeId, Color)]) -> bool + 'a;

/// Calls `visit` once per proper `k`-coloring of `g`, up to permutation of
/// the colors. Stops early when `visit` returns `false` or after `limit`
/// colorings; returns how many were visited.
pub fn enumerate_colorings(
    g: &Graph,
    k: usize,
    limit: usize,
    mut visit: impl FnMut(&[(EdgeId, Color)]) -> bool,
) -> Result<usize, SolveError> {
    if k > MAX_SEARCH_COLORS {
        return Err(SolveError::Unsupported(format!("{k} colors")));
    }
    let mut meter = SolveBudget::unlimited().meter();
    let (mut search, ids) = Search::new(g, k, &mut meter);
    // fixed edge order keeps the enumeration free of duplicates
    fn rec(
        s: &mut Search<'_>,
        next: usize,
        ids: &[EdgeId],
        seen: &mut usize,
        limit: usize,
        visit: &mut Visitor<'_>,
    ) -> bool {
        if next == ids.len() {
            *seen += 1;
            let assignment: Vec<_> = ids.iter().zip(&s.color).map(|(&e, &c)| (e, c)).collect();
            return visit(&assignment) && *seen < limit;
        }
        let avail = s.available(next);
        let mut fresh_tried = false;
        for c in 1..=s.k as u8 {
            if avail >> (c - 1) & 1 == 0 {
                continue;
            }
            if s.count[c as usize] == 0 {
                if fresh_tried {
                    continue;
                }
                fresh_tried = true;
            }
            s.assign(next, c);
            let go_on = rec(s, next + 1, ids, seen, limit, visit);
            s.clear(next);
            if !go_on {
                return false;
            }
        }
        true
    }
    let mut seen = 0;
    if limit > 0 {
        rec(&mut search, 0, &ids, &mut seen, limit, &mut visit);
    }
    Ok(seen)
}

/// A random proper `k`-coloring of `g` (if one exists within the budget),
/// found by search with shuffled color order and then a random color
/// permutation.
pub fn random_coloring(
    g: &Graph,
    k: usize,
    rng: &mut impl Rng,
    meter: &mut Meter,
) -> Result<Option<Vec<(EdgeId, Color)>>, SolveError> {
    let options = SearchOptions {
        kempe_repair: true,
        pin_star: false,
        shuffle_seed: Some(rng.gen()),
    };
    let found = search_coloring(g, k, &options, meter)?;
    Ok(found.map(|assignment| {
        let mut perm: Vec<Color> = (1..=k as Color).collect();
        perm.shuffle(rng);
        assignment.into_iter().map(|(e, c)| (e, perm[c as usize - 1])).collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(g: &Graph) -> usize {
        chromatic_index(g, &SolveBudget::unlimited()).unwrap().value
    }

    #[test]
    fn small_known_values() {
        assert_eq!(chi(&Graph::complete(3).unwrap()), 3);
        assert_eq!(chi(&Graph::complete(4).unwrap()), 3);
        assert_eq!(chi(&Graph::complete(5).unwrap()), 5);
        assert_eq!(chi(&Graph::cycle(5).unwrap()), 3);
        assert_eq!(chi(&Graph::cycle(6).unwrap()), 2);
        assert_eq!(chi(&Graph::petersen()), 4);
        assert_eq!(chi(&Graph::empty(3)), 0);
        assert_eq!(chi(&Graph::star(4)), 4);
    }

    #[test]
    fn decisions_carry_valid_colorings() {
        let budget = SolveBudget::unlimited();
        assert_eq!(is_k_edge_colorable(&Graph::cycle(5).unwrap(), 2, &budget).unwrap(), Decision::No);
        for (g, k) in [
            (Graph::cycle(5).unwrap(), 3),
            (Graph::complete(4).unwrap(), 3),
            (Graph::petersen(), 4),
        ] {
            match is_k_edge_colorable(&g, k, &budget).unwrap() {
                Decision::Yes(phi) => {
                    assert!(phi.is_total());
                    phi.validate().unwrap();
                    assert_eq!(phi.palette(), k);
                }
                other => panic!("{other:?}"),
            }
        }
        assert_eq!(is_k_edge_colorable(&Graph::petersen(), 3, &budget).unwrap(), Decision::No);
    }

    #[test]
    fn vizing_color_is_proper() {
        for g in [
            Graph::petersen(),
            Graph::complete(4).unwrap(),
            Graph::complete(7).unwrap(),
            Graph::empty(4),
            Graph::woodall_example(6, 3).unwrap(),
        ] {
            let phi = vizing_color(&g);
            phi.validate().unwrap();
            assert!(phi.is_total());
            assert_eq!(phi.palette(), g.max_degree() + 1);
        }
    }

    #[test]
    fn critical_edges() {
        let budget = SolveBudget::unlimited();
        let k3 = Graph::complete(3).unwrap();
        let c6 = Graph::cycle(6).unwrap();
        let k4 = Graph::complete(4).unwrap();
        for e in k3.edge_ids() {
            assert!(is_critical_edge(&k3, e, &budget).unwrap());
        }
        for e in c6.edge_ids() {
            assert!(!is_critical_edge(&c6, e, &budget).unwrap());
        }
        for e in k4.edge_ids() {
            assert!(!is_critical_edge(&k4, e, &budget).unwrap());
        }
    }

    #[test]
    fn criticality_verdicts() {
        let budget = SolveBudget::unlimited();
        for n in [3, 5, 7] {
            let v = is_edge_delta_critical(&Graph::cycle(n).unwrap(), &budget).unwrap();
            assert!(v.is_critical, "C{n}");
            assert_eq!(v.chi_prime, 3);
        }
        let v = is_edge_delta_critical(&Graph::complete(4).unwrap(), &budget).unwrap();
        assert!(!v.is_critical);
        assert!(matches!(v.witness, CriticalityWitness::ClassOne { .. }));
        // two disjoint triangles
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let v = is_edge_delta_critical(&g, &budget).unwrap();
        assert_eq!(v.witness, CriticalityWitness::Disconnected);
        // K5 - e is still overfull
        let v = is_edge_delta_critical(&Graph::complete(5).unwrap(), &budget).unwrap();
        assert!(matches!(v.witness, CriticalityWitness::NonCriticalEdge { .. }));
    }

    #[test]
    fn budget_exhaustion_is_explicit() {
        let g = Graph::complete(7).unwrap();
        let r = is_k_edge_colorable(&g, 6, &SolveBudget::nodes(10)).unwrap();
        assert_eq!(r, Decision::BudgetExhausted);
        assert!(matches!(
            chromatic_index(&g, &SolveBudget::nodes(10)),
            Err(SolveError::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn enumeration_counts_up_to_permutation() {
        // C4 with 2 colors: one coloring up to swapping the colors
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(enumerate_colorings(&c4, 2, usize::MAX, |_| true).unwrap(), 1);
        // P3 with 3 colors: the two edges differ -> one class
        assert_eq!(enumerate_colorings(&Graph::path(3).unwrap(), 3, usize::MAX, |_| true).unwrap(), 1);
        // K3 with 3 colors: one class; with 2 none
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(enumerate_colorings(&k3, 3, usize::MAX, |_| true).unwrap(), 1);
        assert_eq!(enumerate_colorings(&k3, 2, usize::MAX, |_| true).unwrap(), 0);
        // two disjoint edges, 2 colors: same or different -> 2 classes
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(enumerate_colorings(&g, 2, usize::MAX, |_| true).unwrap(), 2);
        assert_eq!(enumerate_colorings(&g, 2, 1, |_| true).unwrap(), 1);
    }
}
