//! Proper partial edge colorings and the recoloring primitives built on them.
//!
//! A coloring of `G - e` is represented as a partial coloring of `G` whose
//! only uncolored edge is `e`; missing sets are then computed exactly as for
//! `G - e`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::ExactReal;
use crate::graph::{EdgeId, Graph, VertexId};

/// 1-based color in `1..=k`.
pub type Color = u8;

/// Largest supported palette.
pub const MAX_COLORS: usize = 128;

/// Set of colors backed by a 128-bit word; bit `c - 1` stands for color `c`.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash)]
pub struct ColorSet(u128);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// `{1, ..., k}`.
    pub fn full(k: usize) -> ColorSet {
        assert!(k <= MAX_COLORS);
        if k == MAX_COLORS {
            ColorSet(u128::MAX)
        } else {
            ColorSet((1u128 << k) - 1)
        }
    }

    pub fn singleton(c: Color) -> ColorSet {
        ColorSet(1u128 << (c - 1))
    }

    pub fn contains(self, c: Color) -> bool {
        c >= 1 && (self.0 >> (c - 1)) & 1 == 1
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= 1u128 << (c - 1);
    }

    pub fn remove(&mut self, c: Color) {
        self.0 &= !(1u128 << (c - 1));
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }

    pub fn difference(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: ColorSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn first(self) -> Option<Color> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Color + 1)
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let c = bits.trailing_zeros() as Color + 1;
            bits &= bits - 1;
            Some(c)
        })
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ColorSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("palette size {0} outside 1..={MAX_COLORS}")]
    Palette(usize),
    #[error("color {color} outside palette 1..={k}")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("edge {0} is not in the graph")]
    UnknownEdge(EdgeId),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("coloring {edge} with {color} conflicts at vertex {vertex}")]
    Conflict { edge: EdgeId, color: Color, vertex: VertexId },
    #[error("chain colors must differ (both {0})")]
    SameColors(Color),
    #[error("stale chain: {0}")]
    StaleChain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Proper assignment of colors `1..=k` to a subset of the edges of a graph.
#[derive(Clone)]
pub struct PartialEdgeColoring {
    graph: Arc<Graph>,
    k: usize,
    colors: Vec<Option<Color>>,
    used: Vec<ColorSet>,
    // at[v * (k + 1) + c]: the edge at v colored c
    at: Vec<Option<EdgeId>>,
}

impl fmt::Debug for PartialEdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartialEdgeColoring")
            .field("k", &self.k)
            .field("colors", &self.assignment())
            .finish()
    }
}

impl PartialEq for PartialEdgeColoring {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.graph == other.graph && self.colors == other.colors
    }
}

impl PartialEdgeColoring {
    /// The all-uncolored coloring with palette `{1..k}`.
    pub fn new(graph: Arc<Graph>, k: usize) -> Result<Self, ColoringError> {
        if k > MAX_COLORS {
            return Err(ColoringError::Palette(k));
        }
        let n = graph.vertex_count();
        let cap = graph.edge_capacity();
        Ok(PartialEdgeColoring {
            graph,
            k,
            colors: vec![None; cap],
            used: vec![ColorSet::EMPTY; n],
            at: vec![None; n * (k + 1)],
        })
    }

    /// Builds and validates a coloring from `(edge, color)` pairs.
    pub fn from_assignment(
        graph: Arc<Graph>,
        k: usize,
        assignment: impl IntoIterator<Item = (EdgeId, Color)>,
    ) -> Result<Self, ColoringError> {
        let mut phi = PartialEdgeColoring::new(graph, k)?;
        for (e, c) in assignment {
            phi.set_color(e, c)?;
        }
        Ok(phi)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn shared_graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn palette(&self) -> usize {
        self.k
    }

    pub fn color(&self, e: EdgeId) -> Option<Color> {
        self.colors.get(e.0).copied().flatten()
    }

    /// Colored edges in id order.
    pub fn assignment(&self) -> Vec<(EdgeId, Color)> {
        self.graph
            .edge_ids()
            .filter_map(|e| self.color(e).map(|c| (e, c)))
            .collect()
    }

    pub fn uncolored_edges(&self) -> Vec<EdgeId> {
        self.graph.edge_ids().filter(|&e| self.color(e).is_none()).collect()
    }

    pub fn is_total(&self) -> bool {
        self.graph.edge_ids().all(|e| self.color(e).is_some())
    }

    fn slot(&self, v: VertexId, c: Color) -> usize {
        v * (self.k + 1) + c as usize
    }

    /// `φ(v)`: colors seen at `v`.
    pub fn used_colors(&self, v: VertexId) -> ColorSet {
        self.used[v]
    }

    /// `φ̄(v)`: colors of the palette missing at `v`.
    pub fn missing_colors(&self, v: VertexId) -> ColorSet {
        ColorSet::full(self.k).difference(self.used[v])
    }

    pub fn edge_with_color(&self, v: VertexId, c: Color) -> Option<EdgeId> {
        if c == 0 || c as usize > self.k {
            return None;
        }
        self.at[self.slot(v, c)]
    }

    /// The neighbor of `v` reached through the edge colored `c`, if any.
    pub fn neighbor_via(&self, v: VertexId, c: Color) -> Option<VertexId> {
        self.edge_with_color(v, c)
            .and_then(|e| self.graph.other_end(e, v))
    }

    fn check_color(&self, c: Color) -> Result<(), ColoringError> {
        if c == 0 || c as usize > self.k {
            Err(ColoringError::ColorOutOfRange { color: c as usize, k: self.k })
        } else {
            Ok(())
        }
    }

    /// Colors (or recolors) `e` with `c`, keeping the coloring proper.
    pub fn set_color(&mut self, e: EdgeId, c: Color) -> Result<(), ColoringError> {
        self.check_color(c)?;
        let [u, v] = self.graph.endpoints(e).ok_or(ColoringError::UnknownEdge(e))?;
        for w in [u, v] {
            if let Some(other) = self.at[self.slot(w, c)] {
                if other != e {
                    return Err(ColoringError::Conflict { edge: e, color: c, vertex: w });
                }
            }
        }
        self.uncolor(e);
        self.colors[e.0] = Some(c);
        for w in [u, v] {
            self.used[w].insert(c);
            let s = self.slot(w, c);
            self.at[s] = Some(e);
        }
        Ok(())
    }

    /// Removes the color of `e`; returns the old color.
    pub fn uncolor(&mut self, e: EdgeId) -> Option<Color> {
        let c = self.colors.get_mut(e.0)?.take()?;
        let [u, v] = self.graph.endpoints(e)?;
        for w in [u, v] {
            self.used[w].remove(c);
            let s = self.slot(w, c);
            self.at[s] = None;
        }
        Some(c)
    }

    /// Recomputes properness and index consistency from the raw assignment.
    pub fn validate(&self) -> Result<(), ColoringError> {
        if !is_proper(&self.graph, self.k, &self.colors) {
            return Err(ColoringError::Precondition("assignment is not proper".into()));
        }
        for v in 0..self.graph.vertex_count() {
            let seen: ColorSet = self
                .graph
                .incident(v)
                .iter()
                .filter_map(|&(_, e)| self.color(e))
                .collect();
            if seen != self.used[v] {
                return Err(ColoringError::Precondition(format!(
                    "color index out of sync at vertex {v}"
                )));
            }
        }
        Ok(())
    }

    /// JSON-friendly snapshot `{k, edges: [{u, v, color}]}`.
    pub fn to_record(&self) -> ColoringRecord {
        ColoringRecord {
            k: self.k,
            edges: self
                .graph
                .edges()
                .map(|(e, [u, v])| EdgeColorRecord { u, v, color: self.color(e) })
                .collect(),
        }
    }

    /// Inverse of [`to_record`](Self::to_record): edges are matched by endpoints.
    pub fn from_record(graph: Arc<Graph>, record: &ColoringRecord) -> Result<Self, ColoringError> {
        let mut phi = PartialEdgeColoring::new(graph.clone(), record.k)?;
        for item in &record.edges {
            let e = graph.edge_between(item.u, item.v).ok_or_else(|| {
                ColoringError::Precondition(format!("no edge {}-{}", item.u, item.v))
            })?;
            if let Some(c) = item.color {
                phi.set_color(e, c)?;
            }
        }
        Ok(phi)
    }

    /// Colors `α, β` swapped on the edges of `chain`.
    pub fn kempe_flip(&mut self, chain: &KempeChain) -> Result<(), ColoringError> {
        let (a, b) = (chain.alpha, chain.beta);
        for (i, &e) in chain.edges.iter().enumerate() {
            let want = if i % 2 == 0 { chain.first_color } else { chain.other(chain.first_color) };
            if self.color(e) != Some(want) {
                return Err(ColoringError::StaleChain(format!(
                    "edge {e} expected color {want}, found {:?}",
                    self.color(e)
                )));
            }
        }
        if chain.kind == ChainKind::Path {
            for &end in &chain.endpoints {
                let inside = |e: EdgeId| chain.edges.contains(&e);
                for c in [a, b] {
                    if let Some(e) = self.edge_with_color(end, c) {
                        if !inside(e) {
                            return Err(ColoringError::StaleChain(format!(
                                "endpoint {end} has an ({a},{b}) edge {e} outside the chain"
                            )));
                        }
                    }
                }
            }
        }
        let old: Vec<Color> = chain.edges.iter().map(|&e| self.uncolor(e).unwrap()).collect();
        for (&e, c) in chain.edges.iter().zip(old) {
            self.set_color(e, chain.other(c))?;
        }
        debug_assert!(self.validate().is_ok());
        Ok(())
    }

    /// Non-mutating form of [`kempe_flip`](Self::kempe_flip).
    pub fn flipped(&self, chain: &KempeChain) -> Result<Self, ColoringError> {
        let mut next = self.clone();
        next.kempe_flip(chain)?;
        Ok(next)
    }
}

/// Independent properness check over a raw per-edge-id assignment.
pub fn is_proper(graph: &Graph, k: usize, colors: &[Option<Color>]) -> bool {
    for v in 0..graph.vertex_count() {
        let mut seen = ColorSet::EMPTY;
        for &(_, e) in graph.incident(v) {
            if let Some(c) = colors.get(e.0).copied().flatten() {
                if c == 0 || c as usize > k || seen.contains(c) {
                    return false;
                }
                seen.insert(c);
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColorRecord {
    pub u: VertexId,
    pub v: VertexId,
    pub color: Option<Color>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringRecord {
    pub k: usize,
    pub edges: Vec<EdgeColorRecord>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    Path,
    Cycle,
}

/// A component of `E_α ∪ E_β`, stored as an ordered walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KempeChain {
    pub alpha: Color,
    pub beta: Color,
    pub kind: ChainKind,
    /// Walk order; for a path, from one endpoint to the other.
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    /// Path endpoints (a single vertex for the degenerate chain, none for cycles).
    pub endpoints: Vec<VertexId>,
    /// Color of `edges[0]`.
    first_color: Color,
}

impl KempeChain {
    fn other(&self, c: Color) -> Color {
        if c == self.alpha {
            self.beta
        } else {
            self.alpha
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }
}

fn walk(
    phi: &PartialEdgeColoring,
    start: VertexId,
    first: Color,
    alpha: Color,
    beta: Color,
) -> (Vec<(EdgeId, VertexId)>, bool) {
    let mut steps = Vec::new();
    let mut cur = start;
    let mut c = first;
    while let Some(e) = phi.edge_with_color(cur, c) {
        let next = phi.graph.other_end(e, cur).expect("indexed edge touches vertex");
        steps.push((e, next));
        if next == start {
            return (steps, true);
        }
        cur = next;
        c = if c == alpha { beta } else { alpha };
    }
    (steps, false)
}

/// `P_v(α, β, φ)`: the `(α, β)`-chain through `v`.
pub fn kempe_chain(
    phi: &PartialEdgeColoring,
    v: VertexId,
    alpha: Color,
    beta: Color,
) -> Result<KempeChain, ColoringError> {
    if alpha == beta {
        return Err(ColoringError::SameColors(alpha));
    }
    phi.check_color(alpha)?;
    phi.check_color(beta)?;
    if v >= phi.graph.vertex_count() {
        return Err(ColoringError::UnknownVertex(v));
    }
    let (forward, cyclic) = walk(phi, v, alpha, alpha, beta);
    if cyclic {
        let mut vertices = vec![v];
        vertices.extend(forward.iter().take(forward.len() - 1).map(|&(_, w)| w));
        return Ok(KempeChain {
            alpha,
            beta,
            kind: ChainKind::Cycle,
            vertices,
            edges: forward.iter().map(|&(e, _)| e).collect(),
            endpoints: Vec::new(),
            first_color: alpha,
        });
    }
    let (backward, _) = walk(phi, v, beta, alpha, beta);
    let mut vertices: Vec<VertexId> = backward.iter().rev().map(|&(_, w)| w).collect();
    let mut edges: Vec<EdgeId> = backward.iter().rev().map(|&(e, _)| e).collect();
    vertices.push(v);
    vertices.extend(forward.iter().map(|&(_, w)| w));
    edges.extend(forward.iter().map(|&(e, _)| e));
    let first_color = match edges.first() {
        Some(&e) => phi.color(e).expect("chain edges are colored"),
        None => alpha,
    };
    let endpoints = if edges.is_empty() {
        vec![v]
    } else {
        vec![vertices[0], *vertices.last().unwrap()]
    };
    Ok(KempeChain { alpha, beta, kind: ChainKind::Path, vertices, edges, endpoints, first_color })
}

/// `φ^d`: from a coloring of `G - xy`, color `xy` with `φ(xz)` and uncolor `xz`.
pub fn dual_coloring(
    phi: &PartialEdgeColoring,
    x: VertexId,
    y: VertexId,
    z: VertexId,
) -> Result<PartialEdgeColoring, ColoringError> {
    let g = phi.graph();
    let xy = g
        .edge_between(x, y)
        .ok_or_else(|| ColoringError::Precondition(format!("{x}{y} is not an edge")))?;
    let xz = g
        .edge_between(x, z)
        .ok_or_else(|| ColoringError::Precondition(format!("{x}{z} is not an edge")))?;
    if phi.color(xy).is_some() {
        return Err(ColoringError::Precondition(format!("edge {x}{y} is colored")));
    }
    let c = phi
        .color(xz)
        .ok_or_else(|| ColoringError::Precondition(format!("edge {x}{z} is uncolored")))?;
    if !phi.missing_colors(y).contains(c) {
        return Err(ColoringError::Precondition(format!(
            "color {c} of {x}{z} is not missing at {y}"
        )));
    }
    let mut dual = phi.clone();
    dual.uncolor(xz);
    dual.set_color(xy, c)?;
    Ok(dual)
}

/// Two vertices of a set sharing a missing color.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharedMissing {
    pub u: VertexId,
    pub v: VertexId,
    pub color: Color,
}

/// `None` when the missing sets over `vertices` are pairwise disjoint,
/// otherwise the first offending pair (in the given order) and their
/// smallest shared color.
pub fn elementary_violation(phi: &PartialEdgeColoring, vertices: &[VertexId]) -> Option<SharedMissing> {
    for (i, &u) in vertices.iter().enumerate() {
        let mu = phi.missing_colors(u);
        for &v in &vertices[i + 1..] {
            if u == v {
                continue;
            }
            if let Some(color) = mu.intersection(phi.missing_colors(v)).first() {
                return Some(SharedMissing { u, v, color });
            }
        }
    }
    None
}

pub fn is_elementary(phi: &PartialEdgeColoring, vertices: &[VertexId]) -> bool {
    elementary_violation(phi, vertices).is_none()
}

/// Which comparison a degree threshold uses.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Threshold {
    /// `d(z) >= q`
    #[default]
    AtLeast,
    /// `d(z) > q`
    Above,
}

impl Threshold {
    pub fn admits(self, degree: usize, q: &ExactReal) -> bool {
        let d = ExactReal::from(degree);
        match self {
            Threshold::AtLeast => d >= *q,
            Threshold::Above => d > *q,
        }
    }
}

/// `σ_q(x, y)`: neighbors of `y` other than `x` with degree at least `q`.
pub fn sigma_q(g: &Graph, x: VertexId, y: VertexId, q: &ExactReal) -> usize {
    sigma_q_with(g, x, y, q, Threshold::AtLeast)
}

pub fn sigma_q_with(g: &Graph, x: VertexId, y: VertexId, q: &ExactReal, cmp: Threshold) -> usize {
    g.neighbors(y)
        .filter(|&z| z != x && cmp.admits(g.degree(z), q))
        .count()
}

/// Integer-threshold `σ_q` (`d(z) >= q`), the common case.
pub fn sigma_int(g: &Graph, x: VertexId, y: VertexId, q: i64) -> usize {
    g.neighbors(y)
        .filter(|&z| z != x && g.degree(z) as i64 >= q)
        .count()
}

/// Woodall's `σ(x, y)`, i.e. `σ_q` with `q = 2Δ - d(x) - d(y) + 2`.
pub fn woodall_sigma(g: &Graph, x: VertexId, y: VertexId) -> usize {
    let delta = g.max_degree() as i64;
    let q = 2 * delta - g.degree(x) as i64 - g.degree(y) as i64 + 2;
    sigma_int(g, x, y, q)
}

/// `(p_min(x), p(x))`, with `p(x)` capped at `⌊d(x)/2⌋ - 1`. `None` when `x` is isolated.
pub fn p_params(g: &Graph, x: VertexId) -> Option<(i64, i64)> {
    let d = g.degree(x) as i64;
    let delta = g.max_degree() as i64;
    let min_sigma = g.neighbors(x).map(|y| woodall_sigma(g, x, y) as i64).min()?;
    let p_min = min_sigma - delta + d - 1;
    Some((p_min, p_min.min(d / 2 - 1)))
}

/// `(p_min(x, q), p(x, q))`, with `p(x, q)` capped at `⌊d(x)/2⌋ - 3`.
pub fn p_params_q(g: &Graph, x: VertexId, q: &ExactReal) -> Option<(i64, i64)> {
    let d = g.degree(x) as i64;
    let delta = g.max_degree() as i64;
    let min_sigma = g.neighbors(x).map(|y| sigma_q(g, x, y, q) as i64).min()?;
    let p_min = min_sigma - delta + d - 1;
    Some((p_min, p_min.min(d / 2 - 3)))
}
