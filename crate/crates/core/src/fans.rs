//! Trees grown from an uncolored edge: Vizing fans, Kierstead paths, simple
//! brooms and Tashkinov trees, with the elementarity checks made about them.
//!
//! A tree is stored as `y_0, e_1, y_1, ..., e_p, y_p` where `e_i = y_r y_i`
//! for the recorded parent index `r < i`. Growth is deterministic: smallest
//! color first, then smallest vertex id.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{elementary_violation, Color, ColorSet, PartialEdgeColoring, SharedMissing};
use crate::graph::{EdgeId, VertexId};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FanKind {
    VizingFan,
    KiersteadPath,
    SimpleBroom,
    TashkinovTree,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("edge {0} is not the uncolored edge of the coloring")]
    NotUncolored(EdgeId),
    #[error("vertex {0} is not an end of the uncolored edge")]
    NotAnEnd(VertexId),
    #[error("malformed tree: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanTree {
    pub kind: FanKind,
    pub vertices: Vec<VertexId>,
    /// `edges[i - 1]` is `e_i`.
    pub edges: Vec<EdgeId>,
    /// `colors[i - 1] = φ(e_i)`; `None` for `e_1`.
    pub colors: Vec<Option<Color>>,
    /// `parents[i - 1] = r` with `e_i = y_r y_i`.
    pub parents: Vec<usize>,
}

impl FanTree {
    fn seed(kind: FanKind, phi: &PartialEdgeColoring, e1: EdgeId, y0: VertexId) -> Result<Self, FanError> {
        let [a, b] = phi.graph().endpoints(e1).ok_or(FanError::NotUncolored(e1))?;
        if phi.color(e1).is_some() {
            return Err(FanError::NotUncolored(e1));
        }
        let y1 = if a == y0 {
            b
        } else if b == y0 {
            a
        } else {
            return Err(FanError::NotAnEnd(y0));
        };
        Ok(FanTree { kind, vertices: vec![y0, y1], edges: vec![e1], colors: vec![None], parents: vec![0] })
    }

    fn push(&mut self, phi: &PartialEdgeColoring, parent: usize, v: VertexId) {
        let e = phi.graph().edge_between(self.vertices[parent], v).expect("tree edge exists");
        self.vertices.push(v);
        self.edges.push(e);
        self.colors.push(phi.color(e));
        self.parents.push(parent);
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn missing_union(&self, phi: &PartialEdgeColoring, upto: usize) -> ColorSet {
        self.vertices[..upto]
            .iter()
            .fold(ColorSet::EMPTY, |acc, &v| acc.union(phi.missing_colors(v)))
    }

    /// First pair of tree vertices sharing a missing color, if any.
    pub fn elementary_violation(&self, phi: &PartialEdgeColoring) -> Option<SharedMissing> {
        elementary_violation(phi, &self.vertices)
    }

    pub fn is_elementary(&self, phi: &PartialEdgeColoring) -> bool {
        self.elementary_violation(phi).is_none()
    }

    /// Checks the Tashkinov-tree conditions plus the constraints of `kind`.
    pub fn validate(&self, phi: &PartialEdgeColoring) -> Result<(), FanError> {
        let bad = |msg: String| Err(FanError::Malformed(msg));
        let g = phi.graph();
        let p = self.edges.len();
        if self.vertices.len() != p + 1 || self.colors.len() != p || self.parents.len() != p || p == 0 {
            return bad("sequence lengths disagree".into());
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return bad(format!("vertex {v} repeats"));
            }
        }
        if phi.color(self.edges[0]).is_some() {
            return Err(FanError::NotUncolored(self.edges[0]));
        }
        for i in 1..=p {
            let r = self.parents[i - 1];
            if r >= i {
                return bad(format!("e_{i} hangs from y_{r}, not an earlier vertex"));
            }
            let e = self.edges[i - 1];
            let want = [self.vertices[r], self.vertices[i]];
            match g.endpoints(e) {
                Some([a, b]) if [a, b] == want || [b, a] == want => {}
                _ => return bad(format!("e_{i} does not join y_{r} and y_{i}")),
            }
            if self.colors[i - 1] != phi.color(e) {
                return bad(format!("recorded color of e_{i} is stale"));
            }
            if i >= 2 {
                let Some(c) = phi.color(e) else {
                    return bad(format!("e_{i} is uncolored"));
                };
                if !self.missing_union(phi, i).contains(c) {
                    return bad(format!("color {c} of e_{i} is missing at no earlier vertex"));
                }
            }
            let shape_ok = match self.kind {
                FanKind::TashkinovTree => true,
                FanKind::VizingFan => r == 0,
                FanKind::KiersteadPath => r == i - 1,
                FanKind::SimpleBroom => match i {
                    1 => true,
                    2 => r == 1,
                    _ => r == 2,
                },
            };
            if !shape_ok {
                return bad(format!("e_{i} breaks the {:?} shape", self.kind));
            }
            if self.kind == FanKind::SimpleBroom && i >= 2 {
                let c = phi.color(e).expect("checked above");
                if !self.missing_union(phi, 2).contains(c) {
                    return bad(format!("broom edge e_{i} is not colored from y_0 or y_1"));
                }
            }
        }
        Ok(())
    }
}

/// Maximal Vizing fan centered at `y0` for the uncolored edge `e1`.
pub fn build_vizing_fan(phi: &PartialEdgeColoring, e1: EdgeId, y0: VertexId) -> Result<FanTree, FanError> {
    let mut fan = FanTree::seed(FanKind::VizingFan, phi, e1, y0)?;
    loop {
        let missing = fan.missing_union(phi, fan.len());
        let next = missing
            .iter()
            .find_map(|c| phi.neighbor_via(y0, c).filter(|z| !fan.vertices.contains(z)));
        match next {
            Some(z) => fan.push(phi, 0, z),
            None => return Ok(fan),
        }
    }
}

/// All Kierstead paths starting `y0, e1, y1` with at most `max_edges` edges,
/// in lexicographic order of their vertex sequences.
pub fn enumerate_kierstead_paths(
    phi: &PartialEdgeColoring,
    e1: EdgeId,
    y0: VertexId,
    max_edges: usize,
) -> Result<Vec<FanTree>, FanError> {
    let seed = FanTree::seed(FanKind::KiersteadPath, phi, e1, y0)?;
    let mut out = Vec::new();
    fn extend(phi: &PartialEdgeColoring, path: &mut FanTree, max_edges: usize, out: &mut Vec<FanTree>) {
        out.push(path.clone());
        if path.edges.len() == max_edges {
            return;
        }
        let last = *path.vertices.last().unwrap();
        let missing = path.missing_union(phi, path.len());
        let mut next: Vec<VertexId> = phi
            .graph()
            .incident(last)
            .iter()
            .filter(|&&(z, e)| !path.vertices.contains(&z) && phi.color(e).is_some_and(|c| missing.contains(c)))
            .map(|&(z, _)| z)
            .collect();
        next.sort_unstable();
        for z in next {
            path.push(phi, path.len() - 1, z);
            extend(phi, path, max_edges, out);
            path.vertices.pop();
            path.edges.pop();
            path.colors.pop();
            path.parents.pop();
        }
    }
    if max_edges >= 1 {
        extend(phi, &mut seed.clone(), max_edges, &mut out);
    }
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(out)
}

/// One item of a lemma about a tree: whether its hypothesis applies and,
/// if so, whether the conclusion holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ItemVerdict {
    pub item: u8,
    pub applies: bool,
    pub holds: bool,
    pub shared: Option<SharedMissing>,
    /// For item 4: `φ̄(y_3) ∩ (φ̄(y_0) ∪ φ̄(y_1))`.
    pub overlap: Option<ColorSet>,
}

impl ItemVerdict {
    fn from_shared(item: u8, applies: bool, shared: Option<SharedMissing>) -> Self {
        ItemVerdict { item, applies, holds: !applies || shared.is_none(), shared: if applies { shared } else { None }, overlap: None }
    }

    pub fn violated(&self) -> bool {
        self.applies && !self.holds
    }
}

/// The four conclusions about a 4-vertex Kierstead path `y_0 y_1 y_2 y_3`
/// in a critical graph.
pub fn check_p4(phi: &PartialEdgeColoring, path: &FanTree) -> Result<[ItemVerdict; 4], FanError> {
    if path.kind != FanKind::KiersteadPath || path.len() != 4 {
        return Err(FanError::Malformed("expected a Kierstead path on 4 vertices".into()));
    }
    path.validate(phi)?;
    let g = phi.graph();
    let delta = g.max_degree();
    let [y0, y1, y2, y3] = [path.vertices[0], path.vertices[1], path.vertices[2], path.vertices[3]];
    let whole = path.elementary_violation(phi);
    let first = ItemVerdict::from_shared(1, true, elementary_violation(phi, &[y0, y1]));
    let second = ItemVerdict::from_shared(2, g.degree(y2) < delta, whole);
    let third = ItemVerdict::from_shared(3, g.degree(y1) < delta, whole);
    let gamma = phi.missing_colors(y0).union(phi.missing_colors(y1));
    let overlap = phi.missing_colors(y3).intersection(gamma);
    let fourth = ItemVerdict { item: 4, applies: true, holds: overlap.len() <= 1, shared: None, overlap: Some(overlap) };
    Ok([first, second, third, fourth])
}

/// Maximal simple brooms `y_0, y_1, y_2, y_3.., y_p` for `e1 = y_0 y_1`: for
/// each admissible `y_2`, every eligible leaf at `y_2` is attached (smallest
/// ids first, at most `max_p - 2` leaves). Elementarity is hereditary, so
/// checking the maximal broom covers all its sub-brooms.
pub fn enumerate_simple_brooms(
    phi: &PartialEdgeColoring,
    e1: EdgeId,
    y0: VertexId,
    max_p: usize,
) -> Result<Vec<FanTree>, FanError> {
    let seed = FanTree::seed(FanKind::SimpleBroom, phi, e1, y0)?;
    let g = phi.graph();
    let y1 = seed.vertices[1];
    let gamma = seed.missing_union(phi, 2);
    let via_gamma = |v: VertexId| -> Vec<VertexId> {
        let mut out: Vec<VertexId> = g
            .incident(v)
            .iter()
            .filter(|&&(_, e)| phi.color(e).is_some_and(|c| gamma.contains(c)))
            .map(|&(z, _)| z)
            .collect();
        out.sort_unstable();
        out
    };
    let mut brooms = Vec::new();
    for y2 in via_gamma(y1) {
        if y2 == y0 {
            continue;
        }
        let mut broom = seed.clone();
        broom.push(phi, 1, y2);
        for z in via_gamma(y2) {
            if broom.len() > max_p {
                break;
            }
            if !broom.vertices.contains(&z) {
                broom.push(phi, 2, z);
            }
        }
        brooms.push(broom);
    }
    Ok(brooms)
}

/// Elementarity of a simple broom, asserted only when
/// `|φ̄(y_0) ∪ φ̄(y_1)| >= 4` and `min(d(y_1), d(y_2)) < Δ`.
pub fn check_broom(phi: &PartialEdgeColoring, broom: &FanTree) -> Result<ItemVerdict, FanError> {
    if broom.kind != FanKind::SimpleBroom || broom.len() < 3 {
        return Err(FanError::Malformed("expected a simple broom on at least 3 vertices".into()));
    }
    broom.validate(phi)?;
    let g = phi.graph();
    let applies = broom.missing_union(phi, 2).len() >= 4
        && g.degree(broom.vertices[1]).min(g.degree(broom.vertices[2])) < g.max_degree();
    Ok(ItemVerdict::from_shared(1, applies, broom.elementary_violation(phi)))
}

/// Greedy maximal Tashkinov tree grown from `e1 = y0 y1`.
pub fn build_tashkinov_tree(phi: &PartialEdgeColoring, e1: EdgeId, y0: VertexId) -> Result<FanTree, FanError> {
    let mut tree = FanTree::seed(FanKind::TashkinovTree, phi, e1, y0)?;
    let g = phi.graph();
    loop {
        let missing = tree.missing_union(phi, tree.len());
        let mut best: Option<(Color, VertexId, usize)> = None;
        for (r, &v) in tree.vertices.iter().enumerate() {
            for &(z, e) in g.incident(v) {
                if tree.vertices.contains(&z) {
                    continue;
                }
                if let Some(c) = phi.color(e).filter(|&c| missing.contains(c)) {
                    if best.is_none_or(|b| (c, z, r) < b) {
                        best = Some((c, z, r));
                    }
                }
            }
        }
        match best {
            Some((_, z, r)) => tree.push(phi, r, z),
            None => return Ok(tree),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use std::sync::Arc;

    fn colored(g: Graph, k: usize, pairs: &[((VertexId, VertexId), Color)]) -> PartialEdgeColoring {
        let g = Arc::new(g);
        let a: Vec<_> = pairs.iter().map(|&((u, v), c)| (g.edge_between(u, v).unwrap(), c)).collect();
        PartialEdgeColoring::from_assignment(g, k, a).unwrap()
    }

    #[test]
    fn fan_on_triangle_minus_edge() {
        // x = 0, y = 1, z = 2
        let phi = colored(Graph::complete(3).unwrap(), 2, &[((0, 2), 1), ((2, 1), 2)]);
        let e = phi.graph().edge_between(0, 1).unwrap();
        let fan = build_vizing_fan(&phi, e, 0).unwrap();
        assert_eq!(fan.vertices, vec![0, 1, 2]);
        fan.validate(&phi).unwrap();
        assert!(fan.is_elementary(&phi));
    }

    #[test]
    fn single_edge_structures_are_trivial() {
        let phi = PartialEdgeColoring::new(Arc::new(Graph::path(2).unwrap()), 1).unwrap();
        let e = EdgeId(0);
        assert_eq!(build_vizing_fan(&phi, e, 0).unwrap().vertices, vec![0, 1]);
        assert_eq!(build_tashkinov_tree(&phi, e, 0).unwrap().vertices, vec![0, 1]);
        let paths = enumerate_kierstead_paths(&phi, e, 0, 3).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].vertices, vec![0, 1]);
        assert!(matches!(build_vizing_fan(&phi, e, 5), Err(FanError::NotAnEnd(5))));
    }

    #[test]
    fn kierstead_paths_on_p4() {
        // a-b-c-d, ab uncolored; bc gets a color missing at a
        let phi = colored(Graph::path(4).unwrap(), 2, &[((1, 2), 1), ((2, 3), 2)]);
        let e = phi.graph().edge_between(0, 1).unwrap();
        let paths = enumerate_kierstead_paths(&phi, e, 0, 3).unwrap();
        let seqs: Vec<_> = paths.iter().map(|p| p.vertices.clone()).collect();
        assert_eq!(seqs, vec![vec![0, 1], vec![0, 1, 2], vec![0, 1, 2, 3]]);
        for p in &paths {
            p.validate(&phi).unwrap();
        }
        // φ̄(a) = {1,2}, φ̄(b) = {2}: item 1 fails since ab is not critical here
        let verdicts = check_p4(&phi, &paths[2]).unwrap();
        assert!(verdicts[0].violated());
    }

    #[test]
    fn validate_rejects_bad_shapes() {
        let phi = colored(Graph::complete(3).unwrap(), 2, &[((0, 2), 1), ((2, 1), 2)]);
        let e = phi.graph().edge_between(0, 1).unwrap();
        let mut fan = build_vizing_fan(&phi, e, 0).unwrap();
        fan.kind = FanKind::KiersteadPath;
        assert!(fan.validate(&phi).is_err());
        let mut fan = build_vizing_fan(&phi, e, 0).unwrap();
        fan.colors[1] = Some(2);
        assert!(fan.validate(&phi).is_err());
    }

    #[test]
    fn broom_hypotheses() {
        let phi = colored(Graph::path(4).unwrap(), 2, &[((1, 2), 1), ((2, 3), 2)]);
        let e = phi.graph().edge_between(0, 1).unwrap();
        let brooms = enumerate_simple_brooms(&phi, e, 0, 6).unwrap();
        assert_eq!(brooms.len(), 1);
        assert_eq!(brooms[0].vertices, vec![0, 1, 2, 3]);
        // |φ̄(y0) ∪ φ̄(y1)| = 2 < 4
        let v = check_broom(&phi, &brooms[0]).unwrap();
        assert!(!v.applies && v.holds);
    }
}
