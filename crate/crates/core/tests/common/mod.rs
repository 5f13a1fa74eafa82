//! Independent oracles shared by the integration tests. None of them call
//! into the library code they check, apart from reading graph structure.

#![allow(dead_code)]

use std::collections::BTreeSet;

use critlab_core::coloring::{Color, PartialEdgeColoring};
use critlab_core::{corpus, solver, Graph, SolveBudget};

/// Decodes graph6 straight from the format description: first byte is
/// `n + 63` (small `n` only), then the upper triangle column by column,
/// six bits per byte, most significant first.
pub fn decode_graph6_small(s: &str) -> (usize, BTreeSet<(usize, usize)>) {
    let raw: Vec<u8> = s.bytes().map(|b| b - 63).collect();
    let n = raw[0] as usize;
    let mut bits = Vec::new();
    for &b in &raw[1..] {
        for shift in (0..6).rev() {
            bits.push((b >> shift) & 1 == 1);
        }
    }
    let mut edges = BTreeSet::new();
    let mut k = 0;
    for col in 1..n {
        for row in 0..col {
            if bits[k] {
                edges.insert((row, col));
            }
            k += 1;
        }
    }
    (n, edges)
}

pub fn edge_set(g: &Graph) -> BTreeSet<(usize, usize)> {
    g.edges().map(|(_, [u, v])| (u.min(v), u.max(v))).collect()
}

/// Vertex coloring of the line graph by plain backtracking: vertices of
/// `L(G)` are edges of `G`, adjacent when they share an end.
pub fn line_graph_colorable(g: &Graph, k: usize) -> bool {
    let edges: Vec<(usize, usize)> = g.edges().map(|(_, [u, v])| (u, v)).collect();
    let m = edges.len();
    let adj: Vec<Vec<usize>> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| {
                    j != i && {
                        let (a, b) = edges[i];
                        let (c, d) = edges[j];
                        a == c || a == d || b == c || b == d
                    }
                })
                .collect()
        })
        .collect();
    fn go(i: usize, colors: &mut Vec<usize>, adj: &[Vec<usize>], k: usize, used: usize) -> bool {
        if i == colors.len() {
            return true;
        }
        // colors above `used` are interchangeable; try only one of them
        for c in 1..=k.min(used + 1) {
            if adj[i].iter().all(|&j| colors[j] != c) {
                colors[i] = c;
                if go(i + 1, colors, adj, k, used.max(c)) {
                    return true;
                }
                colors[i] = 0;
            }
        }
        false
    }
    let mut colors = vec![0; m];
    go(0, &mut colors, &adj, k, 0)
}

pub fn line_graph_chromatic_index(g: &Graph) -> usize {
    if g.edge_count() == 0 {
        return 0;
    }
    let delta = g.max_degree();
    if line_graph_colorable(g, delta) {
        delta
    } else {
        delta + 1
    }
}

/// Edge-Δ-criticality straight from the definition, using the line-graph
/// oracle for every chromatic index involved.
pub fn brute_force_critical(g: &Graph) -> bool {
    let delta = g.max_degree();
    if g.edge_count() == 0 || line_graph_colorable(g, delta) {
        return false;
    }
    g.edge_ids().all(|e| {
        let h = g.delete_edge(e).unwrap();
        line_graph_colorable(&h, delta)
    })
}

/// `(X1, N(X1), Z1, Z2)` with the degree thresholds given as integers
/// (`d <= x1_max`, `d >= z1_min`).
pub fn classify(g: &Graph, x1_max: i64, z1_min: i64) -> [Vec<usize>; 4] {
    let n = g.vertex_count();
    let x1: Vec<usize> = (0..n).filter(|&v| (g.degree(v) as i64) <= x1_max).collect();
    let nx1: Vec<usize> = (0..n)
        .filter(|&v| x1.iter().any(|&x| g.is_adjacent(x, v)))
        .collect();
    let mut z1 = Vec::new();
    let mut z2 = Vec::new();
    for v in 0..n {
        if x1.contains(&v) || nx1.contains(&v) {
            continue;
        }
        if g.degree(v) as i64 >= z1_min {
            z1.push(v);
        } else {
            z2.push(v);
        }
    }
    [x1, nx1, z1, z2]
}

/// All Kierstead paths from `y0 y1` with at most `max_edges` edges, by
/// recursion over vertex sequences checked against the definition.
pub fn kierstead_paths_oracle(
    phi: &PartialEdgeColoring,
    y0: usize,
    y1: usize,
    max_edges: usize,
) -> Vec<Vec<usize>> {
    let g = phi.graph();
    let mut out = Vec::new();
    let mut seq = vec![y0, y1];
    fn rec(phi: &PartialEdgeColoring, seq: &mut Vec<usize>, max_edges: usize, out: &mut Vec<Vec<usize>>) {
        out.push(seq.clone());
        if seq.len() - 1 == max_edges {
            return;
        }
        let g = phi.graph();
        let last = *seq.last().unwrap();
        for z in 0..g.vertex_count() {
            if seq.contains(&z) {
                continue;
            }
            let Some(e) = g.edge_between(last, z) else { continue };
            let Some(c) = phi.color(e) else { continue };
            if seq.iter().any(|&h| missing(phi, h).contains(&c)) {
                seq.push(z);
                rec(phi, seq, max_edges, out);
                seq.pop();
            }
        }
    }
    if g.is_adjacent(y0, y1) && max_edges >= 1 {
        rec(phi, &mut seq, max_edges, &mut out);
    }
    out.sort();
    out
}

/// Missing colors at `v` recomputed from incident edge colors.
pub fn missing(phi: &PartialEdgeColoring, v: usize) -> BTreeSet<Color> {
    let seen: BTreeSet<Color> = phi
        .graph()
        .incident(v)
        .iter()
        .filter_map(|&(_, e)| phi.color(e))
        .collect();
    (1..=phi.palette() as Color).filter(|c| !seen.contains(c)).collect()
}

/// The edge-Δ-critical connected graphs on at most `max_n` vertices.
pub fn critical_corpus(max_n: usize) -> Vec<Graph> {
    corpus::connected_graphs_up_to(max_n)
        .unwrap()
        .into_iter()
        .filter(|g| {
            g.edge_count() > 0
                && solver::is_edge_delta_critical(g, &SolveBudget::unlimited())
                    .unwrap()
                    .is_critical
        })
        .collect()
}

/// Maps `f` over `items` on all available cores, keeping input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    let chunk = items.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|part| s.spawn(|| part.iter().map(&f).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    })
}
