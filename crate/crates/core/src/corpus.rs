//! Isomorphism-free enumeration of small graphs.
//!
//! Canonical labels come from a plain individualization/refinement search:
//! refine the ordered partition to an equitable one, branch on every vertex
//! of the first non-singleton cell, and keep the smallest adjacency code over
//! all discrete leaves. Adequate up to about ten vertices.

use std::collections::HashSet;

use crate::graph::{Graph, GraphError};

/// Largest order for which a canonical code fits in a `u64`.
pub const MAX_CANONICAL_ORDER: usize = 11;

fn rows_of(g: &Graph) -> Vec<u32> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).fold(0u32, |acc, w| acc | 1 << w))
        .collect()
}

fn refine(rows: &[u32], cells: &mut Vec<Vec<usize>>) {
    'outer: loop {
        for s in 0..cells.len() {
            let splitter: u32 = cells[s].iter().fold(0, |acc, &v| acc | 1 << v);
            for c in 0..cells.len() {
                if cells[c].len() < 2 {
                    continue;
                }
                let count = |v: usize| (rows[v] & splitter).count_ones();
                let first = count(cells[c][0]);
                if cells[c].iter().all(|&v| count(v) == first) {
                    continue;
                }
                let mut cell = std::mem::take(&mut cells[c]);
                cell.sort_by_key(|&v| (count(v), v));
                let mut parts: Vec<Vec<usize>> = Vec::new();
                let mut last = None;
                for v in cell {
                    let k = count(v);
                    if last != Some(k) {
                        parts.push(Vec::new());
                        last = Some(k);
                    }
                    parts.last_mut().unwrap().push(v);
                }
                cells.splice(c..=c, parts);
                continue 'outer;
            }
        }
        return;
    }
}

fn leaf_code(rows: &[u32], cells: &[Vec<usize>]) -> u64 {
    let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
    let mut code = 0u64;
    for j in 1..order.len() {
        for i in 0..j {
            code = (code << 1) | ((rows[order[i]] >> order[j]) & 1) as u64;
        }
    }
    code
}

fn search(rows: &[u32], mut cells: Vec<Vec<usize>>, best: &mut Option<u64>) {
    refine(rows, &mut cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let code = leaf_code(rows, &cells);
        if best.is_none_or(|b| code < b) {
            *best = Some(code);
        }
        return;
    };
    for &v in &cells[target] {
        let mut next = cells.clone();
        let rest: Vec<usize> = cells[target].iter().copied().filter(|&w| w != v).collect();
        next.splice(target..=target, [vec![v], rest]);
        search(rows, next, best);
    }
}

/// Canonical adjacency code: equal for two graphs of the same order iff they
/// are isomorphic.
pub fn canonical_code(g: &Graph) -> Result<u64, GraphError> {
    let n = g.vertex_count();
    if n > MAX_CANONICAL_ORDER {
        return Err(GraphError::Infeasible(format!(
            "canonical codes support at most {MAX_CANONICAL_ORDER} vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok(0);
    }
    let rows = rows_of(g);
    let mut best = None;
    search(&rows, vec![(0..n).collect()], &mut best);
    Ok(best.expect("search visits at least one leaf"))
}

/// Rebuilds the graph a canonical code describes.
pub fn graph_from_code(n: usize, code: u64) -> Graph {
    let bits = n * n.saturating_sub(1) / 2;
    let mut g = Graph::empty(n);
    let mut k = bits;
    for j in 1..n {
        for i in 0..j {
            k -= 1;
            if (code >> k) & 1 == 1 {
                g.add_edge(i, j).expect("code describes a simple graph");
            }
        }
    }
    g
}

pub fn canonical_form(g: &Graph) -> Result<Graph, GraphError> {
    Ok(graph_from_code(g.vertex_count(), canonical_code(g)?))
}

/// All graphs on exactly `n` vertices up to isomorphism, sorted by
/// `(edge count, canonical code)`.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    if n > 10 {
        return Err(GraphError::Infeasible(format!("enumeration capped at 10 vertices, got {n}")));
    }
    let mut level: Vec<u64> = vec![0];
    for order in 1..=n {
        let prev = order - 1;
        let mut seen = HashSet::new();
        for &code in &level {
            let base = graph_from_code(prev, code);
            for mask in 0u32..(1 << prev) {
                let mut grown = Graph::empty(order);
                for (_, [u, v]) in base.edges() {
                    grown.add_edge(u, v)?;
                }
                for w in 0..prev {
                    if mask >> w & 1 == 1 {
                        grown.add_edge(w, prev)?;
                    }
                }
                seen.insert(canonical_code(&grown)?);
            }
        }
        level = seen.into_iter().collect();
        level.sort_unstable_by_key(|&c| (c.count_ones(), c));
    }
    Ok(level.into_iter().map(|c| graph_from_code(n, c)).collect())
}

/// All graphs with `1..=max_n` vertices, in increasing order.
pub fn graphs_up_to(max_n: usize) -> Result<Vec<Graph>, GraphError> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(all_graphs(n)?);
    }
    Ok(out)
}

/// Connected graphs with `1..=max_n` vertices.
pub fn connected_graphs_up_to(max_n: usize) -> Result<Vec<Graph>, GraphError> {
    Ok(graphs_up_to(max_n)?.into_iter().filter(Graph::is_connected).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        // number of graphs on n unlabeled vertices
        let expect = [1, 1, 2, 4, 11, 34, 156];
        for (n, &want) in expect.iter().enumerate() {
            assert_eq!(all_graphs(n).unwrap().len(), want, "n = {n}");
        }
    }

    #[test]
    fn canonical_code_is_label_invariant() {
        let p = Graph::petersen();
        let code = canonical_code(&p).unwrap();
        let perm = [3, 7, 1, 0, 9, 2, 8, 5, 4, 6];
        assert_eq!(canonical_code(&p.relabel(&perm).unwrap()).unwrap(), code);
        let c5 = Graph::cycle(5).unwrap();
        let mut other = Graph::empty(5);
        for (u, v) in [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)] {
            other.add_edge(u, v).unwrap();
        }
        assert_eq!(canonical_code(&c5).unwrap(), canonical_code(&other).unwrap());
        let p5 = Graph::path(5).unwrap();
        assert_ne!(canonical_code(&c5).unwrap(), canonical_code(&p5).unwrap());
    }

    #[test]
    fn code_round_trip() {
        for g in all_graphs(5).unwrap() {
            let code = canonical_code(&g).unwrap();
            assert_eq!(canonical_code(&graph_from_code(5, code)).unwrap(), code);
        }
    }
}
