//! Simple undirected graphs with stable edge identifiers, the standard
//! constructors used throughout the crate, and graph6 text I/O.

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;

/// Stable identifier of an edge. Ids are assigned in insertion order and are
/// never reused, so colorings of `G` stay valid indices into `G - e`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: VertexId, n: usize },
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(VertexId, VertexId),
    #[error("{what} requires at least {min}, got {got}")]
    TooSmall { what: &'static str, min: usize, got: usize },
    #[error("infeasible construction: {0}")]
    Infeasible(String),
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    // slot per EdgeId; `None` after deletion
    edges: Vec<Option<[VertexId; 2]>>,
    // neighbors sorted by vertex id, each tagged with the connecting edge
    adj: Vec<Vec<(VertexId, EdgeId)>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in pairs {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds the edge `uv` and returns its fresh id.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::InvalidVertex { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if self.edge_between(u, v).is_some() {
            return Err(GraphError::ParallelEdge(u.min(v), u.max(v)));
        }
        let id = EdgeId(self.edges.len());
        self.edges.push(Some([u.min(v), u.max(v)]));
        for (a, b) in [(u, v), (v, u)] {
            let row = &mut self.adj[a];
            let pos = row.partition_point(|&(w, _)| w < b);
            row.insert(pos, (b, id));
        }
        self.m += 1;
        Ok(id)
    }

    /// `G - e`: the same vertex set, every other edge keeps its id.
    pub fn delete_edge(&self, e: EdgeId) -> Result<Graph, GraphError> {
        let [u, v] = self.endpoints(e).ok_or(GraphError::UnknownEdge(e))?;
        let mut g = self.clone();
        g.edges[e.0] = None;
        g.adj[u].retain(|&(_, id)| id != e);
        g.adj[v].retain(|&(_, id)| id != e);
        g.m -= 1;
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Upper bound (exclusive) on edge ids ever handed out by this graph.
    pub fn edge_capacity(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<[VertexId; 2]> {
        self.edges.get(e.0).copied().flatten()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.endpoints(e).is_some()
    }

    /// Live edges in id order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, [VertexId; 2])> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|uv| (EdgeId(i), uv)))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges().map(|(e, _)| e)
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    /// `(neighbor, edge)` pairs at `v`, sorted by neighbor id.
    pub fn incident(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let row = self.adj.get(u)?;
        row.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| row[i].1)
    }

    pub fn is_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_between(u, v).is_some()
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> Option<VertexId> {
        let [a, b] = self.endpoints(e)?;
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Exact average degree `2m/n`; zero for the null graph.
    pub fn average_degree(&self) -> Rational64 {
        if self.n == 0 {
            return Rational64::from_integer(0);
        }
        Rational64::new(2 * self.m as i64, self.n as i64)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Graph with vertex `v` renamed to `perm[v]`; edge ids are preserved.
    pub fn relabel(&self, perm: &[VertexId]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::Infeasible(format!(
                "permutation has length {}, graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::Infeasible("not a permutation".into()));
            }
        }
        let mut g = Graph::empty(self.n);
        g.edges = vec![None; self.edges.len()];
        for (e, [u, v]) in self.edges() {
            let (a, b) = (perm[u], perm[v]);
            g.edges[e.0] = Some([a.min(b), a.max(b)]);
            g.adj[a].push((b, e));
            g.adj[b].push((a, e));
        }
        for row in &mut g.adj {
            row.sort_unstable();
        }
        g.m = self.m;
        Ok(g)
    }

    /// Sorted list of `(u, v)` pairs with `u < v`; convenient for equality up to edge ids.
    pub fn edge_pairs(&self) -> Vec<(VertexId, VertexId)> {
        let mut pairs: Vec<_> = self.edges().map(|(_, [u, v])| (u, v)).collect();
        pairs.sort_unstable();
        pairs
    }

    // ---- constructors -------------------------------------------------

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::TooSmall { what: "cycle", min: 3, got: n });
        }
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &pairs)
    }

    pub fn path(n: usize) -> Result<Graph, GraphError> {
        if n < 1 {
            return Err(GraphError::TooSmall { what: "path", min: 1, got: n });
        }
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &pairs)
    }

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        if n < 1 {
            return Err(GraphError::TooSmall { what: "complete graph", min: 1, got: n });
        }
        let mut pairs = Vec::new();
        for j in 1..n {
            for i in 0..j {
                pairs.push((i, j));
            }
        }
        Graph::from_edges(n, &pairs)
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Graph {
        let pairs: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &pairs).expect("star wiring is simple")
    }

    pub fn petersen() -> Graph {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &pairs).expect("petersen wiring is simple")
    }

    /// Woodall's sparse example: `k` vertices of degree 4 (ids `0..k`), each
    /// adjacent only to degree-`delta` vertices, and `2k` vertices of degree
    /// `delta` (ids `k..3k`), each with two degree-4 neighbors.
    ///
    /// The degree-`delta` vertices sit on a circulant of degree `delta - 2`;
    /// the `i`-th degree-4 vertex is joined to circulant positions
    /// `4i..4i+3 (mod 2k)`, which covers every position exactly twice.
    pub fn woodall_example(delta: usize, k: usize) -> Result<Graph, GraphError> {
        if delta < 6 {
            return Err(GraphError::Infeasible(format!("delta = {delta} < 6")));
        }
        if k < 2 {
            return Err(GraphError::Infeasible(format!(
                "k = {k} < 2: four distinct heavy neighbors need 2k >= 4"
            )));
        }
        let inner = delta - 2;
        if inner > 2 * k - 1 {
            return Err(GraphError::Infeasible(format!(
                "a {inner}-regular graph on {} vertices does not exist (need k >= {})",
                2 * k,
                (delta - 1).div_ceil(2)
            )));
        }
        let ring = 2 * k;
        let b = |pos: usize| k + pos % ring;
        let mut g = Graph::empty(3 * k);
        for i in 0..k {
            for j in 0..4 {
                g.add_edge(i, b(4 * i + j))?;
            }
        }
        for pos in 0..ring {
            for s in 1..=inner / 2 {
                let other = (pos + s) % ring;
                if g.edge_between(b(pos), b(other)).is_none() {
                    g.add_edge(b(pos), b(other))?;
                }
            }
            if inner % 2 == 1 && pos < k {
                g.add_edge(b(pos), b(pos + k))?;
            }
        }
        Ok(g)
    }

    // ---- graph6 ---------------------------------------------------------

    /// Parses a single graph6 line. A leading `>>graph6<<` header and
    /// surrounding whitespace are tolerated.
    pub fn from_graph6(line: &str) -> Result<Graph, GraphError> {
        let trimmed = line.trim_end_matches(['\n', '\r']);
        let (bytes, base) = match trimmed.strip_prefix(">>graph6<<") {
            Some(rest) => (rest.as_bytes(), ">>graph6<<".len()),
            None => (trimmed.as_bytes(), 0),
        };
        let err = |offset: usize, reason: &str| GraphError::Graph6 {
            offset: base + offset,
            reason: reason.to_string(),
        };
        for (i, &c) in bytes.iter().enumerate() {
            if !(63..=126).contains(&c) {
                return Err(err(i, &format!("byte {c:#04x} outside 63..=126")));
            }
        }
        let six = |i: usize| (bytes[i] - 63) as u64;
        let (n, mut pos) = match bytes.first() {
            None => return Err(err(0, "empty input")),
            Some(&126) => {
                if bytes.get(1) == Some(&126) {
                    if bytes.len() < 8 {
                        return Err(err(bytes.len(), "truncated 8-byte size prefix"));
                    }
                    let n = (2..8).fold(0u64, |acc, i| (acc << 6) | six(i));
                    if n < 258048 {
                        return Err(err(0, "non-canonical 8-byte size prefix"));
                    }
                    (n, 8)
                } else {
                    if bytes.len() < 4 {
                        return Err(err(bytes.len(), "truncated 4-byte size prefix"));
                    }
                    let n = (1..4).fold(0u64, |acc, i| (acc << 6) | six(i));
                    if n < 63 {
                        return Err(err(0, "non-canonical 4-byte size prefix"));
                    }
                    (n, 4)
                }
            }
            Some(_) => (six(0), 1),
        };
        let n = usize::try_from(n).map_err(|_| err(0, "vertex count overflows usize"))?;
        let bits = n.saturating_mul(n.saturating_sub(1)) / 2;
        let need = bits.div_ceil(6);
        if bytes.len() - pos != need {
            return Err(err(
                bytes.len().min(pos + need),
                &format!("expected {need} data bytes, found {}", bytes.len() - pos),
            ));
        }
        let mut g = Graph::empty(n);
        let mut bit = 0usize;
        for j in 1..n {
            for i in 0..j {
                let byte = six(pos + bit / 6);
                if (byte >> (5 - bit % 6)) & 1 == 1 {
                    g.add_edge(i, j).expect("graph6 bits encode a simple graph");
                }
                bit += 1;
            }
        }
        if bits % 6 != 0 {
            let last = pos + need - 1;
            let pad = 6 - bits % 6;
            if six(last) & ((1 << pad) - 1) != 0 {
                return Err(err(last, "nonzero padding bits"));
            }
        }
        pos += need;
        debug_assert_eq!(pos, bytes.len());
        Ok(g)
    }

    /// Canonical graph6 encoding (no header).
    pub fn to_graph6(&self) -> String {
        let n = self.n as u64;
        assert!(n <= 68_719_476_735, "graph6 size limit exceeded");
        let mut out: Vec<u8> = Vec::new();
        if n <= 62 {
            out.push(n as u8 + 63);
        } else if n <= 258_047 {
            out.push(126);
            for s in [12, 6, 0] {
                out.push(((n >> s) & 63) as u8 + 63);
            }
        } else {
            out.extend([126, 126]);
            for s in [30, 24, 18, 12, 6, 0] {
                out.push(((n >> s) & 63) as u8 + 63);
            }
        }
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..self.n {
            let row = &self.adj[j];
            for i in 0..j {
                let present = row.binary_search_by_key(&i, |&(w, _)| w).is_ok();
                acc = (acc << 1) | present as u8;
                filled += 1;
                if filled == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push((acc << (6 - filled)) + 63);
        }
        String::from_utf8(out).expect("graph6 bytes are ASCII")
    }
}

/// Reads newline-separated graph6 text, skipping blank lines. Each entry
/// carries its 0-based line index so callers can report positions.
pub fn parse_graph6_lines(text: &str) -> Vec<(usize, Result<Graph, GraphError>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i, Graph::from_graph6(l.trim())))
        .collect()
}
