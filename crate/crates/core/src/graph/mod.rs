//! Simple undirected graphs with sorted adjacency lists.

pub mod cayley;
pub mod spectrum;

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub use cayley::{bipartite_subgroup, cayley_graph, CayleyGraph};
pub use spectrum::{adjacency_spectrum, is_ramanujan, second_eigenvalue_bound, EigenInterval, RamanujanVerdict, Spectrum};

/// Opaque vertex key: a group element index or an edge of some underlying graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    Element(usize),
    Edge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    edge_offsets: Vec<usize>,
    labels: Option<Vec<VertexLabel>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph::from_sorted_adjacency(vec![Vec::new(); n])
    }

    /// Builds a simple graph; self-loops and repeated edges are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(Error::VertexOutOfRange(v));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::ParallelEdge(u.min(w[0] as usize), u.max(w[0] as usize)));
            }
        }
        Ok(Graph::from_sorted_adjacency(adj))
    }

    /// Builds from neighbor lists, checking symmetry and simplicity.
    pub fn from_adjacency(mut adj: Vec<Vec<u32>>) -> Result<Self> {
        let n = adj.len();
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(&v) = list.iter().find(|&&v| v as usize >= n) {
                return Err(Error::VertexOutOfRange(v as usize));
            }
            if list.binary_search(&(u as u32)).is_ok() {
                return Err(Error::SelfLoop(u));
            }
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::ParallelEdge(u.min(w[0] as usize), u.max(w[0] as usize)));
            }
        }
        for u in 0..n {
            for &v in &adj[u] {
                if adj[v as usize].binary_search(&(u as u32)).is_err() {
                    return Err(Error::InvalidParameter(format!("adjacency not symmetric at {u}-{v}")));
                }
            }
        }
        Ok(Graph::from_sorted_adjacency(adj))
    }

    fn from_sorted_adjacency(adj: Vec<Vec<u32>>) -> Self {
        let mut edge_offsets = Vec::with_capacity(adj.len() + 1);
        let mut acc = 0;
        for (u, list) in adj.iter().enumerate() {
            edge_offsets.push(acc);
            acc += list.iter().filter(|&&v| v as usize > u).count();
        }
        edge_offsets.push(acc);
        Graph { adj, edge_offsets, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Self {
        assert_eq!(labels.len(), self.vertex_count());
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|u| (u, (u + 1) % n))).unwrap()
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|u| (u - 1, u))).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        *self.edge_offsets.last().unwrap_or(&0)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// Common degree when every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Edges `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v as usize > u).map(move |&v| (u, v as usize)))
    }

    /// Position of the edge `{u, v}` in [`Graph::edges`] order.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = (u.min(v), u.max(v));
        let list = &self.adj[a];
        let pos = list.binary_search(&(b as u32)).ok()?;
        let first_above = list.partition_point(|&x| x as usize <= a);
        Some(self.edge_offsets[a] + pos - first_above)
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.vertex_count()];
        let mut count = 0;
        for s in 0..self.vertex_count() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !std::mem::replace(&mut seen[v as usize], true) {
                        queue.push_back(v as usize);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Proper 2-coloring by BFS (color 0 on each component's first vertex), or `None`.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut color = vec![u8::MAX; n];
        for s in 0..n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    let v = v as usize;
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Every edge of `self` is an edge of `other` (same vertex set).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.vertex_count() == other.vertex_count() && self.edges().all(|(u, v)| other.is_adjacent(u, v))
    }

    /// Same vertex count and identical edge sets.
    pub fn same_edges(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }

    /// Text format: `vertices=N edges=M` then one `u v` line per edge, `u < v`, ascending.
    pub fn to_text(&self) -> String {
        let mut s = format!("vertices={} edges={}\n", self.vertex_count(), self.edge_count());
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let (n, m) = parse_header(header)?;
        let mut edges = Vec::with_capacity(m);
        for (i, line) in lines.filter(|l| !l.trim().is_empty()).enumerate() {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) if u < v => edges.push((u, v)),
                _ => return Err(Error::Parse(format!("bad edge line {}: {line:?}", i + 2))),
            }
        }
        if edges.len() != m {
            return Err(Error::Parse(format!("header promises {m} edges, found {}", edges.len())));
        }
        if edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("edges not in ascending order".into()));
        }
        Graph::from_edges(n, edges)
    }
}

fn parse_header(line: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("bad graph header {line:?}"));
    let mut parts = line.split_whitespace();
    let n = parts.next().and_then(|p| p.strip_prefix("vertices=")).and_then(|x| x.parse().ok()).ok_or_else(bad)?;
    let m = parts.next().and_then(|p| p.strip_prefix("edges=")).and_then(|x| x.parse().ok()).ok_or_else(bad)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok((n, m))
}

/// Vertices are the edges of `g` (in [`Graph::edges`] order); two are adjacent
/// when they share an endpoint.
pub fn line_graph(g: &Graph) -> Graph {
    let mut edges = Vec::new();
    for v in 0..g.vertex_count() {
        let star: Vec<usize> = g.neighbors(v).iter().map(|&w| g.edge_index(v, w as usize).unwrap()).collect();
        for (i, &a) in star.iter().enumerate() {
            for &b in &star[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    let labels = g.edges().map(|(u, v)| VertexLabel::Edge(u, v)).collect();
    Graph::from_edges(g.edge_count(), edges).expect("two edges of a simple graph share at most one endpoint").with_labels(labels)
}

/// True iff `map` (a bijection `V(g1) → V(g2)`) and its inverse both carry edges to edges.
pub fn verify_isomorphism(map: &[usize], g1: &Graph, g2: &Graph) -> Result<bool> {
    let n = g1.vertex_count();
    if map.len() != n || g2.vertex_count() != n {
        return Err(Error::NotBijective);
    }
    let mut inverse = vec![usize::MAX; n];
    for (i, &m) in map.iter().enumerate() {
        if m >= n || inverse[m] != usize::MAX {
            return Err(Error::NotBijective);
        }
        inverse[m] = i;
    }
    if g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let forward = g1.edges().all(|(u, v)| g2.is_adjacent(map[u], map[v]));
    let backward = g2.edges().all(|(u, v)| g1.is_adjacent(inverse[u], inverse[v]));
    Ok(forward && backward)
}
