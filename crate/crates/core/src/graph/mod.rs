//! Small undirected simple graphs stored as per-vertex bit rows.
//!
//! Every graph in this crate has between 1 and [`MAX_VERTICES`] vertices.
//! Vertices are 0-based in the API; text formats and the CLI use 1-based labels.

mod canon;
mod count;
mod enumerate;
mod family;
mod graph6;

pub use canon::{canonical_form, canonical_labeling, CanonicalForm, MAX_CANONICAL};
pub use count::{
    binomial, count_induced_copies, for_each_subset_code, induced_density, InducedMatcher,
};
pub use enumerate::{enumerate_free_graphs, Hosts};
pub use family::{contains_forbidden, contains_subgraph, ForbiddenFamily};
pub use graph6::{parse_graph6, write_graph6};

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 32;

/// Undirected simple graph on `n <= 32` vertices.
///
/// Row `v` of the adjacency has bit `u` set iff `{u, v}` is an edge. Rows are
/// kept symmetric, loop-free, and zero beyond bit `n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u32; MAX_VERTICES],
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::Size(format!(
                "graphs must have 1..={MAX_VERTICES} vertices, got {n}"
            )));
        }
        Ok(Graph {
            n,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for v in 0..n {
            for u in 0..v {
                g.set_edge(u, v, true);
            }
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::arg(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).expect("petersen is well formed")
    }

    /// A single edge `{0, 1}` plus `n - 2` isolated vertices.
    pub fn single_edge(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::arg("edge:<n> needs n >= 2"));
        }
        Graph::from_edges(n, &[(0, 1)])
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Bitmask of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> u32 {
        if self.n == MAX_VERTICES {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u32 {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[v] >> u & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::arg(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::arg(format!("self-loop at vertex {u}")));
        }
        self.set_edge(u, v, true);
        Ok(())
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, u: usize, v: usize, on: bool) {
        if on {
            self.adj[u] |= 1 << v;
            self.adj[v] |= 1 << u;
        } else {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted by `v` then `u`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.n {
            for u in 0..v {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Graph on `|s|` vertices induced by `s`, relabelled by increasing index.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<Graph> {
        if s.is_empty() {
            return Err(Error::arg("induced subgraph of an empty vertex set"));
        }
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&v| v >= self.n) {
            return Err(Error::arg(format!(
                "vertex {bad} out of range for {} vertices",
                self.n
            )));
        }
        Ok(self.induced_by_order(&sorted))
    }

    /// Induced subgraph where new vertex `i` is old vertex `order[i]`.
    /// The caller guarantees `order` is nonempty, distinct and in range.
    pub(crate) fn induced_by_order(&self, order: &[usize]) -> Graph {
        let mut g = Graph {
            n: order.len(),
            adj: [0; MAX_VERTICES],
        };
        for (i, &vi) in order.iter().enumerate() {
            for (j, &vj) in order.iter().enumerate().take(i) {
                if self.has_edge(vi, vj) {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    }

    /// Relabel so that vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(Error::arg("not a permutation"));
            }
            seen |= 1 << p;
        }
        let mut g = Graph::empty(self.n)?;
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v], true);
        }
        Ok(g)
    }

    /// Upper-triangle adjacency in graph6 column order (`(0,1), (0,2), (1,2),
    /// (0,3), ...`), first pair in the most significant position. Only
    /// meaningful for `n <= 11`.
    pub(crate) fn upper_code(&self) -> u64 {
        debug_assert!(self.n <= 11);
        let mut code = 0u64;
        for j in 1..self.n {
            for i in 0..j {
                code = code << 1 | self.has_edge(i, j) as u64;
            }
        }
        code
    }

    /// Graph on `n` vertices whose [`upper_code`](Self::upper_code) is `code`.
    pub(crate) fn from_upper_code(n: usize, code: u64) -> Graph {
        let pairs = n * (n - 1) / 2;
        let mut g = Graph {
            n,
            adj: [0; MAX_VERTICES],
        };
        let mut k = pairs;
        for j in 1..n {
            for i in 0..j {
                k -= 1;
                if code >> k & 1 == 1 {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    }

    /// Builtin keywords: `k<n>`, `c<n>`, `p<n>` (path), `petersen`,
    /// `empty:<n>`, `edge:<n>`.
    pub fn named(name: &str) -> Option<Result<Graph>> {
        let lower = name.to_ascii_lowercase();
        if lower == "petersen" {
            return Some(Ok(Graph::petersen()));
        }
        let n_after = |prefix: &str| -> Option<usize> { lower.strip_prefix(prefix)?.parse().ok() };
        if let Some(n) = n_after("empty:") {
            return Some(Graph::empty(n));
        }
        if let Some(n) = n_after("edge:") {
            return Some(Graph::single_edge(n));
        }
        if let Some(n) = n_after("k") {
            return Some(Graph::complete(n));
        }
        if let Some(n) = n_after("c") {
            return Some(Graph::cycle(n));
        }
        if let Some(n) = n_after("p") {
            return Some(Graph::path(n));
        }
        None
    }

    /// A builtin keyword, or else a graph6 string.
    pub fn from_spec(spec: &str) -> Result<Graph> {
        match Graph::named(spec) {
            Some(g) => g,
            None => parse_graph6(spec),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {:?})", self.n, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph6(self))
    }
}
