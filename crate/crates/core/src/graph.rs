//! Simple undirected graphs and rooted graphs, plus the repo-wide JSON
//! format `{"n": 3, "edges": [[0,1],[1,2]], "roots": [0,2]}`.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count accepted from untrusted input.
pub const MAX_VERTICES: usize = 4096;

/// A simple graph on vertices `0..n`. Adjacency lists are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Rejects loops, out-of-range endpoints and duplicates.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edge_count += 1;
                Ok(())
            }
        }
    }

    /// Like [`add_edge`](Self::add_edge) but a duplicate is silently ignored.
    /// Returns whether the edge was new.
    pub fn merge_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        match self.add_edge(u, v) {
            Ok(()) => Ok(true),
            Err(Error::DuplicateEdge(..)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == n
    }

    pub fn is_tree(&self) -> bool {
        let n = self.vertex_count();
        n > 0 && self.edge_count + 1 == n && self.is_connected()
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.degree(v) == 1)
            .collect()
    }

    /// One bitset row per vertex.
    pub fn adjacency_rows(&self) -> Vec<FixedBitSet> {
        let n = self.vertex_count();
        self.adj
            .iter()
            .map(|nbrs| {
                let mut row = FixedBitSet::with_capacity(n);
                for &v in nbrs {
                    row.insert(v);
                }
                row
            })
            .collect()
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// Built-in graphs by name: `k<n>` (complete, one digit), `k<a><b>` or
    /// `k<a>,<b>` (complete bipartite), `c<n>` (cycle), `path<n>` (path on n
    /// vertices), `star<m>` (`K_{1,m}`), `empty<n>`.
    pub fn named(name: &str) -> Option<Self> {
        let name = name.trim().to_ascii_lowercase();
        let num = |s: &str| s.parse::<usize>().ok().filter(|&n| n <= 64);
        if let Some(rest) = name.strip_prefix("path") {
            return num(rest).filter(|&n| n >= 1).map(Graph::path);
        }
        if let Some(rest) = name.strip_prefix("star") {
            return num(rest)
                .filter(|&m| m >= 1)
                .map(|m| Graph::complete_bipartite(1, m));
        }
        if let Some(rest) = name.strip_prefix("empty") {
            return num(rest).map(Graph::new);
        }
        if let Some(rest) = name.strip_prefix('c') {
            return num(rest).filter(|&n| n >= 3).map(Graph::cycle);
        }
        if let Some(rest) = name.strip_prefix('k') {
            if let Some((a, b)) = rest.split_once(',') {
                return Some(Graph::complete_bipartite(num(a)?, num(b)?));
            }
            return match rest.len() {
                1 => num(rest).filter(|&n| n >= 1).map(Graph::complete),
                2 => {
                    let a = num(&rest[..1])?;
                    let b = num(&rest[1..])?;
                    Some(Graph::complete_bipartite(a, b))
                }
                _ => None,
            };
        }
        None
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(RootedGraph::from_json_str(s)?.graph)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson {
            n: self.vertex_count(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
            roots: Vec::new(),
        })
        .expect("graph serializes")
    }
}

/// A graph with a designated set of root vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RootedGraph {
    graph: Graph,
    is_root: Vec<bool>,
}

impl RootedGraph {
    pub fn new(graph: Graph, roots: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = graph.vertex_count();
        let mut is_root = vec![false; n];
        for r in roots {
            if r >= n {
                return Err(Error::VertexOutOfRange { vertex: r, n });
            }
            if is_root[r] {
                return Err(Error::DuplicateRoot(r));
            }
            is_root[r] = true;
        }
        Ok(RootedGraph { graph, is_root })
    }

    pub fn unrooted(graph: Graph) -> Self {
        let n = graph.vertex_count();
        RootedGraph {
            graph,
            is_root: vec![false; n],
        }
    }

    /// A tree with its leaves as roots.
    pub fn leaf_rooted(graph: Graph) -> Self {
        let leaves = graph.leaves();
        RootedGraph::new(graph, leaves).expect("leaves are in range")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn is_root(&self, v: usize) -> bool {
        self.is_root[v]
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.is_root[v])
            .collect()
    }

    pub fn non_roots(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| !self.is_root[v])
            .collect()
    }

    pub fn root_count(&self) -> usize {
        self.is_root.iter().filter(|&&r| r).count()
    }

    pub fn non_root_count(&self) -> usize {
        self.vertex_count() - self.root_count()
    }

    /// Copy with `extra` added to the root set.
    pub fn with_extra_roots(&self, extra: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        for &v in extra {
            if v >= out.vertex_count() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: out.vertex_count(),
                });
            }
            out.is_root[v] = true;
        }
        Ok(out)
    }

    /// True when the graph is a tree whose root set is exactly its leaves.
    pub fn is_leaf_rooted_tree(&self) -> bool {
        self.graph.is_tree()
            && (0..self.vertex_count()).all(|v| self.is_root[v] == (self.graph.degree(v) == 1))
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(s)?;
        raw.into_rooted()
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let raw: GraphJson = serde_json::from_value(v)?;
        raw.into_rooted()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson {
            n: self.vertex_count(),
            edges: self.graph.edges().map(|(u, v)| [u, v]).collect(),
            roots: self.roots(),
        })
        .expect("graph serializes")
    }
}

impl Serialize for RootedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        GraphJson::deserialize(d)?
            .into_rooted()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    roots: Vec<usize>,
}

impl GraphJson {
    fn into_rooted(self) -> Result<RootedGraph> {
        if self.n > MAX_VERTICES {
            return Err(Error::TooManyVertices(self.n, MAX_VERTICES));
        }
        // endpoints may come in either order; [1,0] and [0,1] are the same edge
        let g = Graph::from_edges(self.n, self.edges.iter().map(|&[u, v]| (u, v)))?;
        RootedGraph::new(g, self.roots)
    }
}
