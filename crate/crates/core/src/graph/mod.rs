//! Simple undirected graphs with cached hop distances.
//!
//! Vertices are dense `0..n` indices. A [`Graph`] is immutable once built;
//! the all-pairs distance table is computed lazily on first use and shared
//! by every analysis that reads the graph.

mod catalog;
pub(crate) mod distance;
pub mod graph6;
pub mod io;
mod metrics;

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub use catalog::*;
pub use distance::{DistanceData, UNREACHABLE};
pub use metrics::GraphMetrics;

pub type Vertex = usize;

pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
    distances: OnceLock<DistanceData>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse into one;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for nbrs in &mut adj {
            nbrs.sort_unstable();
            nbrs.dedup();
            edge_count += nbrs.len();
        }
        Ok(Graph {
            adj,
            edge_count: edge_count / 2,
            distances: OnceLock::new(),
        })
    }

    /// Builds a graph from a symmetric predicate evaluated on every pair
    /// `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(Vertex, Vertex) -> bool) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Self::from_edges(n, edges).expect("pairs u < v are always valid edges")
    }

    pub fn empty(n: usize) -> Self {
        Self::from_fn(n, |_, _| false)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, x: Vertex) -> &[Vertex] {
        &self.adj[x]
    }

    pub fn degree(&self, x: Vertex) -> usize {
        self.adj[x].len()
    }

    pub fn is_adjacent(&self, x: Vertex, y: Vertex) -> bool {
        self.adj[x].binary_search(&y).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Common valency, or `None` if degrees differ. The null graph has none.
    pub fn valency(&self) -> Option<usize> {
        let k = self.adj.first()?.len();
        self.adj.iter().all(|a| a.len() == k).then_some(k)
    }

    pub fn distances(&self) -> &DistanceData {
        self.distances.get_or_init(|| DistanceData::compute(self))
    }

    pub fn is_connected(&self) -> bool {
        self.distances().connected()
    }

    pub fn check_vertex(&self, x: Vertex) -> Result<()> {
        if x < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: x,
                n: self.n(),
            })
        }
    }

    /// Fails unless the graph is connected and regular; returns the valency.
    pub fn require_connected_regular(&self) -> Result<usize> {
        if self.n() == 0 || !self.is_connected() {
            return Err(Error::Disconnected);
        }
        self.valency().ok_or(Error::NotRegular)
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the
    /// given order. The returned vector maps new labels back to old ones.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Result<(Graph, Vec<Vertex>)> {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in self.neighbors(v) {
                let j = index[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Ok((Graph::from_edges(vertices.len(), edges)?, vertices.to_vec()))
    }

    /// The local graph at `x`: the subgraph induced on its neighbours.
    pub fn local_graph(&self, x: Vertex) -> Result<(Graph, Vec<Vertex>)> {
        self.check_vertex(x)?;
        self.induced_subgraph(self.neighbors(x))
    }

    pub fn metrics(&self) -> GraphMetrics {
        GraphMetrics::compute(self)
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n(), |u, v| !self.is_adjacent(u, v))
    }
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        Graph {
            adj: self.adj.clone(),
            edge_count: self.edge_count,
            distances: self.distances.clone(),
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edge_count)
            .finish()
    }
}
