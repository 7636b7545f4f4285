//! Ordered graphs and the searches run on them: induced monotone paths,
//! clique densities, blowups and balanced bicliques.

mod amplify;
mod blowup;
mod density;
mod embed;
mod path;

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use amplify::{amplify_blowup, BicliqueOracle, ExactBicliqueOracle};
pub use blowup::{
    find_balanced_biclique, find_blowup, max_cross_biclique, verify_blowup, BicliqueSearch, Blowup, BlowupOptions,
    BlowupSearch,
};
pub use density::{binomial, clique_density, count_cliques, DensityEstimate, DensityMode};
pub use embed::{embed_monotone_path, path_blowup_instance};
pub use path::{find_induced_monotone_path, is_induced_monotone_path, PathOutcome, PathSearch};

/// A simple graph on vertices `0..n`, ordered by index.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct OrderedGraph {
    n: usize,
    adj: Vec<FixedBitSet>,
}

/// Wire form `{"n": 3, "edges": [[1,2]]}`: 1-based, `u < v`, sorted.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for OrderedGraph {
    type Error = Error;
    fn try_from(j: GraphJson) -> Result<Self> {
        let mut g = OrderedGraph::empty(j.n);
        for [a, b] in j.edges {
            for x in [a, b] {
                if x == 0 || x > j.n {
                    return Err(Error::VertexOutOfRange { index: x, n: j.n });
                }
            }
            if a == b {
                return Err(Error::InvalidInput(format!("loop at vertex {a}")));
            }
            g.add_edge(a - 1, b - 1);
        }
        Ok(g)
    }
}

impl From<OrderedGraph> for GraphJson {
    fn from(g: OrderedGraph) -> Self {
        GraphJson { n: g.n, edges: g.edges().map(|(a, b)| [a + 1, b + 1]).collect() }
    }
}

impl OrderedGraph {
    pub fn empty(n: usize) -> Self {
        Self { n, adj: vec![FixedBitSet::with_capacity(n); n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for v in 0..n {
            g.adj[v].insert_range(..);
            g.adj[v].set(v, false);
        }
        g
    }

    /// Builds a graph from 0-based edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::VertexOutOfRange { index: a.max(b) + 1, n });
            }
            if a == b {
                return Err(Error::InvalidInput(format!("loop at vertex {a}")));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    /// Erdős–Rényi G(n, p).
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut g = Self::empty(n);
        for b in 1..n {
            for a in 0..b {
                if rng.random_bool(p) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    /// The monotone path 0 – 1 – … – (n−1).
    pub fn monotone_path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// Complete multipartite graph on consecutive parts of the given sizes.
    pub fn complete_multipartite(sizes: &[usize]) -> Self {
        let n = sizes.iter().sum();
        let mut part = Vec::with_capacity(n);
        for (i, &s) in sizes.iter().enumerate() {
            part.extend(std::iter::repeat_n(i, s));
        }
        let mut g = Self::empty(n);
        for b in 1..n {
            for a in 0..b {
                if part[a] != part[b] {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b && a < self.n && b < self.n, "invalid edge ({a},{b})");
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a].set(b, false);
        self.adj[b].set(a, false);
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Edge density e(G) / C(n, 2); zero for n < 2.
    pub fn density(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        self.edge_count() as f64 / (self.n * (self.n - 1) / 2) as f64
    }

    /// Edges `(a, b)`, `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| self.adj[a].ones().filter(move |&b| b > a).map(move |b| (a, b)))
    }

    pub fn complement(&self) -> Self {
        let mut g = self.clone();
        for v in 0..self.n {
            g.adj[v].toggle_range(..);
            g.adj[v].set(v, false);
        }
        g
    }

    /// Subgraph induced on `vertices` (kept in the given order) relabelled
    /// `0..len`.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut g = Self::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Bitset over `0..n` containing `vertices`.
    pub fn vertex_set(&self, vertices: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.n);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    /// Graphviz rendering with 1-based labels.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in 0..self.n {
            let _ = writeln!(s, "  {};", v + 1);
        }
        for (a, b) in self.edges() {
            let _ = writeln!(s, "  {} -- {};", a + 1, b + 1);
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_examples() {
        let k4 = OrderedGraph::complete(4);
        assert_eq!(k4.complement().edge_count(), 0);
        let g = OrderedGraph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(g.complement().edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
        assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn json_round_trip() {
        let g = OrderedGraph::from_edges(4, &[(2, 3), (0, 1)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":4,"edges":[[1,2],[3,4]]}"#);
        assert_eq!(serde_json::from_str::<OrderedGraph>(&s).unwrap(), g);
        assert!(serde_json::from_str::<OrderedGraph>(r#"{"n":2,"edges":[[2,2]]}"#).is_err());
        assert!(serde_json::from_str::<OrderedGraph>(r#"{"n":2,"edges":[[1,3]]}"#).is_err());
    }

    #[test]
    fn multipartite_and_dot() {
        let g = OrderedGraph::complete_multipartite(&[2, 2]);
        assert_eq!(g.edge_count(), 4);
        assert!(!g.has_edge(0, 1) && g.has_edge(1, 2));
        assert!(g.to_dot().contains("2 -- 3;"));
        assert_eq!(g.induced(&[0, 2]).edge_count(), 1);
    }
}
