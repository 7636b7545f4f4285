//! Growing a blowup of a pattern graph H one edge at a time: each edge of H
//! asks an oracle for a biclique between the two current parts, then all
//! other parts are cut down to the new common size. Completeness already
//! established between earlier pairs survives taking subsets.

use super::blowup::max_cross_biclique;
use super::OrderedGraph;
use crate::error::{Error, Result};

/// Finds a balanced biclique between two disjoint vertex lists.
pub trait BicliqueOracle {
    fn find(&self, g: &OrderedGraph, left: &[usize], right: &[usize]) -> Option<(Vec<usize>, Vec<usize>)>;
}

/// Maximum balanced biclique by branch and bound.
#[derive(Clone, Copy, Debug)]
pub struct ExactBicliqueOracle {
    pub node_budget: u64,
}

impl Default for ExactBicliqueOracle {
    fn default() -> Self {
        Self { node_budget: 5_000_000 }
    }
}

impl BicliqueOracle for ExactBicliqueOracle {
    fn find(&self, g: &OrderedGraph, left: &[usize], right: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
        max_cross_biclique(g, left, right, self.node_budget).0
    }
}

/// Returns `W_i ⊆ parts[i]` of equal size with `(W_a, W_b)` complete for
/// every edge `{a, b}` of H, or the first edge on which the oracle fails.
pub fn amplify_blowup(
    g: &OrderedGraph,
    parts: &[Vec<usize>],
    h_edges: &[(usize, usize)],
    oracle: &dyn BicliqueOracle,
) -> Result<Vec<Vec<usize>>> {
    let k = parts.len();
    let t = parts.first().map_or(0, Vec::len);
    if parts.iter().any(|p| p.len() != t) {
        return Err(Error::InvalidInput("parts must have equal sizes".into()));
    }
    let mut seen = vec![false; g.n()];
    for &v in parts.iter().flatten() {
        if v >= g.n() || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidInput(format!("parts not disjoint or out of range at vertex {v}")));
        }
    }
    for &(a, b) in h_edges {
        if a >= k || b >= k || a == b {
            return Err(Error::InvalidInput(format!("pattern edge ({a},{b}) invalid for {k} parts")));
        }
    }
    let mut w: Vec<Vec<usize>> = parts.to_vec();
    for &(a, b) in h_edges {
        let (x, y) = oracle.find(g, &w[a], &w[b]).ok_or(Error::OracleFailure(a, b))?;
        let valid = !x.is_empty()
            && x.len() == y.len()
            && x.iter().all(|v| w[a].contains(v))
            && y.iter().all(|v| w[b].contains(v))
            && x.iter().all(|&u| y.iter().all(|&v| g.has_edge(u, v)));
        if !valid {
            return Err(Error::OracleFailure(a, b));
        }
        let size = x.len();
        w[a] = x;
        w[b] = y;
        for (i, part) in w.iter_mut().enumerate() {
            if i != a && i != b {
                part.truncate(size);
            }
        }
    }
    for &(a, b) in h_edges {
        assert!(w[a].iter().all(|&u| w[b].iter().all(|&v| g.has_edge(u, v))), "amplifier invariant");
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_pattern_keeps_parts() {
        let g = OrderedGraph::empty(6);
        let parts = vec![vec![0, 1], vec![2, 3], vec![4, 5]];
        assert_eq!(amplify_blowup(&g, &parts, &[], &ExactBicliqueOracle::default()).unwrap(), parts);
    }

    #[test]
    fn single_edge_complete_bipartite() {
        let g = OrderedGraph::complete_multipartite(&[4, 4]);
        let parts = vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]];
        assert_eq!(amplify_blowup(&g, &parts, &[(0, 1)], &ExactBicliqueOracle::default()).unwrap(), parts);
    }

    #[test]
    fn oracle_failure_reports_edge() {
        let g = OrderedGraph::complete_multipartite(&[2, 2]);
        let mut g2 = g.clone();
        for u in 0..2 {
            for v in 2..4 {
                g2.remove_edge(u, v);
            }
        }
        let parts = vec![vec![0, 1], vec![2, 3]];
        assert!(matches!(
            amplify_blowup(&g2, &parts, &[(0, 1)], &ExactBicliqueOracle::default()),
            Err(Error::OracleFailure(0, 1))
        ));
    }
}
