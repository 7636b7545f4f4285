use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{vc_dimension, SetSystem, VcDimension};
use crate::error::{Error, Result};
use crate::graph::{find_balanced_biclique, max_cross_biclique, BlowupOptions, OrderedGraph};

/// Bipartite graph on A = {0..n/2}, B = {n/2..n} with aᵢ ~ bⱼ iff
/// i ≤ j + shift, for the least shift giving edge density ≥ `density`
/// (capped at the complete bipartite graph). Neighbourhoods on each side form
/// a chain, so the VC-dimension is 1.
pub fn nested_half_graph(n: usize, density: f64) -> OrderedGraph {
    let m = n / 2;
    let pairs = (n * n.saturating_sub(1) / 2).max(1) as f64;
    let edges = |shift: usize| (0..m).map(|j| (j + shift + 1).min(m)).sum::<usize>();
    let shift = (0..m).find(|&s| edges(s) as f64 / pairs >= density).unwrap_or(m);
    let mut g = OrderedGraph::empty(n);
    for i in 0..m {
        for j in 0..m {
            if i <= j + shift {
                g.add_edge(i, m + j);
            }
        }
    }
    g
}

/// Four vertices a, b, c, d with a, c both adjacent to b and d, if any:
/// the lexicographically first pair (a, c) with two common neighbours b < d.
pub fn find_c4(g: &OrderedGraph) -> Option<[usize; 4]> {
    (0..g.n()).find_map(|a| {
        (a + 1..g.n()).find_map(|c| {
            let mut common = g.neighbors(a).intersection(g.neighbors(c));
            let b = common.next()?;
            let d = common.next()?;
            Some([a, b, c, d])
        })
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Vc2Example {
    pub n: usize,
    pub seed: u64,
    pub p: f64,
    /// The C₄-free bipartite core between {1..n/2} and {n/2+1..n}.
    pub core: OrderedGraph,
    /// Complement of the core: both sides become cliques.
    pub graph: OrderedGraph,
    pub core_edges: usize,
    pub c4_removed: usize,
    pub density: f64,
    pub vc: VcDimension,
    /// Largest balanced biclique found by the heuristic search.
    pub biclique_t: usize,
    /// The same two measurements for the bipartite complement (cross pairs
    /// only), which is the variant without large bicliques.
    pub bipartite_vc: VcDimension,
    pub bipartite_biclique_t: usize,
    pub bipartite_biclique_optimal: bool,
}

/// Random bipartite graph at p = n^{−2/3}, made C₄-free by repeatedly
/// deleting the last edge of the first C₄; returns its complement with
/// measurements.
pub fn make_vc2_no_b2_example(n: usize, seed: u64, opts: &BlowupOptions) -> Result<Vc2Example> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidInput(format!("n = {n} must be even and at least 4")));
    }
    let m = n / 2;
    let p = (n as f64).powf(-2.0 / 3.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut core = OrderedGraph::empty(n);
    for a in 0..m {
        for b in m..n {
            if rng.random_bool(p) {
                core.add_edge(a, b);
            }
        }
    }
    // Pairs on the A side in lexicographic order; removing edges never
    // creates a C₄, so one pass reaches the fixed point. Every C₄ has exactly
    // two A-vertices, and its lexicographically last edge is (a₂, b₂).
    let mut removed = 0;
    for a1 in 0..m {
        for a2 in a1 + 1..m {
            loop {
                let mut common = core.neighbors(a1).intersection(core.neighbors(a2));
                let (Some(_), Some(b2)) = (common.next(), common.next()) else {
                    break;
                };
                core.remove_edge(a2, b2);
                removed += 1;
            }
        }
    }
    debug_assert!(find_c4(&core).is_none());
    let graph = core.complement();
    let vc = vc_dimension(&SetSystem::neighborhoods(&graph), 3);
    let biclique_t = find_balanced_biclique(&graph, opts).blowup.t();

    let mut bip = OrderedGraph::empty(n);
    for a in 0..m {
        for b in m..n {
            if !core.has_edge(a, b) {
                bip.add_edge(a, b);
            }
        }
    }
    let bipartite_vc = vc_dimension(&SetSystem::neighborhoods(&bip), 3);
    let left: Vec<usize> = (0..m).collect();
    let right: Vec<usize> = (m..n).collect();
    let (cross, complete) = max_cross_biclique(&bip, &left, &right, opts.node_budget);
    Ok(Vc2Example {
        n,
        seed,
        p,
        core_edges: core.edge_count(),
        c4_removed: removed,
        density: graph.density(),
        vc,
        biclique_t,
        bipartite_vc,
        bipartite_biclique_t: cross.map_or(0, |(x, _)| x.len()),
        bipartite_biclique_optimal: complete,
        core,
        graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vc::vc1_checks;

    #[test]
    fn half_graph_is_vc1() {
        for n in [10, 40, 60] {
            for d in [0.2, 0.3, 0.4] {
                let g = nested_half_graph(n, d);
                assert!(g.density() >= d, "n={n} d={d}");
                assert_eq!(vc_dimension(&SetSystem::neighborhoods(&g), 4).value, 1);
                assert!(vc1_checks(&g).holds());
            }
        }
    }

    #[test]
    fn c4_detection() {
        assert!(find_c4(&OrderedGraph::complete_multipartite(&[2, 2])).is_some());
        assert!(find_c4(&OrderedGraph::monotone_path(6)).is_none());
    }

    #[test]
    fn small_vc2_examples() {
        let opts = BlowupOptions { node_budget: 200_000, ..Default::default() };
        for seed in 0..3 {
            let ex = make_vc2_no_b2_example(80, seed, &opts).unwrap();
            assert!(find_c4(&ex.core).is_none());
            assert!(ex.vc.value <= 2);
            assert_eq!(ex.graph, ex.core.complement());
        }
        assert!(make_vc2_no_b2_example(81, 0, &opts).is_err());
    }
}
