//! Exact search for induced monotone paths x₁ < x₂ < ⋯ < x_m.
//!
//! The search is a small constraint solver: one bitset domain per path
//! position, forward checking on assignment, order bounds, and a capacity
//! bound from a cover of the vertex order by cliques of consecutive vertices
//! (an induced path meets a clique in at most two consecutive positions, so
//! x_j and x_{j+2} lie in different cliques). Branching picks whichever is
//! smaller: a single domain, or the edge set between two consecutive domains
//! (scored by its square root since it fixes two positions at once). Sparse
//! constraint edges, such as the rare long edges of geometric constructions,
//! are therefore branched on first.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::OrderedGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "vertices", rename_all = "lowercase")]
pub enum PathOutcome {
    /// Path vertices, 1-based on the wire.
    Found(#[serde(with = "crate::serde_util::one_based")] Vec<usize>),
    None,
    Timeout,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSearch {
    pub outcome: PathOutcome,
    pub nodes: u64,
}

/// Whether `vertices` (strictly increasing) induce a monotone path.
pub fn is_induced_monotone_path(g: &OrderedGraph, vertices: &[usize]) -> bool {
    if vertices.windows(2).any(|w| w[0] >= w[1]) || vertices.iter().any(|&v| v >= g.n()) {
        return false;
    }
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if g.has_edge(vertices[i], vertices[j]) != (j == i + 1) {
                return false;
            }
        }
    }
    true
}

/// Searches for an induced monotone path on `m` vertices, exploring at most
/// `node_budget` search nodes.
pub fn find_induced_monotone_path(g: &OrderedGraph, m: usize, node_budget: u64) -> PathSearch {
    let n = g.n();
    if m == 0 {
        return PathSearch { outcome: PathOutcome::Found(Vec::new()), nodes: 0 };
    }
    if m > n {
        return PathSearch { outcome: PathOutcome::None, nodes: 0 };
    }
    let mut solver = Solver { g, m, cliques: CliqueCover::new(g), nodes: 0, budget: node_budget, timed_out: false };
    let mut full = FixedBitSet::with_capacity(n);
    full.insert_range(..);
    let state = State { dom: vec![full; m], val: vec![None; m] };
    let found = solver.search(state);
    let outcome = match found {
        Some(p) => {
            debug_assert!(is_induced_monotone_path(g, &p));
            PathOutcome::Found(p)
        }
        None if solver.timed_out => PathOutcome::Timeout,
        None => PathOutcome::None,
    };
    PathSearch { outcome, nodes: solver.nodes }
}

/// Greedy cover of `0..n` by maximal cliques of consecutive vertices.
struct CliqueCover {
    id: Vec<usize>,
    start: Vec<usize>,
}

impl CliqueCover {
    fn new(g: &OrderedGraph) -> Self {
        let n = g.n();
        let mut id = vec![0; n];
        let mut start = Vec::new();
        let mut v = 0;
        while v < n {
            let s = v;
            let mut members = FixedBitSet::with_capacity(n);
            members.insert(v);
            v += 1;
            while v < n && members.is_subset(g.neighbors(v)) {
                members.insert(v);
                v += 1;
            }
            for u in s..v {
                id[u] = start.len();
            }
            start.push(s);
        }
        Self { id, start }
    }
}

#[derive(Clone)]
struct State {
    dom: Vec<FixedBitSet>,
    val: Vec<Option<usize>>,
}

struct Solver<'a> {
    g: &'a OrderedGraph,
    m: usize,
    cliques: CliqueCover,
    nodes: u64,
    budget: u64,
    timed_out: bool,
}

enum Branch {
    Vertex(usize),
    Edge(usize),
    Split(usize),
}

/// Domains spanning at most this many cliques are split at a clique boundary.
const SPLIT_MAX_CLIQUES: usize = 3;

impl<'a> Solver<'a> {
    fn search(&mut self, mut st: State) -> Option<Vec<usize>> {
        if self.timed_out {
            return None;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.timed_out = true;
            return None;
        }
        if !self.propagate(&mut st) {
            return None;
        }
        if st.val.iter().all(Option::is_some) {
            let p: Vec<usize> = st.val.iter().map(|v| v.unwrap()).collect();
            return is_induced_monotone_path(self.g, &p).then_some(p);
        }
        match self.choose(&st)? {
            Branch::Split(j) => {
                let lo = st.dom[j].minimum().unwrap();
                let c = self.cliques.id[lo];
                let end = self.cliques.start.get(c + 1).copied().unwrap_or(self.g.n());
                let mut a = st.clone();
                a.dom[j].remove_range(end..);
                if let Some(p) = self.search(a) {
                    return Some(p);
                }
                st.dom[j].remove_range(..end);
                self.search(st)
            }
            Branch::Vertex(j) => {
                let cands: Vec<usize> = st.dom[j].ones().collect();
                for v in cands {
                    let mut s = st.clone();
                    if self.assign(&mut s, j, v) {
                        if let Some(p) = self.search(s) {
                            return Some(p);
                        }
                    }
                    if self.timed_out {
                        return None;
                    }
                }
                None
            }
            Branch::Edge(j) => {
                let left: Vec<usize> = st.dom[j].ones().collect();
                for u in left {
                    let mut right = st.dom[j + 1].clone();
                    right.intersect_with(self.g.neighbors(u));
                    right.remove_range(..u + 1);
                    for v in right.ones() {
                        let mut s = st.clone();
                        if self.assign(&mut s, j, u) && self.assign(&mut s, j + 1, v) {
                            if let Some(p) = self.search(s) {
                                return Some(p);
                            }
                        }
                        if self.timed_out {
                            return None;
                        }
                    }
                }
                None
            }
        }
    }

    /// Fixes position `j` to `v` and filters every other domain.
    fn assign(&self, st: &mut State, j: usize, v: usize) -> bool {
        if !st.dom[j].contains(v) {
            return false;
        }
        st.val[j] = Some(v);
        st.dom[j].clear();
        st.dom[j].insert(v);
        let nb = self.g.neighbors(v);
        for i in 0..self.m {
            if i == j || st.val[i].is_some() {
                continue;
            }
            if i + 1 == j || j + 1 == i {
                st.dom[i].intersect_with(nb);
            } else {
                st.dom[i].difference_with(nb);
            }
            if i < j {
                st.dom[i].remove_range(v..);
            } else {
                st.dom[i].remove_range(..v + 1);
            }
            if st.dom[i].is_clear() {
                return false;
            }
        }
        true
    }

    /// Order and clique-capacity bounds to a fixpoint; false on a wipe-out.
    fn propagate(&self, st: &mut State) -> bool {
        let m = self.m;
        let n = self.g.n();
        loop {
            let mut changed = false;
            for j in 0..m {
                if st.dom[j].is_clear() {
                    return false;
                }
            }
            for j in 1..m {
                let lo = st.dom[j - 1].minimum().unwrap();
                if st.dom[j].minimum().unwrap() <= lo {
                    st.dom[j].remove_range(..lo + 1);
                    changed = true;
                }
                if j >= 2 {
                    let c = self.cliques.id[st.dom[j - 2].minimum().unwrap()];
                    let floor = self.cliques.start.get(c + 1).copied().unwrap_or(n);
                    if st.dom[j].minimum().unwrap_or(n) < floor {
                        st.dom[j].remove_range(..floor);
                        changed = true;
                    }
                }
                if st.dom[j].is_clear() {
                    return false;
                }
            }
            for j in (0..m - 1).rev() {
                let hi = st.dom[j + 1].maximum().unwrap();
                if st.dom[j].maximum().unwrap() >= hi {
                    st.dom[j].remove_range(hi..);
                    changed = true;
                }
                if j + 2 < m {
                    let c = self.cliques.id[st.dom[j + 2].maximum().unwrap()];
                    let ceil = self.cliques.start[c];
                    if st.dom[j].maximum().is_some_and(|x| x >= ceil) {
                        st.dom[j].remove_range(ceil..);
                        changed = true;
                    }
                }
                if st.dom[j].is_clear() {
                    return false;
                }
            }
            for j in 0..m {
                if st.val[j].is_none() && st.dom[j].count_ones(..) == 1 {
                    let v = st.dom[j].minimum().unwrap();
                    if !self.assign(st, j, v) {
                        return false;
                    }
                    changed = true;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn choose(&self, st: &State) -> Option<Branch> {
        for j in 0..self.m {
            if st.val[j].is_some() {
                continue;
            }
            let lo = self.cliques.id[st.dom[j].minimum().unwrap()];
            let hi = self.cliques.id[st.dom[j].maximum().unwrap()];
            if hi > lo && hi - lo < SPLIT_MAX_CLIQUES {
                return Some(Branch::Split(j));
            }
        }
        let mut best: Option<(f64, Branch)> = None;
        for j in 0..self.m {
            if st.val[j].is_some() {
                continue;
            }
            let size = st.dom[j].count_ones(..) as f64;
            if best.as_ref().is_none_or(|(c, _)| size < *c) {
                best = Some((size, Branch::Vertex(j)));
            }
        }
        for j in 0..self.m - 1 {
            if st.val[j].is_some() || st.val[j + 1].is_some() {
                continue;
            }
            let mut edges = 0usize;
            for u in st.dom[j].ones() {
                let nb = self.g.neighbors(u);
                edges += st.dom[j + 1].ones().filter(|&v| v > u && nb.contains(v)).count();
            }
            if edges == 0 {
                return None;
            }
            let cost = (edges as f64).sqrt();
            if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                best = Some((cost, Branch::Edge(j)));
            }
        }
        best.map(|(_, b)| b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_finds_itself() {
        let g = OrderedGraph::monotone_path(6);
        let r = find_induced_monotone_path(&g, 6, 10_000);
        assert_eq!(r.outcome, PathOutcome::Found((0..6).collect()));
    }

    #[test]
    fn complete_graph_has_none() {
        let g = OrderedGraph::complete(8);
        assert_eq!(find_induced_monotone_path(&g, 3, 10_000).outcome, PathOutcome::None);
        assert!(matches!(find_induced_monotone_path(&g, 2, 10_000).outcome, PathOutcome::Found(_)));
    }

    #[test]
    fn tiny_budget_times_out() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let g = OrderedGraph::random(40, 0.5, &mut rng);
        assert_eq!(find_induced_monotone_path(&g, 9, 1).outcome, PathOutcome::Timeout);
    }

    #[test]
    fn verifier() {
        let g = OrderedGraph::monotone_path(4);
        assert!(is_induced_monotone_path(&g, &[0, 1, 2, 3]));
        assert!(!is_induced_monotone_path(&g, &[0, 2]));
        assert!(!is_induced_monotone_path(&g, &[1, 0]));
    }
}
