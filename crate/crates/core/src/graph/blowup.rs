//! K_k[t] blowups: verification, exact branch-and-bound below a size cap,
//! greedy search above it, and maximum balanced bicliques.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::OrderedGraph;

/// k disjoint parts of equal size t with every cross-part pair adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "BlowupJson", into = "BlowupJson")]
pub struct Blowup {
    pub parts: Vec<Vec<usize>>,
}

/// Wire form with 1-based vertex labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlowupJson {
    pub parts: Vec<Vec<usize>>,
}

impl From<BlowupJson> for Blowup {
    fn from(j: BlowupJson) -> Self {
        Blowup { parts: j.parts.into_iter().map(|p| p.into_iter().map(|v| v.saturating_sub(1)).collect()).collect() }
    }
}

impl From<Blowup> for BlowupJson {
    fn from(b: Blowup) -> Self {
        BlowupJson { parts: b.parts.into_iter().map(|p| p.into_iter().map(|v| v + 1).collect()).collect() }
    }
}

impl Blowup {
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// Common part size (0 for no parts).
    pub fn t(&self) -> usize {
        self.parts.first().map_or(0, Vec::len)
    }
}

/// Cross-pair completeness check; `strict` additionally requires every part
/// to be independent.
pub fn verify_blowup(g: &OrderedGraph, parts: &[Vec<usize>], strict: bool) -> bool {
    let Some(t) = parts.first().map(Vec::len) else {
        return true;
    };
    if parts.iter().any(|p| p.len() != t) {
        return false;
    }
    let mut seen = FixedBitSet::with_capacity(g.n());
    for p in parts {
        for &v in p {
            if v >= g.n() || seen.put(v) {
                return false;
            }
        }
    }
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            if !a.iter().all(|&u| b.iter().all(|&v| g.has_edge(u, v))) {
                return false;
            }
        }
        if strict && a.iter().enumerate().any(|(x, &u)| a[x + 1..].iter().any(|&v| g.has_edge(u, v))) {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlowupOptions {
    /// Exact branch-and-bound is used when k·t is at most this.
    pub exact_kt_cap: usize,
    /// Exact balanced-biclique search is used when n is at most this.
    pub exact_n_cap: usize,
    pub node_budget: u64,
    pub greedy_restarts: usize,
}

impl Default for BlowupOptions {
    fn default() -> Self {
        Self { exact_kt_cap: 24, exact_n_cap: 64, node_budget: 20_000_000, greedy_restarts: 32 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlowupSearch {
    pub blowup: Option<Blowup>,
    /// True when the exact search ran to completion, so `None` is a proof of
    /// non-existence.
    pub exhaustive: bool,
    pub nodes: u64,
}

pub fn find_blowup(g: &OrderedGraph, k: usize, t: usize, opts: &BlowupOptions) -> BlowupSearch {
    if k == 0 || t == 0 {
        return BlowupSearch { blowup: Some(Blowup { parts: vec![Vec::new(); k] }), exhaustive: true, nodes: 0 };
    }
    if k * t > g.n() {
        return BlowupSearch { blowup: None, exhaustive: true, nodes: 0 };
    }
    if k * t <= opts.exact_kt_cap {
        let mut ex = Exact::new(g, k, t, opts.node_budget);
        let found = ex.run();
        return BlowupSearch { blowup: found, exhaustive: !ex.timed_out, nodes: ex.nodes };
    }
    let found = greedy(g, k, Some(t), opts.greedy_restarts).filter(|b| b.t() >= t).map(|mut b| {
        b.parts.iter_mut().for_each(|p| p.truncate(t));
        b
    });
    BlowupSearch { blowup: found, exhaustive: false, nodes: 0 }
}

struct Exact<'a> {
    g: &'a OrderedGraph,
    k: usize,
    t: usize,
    nodes: u64,
    budget: u64,
    timed_out: bool,
}

impl<'a> Exact<'a> {
    fn new(g: &'a OrderedGraph, k: usize, t: usize, budget: u64) -> Self {
        Self { g, k, t, nodes: 0, budget, timed_out: false }
    }

    fn run(&mut self) -> Option<Blowup> {
        let mut all = FixedBitSet::with_capacity(self.g.n());
        all.insert_range(..);
        let mut parts = vec![Vec::new(); self.k];
        let cand = vec![all; self.k];
        self.rec(0, &mut parts, &cand).then(|| Blowup { parts })
    }

    /// Vertices are decided in increasing order from `from`; parts are
    /// opened in order, which removes the k! relabelling symmetry.
    fn rec(&mut self, from: usize, parts: &mut Vec<Vec<usize>>, cand: &[FixedBitSet]) -> bool {
        if parts.iter().all(|p| p.len() == self.t) {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.timed_out = true;
            return false;
        }
        let n = self.g.n();
        let mut next = n;
        for (p, c) in cand.iter().enumerate() {
            let need = self.t - parts[p].len();
            if need == 0 {
                continue;
            }
            if c.count_ones(from..) < need {
                return false;
            }
            if let Some(v) = c.ones().find(|&v| v >= from) {
                next = next.min(v);
            }
        }
        if next == n {
            return false;
        }
        let v = next;
        let opened = parts.iter().take_while(|p| !p.is_empty()).count();
        for p in 0..self.k.min(opened + 1) {
            if parts[p].len() == self.t || !cand[p].contains(v) {
                continue;
            }
            let mut c2 = cand.to_vec();
            for (q, c) in c2.iter_mut().enumerate() {
                if q != p {
                    c.intersect_with(self.g.neighbors(v));
                }
            }
            parts[p].push(v);
            if self.rec(v + 1, parts, &c2) {
                return true;
            }
            parts[p].pop();
            if self.timed_out {
                return false;
            }
        }
        self.rec(v + 1, parts, cand)
    }
}

/// Multi-start greedy growth of a K_k[·]. With a target the parts stop at
/// `target`; without one they grow while every part can.
fn greedy(g: &OrderedGraph, k: usize, target: Option<usize>, restarts: usize) -> Option<Blowup> {
    let n = g.n();
    if k == 0 || n < k {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut best: Option<Blowup> = None;
    for &s in order.iter().take(restarts.max(1)) {
        let mut parts = vec![Vec::new(); k];
        let mut used = FixedBitSet::with_capacity(n);
        let mut all = FixedBitSet::with_capacity(n);
        all.insert_range(..);
        let mut cand = vec![all; k];
        place(g, &mut parts, &mut cand, &mut used, 0, s);
        loop {
            let p = (0..k).min_by_key(|&p| (parts[p].len(), p)).unwrap();
            if target.is_some_and(|t| parts[p].len() >= t) {
                break;
            }
            let mut pick = None;
            let mut pick_score = 0usize;
            for v in cand[p].ones().filter(|&v| !used.contains(v)) {
                let score = (0..k)
                    .filter(|&q| q != p)
                    .map(|q| {
                        let mut c = cand[q].clone();
                        c.difference_with(&used);
                        c.intersection_count(g.neighbors(v))
                    })
                    .min()
                    .unwrap_or(usize::MAX);
                if pick.is_none() || score > pick_score {
                    pick = Some(v);
                    pick_score = score;
                }
            }
            let Some(v) = pick else { break };
            place(g, &mut parts, &mut cand, &mut used, p, v);
        }
        let t = parts.iter().map(Vec::len).min().unwrap();
        let t = target.map_or(t, |x| t.min(x));
        if t == 0 {
            continue;
        }
        for p in &mut parts {
            p.truncate(t);
            p.sort_unstable();
        }
        debug_assert!(verify_blowup(g, &parts, false));
        if best.as_ref().is_none_or(|b| t > b.t()) {
            best = Some(Blowup { parts });
            if target.is_some_and(|x| t >= x) {
                break;
            }
        }
    }
    best
}

fn place(
    g: &OrderedGraph,
    parts: &mut [Vec<usize>],
    cand: &mut [FixedBitSet],
    used: &mut FixedBitSet,
    p: usize,
    v: usize,
) {
    parts[p].push(v);
    used.insert(v);
    for (q, c) in cand.iter_mut().enumerate() {
        if q != p {
            c.intersect_with(g.neighbors(v));
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BicliqueSearch {
    pub blowup: Blowup,
    /// True when exact search proved no larger balanced biclique exists.
    pub optimal: bool,
    pub nodes: u64,
}

/// Largest K₂[t] found: greedy lower bound, then exact improvement when
/// `n ≤ exact_n_cap`.
pub fn find_balanced_biclique(g: &OrderedGraph, opts: &BlowupOptions) -> BicliqueSearch {
    let mut best = greedy(g, 2, None, opts.greedy_restarts).unwrap_or(Blowup { parts: vec![Vec::new(), Vec::new()] });
    let mut nodes = 0;
    let mut optimal = false;
    if g.n() <= opts.exact_n_cap {
        loop {
            let t = best.t() + 1;
            if 2 * t > g.n() {
                optimal = true;
                break;
            }
            let mut ex = Exact::new(g, 2, t, opts.node_budget.saturating_sub(nodes));
            let found = ex.run();
            nodes += ex.nodes;
            match found {
                Some(b) => best = b,
                None => {
                    optimal = !ex.timed_out;
                    break;
                }
            }
        }
    }
    BicliqueSearch { blowup: best, optimal, nodes }
}

/// Maximum balanced biclique (X ⊆ left, Y ⊆ right, X × Y ⊆ E) between two
/// vertex lists, by branch and bound over X. Returns equal-size sets, or
/// `None` when no edge crosses. The flag is false if the budget ran out.
pub fn max_cross_biclique(
    g: &OrderedGraph,
    left: &[usize],
    right: &[usize],
    node_budget: u64,
) -> (Option<(Vec<usize>, Vec<usize>)>, bool) {
    let rset = g.vertex_set(right.iter().copied());
    let mut order: Vec<usize> = left.to_vec();
    order.sort_by_key(|&u| (std::cmp::Reverse(g.neighbors(u).intersection_count(&rset)), u));
    struct Bb<'a> {
        g: &'a OrderedGraph,
        order: Vec<usize>,
        best: usize,
        best_sets: (Vec<usize>, FixedBitSet),
        nodes: u64,
        budget: u64,
        timed_out: bool,
    }
    impl Bb<'_> {
        fn rec(&mut self, i: usize, x: &mut Vec<usize>, y: &FixedBitSet) {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.timed_out = true;
                return;
            }
            let ylen = y.count_ones(..);
            let val = x.len().min(ylen);
            if val > self.best {
                self.best = val;
                self.best_sets = (x.clone(), y.clone());
            }
            if (x.len() + self.order.len() - i).min(ylen) <= self.best {
                return;
            }
            for j in i..self.order.len() {
                if (x.len() + self.order.len() - j).min(ylen) <= self.best {
                    return;
                }
                let u = self.order[j];
                let mut y2 = y.clone();
                y2.intersect_with(self.g.neighbors(u));
                if y2.count_ones(..) > self.best {
                    x.push(u);
                    self.rec(j + 1, x, &y2);
                    x.pop();
                }
                if self.timed_out {
                    return;
                }
            }
        }
    }
    let mut bb = Bb {
        g,
        order,
        best: 0,
        best_sets: (Vec::new(), FixedBitSet::with_capacity(g.n())),
        nodes: 0,
        budget: node_budget,
        timed_out: false,
    };
    bb.rec(0, &mut Vec::new(), &rset);
    let exact = !bb.timed_out;
    if bb.best == 0 {
        return (None, exact);
    }
    let t = bb.best;
    let mut x = bb.best_sets.0;
    x.sort_unstable();
    x.truncate(t);
    let y: Vec<usize> = bb.best_sets.1.ones().take(t).collect();
    (Some((x, y)), exact)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multipartite_parts_found() {
        let g = OrderedGraph::complete_multipartite(&[3, 3, 3]);
        let r = find_blowup(&g, 3, 3, &BlowupOptions::default());
        let b = r.blowup.unwrap();
        assert!(verify_blowup(&g, &b.parts, true));
        assert_eq!(b.parts, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]);
    }

    #[test]
    fn empty_graph_has_no_edge() {
        let r = find_blowup(&OrderedGraph::empty(6), 2, 1, &BlowupOptions::default());
        assert!(r.blowup.is_none() && r.exhaustive);
    }

    #[test]
    fn biclique_in_complete_bipartite() {
        let g = OrderedGraph::complete_multipartite(&[5, 7]);
        let r = find_balanced_biclique(&g, &BlowupOptions::default());
        assert_eq!(r.blowup.t(), 5);
        assert!(r.optimal);
        let (xy, exact) = max_cross_biclique(&g, &[0, 1, 2, 3, 4], &[5, 6, 7, 8, 9, 10, 11], 1_000_000);
        let (x, y) = xy.unwrap();
        assert!(exact && x.len() == 5 && y.len() == 5);
    }

    #[test]
    fn verifier_rejects() {
        let g = OrderedGraph::complete(4);
        assert!(verify_blowup(&g, &[vec![0, 1], vec![2, 3]], false));
        assert!(!verify_blowup(&g, &[vec![0, 1], vec![2, 3]], true));
        assert!(!verify_blowup(&g, &[vec![0, 1], vec![1, 3]], false));
        assert!(!verify_blowup(&g, &[vec![0, 1], vec![2]], false));
        assert!(!verify_blowup(&OrderedGraph::empty(4), &[vec![0], vec![1]], false));
    }

    #[test]
    fn greedy_above_cap() {
        let g = OrderedGraph::complete_multipartite(&[13, 13]);
        let r = find_blowup(&g, 2, 13, &BlowupOptions::default());
        assert!(!r.exhaustive);
        assert!(verify_blowup(&g, &r.blowup.unwrap().parts, true));
    }
}
