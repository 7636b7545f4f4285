//! Finite posets, their (in)comparability graphs, chains and antichains.

mod multi;
mod partition;

pub use multi::{
    find_blowup_multi, find_blowup_r1, p_vector, verify_comparability_blowup, CliqueSource, ComparabilityBlowup,
    MultiBlowup, MultiOrder, PVectors,
};
pub use partition::{
    check_partition, claim52_audit, incomparability_partition, Claim52Audit, IntervalChains, PartitionParams,
    PartitionResult,
};

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::OrderedGraph;

/// Strict partial order on `0..n`, stored transitively closed in both
/// directions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PosetJson", into = "PosetJson")]
pub struct Poset {
    n: usize,
    succ: Vec<FixedBitSet>,
    pred: Vec<FixedBitSet>,
}

/// `relations` are 1-based pairs `[a, b]` meaning a ≺ b; they need not be
/// closed. Serialisation writes the cover relations only.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub relations: Vec<[usize; 2]>,
}

impl TryFrom<PosetJson> for Poset {
    type Error = Error;
    fn try_from(j: PosetJson) -> Result<Self> {
        let mut rel = Vec::with_capacity(j.relations.len());
        for [a, b] in j.relations {
            if a == 0 || b == 0 || a > j.n || b > j.n {
                return Err(Error::InvalidInput(format!("relation [{a},{b}] out of range 1..={}", j.n)));
            }
            rel.push((a - 1, b - 1));
        }
        Poset::from_relations(j.n, &rel)
    }
}

impl From<Poset> for PosetJson {
    fn from(p: Poset) -> Self {
        PosetJson { n: p.n, relations: p.covers().into_iter().map(|(a, b)| [a + 1, b + 1]).collect() }
    }
}

/// Chain or antichain outcome of [`chain_or_antichain`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Dichotomy {
    Chain(ChainBlocks),
    Antichain {
        #[serde(with = "crate::serde_util::one_based_sets")]
        sets: Vec<Vec<usize>>,
    },
    Neither,
}

/// ℓ disjoint blocks of equal size; when `ascending`, every element of
/// block u precedes every element of block u+1, otherwise the reverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainBlocks {
    #[serde(with = "crate::serde_util::one_based_sets")]
    pub blocks: Vec<Vec<usize>>,
    pub ascending: bool,
}

impl ChainBlocks {
    pub fn is_valid(&self, p: &Poset) -> bool {
        let t = self.blocks.first().map_or(0, Vec::len);
        self.blocks.iter().all(|b| b.len() == t)
            && self.blocks.windows(2).all(|w| {
                let (lo, hi) = if self.ascending { (&w[0], &w[1]) } else { (&w[1], &w[0]) };
                lo.iter().all(|&a| hi.iter().all(|&b| p.less(a, b)))
            })
    }
}

impl Poset {
    /// Closes `relations` (0-based a ≺ b); fails on a cycle or a loop.
    pub fn from_relations(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::VertexOutOfRange { index: a.max(b), n });
            }
            if a == b {
                return Err(Error::CyclicOrder(a + 1));
            }
            out[a].push(b);
            indeg[b] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if order.len() < n {
            let v = (0..n).find(|&v| indeg[v] > 0).unwrap();
            return Err(Error::CyclicOrder(v + 1));
        }
        let mut succ = vec![FixedBitSet::with_capacity(n); n];
        for &v in order.iter().rev() {
            let mut row = FixedBitSet::with_capacity(n);
            for &w in &out[v] {
                row.insert(w);
                row.union_with(&succ[w]);
            }
            succ[v] = row;
        }
        Ok(Self::from_succ(n, succ))
    }

    fn from_succ(n: usize, succ: Vec<FixedBitSet>) -> Self {
        let mut pred = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in succ.iter().enumerate() {
            for b in row.ones() {
                pred[b].insert(a);
            }
        }
        Self { n, succ, pred }
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_succ(n, vec![FixedBitSet::with_capacity(n); n])
    }

    /// 0 ≺ 1 ≺ ⋯ ≺ n−1.
    pub fn total_order(n: usize) -> Self {
        let succ = (0..n)
            .map(|a| {
                let mut r = FixedBitSet::with_capacity(n);
                r.insert_range(a + 1..);
                r
            })
            .collect();
        Self::from_succ(n, succ)
    }

    /// Consecutive antichains of the given sizes, each entirely below the
    /// next.
    pub fn block_order(sizes: &[usize]) -> Self {
        let n: usize = sizes.iter().sum();
        let mut succ = Vec::with_capacity(n);
        let mut end = 0;
        for &s in sizes {
            end += s;
            for _ in 0..s {
                let mut r = FixedBitSet::with_capacity(n);
                r.insert_range(end..);
                succ.push(r);
            }
        }
        Self::from_succ(n, succ)
    }

    /// Random graph order: i ≺ j with probability p for i < j, closed, then
    /// relabelled by a random permutation.
    pub fn random_dag(n: usize, p: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut label: Vec<usize> = (0..n).collect();
        label.shuffle(&mut rng);
        let mut rel = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(p) {
                    rel.push((label[i], label[j]));
                }
            }
        }
        Self::from_relations(n, &rel).expect("random graph orders are acyclic")
    }

    /// Two-dimensional order: a ≺ b iff a precedes b in both of two random
    /// permutations.
    pub fn random_perm2(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x: Vec<usize> = (0..n).collect();
        let mut y: Vec<usize> = (0..n).collect();
        x.shuffle(&mut rng);
        y.shuffle(&mut rng);
        let succ = (0..n)
            .map(|a| {
                let mut r = FixedBitSet::with_capacity(n);
                for b in 0..n {
                    if x[a] < x[b] && y[a] < y[b] {
                        r.insert(b);
                    }
                }
                r
            })
            .collect();
        Self::from_succ(n, succ)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.succ[a].contains(b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    pub fn above(&self, a: usize) -> &FixedBitSet {
        &self.succ[a]
    }

    pub fn below(&self, a: usize) -> &FixedBitSet {
        &self.pred[a]
    }

    pub fn relation_count(&self) -> usize {
        self.succ.iter().map(|r| r.count_ones(..)).sum()
    }

    /// All pairs a ≺ b.
    pub fn relations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(a, r)| r.ones().map(move |b| (a, b)))
    }

    /// Cover pairs: a ≺ b with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in self.succ[a].ones() {
                if self.succ[a].intersection_count(&self.pred[b]) == 0 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Kahn's algorithm, always releasing the smallest available element.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut indeg: Vec<usize> = self.pred.iter().map(|r| r.count_ones(..)).collect();
        let mut heap: BinaryHeap<Reverse<usize>> = (0..self.n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(Reverse(v)) = heap.pop() {
            order.push(v);
            for w in self.succ[v].ones() {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    heap.push(Reverse(w));
                }
            }
        }
        order
    }

    pub fn set(&self, elems: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.n);
        s.extend(elems);
        s
    }
}

fn relation_graph(p: &Poset, order: &[usize], comparable: bool) -> OrderedGraph {
    let n = p.n();
    let mut g = OrderedGraph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if p.comparable(order[i], order[j]) == comparable {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Incomparability graph on the linear extension; vertex `i` is element
/// `order[i]`.
pub fn incomparability_graph(p: &Poset) -> (OrderedGraph, Vec<usize>) {
    let order = p.linear_extension();
    (relation_graph(p, &order, false), order)
}

/// Comparability graph with the same vertex order as
/// [`incomparability_graph`].
pub fn comparability_graph(p: &Poset) -> (OrderedGraph, Vec<usize>) {
    let order = p.linear_extension();
    (relation_graph(p, &order, true), order)
}

/// Longest chain inside `subset`, listed bottom to top.
pub fn longest_chain_in(p: &Poset, subset: &FixedBitSet) -> Vec<usize> {
    let order: Vec<usize> = p.linear_extension().into_iter().filter(|&v| subset.contains(v)).collect();
    longest_chain_ordered(p, subset, &order)
}

fn longest_chain_ordered(p: &Poset, subset: &FixedBitSet, order: &[usize]) -> Vec<usize> {
    let mut len = vec![0usize; p.n()];
    let mut back = vec![usize::MAX; p.n()];
    let mut best = None::<usize>;
    for &x in order {
        len[x] = 1;
        let mut below = p.below(x).clone();
        below.intersect_with(subset);
        for y in below.ones() {
            if len[y] + 1 > len[x] {
                len[x] = len[y] + 1;
                back[x] = y;
            }
        }
        if best.is_none_or(|b| len[x] > len[b]) {
            best = Some(x);
        }
    }
    let mut chain = Vec::new();
    let mut cur = best;
    while let Some(x) = cur {
        chain.push(x);
        cur = (back[x] != usize::MAX).then_some(back[x]);
    }
    chain.reverse();
    chain
}

pub fn longest_chain(p: &Poset) -> Vec<usize> {
    let mut all = FixedBitSet::with_capacity(p.n());
    all.insert_range(..);
    longest_chain_in(p, &all)
}

/// Mirsky layers by height inside `subset`: layer h holds the elements whose
/// longest chain from below has h+1 elements. Each layer is an antichain.
pub fn height_layers(p: &Poset, subset: &FixedBitSet) -> Vec<Vec<usize>> {
    let mut height = vec![0usize; p.n()];
    let mut layers: Vec<Vec<usize>> = Vec::new();
    for x in p.linear_extension().into_iter().filter(|&v| subset.contains(v)) {
        let mut below = p.below(x).clone();
        below.intersect_with(subset);
        let h = below.ones().map(|y| height[y] + 1).max().unwrap_or(0);
        height[x] = h;
        if layers.len() <= h {
            layers.resize(h + 1, Vec::new());
        }
        layers[h].push(x);
    }
    layers
}

/// Maximum antichain inside `subset` via Dilworth/König: a maximum matching
/// in the split comparability graph, then the König vertex cover.
pub fn maximum_antichain(p: &Poset, subset: &FixedBitSet) -> Vec<usize> {
    let n = p.n();
    let elems: Vec<usize> = subset.ones().collect();
    let mut match_r = vec![usize::MAX; n];
    let mut match_l = vec![usize::MAX; n];
    fn augment(
        p: &Poset,
        subset: &FixedBitSet,
        x: usize,
        seen: &mut FixedBitSet,
        match_l: &mut [usize],
        match_r: &mut [usize],
    ) -> bool {
        let mut cand = p.above(x).clone();
        cand.intersect_with(subset);
        for y in cand.ones() {
            if seen.put(y) {
                continue;
            }
            if match_r[y] == usize::MAX || augment(p, subset, match_r[y], seen, match_l, match_r) {
                match_r[y] = x;
                match_l[x] = y;
                return true;
            }
        }
        false
    }
    // Greedy start, then augmenting paths.
    for &x in &elems {
        let mut cand = p.above(x).clone();
        cand.intersect_with(subset);
        if let Some(y) = cand.ones().find(|&y| match_r[y] == usize::MAX) {
            match_r[y] = x;
            match_l[x] = y;
        }
    }
    for &x in &elems {
        if match_l[x] == usize::MAX {
            let mut seen = FixedBitSet::with_capacity(n);
            augment(p, subset, x, &mut seen, &mut match_l, &mut match_r);
        }
    }
    // Z: reachable from free left vertices by alternating paths.
    let mut zl = FixedBitSet::with_capacity(n);
    let mut zr = FixedBitSet::with_capacity(n);
    let mut stack: Vec<usize> = elems.iter().copied().filter(|&x| match_l[x] == usize::MAX).collect();
    for &x in &stack {
        zl.insert(x);
    }
    while let Some(x) = stack.pop() {
        let mut cand = p.above(x).clone();
        cand.intersect_with(subset);
        for y in cand.ones() {
            if match_l[x] == y || zr.put(y) {
                continue;
            }
            let x2 = match_r[y];
            if x2 != usize::MAX && !zl.put(x2) {
                stack.push(x2);
            }
        }
    }
    let anti: Vec<usize> = elems.into_iter().filter(|&x| zl.contains(x) && !zr.contains(x)).collect();
    debug_assert!(anti.iter().all(|&a| anti.iter().all(|&b| !p.less(a, b))));
    anti
}

/// Within `subset`: ℓ blocks of size t cut from a chain of length ℓt, or
/// else ℓ pairwise incomparable sets of size q cut from an antichain.
pub fn chain_or_antichain_in(p: &Poset, subset: &FixedBitSet, l: usize, t: usize, q: usize) -> Dichotomy {
    assert!(l >= 1 && t >= 1 && q >= 1, "l, t, q must be positive");
    let chain = longest_chain_in(p, subset);
    if chain.len() >= l * t {
        let blocks = chain[..l * t].chunks(t).map(<[usize]>::to_vec).collect();
        return Dichotomy::Chain(ChainBlocks { blocks, ascending: true });
    }
    let need = l * q;
    let layer = height_layers(p, subset).into_iter().max_by_key(Vec::len).unwrap_or_default();
    let anti = if layer.len() >= need { layer } else { maximum_antichain(p, subset) };
    if anti.len() >= need {
        return Dichotomy::Antichain { sets: anti[..need].chunks(q).map(<[usize]>::to_vec).collect() };
    }
    Dichotomy::Neither
}

pub fn chain_or_antichain(p: &Poset, l: usize, t: usize, q: usize) -> Dichotomy {
    let mut all = FixedBitSet::with_capacity(p.n());
    all.insert_range(..);
    chain_or_antichain_in(p, &all, l, t, q)
}

/// Whether the sets are pairwise disjoint with every cross pair incomparable.
pub fn verify_incomparable_sets(p: &Poset, sets: &[Vec<usize>]) -> bool {
    let mut seen = FixedBitSet::with_capacity(p.n());
    for &v in sets.iter().flatten() {
        if v >= p.n() || seen.put(v) {
            return false;
        }
    }
    sets.iter().enumerate().all(|(i, a)| {
        sets[i + 1..].iter().all(|b| a.iter().all(|&x| b.iter().all(|&y| !p.comparable(x, y))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_cycles() {
        let p = Poset::from_relations(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(p.less(0, 3));
        assert_eq!(p.relation_count(), 6);
        assert_eq!(p.covers(), vec![(0, 1), (1, 2), (2, 3)]);
        assert!(matches!(Poset::from_relations(3, &[(0, 1), (1, 2), (2, 0)]), Err(Error::CyclicOrder(_))));
        assert!(Poset::from_relations(2, &[(1, 1)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = Poset::random_dag(30, 0.2, 4);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<Poset>(&s).unwrap(), p);
        assert!(serde_json::from_str::<Poset>(r#"{"n":2,"relations":[[1,2],[2,1]]}"#).is_err());
    }

    #[test]
    fn incomparability_examples() {
        let (g, _) = incomparability_graph(&Poset::total_order(5));
        assert_eq!(g.edge_count(), 0);
        let (g, _) = incomparability_graph(&Poset::antichain(5));
        assert_eq!(g.edge_count(), 10);
        let p = Poset::from_relations(3, &[(0, 1)]).unwrap();
        let (g, order) = incomparability_graph(&p);
        assert_eq!(order, vec![0, 1, 2]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn chains_and_antichains() {
        assert_eq!(longest_chain(&Poset::total_order(7)).len(), 7);
        assert_eq!(longest_chain(&Poset::antichain(7)).len(), 1);
        let p = Poset::total_order(6);
        let Dichotomy::Chain(c) = chain_or_antichain(&p, 3, 2, 1) else { panic!() };
        assert!(c.is_valid(&p));
        let a = Poset::antichain(6);
        let Dichotomy::Antichain { sets } = chain_or_antichain(&a, 3, 2, 2) else { panic!() };
        assert!(verify_incomparable_sets(&a, &sets));
        assert_eq!(chain_or_antichain(&Poset::block_order(&[2, 2]), 2, 2, 2), Dichotomy::Neither);
    }

    #[test]
    fn maximum_antichain_small() {
        // 0 < 1 < 2 with 3, 4 below 2 only: {0, 3, 4} is the unique maximum.
        let p = Poset::from_relations(5, &[(0, 1), (1, 2), (3, 2), (4, 2)]).unwrap();
        let mut all = FixedBitSet::with_capacity(5);
        all.insert_range(..);
        let a = maximum_antichain(&p, &all);
        assert_eq!(a.len(), 3);
        assert!(verify_incomparable_sets(&p, &a.iter().map(|&x| vec![x]).collect::<Vec<_>>()));
    }

    #[test]
    fn perm2_is_a_poset() {
        let p = Poset::random_perm2(40, 2);
        for (a, b) in p.relations() {
            assert!(!p.less(b, a));
            for c in p.above(b).ones() {
                assert!(p.less(a, c));
            }
        }
    }
}
