//! Blowups in comparability graphs and unions of r comparability graphs.
//!
//! With one order, fix the spine x₂ ≺ x₄ ≺ ⋯ ≺ x_{2h−2} maximising the number
//! of completions to a (2h−1)-chain; that number is ∏|D_i| for the
//! intervals D₁ = {x ≺ x₂}, D_i = {x_{2i−2} ≺ x ≺ x_{2i}}, D_h = {x ≻ x_{2h−2}},
//! and any two of those intervals are completely comparable.
//!
//! With r orders and k = (2h−2)^r + 1, every k-clique of the union contains
//! a (2h−1)-chain of one order: the vectors p(x) of longest chains from x
//! inside the clique are pairwise distinct, so some coordinate reaches 2h−1.

use fixedbitset::FixedBitSet;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Poset;
use crate::error::{Error, Result};

/// r partial orders on one ground set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Poset>", into = "Vec<Poset>")]
pub struct MultiOrder {
    orders: Vec<Poset>,
}

impl TryFrom<Vec<Poset>> for MultiOrder {
    type Error = Error;
    fn try_from(orders: Vec<Poset>) -> Result<Self> {
        MultiOrder::new(orders)
    }
}

impl From<MultiOrder> for Vec<Poset> {
    fn from(m: MultiOrder) -> Self {
        m.orders
    }
}

impl MultiOrder {
    pub fn new(orders: Vec<Poset>) -> Result<Self> {
        let Some(n) = orders.first().map(Poset::n) else {
            return Err(Error::InvalidInput("need at least one order".into()));
        };
        if orders.iter().any(|p| p.n() != n) {
            return Err(Error::InvalidInput("orders must share the ground set".into()));
        }
        Ok(Self { orders })
    }

    pub fn n(&self) -> usize {
        self.orders[0].n()
    }

    pub fn r(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[Poset] {
        &self.orders
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.orders.iter().any(|p| p.comparable(a, b))
    }

    fn neighbours(&self, a: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.n());
        for p in &self.orders {
            s.union_with(p.above(a));
            s.union_with(p.below(a));
        }
        s
    }

    /// Random dimension-2 orders.
    pub fn random_perm2(n: usize, r: usize, seed: u64) -> Self {
        Self { orders: (0..r as u64).map(|i| Poset::random_perm2(n, seed.wrapping_add(i))).collect() }
    }
}

/// p_i(x) for every vertex of a clique; rows follow `vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PVectors {
    #[serde(with = "crate::serde_util::one_based")]
    pub vertices: Vec<usize>,
    pub p: Vec<Vec<usize>>,
}

impl PVectors {
    pub fn is_injective(&self) -> bool {
        let mut v = self.p.clone();
        v.sort();
        v.windows(2).all(|w| w[0] != w[1])
    }
}

/// Longest ≺_i-chain starting at x inside the clique, for each order i.
pub fn p_vector(clique: &[usize], m: &MultiOrder) -> Result<PVectors> {
    for (i, &a) in clique.iter().enumerate() {
        if a >= m.n() {
            return Err(Error::VertexOutOfRange { index: a, n: m.n() });
        }
        if let Some(&b) = clique[i + 1..].iter().find(|&&b| b == a || !m.adjacent(a, b)) {
            return Err(Error::NotAClique(format!("{} and {} are not adjacent", a + 1, b + 1)));
        }
    }
    let mut p = vec![vec![1usize; m.r()]; clique.len()];
    for (i, order) in m.orders().iter().enumerate() {
        // x ≺ y implies |above(x)| > |above(y)|, so this visits tops first.
        let mut idx: Vec<usize> = (0..clique.len()).collect();
        idx.sort_by_key(|&a| order.above(clique[a]).count_ones(..));
        for &a in &idx {
            p[a][i] = 1 + idx
                .iter()
                .filter(|&&b| order.less(clique[a], clique[b]))
                .map(|&b| p[b][i])
                .max()
                .unwrap_or(0);
        }
    }
    let out = PVectors { vertices: clique.to_vec(), p };
    debug_assert!(out.is_injective());
    Ok(out)
}

/// Parts of a complete multipartite subgraph of a comparability graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparabilityBlowup {
    /// D₁ ≺ D₂ ≺ ⋯ ≺ D_h.
    #[serde(with = "crate::serde_util::one_based_sets")]
    pub parts: Vec<Vec<usize>>,
    /// x₂ ≺ x₄ ≺ ⋯ ≺ x_{2h−2}.
    #[serde(with = "crate::serde_util::one_based")]
    pub spine: Vec<usize>,
    /// ∏|D_i|, the number of (2h−1)-chains through the spine.
    pub completions: u128,
}

impl ComparabilityBlowup {
    /// Smallest part size.
    pub fn size(&self) -> usize {
        self.parts.iter().map(Vec::len).min().unwrap_or(0)
    }
}

/// Nonempty disjoint parts with every cross pair comparable.
pub fn verify_comparability_blowup(p: &Poset, parts: &[Vec<usize>]) -> bool {
    let mut seen = FixedBitSet::with_capacity(p.n());
    for part in parts {
        if part.is_empty() {
            return false;
        }
        for &v in part {
            if v >= p.n() || seen.put(v) {
                return false;
            }
        }
    }
    parts.iter().enumerate().all(|(i, a)| parts[i + 1..].iter().all(|b| a.iter().all(|&x| b.iter().all(|&y| p.comparable(x, y)))))
}

/// Best spine by dynamic programming over the order; `None` when there is
/// no (2h−1)-chain.
pub fn find_blowup_r1(p: &Poset, h: usize) -> Option<ComparabilityBlowup> {
    assert!(h >= 2, "h must be at least 2");
    let n = p.n();
    let ext = p.linear_extension();
    // best[j][v]: max ∏|D_1..D_{j+1}| over spines ending at v as (j+1)-th element.
    let mut best: Vec<Vec<u128>> = vec![vec![0; n]; h - 1];
    let mut back: Vec<Vec<usize>> = vec![vec![usize::MAX; n]; h - 1];
    for &v in &ext {
        best[0][v] = p.below(v).count_ones(..) as u128;
    }
    for j in 1..h - 1 {
        for &w in &ext {
            for v in p.below(w).ones() {
                if best[j - 1][v] == 0 {
                    continue;
                }
                let between = p.above(v).intersection_count(p.below(w)) as u128;
                let val = best[j - 1][v].saturating_mul(between);
                if val > best[j][w] {
                    best[j][w] = val;
                    back[j][w] = v;
                }
            }
        }
    }
    let (total, last) = ext
        .iter()
        .map(|&v| (best[h - 2][v].saturating_mul(p.above(v).count_ones(..) as u128), v))
        .max_by_key(|&(val, v)| (val, std::cmp::Reverse(v)))?;
    if total == 0 {
        return None;
    }
    let mut spine = vec![last];
    for j in (1..h - 1).rev() {
        spine.push(back[j][*spine.last().unwrap()]);
    }
    spine.reverse();
    let mut parts = Vec::with_capacity(h);
    parts.push(p.below(spine[0]).ones().collect::<Vec<_>>());
    for w in spine.windows(2) {
        let mut d = p.above(w[0]).clone();
        d.intersect_with(p.below(w[1]));
        parts.push(d.ones().collect());
    }
    parts.push(p.above(spine[h - 2]).ones().collect());
    debug_assert!(verify_comparability_blowup(p, &parts));
    Some(ComparabilityBlowup { parts, spine, completions: total })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CliqueSource {
    /// Every k-clique, stopping after `cap` of them.
    Exact { cap: u64 },
    /// Random greedy k-cliques from `attempts` seeded trials.
    Sampled { attempts: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiBlowup {
    /// 0-based index of the order the blowup lives in.
    pub order: usize,
    pub blowup: ComparabilityBlowup,
    pub k: usize,
    pub cliques_examined: u64,
    /// Per order, the number of cliques containing a (2h−1)-chain of it.
    pub tallies: Vec<u64>,
    /// Cliques whose p-vectors were not injective (never expected).
    pub injectivity_violations: u64,
}

fn enumerate_cliques(m: &MultiOrder, k: usize, cap: u64, f: &mut dyn FnMut(&[usize])) -> u64 {
    fn go(
        m: &MultiOrder,
        nb: &[FixedBitSet],
        cur: &mut Vec<usize>,
        cand: &FixedBitSet,
        k: usize,
        cap: u64,
        count: &mut u64,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if *count >= cap {
            return;
        }
        if cur.len() == k {
            *count += 1;
            f(cur);
            return;
        }
        for v in cand.ones() {
            if cand.count_ones(v..) + cur.len() < k {
                break;
            }
            let mut next = cand.clone();
            next.intersect_with(&nb[v]);
            next.remove_range(..v + 1);
            cur.push(v);
            go(m, nb, cur, &next, k, cap, count, f);
            cur.pop();
            if *count >= cap {
                return;
            }
        }
    }
    let nb: Vec<FixedBitSet> = (0..m.n()).map(|v| m.neighbours(v)).collect();
    let mut all = FixedBitSet::with_capacity(m.n());
    all.insert_range(..);
    let mut count = 0;
    go(m, &nb, &mut Vec::with_capacity(k), &all, k, cap, &mut count, f);
    count
}

fn sample_cliques(m: &MultiOrder, k: usize, attempts: u64, seed: u64, f: &mut dyn FnMut(&[usize])) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nb: Vec<FixedBitSet> = (0..m.n()).map(|v| m.neighbours(v)).collect();
    let all: Vec<usize> = (0..m.n()).collect();
    let mut found = 0;
    for _ in 0..attempts {
        let mut cand = FixedBitSet::with_capacity(m.n());
        cand.insert_range(..);
        let mut clique = Vec::with_capacity(k);
        let mut pool = all.clone();
        while clique.len() < k {
            let Some(&v) = pool.choose(&mut rng) else { break };
            clique.push(v);
            cand.intersect_with(&nb[v]);
            pool = cand.ones().collect();
        }
        if clique.len() == k {
            clique.sort_unstable();
            found += 1;
            f(&clique);
        }
    }
    found
}

/// Tallies, over available k-cliques, which orders contain a (2h−1)-chain
/// inside the clique, then extracts a blowup from the most frequent order.
pub fn find_blowup_multi(m: &MultiOrder, h: usize, source: CliqueSource) -> Result<MultiBlowup> {
    if h < 2 {
        return Err(Error::ParameterOutOfRange { name: "h", detail: format!("{h} < 2") });
    }
    let r = m.r();
    let k = (2 * h - 2).checked_pow(r as u32).and_then(|x| x.checked_add(1)).filter(|&k| k <= m.n().max(1) + 1);
    let Some(k) = k else {
        return Err(Error::ParameterOutOfRange { name: "h", detail: "(2h-2)^r + 1 exceeds n".into() });
    };
    let mut tallies = vec![0u64; r];
    let mut violations = 0u64;
    let mut visit = |clique: &[usize]| {
        let pv = p_vector(clique, m).expect("enumerated cliques are cliques");
        if !pv.is_injective() {
            violations += 1;
        }
        for (i, t) in tallies.iter_mut().enumerate() {
            if pv.p.iter().any(|row| row[i] >= 2 * h - 1) {
                *t += 1;
            }
        }
    };
    let examined = match source {
        CliqueSource::Exact { cap } => enumerate_cliques(m, k, cap, &mut visit),
        CliqueSource::Sampled { attempts, seed } => sample_cliques(m, k, attempts, seed, &mut visit),
    };
    if examined == 0 {
        return Err(Error::NotFound(format!("no {k}-cliques in the union graph")));
    }
    let order = (0..r).max_by_key(|&i| (tallies[i], std::cmp::Reverse(i))).unwrap();
    let blowup = find_blowup_r1(&m.orders()[order], h)
        .ok_or_else(|| Error::NotFound(format!("order {} has no {}-chain", order + 1, 2 * h - 1)))?;
    Ok(MultiBlowup { order, blowup, k, cliques_examined: examined, tallies, injectivity_violations: violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_vector_examples() {
        let m = MultiOrder::new(vec![Poset::total_order(4)]).unwrap();
        let pv = p_vector(&[0, 1, 2, 3], &m).unwrap();
        assert_eq!(pv.p, vec![vec![4], vec![3], vec![2], vec![1]]);
        let rev = Poset::from_relations(3, &[(2, 1), (1, 0)]).unwrap();
        let m = MultiOrder::new(vec![Poset::total_order(3), rev]).unwrap();
        let pv = p_vector(&[0, 1, 2], &m).unwrap();
        assert_eq!(pv.p, vec![vec![3, 1], vec![2, 2], vec![1, 3]]);
        assert!(pv.is_injective());
        let m = MultiOrder::new(vec![Poset::antichain(3)]).unwrap();
        assert!(matches!(p_vector(&[0, 1], &m), Err(Error::NotAClique(_))));
    }

    #[test]
    fn r1_examples() {
        let p = Poset::block_order(&[5, 5, 5]);
        let b = find_blowup_r1(&p, 2).unwrap();
        assert!(verify_comparability_blowup(&p, &b.parts));
        assert!(b.size() >= 5);
        assert!(find_blowup_r1(&Poset::antichain(10), 2).is_none());
        let t = find_blowup_r1(&Poset::total_order(9), 2).unwrap();
        assert_eq!(t.spine, vec![4]);
        assert_eq!((t.parts[0].len(), t.parts[1].len()), (4, 4));
        let h3 = find_blowup_r1(&Poset::block_order(&[3, 3, 3, 3, 3]), 3).unwrap();
        assert_eq!(h3.completions, 27);
        assert!(verify_comparability_blowup(&Poset::block_order(&[3, 3, 3, 3, 3]), &h3.parts));
    }

    #[test]
    fn multi_picks_the_chain_order() {
        let m = MultiOrder::new(vec![Poset::total_order(12), Poset::antichain(12)]).unwrap();
        let r = find_blowup_multi(&m, 2, CliqueSource::Exact { cap: 1_000_000 }).unwrap();
        assert_eq!(r.order, 0);
        assert_eq!(r.k, 5);
        assert_eq!(r.injectivity_violations, 0);
        let m = MultiOrder::new(vec![Poset::antichain(12), Poset::antichain(12)]).unwrap();
        assert!(matches!(find_blowup_multi(&m, 2, CliqueSource::Exact { cap: 10 }), Err(Error::NotFound(_))));
    }

    #[test]
    fn random_multiorders() {
        for seed in 0..5 {
            let m = MultiOrder::random_perm2(30, 2, seed);
            match find_blowup_multi(&m, 2, CliqueSource::Exact { cap: 200_000 }) {
                Ok(r) => {
                    assert_eq!(r.injectivity_violations, 0);
                    assert!(verify_comparability_blowup(&m.orders()[r.order], &r.blowup.parts));
                }
                Err(Error::NotFound(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}
