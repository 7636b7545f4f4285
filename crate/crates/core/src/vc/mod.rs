//! Set systems, shattering and VC-dimension, s-separated packings, and the
//! biclique algorithms for graphs of bounded VC-dimension.

mod biclique;
mod examples;

pub use biclique::{
    biclique_via_packing, dense_vc1_biclique, PackingBiclique, vc1_checks, Vc1Case, Vc1Options, Vc1Report, Vc1Thresholds, VcBiclique,
};
pub use examples::{find_c4, make_vc2_no_b2_example, nested_half_graph, Vc2Example};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::OrderedGraph;

pub const DEFAULT_SHATTER_CAP: usize = 20;

/// Family of subsets of `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SetSystemJson", into = "SetSystemJson")]
pub struct SetSystem {
    n: usize,
    members: Vec<FixedBitSet>,
}

/// 1-based wire form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SetSystemJson {
    pub n: usize,
    pub members: Vec<Vec<usize>>,
}

impl TryFrom<SetSystemJson> for SetSystem {
    type Error = Error;
    fn try_from(j: SetSystemJson) -> Result<Self> {
        let members = j
            .members
            .into_iter()
            .map(|m| m.into_iter().map(|x| x.checked_sub(1).ok_or(Error::VertexOutOfRange { index: 0, n: j.n })).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        SetSystem::new(j.n, members)
    }
}

impl From<SetSystem> for SetSystemJson {
    fn from(s: SetSystem) -> Self {
        SetSystemJson { n: s.n, members: s.members.iter().map(|m| m.ones().map(|x| x + 1).collect()).collect() }
    }
}

impl SetSystem {
    pub fn new(n: usize, members: Vec<Vec<usize>>) -> Result<Self> {
        let mut out = Vec::with_capacity(members.len());
        for m in members {
            let mut b = FixedBitSet::with_capacity(n);
            for x in m {
                if x >= n {
                    return Err(Error::VertexOutOfRange { index: x, n });
                }
                b.insert(x);
            }
            out.push(b);
        }
        Ok(Self { n, members: out })
    }

    /// {N(v) : v ∈ V(G)}.
    pub fn neighborhoods(g: &OrderedGraph) -> Self {
        Self { n: g.n(), members: (0..g.n()).map(|v| g.neighbors(v).clone()).collect() }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[FixedBitSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// For each element, the set of member indices containing it.
    fn columns(&self) -> Vec<FixedBitSet> {
        let mut cols = vec![FixedBitSet::with_capacity(self.members.len()); self.n];
        for (i, m) in self.members.iter().enumerate() {
            for x in m.ones() {
                cols[x].insert(i);
            }
        }
        cols
    }
}

fn traces_cover(f: &SetSystem, s: &[usize]) -> bool {
    let need = 1usize << s.len();
    if f.members.len() < need {
        return false;
    }
    let mut seen = FixedBitSet::with_capacity(need);
    let mut count = 0;
    for m in &f.members {
        let code = s.iter().enumerate().fold(0usize, |acc, (i, &x)| acc | (usize::from(m.contains(x)) << i));
        if !seen.put(code) {
            count += 1;
            if count == need {
                return true;
            }
        }
    }
    false
}

/// Whether every subset of `s` is the trace F ∩ S of some member.
pub fn is_shattered(s: &[usize], f: &SetSystem, cap: usize) -> Result<bool> {
    if s.len() > cap {
        return Err(Error::CapExceeded(format!("|S| = {} exceeds shattering cap {cap}", s.len())));
    }
    if let Some(&x) = s.iter().find(|&&x| x >= f.n) {
        return Err(Error::VertexOutOfRange { index: x, n: f.n });
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput("S has repeated elements".into()));
    }
    Ok(traces_cover(f, &sorted))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VcDimension {
    pub value: usize,
    /// True when the search stopped at the cap: the dimension is ≥ value.
    pub capped: bool,
    /// A largest shattered set found (1-based).
    #[serde(with = "crate::serde_util::one_based")]
    pub witness: Vec<usize>,
}

/// Largest shattered set, grown level by level from shattered sets only
/// (every subset of a shattered set is shattered).
pub fn vc_dimension(f: &SetSystem, cap: usize) -> VcDimension {
    if f.members.is_empty() || cap == 0 {
        return VcDimension { value: 0, capped: cap == 0 && !f.members.is_empty(), witness: Vec::new() };
    }
    let cols = f.columns();
    let m = f.members.len();
    let mut all = FixedBitSet::with_capacity(m);
    all.insert_range(..);
    let singles: Vec<usize> = (0..f.n)
        .filter(|&x| {
            let c = cols[x].count_ones(..);
            c > 0 && c < m
        })
        .collect();
    let Some(&first) = singles.first() else {
        return VcDimension { value: 0, capped: false, witness: Vec::new() };
    };
    if cap == 1 {
        return VcDimension { value: 1, capped: true, witness: vec![first] };
    }
    // partner[x] = {y > x : {x, y} shattered}.
    let mut partner = vec![FixedBitSet::with_capacity(f.n); f.n];
    let mut level: Vec<Vec<usize>> = Vec::new();
    for (i, &x) in singles.iter().enumerate() {
        for &y in &singles[i + 1..] {
            if pair_shattered(&cols[x], &cols[y], &all) {
                partner[x].insert(y);
                level.push(vec![x, y]);
            }
        }
    }
    if level.is_empty() {
        return VcDimension { value: 1, capped: false, witness: vec![first] };
    }
    let mut size = 2;
    let mut best = level[0].clone();
    let mut cand_set = FixedBitSet::with_capacity(f.n);
    while size < cap && m >= 1 << (size + 1) {
        let known: std::collections::HashSet<&[usize]> = level.iter().map(Vec::as_slice).collect();
        let last_level = size + 1 == cap;
        let mut next: Vec<Vec<usize>> = Vec::new();
        'outer: for s in &level {
            cand_set.clone_from(&partner[s[0]]);
            for &x in &s[1..] {
                cand_set.intersect_with(&partner[x]);
            }
            let mut sub = Vec::with_capacity(size);
            for z in cand_set.ones() {
                let mut cand = s.clone();
                cand.push(z);
                // Pairs with z are covered by the partner sets; check the
                // remaining subsets of size `size` that contain z.
                let ok = size < 3
                    || (0..size).all(|skip| {
                        sub.clear();
                        sub.extend(cand.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                        known.contains(sub.as_slice())
                    });
                if ok && traces_cover(f, &cand) {
                    next.push(cand);
                    if last_level {
                        break 'outer;
                    }
                }
            }
        }
        if next.is_empty() {
            return VcDimension { value: size, capped: false, witness: best };
        }
        size += 1;
        best = next[0].clone();
        level = next;
    }
    let capped = size == cap;
    VcDimension { value: size, capped, witness: best }
}

fn pair_shattered(a: &FixedBitSet, b: &FixedBitSet, all: &FixedBitSet) -> bool {
    let both = a.intersection_count(b);
    let only_a = a.difference_count(b);
    let only_b = b.difference_count(a);
    let neither = all.count_ones(..) - both - only_a - only_b;
    both > 0 && only_a > 0 && only_b > 0 && neither > 0
}

/// Greedy maximal s-separated subfamily, scanning members in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingResult {
    pub s: usize,
    /// Member indices (0-based).
    pub centers: Vec<usize>,
}

impl PackingResult {
    /// Pairwise separation and maximality, by direct scan.
    pub fn verify(&self, f: &SetSystem) -> bool {
        let sep = |a: usize, b: usize| f.members[a].symmetric_difference_count(&f.members[b]) >= self.s;
        let separated = self.centers.iter().enumerate().all(|(i, &a)| self.centers[i + 1..].iter().all(|&b| sep(a, b)));
        let maximal = (0..f.len()).all(|x| self.centers.contains(&x) || self.centers.iter().any(|&c| !sep(x, c)));
        separated && maximal
    }
}

pub fn haussler_packing(f: &SetSystem, s: usize) -> PackingResult {
    assert!(s >= 1, "separation must be positive");
    let mut centers: Vec<usize> = Vec::new();
    for (i, m) in f.members.iter().enumerate() {
        if centers.iter().all(|&c| f.members[c].symmetric_difference_count(m) >= s) {
            centers.push(i);
        }
    }
    PackingResult { s, centers }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_vc(f: &SetSystem) -> usize {
        let n = f.ground_size();
        (0u32..1 << n)
            .filter(|&mask| {
                let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                traces_cover(f, &s)
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn shattering_examples() {
        let k5 = SetSystem::neighborhoods(&OrderedGraph::complete(5));
        assert!(is_shattered(&[], &k5, 20).unwrap());
        assert!(!is_shattered(&[0, 1], &k5, 20).unwrap());
        let all = SetSystem::new(2, vec![vec![], vec![0], vec![1], vec![0, 1]]).unwrap();
        assert!(is_shattered(&[0, 1], &all, 20).unwrap());
        assert!(matches!(is_shattered(&[0, 1], &all, 1), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(vc_dimension(&SetSystem::neighborhoods(&OrderedGraph::empty(6)), 5).value, 0);
        for n in 3..8 {
            assert_eq!(vc_dimension(&SetSystem::neighborhoods(&OrderedGraph::complete(n)), 5).value, 1);
        }
        let all = SetSystem::new(3, (0..8).map(|m: usize| (0..3).filter(|i| m >> i & 1 == 1).collect()).collect())
            .unwrap();
        assert_eq!(vc_dimension(&all, 10), VcDimension { value: 3, capped: false, witness: vec![0, 1, 2] });
        assert!(vc_dimension(&all, 2).capped);
    }

    #[test]
    fn dimension_matches_brute_force() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let g = OrderedGraph::random(9, 0.5, &mut rng);
            let f = SetSystem::neighborhoods(&g);
            assert_eq!(vc_dimension(&f, 9).value, brute_vc(&f));
        }
    }

    #[test]
    fn packing_examples() {
        let same = SetSystem::new(4, vec![vec![0, 1]; 5]).unwrap();
        assert_eq!(haussler_packing(&same, 1).centers, vec![0]);
        let singles = SetSystem::new(6, (0..6).map(|i| vec![i]).collect()).unwrap();
        let p = haussler_packing(&singles, 2);
        assert_eq!(p.centers.len(), 6);
        assert!(p.verify(&singles));
    }
}
