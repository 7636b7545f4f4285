//! Homogeneous partition of an incomparability graph.
//!
//! Elements are listed along a linear extension and cut into s equal
//! intervals. Inside each interval, groups of ℓ blocks B¹ ≺ ⋯ ≺ B^ℓ of size t
//! are extracted repeatedly; if the dichotomy instead yields k pairwise
//! incomparable sets of size q, that K_k[q] is returned. Blocks become the
//! parts, leftovers form V₀, and inhomogeneous part pairs are counted
//! exactly. Two block groups from different intervals have at most 2ℓ − 1
//! inhomogeneous pairs, because such pairs (u, u′) have distinct sums u + u′.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{chain_or_antichain_in, verify_incomparable_sets, ChainBlocks, Dichotomy, Poset};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionParams {
    pub k: usize,
    pub eps: f64,
    /// Block (part) size.
    pub t: usize,
    /// Size of each incomparable set in a blowup witness.
    pub q: usize,
    /// Number of intervals.
    pub s: usize,
    /// Blocks per extracted group.
    pub l: usize,
}

impl PartitionParams {
    /// The asymptotic choices s = 10/ε, ℓ = 10k/ε, t = ε⁷n/(10¹¹k⁵),
    /// q = ε⁴n/(10⁵k² log n), each rounded and clamped to at least 1.
    pub fn asymptotic(n: usize, k: usize, eps: f64) -> Self {
        let nf = n as f64;
        let kf = k as f64;
        Self {
            k,
            eps,
            t: ((eps.powi(7) * nf / (1e11 * kf.powi(5))).floor() as usize).max(1),
            q: ((eps.powi(4) * nf / (1e5 * kf * kf * nf.ln().max(1.0))).floor() as usize).max(1),
            s: (10.0 / eps).ceil() as usize,
            l: (10.0 * kf / eps).ceil() as usize,
        }
    }

    /// Desk scale: s = ⌈2/ε⌉ and ℓ = ⌈2k/ε⌉ keep the inhomogeneity bound
    /// 1/s + 2/ℓ ≤ ε; t = q = max(1, ⌊εn / (8sℓ)⌋).
    pub fn desk(n: usize, k: usize, eps: f64) -> Self {
        let s = (2.0 / eps).ceil() as usize;
        let l = (2.0 * k as f64 / eps).ceil() as usize;
        let t = ((eps * n as f64 / (8 * s * l) as f64).floor() as usize).max(1);
        Self { k, eps, t, q: t, s, l }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let bad = |name, detail: String| Err(Error::ParameterOutOfRange { name, detail });
        if self.k < 2 {
            return bad("k", format!("{} < 2", self.k));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return bad("eps", format!("{} not in (0, 1)", self.eps));
        }
        if self.t == 0 || self.q == 0 || self.s == 0 || self.l == 0 {
            return bad("t/q/s/l", "all must be positive".into());
        }
        if self.s * self.l * self.t > n {
            return bad("s*l*t", format!("{} exceeds n = {n}", self.s * self.l * self.t));
        }
        Ok(())
    }

    /// Groups wanted per interval, m₀ = ⌈(1−ε)n/(stℓ)⌉.
    pub fn m0(&self, n: usize) -> usize {
        ((1.0 - self.eps) * n as f64 / (self.s * self.t * self.l) as f64).ceil() as usize
    }
}

/// Block groups extracted from one interval, in extraction order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalChains {
    pub interval: usize,
    pub groups: Vec<ChainBlocks>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PartitionResult {
    Partition {
        #[serde(with = "crate::serde_util::one_based")]
        v0: Vec<usize>,
        /// Parts ordered by (interval, group, block).
        #[serde(with = "crate::serde_util::one_based_sets")]
        parts: Vec<Vec<usize>>,
        /// 0-based part index pairs (a < b) that are not homogeneous.
        inhomogeneous: Vec<(usize, usize)>,
        /// Groups requested per interval.
        m0: usize,
        chains: Vec<IntervalChains>,
        /// Set when extraction stopped early and V₀ exceeds εn.
        v0_exceeds: bool,
    },
    BlowupWitness {
        #[serde(with = "crate::serde_util::one_based_sets")]
        parts: Vec<Vec<usize>>,
        interval: usize,
    },
}

impl PartitionResult {
    /// Inhomogeneous pairs divided by m², or 0 for witnesses and m = 0.
    pub fn inhomogeneous_fraction(&self) -> f64 {
        match self {
            PartitionResult::Partition { parts, inhomogeneous, .. } if !parts.is_empty() => {
                inhomogeneous.len() as f64 / (parts.len() * parts.len()) as f64
            }
            _ => 0.0,
        }
    }
}

/// All a ≺ b, all b ≺ a, or all incomparable.
pub fn homogeneous(p: &Poset, a: &[usize], b: &[usize]) -> bool {
    let all = |f: &dyn Fn(usize, usize) -> bool| a.iter().all(|&x| b.iter().all(|&y| f(x, y)));
    all(&|x, y| p.less(x, y)) || all(&|x, y| p.less(y, x)) || all(&|x, y| !p.comparable(x, y))
}

fn inhomogeneous_pairs(p: &Poset, parts: &[Vec<usize>]) -> Vec<(usize, usize)> {
    (0..parts.len())
        .into_par_iter()
        .flat_map_iter(|a| (a + 1..parts.len()).filter(move |&b| !homogeneous(p, &parts[a], &parts[b])).map(move |b| (a, b)))
        .collect()
}

pub fn incomparability_partition(p: &Poset, params: &PartitionParams) -> Result<PartitionResult> {
    let n = p.n();
    params.validate(n)?;
    let PartitionParams { k, eps, t, q, s, l } = *params;
    let ext = p.linear_extension();
    let m0 = params.m0(n);
    let mut chains = Vec::with_capacity(s);
    let mut used = FixedBitSet::with_capacity(n);
    for i in 0..s {
        let mut rest = p.set(ext[i * n / s..(i + 1) * n / s].iter().copied());
        let mut groups = Vec::new();
        while groups.len() < m0 {
            match chain_or_antichain_in(p, &rest, l, t, q) {
                Dichotomy::Chain(c) => {
                    for &v in c.blocks.iter().flatten() {
                        rest.set(v, false);
                        used.insert(v);
                    }
                    groups.push(c);
                }
                Dichotomy::Antichain { sets } if sets.len() >= k => {
                    let parts: Vec<Vec<usize>> = sets.into_iter().take(k).collect();
                    assert!(verify_incomparable_sets(p, &parts), "antichain witness must be incomparable");
                    return Ok(PartitionResult::BlowupWitness { parts, interval: i });
                }
                _ => break,
            }
        }
        chains.push(IntervalChains { interval: i, groups });
    }
    let parts: Vec<Vec<usize>> =
        chains.iter().flat_map(|c| c.groups.iter().flat_map(|g| g.blocks.iter().cloned())).collect();
    if parts.is_empty() {
        return Err(Error::ParameterInfeasible(format!(
            "no interval admits {l} blocks of size {t} or {l} incomparable sets of size {q}"
        )));
    }
    let v0: Vec<usize> = (0..n).filter(|&v| !used.contains(v)).collect();
    let inhomogeneous = inhomogeneous_pairs(p, &parts);
    let v0_exceeds = v0.len() as f64 > eps * n as f64;
    Ok(PartitionResult::Partition { v0, parts, inhomogeneous, m0, chains, v0_exceeds })
}

/// Checks every invariant of a result; the error names the first failure.
pub fn check_partition(p: &Poset, result: &PartitionResult, params: &PartitionParams) -> Result<()> {
    let n = p.n();
    let fail = |m: String| Err(Error::InvalidInput(m));
    match result {
        PartitionResult::BlowupWitness { parts, .. } => {
            if parts.len() != params.k || parts.iter().any(|s| s.len() != params.q) {
                return fail(format!("witness must be {} sets of size {}", params.k, params.q));
            }
            if !verify_incomparable_sets(p, parts) {
                return fail("witness sets are not pairwise incomparable".into());
            }
        }
        PartitionResult::Partition { v0, parts, inhomogeneous, .. } => {
            let mut seen = FixedBitSet::with_capacity(n);
            for &v in v0.iter().chain(parts.iter().flatten()) {
                if v >= n || seen.put(v) {
                    return fail(format!("element {} repeated or out of range", v + 1));
                }
            }
            if seen.count_ones(..) != n {
                return fail("parts and V0 do not cover every element".into());
            }
            if parts.iter().any(|b| b.len() != params.t) {
                return fail(format!("parts must all have size {}", params.t));
            }
            if v0.len() as f64 > params.eps * n as f64 {
                return fail(format!("|V0| = {} exceeds eps*n = {}", v0.len(), params.eps * n as f64));
            }
            if *inhomogeneous != inhomogeneous_pairs(p, parts) {
                return fail("inhomogeneous pair list is not exact".into());
            }
            let frac = result.inhomogeneous_fraction();
            if frac > params.eps {
                return fail(format!("inhomogeneous fraction {frac} exceeds eps"));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim52Audit {
    pub l: usize,
    /// 1-based (u, u′) with (B^u, B′^{u′}) inhomogeneous.
    pub pairs: Vec<(usize, usize)>,
    pub within_bound: bool,
    pub distinct_sums: bool,
}

impl Claim52Audit {
    pub fn passes(&self) -> bool {
        self.within_bound && self.distinct_sums
    }
}

/// Audits two block groups; every element of `first` must precede every
/// element of `second` in the linear extension given by `pos`
/// (`pos[x]` = position of x).
pub fn claim52_audit(p: &Poset, pos: &[usize], first: &ChainBlocks, second: &ChainBlocks) -> Result<Claim52Audit> {
    let l = first.blocks.len();
    if second.blocks.len() != l || l == 0 {
        return Err(Error::InvalidInput("block groups must have the same positive length".into()));
    }
    if !first.is_valid(p) || !second.is_valid(p) {
        return Err(Error::InvalidInput("blocks are not ordered as declared".into()));
    }
    let last_first = first.blocks.iter().flatten().map(|&x| pos[x]).max().unwrap_or(0);
    let first_second = second.blocks.iter().flatten().map(|&x| pos[x]).min().unwrap_or(usize::MAX);
    if last_first >= first_second {
        return Err(Error::InvalidInput("first group must lie in an earlier interval".into()));
    }
    let asc = |c: &ChainBlocks| -> Vec<Vec<usize>> {
        let mut b = c.blocks.clone();
        if !c.ascending {
            b.reverse();
        }
        b
    };
    let (a, b) = (asc(first), asc(second));
    let mut pairs = Vec::new();
    for (u, x) in a.iter().enumerate() {
        for (v, y) in b.iter().enumerate() {
            if !homogeneous(p, x, y) {
                pairs.push((u + 1, v + 1));
            }
        }
    }
    let mut sums: Vec<usize> = pairs.iter().map(|&(u, v)| u + v).collect();
    sums.sort_unstable();
    let distinct_sums = sums.windows(2).all(|w| w[0] != w[1]);
    Ok(Claim52Audit { l, within_bound: pairs.len() < 2 * l, pairs, distinct_sums })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_order_is_fully_homogeneous() {
        let p = Poset::total_order(120);
        let params = PartitionParams { k: 3, eps: 0.5, t: 2, q: 2, s: 2, l: 6 };
        let r = incomparability_partition(&p, &params).unwrap();
        let PartitionResult::Partition { inhomogeneous, parts, .. } = &r else { panic!("expected partition") };
        assert!(inhomogeneous.is_empty());
        assert!(!parts.is_empty());
        check_partition(&p, &r, &params).unwrap();
    }

    #[test]
    fn antichain_gives_witness() {
        let p = Poset::antichain(60);
        let params = PartitionParams { k: 3, eps: 0.5, t: 2, q: 2, s: 2, l: 6 };
        let r = incomparability_partition(&p, &params).unwrap();
        assert!(matches!(r, PartitionResult::BlowupWitness { .. }));
        check_partition(&p, &r, &params).unwrap();
    }

    #[test]
    fn random_dag_partition_and_audit() {
        let p = Poset::random_dag(600, 0.1, 5);
        let params = PartitionParams::desk(600, 3, 0.5);
        let r = incomparability_partition(&p, &params).unwrap();
        check_partition(&p, &r, &params).unwrap();
        if let PartitionResult::Partition { chains, .. } = &r {
            let mut pos = vec![0; p.n()];
            for (i, &x) in p.linear_extension().iter().enumerate() {
                pos[x] = i;
            }
            for a in chains {
                for b in chains.iter().filter(|b| b.interval > a.interval) {
                    for ga in &a.groups {
                        for gb in &b.groups {
                            assert!(claim52_audit(&p, &pos, ga, gb).unwrap().passes());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn audit_precondition() {
        let p = Poset::total_order(8);
        let pos: Vec<usize> = (0..8).collect();
        let a = ChainBlocks { blocks: vec![vec![0], vec![1]], ascending: true };
        let b = ChainBlocks { blocks: vec![vec![4], vec![5]], ascending: true };
        assert!(claim52_audit(&p, &pos, &a, &b).unwrap().pairs.is_empty());
        assert!(claim52_audit(&p, &pos, &b, &a).is_err());
    }

    #[test]
    fn infeasible_parameters() {
        let p = Poset::block_order(&[10, 10]);
        let params = PartitionParams { k: 3, eps: 0.5, t: 2, q: 5, s: 1, l: 4 };
        assert!(matches!(incomparability_partition(&p, &params), Err(Error::ParameterInfeasible(_))));
        let big = PartitionParams { t: 50, ..params };
        assert!(incomparability_partition(&p, &big).is_err());
    }
}
