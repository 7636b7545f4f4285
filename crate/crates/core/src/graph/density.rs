//! K_r-density ϱ_r(G) = #K_r / C(n, r), exact or by Monte Carlo.

use fixedbitset::FixedBitSet;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::OrderedGraph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityMode {
    /// Count all r-cliques; refused when C(n, r) exceeds the cap.
    Exact { cap: u128 },
    /// Uniform r-subsets from a seeded generator.
    Sample { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub r: usize,
    pub point: f64,
    pub samples: u64,
    /// Hoeffding half-width at 99% confidence; zero when exact.
    pub ci_halfwidth: f64,
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

pub fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of r-cliques, by extension over increasing common neighbourhoods.
pub fn count_cliques(g: &OrderedGraph, r: usize) -> u128 {
    fn go(g: &OrderedGraph, cand: &FixedBitSet, left: usize) -> u128 {
        if left == 0 {
            return 1;
        }
        if left == 1 {
            return cand.count_ones(..) as u128;
        }
        let mut total = 0;
        for v in cand.ones() {
            let mut next = cand.clone();
            next.intersect_with(g.neighbors(v));
            next.remove_range(..v + 1);
            if next.count_ones(..) + 1 >= left {
                total += go(g, &next, left - 1);
            }
        }
        total
    }
    let mut all = FixedBitSet::with_capacity(g.n());
    all.insert_range(..);
    go(g, &all, r)
}

/// Samples drawn per independently seeded chunk; the estimate depends only
/// on the seed, never on the worker count.
const CHUNK: u64 = 1 << 14;

pub fn clique_density(g: &OrderedGraph, r: usize, mode: DensityMode) -> Result<DensityEstimate> {
    let n = g.n();
    if r == 0 || r > n {
        return Err(Error::ParameterOutOfRange { name: "r", detail: format!("need 1 <= r <= n = {n}, got {r}") });
    }
    let total = binomial(n, r);
    match mode {
        DensityMode::Exact { cap } => {
            if total > cap {
                return Err(Error::CapExceeded(format!("C({n},{r}) = {total} > {cap}")));
            }
            let count = count_cliques(g, r);
            Ok(DensityEstimate {
                r,
                point: count as f64 / total as f64,
                samples: total.min(u64::MAX as u128) as u64,
                ci_halfwidth: 0.0,
                exact: true,
                seed: None,
            })
        }
        DensityMode::Sample { samples, seed } => {
            if samples == 0 {
                return Err(Error::ParameterOutOfRange { name: "samples", detail: "must be positive".into() });
            }
            let chunks = samples.div_ceil(CHUNK);
            let hits: u64 = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(c);
                    let len = CHUNK.min(samples - c * CHUNK);
                    let mut hits = 0u64;
                    for _ in 0..len {
                        let s = sample(&mut rng, n, r);
                        let vs = s.into_vec();
                        let clique =
                            (0..vs.len()).all(|i| (i + 1..vs.len()).all(|j| g.has_edge(vs[i], vs[j])));
                        hits += u64::from(clique);
                    }
                    hits
                })
                .sum();
            Ok(DensityEstimate {
                r,
                point: hits as f64 / samples as f64,
                samples,
                ci_halfwidth: hoeffding_halfwidth(samples, 0.01),
                exact: false,
                seed: Some(seed),
            })
        }
    }
}

/// Two-sided Hoeffding bound: P(|p̂ − p| ≥ w) ≤ 2 exp(−2 N w²) = α.
pub fn hoeffding_halfwidth(samples: u64, alpha: f64) -> f64 {
    ((2.0 / alpha).ln() / (2.0 * samples as f64)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: DensityMode = DensityMode::Exact { cap: 50_000_000 };

    #[test]
    fn exact_examples() {
        for r in 1..=5 {
            assert_eq!(clique_density(&OrderedGraph::complete(5), r, CAP).unwrap().point, 1.0);
        }
        assert_eq!(clique_density(&OrderedGraph::empty(5), 2, CAP).unwrap().point, 0.0);
        let mut g = OrderedGraph::complete(4);
        g = OrderedGraph::from_edges(5, &g.edges().collect::<Vec<_>>()).unwrap();
        let d = clique_density(&g, 3, CAP).unwrap();
        assert!((d.point - 0.4).abs() < 1e-15);
        assert!(d.exact && d.ci_halfwidth == 0.0);
    }

    #[test]
    fn cap_and_range() {
        let g = OrderedGraph::complete(30);
        assert!(matches!(clique_density(&g, 10, DensityMode::Exact { cap: 1000 }), Err(Error::CapExceeded(_))));
        assert!(clique_density(&g, 0, CAP).is_err());
        assert!(clique_density(&g, 31, CAP).is_err());
    }

    #[test]
    fn sampling_is_seeded() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = OrderedGraph::random(25, 0.6, &mut rng);
        let a = clique_density(&g, 3, DensityMode::Sample { samples: 40_000, seed: 7 }).unwrap();
        let b = clique_density(&g, 3, DensityMode::Sample { samples: 40_000, seed: 7 }).unwrap();
        assert_eq!(a, b);
        let e = clique_density(&g, 3, CAP).unwrap();
        assert!((a.point - e.point).abs() <= a.ci_halfwidth);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(2000, 4), 664_668_499_500);
    }
}
