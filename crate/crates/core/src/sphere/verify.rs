//! Checks run against a built construction.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::construction::ConstructionGraph;
use crate::graph::{
    clique_density, find_balanced_biclique, find_induced_monotone_path, Blowup, BlowupOptions, DensityEstimate,
    DensityMode, PathSearch,
};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub path_node_budget: u64,
    pub density_samples: u64,
    pub seed: u64,
    pub biclique: BlowupOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            path_node_budget: 50_000_000,
            density_samples: 200_000,
            seed: 0,
            biclique: BlowupOptions { greedy_restarts: 8, ..BlowupOptions::default() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub type2_edges: usize,
    pub pairs_checked: u64,
    pub violations: u64,
    /// First offending quadruple (p₁, p₂, q₁, q₂), 1-based.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<[usize; 4]>,
}

impl KernelReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BicliqueReport {
    pub t: usize,
    pub optimal: bool,
    pub blowup: Blowup,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstructionReport {
    /// Length of the forbidden path, 2k − 1.
    pub path_length: usize,
    pub path: PathSearch,
    pub kernel: KernelReport,
    /// K_r density of the complement, r = max(k²/4, 2).
    pub complement_density: DensityEstimate,
    /// Largest balanced biclique found in the complement.
    pub complement_biclique: BicliqueReport,
}

/// No two type-2 edges in different groups may be completely non-adjacent
/// across: that would be four points violating the quadruple theorem.
pub fn kernel_scan(cg: &ConstructionGraph) -> KernelReport {
    let s = cg.spec.groups();
    let mut per_group: Vec<Vec<(usize, usize)>> = vec![Vec::new(); s];
    for (u, v) in cg.graph.edges() {
        if cg.edge_type(u, v) == Some(2) {
            per_group[cg.group_of(u)].push((u, v));
        }
    }
    let g = &cg.graph;
    let mut jobs = Vec::new();
    for a in 0..s {
        for b in a + 1..s {
            for &e in &per_group[a] {
                jobs.push((e, b));
            }
        }
    }
    let results: Vec<(u64, u64, Option<[usize; 4]>)> = jobs
        .par_iter()
        .map(|&((p1, p2), b)| {
            let mut checked = 0u64;
            let mut bad = 0u64;
            let mut example = None;
            for &(q1, q2) in &per_group[b] {
                checked += 1;
                if [q1, q2].iter().all(|&q| !g.has_edge(p1, q) && !g.has_edge(p2, q)) {
                    bad += 1;
                    example.get_or_insert([p1 + 1, p2 + 1, q1 + 1, q2 + 1]);
                }
            }
            (checked, bad, example)
        })
        .collect();
    KernelReport {
        type2_edges: per_group.iter().map(Vec::len).sum(),
        pairs_checked: results.iter().map(|r| r.0).sum(),
        violations: results.iter().map(|r| r.1).sum(),
        example: results.iter().find_map(|r| r.2),
    }
}

pub fn verify_construction(cg: &ConstructionGraph, opts: &VerifyOptions) -> ConstructionReport {
    let k = cg.spec.k;
    let m = 2 * k - 1;
    let path = find_induced_monotone_path(&cg.graph, m, opts.path_node_budget);
    let kernel = kernel_scan(cg);
    let complement = cg.graph.complement();
    let r = (k * k / 4).max(2).min(cg.n());
    let complement_density = clique_density(&complement, r, DensityMode::Sample { samples: opts.density_samples.max(1), seed: opts.seed })
        .expect("r is within 1..=n");
    let bic = find_balanced_biclique(&complement, &opts.biclique);
    ConstructionReport {
        path_length: m,
        path,
        kernel,
        complement_density,
        complement_biclique: BicliqueReport { t: bic.blowup.t(), optimal: bic.optimal, blowup: bic.blowup },
    }
}

#[cfg(test)]
mod tests {
    use super::super::construction::{build_construction, ConstructionSpec};
    use super::*;
    use crate::graph::PathOutcome;

    #[test]
    fn k2_report() {
        let cg = build_construction(&ConstructionSpec::new(2, 3, 20, 0.3, 1)).unwrap();
        let r = verify_construction(&cg, &VerifyOptions::default());
        assert_eq!(r.path.outcome, PathOutcome::None);
        assert!(r.kernel.holds());
        assert_eq!(r.complement_density.point, 0.0);
        let s = serde_json::to_string(&r).unwrap();
        let back: ConstructionReport = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn small_k4() {
        let cg = build_construction(&ConstructionSpec::new(4, 4, 200, 0.45, 2)).unwrap();
        let r = verify_construction(&cg, &VerifyOptions::default());
        assert_eq!(r.path.outcome, PathOutcome::None);
        assert!(r.kernel.holds());
    }
}
