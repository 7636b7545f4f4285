use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{haussler_packing, vc_dimension, SetSystem};
use crate::error::{Error, Result};
use crate::graph::{verify_blowup, OrderedGraph};

fn check_density(g: &OrderedGraph, c: f64) -> Result<()> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::ParameterOutOfRange { name: "c", detail: format!("{c} not in (0, 1]") });
    }
    let n = g.n();
    let pairs = (n * n.saturating_sub(1) / 2) as f64;
    if n < 2 || (g.edge_count() as f64) < c * pairs - 1e-9 {
        return Err(Error::DensityPrecondition(format!(
            "e(G) = {} < c·C(n,2) = {:.1}",
            g.edge_count(),
            c * pairs
        )));
    }
    Ok(())
}

/// Repeatedly delete a vertex whose degree in what remains is below
/// `threshold`. Returns the surviving vertex set.
fn trim_low_degree(g: &OrderedGraph, threshold: f64) -> FixedBitSet {
    let mut alive = FixedBitSet::with_capacity(g.n());
    alive.insert_range(..);
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut stack: Vec<usize> = (0..g.n()).filter(|&v| (deg[v] as f64) < threshold).collect();
    while let Some(v) = stack.pop() {
        if !alive.contains(v) {
            continue;
        }
        alive.set(v, false);
        for u in g.neighbors(v).ones() {
            if alive.contains(u) {
                deg[u] -= 1;
                if (deg[u] as f64) < threshold {
                    stack.push(u);
                }
            }
        }
    }
    alive
}

fn common_neighbors(g: &OrderedGraph, set: &[usize], within: &FixedBitSet) -> FixedBitSet {
    let mut c = within.clone();
    for &v in set {
        c.intersect_with(g.neighbors(v));
    }
    c
}

/// Balanced biclique (X, Y): both sides the same size, disjoint, X × Y ⊆ E.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PackingBiclique {
    #[serde(with = "crate::serde_util::one_based")]
    pub left: Vec<usize>,
    #[serde(with = "crate::serde_util::one_based")]
    pub right: Vec<usize>,
    pub q: usize,
    pub d: usize,
    pub s: usize,
    /// Vertices left after the degree trim.
    pub kept: usize,
    pub centers: usize,
    pub part_sizes: Vec<usize>,
}

/// Degree trim, packing of neighbourhoods, partition by first nearby centre,
/// then q vertices of one part against their common neighbourhood.
///
/// `d` defaults to the VC-dimension of the trimmed graph (capped at 4); `q`
/// defaults to ⌊n'^{1/(d+1)}·q_scale⌋ with `q_scale = 1/4`.
pub fn biclique_via_packing(
    g: &OrderedGraph,
    c: f64,
    d: Option<usize>,
    q_override: Option<usize>,
    q_scale: f64,
) -> Result<PackingBiclique> {
    check_density(g, c)?;
    let n = g.n();
    let alive = trim_low_degree(g, c * n as f64 / 2.0);
    let kept: Vec<usize> = alive.ones().collect();
    if kept.is_empty() {
        return Err(Error::DensityPrecondition("degree trim removed every vertex".into()));
    }
    let sub = g.induced(&kept);
    let np = kept.len();
    let family = SetSystem::neighborhoods(&sub);
    let d = d.unwrap_or_else(|| vc_dimension(&family, 4).value).max(1);
    let s = ((np as f64).powf(1.0 - 1.0 / (d as f64 + 1.0)).ceil() as usize).max(1);
    let packing = haussler_packing(&family, s);
    let q = q_override.unwrap_or_else(|| ((np as f64).powf(1.0 / (d as f64 + 1.0)) * q_scale).floor() as usize).max(1);

    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); packing.centers.len()];
    for v in 0..np {
        let i = packing
            .centers
            .iter()
            .position(|&ctr| family.members()[ctr].symmetric_difference_count(&family.members()[v]) < s)
            .expect("maximal packing covers every member");
        parts[i].push(v);
    }
    let part_sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
    let mut order: Vec<usize> = (0..parts.len()).filter(|&i| parts[i].len() >= q).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(parts[i].len()));
    if order.is_empty() {
        return Err(Error::ParameterInfeasible(format!(
            "no part has {q} vertices (largest {}, {} centres, s = {s})",
            part_sizes.iter().max().unwrap_or(&0),
            parts.len()
        )));
    }
    let mut all = FixedBitSet::with_capacity(np);
    all.insert_range(..);
    let mut best_common = 0;
    for &i in &order {
        let picked = &parts[i][..q];
        let common = common_neighbors(&sub, picked, &all);
        best_common = best_common.max(common.count_ones(..));
        if common.count_ones(..) >= q {
            let left: Vec<usize> = picked.iter().map(|&v| kept[v]).collect();
            let right: Vec<usize> = common.ones().take(q).map(|v| kept[v]).collect();
            debug_assert!(verify_blowup(g, &[left.clone(), right.clone()], false));
            return Ok(PackingBiclique {
                left,
                right,
                q,
                d,
                s,
                kept: np,
                centers: packing.centers.len(),
                part_sizes,
            });
        }
    }
    Err(Error::ParameterInfeasible(format!(
        "common neighbourhood of {q} same-part vertices has at most {best_common} vertices (d = {d}, s = {s}, {} centres)",
        parts.len()
    )))
}

/// Exhaustive check of the two local facts every graph of VC-dimension ≤ 1
/// satisfies. Any violation exhibits a shattered pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vc1Report {
    pub triangles: u64,
    /// (triangle, outside vertex) pairs with at most one adjacency.
    pub triangle_violations: u64,
    #[serde(with = "crate::serde_util::one_based")]
    pub triangle_example: Vec<usize>,
    /// Non-adjacent pairs {y₂, y₄} with a common neighbour.
    pub p5_pairs: u64,
    /// P₅ copies y₁…y₅ with none of y₁y₄, y₂y₄, y₂y₅ present.
    pub p5_violations: u128,
    #[serde(with = "crate::serde_util::one_based")]
    pub p5_example: Vec<usize>,
}

impl Vc1Report {
    pub fn holds(&self) -> bool {
        self.triangle_violations == 0 && self.p5_violations == 0
    }
}

pub fn vc1_checks(g: &OrderedGraph) -> Vc1Report {
    let n = g.n();
    let mut rep = Vc1Report {
        triangles: 0,
        triangle_violations: 0,
        triangle_example: Vec::new(),
        p5_pairs: 0,
        p5_violations: 0,
        p5_example: Vec::new(),
    };
    let mut ab = FixedBitSet::with_capacity(n);
    let mut two = FixedBitSet::with_capacity(n);
    let mut either = FixedBitSet::with_capacity(n);
    for a in 0..n {
        for b in g.neighbors(a).ones().filter(|&b| b > a) {
            ab.clone_from(g.neighbors(a));
            ab.intersect_with(g.neighbors(b));
            either.clone_from(g.neighbors(a));
            either.union_with(g.neighbors(b));
            for c in ab.ones().filter(|&c| c > b) {
                rep.triangles += 1;
                // Vertices with ≥ 2 neighbours among a, b, c; a, b, c themselves included.
                two.clone_from(&either);
                two.intersect_with(g.neighbors(c));
                two.union_with(&ab);
                let bad = n - two.count_ones(..);
                if bad > 0 {
                    if rep.triangle_violations == 0 {
                        let v = (0..n).find(|&v| !two.contains(v)).unwrap();
                        rep.triangle_example = vec![a, b, c, v];
                    }
                    rep.triangle_violations += bad as u64;
                }
            }
        }
    }
    // For non-adjacent y₂, y₄ with common neighbour y₃, a violating copy is
    // any y₁ ∈ N(y₂)∖N(y₄) with any y₅ ∈ N(y₄)∖N(y₂); distinctness is automatic.
    for y2 in 0..n {
        for y4 in y2 + 1..n {
            if g.has_edge(y2, y4) {
                continue;
            }
            let common = g.neighbors(y2).intersection_count(g.neighbors(y4));
            if common == 0 {
                continue;
            }
            rep.p5_pairs += 1;
            let left = g.neighbors(y2).difference_count(g.neighbors(y4));
            let right = g.neighbors(y4).difference_count(g.neighbors(y2));
            let count = common as u128 * left as u128 * right as u128;
            if count > 0 && rep.p5_violations == 0 {
                let y3 = g.neighbors(y2).intersection(g.neighbors(y4)).next().unwrap();
                let y1 = g.neighbors(y2).difference(g.neighbors(y4)).next().unwrap();
                let y5 = g.neighbors(y4).difference(g.neighbors(y2)).next().unwrap();
                rep.p5_example = vec![y1, y2, y3, y4, y5];
            }
            rep.p5_violations += count;
        }
    }
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Vc1Case {
    /// Dense when c ≥ 99/100, otherwise the triple search.
    #[default]
    Auto,
    Dense,
    Sparse,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Vc1Options {
    pub case: Vc1Case,
    /// Run `vc1_checks` first and refuse graphs that fail it.
    pub check_precondition: bool,
    /// Dense pairs need density ≥ 1 − γ, sparse pairs ≤ γ.
    pub gamma: f64,
    /// Target number of equal-size parts in the sparse case.
    pub parts: usize,
    pub triple_budget: usize,
    pub seed: u64,
    pub thresholds: Vc1Thresholds,
}

/// The proof's constants, all adjustable.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vc1Thresholds {
    /// `Auto` picks the dense case when c is at least this (99/100).
    pub dense_c: f64,
    /// Dense case: trim vertices of degree below this fraction of n (2/3).
    pub min_degree: f64,
    /// Sparse case: keep u ∈ U_j with more than this fraction of V_i (4/5)…
    pub into_dense: f64,
    /// …and fewer than this fraction of V_k (1/5) as neighbours.
    pub into_sparse: f64,
    /// The chosen v needs at least this fraction of m neighbours in U_j (3/4).
    pub pick: f64,
}

impl Default for Vc1Thresholds {
    fn default() -> Self {
        Self { dense_c: 0.99, min_degree: 2.0 / 3.0, into_dense: 0.8, into_sparse: 0.2, pick: 0.75 }
    }
}

impl Default for Vc1Options {
    fn default() -> Self {
        Self {
            case: Vc1Case::Auto,
            check_precondition: true,
            gamma: 0.1,
            parts: 8,
            triple_budget: 20_000,
            seed: 0,
            thresholds: Vc1Thresholds::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VcBiclique {
    #[serde(with = "crate::serde_util::one_based")]
    pub left: Vec<usize>,
    #[serde(with = "crate::serde_util::one_based")]
    pub right: Vec<usize>,
    pub case: Vc1Case,
    /// Dense case: vertices kept by the trim, and the number of
    /// multipartite classes.
    pub kept: usize,
    pub classes: usize,
    /// Sparse case diagnostics.
    pub triples_examined: usize,
    pub triples_passing: usize,
    pub independence_failures: usize,
    pub laminar_pairs: u64,
    pub laminar_violations: u64,
}

impl VcBiclique {
    pub fn t(&self) -> usize {
        self.left.len()
    }
}

/// Balanced biclique in a graph of VC-dimension ≤ 1 with e(G) ≥ c·C(n,2).
pub fn dense_vc1_biclique(g: &OrderedGraph, c: f64, opts: &Vc1Options) -> Result<VcBiclique> {
    check_density(g, c)?;
    if opts.check_precondition {
        let rep = vc1_checks(g);
        if !rep.holds() {
            return Err(Error::VcPrecondition(format!(
                "{} triangle and {} P5 violations (e.g. triangle {:?}, path {:?})",
                rep.triangle_violations,
                rep.p5_violations,
                rep.triangle_example.iter().map(|v| v + 1).collect::<Vec<_>>(),
                rep.p5_example.iter().map(|v| v + 1).collect::<Vec<_>>()
            )));
        }
    }
    let dense = match opts.case {
        Vc1Case::Auto => c >= opts.thresholds.dense_c,
        Vc1Case::Dense => true,
        Vc1Case::Sparse => false,
    };
    let out = if dense { dense_case(g, opts.thresholds.min_degree)? } else { sparse_case(g, opts)? };
    if !verify_blowup(g, &[out.left.clone(), out.right.clone()], false) {
        return Err(Error::InvalidInput("extracted pair failed the completeness check".into()));
    }
    Ok(out)
}

fn dense_case(g: &OrderedGraph, min_degree: f64) -> Result<VcBiclique> {
    let n = g.n();
    let alive = trim_low_degree(g, min_degree * n as f64);
    let kept: Vec<usize> = alive.ones().collect();
    if kept.is_empty() {
        return Err(Error::DensityPrecondition("minimum-degree trim removed every vertex".into()));
    }
    // Non-adjacent survivors must have equal neighbourhoods in G′, which makes
    // G′ complete multipartite with the non-adjacency classes as parts.
    let mut class = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut nbhd = FixedBitSet::with_capacity(n);
    let mut other = FixedBitSet::with_capacity(n);
    for &v in &kept {
        if class[v] != usize::MAX {
            continue;
        }
        nbhd.clone_from(g.neighbors(v));
        nbhd.intersect_with(&alive);
        let id = classes.len();
        let mut members = vec![v];
        class[v] = id;
        for &u in kept.iter().filter(|&&u| u > v && !g.has_edge(u, v)) {
            other.clone_from(g.neighbors(u));
            other.intersect_with(&alive);
            if other != nbhd {
                return Err(Error::VcPrecondition(format!(
                    "non-adjacent vertices {} and {} have different neighbourhoods after the trim",
                    v + 1,
                    u + 1
                )));
            }
            if class[u] != usize::MAX {
                return Err(Error::VcPrecondition(format!("non-adjacency is not transitive at vertex {}", u + 1)));
            }
            class[u] = id;
            members.push(u);
        }
        classes.push(members);
    }
    classes.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for cl in &classes {
        if left.len() <= right.len() {
            left.extend_from_slice(cl);
        } else {
            right.extend_from_slice(cl);
        }
    }
    let t = left.len().min(right.len());
    left.truncate(t);
    right.truncate(t);
    left.sort_unstable();
    right.sort_unstable();
    Ok(VcBiclique {
        left,
        right,
        case: Vc1Case::Dense,
        kept: kept.len(),
        classes: classes.len(),
        triples_examined: 0,
        triples_passing: 0,
        independence_failures: 0,
        laminar_pairs: 0,
        laminar_violations: 0,
    })
}

/// Grow a complete pair (X, Y) to (CN(CN(X)), CN(X)) and balance it.
fn close_pair(g: &OrderedGraph, x: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut all = FixedBitSet::with_capacity(g.n());
    all.insert_range(..);
    let y: Vec<usize> = common_neighbors(g, x, &all).ones().collect();
    let mut x2: Vec<usize> = common_neighbors(g, &y, &all).ones().collect();
    let mut y = y;
    let t = x2.len().min(y.len());
    x2.truncate(t);
    y.truncate(t);
    (x2, y)
}

fn density_between(g: &OrderedGraph, a: &[usize], bset: &FixedBitSet) -> f64 {
    let e: usize = a.iter().map(|&u| g.neighbors(u).intersection_count(bset)).sum();
    e as f64 / (a.len() * bset.count_ones(..)).max(1) as f64
}

/// Parts come from clusters of similar neighbourhoods (first packing centre
/// within distance s), cut into chunks of at most ⌈n/parts⌉ vertices. Triples
/// (i, j, k) with V_i–V_j dense and V_j–V_k sparse are scanned in seeded
/// random order.
fn sparse_case(g: &OrderedGraph, opts: &Vc1Options) -> Result<VcBiclique> {
    let n = g.n();
    let family = SetSystem::neighborhoods(g);
    let s = ((n as f64).sqrt().ceil() as usize).max(1);
    let packing = haussler_packing(&family, s);
    let mut clusters: Vec<Vec<usize>> = vec![Vec::new(); packing.centers.len()];
    for v in 0..n {
        let i = packing
            .centers
            .iter()
            .position(|&ctr| family.members()[ctr].symmetric_difference_count(&family.members()[v]) < s)
            .unwrap();
        clusters[i].push(v);
    }
    let chunk = n.div_ceil(opts.parts.max(1)).max(1);
    let parts: Vec<Vec<usize>> = clusters.iter().flat_map(|c| c.chunks(chunk).map(<[usize]>::to_vec)).collect();
    let sets: Vec<FixedBitSet> = parts.iter().map(|p| g.vertex_set(p.iter().copied())).collect();
    let np = parts.len();

    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..np {
        for j in 0..np {
            for k in 0..np {
                if i != j && j != k && i != k {
                    triples.push((i, j, k));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    triples.shuffle(&mut rng);

    let gamma = opts.gamma;
    let th = opts.thresholds;
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let (mut examined, mut passing, mut indep_fail) = (0, 0, 0);
    let (mut lam_pairs, mut lam_bad) = (0u64, 0u64);
    let mut dense_memo = std::collections::HashMap::new();
    let mut dens = |a: usize, b: usize| -> f64 {
        *dense_memo.entry((a, b)).or_insert_with(|| density_between(g, &parts[a], &sets[b]))
    };
    for &(i, j, k) in triples.iter().take(opts.triple_budget) {
        examined += 1;
        if dens(i, j) < 1.0 - gamma || dens(j, k) > gamma {
            continue;
        }
        passing += 1;
        let m = parts[i].len().min(parts[j].len()).min(parts[k].len());
        let (vi, vk) = (&parts[i][..m], &parts[k][..m]);
        let (si, sk) = (g.vertex_set(vi.iter().copied()), g.vertex_set(vk.iter().copied()));
        let mf = m as f64;
        let uj: Vec<usize> = parts[j][..m]
            .iter()
            .copied()
            .filter(|&u| {
                g.neighbors(u).intersection_count(&si) as f64 > th.into_dense * mf
                    && (g.neighbors(u).intersection_count(&sk) as f64) < th.into_sparse * mf
            })
            .collect();
        let uset = g.vertex_set(uj.iter().copied());
        let Some(&v) = vi.iter().max_by_key(|&&v| (g.neighbors(v).intersection_count(&uset), std::cmp::Reverse(v)))
        else {
            continue;
        };
        let w: Vec<usize> = uj.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
        if (w.len() as f64) < th.pick * mf || w.is_empty() {
            continue;
        }
        if w.iter().enumerate().any(|(a, &x)| w[a + 1..].iter().any(|&y| g.has_edge(x, y))) {
            indep_fail += 1;
            continue;
        }
        let nb: Vec<FixedBitSet> = w
            .iter()
            .map(|&u| {
                let mut b = g.neighbors(u).clone();
                b.intersect_with(&si);
                b
            })
            .collect();
        for a in 0..nb.len() {
            for b in a + 1..nb.len() {
                lam_pairs += 1;
                if !nb[a].is_subset(&nb[b]) && !nb[b].is_subset(&nb[a]) {
                    lam_bad += 1;
                }
            }
        }
        // Under laminarity this is N_{V_i}(u) for the u with smallest trace.
        let umin = (0..w.len()).min_by_key(|&a| nb[a].count_ones(..)).unwrap();
        let mut y = nb[umin].clone();
        for b in &nb {
            y.intersect_with(b);
        }
        if y.count_ones(..) == 0 {
            continue;
        }
        let (x, y) = close_pair(g, &w);
        if best.as_ref().is_none_or(|(bx, _)| x.len() > bx.len()) {
            best = Some((x, y));
        }
    }
    let Some((left, right)) = best else {
        return Err(Error::BudgetExhausted(format!(
            "{examined} triples examined over {np} parts, {passing} met the density thresholds, none yielded a biclique"
        )));
    };
    Ok(VcBiclique {
        left,
        right,
        case: Vc1Case::Sparse,
        kept: n,
        classes: np,
        triples_examined: examined,
        triples_passing: passing,
        independence_failures: indep_fail,
        laminar_pairs: lam_pairs,
        laminar_violations: lam_bad,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vc::nested_half_graph;

    fn bipartite(a: usize, b: usize) -> OrderedGraph {
        OrderedGraph::complete_multipartite(&[a, b])
    }

    #[test]
    fn packing_on_complete_bipartite() {
        let g = bipartite(200, 200);
        let r = biclique_via_packing(&g, 0.4, None, None, 0.25).unwrap();
        assert_eq!(r.d, 1);
        assert_eq!(r.q, 5);
        assert!(verify_blowup(&g, &[r.left.clone(), r.right.clone()], false));
        assert_eq!(r.left.len(), r.q);
        let big = biclique_via_packing(&g, 0.4, None, Some(150), 0.25).unwrap();
        assert_eq!(big.left.len(), 150);
    }

    #[test]
    fn packing_on_complete_graph() {
        let g = OrderedGraph::complete(30);
        let r = biclique_via_packing(&g, 0.9, Some(1), Some(5), 0.25).unwrap();
        assert!(verify_blowup(&g, &[r.left, r.right], false));
    }

    #[test]
    fn packing_density_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = OrderedGraph::random(60, 0.05, &mut rng);
        assert!(matches!(biclique_via_packing(&g, 0.5, None, None, 0.25), Err(Error::DensityPrecondition(_))));
    }

    #[test]
    fn vc1_examples() {
        assert!(vc1_checks(&OrderedGraph::complete_multipartite(&[3, 4, 5])).holds());
        assert!(vc1_checks(&OrderedGraph::complete(6)).holds());
        // Triangle 0,1,2 and a vertex 3 seeing only 0: the pair {1, 2} is shattered.
        let g = OrderedGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let rep = vc1_checks(&g);
        assert_eq!(rep.triangle_violations, 1);
        assert_eq!(rep.triangle_example, vec![0, 1, 2, 3]);
    }

    #[test]
    fn dense_case_multipartite() {
        let g = OrderedGraph::complete_multipartite(&[40, 40, 40]);
        let opts = Vc1Options { case: Vc1Case::Dense, ..Default::default() };
        let r = dense_vc1_biclique(&g, 2.0 / 3.0, &opts).unwrap();
        assert_eq!(r.classes, 3);
        assert!(r.t() >= 40);
        let g = OrderedGraph::complete_multipartite(&[4; 100]);
        let r = dense_vc1_biclique(&g, 0.99, &Vc1Options::default()).unwrap();
        assert_eq!(r.case, Vc1Case::Dense);
        assert_eq!(r.t(), 200);
    }

    #[test]
    fn both_cases_on_complete_bipartite() {
        let g = bipartite(30, 30);
        for case in [Vc1Case::Auto, Vc1Case::Sparse] {
            let r = dense_vc1_biclique(&g, 0.5, &Vc1Options { case, ..Default::default() }).unwrap();
            assert_eq!(r.t(), 30, "{case:?}");
        }
        // Degrees n/2 sit below the 2n/3 trim threshold of the dense case.
        let dense = Vc1Options { case: Vc1Case::Dense, ..Default::default() };
        assert!(matches!(dense_vc1_biclique(&g, 0.5, &dense), Err(Error::DensityPrecondition(_))));
    }

    #[test]
    fn sparse_case_half_graph() {
        let g = nested_half_graph(200, 0.3);
        assert!(g.density() >= 0.3);
        let r = dense_vc1_biclique(&g, 0.3, &Vc1Options::default()).unwrap();
        assert_eq!(r.case, Vc1Case::Sparse);
        assert!(r.t() > 0);
        assert!(r.laminar_pairs > 0);
        assert_eq!(r.laminar_violations, 0);
    }

    #[test]
    fn precondition_violation() {
        let g = OrderedGraph::complement(&OrderedGraph::monotone_path(12));
        let err = dense_vc1_biclique(&g, 0.5, &Vc1Options::default()).unwrap_err();
        assert!(matches!(err, Error::VcPrecondition(_)), "{err}");
    }
}
