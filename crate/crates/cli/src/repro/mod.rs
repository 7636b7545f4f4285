//! Pinned-seed experiments behind each acceptance criterion.
//!
//! Details are deterministic; wall-clock time is returned separately so
//! repeated runs produce identical result payloads.

mod oracle;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use blowup_core::graph::{amplify_blowup, verify_blowup, BlowupOptions, ExactBicliqueOracle, OrderedGraph, PathOutcome};
use blowup_core::poset::{
    check_partition, claim52_audit, find_blowup_multi, incomparability_partition, verify_comparability_blowup,
    CliqueSource, MultiOrder, PartitionParams, PartitionResult, Poset,
};
use blowup_core::ramsey::{blue_layer_subset, check_certificate, compute_f, WitnessCertificate};
use blowup_core::sphere::{
    build_construction, cap_measure, chord_to_angle, height_to_angle, partition_sphere, random_unit,
    search_be_quadruples, verify_construction, ConstructionSpec, VerifyOptions,
};
use blowup_core::vc::{
    biclique_via_packing, dense_vc1_biclique, find_c4, make_vc2_no_b2_example, nested_half_graph, vc_dimension,
    SetSystem, Vc1Options,
};
use blowup_core::{dependency_digraph, has_admissible_subset, is_admissible, OrderedColoring, SearchOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use oracle::{brute_vc, literal_admissible, literal_digraph, restrict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    /// Wall-clock limit that is part of the pass condition.
    pub limit: Option<Duration>,
    run: fn() -> (bool, String),
}

pub const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, name: "ramsey small values", limit: Some(Duration::from_secs(1)), run: c1 },
    Criterion { id: 2, name: "ramsey k=5", limit: Some(Duration::from_secs(60)), run: c2 },
    Criterion { id: 3, name: "ramsey k=6", limit: None, run: c3 },
    Criterion { id: 4, name: "layer upper bound", limit: None, run: c4 },
    Criterion { id: 5, name: "oracle equivalence", limit: Some(Duration::from_secs(120)), run: c5 },
    Criterion { id: 6, name: "sphere construction", limit: None, run: c6 },
    Criterion { id: 7, name: "geometry suite", limit: Some(Duration::from_secs(300)), run: c7 },
    Criterion { id: 8, name: "poset partition", limit: Some(Duration::from_secs(300)), run: c8 },
    Criterion { id: 9, name: "r-comparability extraction", limit: None, run: c9 },
    Criterion { id: 10, name: "vc suite", limit: Some(Duration::from_secs(600)), run: c10 },
    Criterion { id: 11, name: "amplifier", limit: Some(Duration::from_secs(120)), run: c11 },
];

/// Named experiments and the criteria each one runs.
pub const EXPERIMENTS: [(&str, &[usize]); 11] = [
    ("ramsey-small", &[1, 2]),
    ("ramsey-5", &[2]),
    ("ramsey-6", &[3]),
    ("layers", &[4]),
    ("oracle", &[5]),
    ("construction", &[6]),
    ("geometry", &[7]),
    ("poset-partition", &[8]),
    ("comparability", &[9]),
    ("vc", &[10]),
    ("amplifier", &[11]),
];

/// Criterion ids for `all`, an experiment name, or a bare criterion number.
pub fn resolve(name: &str) -> Option<Vec<usize>> {
    if name == "all" {
        return Some(CRITERIA.iter().map(|c| c.id).collect());
    }
    if let Some((_, ids)) = EXPERIMENTS.iter().find(|(n, _)| *n == name) {
        return Some(ids.to_vec());
    }
    name.parse().ok().filter(|id| (1..=CRITERIA.len()).contains(id)).map(|id| vec![id])
}

pub fn run(id: usize) -> (CriterionResult, Duration) {
    let c = &CRITERIA[id - 1];
    let start = Instant::now();
    let (mut pass, mut detail) = (c.run)();
    let elapsed = start.elapsed();
    if let Some(limit) = c.limit {
        if elapsed >= limit {
            pass = false;
            detail.push_str(&format!("; exceeded the {limit:?} limit"));
        }
    }
    (CriterionResult { id, name: c.name.into(), pass, detail }, elapsed)
}

fn c1() -> (bool, String) {
    let mut values = Vec::new();
    let mut certified = true;
    for k in 1..=4 {
        match compute_f(k, &SearchOptions::default()) {
            Ok(r) => {
                if let Some(w) = &r.witness {
                    certified &= check_certificate(&WitnessCertificate::new(k, w)).unwrap_or(false);
                }
                values.push(r.f_value);
            }
            Err(e) => return (false, format!("k={k}: {e}")),
        }
    }
    (values == [1, 2, 3, 5] && certified, format!("f(1..4) = {values:?}, witnesses certified: {certified}"))
}

fn c2() -> (bool, String) {
    let r = match compute_f(5, &SearchOptions::default()) {
        Ok(r) => r,
        Err(e) => return (false, e.to_string()),
    };
    let certified = r
        .witness
        .as_ref()
        .is_some_and(|w| w.n() == 6 && check_certificate(&WitnessCertificate::new(5, w)).unwrap_or(false));
    (
        r.f_value == 7 && certified,
        format!("f(5) = {}, 6-vertex witness certified: {certified}, {} nodes", r.f_value, r.stats.nodes),
    )
}

fn c3() -> (bool, String) {
    let r = match compute_f(6, &SearchOptions::default()) {
        Ok(r) => r,
        Err(e) => return (false, e.to_string()),
    };
    let Some(w) = r.witness else {
        return (false, format!("no witness (f = {})", r.f_value));
    };
    let cert = WitnessCertificate::new(6, &w);
    let start = Instant::now();
    let certified = check_certificate(&cert).unwrap_or(false);
    let fast = start.elapsed() < Duration::from_secs(1);
    (
        r.f_value >= 10 && w.n() == 9 && certified && fast,
        format!(
            "f(6) = {} (level 10 exhaustive), 9-vertex witness certified: {certified}, check under 1 s: {fast}",
            r.f_value
        ),
    )
}

fn c4() -> (bool, String) {
    let mut failures = 0;
    let mut constructive = 0;
    for k in 3..=6 {
        let n = (k * k - k + 2) / 2;
        let mut rng = ChaCha8Rng::seed_from_u64(400 + k as u64);
        for _ in 0..10_000 {
            let chi = OrderedColoring::random(n, 0.5, &mut rng);
            if !matches!(has_admissible_subset(&chi, k), Ok(Some(_))) {
                failures += 1;
            }
            if let Some(s) = blue_layer_subset(&chi, k) {
                constructive += 1;
                if s.len() != k || !literal_admissible(&restrict(&chi, &s)) {
                    failures += 1;
                }
            }
        }
    }
    (failures == 0, format!("4 × 10^4 colorings, {failures} failures, {constructive} constructive subsets checked"))
}

fn c5() -> (bool, String) {
    let mut mismatches = 0;
    let mut checked = 0u64;
    let mut compare = |chi: &OrderedColoring| {
        let fast: BTreeSet<_> = dependency_digraph(chi).arcs().into_iter().collect();
        if fast != literal_digraph(chi) || is_admissible(chi) != literal_admissible(chi) {
            mismatches += 1;
        }
        checked += 1;
    };
    for n in 1..=5usize {
        for code in 0u128..1 << (n * (n - 1) / 2) {
            compare(&OrderedColoring::from_pattern(n, code));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100_000 {
        let n = rng.random_range(2..=8);
        compare(&OrderedColoring::random(n, rng.random_range(0.1..0.9), &mut rng));
    }
    (mismatches == 0, format!("{checked} colorings, {mismatches} mismatches"))
}

fn c6() -> (bool, String) {
    let mut ok = true;
    let mut lines = Vec::new();
    for seed in 0..5 {
        let spec = ConstructionSpec::new(4, 9, 2000, 0.5, seed);
        let cg = match build_construction(&spec) {
            Ok(cg) => cg,
            Err(e) => return (false, format!("seed {seed}: {e}")),
        };
        let rep = verify_construction(&cg, &VerifyOptions { seed, ..Default::default() });
        let conclusive = rep.path.outcome == PathOutcome::None;
        ok &= conclusive && rep.kernel.holds();
        lines.push(format!(
            "seed {seed}: P7 {}, kernel {} pairs ok={}, ϱ4(Ḡ)≈{:.2e}, biclique(Ḡ) t={}",
            if conclusive { "absent" } else { "NOT excluded" },
            rep.kernel.pairs_checked,
            rep.kernel.holds(),
            rep.complement_density.point,
            rep.complement_biclique.t
        ));
    }
    (ok, format!("μ = {:.3}; {}", 0.5 / 3.0, lines.join("; ")))
}

fn c7() -> (bool, String) {
    let mut worst_complement: f64 = 0.0;
    for h in [2, 3, 9, 50, 128] {
        for i in 0..50 {
            let theta = std::f64::consts::PI * i as f64 / 49.0;
            let s = cap_measure(h, theta) + cap_measure(h, std::f64::consts::PI - theta);
            worst_complement = worst_complement.max((s - 1.0).abs());
        }
    }
    // Chi-square goodness of fit of uniform samples against equal cell measures.
    let (h, pieces, samples) = (9usize, 1000usize, 1_000_000usize);
    let part = match partition_sphere(h, pieces, 1.0) {
        Ok(p) => p,
        Err(e) => return (false, e.to_string()),
    };
    let mut counts = vec![0u64; pieces];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..samples {
        match part.locate(&random_unit(h, &mut rng)) {
            Ok(i) => counts[i] += 1,
            Err(e) => return (false, e.to_string()),
        }
    }
    let expect = samples as f64 / pieces as f64;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expect).powi(2) / expect).sum();
    let df = (pieces - 1) as f64;
    let z = (chi2 - df) / (2.0 * df).sqrt();
    let cap_ok = [8usize, 16, 32, 64, 128].iter().all(|&k| {
        (1..=9).all(|a| {
            let alpha = a as f64 / 10.0;
            cap_measure(k, height_to_angle(1.0 - alpha)) <= (-(k as f64) * alpha * alpha / 2.0).exp()
        })
    });
    let b_ok = (4..=64usize).all(|h| {
        [0.05, 0.1, 0.2].iter().all(|&d| {
            cap_measure(h, chord_to_angle(2f64.sqrt() - d / (h as f64).sqrt())) >= 0.5 - 2f64.sqrt() * d
        })
    });
    let mut violations = 0;
    let mut min_margin = f64::INFINITY;
    for h in 3..=12 {
        let r = search_be_quadruples(h, 0.24, 100_000, 70 + h as u64);
        violations += r.violations;
        min_margin = min_margin.min(r.min_margin);
    }
    (
        worst_complement <= 2e-8 && z.abs() <= 3.0 && cap_ok && b_ok && violations == 0,
        format!(
            "complement err {worst_complement:.1e}, cell χ² z = {z:.2}, cap bound {cap_ok}, hemisphere bound {b_ok}, \
             10^6 quadruples: {violations} violations (min margin {min_margin:.3})"
        ),
    )
}

fn c8() -> (bool, String) {
    let (n, k, eps) = (3000, 3, 0.5);
    let params = PartitionParams::desk(n, k, eps);
    let (mut partitions, mut witnesses, mut audits, mut failures) = (0, 0, 0, Vec::new());
    let mut worst_frac: f64 = 0.0;
    for seed in 0..20u64 {
        let p = Poset::random_dag(n, [0.03, 0.1, 0.3][seed as usize % 3], seed);
        let res = match incomparability_partition(&p, &params) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        if let Err(e) = check_partition(&p, &res, &params) {
            failures.push(format!("seed {seed}: {e}"));
            continue;
        }
        match &res {
            PartitionResult::BlowupWitness { .. } => witnesses += 1,
            PartitionResult::Partition { chains, .. } => {
                partitions += 1;
                worst_frac = worst_frac.max(res.inhomogeneous_fraction());
                let mut pos = vec![0; n];
                for (i, &x) in p.linear_extension().iter().enumerate() {
                    pos[x] = i;
                }
                for (a, ia) in chains.iter().enumerate() {
                    for ib in &chains[a + 1..] {
                        for g1 in &ia.groups {
                            for g2 in &ib.groups {
                                audits += 1;
                                match claim52_audit(&p, &pos, g1, g2) {
                                    Ok(au) if au.passes() => {}
                                    Ok(au) => failures.push(format!("seed {seed}: audit {:?}", au.pairs)),
                                    Err(e) => failures.push(format!("seed {seed}: audit error {e}")),
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    (
        failures.is_empty(),
        format!(
            "t=q={}, s={}, ℓ={}: {partitions} partitions (max inhomogeneous fraction {worst_frac:.4}), {witnesses} \
             witnesses, {audits} chain-pair audits, failures {failures:?}",
            params.t, params.s, params.l
        ),
    )
}

fn c9() -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    let mut violations = 0;
    let mut cliques = 0;
    for h in [2usize, 3] {
        for sizes in [vec![100; 5], vec![50; 10], vec![25; 20]] {
            let p = Poset::block_order(&sizes);
            let m = MultiOrder::new(vec![p.clone()]).expect("one order");
            match find_blowup_multi(&m, h, CliqueSource::Exact { cap: 20_000 }) {
                Ok(b) => {
                    let valid = verify_comparability_blowup(&p, &b.blowup.parts);
                    ok &= valid;
                    violations += b.injectivity_violations;
                    cliques += b.cliques_examined;
                    notes.push(format!("h={h} blocks={}: size {} valid={valid}", sizes.len(), b.blowup.size()));
                }
                Err(e) => {
                    ok = false;
                    notes.push(format!("h={h} blocks={}: {e}", sizes.len()));
                }
            }
        }
    }
    let mut random_ok = 0;
    for seed in 0..20u64 {
        let n = 20 + (seed as usize % 21);
        let m = MultiOrder::random_perm2(n, 2, seed);
        match find_blowup_multi(&m, 2, CliqueSource::Exact { cap: u64::MAX }) {
            Ok(b) => {
                violations += b.injectivity_violations;
                cliques += b.cliques_examined;
                if verify_comparability_blowup(&m.orders()[b.order], &b.blowup.parts) {
                    random_ok += 1;
                } else {
                    ok = false;
                }
            }
            Err(blowup_core::Error::NotFound(_)) => random_ok += 1,
            Err(e) => {
                ok = false;
                notes.push(format!("random seed {seed}: {e}"));
            }
        }
    }
    (
        ok && violations == 0,
        format!(
            "{}; 20 random 2-orders ok: {random_ok}; {cliques} cliques, {violations} injectivity violations",
            notes.join(", ")
        ),
    )
}

fn c10() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut mismatches = 0;
    for i in 0..200 {
        let n = 4 + i % 9;
        let g = OrderedGraph::random(n, rng.random_range(0.1..0.9), &mut rng);
        let f = SetSystem::neighborhoods(&g);
        if vc_dimension(&f, 12).value != brute_vc(&f) {
            mismatches += 1;
        }
    }
    let multi = OrderedGraph::complete_multipartite(&[4; 100]);
    let dense = dense_vc1_biclique(&multi, 0.99, &Vc1Options::default())
        .map(|r| (r.t(), verify_blowup(&multi, &[r.left, r.right], false)));
    let dense_ok = matches!(dense, Ok((t, true)) if 5 * t >= 400);
    let half = nested_half_graph(400, 0.3);
    let nested = dense_vc1_biclique(&half, 0.3, &Vc1Options::default())
        .map(|r| (r.t(), r.laminar_violations, verify_blowup(&half, &[r.left, r.right], false)));
    let nested_ok = matches!(nested, Ok((t, 0, true)) if t > 0);
    let kb = OrderedGraph::complete_multipartite(&[200, 200]);
    let packing = biclique_via_packing(&kb, 0.4, None, None, 0.25)
        .map(|r| (r.q, r.left.len(), verify_blowup(&kb, &[r.left, r.right], false)));
    let packing_ok = matches!(packing, Ok((q, t, true)) if t == q);
    let opts = BlowupOptions { node_budget: 100_000, ..Default::default() };
    let mut vc2 = Vec::new();
    let mut vc2_ok = true;
    for seed in 0..10 {
        match make_vc2_no_b2_example(400, seed, &opts) {
            Ok(ex) => {
                vc2_ok &= find_c4(&ex.core).is_none() && ex.vc.value <= 2;
                vc2.push(format!("{}/{}", ex.vc.value, ex.bipartite_vc.value));
            }
            Err(e) => {
                vc2_ok = false;
                vc2.push(e.to_string());
            }
        }
    }
    (
        mismatches == 0 && dense_ok && nested_ok && packing_ok && vc2_ok,
        format!(
            "brute-force mismatches {mismatches}/200; multipartite (t, valid) {}; nested (t, laminar violations, \
             valid) {}; packing (q, t, valid) {}; VC-2 examples vc (complement/bipartite complement) {}",
            show(&dense),
            show(&nested),
            show(&packing),
            vc2.join(" ")
        ),
    )
}

fn c11() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let oracle = ExactBicliqueOracle { node_budget: 200_000 };
    let (mut valid, mut oracle_failures, mut invalid) = (0, 0, 0);
    for i in 0..100 {
        let k = 2 + i % 3;
        let size = 60 / k / 2 * 2;
        let n = k * size;
        let g = OrderedGraph::random(n, rng.random_range(0.7..0.95), &mut rng);
        let parts: Vec<Vec<usize>> = (0..k).map(|j| (j * size..(j + 1) * size).collect()).collect();
        let h: Vec<(usize, usize)> = match i % 3 {
            0 => vec![(0, 1)],
            1 => (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect(),
            _ => (0..k - 1).map(|a| (a, a + 1)).collect(),
        };
        match amplify_blowup(&g, &parts, &h, &oracle) {
            Ok(w) => {
                let t = w[0].len();
                let ok = t > 0
                    && w.iter().all(|x| x.len() == t)
                    && w.iter().zip(&parts).all(|(x, p)| x.iter().all(|v| p.contains(v)))
                    && h.iter().all(|&(a, b)| verify_blowup(&g, &[w[a].clone(), w[b].clone()], false));
                if ok {
                    valid += 1;
                } else {
                    invalid += 1;
                }
            }
            Err(blowup_core::Error::OracleFailure(..)) => oracle_failures += 1,
            Err(_) => invalid += 1,
        }
    }
    (invalid == 0, format!("{valid} valid, {oracle_failures} oracle failures, {invalid} invalid"))
}

fn show<T: std::fmt::Debug>(r: &blowup_core::Result<T>) -> String {
    match r {
        Ok(v) => format!("{v:?}"),
        Err(e) => e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        assert_eq!(resolve("ramsey-small"), Some(vec![1, 2]));
        assert_eq!(resolve("all").unwrap().len(), 11);
        assert_eq!(resolve("7"), Some(vec![7]));
        assert_eq!(resolve("none-such"), None);
        assert_eq!(resolve("12"), None);
        assert!(CRITERIA.iter().enumerate().all(|(i, c)| c.id == i + 1));
    }

    #[test]
    fn oracle_agrees_on_small_cases() {
        // Red 12 with 3 blue to both: arcs 3→1, 3→2, acyclic.
        let chi = OrderedColoring::from_red_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(literal_digraph(&chi).into_iter().collect::<Vec<_>>(), vec![(2, 0), (2, 1)]);
        assert!(literal_admissible(&chi));
    }
}
