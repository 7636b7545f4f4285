mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use blowup_core::graph::{
    amplify_blowup, count_cliques, find_balanced_biclique, find_blowup, find_induced_monotone_path, verify_blowup,
    BlowupOptions, ExactBicliqueOracle, OrderedGraph, PathOutcome,
};
use blowup_core::sphere::{
    build_construction, cap_measure, chord_to_angle, dist, height_to_angle, max_pairwise_distance, partition_sphere,
    random_unit, ConstructionSpec,
};
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn path_search_matches_brute_force() {
    let mut r = rng(1);
    for trial in 0..150 {
        let n = 5 + trial % 6;
        let g = OrderedGraph::random(n, 0.3 + 0.1 * (trial % 4) as f64, &mut r);
        for m in 2..=5.min(n) {
            let s = find_induced_monotone_path(&g, m, u64::MAX);
            match s.outcome {
                PathOutcome::Found(p) => {
                    assert_eq!(p.len(), m);
                    assert!(brute_induced_path(&g, m));
                }
                PathOutcome::None => assert!(!brute_induced_path(&g, m), "n={n} m={m}"),
                PathOutcome::Timeout => panic!("unbounded search timed out"),
            }
        }
    }
}

#[test]
fn clique_counts_match_brute_force() {
    let mut r = rng(2);
    for _ in 0..40 {
        let g = OrderedGraph::random(11, 0.6, &mut r);
        for k in 1..=5 {
            assert_eq!(count_cliques(&g, k), brute_clique_count(&g, k));
        }
    }
}

#[test]
fn exact_biclique_matches_brute_force() {
    let mut r = rng(3);
    for _ in 0..30 {
        let g = OrderedGraph::random(12, 0.55, &mut r);
        let found = find_balanced_biclique(&g, &BlowupOptions::default());
        assert!(found.optimal);
        assert_eq!(found.blowup.t(), brute_balanced_biclique(&g));
        assert!(verify_blowup(&g, &found.blowup.parts, false));
    }
}

#[test]
fn amplifier_outputs_are_valid() {
    let mut r = rng(4);
    let oracle = ExactBicliqueOracle::default();
    for trial in 0..20 {
        let g = OrderedGraph::random(36, 0.8, &mut r);
        let parts: Vec<Vec<usize>> = (0..3).map(|i| (i * 12..i * 12 + 12).collect()).collect();
        let h = if trial % 2 == 0 { vec![(0, 1), (1, 2), (0, 2)] } else { vec![(0, 1), (1, 2)] };
        if let Ok(w) = amplify_blowup(&g, &parts, &h, &oracle) {
            for &(a, b) in &h {
                assert!(verify_blowup(&g, &[w[a].clone(), w[b].clone()], false));
            }
            assert!(w.iter().zip(&parts).all(|(wi, pi)| wi.iter().all(|v| pi.contains(v))));
        }
    }
}

#[test]
fn blowup_search_on_planted_instance() {
    let g = OrderedGraph::complete_multipartite(&[5, 5, 5]);
    let b = find_blowup(&g, 3, 5, &BlowupOptions::default()).blowup.unwrap();
    assert!(verify_blowup(&g, &b.parts, true));
}

#[test]
fn cap_grid_identities() {
    for h in [2, 3, 5, 9, 17, 40, 100] {
        for i in 0..50 {
            let theta = PI * i as f64 / 49.0;
            let s = cap_measure(h, theta) + cap_measure(h, PI - theta);
            assert!((s - 1.0).abs() <= 2e-8, "h={h} θ={theta}");
        }
        assert!((cap_measure(h, FRAC_PI_2) - 0.5).abs() < 1e-12);
    }
}

#[test]
fn cap_upper_bound_grid() {
    for h in [8, 16, 32, 64, 128] {
        for a in 1..=9 {
            let alpha = a as f64 / 10.0;
            let m = cap_measure(h, height_to_angle(1.0 - alpha));
            assert!(m <= (-(h as f64) * alpha * alpha / 2.0).exp(), "h={h} α={alpha}");
        }
    }
}

#[test]
fn near_hemisphere_lower_bound_grid() {
    for h in 4..=64 {
        for delta in [0.05, 0.1, 0.2] {
            let theta = chord_to_angle(2f64.sqrt() - delta / (h as f64).sqrt());
            assert!(cap_measure(h, theta) >= 0.5 - 2f64.sqrt() * delta, "h={h} δ={delta}");
        }
    }
}

#[test]
fn large_cell_unions_are_far_apart() {
    // Unions of cells with measure above e^{−hμ/2} reach distance 2 − μ.
    let (h, mu) = (6usize, 0.6);
    let part = partition_sphere(h, 400, 0.5).unwrap();
    let need = ((-(h as f64) * mu / 2.0).exp() * 400.0).floor() as usize + 1;
    let mut r = rng(5);
    for _ in 0..20 {
        use rand::seq::index::sample;
        let a: Vec<Vec<f64>> = sample(&mut r, 400, need).iter().map(|i| part.center_point(i)).collect();
        let b: Vec<Vec<f64>> = sample(&mut r, 400, need).iter().map(|i| part.center_point(i)).collect();
        assert!(max_pairwise_distance(&a, &b).unwrap() >= 2.0 - mu);
    }
}

#[test]
fn construction_is_deterministic() {
    let spec = ConstructionSpec::new(4, 5, 200, 0.4, 17);
    let a = serde_json::to_string(&build_construction(&spec).unwrap()).unwrap();
    let b = serde_json::to_string(&build_construction(&spec).unwrap()).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complement_is_an_involution(n in 1usize..40, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = OrderedGraph::random(n, p, &mut rng(seed));
        let c = g.complement();
        prop_assert_eq!(c.edge_count() + g.edge_count(), n * (n - 1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn caps_are_complementary(h in 2usize..80, theta in 0.0f64..PI) {
        prop_assert!((cap_measure(h, theta) + cap_measure(h, PI - theta) - 1.0).abs() <= 2e-8);
    }

    #[test]
    fn max_distance_is_the_double_loop(h in 2usize..8, na in 1usize..30, nb in 1usize..30, seed in any::<u64>()) {
        let mut r = rng(seed);
        let a: Vec<Vec<f64>> = (0..na).map(|_| random_unit(h, &mut r)).collect();
        let b: Vec<Vec<f64>> = (0..nb).map(|_| random_unit(h, &mut r)).collect();
        let mut best: f64 = 0.0;
        for x in &a {
            for y in &b {
                best = best.max(dist(x, y));
            }
        }
        prop_assert_eq!(max_pairwise_distance(&a, &b).unwrap(), best);
    }

    #[test]
    fn partition_locates_its_own_samples(h in 2usize..7, pieces in 1usize..200, seed in any::<u64>()) {
        let part = partition_sphere(h, pieces, 1.0).unwrap();
        let total: f64 = part.cells().iter().map(|c| c.measure).sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
        let mut r = rng(seed);
        for i in (0..pieces).step_by(pieces.div_ceil(10)) {
            let x = part.random_point(i, &mut r);
            prop_assert_eq!(part.locate(&x).unwrap(), i);
        }
    }
}
