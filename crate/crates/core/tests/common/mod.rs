//! Brute-force reference implementations. Each follows the definition
//! literally and shares no code with the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

use blowup_core::graph::OrderedGraph;
use blowup_core::poset::Poset;
use blowup_core::vc::SetSystem;
use blowup_core::OrderedColoring;

/// Arcs of the dependency digraph by the three-loop reading of the
/// definition: red consecutive pair (i, i+1), both edges to j blue, gives
/// arcs j→i and j→i+1.
pub fn literal_digraph(chi: &OrderedColoring) -> BTreeSet<(usize, usize)> {
    let n = chi.n();
    let mut arcs = BTreeSet::new();
    for i in 0..n.saturating_sub(1) {
        for j in 0..n {
            if j == i || j == i + 1 {
                continue;
            }
            if chi.is_red(i, i + 1) && !chi.is_red(i, j) && !chi.is_red(i + 1, j) {
                arcs.insert((j, i));
                arcs.insert((j, i + 1));
            }
        }
    }
    arcs
}

/// Acyclicity through the transitive closure (Floyd–Warshall on booleans).
pub fn floyd_acyclic(n: usize, arcs: &BTreeSet<(usize, usize)>) -> bool {
    let mut reach = vec![vec![false; n]; n];
    for &(a, b) in arcs {
        reach[a][b] = true;
    }
    for m in 0..n {
        for a in 0..n {
            if reach[a][m] {
                for b in 0..n {
                    if reach[m][b] {
                        reach[a][b] = true;
                    }
                }
            }
        }
    }
    (0..n).all(|v| !reach[v][v])
}

pub fn literal_admissible(chi: &OrderedColoring) -> bool {
    floyd_acyclic(chi.n(), &literal_digraph(chi))
}

pub fn restrict(chi: &OrderedColoring, vs: &[usize]) -> OrderedColoring {
    let mut red = Vec::new();
    for a in 0..vs.len() {
        for b in a + 1..vs.len() {
            if chi.is_red(vs[a], vs[b]) {
                red.push((a, b));
            }
        }
    }
    OrderedColoring::from_red_edges(vs.len(), &red).unwrap()
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect()
}

pub fn brute_has_admissible_subset(chi: &OrderedColoring, k: usize) -> bool {
    subsets(chi.n(), k).iter().any(|s| literal_admissible(&restrict(chi, s)))
}

/// Some increasing m-tuple induces a monotone path.
pub fn brute_induced_path(g: &OrderedGraph, m: usize) -> bool {
    subsets(g.n(), m).iter().any(|s| {
        (0..m).all(|a| (a + 1..m).all(|b| g.has_edge(s[a], s[b]) == (b == a + 1)))
    })
}

pub fn brute_clique_count(g: &OrderedGraph, r: usize) -> u128 {
    subsets(g.n(), r).iter().filter(|s| s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| g.has_edge(a, b)))).count()
        as u128
}

/// Largest t with disjoint t-sets X, Y and X × Y ⊆ E.
pub fn brute_balanced_biclique(g: &OrderedGraph) -> usize {
    let n = g.n();
    let mut best = 0;
    for x in 1u64..1 << n {
        let xs: Vec<usize> = (0..n).filter(|&i| x >> i & 1 == 1).collect();
        let common = (0..n).filter(|&v| x >> v & 1 == 0 && xs.iter().all(|&u| g.has_edge(u, v))).count();
        best = best.max(xs.len().min(common));
    }
    best
}

pub fn brute_vc(f: &SetSystem) -> usize {
    let n = f.ground_size();
    let mut best = 0;
    for mask in 0u32..1 << n {
        let k = mask.count_ones() as usize;
        if k <= best || f.len() < 1 << k {
            continue;
        }
        let traces: BTreeSet<u32> = f
            .members()
            .iter()
            .map(|m| (0..n).filter(|&i| mask >> i & 1 == 1 && m.contains(i)).fold(0, |acc, i| acc | 1 << i))
            .collect();
        if traces.len() == 1 << k {
            best = k;
        }
    }
    best
}

fn is_chain(p: &Poset, s: &[usize]) -> bool {
    s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| p.comparable(a, b)))
}

fn is_antichain(p: &Poset, s: &[usize]) -> bool {
    s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| !p.comparable(a, b)))
}

pub fn brute_height(p: &Poset) -> usize {
    (0u32..1 << p.n())
        .filter_map(|m| {
            let s: Vec<usize> = (0..p.n()).filter(|&i| m >> i & 1 == 1).collect();
            is_chain(p, &s).then_some(s.len())
        })
        .max()
        .unwrap_or(0)
}

pub fn brute_width(p: &Poset) -> usize {
    (0u32..1 << p.n())
        .filter_map(|m| {
            let s: Vec<usize> = (0..p.n()).filter(|&i| m >> i & 1 == 1).collect();
            is_antichain(p, &s).then_some(s.len())
        })
        .max()
        .unwrap_or(0)
}

pub fn random_coloring(n: usize, seed: u64) -> OrderedColoring {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    OrderedColoring::random(n, 0.5, &mut rng)
}
