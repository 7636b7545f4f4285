//! Literal reference checks used by the reproduction experiments. They follow
//! the definitions directly and share no code with the library algorithms.

use std::collections::BTreeSet;

use blowup_core::vc::SetSystem;
use blowup_core::OrderedColoring;

/// Red consecutive pair (i, i+1) with both edges to j blue gives arcs j→i and
/// j→i+1.
pub fn literal_digraph(chi: &OrderedColoring) -> BTreeSet<(usize, usize)> {
    let n = chi.n();
    let mut arcs = BTreeSet::new();
    for i in 0..n.saturating_sub(1) {
        for j in 0..n {
            if j != i && j != i + 1 && chi.is_red(i, i + 1) && !chi.is_red(i, j) && !chi.is_red(i + 1, j) {
                arcs.insert((j, i));
                arcs.insert((j, i + 1));
            }
        }
    }
    arcs
}

/// Acyclic iff the boolean transitive closure has an empty diagonal.
pub fn literal_admissible(chi: &OrderedColoring) -> bool {
    let n = chi.n();
    let mut reach = vec![vec![false; n]; n];
    for (a, b) in literal_digraph(chi) {
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

pub fn restrict(chi: &OrderedColoring, vs: &[usize]) -> OrderedColoring {
    let mut red = Vec::new();
    for a in 0..vs.len() {
        for b in a + 1..vs.len() {
            if chi.is_red(vs[a], vs[b]) {
                red.push((a, b));
            }
        }
    }
    OrderedColoring::from_red_edges(vs.len(), &red).expect("indices are in range")
}

/// Largest shattered subset, by trying every subset of the ground set.
pub fn brute_vc(f: &SetSystem) -> usize {
    let n = f.ground_size();
    assert!(n < 32);
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
