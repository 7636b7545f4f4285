//! Greedy realisation of the path-embedding argument: given ordered
//! candidate sets C₀ < C₁ < ⋯ < C_{2k−1} and an admissible coloring χ of the
//! k blocks (C_{2i}, C_{2i+1}), embed an induced monotone path with
//! x_j ∈ C_j.
//!
//! Consecutive block pairs (c, c+1) are processed in the order in which the
//! earlier of their endpoints appears in a topological order of D(χ); the pair
//! fixes x_{2c+1}, x_{2c+2}. Every unembedded position keeps the candidate set
//! C_j ∩ ⋂ N(embedded neighbours on the path) ∖ ⋃ N(other embedded vertices).
//! Where the proof appeals to regularity to guarantee large remaining sets,
//! the greedy simply picks the choice maximising the smallest remaining set.

use fixedbitset::FixedBitSet;

use super::path::is_induced_monotone_path;
use super::OrderedGraph;
use crate::coloring::{dependency_digraph, Color, OrderedColoring};
use crate::error::{Error, Result};

pub fn embed_monotone_path(
    g: &OrderedGraph,
    candidate_sets: &[Vec<usize>],
    chi: &OrderedColoring,
) -> Result<Option<Vec<usize>>> {
    let k = chi.n();
    if candidate_sets.len() != 2 * k || k == 0 {
        return Err(Error::InvalidInput(format!("need 2k = {} candidate sets, got {}", 2 * k, candidate_sets.len())));
    }
    let order = dependency_digraph(chi).topological_order().ok_or(Error::NotAdmissible)?;
    let mut prev_max: Option<usize> = None;
    for c in candidate_sets {
        if c.iter().any(|&v| v >= g.n()) {
            return Err(Error::InvalidInput("candidate vertex out of range".into()));
        }
        let (Some(&lo), Some(&hi)) = (c.iter().min(), c.iter().max()) else {
            return Ok(None);
        };
        if prev_max.is_some_and(|p| p >= lo) {
            return Err(Error::InvalidInput("candidate sets must satisfy C_1 < C_2 < ... < C_2k".into()));
        }
        prev_max = Some(hi);
    }

    let mut pos = vec![0usize; k];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let mut pairs: Vec<usize> = (0..k.saturating_sub(1)).collect();
    pairs.sort_by_key(|&c| (pos[c].min(pos[c + 1]), c));

    let m = 2 * k;
    let mut cand: Vec<FixedBitSet> = candidate_sets.iter().map(|c| g.vertex_set(c.iter().copied())).collect();
    let mut x: Vec<Option<usize>> = vec![None; m];

    for c in pairs {
        let i = 2 * c + 1;
        let choice = match chi.color(c, c + 1) {
            Color::Blue => pick_blue(g, &cand, &x, i),
            Color::Red => pick_red(g, &cand, &x, i),
        };
        let Some((u, v)) = choice else { return Ok(None) };
        fix(g, &mut cand, &mut x, i, u);
        fix(g, &mut cand, &mut x, i + 1, v);
        if (0..m).any(|j| x[j].is_none() && cand[j].is_clear()) {
            return Ok(None);
        }
    }

    if k == 1 {
        let Some((u, v)) = pick_red(g, &cand, &x, 0) else { return Ok(None) };
        x[0] = Some(u);
        x[1] = Some(v);
    } else {
        let last = m - 1;
        let found = cand[0].ones().find_map(|u| {
            let mut far = cand[last].clone();
            far.difference_with(g.neighbors(u));
            far.minimum().map(|v| (u, v))
        });
        let Some((u, v)) = found else { return Ok(None) };
        x[0] = Some(u);
        x[last] = Some(v);
    }
    let path: Vec<usize> = x.into_iter().map(|v| v.expect("all positions embedded")).collect();
    Ok(is_induced_monotone_path(g, &path).then_some(path))
}

/// Smallest candidate set left after placing `v` at position `i`.
fn slack_after(g: &OrderedGraph, cand: &[FixedBitSet], x: &[Option<usize>], skip: &[usize], i: usize, v: usize) -> usize {
    let nb = g.neighbors(v);
    (0..cand.len())
        .filter(|&j| x[j].is_none() && j != i && !skip.contains(&j))
        .map(|j| if j + 1 == i || i + 1 == j { cand[j].intersection_count(nb) } else { cand[j].difference_count(nb) })
        .min()
        .unwrap_or(usize::MAX)
}

/// Blue block pair: a vertex u of high degree into the partner set, then a
/// neighbour v of u.
fn pick_blue(g: &OrderedGraph, cand: &[FixedBitSet], x: &[Option<usize>], i: usize) -> Option<(usize, usize)> {
    let u = cand[i]
        .ones()
        .map(|u| {
            let deg = cand[i + 1].intersection_count(g.neighbors(u));
            (deg.min(slack_after(g, cand, x, &[i + 1], i, u)), deg, u)
        })
        .filter(|&(_, deg, _)| deg > 0)
        .max_by_key(|&(s, deg, u)| (s, deg, std::cmp::Reverse(u)))?
        .2;
    let mut after = cand.to_vec();
    let mut xs = x.to_vec();
    fix(g, &mut after, &mut xs, i, u);
    best_by_slack(g, &after, &xs, i + 1, after[i + 1].ones()).map(|v| (u, v))
}

/// Red block pair: any cross edge, preferring the one leaving the most room.
fn pick_red(g: &OrderedGraph, cand: &[FixedBitSet], x: &[Option<usize>], i: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for u in cand[i].ones() {
        let mut after = cand.to_vec();
        let mut xs = x.to_vec();
        fix(g, &mut after, &mut xs, i, u);
        for v in after[i + 1].ones() {
            let s = slack_after(g, &after, &xs, &[], i + 1, v);
            if best.is_none_or(|(b, _, _)| s > b) {
                best = Some((s, u, v));
            }
        }
    }
    best.map(|(_, u, v)| (u, v))
}

fn best_by_slack(
    g: &OrderedGraph,
    cand: &[FixedBitSet],
    x: &[Option<usize>],
    i: usize,
    options: impl Iterator<Item = usize>,
) -> Option<usize> {
    options.map(|v| (slack_after(g, cand, x, &[], i, v), v)).max_by_key(|&(s, v)| (s, std::cmp::Reverse(v))).map(|(_, v)| v)
}

fn fix(g: &OrderedGraph, cand: &mut [FixedBitSet], x: &mut [Option<usize>], i: usize, v: usize) {
    x[i] = Some(v);
    let nb = g.neighbors(v);
    for j in 0..cand.len() {
        if x[j].is_some() {
            continue;
        }
        if j + 1 == i || i + 1 == j {
            cand[j].intersect_with(nb);
        } else {
            cand[j].difference_with(nb);
        }
    }
}

/// The graph whose edges are exactly C_j × C_{j+1} for 2k consecutive sets of
/// the given size, with those sets.
pub fn path_blowup_instance(k: usize, size: usize) -> (OrderedGraph, Vec<Vec<usize>>) {
    let m = 2 * k;
    let sets: Vec<Vec<usize>> = (0..m).map(|j| (j * size..(j + 1) * size).collect()).collect();
    let mut g = OrderedGraph::empty(m * size);
    for j in 1..m {
        for &a in &sets[j - 1] {
            for &b in &sets[j] {
                g.add_edge(a, b);
            }
        }
    }
    (g, sets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_blowup_always_embeds() {
        let (g, sets) = path_blowup_instance(3, 4);
        for code in 0..8u128 {
            let chi = OrderedColoring::from_pattern(3, code);
            if !crate::coloring::is_admissible(&chi) {
                assert!(matches!(embed_monotone_path(&g, &sets, &chi), Err(Error::NotAdmissible)));
                continue;
            }
            let p = embed_monotone_path(&g, &sets, &chi).unwrap().unwrap();
            assert!(is_induced_monotone_path(&g, &p));
        }
    }

    #[test]
    fn complete_graph_fails() {
        let g = OrderedGraph::complete(12);
        let sets: Vec<Vec<usize>> = (0..4).map(|j| (3 * j..3 * j + 3).collect()).collect();
        let chi = OrderedColoring::all_blue(2);
        assert_eq!(embed_monotone_path(&g, &sets, &chi).unwrap(), None);
    }

    #[test]
    fn rejects_bad_inputs() {
        let (g, sets) = path_blowup_instance(2, 2);
        let chi = OrderedColoring::all_blue(3);
        assert!(embed_monotone_path(&g, &sets, &chi).is_err());
        let mut swapped = sets.clone();
        swapped.swap(0, 1);
        assert!(embed_monotone_path(&g, &swapped, &OrderedColoring::all_blue(2)).is_err());
    }
}
