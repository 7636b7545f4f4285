//! Blue-path layers: the constructive side of the bound
//! f(k) ≤ (k² − k + 2)/2.
//!
//! σ(v) is the number of vertices on the longest increasing blue path that
//! starts at v. Two vertices with equal σ are joined by a red edge (a blue
//! edge u < w would give σ(u) > σ(w)), so each layer S_t is a red clique.

use serde::{Deserialize, Serialize};

use crate::coloring::{induce, is_admissible, OrderedColoring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlueLayerDecomposition {
    /// σ(v) ≥ 1 for every vertex.
    pub sigma: Vec<usize>,
    /// `layers[t - 1]` = S_t in increasing vertex order.
    pub layers: Vec<Vec<usize>>,
    /// Successor on a longest blue path, `None` when σ(v) = 1.
    next: Vec<Option<usize>>,
}

impl BlueLayerDecomposition {
    /// The blue path of order `len` starting at `v`; requires `len ≤ σ(v)`.
    pub fn blue_path_from(&self, v: usize, len: usize) -> Vec<usize> {
        assert!(len <= self.sigma[v]);
        let mut path = Vec::with_capacity(len);
        let mut cur = Some(v);
        while path.len() < len {
            let u = cur.expect("σ guarantees a successor");
            path.push(u);
            cur = self.next[u];
        }
        path
    }
}

pub fn blue_layer_decomposition(chi: &OrderedColoring) -> BlueLayerDecomposition {
    let n = chi.n();
    let mut sigma = vec![1usize; n];
    let mut next = vec![None; n];
    for v in (0..n).rev() {
        for w in v + 1..n {
            if !chi.is_red(v, w) && sigma[w] + 1 > sigma[v] {
                sigma[v] = sigma[w] + 1;
                next[v] = Some(w);
            }
        }
    }
    let depth = sigma.iter().copied().max().unwrap_or(0);
    let mut layers = vec![Vec::new(); depth];
    for (v, &s) in sigma.iter().enumerate() {
        layers[s - 1].push(v);
    }
    BlueLayerDecomposition { sigma, layers, next }
}

/// An admissible k-subset built from the layer structure, or `None` when
/// neither a blue path of order k nor a large enough layer exists.
///
/// The subset is k + 1 − t vertices of S_t followed by a blue path of order t
/// from the last of them; its only red consecutive pairs lie inside the red
/// clique, and every vertex blue to both ends of such a pair sits on the path,
/// so all arcs point from path vertices into the clique and D is acyclic.
pub fn blue_layer_subset(chi: &OrderedColoring, k: usize) -> Option<Vec<usize>> {
    if k == 0 || k > chi.n() {
        return None;
    }
    let dec = blue_layer_decomposition(chi);
    let subset = if let Some(v) = (0..chi.n()).find(|&v| dec.sigma[v] >= k) {
        dec.blue_path_from(v, k)
    } else {
        let t = (1..k).find(|&t| dec.layers.get(t - 1).is_some_and(|l| l.len() > k - t))?;
        let mut out: Vec<usize> = dec.layers[t - 1][..k + 1 - t].to_vec();
        let last = *out.last().expect("nonempty");
        out.extend(dec.blue_path_from(last, t).into_iter().skip(1));
        out
    };
    let sub = induce(chi, &subset).expect("constructed subset is increasing");
    assert!(is_admissible(&sub.coloring), "blue-layer subset must be admissible");
    Some(subset)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_blue_gives_path() {
        let c = OrderedColoring::all_blue(6);
        assert_eq!(blue_layer_subset(&c, 4), Some(vec![0, 1, 2, 3]));
        let d = blue_layer_decomposition(&c);
        assert_eq!(d.sigma, vec![6, 5, 4, 3, 2, 1]);
    }

    #[test]
    fn all_red_gives_first_layer() {
        let c = OrderedColoring::all_red(6);
        assert_eq!(blue_layer_subset(&c, 4), Some(vec![0, 1, 2, 3]));
        let d = blue_layer_decomposition(&c);
        assert_eq!(d.layers, vec![vec![0, 1, 2, 3, 4, 5]]);
    }

    #[test]
    fn layers_are_red_cliques() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let c = OrderedColoring::random(12, 0.5, &mut rng);
            let d = blue_layer_decomposition(&c);
            for layer in &d.layers {
                for (i, &a) in layer.iter().enumerate() {
                    for &b in &layer[i + 1..] {
                        assert!(c.is_red(a, b));
                    }
                }
            }
            assert_eq!(d.layers.iter().map(Vec::len).sum::<usize>(), 12);
        }
    }

    #[test]
    fn guaranteed_at_bound() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for k in 2..=6 {
            let n = (k * k - k + 2) / 2;
            for _ in 0..300 {
                let c = OrderedColoring::random(n, 0.5, &mut rng);
                assert!(blue_layer_subset(&c, k).is_some());
            }
        }
    }
}
