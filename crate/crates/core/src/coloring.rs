//! Red/blue colorings of the ordered complete graph, their dependency
//! digraphs, and admissibility.
//!
//! Vertices are 0-based in the Rust API (`0..n`); the JSON form uses the
//! 1-based labels `1..=n`. A coloring stores one red-neighbourhood bitmask per
//! vertex, which caps `n` at [`MAX_VERTICES`].

use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count representable by [`OrderedColoring`].
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a `u64`, lowest first.
#[derive(Clone, Copy)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}

/// Index of the pair `(p, q)`, `p < q`, in the colex enumeration of pairs.
#[inline]
pub const fn pair_index(p: usize, q: usize) -> usize {
    q * (q - 1) / 2 + p
}

/// A red/blue coloring of the ordered clique on `n` vertices. Every pair is
/// blue unless marked red.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "ColoringJson", into = "ColoringJson")]
pub struct OrderedColoring {
    n: usize,
    red: Vec<u64>,
}

/// Wire form: `{"n": 4, "red": [[1,2],[3,4]]}` with 1-based, sorted pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ColoringJson {
    pub n: usize,
    pub red: Vec<[usize; 2]>,
}

impl TryFrom<ColoringJson> for OrderedColoring {
    type Error = Error;
    fn try_from(j: ColoringJson) -> Result<Self> {
        let mut c = OrderedColoring::try_all_blue(j.n)?;
        for [a, b] in j.red {
            for x in [a, b] {
                if x == 0 || x > j.n {
                    return Err(Error::VertexOutOfRange { index: x, n: j.n });
                }
            }
            if a == b {
                return Err(Error::InvalidInput(format!("self-pair [{a},{a}]")));
            }
            c.set_color(a - 1, b - 1, Color::Red);
        }
        Ok(c)
    }
}

impl From<OrderedColoring> for ColoringJson {
    fn from(c: OrderedColoring) -> Self {
        ColoringJson {
            n: c.n,
            red: c.red_edges().into_iter().map(|(a, b)| [a + 1, b + 1]).collect(),
        }
    }
}

impl OrderedColoring {
    /// All-blue coloring; errors when `n > MAX_VERTICES`.
    pub fn try_all_blue(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::ParameterOutOfRange {
                name: "n",
                detail: format!("{n} exceeds {MAX_VERTICES} vertices"),
            });
        }
        Ok(Self { n, red: vec![0; n] })
    }

    /// # Panics
    /// If `n > MAX_VERTICES`.
    pub fn all_blue(n: usize) -> Self {
        Self::try_all_blue(n).expect("vertex count")
    }

    /// # Panics
    /// If `n > MAX_VERTICES`.
    pub fn all_red(n: usize) -> Self {
        let full = full_mask(n);
        let mut c = Self::all_blue(n);
        for (i, row) in c.red.iter_mut().enumerate() {
            *row = full & !(1u64 << i);
        }
        c
    }

    /// Builds a coloring from 0-based red pairs (either orientation).
    pub fn from_red_edges(n: usize, red: &[(usize, usize)]) -> Result<Self> {
        let mut c = Self::try_all_blue(n)?;
        for &(a, b) in red {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { index: x + 1, n });
                }
            }
            if a == b {
                return Err(Error::InvalidInput(format!("self-pair ({a},{a})")));
            }
            c.set_color(a, b, Color::Red);
        }
        Ok(c)
    }

    /// Decodes a pattern code: bit `pair_index(p, q)` set means `pq` is red.
    /// Requires `n ≤ 16`.
    pub fn from_pattern(n: usize, code: u128) -> Self {
        assert!(n <= 16, "pattern codes cover at most 16 vertices");
        let mut c = Self::all_blue(n);
        for q in 1..n {
            for p in 0..q {
                if code >> pair_index(p, q) & 1 == 1 {
                    c.set_color(p, q, Color::Red);
                }
            }
        }
        c
    }

    /// Inverse of [`from_pattern`](Self::from_pattern).
    pub fn pattern(&self) -> u128 {
        assert!(self.n <= 16, "pattern codes cover at most 16 vertices");
        let mut code = 0u128;
        for q in 1..self.n {
            for p in 0..q {
                if self.is_red(p, q) {
                    code |= 1u128 << pair_index(p, q);
                }
            }
        }
        code
    }

    /// Independent coin flips with `P(red) = p_red`.
    pub fn random<R: Rng + ?Sized>(n: usize, p_red: f64, rng: &mut R) -> Self {
        let mut c = Self::all_blue(n);
        for q in 1..n {
            for p in 0..q {
                if rng.random_bool(p_red) {
                    c.set_color(p, q, Color::Red);
                }
            }
        }
        c
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_red(&self, i: usize, j: usize) -> bool {
        self.red[i] >> j & 1 == 1
    }

    #[inline]
    pub fn color(&self, i: usize, j: usize) -> Color {
        if self.is_red(i, j) {
            Color::Red
        } else {
            Color::Blue
        }
    }

    pub fn set_color(&mut self, i: usize, j: usize, c: Color) {
        assert!(i != j && i < self.n && j < self.n, "invalid pair ({i},{j})");
        match c {
            Color::Red => {
                self.red[i] |= 1 << j;
                self.red[j] |= 1 << i;
            }
            Color::Blue => {
                self.red[i] &= !(1 << j);
                self.red[j] &= !(1 << i);
            }
        }
    }

    /// Bitmask of the red neighbours of `i`.
    #[inline]
    pub fn red_row(&self, i: usize) -> u64 {
        self.red[i]
    }

    /// Bitmask of the blue neighbours of `i`.
    #[inline]
    pub fn blue_row(&self, i: usize) -> u64 {
        full_mask(self.n) & !self.red[i] & !(1u64 << i)
    }

    /// Red pairs `(i, j)`, `i < j`, in lexicographic order.
    pub fn red_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in Bits(self.red[i] & !full_mask(i + 1)) {
                out.push((i, j));
            }
        }
        out
    }

    /// The coloring induced on the first `m` vertices.
    pub fn prefix(&self, m: usize) -> Self {
        assert!(m <= self.n);
        let mask = full_mask(m);
        Self {
            n: m,
            red: self.red[..m].iter().map(|r| r & mask).collect(),
        }
    }

    /// Admissibility of the coloring induced on the vertex set `subset`,
    /// evaluated without materialising the induced coloring.
    pub fn subset_admissible(&self, subset: u64) -> bool {
        let mut in_arcs = [0u64; MAX_VERTICES];
        let mut prev: Option<usize> = None;
        for b in Bits(subset) {
            if let Some(a) = prev {
                if self.is_red(a, b) {
                    let common = self.blue_row(a) & self.blue_row(b) & subset;
                    for j in Bits(common) {
                        in_arcs[a] |= 1 << j;
                        in_arcs[b] |= 1 << j;
                    }
                }
            }
            prev = Some(b);
        }
        kahn_drains(subset, &in_arcs)
    }
}

/// Repeatedly deletes vertices of `alive` with no in-arc from `alive`;
/// true iff everything drains.
fn kahn_drains(mut alive: u64, in_arcs: &[u64]) -> bool {
    'outer: while alive != 0 {
        for v in Bits(alive) {
            if in_arcs[v] & alive == 0 {
                alive &= !(1u64 << v);
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// The dependency digraph of a coloring: out-neighbourhood bitmask per vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DependencyDigraph {
    n: usize,
    out: Vec<u64>,
}

impl DependencyDigraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        Self { n, out: vec![0; n] }
    }

    /// Builds a digraph from 0-based arcs `(a, b)` meaning `a → b`.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::ParameterOutOfRange { name: "n", detail: format!("{n}") });
        }
        let mut d = Self::empty(n);
        for &(a, b) in arcs {
            if a >= n || b >= n {
                return Err(Error::VertexOutOfRange { index: a.max(b) + 1, n });
            }
            if a == b {
                return Err(Error::InvalidInput(format!("loop at {a}")));
            }
            d.out[a] |= 1 << b;
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.out[a] >> b & 1 == 1
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|a| Bits(self.out[a]).map(move |b| (a, b))).collect()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|r| r.count_ones() as usize).sum()
    }

    fn in_arcs(&self) -> Vec<u64> {
        let mut inn = vec![0u64; self.n];
        for a in 0..self.n {
            for b in Bits(self.out[a]) {
                inn[b] |= 1 << a;
            }
        }
        inn
    }

    /// True iff there is no directed cycle; a pair of opposite arcs is a cycle.
    pub fn is_acyclic(&self) -> bool {
        kahn_drains(full_mask(self.n), &self.in_arcs())
    }

    /// Kahn order with the smallest available vertex first; `None` on a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let inn = self.in_arcs();
        let mut alive = full_mask(self.n);
        let mut order = Vec::with_capacity(self.n);
        'outer: while alive != 0 {
            for v in Bits(alive) {
                if inn[v] & alive == 0 {
                    alive &= !(1u64 << v);
                    order.push(v);
                    continue 'outer;
                }
            }
            return None;
        }
        Some(order)
    }
}

/// D(χ): for each red consecutive pair `(i, i+1)` and each `j` blue to both,
/// the arcs `j → i` and `j → i+1`.
pub fn dependency_digraph(chi: &OrderedColoring) -> DependencyDigraph {
    let mut d = DependencyDigraph::empty(chi.n);
    for i in 0..chi.n.saturating_sub(1) {
        if chi.is_red(i, i + 1) {
            let pair = (1u64 << i) | (1u64 << (i + 1));
            for j in Bits(chi.blue_row(i) & chi.blue_row(i + 1)) {
                d.out[j] |= pair;
            }
        }
    }
    d
}

pub fn is_acyclic(d: &DependencyDigraph) -> bool {
    d.is_acyclic()
}

pub fn is_admissible(chi: &OrderedColoring) -> bool {
    dependency_digraph(chi).is_acyclic()
}

/// A coloring restricted to a vertex subset and relabelled `0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetColoring {
    pub parent: OrderedColoring,
    pub vertices: Vec<usize>,
    pub coloring: OrderedColoring,
}

pub fn induce(chi: &OrderedColoring, vertices: &[usize]) -> Result<SubsetColoring> {
    check_increasing(vertices, chi.n)?;
    let k = vertices.len();
    let mut sub = OrderedColoring::all_blue(k);
    for b in 1..k {
        for a in 0..b {
            if chi.is_red(vertices[a], vertices[b]) {
                sub.set_color(a, b, Color::Red);
            }
        }
    }
    Ok(SubsetColoring { parent: chi.clone(), vertices: vertices.to_vec(), coloring: sub })
}

pub(crate) fn check_increasing(vertices: &[usize], n: usize) -> Result<()> {
    for (pos, &v) in vertices.iter().enumerate() {
        if v >= n {
            return Err(Error::VertexOutOfRange { index: v + 1, n });
        }
        if pos > 0 && vertices[pos - 1] >= v {
            return Err(Error::NotIncreasing { position: pos });
        }
    }
    Ok(())
}

pub(crate) fn vertices_of(mask: u64) -> Vec<usize> {
    Bits(mask).collect()
}

/// Precomputed admissibility verdict for every coloring of a `k`-clique,
/// indexed by its pattern code. This is the memo shared by all subset checks
/// of a given size.
pub struct AdmissibilityTable {
    k: usize,
    bits: Vec<u64>,
}

/// Largest `k` for which [`AdmissibilityTable`] is built (2^21 entries).
pub const MAX_TABLE_K: usize = 7;

impl AdmissibilityTable {
    pub fn new(k: usize) -> Self {
        assert!((1..=MAX_TABLE_K).contains(&k), "table size k={k} unsupported");
        let pairs = k * (k - 1) / 2;
        let total = 1usize << pairs;
        let mut bits = vec![0u64; total.div_ceil(64)];
        for code in 0..total {
            if pattern_admissible(k, code as u64) {
                bits[code >> 6] |= 1 << (code & 63);
            }
        }
        Self { k, bits }
    }

    /// Shared instance per `k`, built on first use.
    pub fn shared(k: usize) -> &'static AdmissibilityTable {
        static TABLES: [OnceLock<AdmissibilityTable>; MAX_TABLE_K + 1] =
            [const { OnceLock::new() }; MAX_TABLE_K + 1];
        TABLES[k].get_or_init(|| AdmissibilityTable::new(k))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn admissible(&self, code: u64) -> bool {
        self.bits[(code >> 6) as usize] >> (code & 63) & 1 == 1
    }
}

/// Admissibility of a `k`-vertex pattern code, computed directly.
fn pattern_admissible(k: usize, code: u64) -> bool {
    let red = |p: usize, q: usize| -> bool {
        let (p, q) = if p < q { (p, q) } else { (q, p) };
        code >> pair_index(p, q) & 1 == 1
    };
    let mut in_arcs = [0u64; MAX_TABLE_K];
    for i in 0..k.saturating_sub(1) {
        if red(i, i + 1) {
            for j in 0..k {
                if j != i && j != i + 1 && !red(i, j) && !red(i + 1, j) {
                    in_arcs[i] |= 1 << j;
                    in_arcs[i + 1] |= 1 << j;
                }
            }
        }
    }
    kahn_drains(full_mask(k), &in_arcs)
}

/// Pattern code of the coloring induced on `subset` (at most 7 vertices).
fn subset_code(chi: &OrderedColoring, subset: &[usize]) -> u64 {
    let mut code = 0u64;
    for q in 1..subset.len() {
        let row = chi.red_row(subset[q]);
        for (p, &v) in subset[..q].iter().enumerate() {
            code |= (row >> v & 1) << pair_index(p, q);
        }
    }
    code
}

/// Some `k`-subset (0-based, increasing) whose induced coloring is
/// admissible, or `None`. Subsets are visited in colexicographic order, so the
/// answer is the colex-first admissible subset.
pub fn has_admissible_subset(chi: &OrderedColoring, k: usize) -> Result<Option<Vec<usize>>> {
    let n = chi.n;
    if k == 0 || k > n {
        return Err(Error::ParameterOutOfRange {
            name: "k",
            detail: format!("need 1 <= k <= n = {n}, got {k}"),
        });
    }
    let table = (k <= 6).then(|| AdmissibilityTable::shared(k));
    let limit: u128 = 1u128 << n;
    let mut mask: u128 = (1u128 << k) - 1;
    let mut buf = Vec::with_capacity(k);
    while mask < limit {
        let m = mask as u64;
        let ok = match table {
            Some(t) => {
                buf.clear();
                buf.extend(Bits(m));
                t.admissible(subset_code(chi, &buf))
            }
            None => chi.subset_admissible(m),
        };
        if ok {
            return Ok(Some(vertices_of(m)));
        }
        // Gosper's hack: next larger integer with the same popcount.
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(n: usize, red1: &[(usize, usize)]) -> OrderedColoring {
        let red: Vec<_> = red1.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        OrderedColoring::from_red_edges(n, &red).unwrap()
    }

    #[test]
    fn single_red_pair_on_three_vertices() {
        let c = col(3, &[(1, 2)]);
        let d = dependency_digraph(&c);
        assert_eq!(d.arcs(), vec![(2, 0), (2, 1)]);
        assert!(d.is_acyclic());
        assert!(is_admissible(&c));
    }

    #[test]
    fn two_red_pairs_on_four_vertices() {
        let c = col(4, &[(1, 2), (3, 4)]);
        let d = dependency_digraph(&c);
        let mut expect = vec![(2, 0), (2, 1), (3, 0), (3, 1), (0, 2), (0, 3), (1, 2), (1, 3)];
        expect.sort();
        assert_eq!(d.arcs(), expect);
        assert!(!is_admissible(&c));
        assert!(!c.subset_admissible(0b1111));
    }

    #[test]
    fn monochromatic_colorings_are_admissible() {
        for n in 1..=12 {
            assert_eq!(dependency_digraph(&OrderedColoring::all_blue(n)).arc_count(), 0);
            assert_eq!(dependency_digraph(&OrderedColoring::all_red(n)).arc_count(), 0);
        }
    }

    #[test]
    fn two_cycle_is_a_cycle() {
        let d = DependencyDigraph::from_arcs(3, &[(0, 2), (2, 0)]).unwrap();
        assert!(!d.is_acyclic());
        assert!(d.topological_order().is_none());
        assert!(DependencyDigraph::empty(5).is_acyclic());
    }

    #[test]
    fn topological_order_prefers_small_vertices() {
        let d = DependencyDigraph::from_arcs(3, &[(2, 0), (2, 1)]).unwrap();
        assert_eq!(d.topological_order().unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn induce_relabels() {
        let c = col(4, &[(1, 2), (3, 4)]);
        let s = induce(&c, &[0, 1, 2]).unwrap();
        assert_eq!(s.coloring.red_edges(), vec![(0, 1)]);
        assert_eq!(induce(&c, &[0, 1, 2, 3]).unwrap().coloring, c);
        assert_eq!(induce(&c, &[2]).unwrap().coloring.n(), 1);
        assert!(matches!(induce(&c, &[1, 1]), Err(Error::NotIncreasing { .. })));
        assert!(matches!(induce(&c, &[4]), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn admissible_subset_search() {
        let c = col(4, &[(1, 2), (3, 4)]);
        assert_eq!(has_admissible_subset(&c, 3).unwrap(), Some(vec![0, 1, 2]));
        assert_eq!(has_admissible_subset(&c, 4).unwrap(), None);
        let b = OrderedColoring::all_blue(7);
        assert_eq!(has_admissible_subset(&b, 5).unwrap(), Some(vec![0, 1, 2, 3, 4]));
        assert!(has_admissible_subset(&b, 8).is_err());
        assert!(has_admissible_subset(&b, 0).is_err());
    }

    #[test]
    fn table_matches_direct_check() {
        for k in 1..=5 {
            let t = AdmissibilityTable::new(k);
            for code in 0..1u64 << (k * (k - 1) / 2) {
                let c = OrderedColoring::from_pattern(k, code as u128);
                assert_eq!(t.admissible(code), is_admissible(&c), "k={k} code={code}");
            }
        }
    }

    #[test]
    fn json_is_one_based_and_sorted() {
        let c = col(4, &[(3, 4), (1, 2)]);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"n":4,"red":[[1,2],[3,4]]}"#);
        let back: OrderedColoring = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<OrderedColoring>(r#"{"n":2,"red":[[1,3]]}"#).is_err());
        assert!(serde_json::from_str::<OrderedColoring>(r#"{"n":2,"red":[[1,1]]}"#).is_err());
    }

    #[test]
    fn pattern_round_trip() {
        let c = col(5, &[(1, 5), (2, 3)]);
        assert_eq!(OrderedColoring::from_pattern(5, c.pattern()), c);
    }
}
