//! Geometric lower-bound graph: s = k/2 groups of points on S^{h−1}, one per
//! cell of an equal-measure partition into 2n/k pieces, each group cut into
//! t = k/2 ordered subparts.
//!
//! Edges: every pair inside a subpart (type 1); pairs in the same group but
//! different subparts at distance ≥ 2 − μ (type 2); pairs in different
//! groups at distance > √2 − μ (type 3).

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::geometry::dist;
use super::partition::partition_sphere;
use crate::error::{Error, Result};
use crate::graph::OrderedGraph;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointMode {
    /// Uniform point inside each cell.
    #[default]
    Random,
    /// Fixed representative of each cell.
    Center,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub k: usize,
    pub h: usize,
    pub n: usize,
    pub eps: f64,
    pub seed: u64,
    #[serde(default)]
    pub points: PointMode,
}

impl ConstructionSpec {
    pub fn new(k: usize, h: usize, n: usize, eps: f64, seed: u64) -> Self {
        Self { k, h, n, eps, seed, points: PointMode::Random }
    }

    pub fn mu(&self) -> f64 {
        self.eps / (self.h as f64).sqrt()
    }

    pub fn groups(&self) -> usize {
        self.k / 2
    }

    pub fn subparts(&self) -> usize {
        self.k / 2
    }

    /// Cells of the partition, which is also the size of each group.
    pub fn pieces(&self) -> usize {
        2 * self.n / self.k
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name, detail: String| Err(Error::ParameterOutOfRange { name, detail });
        if self.k < 2 || self.k % 2 != 0 {
            return bad("k", format!("{} must be even and at least 2", self.k));
        }
        if self.h < 2 {
            return bad("h", format!("{} must be at least 2", self.h));
        }
        if self.n == 0 || self.n % self.k != 0 {
            return bad("n", format!("{} must be a positive multiple of k = {}", self.n, self.k));
        }
        if self.pieces() % self.subparts() != 0 {
            return bad("n", format!("group size {} is not divisible by t = {}", self.pieces(), self.subparts()));
        }
        if !(self.eps > 0.0) || self.mu() >= 0.25 {
            return bad("eps", format!("need 0 < mu = eps/sqrt(h) < 1/4, got mu = {}", self.mu()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionGraph {
    pub spec: ConstructionSpec,
    pub graph: OrderedGraph,
    group: Vec<usize>,
    subpart: Vec<usize>,
    pub coords: Vec<Vec<f64>>,
}

impl ConstructionGraph {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn group_of(&self, v: usize) -> usize {
        self.group[v]
    }

    pub fn subpart_of(&self, v: usize) -> usize {
        self.subpart[v]
    }

    /// Vertex lists per group, in order.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.spec.groups()];
        for v in 0..self.n() {
            out[self.group[v]].push(v);
        }
        out
    }

    /// Vertex lists per (group, subpart).
    pub fn subparts(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out = vec![vec![Vec::new(); self.spec.subparts()]; self.spec.groups()];
        for v in 0..self.n() {
            out[self.group[v]][self.subpart[v]].push(v);
        }
        out
    }

    /// The type a pair would have, recomputed from coordinates; `None` when
    /// the pair is not an edge.
    pub fn classify(&self, u: usize, v: usize) -> Option<u8> {
        classify(&self.spec, (self.group[u], self.subpart[u]), (self.group[v], self.subpart[v]), &self.coords[u], &self.coords[v])
    }

    /// Type of an existing edge, read from the graph structure.
    pub fn edge_type(&self, u: usize, v: usize) -> Option<u8> {
        if !self.graph.has_edge(u, v) {
            return None;
        }
        Some(if self.group[u] != self.group[v] {
            3
        } else if self.subpart[u] != self.subpart[v] {
            2
        } else {
            1
        })
    }
}

fn classify(spec: &ConstructionSpec, a: (usize, usize), b: (usize, usize), x: &[f64], y: &[f64]) -> Option<u8> {
    let mu = spec.mu();
    if a == b {
        return Some(1);
    }
    let d = dist(x, y);
    if a.0 == b.0 {
        (d >= 2.0 - mu).then_some(2)
    } else {
        (d > std::f64::consts::SQRT_2 - mu).then_some(3)
    }
}

/// Builds the construction; deterministic in the spec (including its seed).
pub fn build_construction(spec: &ConstructionSpec) -> Result<ConstructionGraph> {
    spec.validate()?;
    let pieces = spec.pieces();
    let partition = partition_sphere(spec.h, pieces, 2.0)?;
    let (s, t) = (spec.groups(), spec.subparts());
    let per_sub = pieces / t;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut coords = Vec::with_capacity(spec.n);
    let mut group = Vec::with_capacity(spec.n);
    let mut subpart = Vec::with_capacity(spec.n);
    for gi in 0..s {
        let mut pts: Vec<Vec<f64>> = (0..pieces)
            .map(|c| match spec.points {
                PointMode::Random => partition.random_point(c, &mut rng),
                PointMode::Center => partition.center_point(c),
            })
            .collect();
        pts.shuffle(&mut rng);
        for (i, p) in pts.into_iter().enumerate() {
            coords.push(p);
            group.push(gi);
            subpart.push(i / per_sub);
        }
    }
    let n = spec.n;
    let rows: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|u| {
            (u + 1..n)
                .filter(|&v| classify(spec, (group[u], subpart[u]), (group[v], subpart[v]), &coords[u], &coords[v]).is_some())
                .collect()
        })
        .collect();
    let mut graph = OrderedGraph::empty(n);
    for (u, row) in rows.into_iter().enumerate() {
        for v in row {
            graph.add_edge(u, v);
        }
    }
    Ok(ConstructionGraph { spec: spec.clone(), graph, group, subpart, coords })
}

#[derive(Serialize, Deserialize)]
struct ConstructionJson {
    spec: ConstructionSpec,
    #[serde(flatten)]
    graph: OrderedGraph,
    groups: Vec<Vec<usize>>,
    subparts: Vec<Vec<Vec<usize>>>,
    coords: Vec<Vec<f64>>,
    /// Parallel to the edge list.
    edge_type: Vec<u8>,
}

impl Serialize for ConstructionGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let one = |v: &Vec<usize>| v.iter().map(|x| x + 1).collect::<Vec<_>>();
        ConstructionJson {
            spec: self.spec.clone(),
            graph: self.graph.clone(),
            groups: self.groups().iter().map(one).collect(),
            subparts: self.subparts().iter().map(|g| g.iter().map(one).collect()).collect(),
            coords: self.coords.clone(),
            edge_type: self.graph.edges().map(|(u, v)| self.edge_type(u, v).unwrap()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConstructionGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = ConstructionJson::deserialize(d)?;
        let n = j.graph.n();
        if j.coords.len() != n {
            return Err(D::Error::custom("coords length differs from n"));
        }
        let mut group = vec![usize::MAX; n];
        let mut subpart = vec![usize::MAX; n];
        for (gi, g) in j.subparts.iter().enumerate() {
            for (si, part) in g.iter().enumerate() {
                for &v in part {
                    if v == 0 || v > n || group[v - 1] != usize::MAX {
                        return Err(D::Error::custom(format!("bad subpart vertex {v}")));
                    }
                    group[v - 1] = gi;
                    subpart[v - 1] = si;
                }
            }
        }
        if group.contains(&usize::MAX) {
            return Err(D::Error::custom("subparts do not cover every vertex"));
        }
        let keys: Vec<(usize, usize)> = group.iter().copied().zip(subpart.iter().copied()).collect();
        if keys.windows(2).any(|w| w[0] > w[1]) {
            return Err(D::Error::custom("vertex order must follow group, then subpart"));
        }
        let cg = ConstructionGraph { spec: j.spec, graph: j.graph, group, subpart, coords: j.coords };
        if cg.groups().iter().map(|g| g.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>() != j.groups {
            return Err(D::Error::custom("groups disagree with subparts"));
        }
        let types: Vec<u8> = cg.graph.edges().map(|(u, v)| cg.edge_type(u, v).unwrap()).collect();
        if types != j.edge_type {
            return Err(D::Error::custom("edge_type disagrees with the graph"));
        }
        Ok(cg)
    }
}
