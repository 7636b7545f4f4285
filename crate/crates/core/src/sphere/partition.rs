//! Recursive zonal equal-area partition of S^{h−1}.
//!
//! S^d is cut into two polar caps and a stack of collars. Collar boundaries
//! are colatitudes at which the cumulative cap measure is an exact multiple
//! of 1/N, so each collar holds an integral number of cells; the collar is
//! then split by partitioning S^{d−1} into that many pieces. On S^1 the
//! pieces are equal arcs. A cell is a product of colatitude intervals and a
//! final azimuth interval, which gives analytic measures and diameters.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::geometry::{cap_measure_closed_form, sin_power_integral, sin_power_total};
use crate::error::{Error, Result};

pub const MAX_PIECES: usize = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    /// Colatitude intervals from S^{h−1} downwards, then the azimuth interval.
    pub ranges: Vec<(f64, f64)>,
    pub measure: f64,
    pub diameter_bound: f64,
}

#[derive(Clone, Debug)]
enum Zone {
    Whole,
    Arcs(usize),
    Bands { bounds: Vec<f64>, children: Vec<Zone>, first: Vec<usize> },
}

impl Zone {
    fn cells(&self) -> usize {
        match self {
            Zone::Whole => 1,
            Zone::Arcs(n) => *n,
            Zone::Bands { children, first, .. } => first.last().unwrap() + children.last().unwrap().cells(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpherePartition {
    h: usize,
    root: Zone,
    cells: Vec<Cell>,
    pub delta_target: f64,
}

/// Partition S^{h−1} ⊂ R^h into `pieces` cells of measure 1/pieces.
pub fn partition_sphere(h: usize, pieces: usize, delta_target: f64) -> Result<SpherePartition> {
    if h < 2 {
        return Err(Error::ParameterOutOfRange { name: "h", detail: format!("need h >= 2, got {h}") });
    }
    if pieces == 0 {
        return Err(Error::ParameterOutOfRange { name: "pieces", detail: "need at least one piece".into() });
    }
    if pieces > MAX_PIECES {
        return Err(Error::ParameterOutOfRange { name: "pieces", detail: format!("{pieces} exceeds {MAX_PIECES}") });
    }
    let root = zone(h - 1, pieces);
    let mut cells = Vec::with_capacity(pieces);
    let mut ranges = Vec::with_capacity(h - 1);
    collect(&root, h - 1, &mut ranges, 1.0, &mut cells);
    debug_assert_eq!(cells.len(), pieces);
    Ok(SpherePartition { h, root, cells, delta_target })
}

/// Sphere surface measure σ(S^d) (unnormalised).
fn sphere_area(d: usize) -> f64 {
    let mut a = TAU;
    for j in 2..=d {
        a *= sin_power_total(j - 1);
    }
    a
}

/// Normalised cap measure on S^d.
fn cap(d: usize, theta: f64) -> f64 {
    cap_measure_closed_form(d + 1, theta)
}

/// Colatitude at which the cap on S^d has normalised measure `m`.
fn cap_inverse(d: usize, m: f64) -> f64 {
    if m <= 0.0 {
        return 0.0;
    }
    if m >= 1.0 {
        return PI;
    }
    let (mut lo, mut hi) = (0.0, PI);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if cap(d, mid) < m {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn zone(d: usize, n: usize) -> Zone {
    if n == 1 {
        return Zone::Whole;
    }
    if d == 1 {
        return Zone::Arcs(n);
    }
    let polar = cap_inverse(d, 1.0 / n as f64);
    let mut counts = vec![1usize];
    if n > 2 {
        let ideal = (sphere_area(d) / n as f64).powf(1.0 / d as f64);
        let collars = (((PI - 2.0 * polar) / ideal).round() as usize).max(1);
        let width = (PI - 2.0 * polar) / collars as f64;
        let mut carry = 0.0;
        let mut assigned = 0usize;
        for i in 0..collars {
            let ideal_count = if i + 1 == collars {
                (n - 2 - assigned) as f64
            } else {
                (cap(d, polar + (i + 1) as f64 * width) - cap(d, polar + i as f64 * width)) * n as f64
            };
            let c = ((ideal_count + carry).round().max(0.0) as usize).min(n - 2 - assigned);
            carry += ideal_count - c as f64;
            assigned += c;
            if c > 0 {
                counts.push(c);
            }
        }
    }
    counts.push(1);
    let mut bounds = vec![0.0];
    let mut acc = 0usize;
    for &c in &counts[..counts.len() - 1] {
        acc += c;
        bounds.push(cap_inverse(d, acc as f64 / n as f64));
    }
    bounds.push(PI);
    let last = counts.len() - 1;
    let children: Vec<Zone> = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| if i == 0 || i == last { Zone::Whole } else { zone(d - 1, c) })
        .collect();
    let mut first = Vec::with_capacity(children.len());
    let mut acc = 0;
    for c in &children {
        first.push(acc);
        acc += c.cells();
    }
    Zone::Bands { bounds, children, first }
}

fn collect(z: &Zone, d: usize, ranges: &mut Vec<(f64, f64)>, measure: f64, out: &mut Vec<Cell>) {
    match z {
        Zone::Whole => {
            let depth = ranges.len();
            for j in (1..=d).rev() {
                ranges.push(if j == 1 { (0.0, TAU) } else { (0.0, PI) });
            }
            out.push(Cell { ranges: ranges.clone(), measure, diameter_bound: diameter(ranges) });
            ranges.truncate(depth);
        }
        Zone::Arcs(n) => {
            let w = TAU / *n as f64;
            for i in 0..*n {
                ranges.push((i as f64 * w, (i + 1) as f64 * w));
                out.push(Cell { ranges: ranges.clone(), measure: measure / *n as f64, diameter_bound: diameter(ranges) });
                ranges.pop();
            }
        }
        Zone::Bands { bounds, children, .. } => {
            let p = d - 1;
            let total = sin_power_total(p);
            for (i, child) in children.iter().enumerate() {
                let (a, b) = (bounds[i], bounds[i + 1]);
                let band = (sin_power_integral(p, b) - sin_power_integral(p, a)) / total;
                ranges.push((a, b));
                collect(child, d - 1, ranges, measure * band, out);
                ranges.pop();
            }
        }
    }
}

fn is_full(ranges: &[(f64, f64)]) -> bool {
    let last = ranges.len() - 1;
    ranges.iter().enumerate().all(|(i, &(a, b))| a == 0.0 && b == if i == last { TAU } else { PI })
}

/// Upper bound on the Euclidean diameter of the cell with these ranges.
///
/// On S^d a point is (sin θ · y, cos θ) with y ∈ S^{d−1}; two points with
/// colatitudes in [a, b] differ by at most 2 sin((b−a)/2) in the axial
/// direction after rotation plus max sin θ · diam(sub-cell). Polar caps get
/// the exact value 2 sin b (or 2 past the equator).
fn diameter(ranges: &[(f64, f64)]) -> f64 {
    let (a, b) = ranges[0];
    if ranges.len() == 1 {
        let w = b - a;
        return if w >= PI { 2.0 } else { 2.0 * (w / 2.0).sin() };
    }
    let rest = &ranges[1..];
    if is_full(rest) {
        if a == 0.0 {
            return if b >= FRAC_PI_2 { 2.0 } else { 2.0 * b.sin() };
        }
        if b == PI {
            return if a <= FRAC_PI_2 { 2.0 } else { 2.0 * a.sin() };
        }
    }
    let max_sin = if a <= FRAC_PI_2 && b >= FRAC_PI_2 { 1.0 } else { a.sin().max(b.sin()) };
    (2.0 * ((b - a) / 2.0).sin() + max_sin * diameter(rest)).min(2.0)
}

/// Draws θ ∈ [a, b] with density ∝ sin^p θ.
fn sample_colatitude<R: Rng + ?Sized>(p: usize, a: f64, b: f64, rng: &mut R) -> f64 {
    let (ja, jb) = (sin_power_integral(p, a), sin_power_integral(p, b));
    let target = ja + rng.random::<f64>() * (jb - ja);
    let (mut lo, mut hi) = (a, b);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if sin_power_integral(p, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Cartesian coordinates from colatitudes θ_d, …, θ_2 and azimuth φ.
fn to_cartesian(angles: &[f64]) -> Vec<f64> {
    let (&phi, thetas) = angles.split_last().expect("at least the azimuth");
    let mut x = vec![phi.cos(), phi.sin()];
    for &t in thetas.iter().rev() {
        let (s, c) = t.sin_cos();
        for v in &mut x {
            *v *= s;
        }
        x.push(c);
    }
    x
}

impl SpherePartition {
    pub fn h(&self) -> usize {
        self.h
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn max_diameter(&self) -> f64 {
        self.cells.iter().map(|c| c.diameter_bound).fold(0.0, f64::max)
    }

    /// Whether every cell meets the diameter target.
    pub fn meets_target(&self) -> bool {
        self.max_diameter() <= self.delta_target
    }

    /// Uniform random point in cell `i`.
    pub fn random_point<R: Rng + ?Sized>(&self, i: usize, rng: &mut R) -> Vec<f64> {
        let ranges = &self.cells[i].ranges;
        let d = ranges.len();
        let angles: Vec<f64> = ranges
            .iter()
            .enumerate()
            .map(|(j, &(a, b))| {
                if j + 1 == d {
                    rng.random_range(a..b)
                } else {
                    sample_colatitude(d - j - 1, a, b, rng)
                }
            })
            .collect();
        to_cartesian(&angles)
    }

    /// Deterministic representative: the pole for polar caps, otherwise the
    /// midpoint of every angular range.
    pub fn center_point(&self, i: usize) -> Vec<f64> {
        let ranges = &self.cells[i].ranges;
        let mut angles: Vec<f64> = ranges.iter().map(|&(a, b)| 0.5 * (a + b)).collect();
        for j in 0..ranges.len().saturating_sub(1) {
            if is_full(&ranges[j + 1..]) {
                let (a, b) = ranges[j];
                if a == 0.0 || b == PI {
                    angles[j] = if a == 0.0 { 0.0 } else { PI };
                }
                break;
            }
        }
        to_cartesian(&angles)
    }

    /// Index of the cell containing the unit vector `x`.
    pub fn locate(&self, x: &[f64]) -> Result<usize> {
        if x.len() != self.h {
            return Err(Error::InvalidInput(format!("point has dimension {}, expected {}", x.len(), self.h)));
        }
        let mut x = x.to_vec();
        let mut z = &self.root;
        let mut offset = 0;
        loop {
            match z {
                Zone::Whole => return Ok(offset),
                Zone::Arcs(n) => {
                    let phi = x[1].atan2(x[0]).rem_euclid(TAU);
                    return Ok(offset + ((phi / (TAU / *n as f64)) as usize).min(n - 1));
                }
                Zone::Bands { bounds, children, first } => {
                    let last = x.pop().unwrap();
                    let theta = last.clamp(-1.0, 1.0).acos();
                    let i = bounds.partition_point(|&b| b <= theta).clamp(1, children.len()) - 1;
                    let s = norm_or_zero(&x);
                    if s > 0.0 {
                        x.iter_mut().for_each(|v| *v /= s);
                    } else {
                        x.iter_mut().for_each(|v| *v = 0.0);
                        x[0] = 1.0;
                    }
                    offset += first[i];
                    z = &children[i];
                }
            }
        }
    }
}

fn norm_or_zero(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::super::geometry::{dist, random_unit};
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn circle_quarters() {
        let p = partition_sphere(2, 4, 2.0).unwrap();
        assert_eq!(p.len(), 4);
        for c in p.cells() {
            assert!((c.measure - 0.25).abs() < 1e-12);
            assert!((c.diameter_bound - 2f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn single_piece() {
        for h in [2, 3, 7] {
            let p = partition_sphere(h, 1, 2.0).unwrap();
            assert_eq!(p.len(), 1);
            assert!((p.cells()[0].measure - 1.0).abs() < 1e-12);
            assert_eq!(p.cells()[0].diameter_bound, 2.0);
        }
    }

    #[test]
    fn equal_measures() {
        for (h, n) in [(3, 2), (3, 17), (4, 100), (9, 1000), (5, 333)] {
            let p = partition_sphere(h, n, 2.0).unwrap();
            assert_eq!(p.len(), n);
            let total: f64 = p.cells().iter().map(|c| c.measure).sum();
            assert!((total - 1.0).abs() < 1e-9, "h={h} n={n} total={total}");
            for c in p.cells() {
                assert!((c.measure - 1.0 / n as f64).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn samples_stay_in_cell_and_within_diameter() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (h, n) in [(3, 40), (5, 200)] {
            let p = partition_sphere(h, n, 2.0).unwrap();
            for i in (0..n).step_by(7) {
                let pts: Vec<Vec<f64>> = (0..30).map(|_| p.random_point(i, &mut rng)).collect();
                for x in &pts {
                    assert!((norm_or_zero(x) - 1.0).abs() < 1e-12);
                    assert_eq!(p.locate(x).unwrap(), i);
                }
                for a in &pts {
                    for b in &pts {
                        assert!(dist(a, b) <= p.cells()[i].diameter_bound + 1e-12);
                    }
                }
                assert_eq!(p.locate(&p.center_point(i)).unwrap(), i);
            }
        }
    }

    #[test]
    fn locate_uniform_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = partition_sphere(4, 10, 2.0).unwrap();
        let mut counts = [0usize; 10];
        for _ in 0..20_000 {
            counts[p.locate(&random_unit(4, &mut rng)).unwrap()] += 1;
        }
        for c in counts {
            assert!((c as f64 - 2000.0).abs() < 200.0, "{counts:?}");
        }
    }

    #[test]
    fn errors() {
        assert!(partition_sphere(1, 4, 1.0).is_err());
        assert!(partition_sphere(3, 0, 1.0).is_err());
        assert!(partition_sphere(3, MAX_PIECES + 1, 1.0).is_err());
    }

    #[test]
    fn diameters_shrink() {
        let coarse = partition_sphere(3, 10, 2.0).unwrap().max_diameter();
        let fine = partition_sphere(3, 1000, 2.0).unwrap().max_diameter();
        assert!(fine < coarse && fine < 0.3);
    }
}
