//! Spherical caps, distances, and the forbidden-quadruple predicate.
//!
//! Measures are normalised so the whole sphere has measure 1. On S^{h−1}
//! (ambient dimension h) the colatitude density is proportional to
//! sin^{h−2} θ.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// ∫₀^π sin^p t dt.
pub fn sin_power_total(p: usize) -> f64 {
    let (mut w, mut q) = if p % 2 == 0 { (std::f64::consts::PI, 0) } else { (2.0, 1) };
    while q < p {
        q += 2;
        w *= (q - 1) as f64 / q as f64;
    }
    w
}

/// ∫₀^θ sin^p t dt by the reduction formula
/// J_p = (−sin^{p−1}θ cos θ + (p−1) J_{p−2}) / p, reflected through π/2
/// for θ > π/2.
pub fn sin_power_integral(p: usize, theta: f64) -> f64 {
    let half = std::f64::consts::FRAC_PI_2;
    if theta > half {
        return sin_power_total(p) - sin_power_integral(p, std::f64::consts::PI - theta);
    }
    let (s, c) = theta.sin_cos();
    let (mut j, mut q) = if p % 2 == 0 { (theta, 0) } else { (1.0 - c, 1) };
    while q < p {
        q += 2;
        j = (-s.powi(q as i32 - 1) * c + (q - 1) as f64 * j) / q as f64;
    }
    j
}

/// Normalised measure of a cap of angular radius θ on S^{h−1}, by adaptive
/// Simpson integration of sin^{h−2}.
pub fn cap_measure(h: usize, theta: f64) -> f64 {
    assert!(h >= 2, "ambient dimension must be at least 2");
    let theta = theta.clamp(0.0, std::f64::consts::PI);
    let p = (h - 2) as i32;
    let f = |t: f64| t.sin().powi(p);
    adaptive_simpson(&f, 0.0, theta, 1e-13) / sin_power_total(h - 2)
}

/// Same quantity from the closed-form reduction formula.
pub fn cap_measure_closed_form(h: usize, theta: f64) -> f64 {
    assert!(h >= 2, "ambient dimension must be at least 2");
    let theta = theta.clamp(0.0, std::f64::consts::PI);
    sin_power_integral(h - 2, theta) / sin_power_total(h - 2)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    if b <= a {
        return 0.0;
    }
    // Start from a fixed subdivision so narrow peaks are never skipped.
    const PIECES: usize = 16;
    let w = (b - a) / PIECES as f64;
    (0..PIECES)
        .map(|i| {
            let (x0, x1) = (a + i as f64 * w, a + (i + 1) as f64 * w);
            let m = 0.5 * (x0 + x1);
            let (f0, fm, f1) = (f(x0), f(m), f(x1));
            rec(f, x0, x1, f0, fm, f1, simpson(f0, fm, f1, x0, x1), tol / PIECES as f64, 40)
        })
        .sum()
}

/// Angular radius of the cap of points within Euclidean distance `d` of
/// its centre.
pub fn chord_to_angle(d: f64) -> f64 {
    2.0 * (d / 2.0).clamp(-1.0, 1.0).asin()
}

/// Angular radius of a cap of height `height` (distance from the bounding
/// hyperplane to the centre).
pub fn height_to_angle(height: f64) -> f64 {
    (1.0 - height).clamp(-1.0, 1.0).acos()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// sup{|a − b| : a ∈ A, b ∈ B} over finite point sets.
pub fn max_pairwise_distance(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidInput("point sets must be nonempty".into()));
    }
    let mut best: f64 = 0.0;
    for p in a {
        for q in b {
            best = best.max(dist(p, q));
        }
    }
    Ok(best)
}

pub const UNIT_TOLERANCE: f64 = 1e-9;

/// True iff |p₁−p₂| ≥ 2−μ, |q₁−q₂| ≥ 2−μ and every |p_i − q_j| ≤ √2 − μ.
pub fn check_be_quadruple(p1: &[f64], p2: &[f64], q1: &[f64], q2: &[f64], mu: f64) -> Result<bool> {
    let pts = [p1, p2, q1, q2];
    if pts.iter().any(|p| p.len() != p1.len()) {
        return Err(Error::InvalidInput("points differ in dimension".into()));
    }
    if pts.iter().any(|p| (norm(p) - 1.0).abs() > UNIT_TOLERANCE) {
        return Err(Error::InvalidInput("points must be unit vectors".into()));
    }
    if mu <= 0.0 {
        return Err(Error::ParameterOutOfRange { name: "mu", detail: format!("{mu} must be positive") });
    }
    Ok(quadruple_margin(p1, p2, q1, q2, mu) <= 0.0)
}

/// Largest amount by which one of the quadruple conditions fails; the
/// configuration is realised iff this is ≤ 0.
pub fn quadruple_margin(p1: &[f64], p2: &[f64], q1: &[f64], q2: &[f64], mu: f64) -> f64 {
    let far = 2.0 - mu;
    let near = std::f64::consts::SQRT_2 - mu;
    let mut m = (far - dist(p1, p2)).max(far - dist(q1, q2));
    for p in [p1, p2] {
        for q in [q1, q2] {
            m = m.max(dist(p, q) - near);
        }
    }
    m
}

pub fn random_unit<R: Rng + ?Sized>(h: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..h).map(|_| rng.sample(StandardNormal)).collect();
        let n = norm(&v);
        if n > 1e-12 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

fn perturb<R: Rng + ?Sized>(p: &[f64], scale: f64, rng: &mut R) -> Vec<f64> {
    let v: Vec<f64> = p.iter().map(|x| x + scale * rng.sample::<f64, _>(StandardNormal)).collect();
    let n = norm(&v);
    v.into_iter().map(|x| x / n).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadrupleSearchReport {
    pub h: usize,
    pub mu: f64,
    pub evaluated: u64,
    pub violations: u64,
    /// Smallest margin seen; positive means no configuration came close.
    pub min_margin: f64,
    pub seed: u64,
}

/// Randomised search for a forbidden quadruple: near-antipodal pairs placed
/// roughly orthogonally, refined by hill climbing on the margin.
pub fn search_be_quadruples(h: usize, mu: f64, evaluations: u64, seed: u64) -> QuadrupleSearchReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evaluated = 0u64;
    let mut violations = 0u64;
    let mut min_margin = f64::INFINITY;
    const CLIMB: u64 = 200;
    while evaluated < evaluations {
        let p1 = random_unit(h, &mut rng);
        let neg: Vec<f64> = p1.iter().map(|x| -x).collect();
        let p2 = perturb(&neg, rng.random_range(0.0..0.3), &mut rng);
        let q1 = random_unit(h, &mut rng);
        let qn: Vec<f64> = q1.iter().map(|x| -x).collect();
        let q2 = perturb(&qn, rng.random_range(0.0..0.3), &mut rng);
        let mut cur = [p1, p2, q1, q2];
        let mut cur_m = quadruple_margin(&cur[0], &cur[1], &cur[2], &cur[3], mu);
        evaluated += 1;
        let mut scale = 0.2;
        for _ in 0..CLIMB.min(evaluations - evaluated) {
            let which = rng.random_range(0..4);
            let mut cand = cur.clone();
            cand[which] = perturb(&cur[which], scale, &mut rng);
            let m = quadruple_margin(&cand[0], &cand[1], &cand[2], &cand[3], mu);
            evaluated += 1;
            if m <= 0.0 {
                violations += 1;
            }
            if m < cur_m {
                cur = cand;
                cur_m = m;
            } else {
                scale = (scale * 0.97).max(1e-3);
            }
        }
        if cur_m <= 0.0 {
            violations += 1;
        }
        min_margin = min_margin.min(cur_m);
    }
    QuadrupleSearchReport { h, mu, evaluated, violations, min_margin, seed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn totals() {
        assert!((sin_power_total(0) - PI).abs() < 1e-15);
        assert!((sin_power_total(1) - 2.0).abs() < 1e-15);
        assert!((sin_power_total(2) - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn cap_basics() {
        for h in [2, 3, 9, 50] {
            assert!((cap_measure(h, PI) - 1.0).abs() < 1e-10);
            assert!((cap_measure(h, FRAC_PI_2) - 0.5).abs() < 1e-10);
            assert!((cap_measure_closed_form(h, 1.0) - cap_measure(h, 1.0)).abs() < 1e-10);
        }
        // S²: cap area fraction (1 − cos θ)/2.
        assert!((cap_measure(3, 1.0) - (1.0 - 1f64.cos()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn cap_upper_bound_example() {
        let theta = height_to_angle(0.7);
        let m = cap_measure(100, theta);
        assert!(m <= (-100.0 * 0.09 / 2.0f64).exp());
    }

    #[test]
    fn quadruple_examples() {
        let e = |i: usize| {
            let mut v = vec![0.0; 3];
            v[i] = 1.0;
            v
        };
        let neg = |v: Vec<f64>| v.into_iter().map(|x| -x).collect::<Vec<_>>();
        assert!(!check_be_quadruple(&e(0), &neg(e(0)), &e(1), &neg(e(1)), 0.2).unwrap());
        assert!(!check_be_quadruple(&e(0), &e(0), &e(0), &e(0), 0.2).unwrap());
        assert!(check_be_quadruple(&[2.0, 0.0, 0.0], &e(0), &e(0), &e(0), 0.2).is_err());
    }

    #[test]
    fn distances() {
        let a = vec![vec![1.0, 0.0]];
        let b = vec![vec![-1.0, 0.0]];
        assert_eq!(max_pairwise_distance(&a, &b).unwrap(), 2.0);
        assert_eq!(max_pairwise_distance(&a, &a).unwrap(), 0.0);
        assert!(max_pairwise_distance(&a, &[]).is_err());
    }

    #[test]
    fn small_quadruple_search() {
        let r = search_be_quadruples(4, 0.24, 5_000, 1);
        assert_eq!(r.violations, 0);
        assert!(r.min_margin > 0.0);
    }
}
