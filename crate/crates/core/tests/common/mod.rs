#![allow(dead_code)]

use georefine::{ManifoldPoint, Polyline, RefinementPlan, SymbolFactorization};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Unit vector at angle at most `radius` from `center`.
pub fn sphere_near(rng: &mut ChaCha8Rng, center: &[f64], radius: f64) -> ManifoldPoint {
    let d = unit_vector(rng, center.len());
    let c = dot(&d, center);
    let mut u: Vec<f64> = d.iter().zip(center).map(|(x, y)| x - c * y).collect();
    let n = norm(&u);
    u.iter_mut().for_each(|x| *x /= n);
    let angle = rng.gen_range(0.0..radius);
    let v: Vec<f64> = center
        .iter()
        .zip(&u)
        .map(|(x, y)| angle.cos() * x + angle.sin() * y)
        .collect();
    ManifoldPoint::sphere_from_direction(&v).unwrap()
}

pub fn quat_mul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

pub fn quat_from_axis_angle(axis: &[f64], angle: f64) -> [f64; 4] {
    let (s, c) = (angle / 2.0).sin_cos();
    [c, s * axis[0], s * axis[1], s * axis[2]]
}

/// Rotation within rotation angle `radius` of `center`.
pub fn rotation_near(rng: &mut ChaCha8Rng, center: [f64; 4], radius: f64) -> ManifoldPoint {
    let axis = unit_vector(rng, 3);
    let q = quat_mul(
        center,
        quat_from_axis_angle(&axis, rng.gen_range(0.0..radius)),
    );
    ManifoldPoint::rotation(q).unwrap()
}

/// `G Gᵀ + cI` with entries of `G` of size about `scale`.
pub fn spd_random(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> ManifoldPoint {
    let mut g = vec![0.0; n * n];
    for x in g.iter_mut() {
        *x = rng.gen_range(-1.0..1.0) * scale;
    }
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = (0..n).map(|k| g[i * n + k] * g[j * n + k]).sum::<f64>();
        }
        a[i * n + i] += 0.2 + rng.gen_range(0.0..1.0);
    }
    ManifoldPoint::spd(n, a).unwrap()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Sphere,
    Rotations,
    Spd,
}

pub const SPACES: [Space; 3] = [Space::Sphere, Space::Rotations, Space::Spd];

impl Space {
    pub fn name(&self) -> &'static str {
        match self {
            Space::Sphere => "sphere",
            Space::Rotations => "so3",
            Space::Spd => "spd3",
        }
    }
}

/// Random periodic polyline of `n` points. `spread` bounds the angular size
/// of the cloud on the sphere and SO(3).
pub fn random_periodic(rng: &mut ChaCha8Rng, space: Space, n: usize, spread: f64) -> Polyline {
    let pts: Vec<ManifoldPoint> = match space {
        Space::Sphere => {
            let c = unit_vector(rng, 3);
            (0..n).map(|_| sphere_near(rng, &c, spread / 2.0)).collect()
        }
        Space::Rotations => {
            let axis = unit_vector(rng, 3);
            let c = quat_from_axis_angle(&axis, rng.gen_range(0.0..3.0));
            (0..n)
                .map(|_| rotation_near(rng, c, spread / 2.0))
                .collect()
        }
        Space::Spd => (0..n).map(|_| spd_random(rng, 3, 0.8)).collect(),
    };
    Polyline::periodic(pts).unwrap()
}

/// A real α whose averaging weight lies in the extrapolation window.
pub fn random_real_alpha(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let a: f64 = match rng.gen_range(0..3) {
            0 => rng.gen_range(0.2..5.0),
            1 => rng.gen_range(-0.5..-0.05),
            _ => rng.gen_range(-6.0..-2.0),
        };
        if (a + 1.0).abs() > 0.1 {
            return a;
        }
    }
}

pub fn random_complex_alpha(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(
        rng.gen_range(0.3..3.0),
        rng.gen_range(0.2..std::f64::consts::PI - 0.2),
    )
}

/// Random factorization accepted by `RefinementPlan::new`.
pub fn random_plan_factorization(
    rng: &mut ChaCha8Rng,
    max_m1: usize,
    max_m2: usize,
) -> SymbolFactorization {
    loop {
        let m1 = rng.gen_range(1..=max_m1);
        let m2 = rng.gen_range(0..=max_m2);
        let mut reals: Vec<f64> = (0..m1).map(|_| random_real_alpha(rng)).collect();
        reals[0] = rng.gen_range(0.2..5.0);
        let quads: Vec<Complex64> = (0..m2).map(|_| random_complex_alpha(rng)).collect();
        let s = rng.gen_range(-3..=3);
        let f = SymbolFactorization::new(s, reals, quads).unwrap();
        if RefinementPlan::new(&f).is_ok() {
            return f;
        }
    }
}

pub fn sorted_reals(f: &SymbolFactorization) -> Vec<f64> {
    let mut v = f.real_alphas().to_vec();
    v.sort_by(f64::total_cmp);
    v
}

pub fn sorted_quads(f: &SymbolFactorization) -> Vec<Complex64> {
    let mut v = f.quadratic_alphas().to_vec();
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    v
}

pub fn factors_differ(a: &SymbolFactorization, b: &SymbolFactorization) -> f64 {
    let (ra, rb) = (sorted_reals(a), sorted_reals(b));
    let (qa, qb) = (sorted_quads(a), sorted_quads(b));
    if ra.len() != rb.len() || qa.len() != qb.len() || a.shift() != b.shift() {
        return f64::INFINITY;
    }
    let real = ra
        .iter()
        .zip(&rb)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let quad = qa
        .iter()
        .zip(&qb)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    real.max(quad)
}
