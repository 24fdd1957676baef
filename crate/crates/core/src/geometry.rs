//! Geodesic metric spaces with closed-form distance and weighted geodesic
//! average `M_t(a, b)`, including extrapolating weights.
//!
//! Supported spaces:
//!
//! | Kind | Representation | Distance |
//! |------|----------------|----------|
//! | `Euclidean { dim }` | vector | `‖a − b‖₂` |
//! | `Sphere { dim }` | unit vector in ℝ^dim | great-circle angle |
//! | `Rotations3D` | unit quaternion `[w, x, y, z]` | rotation angle |
//! | `Spd { n }` | symmetric positive definite n×n, row-major | affine-invariant |
//!
//! `M_t` satisfies `d(M_t(a,b), b) = |1 − t| d(a,b)` for every `t` in the
//! extrapolation window `[−T_MAX, 1 + T_MAX]` as long as the extended
//! geodesic stays short of the cut locus.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, SymEigen};

/// Unit-norm tolerance for sphere points and quaternions.
pub const TAU_UNIT: f64 = 1e-12;
/// Symmetry tolerance for SPD matrices (relative to the largest entry, at least 1).
pub const TAU_SYM: f64 = 1e-12;
/// Smallest admissible SPD eigenvalue.
pub const TAU_PD: f64 = 1e-12;
/// Distance from the antipode / a half-turn below which a pair is rejected.
pub const TAU_ANTI: f64 = 1e-6;
/// Half-width of the extrapolation margin around `[0, 1]`.
pub const T_MAX: f64 = 1.0;

const SMALL_ANGLE: f64 = 1e-8;
const RENORMALIZE_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ManifoldKind {
    Euclidean {
        dim: usize,
    },
    /// Unit sphere in ℝ^dim (so `dim = 3` is S²).
    Sphere {
        dim: usize,
    },
    Rotations3D,
    Spd {
        n: usize,
    },
}

impl ManifoldKind {
    /// Number of stored coordinates for a point of this kind.
    pub fn coordinate_len(&self) -> usize {
        match *self {
            ManifoldKind::Euclidean { dim } | ManifoldKind::Sphere { dim } => dim,
            ManifoldKind::Rotations3D => 4,
            ManifoldKind::Spd { n } => n * n,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ManifoldKind::Euclidean { .. } => "euclidean",
            ManifoldKind::Sphere { .. } => "sphere",
            ManifoldKind::Rotations3D => "so3",
            ManifoldKind::Spd { .. } => "spd",
        }
    }

    fn check(&self) -> Result<()> {
        let ok = match *self {
            ManifoldKind::Euclidean { dim } => dim >= 1,
            ManifoldKind::Sphere { dim } => dim >= 2,
            ManifoldKind::Rotations3D => true,
            ManifoldKind::Spd { n } => n >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidPoint(format!(
                "invalid manifold dimension for {self}"
            )))
        }
    }
}

impl fmt::Display for ManifoldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldKind::Euclidean { dim } => write!(f, "euclidean({dim})"),
            ManifoldKind::Sphere { dim } => write!(f, "sphere({dim})"),
            ManifoldKind::Rotations3D => write!(f, "so3"),
            ManifoldKind::Spd { n } => write!(f, "spd({n})"),
        }
    }
}

/// A point on one of the supported spaces. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldPoint {
    kind: ManifoldKind,
    coords: Vec<f64>,
}

impl ManifoldPoint {
    /// Validates `coords` against `kind`, renormalizing inputs that are
    /// within ten times the tolerance of the constraint.
    pub fn new(kind: ManifoldKind, coords: Vec<f64>) -> Result<Self> {
        kind.check()?;
        if coords.len() != kind.coordinate_len() {
            return Err(Error::InvalidPoint(format!(
                "{kind} expects {} coordinates, got {}",
                kind.coordinate_len(),
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidPoint("non-finite coordinate".into()));
        }
        match kind {
            ManifoldKind::Euclidean { .. } => Ok(Self { kind, coords }),
            ManifoldKind::Sphere { .. } => {
                let coords = unit_within_tolerance(coords, "sphere point")?;
                Ok(Self { kind, coords })
            }
            ManifoldKind::Rotations3D => {
                let mut coords = unit_within_tolerance(coords, "quaternion")?;
                canonicalize_quaternion(&mut coords);
                Ok(Self { kind, coords })
            }
            ManifoldKind::Spd { n } => {
                let mut coords = coords;
                let scale = coords.iter().fold(1.0_f64, |m, c| m.max(c.abs()));
                let mut asym = 0.0_f64;
                for i in 0..n {
                    for j in i + 1..n {
                        asym = asym.max((coords[i * n + j] - coords[j * n + i]).abs());
                    }
                }
                if asym > RENORMALIZE_FACTOR * TAU_SYM * scale {
                    return Err(Error::InvalidPoint(format!(
                        "SPD matrix is not symmetric (max asymmetry {asym:e})"
                    )));
                }
                linalg::symmetrize(&mut coords, n);
                let eig = linalg::sym_eigen(&coords, n)?;
                let min = eig.values.iter().copied().fold(f64::INFINITY, f64::min);
                if min <= TAU_PD {
                    return Err(Error::InvalidPoint(format!(
                        "SPD matrix is not positive definite (min eigenvalue {min:e})"
                    )));
                }
                Ok(Self { kind, coords })
            }
        }
    }

    pub fn euclidean(coords: Vec<f64>) -> Result<Self> {
        Self::new(ManifoldKind::Euclidean { dim: coords.len() }, coords)
    }

    pub fn sphere(coords: Vec<f64>) -> Result<Self> {
        Self::new(ManifoldKind::Sphere { dim: coords.len() }, coords)
    }

    /// Sphere point in the direction of any nonzero vector.
    pub fn sphere_from_direction(v: &[f64]) -> Result<Self> {
        let n = linalg::norm(v);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidPoint("zero or non-finite direction".into()));
        }
        Self::sphere(v.iter().map(|x| x / n).collect())
    }

    /// Rotation from a quaternion `[w, x, y, z]`.
    pub fn rotation(q: [f64; 4]) -> Result<Self> {
        Self::new(ManifoldKind::Rotations3D, q.to_vec())
    }

    /// Rotation by `angle` radians about `axis` (need not be normalized).
    pub fn rotation_from_axis_angle(axis: [f64; 3], angle: f64) -> Result<Self> {
        let n = linalg::norm(&axis);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidPoint("zero rotation axis".into()));
        }
        let (s, c) = (0.5 * angle).sin_cos();
        Self::rotation([c, s * axis[0] / n, s * axis[1] / n, s * axis[2] / n])
    }

    /// SPD matrix from its row-major entries.
    pub fn spd(n: usize, data: Vec<f64>) -> Result<Self> {
        Self::new(ManifoldKind::Spd { n }, data)
    }

    /// Builds a point from the result of a geodesic computation, projecting
    /// away round-off but skipping validation.
    fn from_computed(kind: ManifoldKind, mut coords: Vec<f64>) -> Self {
        match kind {
            ManifoldKind::Euclidean { .. } => {}
            ManifoldKind::Sphere { .. } => normalize(&mut coords),
            ManifoldKind::Rotations3D => {
                normalize(&mut coords);
                canonicalize_quaternion(&mut coords);
            }
            ManifoldKind::Spd { n } => linalg::symmetrize(&mut coords, n),
        }
        Self { kind, coords }
    }

    pub fn kind(&self) -> ManifoldKind {
        self.kind
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn distance(&self, other: &Self) -> Result<f64> {
        distance(self, other)
    }
}

fn unit_within_tolerance(mut coords: Vec<f64>, what: &str) -> Result<Vec<f64>> {
    let n = linalg::norm(&coords);
    if (n - 1.0).abs() > RENORMALIZE_FACTOR * TAU_UNIT {
        return Err(Error::InvalidPoint(format!(
            "{what} must have unit norm (norm = {n})"
        )));
    }
    normalize(&mut coords);
    Ok(coords)
}

fn normalize(v: &mut [f64]) {
    let n = linalg::norm(v);
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
}

/// `q` and `−q` are the same rotation; keep the first nonzero component positive.
fn canonicalize_quaternion(q: &mut [f64]) {
    if let Some(first) = q.iter().copied().find(|c| *c != 0.0) {
        if first < 0.0 {
            q.iter_mut().for_each(|c| *c = -*c);
        }
    }
}

/// Angle between unit vectors, accurate for both tiny and near-π angles.
fn unit_angle(a: &[f64], b: &[f64]) -> f64 {
    let mut diff = 0.0;
    let mut sum = 0.0;
    for (x, y) in a.iter().zip(b) {
        diff += (x - y) * (x - y);
        sum += (x + y) * (x + y);
    }
    2.0 * diff.sqrt().atan2(sum.sqrt())
}

/// `b` sign-flipped into the hemisphere of `a`.
fn aligned_quaternion(a: &[f64], b: &[f64]) -> Vec<f64> {
    if linalg::dot(a, b) < 0.0 {
        b.iter().map(|x| -x).collect()
    } else {
        b.to_vec()
    }
}

fn same_kind(a: &ManifoldPoint, b: &ManifoldPoint) -> Result<()> {
    if a.kind != b.kind {
        Err(Error::KindMismatch(a.kind, b.kind))
    } else {
        Ok(())
    }
}

/// Whitening data for an SPD base point: `A^{1/2}` and `A^{-1/2}`.
fn spd_roots(a: &[f64], n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let eig = linalg::sym_eigen(a, n)?;
    if eig.values.iter().any(|&l| l <= 0.0) {
        return Err(Error::Numeric(
            "SPD point lost positive definiteness".into(),
        ));
    }
    Ok((eig.map(f64::sqrt), eig.map(|l| 1.0 / l.sqrt())))
}

fn spd_relative_eigen(a: &[f64], b: &[f64], n: usize) -> Result<(Vec<f64>, SymEigen)> {
    let (sqrt_a, inv_sqrt_a) = spd_roots(a, n)?;
    let c = linalg::congruence(&inv_sqrt_a, b, n);
    let eig = linalg::sym_eigen(&c, n)?;
    if eig.values.iter().any(|&l| l <= 0.0) {
        return Err(Error::Numeric(
            "relative SPD eigenvalue is not positive".into(),
        ));
    }
    Ok((sqrt_a, eig))
}

/// Geodesic distance between two points of the same kind.
pub fn distance(a: &ManifoldPoint, b: &ManifoldPoint) -> Result<f64> {
    same_kind(a, b)?;
    match a.kind {
        ManifoldKind::Euclidean { .. } => Ok(a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()),
        ManifoldKind::Sphere { .. } => Ok(unit_angle(&a.coords, &b.coords)),
        ManifoldKind::Rotations3D => {
            let b = aligned_quaternion(&a.coords, &b.coords);
            Ok(2.0 * unit_angle(&a.coords, &b))
        }
        ManifoldKind::Spd { n } => {
            if a.coords == b.coords {
                return Ok(0.0);
            }
            let (_, eig) = spd_relative_eigen(&a.coords, &b.coords, n)?;
            Ok(eig
                .values
                .iter()
                .map(|l| l.ln().powi(2))
                .sum::<f64>()
                .sqrt())
        }
    }
}

/// True when a unique geodesic joins `a` and `b`.
///
/// Panics never; pairs of different kinds are simply not admissible.
pub fn admissible(a: &ManifoldPoint, b: &ManifoldPoint) -> bool {
    if a.kind != b.kind {
        return false;
    }
    match a.kind {
        ManifoldKind::Euclidean { .. } | ManifoldKind::Spd { .. } => true,
        ManifoldKind::Sphere { .. } => unit_angle(&a.coords, &b.coords) < PI - TAU_ANTI,
        ManifoldKind::Rotations3D => {
            let b = aligned_quaternion(&a.coords, &b.coords);
            2.0 * unit_angle(&a.coords, &b) < PI - TAU_ANTI
        }
    }
}

/// Point dividing the geodesic from `a` to `b` at fraction `t`
/// (`M_0 = a`, `M_1 = b`); `t` outside `[0, 1]` extrapolates.
pub fn geodesic_point(a: &ManifoldPoint, b: &ManifoldPoint, t: f64) -> Result<ManifoldPoint> {
    same_kind(a, b)?;
    if !(t.is_finite() && (-T_MAX..=1.0 + T_MAX).contains(&t)) {
        return Err(Error::Domain {
            t,
            reason: format!(
                "weight outside the extrapolation window [{}, {}]",
                -T_MAX,
                1.0 + T_MAX
            ),
        });
    }
    if !admissible(a, b) {
        return Err(Error::Domain {
            t,
            reason: "pair is not admissible (antipodal or half-turn apart)".into(),
        });
    }
    if t == 0.0 || a.coords == b.coords {
        return Ok(a.clone());
    }
    if t == 1.0 {
        return Ok(b.clone());
    }
    let kind = a.kind;
    match kind {
        ManifoldKind::Euclidean { .. } => Ok(ManifoldPoint::from_computed(
            kind,
            a.coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| (1.0 - t) * x + t * y)
                .collect(),
        )),
        ManifoldKind::Sphere { .. } => {
            let theta = unit_angle(&a.coords, &b.coords);
            check_cut_locus(theta, t)?;
            Ok(ManifoldPoint::from_computed(
                kind,
                slerp(&a.coords, &b.coords, theta, t),
            ))
        }
        ManifoldKind::Rotations3D => {
            let b = aligned_quaternion(&a.coords, &b.coords);
            let half = unit_angle(&a.coords, &b);
            check_cut_locus(2.0 * half, t)?;
            Ok(ManifoldPoint::from_computed(
                kind,
                slerp(&a.coords, &b, half, t),
            ))
        }
        ManifoldKind::Spd { n } => {
            let (sqrt_a, eig) = spd_relative_eigen(&a.coords, &b.coords, n)?;
            let power = eig.map(|l| l.powf(t));
            Ok(ManifoldPoint::from_computed(
                kind,
                linalg::congruence(&sqrt_a, &power, n),
            ))
        }
    }
}

/// The extended arc from either endpoint must stay shorter than a half-turn.
fn check_cut_locus(angle: f64, t: f64) -> Result<()> {
    let reach = t.abs().max((1.0 - t).abs()) * angle;
    if reach >= PI - TAU_ANTI {
        Err(Error::Domain {
            t,
            reason: format!("extrapolated geodesic of length {reach:.6} passes the antipode"),
        })
    } else {
        Ok(())
    }
}

/// Great-circle point at angle `t·theta` from unit vector `a` towards `b`.
fn slerp(a: &[f64], b: &[f64], theta: f64, t: f64) -> Vec<f64> {
    if theta < SMALL_ANGLE {
        let mut v: Vec<f64> = a
            .iter()
            .zip(b)
            .map(|(x, y)| (1.0 - t) * x + t * y)
            .collect();
        normalize(&mut v);
        return v;
    }
    let c = linalg::dot(a, b);
    let mut u: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - c * x).collect();
    normalize(&mut u);
    let (s, co) = (t * theta).sin_cos();
    a.iter().zip(&u).map(|(x, y)| co * x + s * y).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    Open,
    Periodic,
}

/// Ordered sequence of at least two points of one kind with admissible
/// adjacent pairs (including the wrap-around pair when periodic).
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    points: Vec<ManifoldPoint>,
    topology: Topology,
}

impl Polyline {
    pub fn new(points: Vec<ManifoldPoint>, topology: Topology) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidPolyline(format!(
                "need at least 2 points, got {}",
                points.len()
            )));
        }
        let kind = points[0].kind;
        if let Some(p) = points.iter().find(|p| p.kind != kind) {
            return Err(Error::KindMismatch(kind, p.kind));
        }
        let line = Self { points, topology };
        for (i, (a, b)) in line.pairs().enumerate() {
            if !admissible(a, b) {
                return Err(Error::InvalidPolyline(format!(
                    "points {i} and {} are not admissible",
                    (i + 1) % line.len()
                )));
            }
        }
        Ok(line)
    }

    pub fn open(points: Vec<ManifoldPoint>) -> Result<Self> {
        Self::new(points, Topology::Open)
    }

    pub fn periodic(points: Vec<ManifoldPoint>) -> Result<Self> {
        Self::new(points, Topology::Periodic)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ManifoldPoint] {
        &self.points
    }

    pub fn into_points(self) -> Vec<ManifoldPoint> {
        self.points
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn kind(&self) -> ManifoldKind {
        self.points[0].kind
    }

    /// Adjacent pairs; the wrap-around pair is last for periodic lines.
    pub fn pairs(&self) -> impl Iterator<Item = (&ManifoldPoint, &ManifoldPoint)> + '_ {
        let n = self.points.len();
        let count = match self.topology {
            Topology::Open => n - 1,
            Topology::Periodic => n,
        };
        (0..count).map(move |i| (&self.points[i], &self.points[(i + 1) % n]))
    }

    /// Largest distance between adjacent points.
    pub fn mesh_size(&self) -> Result<f64> {
        let mut delta = 0.0_f64;
        for (a, b) in self.pairs() {
            delta = delta.max(distance(a, b)?);
        }
        Ok(delta)
    }

    /// Inserts `samples_per_segment` equally spaced geodesic points inside
    /// every segment, keeping the original points.
    pub fn sample_interpolant(&self, samples_per_segment: usize) -> Result<Polyline> {
        if samples_per_segment == 0 {
            return Err(Error::InvalidParams(
                "samples_per_segment must be positive".into(),
            ));
        }
        let step = 1.0 / (samples_per_segment + 1) as f64;
        let mut out = Vec::with_capacity(self.len() * (samples_per_segment + 1));
        for (a, b) in self.pairs() {
            out.push(a.clone());
            for k in 1..=samples_per_segment {
                out.push(geodesic_point(a, b, k as f64 * step)?);
            }
        }
        if self.topology == Topology::Open {
            out.push(self.points[self.len() - 1].clone());
        }
        Polyline::new(out, self.topology)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn s2(x: f64, y: f64, z: f64) -> ManifoldPoint {
        ManifoldPoint::sphere(vec![x, y, z]).unwrap()
    }

    fn diag(d: &[f64]) -> ManifoldPoint {
        let n = d.len();
        let mut m = vec![0.0; n * n];
        for (i, v) in d.iter().enumerate() {
            m[i * n + i] = *v;
        }
        ManifoldPoint::spd(n, m).unwrap()
    }

    #[test]
    fn euclidean_distance_is_pythagoras() {
        let a = ManifoldPoint::euclidean(vec![0.0, 0.0]).unwrap();
        let b = ManifoldPoint::euclidean(vec![3.0, 4.0]).unwrap();
        assert_eq!(distance(&a, &b).unwrap(), 5.0);
    }

    #[test]
    fn orthogonal_sphere_points_are_quarter_turn_apart() {
        let d = distance(&s2(1.0, 0.0, 0.0), &s2(0.0, 1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(d, PI / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn spd_distance_of_diagonal_pair() {
        let e2 = 1f64.exp().powi(2);
        let d = distance(&diag(&[1.0, 1.0]), &diag(&[e2, 1.0])).unwrap();
        assert_abs_diff_eq!(d, 2.0, epsilon = 1e-13);
    }

    #[test]
    fn rotation_distance_is_rotation_angle() {
        let a = ManifoldPoint::rotation_from_axis_angle([0.0, 0.0, 1.0], 0.3).unwrap();
        let b = ManifoldPoint::rotation_from_axis_angle([0.0, 0.0, 1.0], 1.2).unwrap();
        assert_abs_diff_eq!(distance(&a, &b).unwrap(), 0.9, epsilon = 1e-14);
        // q and -q are one rotation
        let mut neg = b.coords().to_vec();
        neg.iter_mut().for_each(|c| *c = -*c);
        let nb = ManifoldPoint::rotation([neg[0], neg[1], neg[2], neg[3]]).unwrap();
        assert_eq!(nb, b);
    }

    #[test]
    fn euclidean_average_is_affine() {
        let a = ManifoldPoint::euclidean(vec![0.0, 0.0]).unwrap();
        let b = ManifoldPoint::euclidean(vec![2.0, 0.0]).unwrap();
        let m = geodesic_point(&a, &b, 0.75).unwrap();
        assert_eq!(m.coords(), &[1.5, 0.0]);
    }

    #[test]
    fn sphere_midpoint_and_extrapolation() {
        let a = s2(1.0, 0.0, 0.0);
        let b = s2(0.0, 1.0, 0.0);
        let m = geodesic_point(&a, &b, 0.5).unwrap();
        let h = 0.5f64.sqrt();
        assert_abs_diff_eq!(m.coords()[0], h, epsilon = 1e-15);
        assert_abs_diff_eq!(m.coords()[1], h, epsilon = 1e-15);
        // arc-length oracle: angle -π/4 along the great circle
        let e = geodesic_point(&a, &b, -0.5).unwrap();
        let expected = [(-PI / 4.0).cos(), (-PI / 4.0).sin(), 0.0];
        for (x, y) in e.coords().iter().zip(expected) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-15);
        }
    }

    #[test]
    fn spd_midpoint_with_identity() {
        let m = geodesic_point(&diag(&[1.0, 1.0]), &diag(&[4.0, 1.0]), 0.5).unwrap();
        let c = m.coords();
        assert_abs_diff_eq!(c[0], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c[1], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c[3], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn antipodal_sphere_pair_not_admissible() {
        assert!(!admissible(&s2(1.0, 0.0, 0.0), &s2(-1.0, 0.0, 0.0)));
        assert!(admissible(&diag(&[1.0, 2.0]), &diag(&[50.0, 0.01])));
        let a = ManifoldPoint::euclidean(vec![0.0]).unwrap();
        let b = ManifoldPoint::euclidean(vec![1e9]).unwrap();
        assert!(admissible(&a, &b));
    }

    #[test]
    fn half_turn_rotations_not_admissible() {
        let a = ManifoldPoint::rotation([1.0, 0.0, 0.0, 0.0]).unwrap();
        let b = ManifoldPoint::rotation_from_axis_angle([1.0, 0.0, 0.0], PI).unwrap();
        assert!(!admissible(&a, &b));
    }

    #[test]
    fn extrapolation_past_antipode_is_domain_error() {
        let a = s2(1.0, 0.0, 0.0);
        let b = s2(0.0, 1.0, 0.0);
        // reach = 2 * π/2 = π
        match geodesic_point(&a, &b, 2.0) {
            Err(Error::Domain { t, .. }) => assert_eq!(t, 2.0),
            other => panic!("expected domain error, got {other:?}"),
        }
        assert!(matches!(
            geodesic_point(&a, &b, 2.5),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn kind_mismatch_rejected() {
        let a = ManifoldPoint::euclidean(vec![0.0, 0.0, 1.0]).unwrap();
        let b = s2(0.0, 0.0, 1.0);
        assert!(matches!(distance(&a, &b), Err(Error::KindMismatch(..))));
    }

    #[test]
    fn constructor_tolerances() {
        assert!(ManifoldPoint::sphere(vec![1.0 + 5e-12, 0.0, 0.0]).is_ok());
        assert!(ManifoldPoint::sphere(vec![1.0 + 1e-9, 0.0, 0.0]).is_err());
        assert!(ManifoldPoint::spd(2, vec![1.0, 0.5, 0.5 + 1e-13, 1.0]).is_ok());
        assert!(ManifoldPoint::spd(2, vec![1.0, 0.5, 0.6, 1.0]).is_err());
        assert!(ManifoldPoint::spd(2, vec![1.0, 2.0, 2.0, 1.0]).is_err());
        assert!(ManifoldPoint::spd(2, vec![1.0, 0.0, 0.0]).is_err());
        assert!(ManifoldPoint::euclidean(vec![f64::NAN]).is_err());
    }

    #[test]
    fn mesh_size_open_and_periodic() {
        let e = |x: f64| ManifoldPoint::euclidean(vec![x, 0.0]).unwrap();
        let open = Polyline::open(vec![e(0.0), e(1.0), e(3.0)]).unwrap();
        assert_eq!(open.mesh_size().unwrap(), 2.0);
        let r = |x: f64| ManifoldPoint::euclidean(vec![x]).unwrap();
        let periodic = Polyline::periodic(vec![r(0.0), r(1.0), r(3.0)]).unwrap();
        assert_eq!(periodic.mesh_size().unwrap(), 3.0);
        let sphere = Polyline::open(vec![s2(1.0, 0.0, 0.0), s2(0.0, 1.0, 0.0)]).unwrap();
        assert_abs_diff_eq!(sphere.mesh_size().unwrap(), PI / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn polyline_invariants() {
        assert!(Polyline::open(vec![s2(1.0, 0.0, 0.0)]).is_err());
        assert!(Polyline::open(vec![s2(1.0, 0.0, 0.0), s2(-1.0, 0.0, 0.0)]).is_err());
        let e = ManifoldPoint::euclidean(vec![1.0, 0.0, 0.0]).unwrap();
        assert!(Polyline::open(vec![s2(1.0, 0.0, 0.0), e]).is_err());
    }

    #[test]
    fn interpolant_inserts_equally_spaced_points() {
        let a = ManifoldPoint::euclidean(vec![0.0, 0.0]).unwrap();
        let b = ManifoldPoint::euclidean(vec![3.0, 3.0]).unwrap();
        let line = Polyline::open(vec![a.clone(), b.clone()]).unwrap();
        let dense = line.sample_interpolant(2).unwrap();
        assert_eq!(dense.len(), 4);
        assert_eq!(dense.points()[0], a);
        assert_eq!(dense.points()[3], b);
        assert_abs_diff_eq!(dense.points()[1].coords()[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(dense.points()[2].coords()[1], 2.0, epsilon = 1e-15);

        let circle = Polyline::periodic(vec![
            s2(1.0, 0.0, 0.0),
            s2(0.0, 1.0, 0.0),
            s2(0.0, 0.0, 1.0),
        ])
        .unwrap();
        let dense = circle.sample_interpolant(3).unwrap();
        assert_eq!(dense.len(), 12);
        for p in dense.points() {
            assert_abs_diff_eq!(linalg::norm(p.coords()), 1.0, epsilon = 1e-15);
        }
    }
}
