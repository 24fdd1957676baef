//! Global refinement: double the data, then one round of uniform geodesic
//! averaging per symbol factor, then shift.
//!
//! A factor `b(z)` acts on the working sequence as the convolution
//! `q'_k = Σ_l b_l q_{k−l}`. Rounds here are computed on forward windows
//! (`out_i` from `q_i, q_{i+1}[, q_{i+2}]`), so the coefficients are read in
//! reverse: a real factor gives `out_i = M_{1/(1+α)}(q_i, q_{i+1})` and a
//! quadratic factor gives `out_i = P(q_{i+2}, q_{i+1}, q_i)`. Each round
//! therefore lags the convolution index by its degree, and after all rounds
//! working index `k` holds refined sample `k − s + m` where `m = m₁ + 2m₂`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{distance, geodesic_point, ManifoldPoint, Polyline, Topology, T_MAX};
use crate::pyramid::{three_pyramid_average, ThreePyramidParams};
use crate::symbol::{Mask, SymbolFactorization};

/// One averaging round of a plan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Round {
    Linear {
        alpha: f64,
    },
    Quadratic {
        alpha: Complex64,
        params: ThreePyramidParams,
    },
}

impl Round {
    /// Number of points one open-mode round removes.
    pub fn width(&self) -> usize {
        match self {
            Round::Linear { .. } => 1,
            Round::Quadratic { .. } => 2,
        }
    }
}

/// An ordered factorization with precomputed round parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinementPlan {
    factorization: SymbolFactorization,
    rounds: Vec<Round>,
}

fn in_window(t: f64) -> bool {
    (-T_MAX..=1.0 + T_MAX).contains(&t)
}

impl RefinementPlan {
    /// Orders the factors (most contracting positive α first, then the other
    /// positive, then negative, then quadratic) and precomputes the optimal
    /// pyramid parameters.
    pub fn new(factorization: &SymbolFactorization) -> Result<Self> {
        let ordered = factorization.order_factors().factorization;
        let mut rounds =
            Vec::with_capacity(ordered.real_alphas().len() + ordered.quadratic_alphas().len());
        for &alpha in ordered.real_alphas() {
            let w = alpha / (1.0 + alpha);
            if !in_window(w) {
                return Err(Error::InvalidSymbol(format!(
                    "real factor α = {alpha} needs averaging weight {w} outside [{}, {}]",
                    -T_MAX,
                    1.0 + T_MAX
                )));
            }
            rounds.push(Round::Linear { alpha });
        }
        for &alpha in ordered.quadratic_alphas() {
            let params = ThreePyramidParams::optimal(alpha)?;
            for (name, t) in [("t1", params.t1()), ("t2", params.t2()), ("r", params.r())] {
                if !in_window(t) {
                    return Err(Error::InvalidSymbol(format!(
                        "quadratic factor α = {alpha} needs {name} = {t} outside [{}, {}]",
                        -T_MAX,
                        1.0 + T_MAX
                    )));
                }
            }
            rounds.push(Round::Quadratic { alpha, params });
        }
        Ok(Self {
            factorization: ordered,
            rounds,
        })
    }

    pub fn from_mask(mask: &Mask) -> Result<Self> {
        Self::new(&mask.factorize()?)
    }

    /// Degree-`m` B-spline: `m` rounds of midpoint averaging.
    pub fn bspline(degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidSymbol(
                "B-spline degree must be at least 1".into(),
            ));
        }
        Self::new(&SymbolFactorization::new(0, vec![1.0; degree], Vec::new())?)
    }

    pub fn factorization(&self) -> &SymbolFactorization {
        &self.factorization
    }

    pub fn rounds(&self) -> &[Round] {
        &self.rounds
    }

    pub fn shift(&self) -> i64 {
        self.factorization.shift()
    }

    /// `m₁ + 2m₂`.
    pub fn degree(&self) -> usize {
        self.factorization.degree()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RoundKind {
    Double,
    Linear(f64),
    Quadratic(Complex64),
}

impl fmt::Display for RoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoundKind::Double => f.write_str("double"),
            RoundKind::Linear(_) => f.write_str("linear"),
            RoundKind::Quadratic(_) => f.write_str("quadratic"),
        }
    }
}

/// Working sequence length and mesh size after one round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundRecord {
    pub kind: RoundKind,
    pub len: usize,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefinementTrace {
    pub rounds: Vec<RoundRecord>,
    pub shift: i64,
    /// Periodic mode: output index `j` holds working index `(j + rotation) mod len`.
    pub rotation: usize,
    /// Open mode: output index `k` is refined sample `k + origin_offset`.
    pub origin_offset: i64,
}

impl RefinementTrace {
    /// Output index holding working index `k` of a periodic step of length `len`.
    pub fn output_index(&self, k: usize, len: usize) -> usize {
        (k + len - self.rotation % len) % len
    }
}

fn mesh(points: &[ManifoldPoint], topology: Topology) -> Result<f64> {
    let n = points.len();
    let count = match topology {
        Topology::Open => n.saturating_sub(1),
        Topology::Periodic => n,
    };
    let mut delta = 0.0_f64;
    for i in 0..count {
        delta = delta.max(distance(&points[i], &points[(i + 1) % n])?);
    }
    Ok(delta)
}

/// Repeats every point once: `[a, b] → [a, a, b, b]`.
pub fn elementary_double(p: &Polyline) -> Polyline {
    let points = p
        .points()
        .iter()
        .flat_map(|x| [x.clone(), x.clone()])
        .collect();
    Polyline::new(points, p.topology()).expect("doubling preserves admissibility")
}

/// Applies `f` to every window of `width + 1` consecutive points.
fn average_round<F>(
    q: &[ManifoldPoint],
    topology: Topology,
    width: usize,
    round: usize,
    f: F,
) -> Result<Vec<ManifoldPoint>>
where
    F: Fn(&[&ManifoldPoint]) -> Result<ManifoldPoint>,
{
    let n = q.len();
    let count = match topology {
        Topology::Periodic => n,
        Topology::Open => {
            if n < width + 1 {
                return Err(Error::Numeric(format!(
                    "round {round}: open sequence of {n} points is too short for the window"
                )));
            }
            n - width
        }
    };
    let mut window = Vec::with_capacity(width + 1);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        window.clear();
        window.extend((0..=width).map(|k| &q[(i + k) % n]));
        out.push(f(&window).map_err(|e| e.in_round(round, i))?);
    }
    Ok(out)
}

fn into_polyline(points: Vec<ManifoldPoint>, topology: Topology) -> Result<Polyline> {
    Polyline::new(points, topology).map_err(|e| match e {
        Error::InvalidPolyline(msg) => {
            Error::Numeric(format!("refined sequence is not admissible: {msg}"))
        }
        other => other,
    })
}

/// `out_i = M_{α/(1+α)}(q_i, q_{i+1})`. Open sequences lose their last point.
pub fn linear_round(
    q: &[ManifoldPoint],
    topology: Topology,
    alpha: f64,
) -> Result<Vec<ManifoldPoint>> {
    if !alpha.is_finite() || alpha == -1.0 {
        return Err(Error::InvalidParams(format!("α = {alpha} is not allowed")));
    }
    let w = alpha / (1.0 + alpha);
    average_round(q, topology, 1, 1, |x| geodesic_point(x[0], x[1], w))
}

/// `out_i = P(q_i, q_{i+1}, q_{i+2})`. Open sequences lose their last two points.
pub fn quadratic_round(
    q: &[ManifoldPoint],
    topology: Topology,
    params: &ThreePyramidParams,
) -> Result<Vec<ManifoldPoint>> {
    if !params.is_interpolating() {
        return Err(Error::InvalidParams(format!(
            "pyramid weight r = {} outside (0, 1)",
            params.r()
        )));
    }
    if topology == Topology::Periodic && q.len() < 3 {
        return Err(Error::InvalidPolyline(
            "periodic quadratic round needs at least 3 points".into(),
        ));
    }
    average_round(q, topology, 2, 1, |x| {
        three_pyramid_average(x[0], x[1], x[2], params)
    })
}

fn apply_round(
    q: &[ManifoldPoint],
    topology: Topology,
    round: &Round,
    index: usize,
) -> Result<Vec<ManifoldPoint>> {
    match round {
        Round::Linear { alpha } => {
            let w = 1.0 / (1.0 + alpha);
            average_round(q, topology, 1, index, |x| geodesic_point(x[0], x[1], w))
        }
        Round::Quadratic { params, .. } => average_round(q, topology, 2, index, |x| {
            three_pyramid_average(x[2], x[1], x[0], params)
        }),
    }
}

fn round_kind(round: &Round) -> RoundKind {
    match round {
        Round::Linear { alpha } => RoundKind::Linear(*alpha),
        Round::Quadratic { alpha, .. } => RoundKind::Quadratic(*alpha),
    }
}

/// One refinement step. Round indices in errors count the doubling as 0.
pub fn global_refine_step(
    p: &Polyline,
    plan: &RefinementPlan,
) -> Result<(Polyline, RefinementTrace)> {
    let topology = p.topology();
    let doubled = elementary_double(p);
    let mut records = vec![RoundRecord {
        kind: RoundKind::Double,
        len: doubled.len(),
        delta: doubled.mesh_size()?,
    }];
    let mut q = doubled.into_points();
    for (j, round) in plan.rounds.iter().enumerate() {
        q = apply_round(&q, topology, round, j + 1)?;
        if q.len() < 2 {
            return Err(Error::Numeric(format!(
                "round {}: open sequence shrank to {} point(s); the plan is too long for the data",
                j + 1,
                q.len()
            )));
        }
        records.push(RoundRecord {
            kind: round_kind(round),
            len: q.len(),
            delta: mesh(&q, topology)?,
        });
    }
    let lag = plan.degree() as i64 - plan.shift();
    let mut trace = RefinementTrace {
        rounds: records,
        shift: plan.shift(),
        rotation: 0,
        origin_offset: 0,
    };
    match topology {
        Topology::Periodic => {
            let len = q.len() as i64;
            let rotation = (-lag).rem_euclid(len) as usize;
            q.rotate_left(rotation);
            trace.rotation = rotation;
        }
        Topology::Open => trace.origin_offset = lag,
    }
    Ok((into_polyline(q, topology)?, trace))
}

/// `k` composed refinement steps.
pub fn subdivide(
    p: &Polyline,
    plan: &RefinementPlan,
    k: usize,
) -> Result<(Polyline, Vec<RefinementTrace>)> {
    let mut current = p.clone();
    let mut traces = Vec::with_capacity(k);
    for _ in 0..k {
        let (next, trace) = global_refine_step(&current, plan)?;
        current = next;
        traces.push(trace);
    }
    Ok((current, traces))
}

/// Computes every output of a periodic step independently as a pyramid of
/// averages over the few input points it depends on. Plans with quadratic
/// factors are not supported.
pub fn local_refine_step(p: &Polyline, plan: &RefinementPlan) -> Result<Polyline> {
    if !plan.factorization.quadratic_alphas().is_empty() {
        return Err(Error::Unsupported(
            "local refinement of quadratic factors".into(),
        ));
    }
    if p.topology() != Topology::Periodic {
        return Err(Error::Unsupported(
            "local refinement of open sequences".into(),
        ));
    }
    let n = p.len();
    let len = 2 * n;
    let pts = p.points();
    let weights: Vec<f64> = plan
        .factorization
        .real_alphas()
        .iter()
        .map(|a| 1.0 / (1.0 + a))
        .collect();
    let m = weights.len();
    let lag = m as i64 - plan.shift();
    let rotation = (-lag).rem_euclid(len as i64) as usize;

    let mut out = Vec::with_capacity(len);
    let mut level: Vec<ManifoldPoint> = Vec::with_capacity(m);
    for j in 0..len {
        let k = (j + rotation) % len;
        if m == 0 {
            out.push(pts[k / 2].clone());
            continue;
        }
        level.clear();
        for idx in k..k + m {
            let l = (idx / 2) % n;
            let t = if idx % 2 == 0 { 0.0 } else { weights[0] };
            let seed = geodesic_point(&pts[l], &pts[(l + 1) % n], t)
                .map_err(|e| e.in_round(1, idx % len))?;
            level.push(seed);
        }
        for (r, &w) in weights.iter().enumerate().skip(1) {
            for i in 0..level.len() - 1 {
                level[i] = geodesic_point(&level[i], &level[i + 1], w)
                    .map_err(|e| e.in_round(r + 1, (k + i) % len))?;
            }
            level.pop();
        }
        out.push(level.pop().expect("one value remains"));
    }
    into_polyline(out, Topology::Periodic)
}

/// Linear refinement `S(f)_j = Σ_i a_{j−2i} f_i` of periodic real data.
pub fn linear_refine(f: &[f64], mask: &Mask) -> Vec<f64> {
    let n = f.len() as i64;
    let mut out = vec![0.0; 2 * f.len()];
    for (j, value) in out.iter_mut().enumerate() {
        let j = j as i64;
        for idx in mask.first_index()..=mask.last_index() {
            if (j - idx).rem_euclid(2) == 0 {
                let i = ((j - idx) / 2).rem_euclid(n);
                *value += mask.coefficient(idx) * f[i as usize];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn reals(xs: &[f64], topology: Topology) -> Polyline {
        let pts = xs
            .iter()
            .map(|x| ManifoldPoint::euclidean(vec![*x]).unwrap())
            .collect();
        Polyline::new(pts, topology).unwrap()
    }

    fn values(p: &Polyline) -> Vec<f64> {
        p.points().iter().map(|x| x.coords()[0]).collect()
    }

    #[test]
    fn doubling() {
        let p = reals(&[0.0, 1.0, 3.0], Topology::Periodic);
        let d = elementary_double(&p);
        assert_eq!(values(&d), vec![0.0, 0.0, 1.0, 1.0, 3.0, 3.0]);
        assert_eq!(d.mesh_size().unwrap(), p.mesh_size().unwrap());
    }

    #[test]
    fn forward_rounds() {
        let first = |v: Vec<ManifoldPoint>| v.iter().map(|x| x.coords()[0]).collect::<Vec<_>>();
        let out = linear_round(
            reals(&[0.0, 2.0], Topology::Open).points(),
            Topology::Open,
            1.0,
        )
        .unwrap();
        assert_eq!(first(out), vec![1.0]);
        let out = linear_round(
            reals(&[0.0, 1.0, 3.0], Topology::Open).points(),
            Topology::Open,
            3.0,
        )
        .unwrap();
        assert_eq!(first(out), vec![0.75, 2.5]);
        let params = ThreePyramidParams::optimal(Complex64::new(1.0, 0.5)).unwrap();
        let out = quadratic_round(
            reals(&[0.0, 1.0, 2.0], Topology::Open).points(),
            Topology::Open,
            &params,
        )
        .unwrap();
        assert_eq!(out.len(), 1);
        assert_abs_diff_eq!(out[0].coords()[0], 4.5 / 4.25, epsilon = 1e-14);
    }

    #[test]
    fn chaikin_square() {
        let corners = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let pts = corners
            .iter()
            .map(|c| ManifoldPoint::euclidean(c.to_vec()).unwrap())
            .collect();
        let p = Polyline::periodic(pts).unwrap();
        let plan = RefinementPlan::bspline(2).unwrap();
        let (out, trace) = global_refine_step(&p, &plan).unwrap();
        let mask = Mask::bspline(2).unwrap();
        for axis in 0..2 {
            let f: Vec<f64> = corners.iter().map(|c| c[axis]).collect();
            let expect = linear_refine(&f, &mask);
            for (x, y) in out.points().iter().zip(&expect) {
                assert_abs_diff_eq!(x.coords()[axis], *y, epsilon = 1e-15);
            }
        }
        assert_eq!(out.points()[0].coords(), &[0.0, 0.75]);
        assert_eq!(out.points()[1].coords(), &[0.0, 0.25]);
        assert_eq!(out.points()[2].coords(), &[0.25, 0.0]);
        assert_eq!(trace.rounds.len(), 3);
    }

    #[test]
    fn linear_refine_examples() {
        let hat = Mask::new(vec![0.5, 1.0, 0.5], -1).unwrap();
        assert_eq!(linear_refine(&[0.0, 1.0], &hat), vec![0.0, 0.5, 1.0, 0.5]);
        let chaikin = Mask::bspline(2).unwrap();
        assert_eq!(
            linear_refine(&[0.0, 0.0, 1.0, 1.0], &chaikin),
            vec![0.75, 0.25, 0.0, 0.0, 0.25, 0.75, 1.0, 1.0]
        );
    }

    #[test]
    fn open_mode_shrinks_and_fails() {
        let plan = RefinementPlan::bspline(3).unwrap();
        let p = reals(&[0.0, 1.0, 2.0], Topology::Open);
        let (out, trace) = global_refine_step(&p, &plan).unwrap();
        assert_eq!(out.len(), 3);
        assert_eq!(trace.origin_offset, 3);
        let p = reals(&[0.0, 1.0], Topology::Open);
        assert!(global_refine_step(&p, &plan).unwrap_err().is_numeric());
    }

    #[test]
    fn local_matches_global_on_reals() {
        let p = reals(&[0.0, 0.4, 1.7, 0.3, -0.8], Topology::Periodic);
        for m in 1..=4 {
            let plan = RefinementPlan::bspline(m).unwrap();
            let global = global_refine_step(&p, &plan).unwrap().0;
            let local = local_refine_step(&p, &plan).unwrap();
            assert_eq!(global, local);
        }
    }
}
