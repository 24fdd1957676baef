//! JSON formats for points, polylines, symbols, traces and reports.

use georefine::{
    contractivity, uniform_complex_bound, upsilon, ConvergenceReport, Factor, ManifoldKind,
    ManifoldPoint, Mask, Polyline, RefinementTrace, RoundKind, SymbolFactorization,
    ThreePyramidParams, Topology, Verdict,
};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ManifoldDto {
    Euclidean { dim: usize },
    Sphere { dim: usize },
    So3,
    Spd { n: usize },
}

impl From<ManifoldDto> for ManifoldKind {
    fn from(m: ManifoldDto) -> Self {
        match m {
            ManifoldDto::Euclidean { dim } => ManifoldKind::Euclidean { dim },
            ManifoldDto::Sphere { dim } => ManifoldKind::Sphere { dim },
            ManifoldDto::So3 => ManifoldKind::Rotations3D,
            ManifoldDto::Spd { n } => ManifoldKind::Spd { n },
        }
    }
}

#[derive(Debug, Deserialize)]
struct PointDto {
    kind: String,
    data: Vec<f64>,
}

#[derive(Debug, Deserialize)]
struct PolylineDto {
    manifold: Option<ManifoldDto>,
    topology: String,
    points: Vec<PointDto>,
}

#[derive(Debug, Deserialize)]
struct ComplexDto {
    re: f64,
    im: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorizationDto {
    shift: i64,
    #[serde(default)]
    real_alphas: Vec<f64>,
    #[serde(default)]
    quadratic_alphas: Vec<ComplexDto>,
}

/// Parses `euclidean:d`, `sphere:d`, `so3` or `spd:n`.
pub fn parse_manifold(s: &str) -> Result<ManifoldKind, CliError> {
    let (name, arg) = match s.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (s, None),
    };
    let size = || -> Result<usize, CliError> {
        let a = arg.ok_or_else(|| {
            CliError::invalid(format!("manifold '{s}' needs a size, e.g. {name}:3"))
        })?;
        a.parse().map_err(|_| {
            CliError::invalid(format!("manifold size '{a}' is not a positive integer"))
        })
    };
    match name {
        "euclidean" => Ok(ManifoldKind::Euclidean { dim: size()? }),
        "sphere" => Ok(ManifoldKind::Sphere { dim: size()? }),
        "so3" if arg.is_none() => Ok(ManifoldKind::Rotations3D),
        "spd" => Ok(ManifoldKind::Spd { n: size()? }),
        _ => Err(CliError::invalid(format!(
            "unknown manifold '{s}' (expected euclidean:d, sphere:d, so3 or spd:n)"
        ))),
    }
}

pub fn parse_topology(s: &str) -> Result<Topology, CliError> {
    match s {
        "open" => Ok(Topology::Open),
        "periodic" => Ok(Topology::Periodic),
        _ => Err(CliError::invalid(format!(
            "topology '{s}' must be open or periodic"
        ))),
    }
}

pub fn topology_name(t: Topology) -> &'static str {
    match t {
        Topology::Open => "open",
        Topology::Periodic => "periodic",
    }
}

/// Reads a polyline. `manifold` fills in or must agree with the file's kind.
pub fn parse_polyline(
    text: &str,
    manifold: Option<ManifoldKind>,
    topology: Option<Topology>,
) -> Result<Polyline, CliError> {
    let dto: PolylineDto =
        serde_json::from_str(text).map_err(|e| CliError::invalid(format!("polyline JSON: {e}")))?;
    let kind = match (dto.manifold.map(ManifoldKind::from), manifold) {
        (Some(a), Some(b)) if a != b => {
            return Err(CliError::invalid(format!(
                "input manifold {} differs from --manifold {}",
                describe(a),
                describe(b)
            )))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => {
            return Err(CliError::invalid("input has no manifold; pass --manifold"));
        }
    };
    let topology = match topology {
        Some(t) => t,
        None => parse_topology(&dto.topology)?,
    };
    let mut points = Vec::with_capacity(dto.points.len());
    for (i, p) in dto.points.into_iter().enumerate() {
        if p.kind != kind.name() {
            return Err(CliError::invalid(format!(
                "point {i} has kind '{}' but the manifold is {}",
                p.kind,
                kind.name()
            )));
        }
        points.push(
            ManifoldPoint::new(kind, p.data)
                .map_err(|e| CliError::invalid(format!("point {i}: {e}")))?,
        );
    }
    Polyline::new(points, topology).map_err(CliError::from)
}

pub fn describe(kind: ManifoldKind) -> String {
    match kind {
        ManifoldKind::Euclidean { dim } => format!("euclidean:{dim}"),
        ManifoldKind::Sphere { dim } => format!("sphere:{dim}"),
        ManifoldKind::Rotations3D => "so3".into(),
        ManifoldKind::Spd { n } => format!("spd:{n}"),
    }
}

pub fn manifold_json(kind: ManifoldKind) -> Value {
    match kind {
        ManifoldKind::Euclidean { dim } => json!({"kind": "euclidean", "dim": dim}),
        ManifoldKind::Sphere { dim } => json!({"kind": "sphere", "dim": dim}),
        ManifoldKind::Rotations3D => json!({"kind": "so3"}),
        ManifoldKind::Spd { n } => json!({"kind": "spd", "n": n}),
    }
}

pub fn point_json(p: &ManifoldPoint) -> Value {
    json!({"kind": p.kind().name(), "data": p.coords()})
}

/// Polyline JSON; `delta` is added when given.
pub fn polyline_json(p: &Polyline, delta: Option<f64>) -> Value {
    let mut v = json!({
        "manifold": manifold_json(p.kind()),
        "topology": topology_name(p.topology()),
        "points": p.points().iter().map(point_json).collect::<Vec<_>>(),
    });
    if let Some(d) = delta {
        v["delta"] = json!(d);
    }
    v
}

pub fn complex_json(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

/// Parses `c0,c1,...@L`; coefficients may be written as fractions `p/q`.
pub fn parse_mask(s: &str) -> Result<Mask, CliError> {
    let (coeffs, first) = match s.rsplit_once('@') {
        Some((c, l)) => {
            let l = l
                .trim()
                .parse::<i64>()
                .map_err(|_| CliError::invalid(format!("mask offset '{l}' is not an integer")))?;
            (c, l)
        }
        None => (s, 0),
    };
    let coefficients = coeffs
        .split(',')
        .map(|c| parse_number(c.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    Mask::new(coefficients, first).map_err(CliError::from)
}

fn parse_number(s: &str) -> Result<f64, CliError> {
    let bad = || CliError::invalid(format!("mask coefficient '{s}' is not a number"));
    let x = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            p / q
        }
        None => s.parse().map_err(|_| bad())?,
    };
    if x.is_finite() {
        Ok(x)
    } else {
        Err(bad())
    }
}

/// Parses `bspline:m` (or `chaikin`, the same as `bspline:2`).
pub fn parse_preset(s: &str) -> Result<SymbolFactorization, CliError> {
    let degree = match s.split_once(':') {
        _ if s == "chaikin" => 2,
        Some(("bspline", m)) => m.parse::<usize>().ok().filter(|&m| m >= 1).ok_or_else(|| {
            CliError::invalid(format!("B-spline degree '{m}' must be a positive integer"))
        })?,
        _ => {
            return Err(CliError::invalid(format!(
                "unknown preset '{s}' (expected bspline:m)"
            )))
        }
    };
    SymbolFactorization::new(0, vec![1.0; degree], Vec::new()).map_err(CliError::from)
}

pub fn parse_factorization(text: &str) -> Result<SymbolFactorization, CliError> {
    let dto: FactorizationDto = serde_json::from_str(text)
        .map_err(|e| CliError::invalid(format!("factorization JSON: {e}")))?;
    let quads = dto
        .quadratic_alphas
        .iter()
        .map(|c| Complex64::new(c.re, c.im))
        .collect();
    SymbolFactorization::new(dto.shift, dto.real_alphas, quads).map_err(CliError::from)
}

pub fn mask_json(mask: &Mask) -> Value {
    json!({"coefficients": mask.coefficients(), "first_index": mask.first_index()})
}

pub fn factorization_json(f: &SymbolFactorization) -> Value {
    json!({
        "shift": f.shift(),
        "real_alphas": f.real_alphas(),
        "quadratic_alphas": f.quadratic_alphas().iter().map(|&a| complex_json(a)).collect::<Vec<_>>(),
    })
}

fn factor_json(factor: Factor) -> Value {
    match factor {
        Factor::Real(a) => json!(a),
        Factor::Quadratic(a) => complex_json(a),
    }
}

fn factor_kind(factor: Factor) -> &'static str {
    match factor {
        Factor::Real(_) => "linear",
        Factor::Quadratic(_) => "quadratic",
    }
}

pub fn trace_json(trace: &RefinementTrace) -> Value {
    let rounds: Vec<Value> = trace
        .rounds
        .iter()
        .map(|r| {
            let alpha = match r.kind {
                RoundKind::Double => Value::Null,
                RoundKind::Linear(a) => json!(a),
                RoundKind::Quadratic(a) => complex_json(a),
            };
            json!({"kind": r.kind.to_string(), "alpha": alpha, "delta": r.delta, "len": r.len})
        })
        .collect();
    json!({
        "rounds": rounds,
        "shift": trace.shift,
        "rotation": trace.rotation,
        "origin_offset": trace.origin_offset,
    })
}

/// Full analysis of a factorization as JSON, plus the report it was built from.
pub fn report_json(
    f: &SymbolFactorization,
    mask: &Mask,
) -> Result<(Value, ConvergenceReport), CliError> {
    let report = contractivity(f)?;
    let xi: Vec<Value> = report
        .xi_factors
        .iter()
        .map(|&(factor, x)| json!({"kind": factor_kind(factor), "alpha": factor_json(factor), "xi": x}))
        .collect();
    let omega: Vec<Value> = report
        .omega_verdicts
        .iter()
        .map(|&(a, m)| json!({"alpha": complex_json(a), "membership": m.to_string()}))
        .collect();
    let mut params = Vec::new();
    for &a in report.factorization.quadratic_alphas() {
        let p = ThreePyramidParams::optimal(a)?;
        let w = p.weights();
        params.push(json!({
            "alpha": complex_json(a),
            "w": [w.w1, w.w2, w.w3],
            "r": p.r(),
            "t1": p.t1(),
            "t2": p.t2(),
        }));
    }
    let uniform = match uniform_complex_bound(f) {
        Ok(b) => json!(b),
        Err(_) => Value::Null,
    };
    let (verdict, reason) = match &report.verdict {
        Verdict::CertifiedConvergent => ("certified-convergent", Value::Null),
        Verdict::NotCertified { reason } => ("not-certified", json!(reason)),
    };
    let ups = report.mu1.and_then(|m| upsilon(m).ok());
    let v = json!({
        "mask": mask_json(mask),
        "factorization": factorization_json(&report.factorization),
        "mu1": report.mu1,
        "upsilon": ups,
        "xi": xi,
        "mu": report.mu,
        "displacement_k": report.displacement_k,
        "omega": omega,
        "params": params,
        "uniform_complex_bound": uniform,
        "verdict": verdict,
        "reason": reason,
    });
    Ok((v, report))
}
