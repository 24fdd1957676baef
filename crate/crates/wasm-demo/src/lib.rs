//! Browser bindings: refine a clicked curve, sample Ω and classify α, and
//! analyze a mask.
//!
//! Every exported function has a plain-Rust counterpart returning
//! `Result<_, String>` so it can be tested natively.

use georefine::{
    contractivity, omega_boundary, omega_membership, subdivide, upsilon, ManifoldPoint, Mask,
    Polyline, RefinementPlan, SymbolFactorization, Topology,
};
use num_complex::Complex64;
use wasm_bindgen::prelude::*;

/// `bspline:m`, `chaikin`, or mask coefficients `c0,c1,...@L` (fractions allowed).
pub fn parse_symbol(s: &str) -> Result<SymbolFactorization, String> {
    let s = s.trim();
    if s == "chaikin" {
        return SymbolFactorization::new(0, vec![1.0; 2], Vec::new()).map_err(|e| e.to_string());
    }
    if let Some(m) = s.strip_prefix("bspline:") {
        let m: usize = m
            .trim()
            .parse()
            .map_err(|_| format!("bad B-spline degree '{m}'"))?;
        if m == 0 {
            return Err("B-spline degree must be at least 1".into());
        }
        return SymbolFactorization::new(0, vec![1.0; m], Vec::new()).map_err(|e| e.to_string());
    }
    parse_mask(s)?.factorize().map_err(|e| e.to_string())
}

fn parse_mask(s: &str) -> Result<Mask, String> {
    let (coeffs, first) = match s.rsplit_once('@') {
        Some((c, l)) => (
            c,
            l.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad mask offset '{l}'"))?,
        ),
        None => (s, 0),
    };
    let number = |c: &str| -> Result<f64, String> {
        let c = c.trim();
        let bad = || format!("bad coefficient '{c}'");
        match c.split_once('/') {
            Some((p, q)) => Ok(p.trim().parse::<f64>().map_err(|_| bad())?
                / q.trim().parse::<f64>().map_err(|_| bad())?),
            None => c.parse().map_err(|_| bad()),
        }
    };
    let coefficients = coeffs
        .split(',')
        .map(number)
        .collect::<Result<Vec<_>, _>>()?;
    Mask::new(coefficients, first).map_err(|e| e.to_string())
}

/// Refines `coords` (`dim` numbers per point) on the plane (`"euclidean"`) or
/// the unit sphere (`"sphere"`, points normalized on input). Returns the
/// refined coordinates flattened the same way.
pub fn refine_points(
    coords: &[f64],
    dim: usize,
    manifold: &str,
    periodic: bool,
    symbol: &str,
    steps: usize,
) -> Result<Vec<f64>, String> {
    if dim == 0 || !coords.len().is_multiple_of(dim) {
        return Err(format!(
            "{} coordinates do not split into points of dimension {dim}",
            coords.len()
        ));
    }
    let plan = RefinementPlan::new(&parse_symbol(symbol)?).map_err(|e| e.to_string())?;
    let points = coords
        .chunks(dim)
        .map(|c| match manifold {
            "euclidean" => ManifoldPoint::euclidean(c.to_vec()),
            "sphere" => ManifoldPoint::sphere_from_direction(c),
            other => Err(georefine::Error::Unsupported(format!("manifold '{other}'"))),
        })
        .collect::<georefine::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let topology = if periodic {
        Topology::Periodic
    } else {
        Topology::Open
    };
    let p = Polyline::new(points, topology).map_err(|e| e.to_string())?;
    let (out, _) = subdivide(&p, &plan, steps).map_err(|e| e.to_string())?;
    Ok(out
        .into_points()
        .into_iter()
        .flat_map(ManifoldPoint::into_coords)
        .collect())
}

/// Flattened `[φ, ρ₁, ρ₂, ...]` samples of the boundary of Ω.
pub fn omega_samples(mu1: f64, n: usize) -> Result<Vec<f64>, String> {
    let samples = omega_boundary(mu1, n).map_err(|e| e.to_string())?;
    Ok(samples
        .iter()
        .flat_map(|s| [s.phi, s.rho1, s.rho2])
        .collect())
}

pub fn classify(re: f64, im: f64, mu1: f64) -> Result<String, String> {
    omega_membership(Complex64::new(re, im), mu1)
        .map(|m| m.to_string())
        .map_err(|e| e.to_string())
}

/// Human-readable convergence report for a symbol.
pub fn analyze(symbol: &str) -> Result<String, String> {
    let f = parse_symbol(symbol)?;
    let r = contractivity(&f).map_err(|e| e.to_string())?;
    let g = r.factorization;
    let mut out = format!("shift s = {}\n", g.shift());
    out += &format!("real α: {:?}\n", g.real_alphas());
    let quads: Vec<String> = g
        .quadratic_alphas()
        .iter()
        .map(|a| format!("{}{:+}i", a.re, a.im))
        .collect();
    out += &format!("quadratic α: [{}]\n", quads.join(", "));
    let opt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.6}"));
    out += &format!("μ₁ = {}\n", opt(r.mu1));
    if let Some(m) = r.mu1 {
        if let Ok(u) = upsilon(m) {
            out += &format!("υ = {u:.6}\n");
        }
    }
    for (factor, x) in &r.xi_factors {
        out += &format!("ξ({factor}) = {x:.6}\n");
    }
    out += &format!("μ = {}\nK = {}\n", opt(r.mu), opt(r.displacement_k));
    for (a, m) in &r.omega_verdicts {
        out += &format!("{}{:+}i: {m} Ω\n", a.re, a.im);
    }
    out += &format!("verdict: {}\n", r.verdict);
    Ok(out)
}

#[wasm_bindgen]
pub fn refine_curve(
    coords: Vec<f64>,
    dim: usize,
    manifold: &str,
    periodic: bool,
    symbol: &str,
    steps: usize,
) -> Result<Vec<f64>, JsError> {
    refine_points(&coords, dim, manifold, periodic, symbol, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn omega_curve(mu1: f64, n: usize) -> Result<Vec<f64>, JsError> {
    omega_samples(mu1, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn upsilon_of(mu1: f64) -> Result<f64, JsError> {
    upsilon(mu1).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn classify_alpha(re: f64, im: f64, mu1: f64) -> Result<String, JsError> {
    classify(re, im, mu1).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn analyze_symbol(symbol: &str) -> Result<String, JsError> {
    analyze(symbol).map_err(|e| JsError::new(&e))
}
