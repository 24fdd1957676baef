//! Sufficient conditions for convergence from arbitrary admissible data:
//! contractivity factor `μ = μ₁ ∏ ξ(αᵢ)`, displacement constant `K`, and the
//! domain Ω of complex α for which a single quadratic factor is not certified.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{Polyline, Topology};
use crate::pyramid::ThreePyramidParams;
use crate::refine::{global_refine_step, subdivide, RefinementPlan};
use crate::symbol::{
    contraction_of, quadratic_denominator, Factor, SymbolFactorization, TAU_DEN, TAU_NEAR,
};

/// Relative tolerance on `h(ρ)` for the boundary of Ω.
pub const TAU_OMEGA: f64 = 1e-12;

/// `min` over positive real α of `max(1/(1+α), α/(1+α))`.
pub fn mu1_of(factorization: &SymbolFactorization) -> Option<f64> {
    factorization
        .real_alphas()
        .iter()
        .filter(|a| **a > 0.0)
        .map(|a| contraction_of(*a))
        .min_by(f64::total_cmp)
}

/// Expansion factor of one round.
pub fn xi(factor: Factor) -> Result<f64> {
    match factor {
        Factor::Real(a) => {
            if !a.is_finite() || (a + 1.0).abs() <= TAU_NEAR {
                return Err(Error::InvalidParams(format!("ξ undefined at α = {a}")));
            }
            Ok(if a > 0.0 {
                1.0
            } else if a > -1.0 {
                1.0 + 2.0 * (a / (1.0 + a)).abs()
            } else {
                1.0 + 2.0 * (1.0 / (1.0 + a)).abs()
            })
        }
        Factor::Quadratic(a) => {
            let den = quadratic_denominator(a);
            if a.im == 0.0 || !a.is_finite() || den <= TAU_DEN {
                return Err(Error::InvalidParams(format!("ξ undefined at α = {a}")));
            }
            Ok(1.0 + 2.0 * (2.0 * (a.norm() - a.re) / den))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaMembership {
    Inside,
    Outside,
    Boundary,
}

impl fmt::Display for OmegaMembership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OmegaMembership::Inside => "inside",
            OmegaMembership::Outside => "outside",
            OmegaMembership::Boundary => "boundary",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    CertifiedConvergent,
    NotCertified { reason: String },
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::CertifiedConvergent)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::CertifiedConvergent => f.write_str("certified-convergent"),
            Verdict::NotCertified { reason } => write!(f, "not-certified ({reason})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// The factorization in round order.
    pub factorization: SymbolFactorization,
    pub mu1: Option<f64>,
    /// ξ of every round after the first.
    pub xi_factors: Vec<(Factor, f64)>,
    pub mu: Option<f64>,
    pub displacement_k: Option<f64>,
    pub omega_verdicts: Vec<(Complex64, OmegaMembership)>,
    pub verdict: Verdict,
}

fn mu1_range(mu1: f64) -> Result<()> {
    if (0.5..1.0).contains(&mu1) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("μ₁ = {mu1} outside [1/2, 1)")))
    }
}

/// Computes μ₁, the ξ table, μ, the displacement constant and the Ω verdicts.
pub fn contractivity(factorization: &SymbolFactorization) -> Result<ConvergenceReport> {
    let ordered = factorization.order_factors();
    let f = ordered.factorization;
    let mu1 = if ordered.has_contracting_lead {
        mu1_of(&f)
    } else {
        None
    };
    let skip = usize::from(mu1.is_some());
    let mut xi_factors = Vec::new();
    for factor in f.factors().skip(skip) {
        xi_factors.push((factor, xi(factor)?));
    }
    let mut omega_verdicts = Vec::new();
    if let Some(m) = mu1 {
        for &a in f.quadratic_alphas() {
            omega_verdicts.push((a, omega_membership(a, m)?));
        }
    }
    let Some(mu1) = mu1 else {
        return Ok(ConvergenceReport {
            factorization: f,
            mu1: None,
            xi_factors,
            mu: None,
            displacement_k: None,
            omega_verdicts,
            verdict: Verdict::NotCertified {
                reason: "no positive real α to supply an initial contraction".into(),
            },
        });
    };
    let mu = mu1 * xi_factors.iter().map(|(_, x)| x).product::<f64>();
    let displacement_k = displacement_constant(&f, mu1)?;
    let verdict = if mu < 1.0 {
        Verdict::CertifiedConvergent
    } else {
        Verdict::NotCertified {
            reason: format!("contractivity bound μ = {mu} is not below 1"),
        }
    };
    Ok(ConvergenceReport {
        factorization: f,
        mu1: Some(mu1),
        xi_factors,
        mu: Some(mu),
        displacement_k: Some(displacement_k),
        omega_verdicts,
        verdict,
    })
}

/// Bound `K` on `d(q_{2i}, p_i) / δ(p)` for the working sequence of one step,
/// accumulated round by round: each round moves the point of index `2i` by at
/// most a fixed multiple of the current mesh size, itself bounded by the
/// running product `B` of μ₁ and the ξ of the rounds so far. Increments never
/// fall below 1 (positive), 2 (negative) or 3/2 (quadratic) times `B`, resp.
/// 2 and 3/2 absolute.
fn displacement_constant(ordered: &SymbolFactorization, mu1: f64) -> Result<f64> {
    let mut bound = mu1;
    let mut k = 1.0;
    for factor in ordered.factors().skip(1) {
        match factor {
            Factor::Real(a) if a > 0.0 => k += bound,
            Factor::Real(a) => {
                k += (2.0_f64)
                    .max((1.0 / (1.0 + a)).abs() * bound)
                    .max(2.0 * bound);
                bound *= xi(factor)?;
            }
            Factor::Quadratic(a) => {
                let p = ThreePyramidParams::optimal(a)?;
                let reach = p.r() * ((1.0 - p.t2()).abs() + p.t1().abs()) + p.t2().abs();
                k += (1.5_f64).max(reach * bound);
                bound *= xi(factor)?;
            }
        }
    }
    Ok(k)
}

/// `υ = arccos((3μ₁ − 1)/(1 + μ₁))`, the half-angle of the sector around the
/// positive real axis that lies entirely outside Ω.
pub fn upsilon(mu1: f64) -> Result<f64> {
    mu1_range(mu1)?;
    Ok(((3.0 * mu1 - 1.0) / (1.0 + mu1)).clamp(-1.0, 1.0).acos())
}

/// `c(φ) = −((1+μ₁)/(1−μ₁)) cos φ + 2μ₁/(1−μ₁)`; Ω is `ρ² − 2c(φ)ρ + 1 ≤ 0`.
fn omega_center(phi: f64, mu1: f64) -> f64 {
    -((1.0 + mu1) / (1.0 - mu1)) * phi.cos() + 2.0 * mu1 / (1.0 - mu1)
}

/// Whether a single quadratic factor with this α fails to be certified after
/// an initial contraction μ₁. Outside Ω, `2(t₁ − t₂) + 1 < 1/μ₁`.
pub fn omega_membership(alpha: Complex64, mu1: f64) -> Result<OmegaMembership> {
    mu1_range(mu1)?;
    if alpha.im == 0.0 || !alpha.is_finite() {
        return Err(Error::InvalidParams(format!(
            "α = {alpha} must be finite and non-real"
        )));
    }
    let (rho, phi) = alpha.to_polar();
    let c = omega_center(phi, mu1);
    let h = rho * rho - 2.0 * c * rho + 1.0;
    Ok(if h.abs() <= TAU_OMEGA * (1.0 + rho * rho) {
        OmegaMembership::Boundary
    } else if h < 0.0 {
        OmegaMembership::Inside
    } else {
        OmegaMembership::Outside
    })
}

/// One sample of the boundary of Ω: angle and the two radii `c ∓ √(c² − 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaSample {
    pub phi: f64,
    pub rho1: f64,
    pub rho2: f64,
}

/// Boundary radii at `n` angles spaced evenly inside `(υ, 2π − υ)`.
pub fn omega_boundary(mu1: f64, n: usize) -> Result<Vec<OmegaSample>> {
    let ups = upsilon(mu1)?;
    if n == 0 {
        return Err(Error::InvalidParams("sample count must be positive".into()));
    }
    Ok((0..n)
        .map(|k| {
            let phi = ups + (2.0 * PI - 2.0 * ups) * (k + 1) as f64 / (n + 1) as f64;
            let (rho1, rho2) = omega_radii(phi, mu1);
            OmegaSample { phi, rho1, rho2 }
        })
        .collect())
}

/// `ρ₁,₂(φ) = c ∓ √(c² − 1)`, clamped to `c` where `c < 1`.
pub fn omega_radii(phi: f64, mu1: f64) -> (f64, f64) {
    let c = omega_center(phi, mu1);
    let disc = (c * c - 1.0).max(0.0).sqrt();
    // product form for the small root avoids cancellation
    let rho2 = c + disc;
    (1.0 / rho2, rho2)
}

/// Sufficient condition for several quadratic factors: each complex ξ stays
/// below `(1/(μ₁ ∏ ξ_real))^{1/m₂}`, so that μ < 1.
pub fn uniform_complex_bound(factorization: &SymbolFactorization) -> Result<bool> {
    let m2 = factorization.quadratic_alphas().len();
    if m2 == 0 {
        return Err(Error::InvalidParams("no quadratic factor".into()));
    }
    let ordered = factorization.order_factors();
    if !ordered.has_contracting_lead {
        return Err(Error::InvalidParams("no positive real α".into()));
    }
    let f = ordered.factorization;
    let mu1 = mu1_of(&f).expect("positive α exists");
    let mut real_product = 1.0;
    for &a in f.real_alphas().iter().skip(1) {
        real_product *= xi(Factor::Real(a))?;
    }
    let threshold = (1.0 / (mu1 * real_product)).powf(1.0 / m2 as f64);
    for &a in f.quadratic_alphas() {
        if xi(Factor::Quadratic(a))? >= threshold {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContractionMeasurement {
    /// `δ(S^{j+1}p) / δ(S^j p)` for each step; 0 where the previous δ is 0.
    pub ratios: Vec<f64>,
    /// True when some step started from zero mesh size.
    pub degenerate: bool,
}

/// Runs `k` steps and reports the per-step mesh-size ratios.
pub fn empirical_contraction(
    p: &Polyline,
    plan: &RefinementPlan,
    k: usize,
) -> Result<ContractionMeasurement> {
    let mut current = p.clone();
    let mut prev = current.mesh_size()?;
    let mut out = ContractionMeasurement {
        ratios: Vec::with_capacity(k),
        degenerate: false,
    };
    for _ in 0..k {
        let (next, _) = subdivide(&current, plan, 1)?;
        let delta = next.mesh_size()?;
        if prev == 0.0 {
            out.degenerate = true;
            out.ratios.push(0.0);
        } else {
            out.ratios.push(delta / prev);
        }
        prev = delta;
        current = next;
    }
    Ok(out)
}

/// `max_i d(q_{2i}, p_i)` over one periodic step, where `q` is the working
/// sequence before the final rotation, together with `δ(p)`.
pub fn max_displacement(p: &Polyline, plan: &RefinementPlan) -> Result<(f64, f64)> {
    if p.topology() != Topology::Periodic {
        return Err(Error::Unsupported(
            "displacement is measured on periodic data".into(),
        ));
    }
    let (out, trace) = global_refine_step(p, plan)?;
    let len = out.len();
    let mut worst = 0.0_f64;
    for (i, parent) in p.points().iter().enumerate() {
        let child = &out.points()[trace.output_index(2 * i, len)];
        worst = worst.max(child.distance(parent)?);
    }
    Ok((worst, p.mesh_size()?))
}
