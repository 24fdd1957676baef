//! The three pyramid: a nested pair of geodesic averages realizing one
//! irreducible quadratic factor `(1 + 2Re(α)z + |α|²z²)/(1 + 2Re(α) + |α|²)`.
//!
//! ```text
//! P(p1, p2, p3) = M_r( M_t2(p3, p2), M_t1(p2, p1) )
//! ```
//!
//! On Euclidean data this is `w1·p1 + w2·p2 + w3·p3`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{geodesic_point, ManifoldPoint};
use crate::symbol::{quadratic_denominator, TAU_DEN};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticWeights {
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
}

impl QuadraticWeights {
    /// `(1, 2Re(α), |α|²) / (1 + 2Re(α) + |α|²)`.
    pub fn from_alpha(alpha: Complex64) -> Result<Self> {
        check_alpha(alpha)?;
        let den = quadratic_denominator(alpha);
        Ok(Self {
            w1: 1.0 / den,
            w2: 2.0 * alpha.re / den,
            w3: alpha.norm_sqr() / den,
        })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.w1, self.w2, self.w3]
    }
}

fn check_alpha(alpha: Complex64) -> Result<()> {
    if !alpha.is_finite() || alpha.im == 0.0 {
        return Err(Error::InvalidParams(format!(
            "α = {alpha} must be finite and non-real"
        )));
    }
    let den = quadratic_denominator(alpha);
    if den <= TAU_DEN {
        return Err(Error::InvalidParams(format!(
            "α = {alpha}: denominator {den:e} too small"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreePyramidParams {
    weights: QuadraticWeights,
    r: f64,
    t1: f64,
    t2: f64,
}

impl ThreePyramidParams {
    /// Parameters with `r = 1/(1+|α|)`, which minimize `t1 − t2` over `r ∈ (0,1)`.
    pub fn optimal(alpha: Complex64) -> Result<Self> {
        let weights = QuadraticWeights::from_alpha(alpha)?;
        let den = quadratic_denominator(alpha);
        let abs = alpha.norm();
        Ok(Self {
            weights,
            r: 1.0 / (1.0 + abs),
            t1: (abs + 1.0) / den,
            t2: (1.0 + 2.0 * alpha.re - abs) / den,
        })
    }

    /// Parameters for a prescribed outer weight: `t1 = w1/r`, `t2 = 1 − w3/(1−r)`.
    pub fn for_r(alpha: Complex64, r: f64) -> Result<Self> {
        let weights = QuadraticWeights::from_alpha(alpha)?;
        if !r.is_finite() || r == 0.0 || r == 1.0 {
            return Err(Error::InvalidParams(format!(
                "outer weight r = {r} must differ from 0 and 1"
            )));
        }
        Ok(Self {
            weights,
            r,
            t1: weights.w1 / r,
            t2: 1.0 - weights.w3 / (1.0 - r),
        })
    }

    pub fn weights(&self) -> QuadraticWeights {
        self.weights
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn t2(&self) -> f64 {
        self.t2
    }

    /// True when `r` lies strictly between 0 and 1.
    pub fn is_interpolating(&self) -> bool {
        self.r > 0.0 && self.r < 1.0
    }

    /// Largest deviation among the three defining constraints
    /// `t1·r = w1`, `(1−t1)r + t2(1−r) = w2`, `(1−t2)(1−r) = w3`.
    pub fn constraint_residual(&self) -> f64 {
        let QuadraticWeights { w1, w2, w3 } = self.weights;
        let (r, t1, t2) = (self.r, self.t1, self.t2);
        (t1 * r - w1)
            .abs()
            .max(((1.0 - t1) * r + t2 * (1.0 - r) - w2).abs())
            .max(((1.0 - t2) * (1.0 - r) - w3).abs())
    }

    /// `2(t1 − t2) + 1`, the factor by which one pyramid round may expand
    /// the mesh size. Valid only for `r ∈ (0, 1)`.
    pub fn expansion_bound(&self) -> Result<f64> {
        if !self.is_interpolating() {
            return Err(Error::InvalidParams(format!(
                "expansion bound requires r in (0, 1), got {}",
                self.r
            )));
        }
        Ok(2.0 * (self.t1 - self.t2) + 1.0)
    }
}

/// Evaluates `M_r(M_t2(p3, p2), M_t1(p2, p1))`.
pub fn three_pyramid_average(
    p1: &ManifoldPoint,
    p2: &ManifoldPoint,
    p3: &ManifoldPoint,
    params: &ThreePyramidParams,
) -> Result<ManifoldPoint> {
    let inner = |a, b, t, label: &str| geodesic_point(a, b, t).map_err(|e| annotate(e, label));
    let left = inner(p3, p2, params.t2, "inner average M_t2(p3, p2)")?;
    let right = inner(p2, p1, params.t1, "inner average M_t1(p2, p1)")?;
    inner(&left, &right, params.r, "outer average M_r")
}

fn annotate(e: Error, label: &str) -> Error {
    match e {
        Error::Domain { t, reason } => Error::Domain {
            t,
            reason: format!("{label}: {reason}"),
        },
        Error::Numeric(msg) => Error::Numeric(format!("{label}: {msg}")),
        other => other,
    }
}
