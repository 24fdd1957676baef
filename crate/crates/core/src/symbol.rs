//! Subdivision masks, their symbols `a(z) = Σ aᵢ zⁱ`, and the factorization
//!
//! ```text
//! a(z) = z^{-s} (1+z) ∏ (1+αⱼz)/(1+αⱼ) ∏ (1+2Re(αₖ)z+|αₖ|²z²)/(1+2Re(αₖ)+|αₖ|²)
//! ```
//!
//! into real factors `αⱼ` and conjugate-pair (quadratic) factors `αₖ`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::roots;

/// Tolerance on `a(1) = 2` and `a(−1) = 0`.
pub const TAU_MASK: f64 = 1e-10;
/// Tolerance for detecting the root `−1` and for conjugate pairing.
pub const TAU_ROOT: f64 = 1e-8;
/// Minimum distance of a real α from −1.
pub const TAU_NEAR: f64 = 1e-8;
/// Minimum quadratic denominator `1 + 2Re(α) + |α|²`.
pub const TAU_DEN: f64 = 1e-10;
/// Largest mask degree accepted by `factorize`.
pub const MAX_DEGREE: usize = 64;

const REAL_SNAP: f64 = 1e-8;
const ROOT_RESIDUAL: f64 = 1e-9;

/// Finitely supported mask; `coefficients[k]` multiplies `z^(first_index + k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mask {
    coefficients: Vec<f64>,
    first_index: i64,
}

/// One violated necessary condition for convergence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    /// `a(1)` differs from 2.
    SumNotTwo { value: f64 },
    /// `a(−1)` differs from 0.
    AlternatingSumNotZero { value: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SumNotTwo { value } => {
                write!(f, "a(1) = {value} (expected 2, residual {:e})", value - 2.0)
            }
            Violation::AlternatingSumNotZero { value } => {
                write!(f, "a(-1) = {value} (expected 0, residual {value:e})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaskDiagnostic {
    pub violations: Vec<Violation>,
}

impl fmt::Display for MaskDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

impl std::error::Error for MaskDiagnostic {}

impl Mask {
    /// Builds a mask, trimming zero coefficients from both ends.
    pub fn new(coefficients: Vec<f64>, first_index: i64) -> Result<Self> {
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidSymbol("non-finite mask coefficient".into()));
        }
        let Some(start) = coefficients.iter().position(|&c| c != 0.0) else {
            return Err(Error::InvalidSymbol(
                "mask has no nonzero coefficient".into(),
            ));
        };
        let end = coefficients
            .iter()
            .rposition(|&c| c != 0.0)
            .unwrap_or(start);
        Ok(Self {
            coefficients: coefficients[start..=end].to_vec(),
            first_index: first_index + start as i64,
        })
    }

    /// Degree-`m` B-spline mask `(1+z)^{m+1} / 2^m`.
    pub fn bspline(degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidSymbol(
                "B-spline degree must be at least 1".into(),
            ));
        }
        let mut c = vec![1.0];
        for _ in 0..=degree {
            c = convolve(&c, &[1.0, 1.0]);
        }
        let scale = 0.5f64.powi(degree as i32);
        Self::new(c.into_iter().map(|x| x * scale).collect(), 0)
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn first_index(&self) -> i64 {
        self.first_index
    }

    /// Index of the last coefficient.
    pub fn last_index(&self) -> i64 {
        self.first_index + self.coefficients.len() as i64 - 1
    }

    /// Coefficient `a_i`, zero outside the support.
    pub fn coefficient(&self, i: i64) -> f64 {
        let k = i - self.first_index;
        if k < 0 {
            return 0.0;
        }
        self.coefficients.get(k as usize).copied().unwrap_or(0.0)
    }

    /// Degree of `z^{-first_index} a(z)`.
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `a(1)`.
    pub fn sum(&self) -> f64 {
        self.coefficients.iter().sum()
    }

    /// `a(−1) = Σ (−1)^i a_i`.
    pub fn alternating_sum(&self) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if (self.first_index + k as i64).rem_euclid(2) == 0 {
                    *c
                } else {
                    -*c
                }
            })
            .sum()
    }

    /// Checks the necessary conditions `a(1) = 2` and `a(−1) = 0`.
    pub fn validate(&self) -> std::result::Result<(), MaskDiagnostic> {
        let mut violations = Vec::new();
        let sum = self.sum();
        if (sum - 2.0).abs() > TAU_MASK {
            violations.push(Violation::SumNotTwo { value: sum });
        }
        let alt = self.alternating_sum();
        if alt.abs() > TAU_MASK {
            violations.push(Violation::AlternatingSumNotZero { value: alt });
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(MaskDiagnostic { violations })
        }
    }

    /// Splits the symbol into its shift, real and quadratic factors, ordered
    /// so the leading real factor is the most contracting one.
    pub fn factorize(&self) -> Result<SymbolFactorization> {
        self.validate()
            .map_err(|d| Error::InvalidSymbol(format!("mask fails necessary conditions: {d}")))?;
        if self.degree() > MAX_DEGREE {
            return Err(Error::InvalidSymbol(format!(
                "mask degree {} exceeds {MAX_DEGREE}",
                self.degree()
            )));
        }
        let shift = -self.first_index;
        let poly = &self.coefficients;

        let (mut rest, remainder) = divide_by_one_plus_z(poly);
        if remainder.abs() > TAU_ROOT * l1(poly) {
            return Err(Error::InvalidSymbol(format!(
                "symbol has no root at -1 (remainder {remainder:e})"
            )));
        }

        // further roots at -1 are α = 1 factors
        let mut real_alphas = Vec::new();
        while rest.len() > 1 {
            let (q, r) = divide_by_one_plus_z(&rest);
            if r.abs() > TAU_ROOT * l1(&rest) {
                break;
            }
            real_alphas.push(1.0);
            rest = q;
        }

        // deflation rounds the quotient; polish simple roots against the full symbol
        let mut found = roots::polynomial_roots(&rest)?;
        let snapshot = found.clone();
        for (i, r) in found.iter_mut().enumerate() {
            let repeated = snapshot
                .iter()
                .enumerate()
                .any(|(j, o)| j != i && (*o - *r).norm() <= 1e-12 * (1.0 + r.norm()));
            if !repeated {
                *r = roots::polish_simple(poly, *r);
            }
        }
        for r in &found {
            let residual = roots::eval(&rest, *r).norm();
            if residual > ROOT_RESIDUAL * roots::eval_scale(&rest, *r) {
                return Err(Error::Numeric(format!(
                    "root {r} has residual {residual:e} beyond tolerance"
                )));
            }
        }

        let mut upper = Vec::new();
        let mut lower = Vec::new();
        for r in found {
            if r.im.abs() <= REAL_SNAP * (1.0 + r.re.abs()) {
                let alpha = -1.0 / r.re;
                if (alpha + 1.0).abs() <= TAU_NEAR {
                    return Err(Error::InvalidSymbol(
                        "symbol has a root at 1 (factor normalization 1/(1+α) undefined)".into(),
                    ));
                }
                real_alphas.push(alpha);
            } else if r.im > 0.0 {
                upper.push(r);
            } else {
                lower.push(r);
            }
        }
        if upper.len() != lower.len() {
            return Err(Error::Numeric(
                "complex roots do not come in conjugate pairs".into(),
            ));
        }
        let mut quadratic_alphas = Vec::with_capacity(upper.len());
        for r in upper {
            let (pos, mate) = lower
                .iter()
                .enumerate()
                .map(|(i, w)| (i, (r - w.conj()).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .ok_or_else(|| Error::Numeric("unpaired complex root".into()))?;
            if mate > TAU_ROOT * (1.0 + r.norm()) {
                return Err(Error::Numeric(format!(
                    "complex root {r} has no conjugate within tolerance (gap {mate:e})"
                )));
            }
            let partner = lower.swap_remove(pos);
            let centre = 0.5 * (r + partner.conj());
            quadratic_alphas.push(-centre.inv());
        }

        let f = SymbolFactorization::new(shift, real_alphas, quadratic_alphas)?;
        Ok(f.order_factors().factorization)
    }
}

fn l1(c: &[f64]) -> f64 {
    c.iter().map(|x| x.abs()).sum()
}

/// Synthetic division of `Σ c_k z^k` by `(1 + z)`; returns quotient and remainder `p(−1)`.
fn divide_by_one_plus_z(c: &[f64]) -> (Vec<f64>, f64) {
    let n = c.len() - 1;
    if n == 0 {
        return (Vec::new(), c[0]);
    }
    let mut q = vec![0.0; n];
    let mut carry = 0.0;
    for k in (0..=n).rev() {
        let v = c[k] - carry;
        if k == 0 {
            return (q, v);
        }
        q[k - 1] = v;
        carry = v;
    }
    unreachable!()
}

pub(crate) fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// One factor of the symbol beyond `(1 + z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Factor {
    /// `(1 + αz)/(1 + α)`.
    Real(f64),
    /// `(1 + 2Re(α)z + |α|²z²)/(1 + 2Re(α) + |α|²)`, α with positive imaginary part.
    Quadratic(Complex64),
}

impl Factor {
    /// True for a real factor with α > 0.
    pub fn is_positive(&self) -> bool {
        matches!(self, Factor::Real(a) if *a > 0.0)
    }

    /// Number of symbol roots the factor carries.
    pub fn degree(&self) -> usize {
        match self {
            Factor::Real(_) => 1,
            Factor::Quadratic(_) => 2,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Real(a) => write!(f, "{a}"),
            Factor::Quadratic(a) => write!(f, "{}{:+}i", a.re, a.im),
        }
    }
}

/// `max(1/(1+α), α/(1+α))`, the contraction of one positive real factor.
pub fn contraction_of(alpha: f64) -> f64 {
    (1.0 / (1.0 + alpha)).max(alpha / (1.0 + alpha))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymbolFactorization {
    shift: i64,
    real_alphas: Vec<f64>,
    quadratic_alphas: Vec<Complex64>,
}

/// Result of [`SymbolFactorization::order_factors`].
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedFactorization {
    pub factorization: SymbolFactorization,
    /// False when no positive real α exists; the ordering is then only nominal.
    pub has_contracting_lead: bool,
}

impl SymbolFactorization {
    /// Validates the factors. Quadratic αs given with negative imaginary part
    /// are replaced by their conjugate.
    pub fn new(
        shift: i64,
        real_alphas: Vec<f64>,
        quadratic_alphas: Vec<Complex64>,
    ) -> Result<Self> {
        for &a in &real_alphas {
            if !a.is_finite() || a == 0.0 {
                return Err(Error::InvalidSymbol(format!(
                    "real factor α = {a} is not allowed"
                )));
            }
            if (a + 1.0).abs() <= TAU_NEAR {
                return Err(Error::InvalidSymbol(format!(
                    "real factor α = {a} is too close to -1"
                )));
            }
        }
        let mut quads = Vec::with_capacity(quadratic_alphas.len());
        for a in quadratic_alphas {
            if !a.is_finite() || a.im == 0.0 {
                return Err(Error::InvalidSymbol(format!(
                    "quadratic factor α = {a} must be non-real"
                )));
            }
            let den = quadratic_denominator(a);
            if den <= TAU_DEN {
                return Err(Error::InvalidSymbol(format!(
                    "quadratic factor α = {a} has denominator {den:e}"
                )));
            }
            quads.push(if a.im < 0.0 { a.conj() } else { a });
        }
        Ok(Self {
            shift,
            real_alphas,
            quadratic_alphas: quads,
        })
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn real_alphas(&self) -> &[f64] {
        &self.real_alphas
    }

    pub fn quadratic_alphas(&self) -> &[Complex64] {
        &self.quadratic_alphas
    }

    /// Number of roots besides the split-off `−1`: `m₁ + 2m₂`.
    pub fn degree(&self) -> usize {
        self.real_alphas.len() + 2 * self.quadratic_alphas.len()
    }

    /// Real factors in order, then quadratic factors.
    pub fn factors(&self) -> impl Iterator<Item = Factor> + '_ {
        self.real_alphas
            .iter()
            .map(|&a| Factor::Real(a))
            .chain(self.quadratic_alphas.iter().map(|&a| Factor::Quadratic(a)))
    }

    /// Moves the positive α minimizing `max(1/(1+α), α/(1+α))` to the front
    /// (ties go to the α nearest 1), then the other positive αs, then the
    /// negative ones. Relative order is otherwise preserved.
    pub fn order_factors(&self) -> OrderedFactorization {
        let lead = self
            .real_alphas
            .iter()
            .enumerate()
            .filter(|(_, a)| **a > 0.0)
            .min_by(|(_, a), (_, b)| {
                contraction_of(**a)
                    .total_cmp(&contraction_of(**b))
                    .then_with(|| (**a - 1.0).abs().total_cmp(&(**b - 1.0).abs()))
            })
            .map(|(i, _)| i);
        let Some(lead) = lead else {
            return OrderedFactorization {
                factorization: self.clone(),
                has_contracting_lead: false,
            };
        };
        let mut ordered = vec![self.real_alphas[lead]];
        let rest = self
            .real_alphas
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != lead);
        ordered.extend(rest.clone().filter(|(_, a)| **a > 0.0).map(|(_, a)| *a));
        ordered.extend(rest.filter(|(_, a)| **a < 0.0).map(|(_, a)| *a));
        OrderedFactorization {
            factorization: Self {
                shift: self.shift,
                real_alphas: ordered,
                quadratic_alphas: self.quadratic_alphas.clone(),
            },
            has_contracting_lead: true,
        }
    }

    /// Expands the factored symbol back into mask coefficients.
    pub fn reconstruct(&self) -> Mask {
        let mut c = vec![1.0, 1.0];
        for &a in &self.real_alphas {
            c = convolve(&c, &[1.0 / (1.0 + a), a / (1.0 + a)]);
        }
        for &a in &self.quadratic_alphas {
            let den = quadratic_denominator(a);
            c = convolve(&c, &[1.0 / den, 2.0 * a.re / den, a.norm_sqr() / den]);
        }
        Mask::new(c, -self.shift).expect("factored symbols have nonzero end coefficients")
    }
}

/// `1 + 2Re(α) + |α|²`.
pub fn quadratic_denominator(alpha: Complex64) -> f64 {
    1.0 + 2.0 * alpha.re + alpha.norm_sqr()
}
