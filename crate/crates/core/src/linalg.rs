//! Dense helpers for small symmetric matrices stored row-major in a flat slice.

use crate::error::{Error, Result};

const JACOBI_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `A = V diag(λ) Vᵀ` of a symmetric matrix.
#[derive(Debug, Clone)]
pub(crate) struct SymEigen {
    pub n: usize,
    pub values: Vec<f64>,
    /// Eigenvectors as columns, row-major storage.
    pub vectors: Vec<f64>,
}

impl SymEigen {
    /// Rebuilds `V diag(f(λ)) Vᵀ`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        let n = self.n;
        let fl: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let s: f64 = fl
                    .iter()
                    .enumerate()
                    .map(|(k, l)| self.vectors[i * n + k] * l * self.vectors[j * n + k])
                    .sum();
                out[i * n + j] = s;
                out[j * n + i] = s;
            }
        }
        out
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi rotations.
pub(crate) fn sym_eigen(a: &[f64], n: usize) -> Result<SymEigen> {
    debug_assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut v = identity(n);
    let scale = frobenius(a);
    if scale == 0.0 || n == 1 {
        return Ok(SymEigen {
            n,
            values: (0..n).map(|i| m[i * n + i]).collect(),
            vectors: v,
        });
    }

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off = off_diagonal_norm(&m, n);
        if off <= JACOBI_TOL * scale {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&m, n) > JACOBI_TOL * scale {
        return Err(Error::Numeric(format!(
            "Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps"
        )));
    }
    Ok(SymEigen {
        n,
        values: (0..n).map(|i| m[i * n + i]).collect(),
        vectors: v,
    })
}

pub(crate) fn identity(n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        out[i * n + i] = 1.0;
    }
    out
}

pub(crate) fn frobenius(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// `S X S` for symmetric `S`, symmetrized against round-off.
pub(crate) fn congruence(s: &[f64], x: &[f64], n: usize) -> Vec<f64> {
    let mut out = matmul(&matmul(s, x, n), s, n);
    symmetrize(&mut out, n);
    out
}

pub(crate) fn symmetrize(a: &mut [f64], n: usize) {
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (a[i * n + j] + a[j * n + i]);
            a[i * n + j] = avg;
            a[j * n + i] = avg;
        }
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
