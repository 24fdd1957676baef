//! All complex roots of a real polynomial by Aberth–Ehrlich iteration,
//! followed by merging of root clusters produced by multiple roots.

use num_complex::Complex64;

use crate::error::{Error, Result};

const STOP_CORRECTION: f64 = 1e-13;
const MAX_ITERATIONS: usize = 200;
/// Roots closer than this (relative) are candidates for one multiple root.
const CLUSTER_RADIUS: f64 = 1e-4;
/// Relative size of the lower derivatives required to accept a merged cluster.
const CLUSTER_ACCEPT: f64 = 1e-7;

/// Horner evaluation of `p` (ascending coefficients) and its derivative.
fn eval_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

pub(crate) fn eval(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// `Σ |c_k| |z|^k`, the natural scale for the residual at `z`.
pub(crate) fn eval_scale(coeffs: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c.abs())
}

/// Double-double number `hi + lo`.
#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn renorm(hi: f64, lo: f64) -> Dd {
    let s = hi + lo;
    Dd {
        hi: s,
        lo: lo - (s - hi),
    }
}

impl Dd {
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        renorm(s, e + self.lo + o.lo)
    }

    fn mul_f(self, b: f64) -> Dd {
        let p = self.hi * b;
        let e = self.hi.mul_add(b, -p);
        renorm(p, e + self.lo * b)
    }

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

/// Horner evaluation carried in double-double precision, so the result is
/// accurate to about the rounding of the coefficients themselves.
fn eval_accurate(coeffs: &[f64], z: Complex64) -> Complex64 {
    let zero = Dd { hi: 0.0, lo: 0.0 };
    let (mut re, mut im) = (zero, zero);
    for &c in coeffs.iter().rev() {
        let new_re = re
            .mul_f(z.re)
            .add(im.mul_f(z.im).neg())
            .add(Dd { hi: c, lo: 0.0 });
        let new_im = re.mul_f(z.im).add(im.mul_f(z.re));
        re = new_re;
        im = new_im;
    }
    Complex64::new(re.hi + re.lo, im.hi + im.lo)
}

/// A few Newton steps with an accurate residual; kept only if the residual drops.
pub(crate) fn polish_simple(coeffs: &[f64], start: Complex64) -> Complex64 {
    let mut z = start;
    let mut best = eval_accurate(coeffs, z).norm();
    for _ in 0..3 {
        let p = eval_accurate(coeffs, z);
        let (_, dp) = eval_with_derivative(coeffs, z);
        let next = z - p / dp;
        if !next.is_finite() {
            break;
        }
        let r = eval_accurate(coeffs, next).norm();
        if r >= best {
            break;
        }
        best = r;
        z = next;
    }
    z
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| k as f64 * c)
        .collect()
}

/// Roots of `Σ coeffs[k] z^k`. The leading coefficient must be nonzero.
pub fn polynomial_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let degree = coeffs.len().saturating_sub(1);
    if degree == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[degree];
    if lead == 0.0 || coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Numeric("degenerate polynomial".into()));
    }
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    if degree == 1 {
        return Ok(vec![Complex64::new(-monic[0], 0.0)]);
    }

    let radius = 1.0 + monic[..degree].iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    for _ in 0..MAX_ITERATIONS {
        let mut max_correction = 0.0_f64;
        for i in 0..degree {
            let (p, dp) = eval_with_derivative(&monic, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if w.is_finite() {
                z[i] -= w;
                max_correction = max_correction.max(w.norm());
            }
        }
        if max_correction < STOP_CORRECTION {
            break;
        }
    }
    if z.iter().any(|r| !r.is_finite()) {
        return Err(Error::Numeric("root iteration diverged".into()));
    }
    Ok(merge_clusters(&monic, z))
}

/// A root of multiplicity `k` is a simple root of the `(k−1)`-th derivative;
/// Newton on that derivative recovers it to full precision.
fn polish_multiple(monic: &[f64], start: Complex64, k: usize) -> Complex64 {
    let mut d = monic.to_vec();
    for _ in 1..k {
        d = derivative(&d);
    }
    let mut z = start;
    for _ in 0..50 {
        let (p, dp) = eval_with_derivative(&d, z);
        let step = p / dp;
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    if (z - start).norm() <= CLUSTER_RADIUS * (1.0 + start.norm()) {
        z
    } else {
        start
    }
}

/// Multiple roots come out of the iteration as small rings of nearby
/// approximations; replace each ring by its centroid when the polynomial's
/// lower derivatives vanish there as they must at a multiple root.
fn merge_clusters(monic: &[f64], roots: Vec<Complex64>) -> Vec<Complex64> {
    let n = roots.len();
    let mut cluster_of: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while c[r] != r {
            r = c[r];
        }
        c[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = 1.0 + roots[i].norm().max(roots[j].norm());
            if (roots[i] - roots[j]).norm() <= CLUSTER_RADIUS * scale {
                let (ri, rj) = (find(&mut cluster_of, i), find(&mut cluster_of, j));
                cluster_of[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_index = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut cluster_of, i);
        if group_index[root] == usize::MAX {
            group_index[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[group_index[root]].push(i);
    }

    let mut out = Vec::with_capacity(n);
    for group in groups {
        if group.len() == 1 {
            out.push(polish_simple(monic, roots[group[0]]));
            continue;
        }
        let centroid = group.iter().map(|&i| roots[i]).sum::<Complex64>() / group.len() as f64;
        let centroid = polish_multiple(monic, centroid, group.len());
        let mut poly = monic.to_vec();
        let mut accept = true;
        for _ in 0..group.len() {
            let residual = eval(&poly, centroid).norm();
            let scale = eval_scale(&poly, centroid).max(f64::MIN_POSITIVE);
            if residual > CLUSTER_ACCEPT * scale {
                accept = false;
                break;
            }
            poly = derivative(&poly);
        }
        if accept {
            out.extend(std::iter::repeat_n(centroid, group.len()));
        } else {
            out.extend(group.iter().map(|&i| roots[i]));
        }
    }
    out
}
