//! Small dense complex polynomials, coefficients stored lowest degree first.

use crate::error::{Error, Result};
use num_complex::Complex64;

pub type Poly = Vec<Complex64>;

pub fn eval(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Σ|c_k||z|^k, the natural scale for residuals.
pub fn eval_abs(p: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    p.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

pub fn derivative(p: &[Complex64]) -> Poly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

pub fn mul(a: &[Complex64], b: &[Complex64]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn add(a: &[Complex64], b: &[Complex64]) -> Poly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            a.get(k).copied().unwrap_or_default() + b.get(k).copied().unwrap_or_default()
        })
        .collect()
}

pub fn scale(a: &[Complex64], s: Complex64) -> Poly {
    a.iter().map(|&c| c * s).collect()
}

/// Product of linear factors (z − r).
pub fn from_roots(roots: &[Complex64]) -> Poly {
    roots.iter().fold(vec![Complex64::new(1.0, 0.0)], |acc, &r| {
        mul(&acc, &[-r, Complex64::new(1.0, 0.0)])
    })
}

/// Drops leading coefficients that are negligible relative to the largest one.
pub fn trim(p: &[Complex64], rel: f64) -> Poly {
    let big = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut out = p.to_vec();
    while let Some(last) = out.last() {
        if last.norm() <= rel * big {
            out.pop();
        } else {
            break;
        }
    }
    out
}

/// All roots by Weierstrass (Durand–Kerner) simultaneous iteration, no deflation.
/// Each root must reach relative residual `tol`, checked against `eval_abs`.
pub fn roots(p: &[Complex64], max_steps: usize, tol: f64) -> Result<Vec<Complex64>> {
    let n = p.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = p[n];
    if lead.norm() == 0.0 {
        return Err(Error::DegenerateParameters("zero leading coefficient"));
    }
    let monic: Poly = p.iter().map(|&c| c / lead).collect();
    if n == 1 {
        return Ok(vec![-monic[0]]);
    }
    // Cauchy bound for the initial circle.
    let bound = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let radius = bound.min(1e6).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    let residual = |z: &[Complex64]| -> f64 {
        z.iter()
            .map(|&r| eval(&monic, r).norm() / eval_abs(&monic, r).max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    };
    let mut steps = 0;
    while steps < max_steps {
        steps += 1;
        let mut moved = 0.0f64;
        for i in 0..n {
            let zi = z[i];
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    denom *= zi - zj;
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-300, 0.0);
            }
            let step = eval(&monic, zi) / denom;
            z[i] = zi - step;
            moved = moved.max(step.norm() / (1.0 + zi.norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    // Newton polish for a couple of steps.
    let d = derivative(&monic);
    for r in z.iter_mut() {
        for _ in 0..3 {
            let dv = eval(&d, *r);
            if dv.norm() == 0.0 {
                break;
            }
            let next = *r - eval(&monic, *r) / dv;
            if eval(&monic, next).norm() <= eval(&monic, *r).norm() {
                *r = next;
            } else {
                break;
            }
        }
    }
    let res = residual(&z);
    if res < tol {
        Ok(z)
    } else {
        Err(Error::NoConvergence {
            iterations: steps,
            residual: res,
        })
    }
}

/// Both roots of a z² + b z + c, ordered with the principal square root first.
pub fn quadratic_roots(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 2] {
    let disc = (b * b - a * c * 4.0).sqrt();
    // Stable pairing: compute the larger-magnitude root first.
    let q1 = -b + disc;
    let q2 = -b - disc;
    let (r_plus, r_minus) = if q1.norm() >= q2.norm() {
        let r1 = q1 / (a * 2.0);
        let r2 = if r1.norm() > 0.0 { c / (a * r1) } else { q2 / (a * 2.0) };
        (r1, r2)
    } else {
        let r2 = q2 / (a * 2.0);
        let r1 = if r2.norm() > 0.0 { c / (a * r2) } else { q1 / (a * 2.0) };
        (r1, r2)
    };
    [r_plus, r_minus]
}
