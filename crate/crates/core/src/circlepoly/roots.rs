use std::f64::consts::TAU;

use num_complex::Complex64;

use super::SparsePolynomial;
use crate::error::{check_tol, Error, Result};

pub(crate) const MAX_ITERATIONS: usize = 200;
const STEP_TOL: f64 = 1e-14;

/// Outcome of the simultaneous iteration, converged or not.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSolve {
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// All `n_k` complex roots of `p`, with multiplicity.
///
/// A root is accepted when `|p(z)| ≤ tol·(Σ|aⱼ|)·max(1, |z|)^{n_k}`. Multiple
/// roots slow the iteration down to linear convergence; they are still
/// accepted when the residual test passes at the iteration cap.
pub fn polynomial_roots(p: &SparsePolynomial, tol: f64) -> Result<Vec<Complex64>> {
    check_tol(tol)?;
    if p.degree() == 0 {
        return Err(Error::InvalidArgument(
            "root finding requires degree at least 1".into(),
        ));
    }
    let solve = aberth(&p.dense_coeffs(), MAX_ITERATIONS);
    let scale = p.abs_sum();
    let n = p.degree() as i32;
    let within = solve
        .roots
        .iter()
        .zip(&solve.residuals)
        .all(|(z, r)| *r <= tol * scale * z.norm().max(1.0).powi(n));
    if within {
        Ok(solve.roots)
    } else {
        Err(Error::NotConverged {
            iterations: solve.iterations,
            worst_residual: solve.residuals.iter().copied().fold(0.0, f64::max),
            roots: solve.roots,
            residuals: solve.residuals,
        })
    }
}

/// Aberth-Ehrlich iteration on a dense coefficient vector `[c₀, …, c_n]`
/// with `c₀ ≠ 0` and `c_n ≠ 0`.
pub(crate) fn aberth(coeffs: &[f64], max_iterations: usize) -> RootSolve {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let radius = (coeffs[0] / lead).abs().powf(1.0 / n as f64);
    // Rotated off the real axis so conjugate pairs are not stuck symmetric.
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = TAU * k as f64 / n as f64 + 0.4 / n as f64 + 0.01 * (k as f64).sin();
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let reversed: Vec<f64> = coeffs.iter().rev().copied().collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iterations {
        iterations += 1;
        let mut done = true;
        for i in 0..n {
            let z = roots[i];
            let Some(ratio) = newton_ratio(coeffs, &reversed, z) else {
                continue;
            };
            let repulsion: Complex64 = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &w)| {
                    let d = z - w;
                    if d == Complex64::new(0.0, 0.0) {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom.norm() == 0.0 {
                ratio
            } else {
                ratio / denom
            };
            if !step.is_finite() {
                continue;
            }
            roots[i] = z - step;
            if step.norm() > STEP_TOL * roots[i].norm() {
                done = false;
            }
        }
        if done {
            converged = true;
            break;
        }
    }
    let residuals = roots.iter().map(|&z| horner(coeffs, z).0.norm()).collect();
    RootSolve {
        roots,
        residuals,
        iterations,
        converged,
    }
}

/// `(p(z), p'(z))`.
fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        deriv = deriv * z + value;
        value = value * z + c;
    }
    (value, deriv)
}

/// `p(z)/p'(z)`, evaluated through the reversed polynomial outside the unit
/// disk to avoid overflow. `None` when `z` is an exact root.
fn newton_ratio(coeffs: &[f64], reversed: &[f64], z: Complex64) -> Option<Complex64> {
    let n = (coeffs.len() - 1) as f64;
    if z.norm() <= 1.0 {
        let (value, deriv) = horner(coeffs, z);
        if value.norm() == 0.0 {
            return None;
        }
        Some(value / deriv)
    } else {
        // p(z) = z^n r(1/z)  ⇒  p/p' = z / (n - w r'(w)/r(w)), w = 1/z
        let w = z.inv();
        let (value, deriv) = horner(reversed, w);
        if value.norm() == 0.0 {
            return None;
        }
        Some(z / (n - w * deriv / value))
    }
}
