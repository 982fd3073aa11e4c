//! Fejér-Riesz factorization: recover a real polynomial `r` whose
//! autocorrelation is a given band, i.e. write a nonnegative symbol as
//! `|r(e^{iθ})|²`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circlepoly::{
    aberth, autocorrelation, symbol_extrema, AutocorrSequence, SparsePolynomial,
};
use crate::error::{check_tol, Error, Result};

pub const DEFAULT_FACTOR_TOL: f64 = 1e-9;
/// Roots `r`, `s` of the Laurent symbol are partners when `|r·s̄ - 1|` is below this.
const PAIR_TOL: f64 = 1e-6;
const ROOT_ITERATIONS: usize = 400;
/// Relative size below which a recovered coefficient is treated as zero.
const COEFF_CUTOFF: f64 = 1e-13;
const CLUSTER_RADIUS: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Factorization {
    pub polynomial: SparsePolynomial,
    /// `‖autocorrelation(polynomial) - b‖∞`.
    pub residual: f64,
    pub warning: Option<String>,
}

/// Factors `b` by rooting the Laurent symbol `Σ_{|m|≤N} b_{|m|} z^m`, whose
/// roots come in pairs `(r, 1/r̄)`. One root per pair is kept (the one inside
/// the unit disk; unit roots are kept with half their multiplicity) and the
/// monic product is rescaled so that `a₀·a_N = b_N`.
pub fn fejer_riesz_factor(b: &AutocorrSequence, tol: f64) -> Result<Factorization> {
    check_tol(tol)?;
    let bounds = symbol_extrema(b, tol)?;
    if bounds.c1 < -tol * b.b0().max(1.0) {
        return Err(Error::NotFactorable {
            min_symbol: bounds.c1,
            theta: bounds.theta_min,
        });
    }
    let n = b.degree();
    if n == 0 {
        let polynomial = SparsePolynomial::constant(b.b0().sqrt())?;
        return Ok(finish(b, polynomial, None));
    }

    let laurent: Vec<f64> = (0..=2 * n).map(|k| b.get(k.abs_diff(n))).collect();
    let roots = aberth(&laurent, ROOT_ITERATIONS).roots;
    let mut best = from_roots(b, &roots, n)?;
    // Multiple unit roots come back from the iteration as a spread cluster;
    // averaging the cluster restores them. Keep whichever candidate fits better.
    if let Some(merged) = merge_unit_clusters(&roots) {
        let candidate = from_roots(b, &merged, n)?;
        if candidate.residual < best.residual {
            best = candidate;
        }
    }
    Ok(best)
}

fn from_roots(b: &AutocorrSequence, roots: &[Complex64], n: usize) -> Result<Factorization> {
    let (selected, warning) = select_half(roots, n);

    // monic product Π (z - rᵢ), lowest degree first
    let mut product = vec![Complex64::new(1.0, 0.0)];
    for r in &selected {
        let mut next = vec![Complex64::new(0.0, 0.0); product.len() + 1];
        for (k, c) in product.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        product = next;
    }
    let monic: Vec<f64> = product.iter().map(|c| c.re).collect();

    let mut scale_sq = b.get(n) / monic[0];
    if !(scale_sq.is_finite() && scale_sq > 0.0) {
        // a₀a_N = b_N is inconsistent only after severe root error; fall back to b₀
        scale_sq = b.b0() / monic.iter().map(|c| c * c).sum::<f64>();
    }
    let scale = scale_sq.sqrt();
    let largest = monic.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let terms = monic
        .iter()
        .enumerate()
        .filter(|(_, c)| c.abs() > COEFF_CUTOFF * largest)
        .map(|(k, c)| (k as u32, scale * c));
    let polynomial = SparsePolynomial::from_terms(terms)?;
    Ok(finish(b, polynomial, warning))
}

/// Replaces every group of mutually close roots near the unit circle by the
/// group mean projected onto the circle. `None` if nothing was merged.
fn merge_unit_clusters(roots: &[Complex64]) -> Option<Vec<Complex64>> {
    let mut merged = roots.to_vec();
    let mut assigned = vec![false; roots.len()];
    let mut changed = false;
    for i in 0..roots.len() {
        if assigned[i] || (roots[i].norm() - 1.0).abs() > CLUSTER_RADIUS {
            continue;
        }
        let members: Vec<usize> = (i..roots.len())
            .filter(|&j| !assigned[j] && (roots[j] - roots[i]).norm() < CLUSTER_RADIUS)
            .collect();
        if members.len() < 2 {
            continue;
        }
        let mean = members.iter().map(|&j| roots[j]).sum::<Complex64>() / members.len() as f64;
        let centre = mean / mean.norm();
        for &j in &members {
            assigned[j] = true;
            merged[j] = centre;
        }
        changed = true;
    }
    changed.then_some(merged)
}

fn finish(
    b: &AutocorrSequence,
    polynomial: SparsePolynomial,
    warning: Option<String>,
) -> Factorization {
    let recovered = autocorrelation(&polynomial);
    // a dropped leading/trailing coefficient shortens the band; compare over the longer one
    let len = b.values().len().max(recovered.values().len());
    let residual = (0..len)
        .map(|m| (recovered.get(m) - b.get(m)).abs())
        .fold(0.0, f64::max);
    Factorization {
        polynomial,
        residual,
        warning,
    }
}

/// Picks `n` of the `2n` Laurent roots, one from each reflection pair.
fn select_half(roots: &[Complex64], n: usize) -> (Vec<Complex64>, Option<String>) {
    let mut order: Vec<usize> = (0..roots.len()).collect();
    // clear off-circle roots first; they pair unambiguously
    order.sort_by(|&i, &j| {
        let di = (roots[i].norm() - 1.0).abs();
        let dj = (roots[j].norm() - 1.0).abs();
        dj.total_cmp(&di)
    });
    let mut used = vec![false; roots.len()];
    let mut selected = Vec::with_capacity(n);
    for &i in &order {
        if used[i] {
            continue;
        }
        let partner = (0..roots.len())
            .filter(|&j| j != i && !used[j])
            .map(|j| (j, (roots[i] * roots[j].conj() - 1.0).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        if let Some((j, _)) = partner.filter(|&(_, gap)| gap < PAIR_TOL) {
            used[i] = true;
            used[j] = true;
            let (r, s) = (roots[i], roots[j]);
            // a unit root is its own reflection, so its two copies coincide
            selected.push(if (r - s).norm() < PAIR_TOL {
                let mean = 0.5 * (r + s);
                mean / mean.norm()
            } else if r.norm() <= s.norm() {
                r
            } else {
                s
            });
        }
    }
    let mut leftover: Vec<usize> = (0..roots.len()).filter(|&i| !used[i]).collect();
    if leftover.is_empty() {
        return (selected, None);
    }
    leftover.sort_by(|&i, &j| roots[i].norm().total_cmp(&roots[j].norm()));
    let missing = n - selected.len();
    selected.extend(leftover.iter().take(missing).map(|&i| roots[i]));
    let warning = format!(
        "{} root(s) near the unit circle could not be paired; unit roots of odd multiplicity make the factorization degenerate",
        leftover.len()
    );
    (selected, Some(warning))
}
