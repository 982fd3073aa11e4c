use std::f64::consts::PI;

use super::{AutocorrSequence, SparsePolynomial, SpectralBounds};
use crate::error::{check_tol, Result};

const MIN_SAMPLES: usize = 256;
const SAMPLES_PER_DEGREE: usize = 64;
const MAX_GOLDEN_STEPS: usize = 200;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Global extrema of `|p(e^{iθ})|²`.
///
/// The symbol is even in `θ`, so only `[0, π]` is scanned: a grid of at least
/// `64·n_k` points (256 minimum) locates every local extremum, and each
/// candidate is refined by golden-section search on its bracketing triple.
pub fn circle_extrema(p: &SparsePolynomial, tol: f64) -> Result<SpectralBounds> {
    check_tol(tol)?;
    let mut bounds = extrema(|t| p.magnitude_sq(t), p.degree() as usize, tol);
    bounds.c1 = bounds.c1.max(0.0);
    Ok(bounds)
}

/// Same search applied to an arbitrary band; the minimum may be negative.
pub(crate) fn symbol_extrema(b: &AutocorrSequence, tol: f64) -> Result<SpectralBounds> {
    check_tol(tol)?;
    Ok(extrema(|t| b.symbol(t), b.degree(), tol))
}

fn extrema(q: impl Fn(f64) -> f64, degree: usize, tol: f64) -> SpectralBounds {
    if degree == 0 {
        let c = q(0.0);
        return SpectralBounds {
            c1: c,
            c2: c,
            theta_min: 0.0,
            theta_max: 0.0,
        };
    }
    let intervals = (SAMPLES_PER_DEGREE * degree).max(MIN_SAMPLES);
    let h = PI / intervals as f64;
    let samples: Vec<f64> = (0..=intervals).map(|i| q(i as f64 * h)).collect();
    // Reflection q(-θ) = q(θ) and q(π + θ) = q(π - θ) supplies the
    // missing neighbours at both ends.
    let at = |i: isize| -> f64 {
        let n = intervals as isize;
        let j = if i < 0 {
            -i
        } else if i > n {
            2 * n - i
        } else {
            i
        };
        samples[j as usize]
    };

    let mut best_min = (f64::INFINITY, 0.0);
    let mut best_max = (f64::NEG_INFINITY, 0.0);
    for i in 0..=intervals as isize {
        let (left, mid, right) = (at(i - 1), at(i), at(i + 1));
        let theta = i as f64 * h;
        let curvature = ((left - 2.0 * mid + right) / (h * h)).abs();
        let width = tol / curvature.max(1.0);
        if mid <= left && mid <= right {
            let (t, v) = golden_section(&q, theta - h, theta + h, width, false);
            if v < best_min.0 {
                best_min = (v, t);
            }
        }
        if mid >= left && mid >= right {
            let (t, v) = golden_section(&q, theta - h, theta + h, width, true);
            if v > best_max.0 {
                best_max = (v, t);
            }
        }
    }
    SpectralBounds {
        c1: best_min.0,
        c2: best_max.0,
        theta_min: fold_angle(best_min.1),
        theta_max: fold_angle(best_max.1),
    }
}

/// Maps an angle from the search range `[-h, π + h]` back into `[0, π]`.
fn fold_angle(theta: f64) -> f64 {
    if theta < 0.0 {
        -theta
    } else if theta > PI {
        2.0 * PI - theta
    } else {
        theta
    }
}

/// Returns the best point seen, not the bracket midpoint, so the result is
/// never worse than the grid sample it started from.
fn golden_section(
    q: &impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    width: f64,
    maximize: bool,
) -> (f64, f64) {
    let f = |t: f64| if maximize { -q(t) } else { q(t) };
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mid = 0.5 * (lo + hi);
    let mut best = (mid, f(mid));
    for _ in 0..MAX_GOLDEN_STEPS {
        if hi - lo <= width || hi - lo <= 4.0 * f64::EPSILON * hi.abs().max(1.0) {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        for (x, fx) in [(x1, f1), (x2, f2)] {
            if fx < best.1 {
                best = (x, fx);
            }
        }
    }
    let value = if maximize { -best.1 } else { best.1 };
    (best.0, value)
}
