//! Sparse real polynomials `p(z) = Σ aⱼ z^{nⱼ}` viewed on the unit circle.
//!
//! Everything here is driven by the symbol `q(θ) = |p(e^{iθ})|²`, which is
//! the trigonometric polynomial `b₀ + 2 Σ b_m cos(mθ)` built from the
//! autocorrelation band of the coefficients.

mod extrema;
mod parse;
mod roots;

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_tol, Error, Result};

pub use extrema::circle_extrema;
pub(crate) use extrema::symbol_extrema;
pub use parse::parse_polynomial;
pub(crate) use roots::aberth;
pub use roots::{polynomial_roots, RootSolve};

/// Largest exponent accepted anywhere in the crate. Dense operations
/// (roots, blocks) allocate proportionally to the degree.
pub const MAX_EXPONENT: u32 = 1 << 20;

/// Default threshold on `C₁` below which a polynomial is not considered
/// strongly positive definite.
pub const DEFAULT_SPD_THRESHOLD: f64 = 1e-9;

/// Default accuracy for [`circle_extrema`].
pub const DEFAULT_EXTREMA_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub exponent: u32,
    pub coeff: f64,
}

/// A polynomial with strictly increasing exponents, the first of which is 0,
/// and nonzero real coefficients.
///
/// Inputs whose lowest exponent is positive are divided by `z^{n₀}`; the
/// removed power is kept in [`shift`](Self::shift). `|p|` on the unit circle
/// does not depend on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolynomialRepr", into = "PolynomialRepr")]
pub struct SparsePolynomial {
    terms: Vec<Term>,
    shift: u32,
}

#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    terms: Vec<Term>,
    #[serde(default)]
    shift: u32,
}

impl TryFrom<PolynomialRepr> for SparsePolynomial {
    type Error = Error;

    fn try_from(repr: PolynomialRepr) -> Result<Self> {
        let mut p = SparsePolynomial::from_terms(repr.terms.iter().map(|t| (t.exponent, t.coeff)))?;
        p.shift += repr.shift;
        Ok(p)
    }
}

impl From<SparsePolynomial> for PolynomialRepr {
    fn from(p: SparsePolynomial) -> Self {
        PolynomialRepr {
            terms: p.terms,
            shift: p.shift,
        }
    }
}

impl SparsePolynomial {
    /// Builds a polynomial from `(exponent, coefficient)` pairs in any order.
    /// Equal exponents are combined and resulting zero coefficients dropped.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, f64)>,
    {
        let mut combined: BTreeMap<u32, f64> = BTreeMap::new();
        for (exponent, coeff) in terms {
            if !coeff.is_finite() {
                return Err(Error::InvalidPolynomial(format!(
                    "coefficient of z^{exponent} is not finite"
                )));
            }
            if exponent > MAX_EXPONENT {
                return Err(Error::InvalidPolynomial(format!(
                    "exponent {exponent} exceeds the maximum of {MAX_EXPONENT}"
                )));
            }
            *combined.entry(exponent).or_insert(0.0) += coeff;
        }
        combined.retain(|_, c| *c != 0.0);
        let shift = match combined.keys().next() {
            Some(&first) => first,
            None => {
                return Err(Error::InvalidPolynomial(
                    "polynomial has no nonzero coefficient".into(),
                ))
            }
        };
        let terms = combined
            .into_iter()
            .map(|(exponent, coeff)| Term {
                exponent: exponent - shift,
                coeff,
            })
            .collect();
        Ok(SparsePolynomial { terms, shift })
    }

    pub fn constant(c: f64) -> Result<Self> {
        Self::from_terms([(0, c)])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.iter().map(|t| t.exponent)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = f64> + '_ {
        self.terms.iter().map(|t| t.coeff)
    }

    /// Power of `z` divided out during normalization.
    pub fn shift(&self) -> u32 {
        self.shift
    }

    /// Largest exponent `n_k`.
    pub fn degree(&self) -> u32 {
        self.terms.last().map_or(0, |t| t.exponent)
    }

    /// Σ|aⱼ|; `(Σ|aⱼ|)²` caps the symbol.
    pub fn abs_sum(&self) -> f64 {
        self.coeffs().map(f64::abs).sum()
    }

    pub fn sum_sq(&self) -> f64 {
        self.coeffs().map(|c| c * c).sum()
    }

    /// Dense coefficient vector `[c₀, c₁, …, c_{n_k}]`.
    pub fn dense_coeffs(&self) -> Vec<f64> {
        let mut dense = vec![0.0; self.degree() as usize + 1];
        for t in &self.terms {
            dense[t.exponent as usize] = t.coeff;
        }
        dense
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| z.powu(t.exponent) * t.coeff)
            .sum()
    }

    /// `p(e^{iθ})`.
    pub fn eval_on_circle(&self, theta: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| Complex64::from_polar(t.coeff, t.exponent as f64 * theta))
            .sum()
    }

    /// `|p(e^{iθ})|²` by direct complex evaluation.
    pub fn magnitude_sq(&self, theta: f64) -> f64 {
        self.eval_on_circle(theta).norm_sqr()
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::from_terms(self.terms.iter().map(|t| (t.exponent, t.coeff * factor)))
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            let magnitude = t.coeff.abs();
            match (i, t.coeff < 0.0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if t.exponent == 0 || magnitude != 1.0 {
                write!(f, "{magnitude}")?;
            }
            match t.exponent {
                0 => {}
                1 => f.write_str("z")?,
                e => write!(f, "z^{e}")?,
            }
        }
        Ok(())
    }
}

/// The band `b₀ … b_N` of a symmetric banded Toeplitz matrix.
///
/// When produced by [`autocorrelation`], the symbol `b₀ + 2Σ b_m cos(mθ)`
/// equals `|p(e^{iθ})|²` and is therefore nonnegative. Bands constructed with
/// [`from_band`](Self::from_band) carry no such guarantee.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct AutocorrSequence {
    values: Vec<f64>,
}

impl TryFrom<Vec<f64>> for AutocorrSequence {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::from_band(values)
    }
}

impl From<AutocorrSequence> for Vec<f64> {
    fn from(b: AutocorrSequence) -> Self {
        b.values
    }
}

impl AutocorrSequence {
    /// Validates an arbitrary band: finite values, `b₀ > 0`. Trailing zeros
    /// are trimmed so that the last entry is nonzero.
    pub fn from_band(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidBand(
                "band contains a non-finite value".into(),
            ));
        }
        while values.len() > 1 && values.last() == Some(&0.0) {
            values.pop();
        }
        match values.first() {
            None => Err(Error::InvalidBand("band is empty".into())),
            Some(&b0) if b0 <= 0.0 => {
                Err(Error::InvalidBand(format!("b0 must be positive, got {b0}")))
            }
            Some(_) => Ok(AutocorrSequence { values }),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn b0(&self) -> f64 {
        self.values[0]
    }

    /// `N`, the half-bandwidth.
    pub fn degree(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, lag: usize) -> f64 {
        self.values.get(lag).copied().unwrap_or(0.0)
    }

    /// `q(θ) = b₀ + 2 Σ b_m cos(mθ)`.
    pub fn symbol(&self, theta: f64) -> f64 {
        let tail: f64 = self.values[1..]
            .iter()
            .enumerate()
            .map(|(m, b)| b * ((m + 1) as f64 * theta).cos())
            .sum();
        self.values[0] + 2.0 * tail
    }
}

/// `b_m = Σ aᵢaⱼ` over term pairs with `nⱼ - nᵢ = m`.
pub fn autocorrelation(p: &SparsePolynomial) -> AutocorrSequence {
    let terms = p.terms();
    let mut values = vec![0.0; p.degree() as usize + 1];
    for (i, ti) in terms.iter().enumerate() {
        for tj in &terms[i..] {
            values[(tj.exponent - ti.exponent) as usize] += ti.coeff * tj.coeff;
        }
    }
    AutocorrSequence { values }
}

pub fn symbol_eval(b: &AutocorrSequence, theta: f64) -> f64 {
    b.symbol(theta)
}

/// `C₁ = min |p|²` and `C₂ = max |p|²` over the unit circle, with the angles
/// where they are attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralBounds {
    pub c1: f64,
    pub c2: f64,
    pub theta_min: f64,
    pub theta_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitRoot {
    /// Argument of the root in `[0, 2π)`.
    pub angle: f64,
    /// `|p(e^{i·angle})|`.
    pub residual: f64,
    pub modulus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitRootReport {
    pub roots: Vec<UnitRoot>,
    pub spd: bool,
    pub c1: f64,
    pub threshold: f64,
}

/// Decides strong positive definiteness of the quadratic form attached to
/// `p` by thresholding `C₁`, and lists the roots lying near the unit circle.
pub fn spd_verdict(p: &SparsePolynomial, threshold: f64) -> Result<UnitRootReport> {
    check_tol(threshold)?;
    let bounds = circle_extrema(p, DEFAULT_EXTREMA_TOL)?;
    let margin = threshold.sqrt();
    let mut roots = Vec::new();
    if p.degree() > 0 {
        let solve = aberth(&p.dense_coeffs(), roots::MAX_ITERATIONS);
        for z in solve.roots {
            let modulus = z.norm();
            if (modulus - 1.0).abs() < margin {
                let angle = z.arg().rem_euclid(TAU);
                roots.push(UnitRoot {
                    angle,
                    residual: p.eval_on_circle(angle).norm(),
                    modulus,
                });
            }
        }
        roots.sort_by(|a, b| a.angle.total_cmp(&b.angle));
    }
    Ok(UnitRootReport {
        roots,
        spd: bounds.c1 > threshold,
        c1: bounds.c1,
        threshold,
    })
}
