//! Step-function windows on the `2π` lattice and the frame sums of the
//! Weyl-Heisenberg system `{e^{imt} g(t - 2πn)}` they generate.
//!
//! Test functions are step functions too: with `L` pieces per period every
//! integral below has a closed form, so no quadrature enters the identities.
//! Analysis windows carry the `1/√(2π)` normalization, which makes the frame
//! bounds coincide with `C₁` and `C₂`.

mod sums;
mod verdict;

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::circlepoly::SparsePolynomial;
use crate::error::{Error, Result};
use crate::toeplitz::CoefficientVector;

pub use sums::{frame_sum_direct, frame_sum_lemma, FrameSumResult, Truncation, DEFAULT_M_MAX};
pub use verdict::{empirical_frame_ratio, frame_verdict, FrameVerdict, RatioRange};

/// A real function that is constant on each piece
/// `[2πq/L, 2π(q+1)/L)` and vanishes outside finitely many pieces.
///
/// With `L = 1` the pieces are the lattice intervals `[0, 2π) + 2πn`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StepFunctionRepr", into = "StepFunctionRepr")]
pub struct StepFunction {
    resolution: u32,
    entries: BTreeMap<i64, f64>,
}

#[derive(Serialize, Deserialize)]
struct StepFunctionRepr {
    resolution: u32,
    entries: Vec<(i64, f64)>,
}

impl TryFrom<StepFunctionRepr> for StepFunction {
    type Error = Error;

    fn try_from(repr: StepFunctionRepr) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        if let Some((index, _)) = repr.entries.iter().find(|(i, _)| !seen.insert(*i)) {
            return Err(Error::InvalidArgument(format!(
                "duplicate piece index {index}"
            )));
        }
        StepFunction::new(repr.resolution, repr.entries)
    }
}

impl From<StepFunction> for StepFunctionRepr {
    fn from(f: StepFunction) -> Self {
        StepFunctionRepr {
            resolution: f.resolution,
            entries: f.entries.into_iter().collect(),
        }
    }
}

impl StepFunction {
    /// Entries with repeated indices are summed; zeros are dropped.
    pub fn new(resolution: u32, entries: impl IntoIterator<Item = (i64, f64)>) -> Result<Self> {
        if resolution == 0 {
            return Err(Error::InvalidArgument(
                "resolution must be at least 1".into(),
            ));
        }
        let mut map = BTreeMap::new();
        for (index, value) in entries {
            if !value.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "value on piece {index} is not finite"
                )));
            }
            *map.entry(index).or_insert(0.0) += value;
        }
        map.retain(|_, v| *v != 0.0);
        Ok(StepFunction {
            resolution,
            entries: map,
        })
    }

    pub fn zero(resolution: u32) -> Result<Self> {
        Self::new(resolution, [])
    }

    /// `f(ξ) = x_n` on `[0, 2π) + 2πn`.
    pub fn from_lattice(x: &CoefficientVector) -> Self {
        let entries = x
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| (x.offset + i as i64, v));
        Self::new(1, entries).expect("resolution 1 is valid")
    }

    /// Same function on a grid with `factor` times as many pieces.
    pub fn refine(&self, factor: u32) -> Result<Self> {
        let resolution = self
            .resolution
            .checked_mul(factor)
            .filter(|_| factor > 0)
            .ok_or_else(|| Error::InvalidArgument("invalid refinement factor".into()))?;
        let entries = self.entries.iter().flat_map(|(&q, &v)| {
            (0..i64::from(factor)).map(move |s| (q * i64::from(factor) + s, v))
        });
        Self::new(resolution, entries)
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.entries.iter().map(|(&q, &v)| (q, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Value on piece `q`.
    pub fn piece(&self, q: i64) -> f64 {
        self.entries.get(&q).copied().unwrap_or(0.0)
    }

    pub fn piece_width(&self) -> f64 {
        TAU / f64::from(self.resolution)
    }

    /// Pointwise value `f(ξ)`.
    pub fn eval(&self, xi: f64) -> f64 {
        self.piece((xi / self.piece_width()).floor() as i64)
    }

    pub fn norm_sq(&self) -> f64 {
        self.piece_width() * self.entries.values().map(|v| v * v).sum::<f64>()
    }

    /// First and last lattice interval (in units of `2π`) touched by the support.
    pub fn interval_span(&self) -> Option<(i64, i64)> {
        let l = i64::from(self.resolution);
        let first = self.entries.keys().next()?;
        let last = self.entries.keys().next_back()?;
        Some((first.div_euclid(l), last.div_euclid(l)))
    }

    /// `α·self + β·other`; both must share a resolution.
    pub fn combine(&self, alpha: f64, other: &StepFunction, beta: f64) -> Result<Self> {
        if self.resolution != other.resolution {
            return Err(Error::InvalidArgument("resolutions differ".into()));
        }
        let entries = self
            .entries()
            .map(|(q, v)| (q, alpha * v))
            .chain(other.entries().map(|(q, v)| (q, beta * v)));
        Self::new(self.resolution, entries)
    }
}

/// `E = ∪ ([0, 2π) + 2πmᵢ)` for distinct integers `mᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSet {
    indices: Vec<i64>,
}

impl IntervalSet {
    pub fn new(indices: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut indices: Vec<i64> = indices.into_iter().collect();
        indices.sort_unstable();
        let before = indices.len();
        indices.dedup();
        if indices.len() != before {
            return Err(Error::InvalidArgument(
                "interval indices must be distinct".into(),
            ));
        }
        if indices.is_empty() {
            return Err(Error::InvalidArgument("interval set is empty".into()));
        }
        Ok(IntervalSet { indices })
    }

    /// The support `{n₀, …, n_k}` of the window attached to `p`.
    pub fn from_polynomial(p: &SparsePolynomial) -> Self {
        IntervalSet {
            indices: p.exponents().map(i64::from).collect(),
        }
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    /// `τ(x)`, the same for every point of `E`.
    pub fn translation_count(&self) -> usize {
        self.indices.len()
    }

    pub fn contains_interval(&self, n: i64) -> bool {
        self.indices.binary_search(&n).is_ok()
    }
}

/// `g = Σ aⱼ χ_{[0,2π) + 2πnⱼ}` at resolution 1.
pub fn step_window(p: &SparsePolynomial) -> StepFunction {
    StepFunction::new(
        1,
        p.terms().iter().map(|t| (i64::from(t.exponent), t.coeff)),
    )
    .expect("resolution 1 is valid")
}

/// The `L` piece values on `[0, 2π)` of `F(ξ) = Σ_{m∈E} f(ξ + 2πm)`.
/// `H⁰_E f` is the `2π`-periodic extension of `F` restricted to `E`.
pub fn periodize(f: &StepFunction, e: &IntervalSet) -> Vec<f64> {
    let l = i64::from(f.resolution());
    (0..l)
        .map(|s| e.indices().iter().map(|&m| f.piece(m * l + s)).sum())
        .collect()
}

/// `⟨H⁰_E f, f⟩`, computed both as `∫_E F·f` and as `‖F·χ_E‖²/(k+1)`. The
/// two must agree to `1e-10` relative.
pub fn h0_inner_product(f: &StepFunction, e: &IntervalSet) -> Result<f64> {
    let l = i64::from(f.resolution());
    let width = f.piece_width();
    let periodic = periodize(f, e);

    let direct: f64 = e
        .indices()
        .iter()
        .map(|&m| {
            (0..l)
                .map(|s| periodic[s as usize] * f.piece(m * l + s))
                .sum::<f64>()
        })
        .sum::<f64>()
        * width;

    // ‖F·χ_E‖² counts every copy of [0, 2π) inside E
    let copies = e.translation_count() as f64;
    let restricted_norm = copies * width * periodic.iter().map(|v| v * v).sum::<f64>();
    let via_norm = restricted_norm / copies;

    let local_energy: f64 = e
        .indices()
        .iter()
        .flat_map(|&m| (0..l).map(move |s| m * l + s))
        .map(|q| f.piece(q).powi(2))
        .sum::<f64>()
        * width;
    let scale = direct.abs().max(via_norm.abs()).max(1e-6 * local_energy);
    if (direct - via_norm).abs() > 1e-10 * scale {
        return Err(Error::IdentityViolation {
            what: "⟨H⁰f, f⟩ = ‖F·χ_E‖²/(k+1)",
            lhs: direct,
            rhs: via_norm,
        });
    }
    Ok(via_norm)
}
