//! Finite principal blocks of the infinite banded Toeplitz matrix `AᵗA`
//! attached to a sparse polynomial, and the quadratic form it represents.

mod eigen;
mod factor;

use serde::{Deserialize, Serialize};

use crate::circlepoly::DEFAULT_EXTREMA_TOL;
use crate::circlepoly::{autocorrelation, circle_extrema, AutocorrSequence, SparsePolynomial};
use crate::error::{Error, Result};

pub use eigen::{symmetric_eigenvalues, Spectrum, SymMatrix, DEFAULT_EIGEN_TOL, DIM_CAP};
pub use factor::{fejer_riesz_factor, Factorization, DEFAULT_FACTOR_TOL};

/// The `d × d` block `M[i][j] = b_{|i-j|}` (zero beyond the band).
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzBlock {
    band: AutocorrSequence,
    matrix: SymMatrix,
}

impl ToeplitzBlock {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn band(&self) -> &AutocorrSequence {
        &self.band
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn bandwidth(&self) -> usize {
        self.band.degree().min(self.dim() - 1)
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.matrix.get(row, col)
    }
}

impl AsRef<SymMatrix> for ToeplitzBlock {
    fn as_ref(&self) -> &SymMatrix {
        &self.matrix
    }
}

pub fn build_block(b: &AutocorrSequence, dim: usize) -> Result<ToeplitzBlock> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if dim > DIM_CAP {
        return Err(Error::DimensionCap { dim, cap: DIM_CAP });
    }
    let matrix = SymMatrix::from_fn(dim, |i, j| b.get(i.abs_diff(j)));
    Ok(ToeplitzBlock {
        band: b.clone(),
        matrix,
    })
}

/// A finitely supported real sequence `x ∈ ℓ²(ℤ)`: `x_{offset+i} = values[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientVector {
    pub offset: i64,
    pub values: Vec<f64>,
}

impl CoefficientVector {
    pub fn new(offset: i64, values: Vec<f64>) -> Self {
        CoefficientVector { offset, values }
    }

    pub fn unit(index: i64) -> Self {
        Self::new(index, vec![1.0])
    }

    pub fn get(&self, n: i64) -> f64 {
        n.checked_sub(self.offset)
            .and_then(|i| usize::try_from(i).ok())
            .and_then(|i| self.values.get(i))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    /// Index one past the last stored entry.
    pub fn end(&self) -> i64 {
        self.offset + self.values.len() as i64
    }
}

/// `Σₙ (a₀xₙ + a₁x_{n+n₁} + ⋯ + a_k x_{n+n_k})²`, summed over the finitely
/// many `n` where a window touches the support of `x`.
pub fn apply_quadratic_form(p: &SparsePolynomial, x: &CoefficientVector) -> f64 {
    if x.is_empty() {
        return 0.0;
    }
    let reach = i64::from(p.degree());
    (x.offset - reach..x.end())
        .map(|n| {
            let s: f64 = p
                .terms()
                .iter()
                .map(|t| t.coeff * x.get(n + i64::from(t.exponent)))
                .sum();
            s * s
        })
        .sum()
}

/// `xᵗMx` with `M` the block of `b` covering the support of `x`.
pub fn matrix_quadratic_form(b: &AutocorrSequence, x: &CoefficientVector) -> Result<f64> {
    if x.is_empty() {
        return Ok(0.0);
    }
    let block = build_block(b, x.len())?;
    Ok(block.matrix().quadratic_form(&x.values))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockBoundReport {
    pub dim: usize,
    pub eigenvalues: Vec<f64>,
    pub min: f64,
    pub max: f64,
    pub lower: f64,
    pub upper: f64,
    pub epsilon: f64,
    pub within: bool,
}

/// Checks that every eigenvalue of each requested block lies in
/// `[C₁ - ε, C₂ + ε]` with `ε = 1e-6·max(1, C₂)`.
pub fn verify_block_bounds(p: &SparsePolynomial, dims: &[usize]) -> Result<Vec<BlockBoundReport>> {
    if dims.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one dimension is required".into(),
        ));
    }
    let bounds = circle_extrema(p, DEFAULT_EXTREMA_TOL)?;
    let band = autocorrelation(p);
    let epsilon = 1e-6 * bounds.c2.max(1.0);
    dims.iter()
        .map(|&dim| {
            let block = build_block(&band, dim)?;
            let spectrum = symmetric_eigenvalues(&block, DEFAULT_EIGEN_TOL)?;
            let (min, max) = (spectrum.min(), spectrum.max());
            Ok(BlockBoundReport {
                dim,
                within: min >= bounds.c1 - epsilon && max <= bounds.c2 + epsilon,
                eigenvalues: spectrum.eigenvalues,
                min,
                max,
                lower: bounds.c1,
                upper: bounds.c2,
                epsilon,
            })
        })
        .collect()
}
