use serde::{Deserialize, Serialize};

use crate::error::{check_tol, Error, Result};

pub const DEFAULT_EIGEN_TOL: f64 = 1e-12;
pub const DIM_CAP: usize = 2048;
const MAX_SWEEPS: usize = 100;

/// Dense symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        SymMatrix { dim, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if let Some((i, _)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim) {
            return Err(Error::InvalidArgument(format!(
                "row {i} has {} entries, expected {dim}",
                rows[i].len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, other) in rows.iter().enumerate().skip(i + 1) {
                let (a, b) = (row[j], other[i]);
                if !a.is_finite() || (a - b).abs() > 1e-12 * a.abs().max(b.abs()).max(1.0) {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self::from_fn(dim, |i, j| rows[i][j]))
    }

    /// One row per line, entries separated by commas. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn from_csv(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .enumerate()
            .map(|(line, l)| {
                l.split(',')
                    .map(|cell| {
                        cell.trim().parse::<f64>().map_err(|_| {
                            Error::InvalidArgument(format!(
                                "row {line}: bad entry {:?}",
                                cell.trim()
                            ))
                        })
                    })
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&rows)
    }

    pub fn to_csv(&self) -> String {
        self.rows()
            .iter()
            .map(|r| r.iter().map(f64::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data
            .chunks(self.dim.max(1))
            .map(<[f64]>::to_vec)
            .collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim, "vector length must match dimension");
        self.data
            .chunks(self.dim)
            .zip(x)
            .map(|(row, xi)| xi * row.iter().zip(x).map(|(m, xj)| m * xj).sum::<f64>())
            .sum()
    }
}

impl AsRef<SymMatrix> for SymMatrix {
    fn as_ref(&self) -> &SymMatrix {
        self
    }
}

/// Eigenvalues in ascending order together with the relative off-diagonal
/// norm left when the iteration stopped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub offdiag_residual: f64,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

/// Cyclic Jacobi: sweep over every `(p, q)` pair, annihilating `a_pq` with a
/// plane rotation, until the off-diagonal Frobenius norm drops below
/// `tol·‖M‖_F`. Works on a private copy.
pub fn symmetric_eigenvalues(m: impl AsRef<SymMatrix>, tol: f64) -> Result<Spectrum> {
    check_tol(tol)?;
    let m = m.as_ref();
    let d = m.dim;
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if d > DIM_CAP {
        return Err(Error::DimensionCap {
            dim: d,
            cap: DIM_CAP,
        });
    }
    let norm = m.frobenius();
    let mut a = m.data.clone();
    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    s += a[i * d + j] * a[i * d + j];
                }
            }
        }
        s.sqrt()
    };

    let mut off = off_norm(&a);
    let mut sweeps = 0;
    while off > tol * norm {
        if sweeps == MAX_SWEEPS {
            return Err(Error::EigenNotConverged {
                sweeps,
                residual: off / norm,
            });
        }
        sweeps += 1;
        for p in 0..d {
            for q in p + 1..d {
                let apq = a[p * d + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * d + q] - a[p * d + p]) / (2.0 * apq);
                let t = if theta.is_finite() {
                    theta.signum() / (theta.abs() + theta.hypot(1.0))
                } else {
                    0.0
                };
                if t == 0.0 {
                    a[p * d + q] = 0.0;
                    a[q * d + p] = 0.0;
                    continue;
                }
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for k in 0..d {
                    let (akp, akq) = (a[k * d + p], a[k * d + q]);
                    a[k * d + p] = c * akp - s * akq;
                    a[k * d + q] = s * akp + c * akq;
                }
                for k in 0..d {
                    let (apk, aqk) = (a[p * d + k], a[q * d + k]);
                    a[p * d + k] = c * apk - s * aqk;
                    a[q * d + k] = s * apk + c * aqk;
                }
                a[p * d + q] = 0.0;
                a[q * d + p] = 0.0;
            }
        }
        off = off_norm(&a);
    }

    let mut eigenvalues: Vec<f64> = (0..d).map(|i| a[i * d + i]).collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(Spectrum {
        eigenvalues,
        offdiag_residual: if norm == 0.0 { 0.0 } else { off / norm },
    })
}
