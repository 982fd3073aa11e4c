use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::StepFunction;
use crate::circlepoly::SparsePolynomial;
use crate::error::{Error, Result};

pub const DEFAULT_M_MAX: u64 = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    Exact,
    /// Modulations `|m| ≤ m_max` were summed.
    Modulations(u64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameSumResult {
    pub value: f64,
    pub truncation: Truncation,
    /// Contribution of each translate `n`.
    pub per_n: BTreeMap<i64, f64>,
}

impl FrameSumResult {
    fn from_terms(per_n: BTreeMap<i64, f64>, truncation: Truncation) -> Self {
        FrameSumResult {
            value: per_n.values().sum(),
            truncation,
            per_n,
        }
    }
}

/// Translates `n` whose window `g(· - 2πn)` can overlap the support of `f`.
fn translate_range(
    p: &SparsePolynomial,
    f: &StepFunction,
) -> Option<std::ops::RangeInclusive<i64>> {
    let (first, last) = f.interval_span()?;
    Some(first - i64::from(p.degree())..=last)
}

/// `Σₙ ‖Fₙ·χ_{[0,2π)}‖²` with `Fₙ(ξ) = Σⱼ aⱼ f(ξ + 2π(nⱼ + n))`; a finite,
/// exact sum equal to the full frame sum `Σ_{m,n} |⟨M_m T_{2πn} g, f⟩|²`.
pub fn frame_sum_lemma(p: &SparsePolynomial, f: &StepFunction) -> FrameSumResult {
    let mut per_n = BTreeMap::new();
    let Some(range) = translate_range(p, f) else {
        return FrameSumResult::from_terms(per_n, Truncation::Exact);
    };
    let l = i64::from(f.resolution());
    for n in range {
        let energy: f64 = (0..l)
            .map(|s| {
                let value: f64 = p
                    .terms()
                    .iter()
                    .map(|t| t.coeff * f.piece((n + i64::from(t.exponent)) * l + s))
                    .sum();
                value * value
            })
            .sum();
        if energy != 0.0 {
            per_n.insert(n, energy * f.piece_width());
        }
    }
    FrameSumResult::from_terms(per_n, Truncation::Exact)
}

/// `Σ_{|m|≤m_max} Σₙ |⟨(2π)^{-1/2} e^{imt} g(t - 2πn), f⟩|²` from closed-form
/// piece integrals `∫_α^β e^{-imt} dt = (e^{-imβ} - e^{-imα})/(-im)`.
///
/// Partial sums are non-decreasing in `m_max` and approach
/// [`frame_sum_lemma`] from below.
pub fn frame_sum_direct(
    p: &SparsePolynomial,
    f: &StepFunction,
    m_max: u64,
) -> Result<FrameSumResult> {
    if m_max == 0 {
        return Err(Error::InvalidArgument("m_max must be at least 1".into()));
    }
    let mut per_n = BTreeMap::new();
    let Some(range) = translate_range(p, f) else {
        return Ok(FrameSumResult::from_terms(
            per_n,
            Truncation::Modulations(m_max),
        ));
    };
    let l = u64::from(f.resolution());
    let first_n = *range.start();
    let count = (range.end() - first_n + 1) as usize;

    // Every (piece of f, window term) pair that overlaps: piece q lies in
    // interval q div L, which the window term j of translate n covers when
    // n + nⱼ equals it.
    let mut contributions: Vec<(usize, u64, f64)> = Vec::new();
    for (q, value) in f.entries() {
        let interval = q.div_euclid(l as i64);
        let residue = q.rem_euclid(l as i64) as u64;
        for t in p.terms() {
            let n = interval - i64::from(t.exponent);
            contributions.push(((n - first_n) as usize, residue, t.coeff * value));
        }
    }

    // e^{-i 2π k/L}; e^{-imα} at α = 2π(interval + s/L) reduces to k = m·s mod L
    let roots: Vec<Complex64> = (0..l)
        .map(|k| Complex64::from_polar(1.0, -TAU * k as f64 / l as f64))
        .collect();
    let width = TAU / l as f64;

    let mut energy = vec![0.0f64; count];
    let mut coeffs = vec![Complex64::new(0.0, 0.0); count];
    for m in 0..=m_max {
        let integrals: Vec<Complex64> = (0..l)
            .map(|s| {
                if m == 0 {
                    Complex64::new(width, 0.0)
                } else {
                    let m_mod = m % l;
                    let lo = roots[((m_mod * s) % l) as usize];
                    let hi = roots[((m_mod * (s + 1)) % l) as usize];
                    (hi - lo) / Complex64::new(0.0, -(m as f64))
                }
            })
            .collect();
        coeffs
            .iter_mut()
            .for_each(|c| *c = Complex64::new(0.0, 0.0));
        for &(slot, residue, weight) in &contributions {
            coeffs[slot] += integrals[residue as usize] * weight;
        }
        // real f and g: the coefficient at -m is the conjugate of the one at m
        let multiplicity = if m == 0 { 1.0 } else { 2.0 };
        for (e, c) in energy.iter_mut().zip(&coeffs) {
            *e += multiplicity * c.norm_sqr() / TAU;
        }
    }
    for (slot, e) in energy.into_iter().enumerate() {
        if e != 0.0 {
            per_n.insert(first_n + slot as i64, e);
        }
    }
    Ok(FrameSumResult::from_terms(
        per_n,
        Truncation::Modulations(m_max),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circlepoly::parse_polynomial;
    use crate::toeplitz::{apply_quadratic_form, CoefficientVector};
    use std::f64::consts::PI;

    #[test]
    fn unit_vector_gives_two_pi_b0() {
        let p = parse_polynomial("1+z+z^3").unwrap();
        let f = StepFunction::from_lattice(&CoefficientVector::unit(0));
        let r = frame_sum_lemma(&p, &f);
        assert!((r.value - 2.0 * PI * 3.0).abs() < 1e-12);
        assert_eq!(r.truncation, Truncation::Exact);
        assert_eq!(r.per_n.len(), 3);
        assert!(r.per_n.values().all(|&v| v > 0.0));
    }

    #[test]
    fn zero_function() {
        let p = parse_polynomial("1+z+z^3").unwrap();
        let f = StepFunction::zero(8).unwrap();
        assert_eq!(frame_sum_lemma(&p, &f).value, 0.0);
        assert_eq!(frame_sum_direct(&p, &f, 50).unwrap().value, 0.0);
        assert!(frame_sum_direct(&p, &f, 0).is_err());
    }

    #[test]
    fn non_spd_example_matches_consistent_band() {
        let p = parse_polynomial("-2+z+z^3").unwrap();
        let x = CoefficientVector::new(0, vec![1.0; 4]);
        let r = frame_sum_lemma(&p, &StepFunction::from_lattice(&x));
        // xᵗMx with the band (6, -2, 1, -2) is 12
        assert!((r.value - 2.0 * PI * 12.0).abs() < 1e-10);
        assert!((apply_quadratic_form(&p, &x) - 12.0).abs() < 1e-12);
    }

    #[test]
    fn lattice_functions_only_see_m_zero() {
        let p = parse_polynomial("2+3z^2+4z^3").unwrap();
        let f = StepFunction::from_lattice(&CoefficientVector::new(-1, vec![0.5, -1.0, 2.0]));
        let exact = frame_sum_lemma(&p, &f);
        let direct = frame_sum_direct(&p, &f, 1).unwrap();
        assert!((direct.value - exact.value).abs() <= 1e-12 * exact.value);
        let longer = frame_sum_direct(&p, &f, 200).unwrap();
        assert_eq!(longer.value, direct.value);
    }

    #[test]
    fn fine_functions_converge_monotonically() {
        let p = parse_polynomial("1+z+z^3").unwrap();
        let f = StepFunction::new(4, [(0, 1.0), (1, -2.0), (5, 0.5), (6, 3.0), (-3, 1.0)]).unwrap();
        let exact = frame_sum_lemma(&p, &f).value;
        let mut previous = 0.0;
        for m_max in [1, 10, 100, 1000, 10_000] {
            let v = frame_sum_direct(&p, &f, m_max).unwrap().value;
            assert!(v >= previous);
            assert!(v <= exact * (1.0 + 1e-12));
            previous = v;
        }
        assert!((exact - previous) / exact < 1e-3);
    }
}
