use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circlepoly::{circle_extrema, spd_verdict, SparsePolynomial, DEFAULT_EXTREMA_TOL};
use crate::error::{Error, Result};
use crate::toeplitz::{apply_quadratic_form, CoefficientVector};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameVerdict {
    pub is_mother_frame_wavelet: bool,
    /// `C₁ = min |p|²` on the unit circle.
    pub lower_bound: f64,
    /// `C₂ = max |p|²` on the unit circle.
    pub upper_bound: f64,
}

/// Whether `g = Σ aⱼ χ_{[0,2π)+2πnⱼ}` generates a Weyl-Heisenberg frame for
/// `(2π, 1)`, with `C₁`, `C₂` as the candidate frame bounds.
pub fn frame_verdict(p: &SparsePolynomial, threshold: f64) -> Result<FrameVerdict> {
    let report = spd_verdict(p, threshold)?;
    let bounds = circle_extrema(p, DEFAULT_EXTREMA_TOL)?;
    Ok(FrameVerdict {
        is_mother_frame_wavelet: report.spd,
        lower_bound: bounds.c1,
        upper_bound: bounds.c2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioRange {
    pub min: f64,
    pub max: f64,
    pub vectors: usize,
}

/// Extremes of the Rayleigh quotient `Q(x)/‖x‖²` over sampled `x` of the
/// given support width.
///
/// The sample holds `trials` vectors with independent uniform entries in
/// `[-1, 1]`, plus sine-tapered probes modulated at the extremizer angles of
/// `|p|²`. White noise alone concentrates near `b₀`; the probes are what make
/// the observed range approach `[C₁, C₂]` as the support grows.
pub fn empirical_frame_ratio<R: Rng + ?Sized>(
    p: &SparsePolynomial,
    trials: usize,
    support: usize,
    rng: &mut R,
) -> Result<RatioRange> {
    if trials == 0 || support == 0 {
        return Err(Error::InvalidArgument(
            "trials and support must both be at least 1".into(),
        ));
    }
    let bounds = circle_extrema(p, DEFAULT_EXTREMA_TOL)?;
    let mut range = RatioRange {
        min: f64::INFINITY,
        max: f64::NEG_INFINITY,
        vectors: 0,
    };
    let mut record = |x: Vec<f64>| {
        let x = CoefficientVector::new(0, x);
        let norm = x.norm_sq();
        if norm > 0.0 {
            let ratio = apply_quadratic_form(p, &x) / norm;
            range.min = range.min.min(ratio);
            range.max = range.max.max(ratio);
            range.vectors += 1;
        }
    };
    for _ in 0..trials {
        record((0..support).map(|_| rng.gen_range(-1.0..=1.0)).collect());
    }
    for theta in [bounds.theta_min, bounds.theta_max] {
        for phase in [0.0, PI / 2.0] {
            record(
                (0..support)
                    .map(|n| {
                        let taper = (PI * (n + 1) as f64 / (support + 1) as f64).sin();
                        taper * (theta * n as f64 + phase).cos()
                    })
                    .collect(),
            );
        }
    }
    Ok(range)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circlepoly::parse_polynomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn verdicts() {
        let v = frame_verdict(&parse_polynomial("1+z+z^3").unwrap(), 1e-9).unwrap();
        assert!(v.is_mother_frame_wavelet);
        assert!((v.lower_bound - 0.3689).abs() < 1e-3);
        assert!((v.upper_bound - 9.0).abs() < 1e-9);

        let v = frame_verdict(&parse_polynomial("-2+z+z^3").unwrap(), 1e-9).unwrap();
        assert!(!v.is_mother_frame_wavelet);
        assert!(v.lower_bound < 1e-12);

        let v = frame_verdict(&parse_polynomial("3").unwrap(), 1e-9).unwrap();
        assert!(v.is_mother_frame_wavelet);
        assert_eq!((v.lower_bound, v.upper_bound), (9.0, 9.0));
    }

    #[test]
    fn ratios_stay_within_bounds() {
        let p = parse_polynomial("1+z+z^3").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let r = empirical_frame_ratio(&p, 1000, 40, &mut rng).unwrap();
        let eps = 1e-6 * 9.0;
        assert!(r.min >= 0.3689 - 1e-3 - eps && r.max <= 9.0 + eps, "{r:?}");
        assert!(r.min < 0.45 && r.max > 8.5, "{r:?}");
    }

    #[test]
    fn single_site_ratio_is_b0() {
        let p = parse_polynomial("1+z+z^3").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = empirical_frame_ratio(&p, 5, 1, &mut rng).unwrap();
        assert!((r.min - 3.0).abs() < 1e-12 && (r.max - 3.0).abs() < 1e-12);
    }

    #[test]
    fn constant_gives_tight_ratio() {
        let p = parse_polynomial("-2").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = empirical_frame_ratio(&p, 20, 7, &mut rng).unwrap();
        assert!((r.min - 4.0).abs() < 1e-12 && (r.max - 4.0).abs() < 1e-12);
        assert!(empirical_frame_ratio(&p, 0, 7, &mut rng).is_err());
    }

    #[test]
    fn non_spd_ratio_drops() {
        let p = parse_polynomial("-2+z+z^3").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let r = empirical_frame_ratio(&p, 100, 60, &mut rng).unwrap();
        assert!(r.min < 0.05, "{r:?}");
    }
}
