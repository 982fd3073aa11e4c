//! Serializable reports composed from the numerical modules.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circlepoly::{
    autocorrelation, circle_extrema, spd_verdict, SparsePolynomial, SpectralBounds, Term, UnitRoot,
    DEFAULT_EXTREMA_TOL, DEFAULT_SPD_THRESHOLD,
};
use crate::error::{Error, Result};
use crate::frame::{
    empirical_frame_ratio, frame_sum_direct, frame_sum_lemma, FrameVerdict, RatioRange,
    StepFunction, DEFAULT_M_MAX,
};
use crate::toeplitz::{
    fejer_riesz_factor, verify_block_bounds, BlockBoundReport, Factorization, DEFAULT_FACTOR_TOL,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialEcho {
    pub text: String,
    pub terms: Vec<Term>,
    pub shift: u32,
}

impl From<&SparsePolynomial> for PolynomialEcho {
    fn from(p: &SparsePolynomial) -> Self {
        PolynomialEcho {
            text: p.to_string(),
            terms: p.terms().to_vec(),
            shift: p.shift(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub polynomial: PolynomialEcho,
    pub autocorrelation: Vec<f64>,
    pub bounds: SpectralBounds,
    pub spd: bool,
    pub threshold: f64,
    pub unit_roots: Vec<UnitRoot>,
    pub blocks: Vec<BlockBoundReport>,
    pub frame: FrameVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factorization: Option<Factorization>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzeOptions {
    pub extrema_tol: f64,
    pub threshold: f64,
    pub dims: Vec<usize>,
    pub factor: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            extrema_tol: DEFAULT_EXTREMA_TOL,
            threshold: DEFAULT_SPD_THRESHOLD,
            dims: (2..=5).collect(),
            factor: false,
        }
    }
}

/// Everything known about `p`: band, bounds, verdicts, block spectra and,
/// on request, a Fejér-Riesz refactorization of its band.
pub fn analyze(p: &SparsePolynomial, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let bounds = circle_extrema(p, opts.extrema_tol)?;
    let roots = spd_verdict(p, opts.threshold)?;
    let spd = bounds.c1 > opts.threshold;
    let band = autocorrelation(p);
    let blocks = if opts.dims.is_empty() {
        Vec::new()
    } else {
        verify_block_bounds(p, &opts.dims)?
    };
    let factorization = if opts.factor {
        Some(fejer_riesz_factor(&band, DEFAULT_FACTOR_TOL)?)
    } else {
        None
    };
    Ok(AnalysisReport {
        polynomial: p.into(),
        autocorrelation: band.values().to_vec(),
        bounds,
        spd,
        threshold: opts.threshold,
        unit_roots: roots.roots,
        blocks,
        frame: FrameVerdict {
            is_mother_frame_wavelet: spd,
            lower_bound: bounds.c1,
            upper_bound: bounds.c2,
        },
        factorization,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrameCheckOptions {
    pub trials: usize,
    pub support: usize,
    pub m_max: u64,
    pub resolution: u32,
    /// Number of random fine step functions used for the sum comparison.
    pub cases: usize,
}

impl Default for FrameCheckOptions {
    fn default() -> Self {
        FrameCheckOptions {
            trials: 1000,
            support: 40,
            m_max: DEFAULT_M_MAX,
            resolution: 8,
            cases: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SumComparison {
    pub lemma: f64,
    pub direct: f64,
    pub relative_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameCheckReport {
    pub polynomial: PolynomialEcho,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub epsilon: f64,
    pub ratios: RatioRange,
    pub ratios_within_bounds: bool,
    pub m_max: u64,
    pub resolution: u32,
    pub comparisons: Vec<SumComparison>,
    pub max_relative_gap: f64,
}

/// Random step function at `resolution` on the intervals `0..intervals`,
/// piece values uniform in `[-1, 1]`.
pub fn random_step_function<R: Rng + ?Sized>(
    rng: &mut R,
    resolution: u32,
    intervals: u32,
) -> Result<StepFunction> {
    let pieces = i64::from(resolution) * i64::from(intervals);
    StepFunction::new(
        resolution,
        (0..pieces).map(|q| (q, rng.gen_range(-1.0..=1.0))),
    )
}

/// Rayleigh quotients of the quadratic form against `[C₁, C₂]`, and the
/// truncated direct frame sum against the exact lemma sum on random fine
/// step functions.
pub fn frame_check<R: Rng + ?Sized>(
    p: &SparsePolynomial,
    opts: &FrameCheckOptions,
    rng: &mut R,
) -> Result<FrameCheckReport> {
    if opts.m_max == 0 || opts.resolution == 0 {
        return Err(Error::InvalidArgument(
            "m_max and resolution must be at least 1".into(),
        ));
    }
    let bounds = circle_extrema(p, DEFAULT_EXTREMA_TOL)?;
    let epsilon = 1e-6 * bounds.c2.max(1.0);
    let ratios = empirical_frame_ratio(p, opts.trials, opts.support, rng)?;

    let mut comparisons = Vec::with_capacity(opts.cases);
    for _ in 0..opts.cases {
        let f = random_step_function(rng, opts.resolution, 3)?;
        let lemma = frame_sum_lemma(p, &f).value;
        let direct = frame_sum_direct(p, &f, opts.m_max)?.value;
        let relative_gap = if lemma == 0.0 {
            direct.abs()
        } else {
            (lemma - direct).abs() / lemma
        };
        comparisons.push(SumComparison {
            lemma,
            direct,
            relative_gap,
        });
    }
    let max_relative_gap = comparisons
        .iter()
        .map(|c| c.relative_gap)
        .fold(0.0, f64::max);
    Ok(FrameCheckReport {
        polynomial: p.into(),
        lower_bound: bounds.c1,
        upper_bound: bounds.c2,
        epsilon,
        ratios_within_bounds: ratios.min >= bounds.c1 - epsilon
            && ratios.max <= bounds.c2 + epsilon,
        ratios,
        m_max: opts.m_max,
        resolution: opts.resolution,
        comparisons,
        max_relative_gap,
    })
}
