//! Sparse polynomials on the unit circle, the banded Toeplitz quadratic forms
//! they induce, and the step-function Weyl-Heisenberg windows on the `2π`
//! lattice whose frame property is equivalent to strong positive
//! definiteness of those forms.
//!
//! The crate is split along the three mathematical objects involved:
//!
//! * [`circlepoly`]: the polynomial `p(z) = Σ aⱼ z^{nⱼ}`, its autocorrelation
//!   band, the symbol `|p(e^{iθ})|²`, its extrema and roots.
//! * [`toeplitz`]: principal blocks of the infinite matrix `AᵗA`, quadratic
//!   form evaluation, a Jacobi eigensolver and Fejér-Riesz factorization.
//! * [`frame`]: step functions, the periodization operator and the frame sums
//!   of `{e^{imt} g(t - 2πn)}`.
//!
//! [`report`] and [`repro`] compose these into serializable reports.

pub mod circlepoly;
pub mod error;
pub mod frame;
pub mod report;
pub mod repro;
pub mod toeplitz;

pub use circlepoly::{
    autocorrelation, circle_extrema, parse_polynomial, polynomial_roots, spd_verdict, symbol_eval,
    AutocorrSequence, SparsePolynomial, SpectralBounds, UnitRoot, UnitRootReport,
};
pub use error::{Error, Result};
pub use frame::{
    empirical_frame_ratio, frame_sum_direct, frame_sum_lemma, frame_verdict, h0_inner_product,
    periodize, step_window, FrameSumResult, FrameVerdict, IntervalSet, StepFunction, Truncation,
};
pub use toeplitz::{
    apply_quadratic_form, build_block, fejer_riesz_factor, matrix_quadratic_form,
    symmetric_eigenvalues, verify_block_bounds, BlockBoundReport, CoefficientVector, Factorization,
    Spectrum, SymMatrix, ToeplitzBlock,
};
