#![allow(dead_code)]

use gaborform::{CoefficientVector, SparsePolynomial};
use rand::seq::SliceRandom;
use rand::Rng;

/// `k + 1 ≤ max_terms` terms, exponents in `0..=max_exp` including 0,
/// coefficients uniform in `[-c, c]` with `|a| < 1e-3·c` rejected.
pub fn random_polynomial<R: Rng>(
    rng: &mut R,
    max_terms: usize,
    max_exp: u32,
    c: f64,
) -> SparsePolynomial {
    let count = rng.gen_range(1..=max_terms.min(max_exp as usize + 1));
    let mut pool: Vec<u32> = (1..=max_exp).collect();
    pool.shuffle(rng);
    let mut exponents = vec![0];
    exponents.extend(pool.into_iter().take(count - 1));
    let terms: Vec<(u32, f64)> = exponents
        .into_iter()
        .map(|e| loop {
            let a: f64 = rng.gen_range(-c..=c);
            if a.abs() >= 1e-3 * c {
                break (e, a);
            }
        })
        .collect();
    SparsePolynomial::from_terms(terms).unwrap()
}

pub fn random_vector<R: Rng>(rng: &mut R, max_len: usize) -> CoefficientVector {
    let len = rng.gen_range(1..=max_len);
    let offset = rng.gen_range(-10..=10);
    CoefficientVector::new(
        offset,
        (0..len).map(|_| rng.gen_range(-1.0..=1.0)).collect(),
    )
}
