//! Seeded random inputs for the stochastic estimators and demo suites.
//!
//! Everything stochastic in this crate flows through a caller-supplied
//! 64-bit seed; identical seeds give identical streams on every platform.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::space::{lp_norm, PExp};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_vector(dim: usize, rng: &mut ChaCha8Rng) -> DVector<Complex64> {
    DVector::from_fn(dim, |_, _| random_complex(rng))
}

/// A random vector normalized to unit `p`-norm. Redraws in the measure-zero
/// event of an all-zero sample.
pub fn random_unit_vector(dim: usize, p: PExp, rng: &mut ChaCha8Rng) -> DVector<Complex64> {
    loop {
        let v = random_vector(dim, rng);
        let n = lp_norm(&v, p);
        if n > 1e-6 {
            return v / Complex64::new(n, 0.0);
        }
    }
}

pub fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

/// A random vector with dyadic entries `k/2^bits`. Linear maps with small
/// integer coefficients act on such vectors without rounding, so round-trip
/// identities can be asserted bitwise.
pub fn random_dyadic_vector(dim: usize, bits: u32, rng: &mut ChaCha8Rng) -> DVector<Complex64> {
    let scale = f64::from(2u32.pow(bits));
    let range = 2i64.pow(bits);
    DVector::from_fn(dim, |_, _| {
        Complex64::new(
            rng.gen_range(-range..=range) as f64 / scale,
            rng.gen_range(-range..=range) as f64 / scale,
        )
    })
}

/// A random matrix with dyadic entries `k/2^bits`, `|k| <= 2^bits`. Sums and
/// products of a few such entries are exact in `f64`, which the
/// exactly-idempotent model constructions rely on.
pub fn random_dyadic_matrix(
    rows: usize,
    cols: usize,
    bits: u32,
    rng: &mut ChaCha8Rng,
) -> DMatrix<Complex64> {
    let scale = f64::from(2u32.pow(bits));
    let range = 2i64.pow(bits);
    DMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(
            rng.gen_range(-range..=range) as f64 / scale,
            rng.gen_range(-range..=range) as f64 / scale,
        )
    })
}
