//! Seeded random matrices.
//!
//! The stream is the reference SplitMix64 generator. Each uniform draw takes
//! the top 53 bits of one 64-bit output: `u = (x >> 11) * 2^-53`, mapped to
//! `2u - 1` in `[-1, 1)`. Matrices are filled row-major, so a corpus can be
//! regenerated outside Rust from the seed alone.

use rand::{Rng, SeedableRng};
pub use rand_xoshiro::SplitMix64;

use crate::dense::Matrix;

pub fn seeded(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// One uniform draw in `[-1, 1)`.
pub fn uniform_pm1<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    2.0 * u - 1.0
}

/// `rows x cols` matrix with uniform `[-1, 1)` entries drawn from `rng`.
pub fn uniform_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| uniform_pm1(rng)).collect();
    Matrix::from_vec_unchecked(rows, cols, data)
}

/// Seed for the matrix of shape `rows x cols` in a corpus keyed by `seed`.
/// The mix is one SplitMix64 step over `seed ^ (rows << 32) ^ cols`.
pub fn derive_seed(seed: u64, rows: usize, cols: usize) -> u64 {
    let key = seed ^ ((rows as u64) << 32) ^ cols as u64;
    seeded(key).next_u64()
}

/// The benchmark matrix for `(seed, rows, cols)`; depends on nothing else.
pub fn random_matrix(seed: u64, rows: usize, cols: usize) -> Matrix {
    uniform_matrix(&mut seeded(derive_seed(seed, rows, cols)), rows, cols)
}
