//! Seeded samplers. Every sampler takes its own RNG so callers can shard
//! work by seed and still get bit-identical results.

use crate::matrix::{CMatrix, C};
use crate::scalar::Real;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_gaussian<T: Real>(rng: &mut impl Rng) -> C<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C::new(T::lit(re), T::lit(im))
}

/// Ginibre matrix: i.i.d. standard complex Gaussian entries.
pub fn ginibre<T: Real>(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix<T> {
    CMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-distributed unitary via Gram–Schmidt on a Ginibre matrix.
pub fn haar_unitary<T: Real>(dim: usize, rng: &mut impl Rng) -> CMatrix<T> {
    let g = ginibre::<T>(dim, dim, rng);
    let mut cols: Vec<Vec<C<T>>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v: Vec<C<T>> = (0..dim).map(|i| g[(i, j)]).collect();
        // Two passes keep the columns orthogonal to working precision.
        for _ in 0..2 {
            for u in &cols {
                let proj: C<T> = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi = *vi - ui * proj;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    CMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// Normalised Gaussian vector, i.e. a uniformly random pure state.
pub fn random_unit_vector<T: Real>(dim: usize, rng: &mut impl Rng) -> Vec<C<T>> {
    let v: Vec<C<T>> = (0..dim).map(|_| complex_gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}
