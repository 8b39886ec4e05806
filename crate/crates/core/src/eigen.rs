//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, C};
use crate::scalar::Real;

/// Inputs whose Hermitian asymmetry exceeds this are rejected.
pub const HERMITIAN_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct Eigen<T> {
    /// Ascending.
    pub values: Vec<T>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: CMatrix<T>,
}

/// Full decomposition `M = V diag(λ) V†` of a Hermitian matrix.
///
/// The input is symmetrized first, so round-off asymmetry up to
/// [`HERMITIAN_TOL`] is tolerated.
pub fn hermitian_eigen<T: Real>(m: &CMatrix<T>) -> Result<Eigen<T>> {
    let (values, vectors) = jacobi(m, true)?;
    let vectors = vectors.expect("vectors requested");
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
    let n = values.len();
    let sorted_vecs = CMatrix::from_fn(n, n, |i, k| vectors[(i, order[k])]);
    Ok(Eigen { values: order.iter().map(|&k| values[k]).collect(), vectors: sorted_vecs })
}

/// Ascending eigenvalues only; skips accumulating the rotation.
pub fn hermitian_eigenvalues<T: Real>(m: &CMatrix<T>) -> Result<Vec<T>> {
    let (mut values, _) = jacobi(m, false)?;
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(values)
}

fn jacobi<T: Real>(m: &CMatrix<T>, want_vectors: bool) -> Result<(Vec<T>, Option<CMatrix<T>>)> {
    if !m.is_square() {
        return Err(Error::dim(format!("eigensolve of a {}x{} matrix", m.rows(), m.cols())));
    }
    let asym = m.hermitian_asymmetry();
    let scale = T::one().max(m.max_abs());
    if asym.is_nan() || asym > T::tol(HERMITIAN_TOL) * scale {
        return Err(Error::NotHermitian { asymmetry: asym.as_f64() });
    }
    let n = m.rows();
    let mut a = m.symmetrized();
    for i in 0..n {
        a[(i, i)] = C::new(a[(i, i)].re, T::zero());
    }
    let mut v = want_vectors.then(|| CMatrix::identity(n));
    let zero = C::new(T::zero(), T::zero());

    let total: T = a.norm_sqr();
    let threshold = T::epsilon() * T::epsilon() * total;
    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off = off + a[(p, q)].norm_sqr();
            }
        }
        if off <= threshold || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == T::zero() {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // Phase e^{-iφ} turns the 2x2 block real symmetric.
                let phase = apq.conj() / mag;
                let theta = (aqq - app) / (T::lit(2.0) * mag);
                let t = {
                    let r = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    if theta < T::zero() {
                        -r
                    } else {
                        r
                    }
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;

                // A <- A W with W = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on columns p, q.
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)] * phase;
                    a[(k, p)] = akp * c - akq * s;
                    a[(k, q)] = akp * s + akq * c;
                }
                // A <- W† A on rows p, q.
                let phase_c = phase.conj();
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)] * phase_c;
                    a[(p, k)] = apk * c - aqk * s;
                    a[(q, k)] = apk * s + aqk * c;
                }
                a[(p, q)] = zero;
                a[(q, p)] = zero;
                a[(p, p)] = C::new(a[(p, p)].re, T::zero());
                a[(q, q)] = C::new(a[(q, q)].re, T::zero());

                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)] * phase;
                        v[(k, p)] = vkp * c - vkq * s;
                        v[(k, q)] = vkp * s + vkq * c;
                    }
                }
            }
        }
    }
    Ok(((0..n).map(|i| a[(i, i)].re).collect(), v))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue<T: Real>(m: &CMatrix<T>) -> Result<T> {
    Ok(hermitian_eigenvalues(m)?.first().copied().unwrap_or(T::zero()))
}
