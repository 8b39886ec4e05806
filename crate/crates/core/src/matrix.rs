//! Dense complex matrices and the bipartite index gymnastics built on them.

use crate::error::{Error, Result};
use crate::scalar::Real;
use num_complex::Complex;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

pub type C<T> = Complex<T>;

/// Which tensor factor of a bipartite space an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Dense row-major complex matrix.
///
/// Most of the crate works with square matrices (states, unitaries); Kraus
/// operators and Stinespring isometries are the rectangular exceptions.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C::new(T::zero(), T::zero()); rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = C::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from row-major data; `data.len()` must equal `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dim(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Self { rows, cols, data })
    }

    /// Square matrix from real row-major entries (test and constructor convenience).
    pub fn from_real(dim: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), dim * dim);
        Self::from_fn(dim, dim, |i, j| C::new(T::lit(entries[i * dim + j]), T::zero()))
    }

    pub fn from_diag(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C::new(d, T::zero());
        }
        m
    }

    /// Rank-one projector |v⟩⟨v| (v is not normalised here).
    pub fn outer(v: &[C<T>]) -> Self {
        Self::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Dimension of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn trace(&self) -> C<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_c(&self, s: C<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(T::zero(), T::max)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// Frobenius norm squared, `tr(M†M)`.
    pub fn norm_sqr(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `max |M[i][j] - conj(M[j][i])|`.
    pub fn hermitian_asymmetry(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(M + M†)/2`.
    pub fn symmetrized(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()) * half)
    }

    /// `M A M†` without forming the adjoint separately.
    pub fn conjugate(&self, a: &Self) -> Self {
        &(self * a) * &self.adjoint()
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = C<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a, T: Real> Add<&'a CMatrix<T>> for &'a CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a, T: Real> Sub<&'a CMatrix<T>> for &'a CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a, T: Real> Mul<&'a CMatrix<T>> for &'a CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o = *o + a * b;
                }
            }
        }
        out
    }
}

/// Kronecker product `a ⊗ b`; block `(i, j)` equals `a[i][j] · b`.
pub fn tensor<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    let (ar, ac, br, bc) = (a.rows, a.cols, b.rows, b.cols);
    CMatrix::from_fn(ar * br, ac * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}

fn check_bipartite<T: Real>(m: &CMatrix<T>, d_a: usize, d_b: usize) -> Result<()> {
    if !m.is_square() || m.rows != d_a * d_b {
        return Err(Error::dim(format!(
            "{}x{} matrix is not an operator on a {d_a}x{d_b} bipartite space",
            m.rows, m.cols
        )));
    }
    Ok(())
}

/// Reduced operator on the factor named by `keep`.
pub fn partial_trace<T: Real>(m: &CMatrix<T>, d_a: usize, d_b: usize, keep: Side) -> Result<CMatrix<T>> {
    check_bipartite(m, d_a, d_b)?;
    let d = d_a * d_b;
    let out = match keep {
        Side::A => {
            let mut out = CMatrix::zeros(d_a, d_a);
            for i in 0..d_a {
                for j in 0..d_a {
                    let mut acc = C::new(T::zero(), T::zero());
                    for k in 0..d_b {
                        acc = acc + m.data[(i * d_b + k) * d + j * d_b + k];
                    }
                    out[(i, j)] = acc;
                }
            }
            out
        }
        Side::B => {
            let mut out = CMatrix::zeros(d_b, d_b);
            for k in 0..d_a {
                for i in 0..d_b {
                    for j in 0..d_b {
                        out[(i, j)] = out[(i, j)] + m.data[(k * d_b + i) * d + k * d_b + j];
                    }
                }
            }
            out
        }
    };
    Ok(out)
}

/// Transposes the indices of one tensor factor.
pub fn partial_transpose<T: Real>(m: &CMatrix<T>, d_a: usize, d_b: usize, side: Side) -> Result<CMatrix<T>> {
    check_bipartite(m, d_a, d_b)?;
    Ok(CMatrix::from_fn(m.rows, m.cols, |r, c| {
        let (i, k) = (r / d_b, r % d_b);
        let (j, l) = (c / d_b, c % d_b);
        match side {
            Side::A => m[(j * d_b + k, i * d_b + l)],
            Side::B => m[(i * d_b + l, j * d_b + k)],
        }
    }))
}

/// Pauli matrices, useful well beyond the tests.
pub mod pauli {
    use super::*;

    pub fn x<T: Real>() -> CMatrix<T> {
        CMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0])
    }

    pub fn y<T: Real>() -> CMatrix<T> {
        let (z, i) = (C::new(T::zero(), T::zero()), C::new(T::zero(), T::one()));
        CMatrix::from_vec(2, 2, vec![z, -i, i, z]).unwrap()
    }

    pub fn z<T: Real>() -> CMatrix<T> {
        CMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = CMatrix<f64>;

    fn int_matrix(dim: usize, seed: i64) -> M {
        M::from_fn(dim, dim, |i, j| {
            let v = (seed * 7 + (i as i64) * 3 - (j as i64) * 5) % 11;
            C::new(v as f64, ((i + 2 * j) % 3) as f64 - 1.0)
        })
    }

    #[test]
    fn tensor_of_identities() {
        assert_eq!(tensor(&M::identity(2), &M::identity(2)), M::identity(4));
    }

    #[test]
    fn tensor_of_projectors() {
        let p0 = M::from_real(2, &[1.0, 0.0, 0.0, 0.0]);
        let p1 = M::from_real(2, &[0.0, 0.0, 0.0, 1.0]);
        assert_eq!(tensor(&p0, &p1), M::from_diag(&[0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn tensor_sigma_x_sigma_z_hand_expanded() {
        let t = tensor(&pauli::x::<f64>(), &pauli::z());
        let mut expect = M::zeros(4, 4);
        expect[(0, 2)] = C::new(1.0, 0.0);
        expect[(1, 3)] = C::new(-1.0, 0.0);
        expect[(2, 0)] = C::new(1.0, 0.0);
        expect[(3, 1)] = C::new(-1.0, 0.0);
        assert_eq!(t, expect);
    }

    #[test]
    fn tensor_is_associative_on_integer_matrices() {
        let (a, b, c) = (int_matrix(2, 1), int_matrix(3, 2), int_matrix(2, 3));
        assert_eq!(tensor(&tensor(&a, &b), &c), tensor(&a, &tensor(&b, &c)));
    }

    #[test]
    fn partial_trace_of_product() {
        let a = M::from_real(2, &[0.7, 0.1, 0.1, 0.3]);
        let b = M::from_real(3, &[0.2, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.3]);
        let ab = tensor(&a, &b);
        assert!(partial_trace(&ab, 2, 3, Side::A).unwrap().max_abs_diff(&a) < 1e-12);
        assert!(partial_trace(&ab, 2, 3, Side::B).unwrap().max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        assert!(matches!(partial_trace(&M::identity(4), 2, 3, Side::A), Err(Error::Dimension(_))));
        assert!(partial_transpose(&M::identity(6), 2, 2, Side::B).is_err());
    }

    #[test]
    fn partial_transpose_is_involution() {
        let m = int_matrix(6, 4);
        for side in [Side::A, Side::B] {
            let twice = partial_transpose(&partial_transpose(&m, 2, 3, side).unwrap(), 2, 3, side).unwrap();
            assert_eq!(twice, m);
        }
    }

    #[test]
    fn partial_transpose_of_product() {
        let a = int_matrix(2, 5);
        let b = int_matrix(3, 6);
        let pt = partial_transpose(&tensor(&a, &b), 2, 3, Side::B).unwrap();
        assert_eq!(pt, tensor(&a, &b.transpose()));
        let pt = partial_transpose(&tensor(&a, &b), 2, 3, Side::A).unwrap();
        assert_eq!(pt, tensor(&a.transpose(), &b));
    }

    #[test]
    fn matmul_and_adjoint() {
        let y = pauli::y::<f64>();
        assert!((&y * &y).max_abs_diff(&M::identity(2)) < 1e-15);
        assert_eq!(y.adjoint(), y);
        assert_eq!(y.hermitian_asymmetry(), 0.0);
    }

    #[test]
    fn works_in_single_precision() {
        let t = tensor(&pauli::x::<f32>(), &pauli::z::<f32>());
        let back = partial_trace(&t, 2, 2, Side::A).unwrap();
        assert_eq!(back, CMatrix::<f32>::zeros(2, 2));
    }
}
