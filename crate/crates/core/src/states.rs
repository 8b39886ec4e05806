//! Bipartite density matrices and the named states used throughout the toolkit.

use crate::eigen::{hermitian_eigenvalues, HERMITIAN_TOL};
use crate::error::{Error, Result};
use crate::matrix::{partial_trace, tensor, CMatrix, Side, C};
use crate::random::{ginibre, random_unit_vector, rng_from_seed};
use crate::scalar::Real;

/// Tolerance on trace and on negative eigenvalues of a density matrix.
pub const STATE_TOL: f64 = 1e-10;

/// Largest matrix dimension `power` will build.
pub const DEFAULT_DIM_CAP: usize = 4096;

/// Density matrix on `H_A ⊗ H_B` with the factor dimensions recorded.
///
/// Row/column index `i * d_b + k` addresses `|i⟩_A |k⟩_B`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState<T> {
    d_a: usize,
    d_b: usize,
    rho: CMatrix<T>,
}

impl<T: Real> BipartiteState<T> {
    /// Validating constructor: Hermitian, unit trace and positive semidefinite
    /// (each within [`STATE_TOL`]).
    pub fn new(d_a: usize, d_b: usize, rho: CMatrix<T>) -> Result<Self> {
        let s = Self::new_unchecked(d_a, d_b, rho)?;
        s.validate()?;
        Ok(s)
    }

    /// Only checks the shape. Used on hot paths where the invariants hold by
    /// construction (channel outputs, tensor products of valid states).
    pub fn new_unchecked(d_a: usize, d_b: usize, rho: CMatrix<T>) -> Result<Self> {
        if d_a == 0 || d_b == 0 || !rho.is_square() || rho.rows() != d_a * d_b {
            return Err(Error::dim(format!(
                "{}x{} matrix for factor dimensions ({d_a}, {d_b})",
                rho.rows(),
                rho.cols()
            )));
        }
        Ok(Self { d_a, d_b, rho })
    }

    pub fn validate(&self) -> Result<()> {
        let asym = self.rho.hermitian_asymmetry();
        if asym > T::tol(HERMITIAN_TOL) {
            return Err(Error::NotHermitian { asymmetry: asym.as_f64() });
        }
        let tr = self.rho.trace();
        if (tr.re - T::one()).abs() > T::tol(STATE_TOL) || tr.im.abs() > T::tol(STATE_TOL) {
            return Err(Error::Invariant(format!("trace {} + {}i is not 1", tr.re, tr.im)));
        }
        let min = hermitian_eigenvalues(&self.rho)?[0];
        if min < -T::tol(STATE_TOL) {
            return Err(Error::Invariant(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn dim(&self) -> usize {
        self.d_a * self.d_b
    }

    pub fn rho(&self) -> &CMatrix<T> {
        &self.rho
    }

    pub fn into_rho(self) -> CMatrix<T> {
        self.rho
    }

    pub fn reduced(&self, keep: Side) -> CMatrix<T> {
        partial_trace(&self.rho, self.d_a, self.d_b, keep).expect("shape checked at construction")
    }

    pub fn reduced_a(&self) -> CMatrix<T> {
        self.reduced(Side::A)
    }

    pub fn reduced_b(&self) -> CMatrix<T> {
        self.reduced(Side::B)
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> T {
        // ρ is Hermitian, so tr ρ² is the squared Frobenius norm.
        self.rho.norm_sqr()
    }
}

fn ket<T: Real>(dim: usize, amps: &[(usize, f64)]) -> Vec<C<T>> {
    let mut v = vec![C::new(T::zero(), T::zero()); dim];
    for &(i, a) in amps {
        v[i] = v[i] + C::new(T::lit(a), T::zero());
    }
    v
}

fn normalized_projector<T: Real>(v: &[C<T>]) -> CMatrix<T> {
    let norm: T = v.iter().map(|z| z.norm_sqr()).sum();
    CMatrix::outer(v).scale(T::one() / norm)
}

/// Projector onto `(|01⟩ − |10⟩)/√2`.
pub fn singlet<T: Real>() -> BipartiteState<T> {
    let v = ket::<T>(4, &[(1, 1.0), (2, -1.0)]);
    BipartiteState { d_a: 2, d_b: 2, rho: normalized_projector(&v) }
}

/// Projector onto `Σ_i |ii⟩ / √d`.
pub fn max_entangled<T: Real>(d: usize) -> Result<BipartiteState<T>> {
    if d == 0 {
        return Err(Error::Domain("maximally entangled state needs d >= 1".into()));
    }
    let amps: Vec<(usize, f64)> = (0..d).map(|i| (i * d + i, 1.0)).collect();
    let v = ket::<T>(d * d, &amps);
    Ok(BipartiteState { d_a: d, d_b: d, rho: normalized_projector(&v) })
}

/// `I/(d_a d_b)`.
pub fn maximally_mixed<T: Real>(d_a: usize, d_b: usize) -> Result<BipartiteState<T>> {
    let dim = d_a * d_b;
    if dim == 0 {
        return Err(Error::Domain("empty factor".into()));
    }
    let rho = CMatrix::identity(dim).scale(T::one() / T::lit(dim as f64));
    Ok(BipartiteState { d_a, d_b, rho })
}

/// `p · singlet + (1 − p) · I/4`.
pub fn werner_like<T: Real>(p: T) -> Result<BipartiteState<T>> {
    if !(p >= T::zero() && p <= T::one()) {
        return Err(Error::Domain(format!("mixing weight {p} outside [0, 1]")));
    }
    let s = singlet::<T>().rho;
    let noise = CMatrix::identity(4).scale((T::one() - p) / T::lit(4.0));
    Ok(BipartiteState { d_a: 2, d_b: 2, rho: &s.scale(p) + &noise })
}

/// `ρ_A ⊗ ρ_B`; both factors are validated as density matrices.
pub fn product<T: Real>(rho_a: &CMatrix<T>, rho_b: &CMatrix<T>) -> Result<BipartiteState<T>> {
    for m in [rho_a, rho_b] {
        if !m.is_square() {
            return Err(Error::dim("product factors must be square"));
        }
        BipartiteState::new(m.rows(), 1, m.clone())?;
    }
    Ok(BipartiteState { d_a: rho_a.rows(), d_b: rho_b.rows(), rho: tensor(rho_a, rho_b) })
}

/// Bound entangled 3⊗3 state built from the "Tiles" unextendible product basis:
/// `(I − Σ_i |ψ_i⟩⟨ψ_i|)/4`. It is PPT yet entangled.
pub fn tiles_bound_entangled<T: Real>() -> BipartiteState<T> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let prod = |a: &[f64; 3], b: &[f64; 3]| -> Vec<C<T>> {
        let mut v = Vec::with_capacity(9);
        for x in a {
            for y in b {
                v.push(C::new(T::lit(x * y), T::zero()));
            }
        }
        v
    };
    let third = 1.0 / 3.0f64.sqrt();
    let basis = [
        prod(&[1.0, 0.0, 0.0], &[s, -s, 0.0]),
        prod(&[s, -s, 0.0], &[0.0, 0.0, 1.0]),
        prod(&[0.0, 0.0, 1.0], &[0.0, s, -s]),
        prod(&[0.0, s, -s], &[1.0, 0.0, 0.0]),
        prod(&[third; 3], &[third; 3]),
    ];
    let mut rho = CMatrix::identity(9);
    for v in &basis {
        rho = &rho - &CMatrix::outer(v);
    }
    BipartiteState { d_a: 3, d_b: 3, rho: rho.scale(T::lit(0.25)) }
}

/// Hilbert–Schmidt random state: `G G† / tr(G G†)` with `G` square Ginibre.
pub fn random_state<T: Real>(d_a: usize, d_b: usize, seed: u64) -> Result<BipartiteState<T>> {
    let dim = d_a * d_b;
    if dim == 0 {
        return Err(Error::Domain("empty factor".into()));
    }
    let mut rng = rng_from_seed(seed);
    let g = ginibre::<T>(dim, dim, &mut rng);
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    Ok(BipartiteState { d_a, d_b, rho: gg.scale(T::one() / tr).symmetrized() })
}

/// Random state of rank at most `rank`: `G G† / tr(G G†)` with `G` a
/// `dim × rank` Ginibre matrix (the induced measure). `rank = dim` recovers
/// [`random_state`]'s distribution, `rank = 1` gives pure states.
pub fn random_state_with_rank<T: Real>(d_a: usize, d_b: usize, rank: usize, seed: u64) -> Result<BipartiteState<T>> {
    let dim = d_a * d_b;
    if dim == 0 || rank == 0 {
        return Err(Error::Domain("empty factor or zero rank".into()));
    }
    let mut rng = rng_from_seed(seed);
    let g = ginibre::<T>(dim, rank, &mut rng);
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    Ok(BipartiteState { d_a, d_b, rho: gg.scale(T::one() / tr).symmetrized() })
}

/// Uniformly random pure state.
pub fn random_pure_state<T: Real>(d_a: usize, d_b: usize, seed: u64) -> Result<BipartiteState<T>> {
    let dim = d_a * d_b;
    if dim == 0 {
        return Err(Error::Domain("empty factor".into()));
    }
    let v = random_unit_vector::<T>(dim, &mut rng_from_seed(seed));
    Ok(BipartiteState { d_a, d_b, rho: CMatrix::outer(&v) })
}

/// `ρ^⊗n` with all A factors grouped before all B factors, so the result is
/// again a bipartite state on `(d_a^n) ⊗ (d_b^n)`.
pub fn power<T: Real>(state: &BipartiteState<T>, n: usize) -> Result<BipartiteState<T>> {
    power_with_cap(state, n, DEFAULT_DIM_CAP)
}

pub fn power_with_cap<T: Real>(state: &BipartiteState<T>, n: usize, cap: usize) -> Result<BipartiteState<T>> {
    if n == 0 {
        return Err(Error::Domain("tensor power n must be >= 1".into()));
    }
    let (da, db) = (state.d_a, state.d_b);
    let big_a = checked_pow(da, n);
    let big_b = checked_pow(db, n);
    let dim = big_a.zip(big_b).and_then(|(a, b)| a.checked_mul(b));
    let Some(dim) = dim.filter(|&d| d <= cap) else {
        return Err(Error::dim(format!("({}x{})^{n} exceeds the dimension cap {cap}", da, db)));
    };
    if n == 1 {
        return Ok(state.clone());
    }
    let (big_a, big_b) = (big_a.unwrap(), big_b.unwrap());

    // digits[k] = (a_k, b_k) for every grouped index; precomputed once.
    let split = |idx: usize| -> Vec<usize> {
        let (mut a, mut b) = (idx / big_b, idx % big_b);
        let mut pairs = vec![0; n];
        for k in (0..n).rev() {
            pairs[k] = (a % da) * db + (b % db);
            a /= da;
            b /= db;
        }
        pairs
    };
    let local: Vec<Vec<usize>> = (0..dim).map(split).collect();
    let rho = CMatrix::from_fn(dim, dim, |r, c| {
        let (lr, lc) = (&local[r], &local[c]);
        let mut acc = C::new(T::one(), T::zero());
        for k in 0..n {
            acc = acc * state.rho[(lr[k], lc[k])];
            if acc.re == T::zero() && acc.im == T::zero() {
                break;
            }
        }
        acc
    });
    Ok(BipartiteState { d_a: big_a, d_b: big_b, rho })
}

fn checked_pow(base: usize, n: usize) -> Option<usize> {
    (0..n).try_fold(1usize, |acc, _| acc.checked_mul(base))
}
