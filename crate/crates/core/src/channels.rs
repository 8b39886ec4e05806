//! Completely positive trace-preserving maps in Kraus form, and an
//! unconstrained real parametrization of them through Stinespring isometries.

use crate::error::{Error, Result};
use crate::matrix::{pauli, CMatrix, C};
use crate::random::rng_from_seed;
use crate::scalar::Real;
use crate::states::BipartiteState;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Completeness tolerance `‖Σ K†K − I‖_max`.
pub const COMPLETENESS_TOL: f64 = 1e-9;

/// Kraus operators whose squared Frobenius norm falls below this are dropped.
const PRUNE_NORM_SQR: f64 = 1e-24;

#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel<T> {
    d_in: usize,
    d_out: usize,
    kraus: Vec<CMatrix<T>>,
}

impl<T: Real> KrausChannel<T> {
    pub fn new(d_in: usize, d_out: usize, kraus: Vec<CMatrix<T>>) -> Result<Self> {
        let ch = Self::new_unchecked(d_in, d_out, kraus)?;
        let err = ch.completeness_error();
        if err > T::tol(COMPLETENESS_TOL) {
            return Err(Error::Invariant(format!("Kraus family is not trace preserving (error {err:e})")));
        }
        Ok(ch)
    }

    fn new_unchecked(d_in: usize, d_out: usize, kraus: Vec<CMatrix<T>>) -> Result<Self> {
        if d_in == 0 || d_out == 0 {
            return Err(Error::dim("channel dimensions must be positive"));
        }
        if kraus.is_empty() || kraus.len() > d_in * d_out {
            return Err(Error::dim(format!("{} Kraus operators for a {d_in} -> {d_out} channel", kraus.len())));
        }
        if let Some(k) = kraus.iter().find(|k| k.rows() != d_out || k.cols() != d_in) {
            return Err(Error::dim(format!("Kraus operator is {}x{}, expected {d_out}x{d_in}", k.rows(), k.cols())));
        }
        Ok(Self { d_in, d_out, kraus })
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn kraus(&self) -> &[CMatrix<T>] {
        &self.kraus
    }

    /// `‖Σ K†K − I‖_max`.
    pub fn completeness_error(&self) -> T {
        let mut acc = CMatrix::zeros(self.d_in, self.d_in);
        for k in &self.kraus {
            acc = &acc + &(&k.adjoint() * k);
        }
        acc.max_abs_diff(&CMatrix::identity(self.d_in))
    }

    /// `Σ K m K†`.
    pub fn apply(&self, m: &CMatrix<T>) -> Result<CMatrix<T>> {
        if !m.is_square() || m.rows() != self.d_in {
            return Err(Error::dim(format!(
                "channel input is {}-dimensional, got {}x{}",
                self.d_in,
                m.rows(),
                m.cols()
            )));
        }
        let mut out = CMatrix::zeros(self.d_out, self.d_out);
        for k in &self.kraus {
            out = &out + &k.conjugate(m);
        }
        Ok(out)
    }

    /// `(Λ ⊗ id_B)(ρ)`.
    pub fn apply_a(&self, s: &BipartiteState<T>) -> Result<BipartiteState<T>> {
        if s.d_a() != self.d_in {
            return Err(Error::dim(format!("channel acts on {} dimensions but Alice holds {}", self.d_in, s.d_a())));
        }
        let (di, dout, db) = (self.d_in, self.d_out, s.d_b());
        let rho = s.rho();
        let n_in = di * db;
        let n_out = dout * db;
        let zero = C::new(T::zero(), T::zero());
        let mut out = CMatrix::zeros(n_out, n_out);
        let mut left = vec![zero; n_out * n_in];
        for k in &self.kraus {
            // left = (K ⊗ I) ρ
            left.iter_mut().for_each(|z| *z = zero);
            for o in 0..dout {
                for i in 0..di {
                    let kv = k[(o, i)];
                    if kv == zero {
                        continue;
                    }
                    for b in 0..db {
                        let dst = &mut left[(o * db + b) * n_in..(o * db + b + 1) * n_in];
                        for (d, r) in dst.iter_mut().zip(rho.row(i * db + b)) {
                            *d = *d + kv * r;
                        }
                    }
                }
            }
            // out += left (K ⊗ I)†
            for r in 0..n_out {
                let lrow = &left[r * n_in..(r + 1) * n_in];
                for o in 0..dout {
                    for j in 0..di {
                        let kc = k[(o, j)].conj();
                        if kc == zero {
                            continue;
                        }
                        for b in 0..db {
                            out[(r, o * db + b)] = out[(r, o * db + b)] + lrow[j * db + b] * kc;
                        }
                    }
                }
            }
        }
        BipartiteState::new_unchecked(dout, db, out)
    }

    /// Kraus-product composition: `compose(second, first) = second ∘ first`.
    pub fn compose(second: &Self, first: &Self) -> Result<Self> {
        if second.d_in != first.d_out {
            return Err(Error::dim("composition dimensions do not chain"));
        }
        let kraus: Vec<_> = second
            .kraus
            .iter()
            .flat_map(|b| first.kraus.iter().map(move |a| b * a))
            .filter(|k| k.norm_sqr() > T::lit(PRUNE_NORM_SQR))
            .collect();
        // Products can exceed the Choi-rank bound; the map is still valid.
        Ok(Self { d_in: first.d_in, d_out: second.d_out, kraus })
    }
}

pub fn identity_channel<T: Real>(d: usize) -> KrausChannel<T> {
    KrausChannel { d_in: d, d_out: d, kraus: vec![CMatrix::identity(d)] }
}

/// Single-Kraus channel `m ↦ U m U†`; `u` must be unitary within 1e-9.
pub fn unitary_channel<T: Real>(u: &CMatrix<T>) -> Result<KrausChannel<T>> {
    if !u.is_square() {
        return Err(Error::dim("unitary must be square"));
    }
    let d = u.rows();
    let err = (&u.adjoint() * u).max_abs_diff(&CMatrix::identity(d));
    if err > T::tol(1e-9) {
        return Err(Error::Invariant(format!("matrix is not unitary (error {err:e})")));
    }
    Ok(KrausChannel { d_in: d, d_out: d, kraus: vec![u.clone()] })
}

/// Discards the input and prepares `|0⟩` on a `d_out`-dimensional output.
/// With `d_out = 1` this is the full trace.
pub fn trace_and_prepare<T: Real>(d_in: usize, d_out: usize) -> KrausChannel<T> {
    let kraus = (0..d_in)
        .map(|i| {
            let mut k = CMatrix::zeros(d_out, d_in);
            k[(0, i)] = C::new(T::one(), T::zero());
            k
        })
        .collect();
    KrausChannel { d_in, d_out, kraus }
}

/// Complete dephasing in the computational basis.
pub fn dephasing<T: Real>(d: usize) -> KrausChannel<T> {
    let kraus = (0..d)
        .map(|i| {
            let mut k = CMatrix::zeros(d, d);
            k[(i, i)] = C::new(T::one(), T::zero());
            k
        })
        .collect();
    KrausChannel { d_in: d, d_out: d, kraus }
}

/// Qubit depolarizing channel `ρ ↦ (1 − p) ρ + p I/2`.
pub fn depolarizing_qubit<T: Real>(p: T) -> Result<KrausChannel<T>> {
    if !(p >= T::zero() && p <= T::one()) {
        return Err(Error::Domain(format!("depolarizing strength {p} outside [0, 1]")));
    }
    let quarter = T::lit(0.25);
    let mut kraus = vec![CMatrix::identity(2).scale((T::one() - T::lit(3.0) * p * quarter).sqrt())];
    for s in [pauli::x(), pauli::y(), pauli::z()] {
        kraus.push(s.scale((p * quarter).sqrt()));
    }
    kraus.retain(|k| k.norm_sqr() > T::lit(PRUNE_NORM_SQR));
    KrausChannel::new(2, 2, kraus)
}

/// Real coordinates of a Stinespring isometry `V: C^{d_in} → C^{d_out} ⊗ C^{env_dim}`.
///
/// Layout: `d_in` column phases, then a `(θ, φ)` pair for every two-level
/// rotation. Any real vector of the right length yields a valid channel, and
/// every isometry is reachable. Zero angles give the canonical embedding,
/// which is the identity map whenever `d_out ≥ d_in`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChannelParams<T> {
    pub d_in: usize,
    pub d_out: usize,
    pub env_dim: usize,
    pub angles: Vec<T>,
}

impl<T: Real> ChannelParams<T> {
    /// Number of angles for the given shape: `2 d_in N − d_in²`, `N = d_out·env_dim`.
    pub fn arity(d_in: usize, d_out: usize, env_dim: usize) -> usize {
        let n = d_out * env_dim;
        2 * d_in * n - d_in * d_in
    }

    fn check_shape(d_in: usize, d_out: usize, env_dim: usize) -> Result<()> {
        if d_in == 0 || d_out == 0 || env_dim == 0 {
            return Err(Error::dim("channel parameter dimensions must be positive"));
        }
        if d_in > d_out * env_dim {
            return Err(Error::dim(format!("no isometry from {d_in} into {d_out}x{env_dim} dimensions")));
        }
        Ok(())
    }

    pub fn zeros(d_in: usize, d_out: usize, env_dim: usize) -> Result<Self> {
        Self::check_shape(d_in, d_out, env_dim)?;
        Ok(Self { d_in, d_out, env_dim, angles: vec![T::zero(); Self::arity(d_in, d_out, env_dim)] })
    }

    /// Angles drawn uniformly from `[−π, π)`.
    pub fn random(d_in: usize, d_out: usize, env_dim: usize, rng: &mut impl Rng) -> Result<Self> {
        let mut p = Self::zeros(d_in, d_out, env_dim)?;
        let pi = std::f64::consts::PI;
        for a in &mut p.angles {
            *a = T::lit(rng.gen_range(-pi..pi));
        }
        Ok(p)
    }

    pub fn with_angles(&self, angles: Vec<T>) -> Self {
        Self { angles, ..self.clone() }
    }

    /// The `(dOut·envDim) × dIn` isometry; rows indexed `out · env_dim + env`.
    pub fn isometry(&self) -> Result<CMatrix<T>> {
        Self::check_shape(self.d_in, self.d_out, self.env_dim)?;
        let expected = Self::arity(self.d_in, self.d_out, self.env_dim);
        if self.angles.len() != expected {
            return Err(Error::Domain(format!(
                "{} angles supplied, parametrization needs {expected}",
                self.angles.len()
            )));
        }
        let (di, n) = (self.d_in, self.d_out * self.env_dim);
        let (phases, rot) = self.angles.split_at(di);

        let mut w = CMatrix::zeros(n, di);
        for (j, &a) in phases.iter().enumerate() {
            w[(j, j)] = C::from_polar(T::one(), a);
        }
        let planes: Vec<usize> = (0..di).flat_map(|j| (j..n - 1).rev()).collect();
        debug_assert_eq!(planes.len() * 2, rot.len());
        for (idx, &r) in planes.iter().enumerate().rev() {
            let (theta, phi) = (rot[2 * idx], rot[2 * idx + 1]);
            let (s, c) = theta.sin_cos();
            let e = C::from_polar(T::one(), phi);
            for col in 0..di {
                let (x, y) = (w[(r, col)], w[(r + 1, col)]);
                w[(r, col)] = x * c - e.conj() * y * s;
                w[(r + 1, col)] = e * x * s + y * c;
            }
        }

        let perm = self.row_permutation();
        let mut v = CMatrix::zeros(n, di);
        for (src, &dst) in perm.iter().enumerate() {
            for col in 0..di {
                v[(dst, col)] = w[(src, col)];
            }
        }
        Ok(v)
    }

    /// Row `i < d_in` of the rotated frame lands on `(i mod d_out, i div d_out)`;
    /// the remaining rows fill the gaps in order.
    fn row_permutation(&self) -> Vec<usize> {
        let n = self.d_out * self.env_dim;
        let mut perm = Vec::with_capacity(n);
        let mut used = vec![false; n];
        for i in 0..self.d_in {
            let row = (i % self.d_out) * self.env_dim + i / self.d_out;
            used[row] = true;
            perm.push(row);
        }
        perm.extend((0..n).filter(|&r| !used[r]));
        perm
    }

    /// `K_e = (I ⊗ ⟨e|) V`, dropping numerically vanishing operators.
    pub fn to_channel(&self) -> Result<KrausChannel<T>> {
        let v = self.isometry()?;
        let (di, dout, env) = (self.d_in, self.d_out, self.env_dim);
        let kraus: Vec<_> = (0..env)
            .map(|e| CMatrix::from_fn(dout, di, |o, i| v[(o * env + e, i)]))
            .filter(|k| k.norm_sqr() > T::lit(PRUNE_NORM_SQR))
            .collect();
        KrausChannel::new_unchecked(di, dout, kraus)
    }
}

/// Random search point for the qubit extremal-map study: a 2 → 2 map with at
/// most two Kraus operators.
pub fn extremal_qubit_params<T: Real>(seed: u64) -> ChannelParams<T> {
    ChannelParams::random(2, 2, 2, &mut rng_from_seed(seed)).expect("valid qubit shape")
}
