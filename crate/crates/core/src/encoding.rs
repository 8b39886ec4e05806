//! Dense-coding encoder: Alice applies a local map, then one of `d²`
//! scrambling unitaries chosen uniformly at random.

use crate::channels::{trace_and_prepare, KrausChannel};
use crate::error::{Error, Result};
use crate::matrix::{tensor, CMatrix, C};
use crate::measures::{holevo, Ensemble, Entropies};
use crate::scalar::Real;
use crate::states::BipartiteState;

/// Residual bound for the scrambling property is `SCRAMBLE_TOL · d²`.
pub const SCRAMBLE_TOL: f64 = 1e-8;

/// Tolerance on the Holevo = log d + I^B equality.
pub const ACHIEVABILITY_TOL: f64 = 1e-7;

/// `d²` unitaries whose uniform conjugation annihilates traceless matrices.
#[derive(Debug, Clone)]
pub struct ScramblingSet<T> {
    d: usize,
    unitaries: Vec<CMatrix<T>>,
}

impl<T: Real> ScramblingSet<T> {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn unitaries(&self) -> &[CMatrix<T>] {
        &self.unitaries
    }

    /// `(1/d²) Σ U m U†`.
    pub fn twirl(&self, m: &CMatrix<T>) -> CMatrix<T> {
        let mut acc = CMatrix::zeros(self.d, self.d);
        for u in &self.unitaries {
            acc = &acc + &u.conjugate(m);
        }
        acc.scale(T::one() / T::lit((self.d * self.d) as f64))
    }

    /// `max_M ‖Σ U M U†‖_max` over the given traceless matrices.
    pub fn residual(&self, traceless: &[CMatrix<T>]) -> T {
        traceless
            .iter()
            .map(|m| {
                let mut acc = CMatrix::zeros(self.d, self.d);
                for u in &self.unitaries {
                    acc = &acc + &u.conjugate(m);
                }
                acc.max_abs()
            })
            .fold(T::zero(), T::max)
    }
}

/// Weyl–Heisenberg operators `X^a Z^b`, `a, b ∈ 0..d`, with
/// `X|k⟩ = |k+1 mod d⟩` and `Z|k⟩ = ω^k |k⟩`.
pub fn weyl_set<T: Real>(d: usize) -> Result<ScramblingSet<T>> {
    if d < 2 {
        return Err(Error::Domain(format!("scrambling set needs d >= 2, got {d}")));
    }
    let omega = T::lit(2.0) * T::PI() / T::lit(d as f64);
    let mut unitaries = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            // (X^a Z^b)|k⟩ = ω^{bk} |k + a⟩
            let mut u = CMatrix::zeros(d, d);
            for k in 0..d {
                let phase = omega * T::lit(((b * k) % d) as f64);
                u[((k + a) % d, k)] = C::from_polar(T::one(), phase);
            }
            unitaries.push(u);
        }
    }
    Ok(ScramblingSet { d, unitaries })
}

/// Generalized Gell-Mann matrices: a Hermitian basis of the `d² − 1`
/// dimensional space of traceless matrices.
pub fn gell_mann_basis<T: Real>(d: usize) -> Vec<CMatrix<T>> {
    let one = C::new(T::one(), T::zero());
    let i = C::new(T::zero(), T::one());
    let mut basis = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in j + 1..d {
            let mut sym = CMatrix::zeros(d, d);
            sym[(j, k)] = one;
            sym[(k, j)] = one;
            basis.push(sym);
            let mut anti = CMatrix::zeros(d, d);
            anti[(j, k)] = -i;
            anti[(k, j)] = i;
            basis.push(anti);
        }
    }
    for l in 1..d {
        let norm = (T::lit(2.0) / T::lit((l * (l + 1)) as f64)).sqrt();
        let mut diag = vec![norm; d];
        diag[l] = -T::lit(l as f64) * norm;
        for v in diag.iter_mut().skip(l + 1) {
            *v = T::zero();
        }
        basis.push(CMatrix::from_diag(&diag));
    }
    basis
}

/// `{(d⁻², (U_i Λ ⊗ I)(ρ))}` for `i = 1..d²`.
///
/// This is the raw construction: its Holevo information equals
/// `log₂ d + S(ρ_B) − S((Λ⊗I)ρ)` for every `Λ`, which can fall below
/// `log₂ d` when the map leaves negative coherent information.
pub fn encode_ensemble<T: Real>(
    s: &BipartiteState<T>,
    ch: &KrausChannel<T>,
    set: &ScramblingSet<T>,
) -> Result<Ensemble<T>> {
    if ch.d_out() != set.d() {
        return Err(Error::dim(format!("map outputs {} dimensions, scrambling set acts on {}", ch.d_out(), set.d())));
    }
    let eta = ch.apply_a(s)?;
    let id_b = CMatrix::identity(s.d_b());
    let p = T::one() / T::lit((set.d() * set.d()) as f64);
    let items = set
        .unitaries()
        .iter()
        .map(|u| {
            let rho = tensor(u, &id_b).conjugate(eta.rho());
            (p, BipartiteState::new_unchecked(set.d(), s.d_b(), rho).expect("shape preserved"))
        })
        .collect();
    Ensemble::new(items)
}

/// Which local map the achieving encoder ended up using.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EncoderChoice {
    /// The supplied map leaves `S(ρ_B) ≥ S(η)`.
    Given,
    /// The supplied map destroys coherent information; Alice discards her
    /// share and sends plain classical signals instead.
    TraceAndPrepare,
}

/// Ensemble Alice actually transmits for a candidate map `Λ`: the unitary
/// encoding of `Λ` when that keeps `S(ρ_B) − S(η) ≥ 0`, otherwise the unitary
/// encoding of the trace-and-prepare map, which reaches `log₂ d`.
pub fn achieving_ensemble<T: Real>(
    s: &BipartiteState<T>,
    ch: &KrausChannel<T>,
    set: &ScramblingSet<T>,
) -> Result<(Ensemble<T>, EncoderChoice)> {
    let eta = ch.apply_a(s)?;
    if Entropies::of(&eta)?.coherent_raw() >= T::zero() {
        Ok((encode_ensemble(s, ch, set)?, EncoderChoice::Given))
    } else {
        let fallback = trace_and_prepare(s.d_a(), ch.d_out());
        Ok((encode_ensemble(s, &fallback, set)?, EncoderChoice::TraceAndPrepare))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct AchievabilityCheck<T> {
    /// Holevo information of the transmitted ensemble.
    pub lhs: T,
    /// `log₂ d + I^B((Λ ⊗ I)ρ)`.
    pub rhs: T,
    pub gap: T,
    pub choice: EncoderChoice,
}

/// Compares the Holevo information of the achieving encoder with
/// `log₂ d + I^B((Λ⊗I)ρ)`, using the Weyl set on Λ's output dimension.
pub fn verify_achievability<T: Real>(s: &BipartiteState<T>, ch: &KrausChannel<T>) -> Result<AchievabilityCheck<T>> {
    let d = ch.d_out();
    let set = weyl_set(d)?;
    let (ensemble, choice) = achieving_ensemble(s, ch, &set)?;
    let lhs = holevo(&ensemble)?;
    let rhs = T::lit(d as f64).log2() + Entropies::of(&ch.apply_a(s)?)?.coherent_info();
    Ok(AchievabilityCheck { lhs, rhs, gap: lhs - rhs, choice })
}

/// Rate per transmitted qubit once Alice's share is compressed to
/// `S(ρ_A)` qubits: `1 + I^B / S(ρ_A)`.
pub fn rate_per_qubit<T: Real>(s_after: &BipartiteState<T>) -> Result<T> {
    let e = Entropies::of(s_after)?;
    if e.a <= T::tol(crate::measures::SENDER_ENTROPY_FLOOR) {
        return Err(Error::DegenerateSenderEntropy(e.a.as_f64()));
    }
    Ok(T::one() + e.coherent_info() / e.a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::identity_channel;
    use crate::matrix::pauli;
    use crate::states::{maximally_mixed, product, singlet};

    type M = CMatrix<f64>;

    fn equal_up_to_phase(a: &M, b: &M) -> bool {
        let overlap = (&a.adjoint() * b).trace();
        (overlap.norm() - a.rows() as f64).abs() < 1e-12
    }

    #[test]
    fn qubit_weyl_set_is_the_pauli_group() {
        let set = weyl_set::<f64>(2).unwrap();
        let xz = &pauli::x::<f64>() * &pauli::z();
        for target in [M::identity(2), pauli::x(), pauli::z(), xz] {
            assert!(set.unitaries().iter().any(|u| equal_up_to_phase(u, &target)));
        }
        assert!(set.residual(&gell_mann_basis(2)) <= 1e-12);
    }

    #[test]
    fn qutrit_weyl_set_is_orthogonal() {
        let set = weyl_set::<f64>(3).unwrap();
        let us = set.unitaries();
        assert_eq!(us.len(), 9);
        for i in 0..9 {
            for j in 0..9 {
                let ip = (&us[i].adjoint() * &us[j]).trace().norm();
                if i == j {
                    assert!((ip - 3.0).abs() < 1e-12);
                } else {
                    assert!(ip <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn twirl_depolarizes_completely() {
        for d in 2..5 {
            let set = weyl_set::<f64>(d).unwrap();
            let rho = crate::states::random_state::<f64>(d, 1, d as u64).unwrap().into_rho();
            assert!(set.twirl(&rho).max_abs_diff(&M::identity(d).scale(1.0 / d as f64)) <= 1e-9);
        }
    }

    #[test]
    fn gell_mann_basis_is_traceless_and_orthogonal() {
        let b = gell_mann_basis::<f64>(4);
        assert_eq!(b.len(), 15);
        for (i, x) in b.iter().enumerate() {
            assert!(x.trace().norm() < 1e-14);
            for (j, y) in b.iter().enumerate() {
                let ip = (&x.adjoint() * y).trace();
                let expect = if i == j { 2.0 } else { 0.0 };
                assert!((ip - C::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn weyl_set_rejects_trivial_dimension() {
        assert!(matches!(weyl_set::<f64>(1), Err(Error::Domain(_))));
    }

    #[test]
    fn singlet_encoding_is_the_bell_basis() {
        let e = encode_ensemble(&singlet::<f64>(), &identity_channel(2), &weyl_set(2).unwrap()).unwrap();
        assert_eq!(e.len(), 4);
        for (i, (p, a)) in e.items().iter().enumerate() {
            assert_eq!(*p, 0.25);
            for (j, (_, b)) in e.items().iter().enumerate() {
                let overlap = (&a.rho().adjoint() * b.rho()).trace().re;
                assert!((overlap - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
        assert!((holevo(&e).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn average_encoded_state_is_maximally_mixed_on_alice() {
        let s = crate::states::random_state::<f64>(2, 3, 12).unwrap();
        let e = encode_ensemble(&s, &identity_channel(2), &weyl_set(2).unwrap()).unwrap();
        let expect = tensor(&M::identity(2).scale(0.5), &s.reduced_b());
        assert!(e.average().rho().max_abs_diff(&expect) < 1e-8);
    }

    #[test]
    fn product_state_with_pure_sender_reaches_log_d() {
        let s = product(&M::from_diag(&[1.0, 0.0, 0.0]), &M::from_diag(&[0.3, 0.7])).unwrap();
        let e = encode_ensemble(&s, &identity_channel(3), &weyl_set(3).unwrap()).unwrap();
        assert!((holevo(&e).unwrap() - 3f64.log2()).abs() < 1e-9);
    }

    #[test]
    fn maximally_mixed_falls_back_to_classical_signalling() {
        let s = maximally_mixed::<f64>(2, 2).unwrap();
        let raw = encode_ensemble(&s, &identity_channel(2), &weyl_set(2).unwrap()).unwrap();
        assert!(holevo(&raw).unwrap().abs() < 1e-12);
        let check = verify_achievability(&s, &identity_channel(2)).unwrap();
        assert_eq!(check.choice, EncoderChoice::TraceAndPrepare);
        assert!((check.lhs - 1.0).abs() < 1e-12 && check.gap.abs() < 1e-12);
    }

    #[test]
    fn singlet_achievability() {
        let check = verify_achievability(&singlet::<f64>(), &identity_channel(2)).unwrap();
        assert!((check.lhs - 2.0).abs() < 1e-12 && (check.rhs - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rate_per_qubit_cases() {
        assert!((rate_per_qubit(&singlet::<f64>()).unwrap() - 2.0).abs() < 1e-12);
        let p = product(&M::from_diag(&[0.5, 0.5]), &M::from_diag(&[0.9, 0.1])).unwrap();
        assert!((rate_per_qubit(&p).unwrap() - 1.0).abs() < 1e-12);
        let pure_a = product(&M::from_diag(&[1.0, 0.0]), &M::from_diag(&[0.9, 0.1])).unwrap();
        assert!(matches!(rate_per_qubit(&pure_a), Err(Error::DegenerateSenderEntropy(_))));
    }

    #[test]
    fn mismatched_dimensions() {
        let err = encode_ensemble(&singlet::<f64>(), &identity_channel(2), &weyl_set(3).unwrap());
        assert!(matches!(err, Err(Error::Dimension(_))));
    }
}
