//! Entropic quantities. All logarithms are base 2, so every value is in bits.

use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{xlog2x_neg, Real};
use crate::states::{BipartiteState, STATE_TOL};

/// Below this the sender's local entropy counts as zero.
pub const SENDER_ENTROPY_FLOOR: f64 = 1e-9;

/// Von Neumann entropy `−Σ λ log₂ λ`.
///
/// Eigenvalues in `[−1e-10, 0)` are clipped to zero; anything more negative
/// is reported as an invariant violation.
pub fn entropy<T: Real>(m: &CMatrix<T>) -> Result<T> {
    let vals = hermitian_eigenvalues(m)?;
    entropy_of_spectrum(&vals)
}

pub fn entropy_of_spectrum<T: Real>(vals: &[T]) -> Result<T> {
    let mut s = T::zero();
    for &v in vals {
        if v < -T::tol(STATE_TOL) {
            return Err(Error::Invariant(format!("eigenvalue {v:e} is negative")));
        }
        s = s + xlog2x_neg(v);
    }
    Ok(s.max(T::zero()))
}

/// `S(ρ)`, `S(ρ_A)` and `S(ρ_B)` from one pass; every measure below is a
/// combination of these three.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entropies<T> {
    pub joint: T,
    pub a: T,
    pub b: T,
}

impl<T: Real> Entropies<T> {
    pub fn of(s: &BipartiteState<T>) -> Result<Self> {
        Ok(Self { joint: entropy(s.rho())?, a: entropy(&s.reduced_a())?, b: entropy(&s.reduced_b())? })
    }

    /// `S(ρ_B) − S(ρ)` without the clamp at zero.
    pub fn coherent_raw(&self) -> T {
        self.b - self.joint
    }

    pub fn coherent_info(&self) -> T {
        self.coherent_raw().max(T::zero())
    }

    pub fn mutual_info(&self) -> T {
        self.a + self.b - self.joint
    }

    pub fn i_sd(&self) -> Result<T> {
        if self.a <= T::tol(SENDER_ENTROPY_FLOOR) {
            return Err(Error::DegenerateSenderEntropy(self.a.as_f64()));
        }
        Ok(self.mutual_info() / self.a)
    }
}

/// Coherent information `max{S(ρ_B) − S(ρ), 0}`.
pub fn coherent_info<T: Real>(s: &BipartiteState<T>) -> Result<T> {
    Ok(Entropies::of(s)?.coherent_info())
}

/// Quantum mutual information `S(ρ_A) + S(ρ_B) − S(ρ)`.
pub fn mutual_info<T: Real>(s: &BipartiteState<T>) -> Result<T> {
    Ok(Entropies::of(s)?.mutual_info())
}

/// Capacity per transmitted qubit, `I_M / S(ρ_A)`.
///
/// Fails with [`Error::DegenerateSenderEntropy`] when `S(ρ_A) ≤ 1e-9`.
pub fn i_sd<T: Real>(s: &BipartiteState<T>) -> Result<T> {
    Entropies::of(s)?.i_sd()
}

/// Finite ensemble `{p_i, ρ_i}` of states on a common bipartite space.
#[derive(Debug, Clone)]
pub struct Ensemble<T> {
    items: Vec<(T, BipartiteState<T>)>,
}

impl<T: Real> Ensemble<T> {
    pub fn new(items: Vec<(T, BipartiteState<T>)>) -> Result<Self> {
        let Some((_, first)) = items.first() else {
            return Err(Error::Domain("empty ensemble".into()));
        };
        let dims = (first.d_a(), first.d_b());
        if let Some((_, bad)) = items.iter().find(|(_, s)| (s.d_a(), s.d_b()) != dims) {
            return Err(Error::dim(format!(
                "ensemble mixes ({}, {}) with ({}, {})",
                dims.0,
                dims.1,
                bad.d_a(),
                bad.d_b()
            )));
        }
        if items.iter().any(|(p, _)| p.is_nan() || *p < T::zero()) {
            return Err(Error::Domain("negative probability in ensemble".into()));
        }
        let total: T = items.iter().map(|(p, _)| *p).sum();
        if (total - T::one()).abs() > T::tol(STATE_TOL) {
            return Err(Error::Domain(format!("probabilities sum to {total}")));
        }
        Ok(Self { items })
    }

    pub fn items(&self) -> &[(T, BipartiteState<T>)] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// `Σ p_i ρ_i`.
    pub fn average(&self) -> BipartiteState<T> {
        let first = &self.items[0].1;
        let mut acc = CMatrix::zeros(first.dim(), first.dim());
        for (p, s) in &self.items {
            acc = &acc + &s.rho().scale(*p);
        }
        BipartiteState::new_unchecked(first.d_a(), first.d_b(), acc).expect("common shape")
    }
}

/// Holevo information `S(Σ p_i ρ_i) − Σ p_i S(ρ_i)`.
pub fn holevo<T: Real>(e: &Ensemble<T>) -> Result<T> {
    let avg = entropy(e.average().rho())?;
    let mut mean = T::zero();
    for (p, s) in e.items() {
        mean = mean + *p * entropy(s.rho())?;
    }
    Ok(avg - mean)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{tensor, C};
    use crate::states::{maximally_mixed, product, singlet};

    #[test]
    fn entropy_of_maximally_mixed() {
        for d in 1..6 {
            let m = CMatrix::<f64>::identity(d).scale(1.0 / d as f64);
            assert!((entropy(&m).unwrap() - (d as f64).log2()).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_of_pure_state_is_zero() {
        assert!(entropy(singlet::<f64>().rho()).unwrap().abs() < 1e-12);
    }

    #[test]
    fn clipping_and_rejection_of_negative_eigenvalues() {
        let slightly = CMatrix::<f64>::from_diag(&[1.0 + 5e-11, -5e-11]);
        assert!(entropy(&slightly).is_ok());
        let bad = CMatrix::<f64>::from_diag(&[1.1, -0.1]);
        assert!(matches!(entropy(&bad), Err(Error::Invariant(_))));
    }

    #[test]
    fn product_states_carry_no_coherent_information() {
        let s = product(&CMatrix::<f64>::from_diag(&[0.5, 0.5]), &CMatrix::from_diag(&[1.0, 0.0])).unwrap();
        assert_eq!(coherent_info(&s).unwrap(), 0.0);
        assert!(mutual_info(&s).unwrap().abs() < 1e-12);
    }

    #[test]
    fn i_sd_errors_when_sender_is_pure() {
        let s = product(&CMatrix::<f64>::from_diag(&[1.0, 0.0]), &CMatrix::from_diag(&[0.5, 0.5])).unwrap();
        assert!(matches!(i_sd(&s), Err(Error::DegenerateSenderEntropy(_))));
        assert_eq!(i_sd(&maximally_mixed::<f64>(2, 2).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn holevo_single_member_is_zero() {
        let e = Ensemble::new(vec![(1.0, singlet::<f64>())]).unwrap();
        assert!(holevo(&e).unwrap().abs() < 1e-12);
    }

    #[test]
    fn orthogonal_flags_add_one_bit() {
        let sigma = CMatrix::<f64>::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => C::new(0.7, 0.0),
            (1, 1) => C::new(0.3, 0.0),
            (0, 1) => C::new(0.1, 0.2),
            _ => C::new(0.1, -0.2),
        });
        let flag = |k: usize| CMatrix::from_diag(&[if k == 0 { 1.0 } else { 0.0 }, if k == 1 { 1.0 } else { 0.0 }]);
        let members = (0..2).map(|k| (0.5, BipartiteState::new(2, 2, tensor(&flag(k), &sigma)).unwrap())).collect();
        let e = Ensemble::new(members).unwrap();
        assert!((holevo(&e).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ensemble_validation() {
        let a = singlet::<f64>();
        let b = maximally_mixed::<f64>(3, 3).unwrap();
        assert!(matches!(Ensemble::new(vec![(0.5, a.clone()), (0.5, b)]), Err(Error::Dimension(_))));
        assert!(Ensemble::new(vec![(0.4, a.clone()), (0.4, a.clone())]).is_err());
        assert!(Ensemble::new(vec![(1.5, a.clone()), (-0.5, a)]).is_err());
    }
}
