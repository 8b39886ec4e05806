//! Entanglement criteria used to certify that a state cannot help dense coding.

use crate::eigen::min_eigenvalue;
use crate::error::Result;
use crate::matrix::{partial_transpose, tensor, CMatrix, Side};
use crate::scalar::Real;
use crate::states::BipartiteState;

/// Uniform PSD tolerance for the criteria.
pub const PSD_TOL: f64 = 1e-9;

/// Positive partial transpose: `λ_min(ρ^{T_B}) ≥ −1e-9`.
pub fn is_ppt<T: Real>(s: &BipartiteState<T>) -> Result<bool> {
    is_ppt_on(s, Side::B)
}

pub fn is_ppt_on<T: Real>(s: &BipartiteState<T>, side: Side) -> Result<bool> {
    let pt = partial_transpose(s.rho(), s.d_a(), s.d_b(), side)?;
    Ok(min_eigenvalue(&pt)? >= -T::tol(PSD_TOL))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reduction {
    /// `ρ_A ⊗ I − ρ ⪰ 0`.
    pub holds_a: bool,
    /// `I ⊗ ρ_B − ρ ⪰ 0`; implies zero coherent information.
    pub holds_b: bool,
}

pub fn reduction_criterion<T: Real>(s: &BipartiteState<T>) -> Result<Reduction> {
    let a = &tensor(&s.reduced_a(), &CMatrix::identity(s.d_b())) - s.rho();
    let b = &tensor(&CMatrix::identity(s.d_a()), &s.reduced_b()) - s.rho();
    let tol = -T::tol(PSD_TOL);
    Ok(Reduction { holds_a: min_eigenvalue(&a)? >= tol, holds_b: min_eigenvalue(&b)? >= tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::coherent_info;
    use crate::states::{product, random_state, singlet, tiles_bound_entangled, werner_like};

    #[test]
    fn singlet_violates_both() {
        let s = singlet::<f64>();
        assert!(!is_ppt(&s).unwrap());
        let r = reduction_criterion(&s).unwrap();
        assert!(!r.holds_a && !r.holds_b);
    }

    #[test]
    fn singlet_partial_transpose_spectrum() {
        let pt = partial_transpose(singlet::<f64>().rho(), 2, 2, Side::B).unwrap();
        assert!((min_eigenvalue(&pt).unwrap() + 0.5).abs() < 1e-12);
        let red = &tensor(&singlet::<f64>().reduced_a(), &CMatrix::identity(2)) - singlet::<f64>().rho();
        assert!((min_eigenvalue(&red).unwrap() + 0.5).abs() < 1e-12);
    }

    #[test]
    fn products_pass() {
        let s = product(&CMatrix::<f64>::from_diag(&[0.2, 0.8]), &CMatrix::from_diag(&[0.6, 0.1, 0.3])).unwrap();
        assert!(is_ppt(&s).unwrap());
        assert_eq!(reduction_criterion(&s).unwrap(), Reduction { holds_a: true, holds_b: true });
    }

    #[test]
    fn tiles_state_is_ppt_and_satisfies_reduction() {
        let t = tiles_bound_entangled::<f64>();
        assert!(is_ppt(&t).unwrap());
        assert_eq!(reduction_criterion(&t).unwrap(), Reduction { holds_a: true, holds_b: true });
        assert_eq!(coherent_info(&t).unwrap(), 0.0);
    }

    #[test]
    fn werner_threshold() {
        // Two-qubit Werner states are PPT exactly for p <= 1/3.
        assert!(is_ppt(&werner_like(0.33f64).unwrap()).unwrap());
        assert!(!is_ppt(&werner_like(0.34f64).unwrap()).unwrap());
    }

    #[test]
    fn transposed_side_does_not_matter() {
        for seed in 0..30 {
            let s = random_state::<f64>(2, 3, seed).unwrap();
            assert_eq!(is_ppt_on(&s, Side::A).unwrap(), is_ppt_on(&s, Side::B).unwrap());
        }
    }
}
