//! Expected values computed by routes independent of the library code paths:
//! explicit index sums, closed-form spectra and scalar Shannon entropies.

use densecap::capacity::{bennett_example, objective_cd};
use densecap::channels::{dephasing, identity_channel, ChannelParams};
use densecap::encoding::{encode_ensemble, weyl_set};
use densecap::matrix::{partial_trace, CMatrix, Side, C};
use densecap::measures::{coherent_info, entropy, holevo, i_sd, mutual_info};
use densecap::states::{power, random_state, singlet, werner_like};

fn shannon(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

fn werner_spectrum(p: f64) -> [f64; 4] {
    let a = (1.0 + 3.0 * p) / 4.0;
    let b = (1.0 - p) / 4.0;
    [a, b, b, b]
}

/// Reduced operators by explicit four-index summation.
fn reduce_by_loops(m: &CMatrix<f64>, da: usize, db: usize, keep: Side) -> CMatrix<f64> {
    let d = match keep {
        Side::A => da,
        Side::B => db,
    };
    let mut out = CMatrix::zeros(d, d);
    for i in 0..da {
        for j in 0..da {
            for k in 0..db {
                for l in 0..db {
                    let v = m[(i * db + k, j * db + l)];
                    match keep {
                        Side::A if k == l => out[(i, j)] += v,
                        Side::B if i == j => out[(k, l)] += v,
                        _ => {}
                    }
                }
            }
        }
    }
    out
}

#[test]
fn partial_trace_matches_index_summation() {
    for (da, db, seed) in [(2, 2, 1), (2, 3, 2), (3, 2, 3), (3, 3, 4)] {
        let s = random_state::<f64>(da, db, seed).unwrap();
        for keep in [Side::A, Side::B] {
            let fast = partial_trace(s.rho(), da, db, keep).unwrap();
            assert!(fast.max_abs_diff(&reduce_by_loops(s.rho(), da, db, keep)) <= 1e-12);
            assert!((fast.trace().re - 1.0).abs() <= 1e-12);
        }
    }
}

#[test]
fn werner_entropy_matches_closed_form() {
    let s = entropy(werner_like(0.9f64).unwrap().rho()).unwrap();
    let oracle = shannon(&werner_spectrum(0.9));
    assert!((s - oracle).abs() < 1e-12);
    // Frozen from the oracle above.
    assert!((s - 0.503_183_731_680_583_7).abs() < 1e-12);
}

#[test]
fn werner_measures_match_closed_form() {
    let w = werner_like(0.9f64).unwrap();
    let s = shannon(&werner_spectrum(0.9));
    assert!((coherent_info(&w).unwrap() - (1.0 - s)).abs() < 1e-12);
    assert!((mutual_info(&w).unwrap() - (2.0 - s)).abs() < 1e-12);
    assert!((i_sd(&w).unwrap() - (2.0 - s)).abs() < 1e-12);
    assert!((coherent_info(&w).unwrap() - 0.496_816_268_319_416_3).abs() < 1e-12);
}

#[test]
fn werner_encoding_holevo() {
    let w = werner_like(0.9f64).unwrap();
    let e = encode_ensemble(&w, &identity_channel(2), &weyl_set(2).unwrap()).unwrap();
    let oracle = 1.0 + (1.0 - shannon(&werner_spectrum(0.9)));
    assert!((holevo(&e).unwrap() - oracle).abs() < 1e-12);
}

#[test]
fn power_entropy_on_werner() {
    let w = werner_like(0.9f64).unwrap();
    let s1 = shannon(&werner_spectrum(0.9));
    let p2 = power(&w, 2).unwrap();
    assert!((entropy(p2.rho()).unwrap() - 2.0 * s1).abs() < 1e-10);
    let single = power(&singlet::<f64>(), 2).unwrap();
    assert!((entropy(&single.reduced_a()).unwrap() - 2.0).abs() < 1e-10);
}

#[test]
fn bennett_gain_is_binary_entropy() {
    let h = shannon(&[0.9, 0.1]);
    let out = bennett_example(&CMatrix::from_diag(&[0.9, 0.1]), &singlet::<f64>()).unwrap();
    assert!((out.gain - h).abs() < 1e-12);
    assert!((out.before - (1.0 - h)).abs() < 1e-12);
    assert!((out.after - 1.0).abs() < 1e-12);
    assert!((h - 0.468_995_593_589_281_2).abs() < 1e-15);
}

#[test]
fn depolarizing_by_explicit_pauli_sum() {
    // σ_z/2 + I/2 = |0⟩⟨0|; the four scaled Paulis average it to I/2.
    let ch = densecap::channels::depolarizing_qubit(1.0f64).unwrap();
    let out = ch.apply(&CMatrix::from_diag(&[1.0, 0.0])).unwrap();
    let expect =
        CMatrix::from_vec(2, 2, vec![C::new(0.5, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(0.5, 0.0)]).unwrap();
    assert!(out.max_abs_diff(&expect) < 1e-15);
}

#[test]
fn dephased_singlet_has_no_coherent_information() {
    let out = dephasing::<f64>(2).apply_a(&singlet()).unwrap();
    // Spectrum (1/2, 1/2): S = 1; Bob's marginal is I/2: S_B = 1.
    assert!((entropy(out.rho()).unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(coherent_info(&out).unwrap(), 0.0);
    let id = ChannelParams::<f64>::zeros(2, 2, 4).unwrap();
    assert!((objective_cd(&singlet(), &id).unwrap() - 2.0).abs() < 1e-12);
}
