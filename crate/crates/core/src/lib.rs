//! Dense coding over mixed shared states: how many classical bits per qubit
//! sent survive when the pre-shared entanglement is noisy.
//!
//! Alice and Bob share copies of a bipartite state `ρ`. Alice may process her
//! halves with any local channel `Λ`, then encodes classical data with `d²`
//! scrambling unitaries before sending her share over a noiseless channel.
//! The rate per transmitted qubit is `I_M(η) / S(η_A)` for `η = (Λ ⊗ I)(ρ^⊗n)`,
//! maximized over `n` and `Λ`.
//!
//! Everything numerical is generic over [`Real`]; the aliases below fix the
//! scalar to `f64`, which is what the tolerances are calibrated for.

pub mod capacity;
pub mod channels;
pub mod criteria;
pub mod eigen;
pub mod encoding;
pub mod error;
pub mod io;
pub mod matrix;
pub mod measures;
pub mod optimizer;
pub mod random;
pub mod scalar;
pub mod states;

pub use error::{Error, Result};
pub use matrix::Side;
pub use scalar::Real;

pub type ComplexMatrix = matrix::CMatrix<f64>;
pub type State = states::BipartiteState<f64>;
pub type Channel = channels::KrausChannel<f64>;
pub type Params = channels::ChannelParams<f64>;
pub type Ensemble = measures::Ensemble<f64>;
pub type Report = capacity::CapacityReport<f64>;
pub type Study = capacity::StudyReport<f64>;
