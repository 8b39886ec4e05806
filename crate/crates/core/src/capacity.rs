//! Numerical search for the dense-coding capacities.
//!
//! Two objectives are exposed:
//!
//! * `Cd`: bits per use of a `d`-dimensional channel for fixed `n`,
//!   `log₂ d + sup_Λ I^B((Λ ⊗ I)(ρ^⊗n))` over maps with `d`-dimensional output.
//! * `Csd`: bits per transmitted qubit, `sup_Λ I_M(η) / S(η_A)` with
//!   `η = (Λ ⊗ I)(ρ^⊗n)` and the output dimension free (searched up to `d_A^n`).
//!   Raw qubits always get 1 bit through, so the reported value is floored at 1.
//!
//! Reports are lower bounds on the suprema: the search is local, multi-start,
//! and only the requested `n` is examined. Nothing here claims convergence in `n`.

use crate::channels::{ChannelParams, KrausChannel};
use crate::error::{Error, Result};
use crate::matrix::{tensor, CMatrix, C};
use crate::measures::{Entropies, SENDER_ENTROPY_FLOOR};
use crate::optimizer::NelderMead;
use crate::random::rng_from_seed;
use crate::scalar::Real;
use crate::states::{power, random_state, BipartiteState};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const LIMITATIONS: &str = "best value over the searched tensor power and output dimensions; \
a lower bound on the supremum, with no claim of convergence in n";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Objective {
    Cd,
    Csd,
}

impl std::str::FromStr for Objective {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cd" => Ok(Objective::Cd),
            "csd" => Ok(Objective::Csd),
            other => Err(Error::Parse(format!("unknown objective '{other}' (expected cd or csd)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OptBudget {
    pub restarts: usize,
    pub max_iters: usize,
    pub tol: f64,
}

impl Default for OptBudget {
    fn default() -> Self {
        Self { restarts: 32, max_iters: 2000, tol: 1e-9 }
    }
}

impl OptBudget {
    fn simplex<T: Real>(&self) -> NelderMead<T> {
        NelderMead { max_iters: self.max_iters, tol: T::lit(self.tol), step: T::lit(0.5) }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CapacityReport<T> {
    pub objective: Objective,
    pub n: usize,
    /// `None` when the output dimension was left free and searched.
    pub d_out: Option<usize>,
    pub searched_d_out: Vec<usize>,
    /// `max(raw_value, floor)`.
    pub best_value: T,
    /// Best objective value actually attained by `best_params`.
    pub raw_value: T,
    pub floor: T,
    pub best_params: ChannelParams<T>,
    pub restarts: usize,
    pub iterations: usize,
    pub evaluations: usize,
    /// `(cumulative iteration, best value so far)`.
    pub history: Vec<(usize, T)>,
    pub seed: u64,
    pub limitations: String,
}

/// `log₂ d_out + I^B((Λ ⊗ I)(ρ_n))`.
pub fn objective_cd<T: Real>(s_n: &BipartiteState<T>, p: &ChannelParams<T>) -> Result<T> {
    let eta = p.to_channel()?.apply_a(s_n)?;
    Ok(T::lit(p.d_out as f64).log2() + Entropies::of(&eta)?.coherent_info())
}

/// `I_sd((Λ ⊗ I)(ρ_n))`, or 1 when the map leaves Alice with a pure share.
pub fn objective_csd<T: Real>(s_n: &BipartiteState<T>, p: &ChannelParams<T>) -> Result<T> {
    let eta = p.to_channel()?.apply_a(s_n)?;
    csd_value(&Entropies::of(&eta)?)
}

fn csd_value<T: Real>(e: &Entropies<T>) -> Result<T> {
    if e.a <= T::tol(SENDER_ENTROPY_FLOOR) {
        return Ok(T::one());
    }
    e.i_sd()
}

pub fn evaluate<T: Real>(objective: Objective, s_n: &BipartiteState<T>, p: &ChannelParams<T>) -> Result<T> {
    match objective {
        Objective::Cd => objective_cd(s_n, p),
        Objective::Csd => objective_csd(s_n, p),
    }
}

/// Re-evaluates a report's witness on the original state.
pub fn replay<T: Real>(s: &BipartiteState<T>, report: &CapacityReport<T>) -> Result<T> {
    evaluate(report.objective, &power(s, report.n)?, &report.best_params)
}

/// Seed of restart `r` for output dimension `d_out`; restart 0 is always the
/// zero-angle start and does not consume randomness.
fn restart_seed(base: u64, d_out: usize, r: usize) -> u64 {
    base.wrapping_add(r as u64).wrapping_add((d_out as u64) << 32)
}

struct Run<T> {
    params: ChannelParams<T>,
    value: T,
    iterations: usize,
    evaluations: usize,
    trace: Vec<(usize, T)>,
}

/// Multi-start simplex ascent of `f` over parameters of the given shape.
/// Runs are merged in restart order, so results do not depend on threading.
fn multistart<T: Real>(
    shape: &ChannelParams<T>,
    budget: &OptBudget,
    seed: u64,
    f: impl Fn(&ChannelParams<T>) -> T + Sync,
) -> Vec<Run<T>> {
    let nm = budget.simplex::<T>();
    (0..budget.restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let start = if r == 0 {
                shape.clone()
            } else {
                let mut rng = rng_from_seed(restart_seed(seed, shape.d_out, r));
                ChannelParams::random(shape.d_in, shape.d_out, shape.env_dim, &mut rng).expect("shape validated")
            };
            let out = nm.maximize(|x| f(&shape.with_angles(x.to_vec())), start.angles);
            Run {
                params: shape.with_angles(out.x),
                value: out.value,
                iterations: out.iterations,
                evaluations: out.evaluations,
                trace: out.trace,
            }
        })
        .collect()
}

/// Searches `sup_Λ` of the chosen objective on `ρ^⊗n`.
///
/// `d_out = None` searches every output dimension in `1..=d_A^n` (required
/// to be given for `Cd`, where it defaults to `d_A^n`). `env_dim = None` uses
/// the Choi-rank bound `d_in · d_out`.
pub fn optimize<T: Real>(
    s: &BipartiteState<T>,
    objective: Objective,
    n: usize,
    d_out: Option<usize>,
    env_dim: Option<usize>,
    budget: &OptBudget,
    seed: u64,
) -> Result<CapacityReport<T>> {
    let s_n = power(s, n)?;
    let d_in = s_n.d_a();
    let candidates: Vec<usize> = match (objective, d_out) {
        (_, Some(0)) => return Err(Error::Domain("output dimension must be positive".into())),
        (_, Some(d)) => vec![d],
        (Objective::Cd, None) => vec![d_in],
        (Objective::Csd, None) => (1..=d_in).collect(),
    };

    let mut best: Option<(T, ChannelParams<T>)> = None;
    let mut history: Vec<(usize, T)> = Vec::new();
    let (mut iterations, mut evaluations, mut restarts) = (0usize, 0usize, 0usize);
    for &dout in &candidates {
        let env = env_dim.unwrap_or(d_in * dout);
        let shape = ChannelParams::zeros(d_in, dout, env)?;
        let runs =
            multistart(&shape, budget, seed, |p| evaluate(objective, &s_n, p).unwrap_or_else(|_| T::neg_infinity()));
        for run in runs {
            for &(it, v) in &run.trace {
                if history.last().is_none_or(|&(_, b)| v > b) {
                    history.push((iterations + it, v));
                }
            }
            if best.as_ref().is_none_or(|(b, _)| run.value > *b) {
                best = Some((run.value, run.params));
            }
            iterations += run.iterations;
            evaluations += run.evaluations;
            restarts += 1;
        }
    }
    let (raw_value, best_params) = best.expect("at least one restart");
    let floor = match objective {
        Objective::Cd => T::lit(best_params.d_out as f64).log2(),
        Objective::Csd => T::one(),
    };
    Ok(CapacityReport {
        objective,
        n,
        d_out: if objective == Objective::Csd { d_out } else { Some(candidates[0]) },
        searched_d_out: candidates,
        best_value: raw_value.max(floor),
        raw_value,
        floor,
        best_params,
        restarts,
        iterations,
        evaluations,
        history,
        seed,
        limitations: LIMITATIONS.to_string(),
    })
}

/// Best report over tensor powers `1..=n_max`; ties keep the smaller `n`.
pub fn optimize_over_n<T: Real>(
    s: &BipartiteState<T>,
    objective: Objective,
    n_max: usize,
    d_out: Option<usize>,
    budget: &OptBudget,
    seed: u64,
) -> Result<Vec<CapacityReport<T>>> {
    if n_max == 0 {
        return Err(Error::Domain("n_max must be >= 1".into()));
    }
    (1..=n_max).map(|n| optimize(s, objective, n, d_out, None, budget, seed)).collect()
}

/// Map `A' ⊗ A'' → A''` that discards the first factor of Alice's system.
pub fn discard_first_factor<T: Real>(d_first: usize, d_rest: usize) -> Result<KrausChannel<T>> {
    let kraus = (0..d_first)
        .map(|i| {
            let mut k = CMatrix::zeros(d_rest, d_first * d_rest);
            for o in 0..d_rest {
                k[(o, i * d_rest + o)] = C::new(T::one(), T::zero());
            }
            k
        })
        .collect();
    KrausChannel::new(d_first * d_rest, d_rest, kraus)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BennettOutcome<T> {
    /// `I^B(ρ_{A'} ⊗ ρ_{A''B})`.
    pub before: T,
    /// `I^B(ρ_{A''B})`, i.e. after Alice discards `A'`.
    pub after: T,
    pub gain: T,
    /// `S(ρ_{A'})`.
    pub discarded_entropy: T,
}

/// Local discarding can raise coherent information: compares
/// `I^B(ρ_{A'} ⊗ ρ_{A''B})` with `I^B(ρ_{A''B})`.
///
/// Whenever `before > 0` the gain equals `S(ρ_{A'})`.
pub fn bennett_example<T: Real>(rho_aprime: &CMatrix<T>, base: &BipartiteState<T>) -> Result<BennettOutcome<T>> {
    let aprime = BipartiteState::new(rho_aprime.rows(), 1, rho_aprime.clone())?;
    base.validate()?;
    let after = Entropies::of(base)?.coherent_info();
    if after <= T::zero() {
        return Err(Error::Domain("base state must carry positive coherent information".into()));
    }
    let composite =
        BipartiteState::new_unchecked(aprime.dim() * base.d_a(), base.d_b(), tensor(aprime.rho(), base.rho()))?;
    let before = Entropies::of(&composite)?.coherent_info();
    let discarded_entropy = crate::measures::entropy(aprime.rho())?;
    Ok(BennettOutcome { before, after, gain: after - before, discarded_entropy })
}

/// `ρ_{A'} ⊗ ρ_{A''B}` as a bipartite state with Alice holding `A'A''`.
pub fn bennett_composite<T: Real>(rho_aprime: &CMatrix<T>, base: &BipartiteState<T>) -> Result<BipartiteState<T>> {
    BipartiteState::new(rho_aprime.rows() * base.d_a(), base.d_b(), tensor(rho_aprime, base.rho()))
}

/// Gain in coherent information from applying `ch` on Alice's side.
pub fn coherent_gain<T: Real>(s: &BipartiteState<T>, ch: &KrausChannel<T>) -> Result<T> {
    let before = Entropies::of(s)?.coherent_info();
    let after = Entropies::of(&ch.apply_a(s)?)?.coherent_info();
    Ok(after - before)
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TrialRecord<T> {
    pub index: usize,
    /// Seed of the sampled state; replays the trial on its own.
    pub seed: u64,
    pub coherent_before: T,
    pub coherent_after: T,
    pub gain: T,
    pub best_params: ChannelParams<T>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StudySummary<T> {
    pub trials: usize,
    pub base_seed: u64,
    pub gain_tol: f64,
    pub gain_count: usize,
    pub max_gain: T,
    pub budget: OptBudget,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StudyReport<T> {
    pub summary: StudySummary<T>,
    pub records: Vec<TrialRecord<T>>,
}

/// Trials whose gain exceeds this are counted as increases.
pub const GAIN_TOL: f64 = 1e-6;

/// One trial of the two-qubit study: maximize `S(ρ_B) − S(η)` over qubit maps
/// with at most two Kraus operators, starting from the identity and from
/// `budget.restarts − 1` random extremal draws.
pub fn sampling_trial<T: Real>(index: usize, seed: u64, budget: &OptBudget) -> Result<TrialRecord<T>> {
    let s = random_state::<T>(2, 2, seed)?;
    let before = Entropies::of(&s)?.coherent_info();
    let shape = ChannelParams::zeros(2, 2, 2)?;
    let runs = multistart(&shape, budget, seed, |p| {
        p.to_channel()
            .and_then(|ch| ch.apply_a(&s))
            .and_then(|eta| Entropies::of(&eta))
            .map(|e| e.coherent_raw())
            .unwrap_or_else(|_| T::neg_infinity())
    });
    let mut best: Option<(T, ChannelParams<T>)> = None;
    for run in runs {
        if best.as_ref().is_none_or(|(b, _)| run.value > *b) {
            best = Some((run.value, run.params));
        }
    }
    let (raw, best_params) = best.expect("at least one restart");
    let after = raw.max(T::zero());
    Ok(TrialRecord { index, seed, coherent_before: before, coherent_after: after, gain: after - before, best_params })
}

/// Random sampling over two-qubit states and local extremal maps, looking for
/// any increase of coherent information. Trial `i` uses seed `seed + i`.
pub fn sampling_study<T: Real>(trials: usize, budget: &OptBudget, seed: u64) -> Result<StudyReport<T>> {
    let records = (0..trials)
        .into_par_iter()
        .map(|i| sampling_trial(i, seed.wrapping_add(i as u64), budget))
        .collect::<Result<Vec<_>>>()?;
    let tol = T::lit(GAIN_TOL);
    let gain_count = records.iter().filter(|r| r.gain > tol).count();
    let max_gain = records.iter().map(|r| r.gain).fold(T::zero(), T::max);
    Ok(StudyReport {
        summary: StudySummary { trials, base_seed: seed, gain_tol: GAIN_TOL, gain_count, max_gain, budget: *budget },
        records,
    })
}
