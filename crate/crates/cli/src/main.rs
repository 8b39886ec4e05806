use clap::{Args, Parser, Subcommand, ValueEnum};
use densecap::capacity::{self, Objective, OptBudget};
use densecap::channels::{identity_channel, ChannelParams};
use densecap::criteria::{is_ppt, reduction_criterion};
use densecap::encoding::{verify_achievability, EncoderChoice, ACHIEVABILITY_TOL};
use densecap::measures::Entropies;
use densecap::random::rng_from_seed;
use densecap::{io, states, ComplexMatrix, Error, State};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Dense coding with noisy entanglement: information measures, capacity
/// search and the accompanying numerical experiments.
#[derive(Parser, Debug)]
#[command(name = "densecap", version)]
struct Cli {
    /// Worker threads for restarts and trials (0 = rayon default). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Entropies, coherent and mutual information, I_sd and entanglement criteria of a state.
    Measure {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Optimize the capacity over Alice's local maps.
    Capacity {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Csd)]
        objective: ObjectiveArg,
        /// Tensor power of the shared state.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Sweep n = 1..=N instead of a single power; the best report is emitted.
        #[arg(long)]
        n_max: Option<usize>,
        /// Output dimension of Alice's map (Cd default: d_A^n; Csd default: search 1..=d_A^n).
        #[arg(long)]
        dout: Option<usize>,
        /// Stinespring environment dimension (default d_in * d_out).
        #[arg(long)]
        env: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// json: full report; csv: optimization history.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check Holevo(encoding) = log d + I^B over a seeded corpus.
    Verify {
        #[arg(long, value_enum, default_value_t = Preset::RandomChannel)]
        preset: Preset,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random two-qubit states vs. local extremal maps: can Alice raise I^B?
    Sample {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-trial CSV; the JSON summary goes next to it unless --summary is given.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Stdout format when --out is absent.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Coherent information before and after Alice discards a mixed ancilla diag(p0, 1-p0).
    Bennett {
        #[arg(long, default_value_t = 0.9)]
        p0: f64,
        /// Base state shared with Bob.
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct StateArgs {
    /// singlet | maxent | werner | mixed | tiles | random, or a path to a state JSON file.
    #[arg(long, default_value = "singlet")]
    state: String,
    /// Werner mixing weight.
    #[arg(long)]
    p: Option<f64>,
    /// maxent: local dimension (default 2); mixed: total dimension (default 4, split evenly).
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    da: Option<usize>,
    #[arg(long)]
    db: Option<usize>,
    /// Seed for --state random.
    #[arg(long = "state-seed", default_value_t = 0)]
    state_seed: u64,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    #[arg(long, default_value_t = 2000)]
    iters: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

impl BudgetArgs {
    fn budget(&self) -> OptBudget {
        OptBudget { restarts: self.restarts, max_iters: self.iters, tol: self.tol }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ObjectiveArg {
    Cd,
    Csd,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Preset {
    Pure,
    #[value(name = "random-2x2")]
    #[serde(rename = "random-2x2")]
    Random2x2,
    RandomChannel,
}

enum Failure {
    Input(String),
    Numeric(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotHermitian { .. } | Error::Invariant(_) | Error::DegenerateSenderEntropy(_) => {
                Failure::Numeric(e.to_string())
            }
            Error::Dimension(_) | Error::Domain(_) | Error::Parse(_) => Failure::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("numerical invariant violated: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(4)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Measure { state, out } => cmd_measure(&state, out.as_deref()),
        Command::Capacity { state, objective, n, n_max, dout, env, budget, seed, out, format } => {
            let objective = match objective {
                ObjectiveArg::Cd => Objective::Cd,
                ObjectiveArg::Csd => Objective::Csd,
            };
            cmd_capacity(&state, objective, n, n_max, dout, env, &budget.budget(), seed, out.as_deref(), format)
        }
        Command::Verify { preset, trials, seed, out } => cmd_verify(preset, trials, seed, out.as_deref()),
        Command::Sample { trials, budget, seed, out, summary, format } => {
            cmd_sample(trials, &budget.budget(), seed, out.as_deref(), summary.as_deref(), format)
        }
        Command::Bennett { p0, state, out } => cmd_bennett(p0, &state, out.as_deref()),
    }
}

fn load_state(args: &StateArgs) -> Result<State, Failure> {
    let s = match args.state.as_str() {
        "singlet" => states::singlet(),
        "maxent" => states::max_entangled(args.d.unwrap_or(2))?,
        "werner" => {
            let p = args.p.ok_or_else(|| Failure::Input("--state werner needs --p".into()))?;
            states::werner_like(p)?
        }
        "mixed" => {
            let (da, db) = match (args.da, args.db) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    let d = args.d.unwrap_or(4);
                    let side = (d as f64).sqrt().round() as usize;
                    if side * side != d {
                        return Err(Failure::Input(format!("--d {d} is not a square; pass --da and --db")));
                    }
                    (side, side)
                }
            };
            states::maximally_mixed(da, db)?
        }
        "tiles" => states::tiles_bound_entangled(),
        "random" => states::random_state(args.da.unwrap_or(2), args.db.unwrap_or(2), args.state_seed)?,
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read state file '{path}': {e}")))?;
            io::state_from_json(&text)?
        }
    };
    Ok(s)
}

fn emit(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Measurement {
    d_a: usize,
    d_b: usize,
    entropy: f64,
    entropy_a: f64,
    entropy_b: f64,
    coherent_info: f64,
    mutual_info: f64,
    /// `null` when Alice's share is pure.
    i_sd: Option<f64>,
    is_ppt: bool,
    reduction_a: bool,
    reduction_b: bool,
}

fn cmd_measure(args: &StateArgs, out: Option<&Path>) -> Outcome {
    let s = load_state(args)?;
    let e = Entropies::of(&s)?;
    let i_sd = match e.i_sd() {
        Ok(v) => Some(v),
        Err(Error::DegenerateSenderEntropy(_)) => None,
        Err(other) => return Err(other.into()),
    };
    let red = reduction_criterion(&s)?;
    let m = Measurement {
        d_a: s.d_a(),
        d_b: s.d_b(),
        entropy: e.joint,
        entropy_a: e.a,
        entropy_b: e.b,
        coherent_info: e.coherent_info(),
        mutual_info: e.mutual_info(),
        i_sd,
        is_ppt: is_ppt(&s)?,
        reduction_a: red.holds_a,
        reduction_b: red.holds_b,
    };
    emit(&to_json(&m), out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_capacity(
    args: &StateArgs,
    objective: Objective,
    n: usize,
    n_max: Option<usize>,
    dout: Option<usize>,
    env: Option<usize>,
    budget: &OptBudget,
    seed: u64,
    out: Option<&Path>,
    format: Format,
) -> Outcome {
    let s = load_state(args)?;
    let report = match n_max {
        Some(n_max) => {
            let reports = capacity::optimize_over_n(&s, objective, n_max, dout, budget, seed)?;
            let mut best = None;
            for r in reports {
                if best.as_ref().is_none_or(|b: &densecap::Report| r.best_value > b.best_value) {
                    best = Some(r);
                }
            }
            best.expect("n_max >= 1")
        }
        None => capacity::optimize(&s, objective, n, dout, env, budget, seed)?,
    };
    let text = match format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut csv = String::from("iteration,value\n");
            for (it, v) in &report.history {
                csv.push_str(&format!("{it},{v:.16e}\n"));
            }
            csv
        }
    };
    emit(&text, out)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct VerifySummary {
    preset: Preset,
    trials: usize,
    seed: u64,
    tolerance: f64,
    max_gap: f64,
    mean_lhs: f64,
    fallback_count: usize,
    passed: bool,
}

fn cmd_verify(preset: Preset, trials: usize, seed: u64, out: Option<&Path>) -> Outcome {
    let mut max_gap = 0.0f64;
    let mut sum_lhs = 0.0;
    let mut fallback_count = 0;
    for i in 0..trials {
        let trial_seed = seed.wrapping_add(i as u64);
        let (s, ch): (State, densecap::Channel) = match preset {
            Preset::Pure => (states::random_pure_state(2, 2, trial_seed)?, identity_channel(2)),
            Preset::Random2x2 => {
                let rank = 1 + i % 4;
                (states::random_state_with_rank(2, 2, rank, trial_seed)?, identity_channel(2))
            }
            Preset::RandomChannel => {
                let rank = 1 + i % 4;
                let env = 1 + (i / 4) % 4;
                let s = states::random_state_with_rank(2, 2, rank, trial_seed)?;
                let mut rng = rng_from_seed(trial_seed ^ 0x5eed_c4a7);
                (s, ChannelParams::random(2, 2, env, &mut rng)?.to_channel()?)
            }
        };
        let check = verify_achievability(&s, &ch)?;
        max_gap = max_gap.max(check.gap.abs());
        sum_lhs += check.lhs;
        if check.choice == EncoderChoice::TraceAndPrepare {
            fallback_count += 1;
        }
    }
    let passed = max_gap <= ACHIEVABILITY_TOL;
    let summary = VerifySummary {
        preset,
        trials,
        seed,
        tolerance: ACHIEVABILITY_TOL,
        max_gap,
        mean_lhs: if trials > 0 { sum_lhs / trials as f64 } else { 0.0 },
        fallback_count,
        passed,
    };
    emit(&to_json(&summary), out)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification(format!("max gap {max_gap:e} exceeds {ACHIEVABILITY_TOL:e}")))
    }
}

fn cmd_sample(
    trials: usize,
    budget: &OptBudget,
    seed: u64,
    out: Option<&Path>,
    summary: Option<&Path>,
    format: Format,
) -> Outcome {
    let report = capacity::sampling_study::<f64>(trials, budget, seed)?;
    let csv = io::study_csv(&report);
    let summary_json = to_json(&report.summary);
    match out {
        Some(path) => {
            std::fs::write(path, &csv)?;
            let summary_path = summary.map(Path::to_path_buf).unwrap_or_else(|| path.with_extension("summary.json"));
            std::fs::write(summary_path, &summary_json)?;
            print!("{summary_json}");
        }
        None => {
            if let Some(path) = summary {
                std::fs::write(path, &summary_json)?;
            }
            match format {
                Format::Csv => print!("{csv}"),
                Format::Json => print!("{}", to_json(&report)),
            }
        }
    }
    Ok(())
}

fn cmd_bennett(p0: f64, args: &StateArgs, out: Option<&Path>) -> Outcome {
    if !(0.0..=1.0).contains(&p0) {
        return Err(Failure::Input(format!("--p0 {p0} outside [0, 1]")));
    }
    let base = load_state(args)?;
    let ancilla = ComplexMatrix::from_diag(&[p0, 1.0 - p0]);
    let outcome = capacity::bennett_example(&ancilla, &base)?;
    emit(&to_json(&outcome), out)
}
