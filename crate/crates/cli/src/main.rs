//! `subsetsum`: command-line front end for the solvers.
//!
//! Every command but `bench` prints one JSON object on stdout (schema "1");
//! `bench` prints CSV. Diagnostics go to stderr. Exit status is 0 on
//! success, 1 for a "no" when `--exit-status` is given, 2 on bad input.

mod args;
mod bench;
mod error;

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Value};
use subsetsum::instance::Dropped;
use subsetsum::oracle::bellman_all_sums;
use subsetsum::polyspace::{polyspace_decide, PolyspaceConfig};
use subsetsum::solver::{self, MAX_DELTA};
use subsetsum::unbounded::unbounded_subset_sum;
use subsetsum::{Instance, Rng};

use args::{Cli, Command, InputArgs, SolveArgs};
use error::CliError;

const SCHEMA: &str = "1";

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// A parsed instance plus what the input filter removed.
struct Loaded {
    inst: Instance,
    dropped: Dropped,
    parse_ms: f64,
}

fn load(input: &InputArgs) -> Result<Loaded, CliError> {
    let start = Instant::now();
    let path = match &input.file {
        Some(p) if p.as_os_str() != "-" => p.display().to_string(),
        _ => "<stdin>".to_string(),
    };
    let io_err = |source| CliError::Io {
        path: path.clone(),
        source,
    };
    let text = match &input.file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(io_err)?,
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
            s
        }
    };
    let (items, header_t) = Instance::parse_raw(&text).map_err(|source| CliError::Parse {
        path: path.clone(),
        source,
    })?;
    let t = match &input.target {
        Some(s) => match s.parse::<usize>() {
            Ok(t) if t > 0 => t,
            _ => return Err(CliError::BadTarget(s.clone())),
        },
        None => header_t,
    };
    let (inst, dropped) = Instance::new(items, t);
    if dropped.total() > 0 {
        eprintln!(
            "warning: dropped {} item(s): {} zero, {} above the target {t}",
            dropped.total(),
            dropped.zeros,
            dropped.over_target
        );
    }
    Ok(Loaded {
        inst,
        dropped,
        parse_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Clamps δ into (0, 1/4]; non-positive values are an input error.
fn clamp_delta(delta: f64) -> Result<f64, CliError> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(CliError::BadDelta(delta));
    }
    if delta > MAX_DELTA {
        eprintln!("warning: --delta {delta} clamped to {MAX_DELTA}");
        return Ok(MAX_DELTA);
    }
    Ok(delta)
}

fn pick_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(Rng::entropy_seed)
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(s) = std::env::var("SUBSETSUM_THREADS") {
        let threads = match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => n,
            _ => return Err(CliError::BadThreads(s)),
        };
        // only fails when a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    Ok(())
}

/// The fields every JSON report shares.
fn report(algorithm: &str, loaded: &Loaded, seed: Option<u64>, delta: Option<f64>, solve_ms: f64) -> Value {
    json!({
        "schema": SCHEMA,
        "algorithm": algorithm,
        "n": loaded.inst.len(),
        "t": loaded.inst.target(),
        "seed": seed,
        "delta": delta,
        "dropped_items": {
            "zeros": loaded.dropped.zeros,
            "over_target": loaded.dropped.over_target,
            "total": loaded.dropped.total(),
        },
        "timings_ms": { "parse": loaded.parse_ms, "solve": solve_ms },
    })
}

fn emit(mut report: Value, extra: Value) {
    if let (Value::Object(base), Value::Object(more)) = (&mut report, extra) {
        base.extend(more);
    }
    println!("{report}");
}

fn decided(answer: bool, exit_status: bool) -> ExitCode {
    if exit_status && !answer {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn distinct(items: &[usize]) -> Vec<usize> {
    let mut z = items.to_vec();
    z.dedup(); // items are sorted
    z
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Solve(args) => solve(args),
        Command::SolveAllSums(args) => solve_all_sums(args),
        Command::Unbounded(input) => {
            let loaded = load(&input)?;
            let start = Instant::now();
            let t = loaded.inst.target();
            let sums = unbounded_subset_sum(&distinct(loaded.inst.items()), t);
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let answer = sums.contains(t);
            emit(
                report("unbounded_subset_sum", &loaded, None, None, ms),
                json!({ "answer": answer, "sums_count": sums.len() }),
            );
            Ok(decided(answer, input.exit_status))
        }
        Command::Polyspace(args) => {
            let loaded = load(&args.input)?;
            let seed = pick_seed(args.seed);
            let config = PolyspaceConfig {
                repetitions: args.repetitions,
                pool_size: args.pool_size,
            };
            let start = Instant::now();
            let outcome = polyspace_decide(&loaded.inst, seed, config)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let attempts: Vec<Value> = outcome
                .attempts
                .iter()
                .map(|a| json!({ "gates": a.circuit_gates, "tau": a.tau, "p": a.p, "value": a.value }))
                .collect();
            emit(
                report("polyspace_decide", &loaded, Some(seed), None, ms),
                json!({ "answer": outcome.answer, "attempts": attempts }),
            );
            Ok(decided(outcome.answer, args.input.exit_status))
        }
        Command::Oracle(input) => {
            let loaded = load(&input)?;
            let start = Instant::now();
            let sums = bellman_all_sums(&loaded.inst);
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let answer = sums.contains(loaded.inst.target());
            emit(
                report("bellman_all_sums", &loaded, None, None, ms),
                json!({ "answer": answer, "sums_count": sums.len() }),
            );
            Ok(decided(answer, input.exit_status))
        }
        Command::Bench(args) => {
            let ts = bench::parse_sweep(&args.t_sweep)?;
            let delta = clamp_delta(args.delta)?;
            let seed = pick_seed(args.seed);
            eprintln!("bench: n={} seed={seed} delta={delta}", args.n);
            print!("{}", bench::to_csv(&bench::run(&args, &ts, seed, delta)));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn solve(args: SolveArgs) -> Result<ExitCode, CliError> {
    let delta = clamp_delta(args.delta)?;
    let loaded = load(&args.input)?;
    let seed = pick_seed(args.seed);
    let start = Instant::now();
    let decision = solver::decide(&loaded.inst, delta, seed);
    let ms = start.elapsed().as_secs_f64() * 1e3;
    emit(
        report("faster_subset_sum", &loaded, Some(seed), Some(delta), ms),
        json!({ "answer": decision.answer, "error_bound": decision.error_bound }),
    );
    Ok(decided(decision.answer, args.input.exit_status))
}

fn solve_all_sums(args: SolveArgs) -> Result<ExitCode, CliError> {
    let delta = clamp_delta(args.delta)?;
    let loaded = load(&args.input)?;
    let seed = pick_seed(args.seed);
    let start = Instant::now();
    let sums = solver::all_sums(&loaded.inst, delta, seed);
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let mut extra = json!({ "sums_count": sums.len() });
    if args.print_sums {
        extra["sums"] = json!(sums.to_vec());
    }
    emit(report("faster_subset_sum", &loaded, Some(seed), Some(delta), ms), extra);
    Ok(ExitCode::SUCCESS)
}
