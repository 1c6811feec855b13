use std::time::Instant;

use rayon::prelude::*;
use subsetsum::oracle::bellman_all_sums;
use subsetsum::solver::faster_subset_sum;
use subsetsum::unbounded::unbounded_subset_sum;
use subsetsum::{Instance, Rng};

use crate::args::{Algorithm, BenchArgs};
use crate::error::CliError;

/// One timed run.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub t: usize,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub ms: f64,
}

/// Parses `A..B` into `A, 2A, 4A, ...` up to `B`; bounds are integers or `2^k`.
pub fn parse_sweep(sweep: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::BadSweep(sweep.to_string());
    let bound = |s: &str| -> Option<usize> {
        let s = s.trim();
        let v = match s.split_once('^') {
            Some((base, exp)) => {
                let base: usize = base.trim().parse().ok()?;
                base.checked_pow(exp.trim().parse().ok()?)?
            }
            None => s.parse().ok()?,
        };
        (v > 0).then_some(v)
    };
    let (lo, hi) = sweep.split_once("..").ok_or_else(bad)?;
    let (lo, hi) = (bound(lo).ok_or_else(bad)?, bound(hi).ok_or_else(bad)?);
    if lo > hi {
        return Err(bad());
    }
    let mut ts = Vec::new();
    let mut t = lo;
    while t <= hi {
        ts.push(t);
        t = match t.checked_mul(2) {
            Some(v) => v,
            None => break,
        };
    }
    Ok(ts)
}

/// Random instance with `n` items in `[1, t]`, determined by `seed`.
fn random_items(n: usize, t: usize, seed: u64) -> Vec<usize> {
    let mut rng = Rng::new(seed);
    (0..n).map(|_| 1 + rng.below(t)).collect()
}

fn time_one(alg: Algorithm, items: &[usize], t: usize, delta: f64, seed: u64) -> f64 {
    let start = Instant::now();
    match alg {
        Algorithm::Faster => {
            let mut set = items.to_vec();
            set.sort_unstable();
            set.dedup();
            std::hint::black_box(faster_subset_sum(&set, t, delta, &mut Rng::new(seed)));
        }
        Algorithm::Bellman => {
            std::hint::black_box(bellman_all_sums(&Instance::from_items(items, t)));
        }
        Algorithm::Unbounded => {
            let mut set = items.to_vec();
            set.sort_unstable();
            set.dedup();
            std::hint::black_box(unbounded_subset_sum(&set, t));
        }
    }
    start.elapsed().as_secs_f64() * 1e3
}

/// Times every (t, algorithm, run) and returns rows sorted by (t, algorithm, seed).
///
/// Runs are independent and may execute concurrently; the sort makes the
/// output order deterministic either way.
pub fn run(args: &BenchArgs, ts: &[usize], base_seed: u64, delta: f64) -> Vec<Row> {
    let mut algorithms = args.algorithms.clone();
    algorithms.sort();
    algorithms.dedup();
    let jobs: Vec<(usize, Algorithm, u64)> = ts
        .iter()
        .flat_map(|&t| {
            let algorithms = &algorithms;
            (0..args.reps as u64).flat_map(move |r| {
                algorithms.iter().map(move |&a| (t, a, base_seed.wrapping_add(r)))
            })
        })
        .collect();
    let mut rows: Vec<Row> = jobs
        .into_par_iter()
        .map(|(t, algorithm, seed)| {
            let items = random_items(args.n, t, seed);
            let ms = time_one(algorithm, &items, t, delta, seed);
            Row { t, algorithm, seed, ms }
        })
        .collect();
    rows.sort_by_key(|r| (r.t, r.algorithm, r.seed));
    rows
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut out = String::from("t,algorithm,ms,seed\n");
    for r in rows {
        out.push_str(&format!("{},{},{:.3},{}\n", r.t, r.algorithm.name(), r.ms, r.seed));
    }
    out
}
