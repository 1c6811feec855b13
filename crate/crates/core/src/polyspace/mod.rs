//! Low-space Subset Sum through arithmetic circuits over `Z_p`.
//!
//! One random run of the randomized solver is recorded as a circuit over
//! vectors of naturals (unions become additions, sumsets become
//! convolutions). Entry `t` of its output is nonzero exactly when the run
//! (with caps dropped) finds `t`. That entry is computed modulo a random
//! prime `p ≡ 1 (mod τ)` by evaluating the circuit over scalars once per
//! Fourier coefficient, so memory stays proportional to the circuit rather
//! than to `t`.
//!
//! Correctness of the prime search does not depend on any conjecture; only
//! the bound on how far the scan over `1 + kτ` has to go does.

pub mod circuit;
pub mod dft;
pub mod eval;
pub mod field;

pub use circuit::{build_circuit, build_instance_circuit, Circuit, CircuitBuilder, Gate, GateId};
pub use eval::{dft_entry_evaluate, evaluate_entries, evaluate_entry, evaluate_entry_with_stats, EvalStats};
pub use field::{find_prime, find_root_of_unity, FieldParams};

use thiserror::Error;

use crate::instance::Instance;
use crate::preprocess;
use crate::rng::Rng;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyspaceError {
    #[error("τ = {0} is not a power of two >= 2")]
    InvalidTau(u64),
    #[error("only {found} of {wanted} primes of the form 1 + k*{tau} fit in 64 bits")]
    PrimeSearchExhausted { tau: u64, found: usize, wanted: usize },
    #[error("τ = {tau} does not divide p - 1 = {}", p - 1)]
    TauDoesNotDivide { p: u64, tau: u64 },
    #[error("{omega} is not a primitive {tau}-th root of unity mod {p}")]
    NotPrimitive { p: u64, tau: u64, omega: u64 },
    #[error("no primitive {tau}-th root of unity mod {p} found in {attempts} attempts")]
    RootNotFound { p: u64, tau: u64, attempts: usize },
}

/// Target probability of a wrong "no" across all repetitions.
pub const TARGET_MISS: f64 = 1e-3;

/// Tunables of [`polyspace_decide`]. `None` picks the default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PolyspaceConfig {
    /// Independent (circuit, prime) draws; default
    /// `⌈ln(TARGET_MISS) / ln(δ)⌉` with `δ = min(1/n, 1/4)`.
    pub repetitions: Option<usize>,
    /// Number of primes to draw `p` from; default `max(64, n²)`.
    pub pool_size: Option<usize>,
}

impl PolyspaceConfig {
    pub fn repetitions_for(&self, n: usize) -> usize {
        self.repetitions.unwrap_or_else(|| {
            let delta = circuit::circuit_delta(n);
            (TARGET_MISS.ln() / delta.ln()).ceil().max(1.0) as usize
        })
    }

    pub fn pool_size_for(&self, n: usize) -> usize {
        self.pool_size.unwrap_or_else(|| 64.max(n.saturating_mul(n)))
    }
}

/// One (circuit, prime) draw.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attempt {
    pub circuit_gates: usize,
    pub tau: u64,
    pub p: u64,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyspaceOutcome {
    pub answer: bool,
    pub attempts: Vec<Attempt>,
}

/// Decides the instance by evaluating entry `t` of random circuits modulo
/// random primes; stops at the first nonzero. A "yes" is always correct.
pub fn polyspace_decide(
    inst: &Instance,
    seed: u64,
    config: PolyspaceConfig,
) -> Result<PolyspaceOutcome, PolyspaceError> {
    let t = inst.target();
    let mut outcome = PolyspaceOutcome {
        answer: false,
        attempts: Vec::new(),
    };
    if t == 0 {
        outcome.answer = true;
        return Ok(outcome);
    }
    let (z1, z2) = preprocess::to_two_sets(inst);
    let n = z1.len() + z2.len();
    let reps = config.repetitions_for(n);
    let pool = config.pool_size_for(n);
    let mut rng = Rng::new(seed);
    for _ in 0..reps {
        let circuit = build_instance_circuit(inst, rng.next_u64());
        let tau = circuit.vec_len() as u64;
        if t as u64 >= tau {
            // every gate's length bound is below τ, so entry t is zero
            outcome.attempts.push(Attempt {
                circuit_gates: circuit.gate_count(),
                tau,
                p: 0,
                value: 0,
            });
            continue;
        }
        let fp = FieldParams::sample(tau, pool, &mut rng)?;
        let value = evaluate_entry(&circuit, &fp, t);
        outcome.attempts.push(Attempt {
            circuit_gates: circuit.gate_count(),
            tau,
            p: fp.p,
            value,
        });
        if value != 0 {
            outcome.answer = true;
            break;
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decide_examples() {
        let yes = Instance::from_items(&[3, 5, 7], 12);
        let no = Instance::from_items(&[2, 4, 6], 7);
        let full = Instance::from_items(&(1..=12).collect::<Vec<_>>(), 78);
        for seed in 0..5 {
            let cfg = PolyspaceConfig::default();
            assert!(polyspace_decide(&yes, seed, cfg).unwrap().answer);
            assert!(!polyspace_decide(&no, seed, cfg).unwrap().answer);
            assert!(polyspace_decide(&full, seed, cfg).unwrap().answer);
        }
    }

    #[test]
    fn default_config() {
        let cfg = PolyspaceConfig::default();
        assert_eq!(cfg.pool_size_for(3), 64);
        assert_eq!(cfg.pool_size_for(20), 400);
        // δ = 1/4 for n <= 4: (1/4)^5 < 1e-3 <= (1/4)^4
        assert_eq!(cfg.repetitions_for(2), 5);
        assert_eq!(cfg.repetitions_for(12), 3);
    }

    #[test]
    fn target_zero_is_trivially_reachable() {
        let inst = Instance::from_items(&[], 1);
        let inst0 = Instance::new(Vec::<u64>::new(), 0).0;
        assert!(polyspace_decide(&inst0, 0, PolyspaceConfig::default()).unwrap().answer);
        assert!(!polyspace_decide(&inst, 0, PolyspaceConfig::default()).unwrap().answer);
    }
}
