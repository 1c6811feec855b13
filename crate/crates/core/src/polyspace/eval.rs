//! Single-entry evaluation of a circuit in the Fourier domain.
//!
//! Entry `j` of the transformed output is obtained by evaluating the circuit
//! once over scalars: a singleton `(k, v)` becomes `ω^{jk}·v`, an addition
//! becomes `+` and a convolution becomes `·`. The inverse transform then sums
//! `τ` such evaluations. Only one scalar per live gate is ever stored; gate
//! values are dropped after their last reader, so peak storage is bounded by
//! the circuit, not by `τ`.

use crate::polyspace::circuit::{Circuit, Gate};
use crate::polyspace::field::{add_mod, mul_mod, pow_mod, FieldParams};

/// Slot assignment reused across every `j`.
#[derive(Debug)]
struct Schedule {
    slot: Vec<u32>,
    /// Slots to release after evaluating each gate.
    release: Vec<Vec<u32>>,
    slots: usize,
}

impl Schedule {
    fn new(c: &Circuit) -> Self {
        let gates = c.gates();
        let mut last_use: Vec<usize> = (0..gates.len()).collect();
        for (id, g) in gates.iter().enumerate() {
            if let Some((a, b)) = g.children() {
                last_use[a] = id;
                last_use[b] = id;
            }
        }
        last_use[c.output()] = usize::MAX;

        let mut slot = vec![0u32; gates.len()];
        let mut release = vec![Vec::new(); gates.len()];
        let mut free: Vec<u32> = Vec::new();
        let mut slots = 0usize;
        for (id, g) in gates.iter().enumerate() {
            slot[id] = free.pop().unwrap_or_else(|| {
                slots += 1;
                (slots - 1) as u32
            });
            if let Some((a, b)) = g.children() {
                for child in if a == b { vec![a] } else { vec![a, b] } {
                    if last_use[child] == id {
                        release[id].push(slot[child]);
                    }
                }
            }
            // a gate nobody reads is dead as soon as it is computed
            if last_use[id] == id {
                release[id].push(slot[id]);
            }
            free.extend(release[id].iter().copied());
        }
        Schedule {
            slot,
            release,
            slots,
        }
    }
}

/// Counters collected while evaluating.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvalStats {
    /// Largest number of field elements held at once.
    pub peak_live_elements: usize,
    /// Field multiplications and additions performed.
    pub field_ops: u64,
}

/// Scalars held besides gate slots: `ω^j`, running `ω^{-jx}`, its step and
/// the accumulator.
const SCALARS: usize = 4;

struct Evaluator<'a> {
    circuit: &'a Circuit,
    fp: FieldParams,
    schedule: Schedule,
    values: Vec<u64>,
    live: usize,
    stats: EvalStats,
}

impl<'a> Evaluator<'a> {
    fn new(circuit: &'a Circuit, fp: FieldParams) -> Self {
        assert_eq!(
            circuit.vec_len() as u64,
            fp.tau,
            "field parameters are for a different vector length"
        );
        let schedule = Schedule::new(circuit);
        let values = vec![0u64; schedule.slots];
        Evaluator {
            circuit,
            fp,
            schedule,
            values,
            live: 0,
            stats: EvalStats::default(),
        }
    }

    fn note_live(&mut self, extra: usize) {
        self.stats.peak_live_elements = self.stats.peak_live_elements.max(self.live + extra);
    }

    /// `(F(out))[j]`.
    fn transformed_entry(&mut self, j: u64, extra_scalars: usize) -> u64 {
        let p = self.fp.p;
        let wj = pow_mod(self.fp.omega, j % self.fp.tau, p);
        let gates = self.circuit.gates();
        for (id, g) in gates.iter().enumerate() {
            let v = match *g {
                Gate::Singleton { index, value } => {
                    self.stats.field_ops += 64 - (index as u64).leading_zeros() as u64 + 1;
                    mul_mod(pow_mod(wj, index as u64, p), value % p, p)
                }
                Gate::Add(a, b) => {
                    self.stats.field_ops += 1;
                    let s = &self.schedule.slot;
                    add_mod(self.values[s[a] as usize], self.values[s[b] as usize], p)
                }
                Gate::Conv(a, b) => {
                    self.stats.field_ops += 1;
                    let s = &self.schedule.slot;
                    mul_mod(self.values[s[a] as usize], self.values[s[b] as usize], p)
                }
            };
            self.values[self.schedule.slot[id] as usize] = v;
            self.live += 1;
            self.note_live(extra_scalars);
            self.live -= self.schedule.release[id].len();
        }
        let out = self.values[self.schedule.slot[self.circuit.output()] as usize];
        // the output slot is never released; reset for the next j
        self.live = 0;
        out
    }
}

/// `(F(out(C)))[j]`: one scalar evaluation of the circuit with `O(|C|)` field
/// operations.
pub fn dft_entry_evaluate(c: &Circuit, fp: &FieldParams, j: u64) -> u64 {
    Evaluator::new(c, *fp).transformed_entry(j, 1)
}

/// `out(C)[x] mod p`, via `τ^{-1} Σ_j ω^{-jx} (F(out(C)))[j]`.
pub fn evaluate_entry(c: &Circuit, fp: &FieldParams, x: usize) -> u64 {
    evaluate_entry_with_stats(c, fp, x).0
}

/// [`evaluate_entry`] plus peak-storage and operation counters.
pub fn evaluate_entry_with_stats(c: &Circuit, fp: &FieldParams, x: usize) -> (u64, EvalStats) {
    let (v, stats) = evaluate_entries_with_stats(c, fp, &[x]);
    (v[0], stats)
}

/// Several entries of `out(C)` from one pass over `j`; storage grows by one
/// accumulator per requested index.
pub fn evaluate_entries(c: &Circuit, fp: &FieldParams, xs: &[usize]) -> Vec<u64> {
    evaluate_entries_with_stats(c, fp, xs).0
}

fn evaluate_entries_with_stats(c: &Circuit, fp: &FieldParams, xs: &[usize]) -> (Vec<u64>, EvalStats) {
    let p = fp.p;
    let tau = fp.tau;
    for &x in xs {
        assert!((x as u64) < tau, "index {x} outside 0..{tau}");
    }
    let mut ev = Evaluator::new(c, *fp);
    // per index: accumulator, current power ω^{-jx} and its step ω^{-x}
    let mut acc = vec![0u64; xs.len()];
    let mut cur = vec![1u64 % p; xs.len()];
    let step: Vec<u64> = xs.iter().map(|&x| pow_mod(fp.omega_inv, x as u64, p)).collect();
    let extra = 1 + 3 * xs.len();
    for j in 0..tau {
        let fj = ev.transformed_entry(j, extra);
        for i in 0..xs.len() {
            acc[i] = add_mod(acc[i], mul_mod(cur[i], fj, p), p);
            cur[i] = mul_mod(cur[i], step[i], p);
        }
        ev.stats.field_ops += 3 * xs.len() as u64;
    }
    let out = acc.into_iter().map(|a| mul_mod(a, fp.tau_inv, p)).collect();
    let mut stats = ev.stats;
    stats.peak_live_elements = stats.peak_live_elements.max(SCALARS);
    (out, stats)
}
