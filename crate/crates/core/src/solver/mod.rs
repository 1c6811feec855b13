//! Randomized one-sided-error Subset Sum in `Õ(n + t)`.
//!
//! [`color_coding`] finds every sum of at most `k` items by repeatedly
//! partitioning the items into `k²` random bins and taking the sumset of the
//! bins. [`color_coding_layer`] handles instances whose items all lie within a
//! factor two of each other (so solutions are short) by a first coarse
//! partition followed by small color-coding calls and a binary-tree merge.
//! [`faster_subset_sum`] cuts a set into such layers by magnitude.
//!
//! All outputs are subsets of the true set of subset sums; a true sum is
//! missed with probability at most `delta`. Logarithms are base 2 and every
//! real-valued count is rounded up.

mod algebra;

pub use algebra::{SetAlgebra, Sets};

use crate::convolve::{self, SumSet};
use crate::instance::Instance;
use crate::preprocess;
use crate::rng::Rng;

/// Largest error probability the layer routine supports.
pub const MAX_DELTA: f64 = 0.25;

/// Number of color-coding rounds: `⌈log_{4/3}(1/δ)⌉`, at least one.
pub fn repetitions(delta: f64) -> usize {
    assert!(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1), got {delta}");
    ((1.0 / delta).ln() / (4.0f64 / 3.0).ln()).ceil().max(1.0) as usize
}

fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

/// Parameters of the coarse partition in [`color_coding_layer`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LayerParams {
    pub ell: usize,
    pub delta: f64,
    /// Size bound handed to the inner color-coding calls, `⌈6 log(ℓ/δ)⌉`.
    pub gamma: usize,
    /// Number of coarse parts: `ℓ / log(ℓ/δ)` rounded up to a power of two.
    pub m: usize,
}

impl LayerParams {
    pub fn new(ell: usize, delta: f64) -> Self {
        assert!(ell >= 1, "layer index bound must be at least 1");
        assert!(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1), got {delta}");
        let lg = (ell as f64 / delta).log2();
        let gamma = (6.0 * lg).ceil() as usize;
        let m = ((ell as f64 / lg).ceil().max(1.0) as usize).next_power_of_two();
        LayerParams {
            ell,
            delta,
            gamma,
            m,
        }
    }

    /// `true` when `ℓ < log(ℓ/δ)`, in which case plain color-coding is used.
    pub fn falls_back(ell: usize, delta: f64) -> bool {
        (ell as f64) < (ell as f64 / delta).log2()
    }

    /// Cap of the inner color-coding calls, `2γt/ℓ` rounded up.
    pub fn base_cap(&self, t: usize) -> usize {
        (2 * self.gamma * t).div_ceil(self.ell)
    }
}

/// Bin index in `0..parts` for every item, drawn independently and uniformly.
fn partition_labels(len: usize, parts: usize, rng: &mut Rng) -> Vec<usize> {
    (0..len).map(|_| rng.below(parts)).collect()
}

/// Assigns every item to one of `parts` bins uniformly at random.
pub fn random_partition(z: &[usize], parts: usize, rng: &mut Rng) -> Vec<Vec<usize>> {
    assert!(parts >= 1, "need at least one part");
    let mut out = vec![Vec::new(); parts];
    for (&v, label) in z.iter().zip(partition_labels(z.len(), parts, rng)) {
        out[label].push(v);
    }
    out
}

/// Non-empty bins of a random partition, in bin order. Same draws as
/// [`random_partition`] without allocating the empty bins.
fn nonempty_bins(z: &[usize], parts: usize, rng: &mut Rng) -> Vec<Vec<usize>> {
    let mut tagged: Vec<(usize, usize)> = partition_labels(z.len(), parts, rng)
        .into_iter()
        .zip(z.iter().copied())
        .collect();
    tagged.sort_unstable();
    let mut bins: Vec<Vec<usize>> = Vec::new();
    let mut last = usize::MAX;
    for (label, v) in tagged {
        if label != last {
            bins.push(Vec::new());
            last = label;
        }
        bins.last_mut().expect("pushed above").push(v);
    }
    bins
}

pub(crate) fn color_coding_in<A: SetAlgebra>(
    alg: &mut A,
    z: &[usize],
    t: usize,
    k: usize,
    delta: f64,
    rng: &mut Rng,
) -> A::Set {
    assert!(k >= 1, "size bound must be at least 1");
    let parts = k.checked_mul(k).expect("k^2 overflows");
    let mut acc: Option<A::Set> = None;
    for _ in 0..repetitions(delta) {
        let mut round = rng.split();
        let mut s = alg.zero(t);
        for bin in nonempty_bins(z, parts, &mut round) {
            s = alg.extend(s, &bin, t);
        }
        acc = Some(match acc {
            None => s,
            Some(prev) => alg.union(prev, s),
        });
    }
    acc.expect("at least one repetition")
}

pub(crate) fn color_coding_layer_in<A: SetAlgebra>(
    alg: &mut A,
    z: &[usize],
    t: usize,
    ell: usize,
    delta: f64,
    rng: &mut Rng,
) -> A::Set {
    assert!(
        delta > 0.0 && delta <= MAX_DELTA,
        "layer routine needs delta in (0, 1/4], got {delta}"
    );
    assert!(is_layer(z, t, ell), "not an {ell}-layer instance");
    if LayerParams::falls_back(ell, delta) {
        return color_coding_in(alg, z, t, ell, delta, rng);
    }
    let params = LayerParams::new(ell, delta);
    // The caps below are the verbatim 2^h * 2γt/ℓ, but sums above t never
    // lead back below it, so each set is only materialized up to t. The
    // final restriction to [0, t] makes the result identical either way.
    let base = params.base_cap(t);

    let mut parts = vec![Vec::new(); params.m];
    for (&v, label) in z.iter().zip(partition_labels(z.len(), params.m, rng)) {
        parts[label].push(v);
    }
    let mut level: Vec<A::Set> = Vec::with_capacity(params.m);
    for part in &parts {
        let mut child = rng.split();
        level.push(if part.is_empty() {
            alg.zero(base.min(t))
        } else {
            color_coding_in(alg, part, base.min(t), params.gamma, delta / ell as f64, &mut child)
        });
    }

    let mut cap = base;
    while level.len() > 1 {
        cap *= 2;
        let mut next = Vec::with_capacity(level.len() / 2);
        let mut it = level.into_iter();
        while let (Some(a), Some(b)) = (it.next(), it.next()) {
            next.push(alg.sumset(a, b, cap.min(t)));
        }
        level = next;
    }
    let top = level.pop().expect("m >= 1");
    alg.restrict(top, t)
}

/// Items of `z` in the `i`-th magnitude layer of `faster_subset_sum`, out of
/// `count` layers. Layer `i < count` is `(t/2^i, t/2^(i-1)]`; the last one is
/// `[0, t/2^(count-1)]`.
fn layer_items(z: &[usize], t: usize, i: u32, count: u32) -> Vec<usize> {
    let upper = t >> (i - 1);
    if i == count {
        z.iter().copied().filter(|&v| v <= upper).collect()
    } else {
        let lower = t >> i;
        z.iter().copied().filter(|&v| v > lower && v <= upper).collect()
    }
}

/// Number of magnitude layers for a set of `n` items: `⌈log n⌉`, at least one.
pub fn layer_count(n: usize) -> u32 {
    ceil_log2(n).max(1)
}

pub(crate) fn faster_subset_sum_in<A: SetAlgebra>(
    alg: &mut A,
    z: &[usize],
    t: usize,
    delta: f64,
    rng: &mut Rng,
) -> A::Set {
    assert!(
        delta > 0.0 && delta <= MAX_DELTA,
        "delta must lie in (0, 1/4], got {delta}"
    );
    let count = layer_count(z.len());
    let layer_delta = delta / count as f64;
    let mut acc: Option<A::Set> = None;
    for i in 1..=count {
        let mut child = rng.split();
        let zi = layer_items(z, t, i, count);
        if zi.is_empty() {
            continue;
        }
        let si = color_coding_layer_in(alg, &zi, t, 1 << i, layer_delta, &mut child);
        acc = Some(match acc {
            None => si,
            Some(prev) => alg.sumset(prev, si, t),
        });
    }
    acc.unwrap_or_else(|| alg.zero(t))
}

/// `true` when `(z, t)` is an `ell`-layer instance: `z ⊆ [t/ℓ, 2t/ℓ]`, or
/// `z ⊆ [0, 2t/ℓ]` and `ℓ >= |z|`.
pub fn is_layer(z: &[usize], t: usize, ell: usize) -> bool {
    // compare v*ℓ against t to stay exact
    let within_upper = z.iter().all(|&v| (v as u128) * (ell as u128) <= 2 * t as u128);
    let within_lower = z.iter().all(|&v| (v as u128) * (ell as u128) >= t as u128);
    within_upper && (within_lower || ell >= z.len())
}

/// All sums of at most `k` items of `z` (up to `t`) with probability
/// `1 - delta` each; never a sum outside `SS_t(z)`.
pub fn color_coding(z: &[usize], t: usize, k: usize, delta: f64, rng: &mut Rng) -> SumSet {
    color_coding_in(&mut Sets, z, t, k, delta, rng)
}

/// Subset sums of an `ell`-layer instance, each found with probability
/// `1 - delta`. Requires `delta <= 1/4`.
pub fn color_coding_layer(z: &[usize], t: usize, ell: usize, delta: f64, rng: &mut Rng) -> SumSet {
    color_coding_layer_in(&mut Sets, z, t, ell, delta, rng)
}

/// Subset sums of the set `z` up to `t`, each found with probability
/// `1 - delta`. Requires `delta <= 1/4`.
pub fn faster_subset_sum(z: &[usize], t: usize, delta: f64, rng: &mut Rng) -> SumSet {
    faster_subset_sum_in(&mut Sets, z, t, delta, rng)
}

/// Subset sums of a multiset instance up to its target.
///
/// The instance is reduced to two sets, each solved with error `delta / 2`,
/// and the results are combined with one more sumset.
pub fn all_sums(inst: &Instance, delta: f64, seed: u64) -> SumSet {
    let t = inst.target();
    let (z1, z2) = preprocess::to_two_sets(inst);
    let mut rng = Rng::new(seed);
    let per_set = if z2.is_empty() { delta } else { delta / 2.0 };
    let mut r1 = rng.split();
    let mut r2 = rng.split();
    let s1 = faster_subset_sum(&z1, t, per_set, &mut r1);
    if z2.is_empty() {
        return s1;
    }
    let s2 = faster_subset_sum(&z2, t, per_set, &mut r2);
    convolve::capped_sumset(&s1, &s2, t)
}

/// Outcome of [`decide`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Decision {
    pub answer: bool,
    /// Upper bound on the probability that `answer` is wrong: zero for a
    /// "yes", `delta` for a "no".
    pub error_bound: f64,
}

/// Decides whether some sub-multiset of `inst` sums exactly to its target.
pub fn decide(inst: &Instance, delta: f64, seed: u64) -> Decision {
    if inst.target() == 0 {
        return Decision {
            answer: true,
            error_bound: 0.0,
        };
    }
    let answer = all_sums(inst, delta, seed).contains(inst.target());
    Decision {
        answer,
        error_bound: if answer { 0.0 } else { delta },
    }
}
