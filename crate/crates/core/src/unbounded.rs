//! Deterministic `O(n + t log t)` Unbounded Subset Sum.
//!
//! Start from all unbounded sums up to `t/n` (cheap by dynamic programming),
//! then double the cap `⌈log n⌉` times with `S ← S ⊕ S ⊕ Z`. Any sequence
//! summing to at most `2c` splits into two halves of sum at most `c` and one
//! middle item, so each step is exact when the previous one was.

use crate::convolve::{capped_sumset, SumSet};
use crate::oracle::unbounded_dp;

/// All sums `<= t` of finite sequences over the set `z`.
pub fn unbounded_subset_sum(z: &[usize], t: usize) -> SumSet {
    let mut items: Vec<usize> = z.iter().copied().filter(|&v| v >= 1 && v <= t).collect();
    items.sort_unstable();
    items.dedup();
    if items.is_empty() {
        return SumSet::zero(t);
    }
    let n = items.len();
    let rounds = if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    };

    // caps are ⌈2^i t / n⌉ so that every cap is at most twice the previous one
    let cap_at = |i: u32| -> usize {
        let c = ((t as u128) << i).div_ceil(n as u128);
        c.min(t as u128) as usize
    };
    let mut s = unbounded_dp(&items, cap_at(0));
    for i in 1..=rounds {
        let cap = cap_at(i);
        let zs = SumSet::from_elems(cap, items.iter().copied());
        let doubled = capped_sumset(&s, &s, cap);
        s = capped_sumset(&doubled, &zs, cap);
    }
    s.restrict(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    #[test]
    fn examples() {
        assert_eq!(
            unbounded_subset_sum(&[3, 5], 11).to_vec(),
            vec![0, 3, 5, 6, 8, 9, 10, 11]
        );
        assert_eq!(unbounded_subset_sum(&[1], 8).to_vec(), (0..=8).collect::<Vec<_>>());
        assert_eq!(unbounded_subset_sum(&[4, 9], 3).to_vec(), vec![0]);
        assert_eq!(unbounded_subset_sum(&[], 3).to_vec(), vec![0]);
    }

    #[test]
    fn fractional_base_cap() {
        // t/n = 2.6: a floored base cap of 2 would lose 3 + 3 = 6 at the
        // first doubling (cap 6)
        let z = [3, 11, 12, 13, 7];
        assert_eq!(unbounded_subset_sum(&z, 13), unbounded_dp(&z, 13));
    }

    #[test]
    fn matches_dp_on_random_sets() {
        let mut rng = Rng::new(2024);
        for _ in 0..300 {
            let t = 1 + rng.below(3000);
            let n = 1 + rng.below(40);
            let hi = 1 + rng.below(t);
            let z: Vec<usize> = (0..n).map(|_| 1 + rng.below(hi)).collect();
            assert_eq!(unbounded_subset_sum(&z, t), unbounded_dp(&z, t), "{z:?} t={t}");
        }
    }
}
