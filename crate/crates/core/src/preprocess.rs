//! Reduction of a multiset instance to two sets.
//!
//! Multiplicities are first brought down to at most two: an item `z` with
//! multiplicity `2k+1` keeps one copy and contributes `k` copies of `2z`,
//! multiplicity `2k+2` keeps two copies and contributes `k` copies of `2z`.
//! Values are processed in increasing order so the new `2z` copies are
//! folded in when their own turn comes. The result is then one set of all
//! distinct items plus one set of the doubled-up items.

use std::collections::BTreeMap;

use crate::instance::Instance;

/// Equivalent instance (same subset sums up to the target) in which every
/// item has multiplicity at most two.
pub fn reduce_multiplicities(inst: &Instance) -> Instance {
    let t = inst.target();
    let mut counts: BTreeMap<usize, usize> = inst.multiplicities().into_iter().collect();
    let mut out = Vec::with_capacity(inst.len());
    while let Some((z, c)) = counts.pop_first() {
        let keep = if c % 2 == 1 { 1 } else { 2 };
        let k = (c - keep) / 2;
        out.extend(std::iter::repeat_n(z, keep));
        // copies of 2z above the target cannot take part in any sum <= t
        if k > 0 && z.checked_mul(2).is_some_and(|d| d <= t) {
            *counts.entry(2 * z).or_insert(0) += k;
        }
    }
    Instance::from_items(&out, t)
}

/// Splits an instance with multiplicities at most two into `(Z1, Z2)`:
/// `Z1` holds every distinct item, `Z2` the items that occur twice. Both are
/// sorted.
///
/// Panics if some multiplicity exceeds two.
pub fn split_two_sets(inst: &Instance) -> (Vec<usize>, Vec<usize>) {
    let mut z1 = Vec::new();
    let mut z2 = Vec::new();
    for (z, c) in inst.multiplicities() {
        assert!(c <= 2, "item {z} has multiplicity {c} > 2");
        z1.push(z);
        if c == 2 {
            z2.push(z);
        }
    }
    (z1, z2)
}

/// [`reduce_multiplicities`] followed by [`split_two_sets`].
pub fn to_two_sets(inst: &Instance) -> (Vec<usize>, Vec<usize>) {
    split_two_sets(&reduce_multiplicities(inst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolve::capped_sumset;
    use crate::oracle::bellman_all_sums;
    use crate::rng::Rng;

    #[test]
    fn odd_multiplicity() {
        let inst = Instance::from_items(&[3, 3, 3, 3, 3], 100);
        assert_eq!(reduce_multiplicities(&inst).items(), &[3, 6, 6]);
    }

    #[test]
    fn already_reduced() {
        let inst = Instance::from_items(&[5], 10);
        assert_eq!(reduce_multiplicities(&inst), inst);
    }

    #[test]
    fn cascading_doubles() {
        // 1x7 -> 1 + 2x3 -> 1 + 2 + 4x1
        let inst = Instance::from_items(&[1; 7], 20);
        let red = reduce_multiplicities(&inst);
        assert_eq!(red.items(), &[1, 2, 4]);
        assert_eq!(bellman_all_sums(&red), bellman_all_sums(&inst));
    }

    #[test]
    fn split_examples() {
        let inst = Instance::from_items(&[3, 6, 6], 100);
        assert_eq!(split_two_sets(&inst), (vec![3, 6], vec![6]));
        let inst = Instance::from_items(&[5], 100);
        assert_eq!(split_two_sets(&inst), (vec![5], vec![]));
    }

    #[test]
    #[should_panic(expected = "multiplicity 3")]
    fn split_rejects_triples() {
        split_two_sets(&Instance::from_items(&[2, 2, 2], 10));
    }

    fn set_sums(z: &[usize], t: usize) -> crate::SumSet {
        bellman_all_sums(&Instance::from_items(z, t))
    }

    #[test]
    fn pipeline_preserves_sums() {
        let mut rng = Rng::new(0xfeed);
        for _ in 0..500 {
            let t = 1 + rng.below(1000);
            let n = rng.below(31);
            // small alphabets force large multiplicities
            let alphabet = 1 + rng.below(12);
            let items: Vec<usize> = (0..n).map(|_| 1 + rng.below(alphabet * 3)).collect();
            let inst = Instance::from_items(&items, t);
            let reduced = reduce_multiplicities(&inst);
            assert!(reduced.len() <= inst.len().min(2 * t));
            let (z1, z2) = split_two_sets(&reduced);
            let combined = capped_sumset(&set_sums(&z1, t), &set_sums(&z2, t), t);
            assert_eq!(combined, bellman_all_sums(&inst), "{items:?} t={t}");
        }
    }
}
