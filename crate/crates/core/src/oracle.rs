//! Textbook dynamic programs used as ground truth.

use crate::convolve::SumSet;
use crate::instance::Instance;

/// All subset sums `<= target` of the multiset, every physical copy being a
/// separate 0/1 item. `O(n t)` time, `O(t)` space.
pub fn bellman_all_sums(inst: &Instance) -> SumSet {
    let t = inst.target();
    let mut reach = vec![false; t + 1];
    reach[0] = true;
    let mut top = 0usize;
    for &z in inst.items() {
        let hi = (top + z).min(t);
        for s in (z..=hi).rev() {
            reach[s] |= reach[s - z];
        }
        top = hi;
    }
    SumSet::from_bools(t, &reach)
}

/// All sums `<= t` of finite sequences over `z` (repetition allowed).
pub fn unbounded_dp(z: &[usize], t: usize) -> SumSet {
    let mut reach = vec![false; t + 1];
    reach[0] = true;
    let items: Vec<usize> = z.iter().copied().filter(|&v| v > 0 && v <= t).collect();
    for s in 1..=t {
        reach[s] = items.iter().any(|&v| v <= s && reach[s - v]);
    }
    SumSet::from_bools(t, &reach)
}
