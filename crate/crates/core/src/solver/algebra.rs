use crate::convolve::{self, SumSet};

/// The operations the randomized algorithms perform on sets of sums.
///
/// The solvers are written once against this trait. [`Sets`] evaluates them
/// directly on bit vectors; the low-space module instead records them as an
/// arithmetic circuit. Both interpreters see the same sequence of random
/// partitions for the same seed.
pub trait SetAlgebra {
    type Set;

    /// `{0}`.
    fn zero(&mut self, cap: usize) -> Self::Set;

    /// `acc ⊕_cap (elems ∪ {0})`.
    fn extend(&mut self, acc: Self::Set, elems: &[usize], cap: usize) -> Self::Set;

    fn union(&mut self, a: Self::Set, b: Self::Set) -> Self::Set;

    /// `a ⊕_cap b`.
    fn sumset(&mut self, a: Self::Set, b: Self::Set, cap: usize) -> Self::Set;

    /// `a ∩ [0, cap]`.
    fn restrict(&mut self, a: Self::Set, cap: usize) -> Self::Set;
}

/// Direct evaluation on [`SumSet`]s.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sets;

impl SetAlgebra for Sets {
    type Set = SumSet;

    fn zero(&mut self, cap: usize) -> SumSet {
        SumSet::zero(cap)
    }

    fn extend(&mut self, mut acc: SumSet, elems: &[usize], cap: usize) -> SumSet {
        convolve::sumset_with_elems(&mut acc, elems, cap);
        acc
    }

    fn union(&mut self, mut a: SumSet, b: SumSet) -> SumSet {
        convolve::union_into(&mut a, &b);
        a
    }

    fn sumset(&mut self, a: SumSet, b: SumSet, cap: usize) -> SumSet {
        convolve::capped_sumset(&a, &b, cap)
    }

    fn restrict(&mut self, a: SumSet, cap: usize) -> SumSet {
        a.restrict(cap)
    }
}
