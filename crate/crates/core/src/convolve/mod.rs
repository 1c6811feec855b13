//! Boolean sumset primitives.
//!
//! A [`SumSet`] is the characteristic vector of a set of integers in
//! `0..=cap`, packed 64 bits per word. Everything above it in the crate is
//! built from three operations: capped sumset, union and restriction.
//!
//! Two backends compute a sumset. The word-packed schoolbook backend ORs a
//! shifted copy of one operand into the result for every element of the
//! other; it runs in `O(|B| * len / 64)`. The NTT backend multiplies the two
//! characteristic vectors exactly over a 31-bit prime field in
//! `O(len log len)`. Short outputs always take the schoolbook path; above
//! [`NTT_THRESHOLD`] the cheaper of the two estimates wins, as long as the
//! product fits the largest supported transform.

/// Runs `$body` compiled with AVX2 enabled when the CPU has it; the loops
/// are written so that the compiler vectorizes them either way.
macro_rules! with_avx2 {
    ($(#[$m:meta])* $name:ident($($arg:ident: $ty:ty),*) $body:block) => {
        $(#[$m])*
        fn $name($($arg: $ty),*) {
            #[inline(always)]
            fn generic($($arg: $ty),*) $body

            #[cfg(target_arch = "x86_64")]
            {
                #[target_feature(enable = "avx2")]
                unsafe fn avx2($($arg: $ty),*) {
                    generic($($arg),*)
                }
                if std::arch::is_x86_feature_detected!("avx2") {
                    // SAFETY: the CPU supports AVX2, checked just above
                    return unsafe { avx2($($arg),*) };
                }
            }
            generic($($arg),*)
        }
    };
}

pub mod ntt;

use std::fmt;

/// Output length (in bits) below which the schoolbook backend is always used.
pub const NTT_THRESHOLD: usize = 1 << 10;

/// Relative cost of one butterfly against one word-level shift-or, used when
/// choosing a backend.
const NTT_COST_FACTOR: usize = 12;

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Set of sums in `0..=cap`, stored as a packed bit vector.
///
/// Words above the highest set bit are not stored, so a set with a huge cap
/// but small elements stays cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SumSet {
    cap: usize,
    words: Vec<u64>,
}

impl SumSet {
    /// The empty set with the given cap.
    pub fn empty(cap: usize) -> Self {
        SumSet {
            cap,
            words: Vec::new(),
        }
    }

    /// `{0}`, the identity for [`capped_sumset`].
    pub fn zero(cap: usize) -> Self {
        SumSet {
            cap,
            words: vec![1],
        }
    }

    /// Builds a set from arbitrary elements; elements above `cap` are ignored.
    pub fn from_elems<I: IntoIterator<Item = usize>>(cap: usize, elems: I) -> Self {
        let mut set = SumSet::empty(cap);
        for e in elems {
            set.insert(e);
        }
        set
    }

    /// Builds a set from a membership vector; index `i` is element `i`.
    pub fn from_bools(cap: usize, bits: &[bool]) -> Self {
        Self::from_elems(
            cap,
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Inserts `e`; returns false (and does nothing) when `e > cap`.
    pub fn insert(&mut self, e: usize) -> bool {
        if e > self.cap {
            return false;
        }
        let w = e / WORD;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (e % WORD);
        true
    }

    pub fn contains(&self, e: usize) -> bool {
        e <= self.cap
            && self
                .words
                .get(e / WORD)
                .is_some_and(|w| w >> (e % WORD) & 1 == 1)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn max_element(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD + (WORD - 1 - last.leading_zeros() as usize))
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Membership vector of length `cap + 1`.
    pub fn to_bools(&self) -> Vec<bool> {
        (0..=self.cap).map(|i| self.contains(i)).collect()
    }

    /// `self ∩ [0, cap]`, with `cap` as the new cap.
    pub fn restrict(&self, cap: usize) -> SumSet {
        let mut out = SumSet {
            cap,
            words: self.words.clone(),
        };
        out.clear_above(cap);
        out
    }

    /// Same elements under a different cap. Panics if an element would be
    /// lost.
    pub fn with_cap(mut self, cap: usize) -> SumSet {
        assert!(
            self.max_element().is_none_or(|m| m <= cap),
            "with_cap({cap}) would drop elements"
        );
        self.cap = cap;
        self
    }

    /// `true` when every element of `self` is in `other`.
    pub fn is_subset(&self, other: &SumSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, &w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    fn clear_above(&mut self, cap: usize) {
        let keep = words_for(cap.saturating_add(1));
        if self.words.len() > keep {
            self.words.truncate(keep);
        }
        if self.words.len() == keep {
            let used = cap.saturating_add(1) % WORD;
            if used != 0 {
                if let Some(last) = self.words.last_mut() {
                    *last &= (1u64 << used) - 1;
                }
            }
        }
        self.trim();
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// In place: `self |= self << shift`, then restricted to `cap`.
    fn or_shifted_self(&mut self, shift: usize) {
        if self.words.is_empty() {
            return;
        }
        let Some(max) = self.max_element() else {
            return;
        };
        let top = (max + shift).min(self.cap);
        if shift > top {
            return;
        }
        let new_len = words_for(top + 1);
        self.words.resize(new_len, 0);
        let ws = shift / WORD;
        let bs = shift % WORD;
        // walk downwards: destination word i reads source words below i only
        for i in (ws..new_len).rev() {
            let src = i - ws;
            let mut v = self.words[src] << bs;
            if bs != 0 && src > 0 {
                v |= self.words[src - 1] >> (WORD - bs);
            }
            self.words[i] |= v;
        }
        self.clear_above(self.cap);
    }
}

impl fmt::Debug for SumSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SumSet(cap={}, ", self.cap)?;
        f.debug_set().entries(self.iter()).finish()?;
        write!(f, ")")
    }
}

with_avx2!(
    /// `dst |= src << shift` over the first `dst.len()` words.
    or_shifted_into(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / WORD;
    let bs = shift % WORD;
    if ws >= dst.len() || src.is_empty() {
        return;
    }
    let dst = &mut dst[ws..];
    if bs == 0 {
        for (d, s) in dst.iter_mut().zip(src) {
            *d |= s;
        }
        return;
    }
    dst[0] |= src[0] << bs;
    let body = dst.len().min(src.len());
    for (d, pair) in dst[1..body.max(1)].iter_mut().zip(src.windows(2)) {
        *d |= (pair[1] << bs) | (pair[0] >> (WORD - bs));
    }
    if src.len() < dst.len() {
        dst[src.len()] |= src[src.len() - 1] >> (WORD - bs);
    }
});

/// Union of two sets with the same cap.
pub fn union(a: &SumSet, b: &SumSet) -> SumSet {
    assert_eq!(a.cap, b.cap, "union of sets with different caps");
    let (long, short) = if a.words.len() >= b.words.len() {
        (a, b)
    } else {
        (b, a)
    };
    let mut words = long.words.clone();
    for (w, s) in words.iter_mut().zip(&short.words) {
        *w |= s;
    }
    SumSet { cap: a.cap, words }
}

/// In-place union.
pub fn union_into(acc: &mut SumSet, other: &SumSet) {
    assert_eq!(acc.cap, other.cap, "union of sets with different caps");
    if acc.words.len() < other.words.len() {
        acc.words.resize(other.words.len(), 0);
    }
    for (w, s) in acc.words.iter_mut().zip(&other.words) {
        *w |= s;
    }
}

/// `(A ∪ {0}) + (B ∪ {0})`, restricted to `0..=cap`.
pub fn capped_sumset(a: &SumSet, b: &SumSet, cap: usize) -> SumSet {
    let a = with_zero(a, cap);
    let b = with_zero(b, cap);
    let (ma, mb) = (a.max_element().unwrap_or(0), b.max_element().unwrap_or(0));
    let top = (ma + mb).min(cap);
    let out_bits = top + 1;

    let (pa, pb) = (a.len(), b.len());
    let sparse_cost = pa.min(pb) * words_for(out_bits);
    let n = ntt::transform_len(ma.min(top) + 1, mb.min(top) + 1, top + 1);
    let ntt_cost = NTT_COST_FACTOR * n * (n.trailing_zeros() as usize + 1);
    let ntt_fits = n.trailing_zeros() <= ntt::MAX_LOG_LEN;
    if out_bits < NTT_THRESHOLD || sparse_cost <= ntt_cost || !ntt_fits {
        schoolbook_sumset(&a, &b, cap, top)
    } else {
        ntt_sumset(&a, &b, cap, top)
    }
}

/// `acc ⊕_cap (elems ∪ {0})` for a short list of elements, in place.
pub fn sumset_with_elems(acc: &mut SumSet, elems: &[usize], cap: usize) {
    if acc.is_empty() {
        acc.insert(0);
    }
    acc.cap = cap;
    acc.clear_above(cap);
    match elems {
        [] => {}
        [e] => acc.or_shifted_self(*e),
        _ => {
            let base = acc.clone();
            let top = (base.max_element().unwrap_or(0) + elems.iter().max().copied().unwrap_or(0))
                .min(cap);
            acc.words.resize(words_for(top + 1), 0);
            for &e in elems {
                if e <= top {
                    or_shifted_into(&mut acc.words, &base.words, e);
                }
            }
            acc.clear_above(cap);
        }
    }
}

fn with_zero(s: &SumSet, cap: usize) -> SumSet {
    let mut out = s.restrict(cap);
    out.insert(0);
    out
}

fn schoolbook_sumset(a: &SumSet, b: &SumSet, cap: usize, top: usize) -> SumSet {
    // iterate over the operand with fewer elements
    let (dense, sparse) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut words = vec![0u64; words_for(top + 1)];
    for e in sparse.iter() {
        if e > top {
            break;
        }
        or_shifted_into(&mut words, &dense.words, e);
    }
    let mut out = SumSet { cap, words };
    out.clear_above(top.min(cap));
    out.cap = cap;
    out
}

fn ntt_sumset(a: &SumSet, b: &SumSet, cap: usize, top: usize) -> SumSet {
    let to_counts = |s: &SumSet| -> Vec<u32> {
        let m = s.max_element().unwrap_or(0).min(top);
        let mut v = vec![0u32; m + 1];
        for (chunk, &w) in v.chunks_mut(WORD).zip(&s.words) {
            for (i, c) in chunk.iter_mut().enumerate() {
                *c = ((w >> i) & 1) as u32;
            }
        }
        v
    };
    let prod = ntt::multiply_prefix(&to_counts(a), &to_counts(b), top + 1);
    let mut out = SumSet::empty(cap);
    let len = prod.len().min(top + 1);
    out.words = prod[..len]
        .chunks(WORD)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u64, |w, (i, &c)| w | (((c != 0) as u64) << i))
        })
        .collect();
    out.trim();
    out
}

/// Boolean convolution: `z[i] = OR_j (x[j] AND y[i-j])`, of length
/// `x.len() + y.len() - 1`.
pub fn raw_convolve(x: &[bool], y: &[bool]) -> Vec<bool> {
    assert!(!x.is_empty() && !y.is_empty(), "raw_convolve needs non-empty inputs");
    let out_len = x.len() + y.len() - 1;
    let pack = |v: &[bool]| SumSet::from_bools(v.len() - 1, v);
    let (px, py) = (pack(x), pack(y));
    let z = if px.is_empty() || py.is_empty() {
        SumSet::empty(out_len - 1)
    } else if !(NTT_THRESHOLD..=1 << ntt::MAX_LOG_LEN).contains(&out_len) {
        schoolbook_sumset(&px, &py, out_len - 1, out_len - 1)
    } else {
        let prod = ntt::multiply(
            &x.iter().map(|&b| b as u32).collect::<Vec<_>>(),
            &y.iter().map(|&b| b as u32).collect::<Vec<_>>(),
        );
        return prod.into_iter().map(|c| c != 0).collect();
    };
    (0..out_len).map(|i| z.contains(i)).collect()
}
