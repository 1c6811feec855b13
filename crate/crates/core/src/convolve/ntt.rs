//! Exact radix-2 number-theoretic transform over a single 31-bit prime.
//!
//! The modulus `15 * 2^27 + 1` is larger than `2^30`, so the count at any
//! position of a 0/1 convolution of length at most `2^30` is a nonzero residue
//! whenever it is a nonzero integer. That is all Boolean convolution needs.
//! Keeping it below `2^31` lets sums of two residues stay in a `u32`, which
//! keeps the butterflies branch-free and vectorizable. Transforms are limited
//! to length `2^27`.

use std::sync::{Arc, RwLock};

/// `15 * 2^27 + 1`.
pub const MODULUS: u32 = 2_013_265_921;
// sums of two residues must fit a u32 lane
const _: () = assert!(MODULUS > 1 << 30 && MODULUS < 1 << 31);
/// A generator of the multiplicative group mod [`MODULUS`].
pub const GENERATOR: u32 = 31;
/// Largest supported transform length exponent.
pub const MAX_LOG_LEN: u32 = 27;

/// Montgomery arithmetic with `R = 2^32`.
#[derive(Clone, Copy)]
struct Mont;

impl Mont {
    const P: u32 = MODULUS;
    // P^{-1} mod 2^32
    const INV: u32 = {
        let mut inv: u32 = 1;
        let mut i = 0;
        while i < 5 {
            inv = inv.wrapping_mul(2u32.wrapping_sub(Self::P.wrapping_mul(inv)));
            i += 1;
        }
        inv
    };
    // R^2 mod P
    const R2: u32 = {
        let r = (1u128 << 64) % Self::P as u128;
        r as u32
    };

    /// Returns `x * 2^-32 mod P` for `x < P * 2^32`.
    #[inline(always)]
    fn reduce(x: u64) -> u32 {
        // low halves of x and m*P agree, so the subtraction is exact
        let m = (x as u32).wrapping_mul(Self::INV);
        let mp = (m as u64 * Self::P as u64) >> 32;
        let hi = x >> 32;
        let (d, borrow) = (hi as u32).overflowing_sub(mp as u32);
        d.wrapping_add(if borrow { Self::P } else { 0 })
    }

    #[inline(always)]
    fn mul(a: u32, b: u32) -> u32 {
        Self::reduce(a as u64 * b as u64)
    }

    #[inline(always)]
    fn add(a: u32, b: u32) -> u32 {
        // a + b < 2P < 2^32
        let s = a + b;
        s.min(s.wrapping_sub(Self::P))
    }

    #[inline(always)]
    fn sub(a: u32, b: u32) -> u32 {
        let d = a.wrapping_sub(b).wrapping_add(Self::P);
        d.min(d.wrapping_sub(Self::P))
    }

    fn to_mont(a: u32) -> u32 {
        Self::mul(a, Self::R2)
    }

    fn from_mont(a: u32) -> u32 {
        Self::reduce(a as u64)
    }

    fn pow(mut base: u32, mut exp: u64) -> u32 {
        let mut acc = Self::to_mont(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = Self::mul(acc, base);
            }
            base = Self::mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// Twiddle table for one transform size. `roots[len/2 + i] = w_len^i` for
/// each stage length `len`, in Montgomery form.
struct Twiddles {
    roots: Vec<u32>,
}

impl Twiddles {
    fn new(n: usize, inverse: bool) -> Self {
        let mut roots = vec![0u32; n.max(2)];
        let mut len = 2;
        while len <= n {
            let exp = (MODULUS as u64 - 1) / len as u64;
            let mut w = Mont::pow(Mont::to_mont(GENERATOR), exp);
            if inverse {
                w = Mont::pow(w, len as u64 - 1);
            }
            let half = len / 2;
            let mut cur = Mont::to_mont(1);
            for i in 0..half {
                roots[half + i] = cur;
                cur = Mont::mul(cur, w);
            }
            len <<= 1;
        }
        Twiddles { roots }
    }

    /// Shared table covering size `n`. A table for size `n` is a prefix of
    /// the one for `2n`, so a single table per direction grows on demand.
    fn shared(n: usize, inverse: bool) -> Arc<Twiddles> {
        static TABLES: [RwLock<Option<Arc<Twiddles>>>; 2] = [RwLock::new(None), RwLock::new(None)];
        let slot = &TABLES[inverse as usize];
        let fits = |t: &Option<Arc<Twiddles>>| t.as_ref().filter(|t| t.roots.len() >= n).cloned();
        if let Some(t) = fits(&slot.read().unwrap_or_else(|e| e.into_inner())) {
            return t;
        }
        let mut guard = slot.write().unwrap_or_else(|e| e.into_inner());
        if let Some(t) = fits(&guard) {
            return t;
        }
        let t = Arc::new(Twiddles::new(n, inverse));
        *guard = Some(Arc::clone(&t));
        t
    }
}

/// Stages of at most this many elements run block by block, so each block
/// goes through all of them while it is still in cache.
const BLOCK: usize = 1 << 12;

#[inline(always)]
fn dif_stage<const SIMD: bool>(a: &mut [u32], len: usize, tw: &Twiddles) {
    let half = len / 2;
    let roots = &tw.roots[half..len];
    for chunk in a.chunks_exact_mut(len) {
        let (lo, hi) = chunk.split_at_mut(half);
        #[cfg(target_arch = "x86_64")]
        if SIMD && half >= avx2::LANES {
            // SAFETY: SIMD is only set on the AVX2 path
            unsafe { avx2::dif(lo, hi, roots) };
            continue;
        }
        for ((x, y), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(roots) {
            let (u, v) = (*x, *y);
            *x = Mont::add(u, v);
            *y = Mont::mul(Mont::sub(u, v), w);
        }
    }
}

#[inline(always)]
fn dit_stage<const SIMD: bool>(a: &mut [u32], len: usize, tw: &Twiddles) {
    let half = len / 2;
    let roots = &tw.roots[half..len];
    for chunk in a.chunks_exact_mut(len) {
        let (lo, hi) = chunk.split_at_mut(half);
        #[cfg(target_arch = "x86_64")]
        if SIMD && half >= avx2::LANES {
            // SAFETY: SIMD is only set on the AVX2 path
            unsafe { avx2::dit(lo, hi, roots) };
            continue;
        }
        for ((x, y), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(roots) {
            let u = *x;
            let v = Mont::mul(*y, w);
            *x = Mont::add(u, v);
            *y = Mont::sub(u, v);
        }
    }
}

/// Decimation in frequency: natural order in, bit-reversed order out.
#[inline(always)]
fn forward_impl<const SIMD: bool>(a: &mut [u32], tw: &Twiddles) {
    let block = a.len().min(BLOCK);
    let mut len = a.len();
    while len > block {
        dif_stage::<SIMD>(a, len, tw);
        len /= 2;
    }
    for chunk in a.chunks_exact_mut(block) {
        let mut len = block;
        while len >= 2 {
            dif_stage::<SIMD>(chunk, len, tw);
            len /= 2;
        }
    }
}

/// Decimation in time: bit-reversed order in, natural order out.
#[inline(always)]
fn backward_impl<const SIMD: bool>(a: &mut [u32], tw: &Twiddles) {
    let n = a.len();
    let block = n.min(BLOCK);
    for chunk in a.chunks_exact_mut(block) {
        let mut len = 2;
        while len <= block {
            dit_stage::<SIMD>(chunk, len, tw);
            len <<= 1;
        }
    }
    let mut len = block * 2;
    while len <= n {
        dit_stage::<SIMD>(a, len, tw);
        len <<= 1;
    }
}

#[inline(always)]
fn pointwise_impl<const SIMD: bool>(a: &mut [u32], b: &[u32]) {
    let mut done = 0;
    #[cfg(target_arch = "x86_64")]
    if SIMD {
        done = a.len().min(b.len()) / avx2::LANES * avx2::LANES;
        // SAFETY: SIMD is only set on the AVX2 path
        unsafe { avx2::pointwise(&mut a[..done], &b[..done]) };
    }
    for (x, y) in a[done..].iter_mut().zip(&b[done..]) {
        *x = Mont::mul(*x, *y);
    }
}

fn has_avx2() -> bool {
    #[cfg(target_arch = "x86_64")]
    {
        std::arch::is_x86_feature_detected!("avx2")
    }
    #[cfg(not(target_arch = "x86_64"))]
    {
        false
    }
}

fn forward(a: &mut [u32], tw: &Twiddles) {
    #[cfg(target_arch = "x86_64")]
    if has_avx2() {
        #[target_feature(enable = "avx2")]
        unsafe fn run(a: &mut [u32], tw: &Twiddles) {
            forward_impl::<true>(a, tw)
        }
        // SAFETY: the CPU supports AVX2
        return unsafe { run(a, tw) };
    }
    forward_impl::<false>(a, tw)
}

fn backward(a: &mut [u32], tw: &Twiddles) {
    #[cfg(target_arch = "x86_64")]
    if has_avx2() {
        #[target_feature(enable = "avx2")]
        unsafe fn run(a: &mut [u32], tw: &Twiddles) {
            backward_impl::<true>(a, tw)
        }
        // SAFETY: the CPU supports AVX2
        return unsafe { run(a, tw) };
    }
    backward_impl::<false>(a, tw)
}

fn pointwise(a: &mut [u32], b: &[u32]) {
    #[cfg(target_arch = "x86_64")]
    if has_avx2() {
        #[target_feature(enable = "avx2")]
        unsafe fn run(a: &mut [u32], b: &[u32]) {
            pointwise_impl::<true>(a, b)
        }
        // SAFETY: the CPU supports AVX2
        return unsafe { run(a, b) };
    }
    pointwise_impl::<false>(a, b)
}

/// Eight-lane Montgomery butterflies. Residues are below `P < 2^31`, so sums
/// of two fit a lane and reductions are a single unsigned minimum.
#[cfg(target_arch = "x86_64")]
mod avx2 {
    use super::Mont;
    use std::arch::x86_64::*;

    pub const LANES: usize = 8;

    #[inline]
    #[target_feature(enable = "avx2")]
    unsafe fn mul(a: __m256i, b: __m256i) -> __m256i {
        let p = _mm256_set1_epi32(Mont::P as i32);
        let inv = _mm256_set1_epi32(Mont::INV as i32);
        // even lanes in place, odd lanes shifted down into the even slots
        let prod_e = _mm256_mul_epu32(a, b);
        let prod_o = _mm256_mul_epu32(_mm256_srli_epi64::<32>(a), _mm256_srli_epi64::<32>(b));
        let mp_e = _mm256_mul_epu32(_mm256_mul_epu32(prod_e, inv), p);
        let mp_o = _mm256_mul_epu32(_mm256_mul_epu32(prod_o, inv), p);
        // low halves cancel exactly; the high halves hold hi(x) - hi(mP)
        let d_e = _mm256_srli_epi64::<32>(_mm256_sub_epi64(prod_e, mp_e));
        let d_o = _mm256_sub_epi64(prod_o, mp_o);
        let d = _mm256_blend_epi32::<0b1010_1010>(d_e, d_o);
        // d lies in (-P, P); adding P fixes the negative lanes only
        _mm256_min_epu32(d, _mm256_add_epi32(d, p))
    }

    #[inline]
    #[target_feature(enable = "avx2")]
    unsafe fn add(a: __m256i, b: __m256i) -> __m256i {
        let s = _mm256_add_epi32(a, b);
        _mm256_min_epu32(s, _mm256_sub_epi32(s, _mm256_set1_epi32(Mont::P as i32)))
    }

    #[inline]
    #[target_feature(enable = "avx2")]
    unsafe fn sub(a: __m256i, b: __m256i) -> __m256i {
        let p = _mm256_set1_epi32(Mont::P as i32);
        let d = _mm256_add_epi32(_mm256_sub_epi32(a, b), p);
        _mm256_min_epu32(d, _mm256_sub_epi32(d, p))
    }

    #[inline]
    #[target_feature(enable = "avx2")]
    unsafe fn load(s: &[u32], i: usize) -> __m256i {
        _mm256_loadu_si256(s[i..i + LANES].as_ptr() as *const __m256i)
    }

    #[inline]
    #[target_feature(enable = "avx2")]
    unsafe fn store(s: &mut [u32], i: usize, v: __m256i) {
        _mm256_storeu_si256(s[i..i + LANES].as_mut_ptr() as *mut __m256i, v)
    }

    /// `lo, hi <- lo + hi, (lo - hi) * w`; lengths are multiples of `LANES`.
    #[target_feature(enable = "avx2")]
    pub unsafe fn dif(lo: &mut [u32], hi: &mut [u32], w: &[u32]) {
        for i in (0..lo.len()).step_by(LANES) {
            let (u, v) = (load(lo, i), load(hi, i));
            store(lo, i, add(u, v));
            store(hi, i, mul(sub(u, v), load(w, i)));
        }
    }

    /// `lo, hi <- lo + hi * w, lo - hi * w`; lengths are multiples of `LANES`.
    #[target_feature(enable = "avx2")]
    pub unsafe fn dit(lo: &mut [u32], hi: &mut [u32], w: &[u32]) {
        for i in (0..lo.len()).step_by(LANES) {
            let u = load(lo, i);
            let v = mul(load(hi, i), load(w, i));
            store(lo, i, add(u, v));
            store(hi, i, sub(u, v));
        }
    }

    /// `a <- a * b`; the length is a multiple of `LANES`.
    #[target_feature(enable = "avx2")]
    pub unsafe fn pointwise(a: &mut [u32], b: &[u32]) {
        for i in (0..a.len()).step_by(LANES) {
            store(a, i, mul(load(a, i), load(b, i)));
        }
    }
}

/// Cyclic-free product of two 0/1 sequences, returned as raw counts mod
/// [`MODULUS`]. Output length is `x.len() + y.len() - 1`.
pub fn multiply(x: &[u32], y: &[u32]) -> Vec<u32> {
    multiply_prefix(x, y, usize::MAX)
}

/// Transform length [`multiply_prefix`] uses for inputs of these lengths.
pub fn transform_len(x_len: usize, y_len: usize, keep: usize) -> usize {
    let keep = keep.min(x_len + y_len - 1);
    let full = x_len.min(keep) + y_len.min(keep) - 1;
    let n = full.next_power_of_two();
    let half = n / 2;
    if half >= keep && half >= 2 {
        let wrapped = (full - half) as u64;
        if wrapped * wrapped <= half as u64 {
            return half;
        }
    }
    n
}

/// The first `keep` coefficients of the product of `x` and `y` (fewer if the
/// product is shorter).
///
/// When the product only just overflows a power of two, the transform runs
/// at the smaller length and the handful of wrapped-around coefficients are
/// subtracted out directly.
pub fn multiply_prefix(x: &[u32], y: &[u32], keep: usize) -> Vec<u32> {
    assert!(!x.is_empty() && !y.is_empty());
    let keep = keep.min(x.len() + y.len() - 1);
    let x = &x[..x.len().min(keep)];
    let y = &y[..y.len().min(keep)];
    let full = x.len() + y.len() - 1;
    let n = transform_len(x.len(), y.len(), keep);
    assert!(
        n.trailing_zeros() <= MAX_LOG_LEN,
        "transform length 2^{} exceeds supported 2^{MAX_LOG_LEN}",
        n.trailing_zeros()
    );

    let mut fa = vec![0u32; n];
    let mut fb = vec![0u32; n];
    for (dst, &v) in fa.iter_mut().zip(x) {
        *dst = Mont::to_mont(v);
    }
    for (dst, &v) in fb.iter_mut().zip(y) {
        *dst = Mont::to_mont(v);
    }
    let fwd = Twiddles::shared(n, false);
    forward(&mut fa, &fwd);
    forward(&mut fb, &fwd);
    pointwise(&mut fa, &fb);
    drop(fb);
    let inv = Twiddles::shared(n, true);
    backward(&mut fa, &inv);
    let n_inv = Mont::pow(Mont::to_mont(n as u32 % MODULUS), MODULUS as u64 - 2);
    fa.truncate(keep);
    for v in fa.iter_mut() {
        *v = Mont::from_mont(Mont::mul(*v, n_inv));
    }
    // coefficient k >= n landed on k - n
    for k in n..full {
        if k - n >= keep {
            break;
        }
        let lo = k.saturating_sub(y.len() - 1);
        let hi = (x.len() - 1).min(k);
        let count: u64 = (lo..=hi).map(|i| x[i] as u64 * y[k - i] as u64).sum();
        fa[k - n] = Mont::sub(fa[k - n], (count % MODULUS as u64) as u32);
    }
    fa
}
