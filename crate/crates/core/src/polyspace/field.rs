//! Arithmetic in `Z_p` for word-sized primes, prime search in the
//! progression `1 + kτ`, and primitive roots of unity.

use crate::polyspace::PolyspaceError;
use crate::rng::Rng;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p <= u32::MAX as u64 {
        // both operands are below p, so the product fits
        a * b % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let (s, carry) = a.overflowing_add(b);
    if carry || s >= p {
        s.wrapping_sub(p)
    } else {
        s
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "zero has no inverse");
    pow_mod(a, p - 2, p)
}

/// Miller–Rabin with the first twelve prime bases, which is deterministic for
/// every 64-bit integer.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// The first `pool_size` primes of the form `1 + kτ`, `k = 1, 2, …`.
pub fn prime_pool(tau: u64, pool_size: usize) -> Result<Vec<u64>, PolyspaceError> {
    if tau < 2 || !tau.is_power_of_two() {
        return Err(PolyspaceError::InvalidTau(tau));
    }
    let mut pool = Vec::with_capacity(pool_size);
    let mut k: u64 = 1;
    while pool.len() < pool_size {
        let Some(candidate) = k.checked_mul(tau).and_then(|v| v.checked_add(1)) else {
            return Err(PolyspaceError::PrimeSearchExhausted {
                tau,
                found: pool.len(),
                wanted: pool_size,
            });
        };
        if is_prime(candidate) {
            pool.push(candidate);
        }
        k += 1;
    }
    Ok(pool)
}

/// A uniformly random member of [`prime_pool`]`(tau, pool_size)`.
pub fn find_prime(tau: u64, pool_size: usize, rng: &mut Rng) -> Result<u64, PolyspaceError> {
    let pool = prime_pool(tau, pool_size.max(1))?;
    Ok(pool[rng.below(pool.len())])
}

/// Attempts allowed in [`find_root_of_unity`] before giving up: `4 log² p`.
///
/// Each attempt succeeds with probability `1/2` when `τ` is a power of two,
/// so hitting the cap has probability `2^-(4 log² p)`.
pub fn root_attempt_cap(p: u64) -> usize {
    let bits = (64 - p.leading_zeros()) as usize;
    4 * bits * bits
}

/// Primitive `τ`-th root of unity in `Z_p` for a power of two `τ | p − 1`:
/// `a^((p−1)/τ)` for random `a`, retried until its `τ/2`-th power is not 1.
pub fn find_root_of_unity(p: u64, tau: u64, rng: &mut Rng) -> Result<u64, PolyspaceError> {
    if tau < 2 || !tau.is_power_of_two() {
        return Err(PolyspaceError::InvalidTau(tau));
    }
    if !(p - 1).is_multiple_of(tau) {
        return Err(PolyspaceError::TauDoesNotDivide { p, tau });
    }
    let cofactor = (p - 1) / tau;
    let attempts = root_attempt_cap(p);
    for _ in 0..attempts {
        let a = rng.range_inclusive(1, p - 1);
        let w = pow_mod(a, cofactor, p);
        if is_primitive_root_of_unity(w, tau, p) {
            return Ok(w);
        }
    }
    Err(PolyspaceError::RootNotFound { p, tau, attempts })
}

/// For a power of two `τ`: `ω^τ = 1` and `ω^(τ/2) ≠ 1`.
pub fn is_primitive_root_of_unity(w: u64, tau: u64, p: u64) -> bool {
    pow_mod(w, tau, p) == 1 && pow_mod(w, tau / 2, p) != 1
}

/// Everything the Fourier-domain evaluation needs about `Z_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldParams {
    pub p: u64,
    pub tau: u64,
    pub omega: u64,
    pub omega_inv: u64,
    pub tau_inv: u64,
}

impl FieldParams {
    /// Validates `p ≡ 1 (mod τ)` and that `ω` is a primitive `τ`-th root.
    pub fn new(p: u64, tau: u64, omega: u64) -> Result<Self, PolyspaceError> {
        if tau < 2 || !tau.is_power_of_two() {
            return Err(PolyspaceError::InvalidTau(tau));
        }
        if !(p - 1).is_multiple_of(tau) {
            return Err(PolyspaceError::TauDoesNotDivide { p, tau });
        }
        if !is_primitive_root_of_unity(omega, tau, p) {
            return Err(PolyspaceError::NotPrimitive { p, tau, omega });
        }
        Ok(FieldParams {
            p,
            tau,
            omega,
            omega_inv: inv_mod(omega, p),
            tau_inv: inv_mod(tau % p, p),
        })
    }

    /// Random prime from a pool of `pool_size` and a random primitive root.
    pub fn sample(tau: u64, pool_size: usize, rng: &mut Rng) -> Result<Self, PolyspaceError> {
        let p = find_prime(tau, pool_size, rng)?;
        let omega = find_root_of_unity(p, tau, rng)?;
        Self::new(p, tau, omega)
    }
}
