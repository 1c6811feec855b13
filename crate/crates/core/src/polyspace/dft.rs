//! Explicit `O(τ²)` discrete Fourier transform over `Z_p`.
//!
//! `F(a)[i] = Σ_j ω^{ij} a[j]` and `F⁻¹(a)[j] = τ⁻¹ Σ_i ω^{-ij} a[i]`. These
//! are reference definitions for checking the single-entry evaluator, not a
//! fast transform.

use crate::polyspace::field::{add_mod, mul_mod, FieldParams};

fn transform(a: &[u64], root: u64, p: u64) -> Vec<u64> {
    let n = a.len();
    let mut out = vec![0u64; n];
    let mut wi = 1 % p;
    for o in out.iter_mut() {
        let mut acc = 0u64;
        let mut w = 1 % p;
        for &v in a {
            acc = add_mod(acc, mul_mod(w, v % p, p), p);
            w = mul_mod(w, wi, p);
        }
        *o = acc;
        wi = mul_mod(wi, root, p);
    }
    out
}

/// `F(a)`; `a` must have length `τ`.
pub fn forward(a: &[u64], fp: &FieldParams) -> Vec<u64> {
    assert_eq!(a.len() as u64, fp.tau, "vector length must equal τ");
    transform(a, fp.omega, fp.p)
}

/// `F⁻¹(a)`; `a` must have length `τ`.
pub fn inverse(a: &[u64], fp: &FieldParams) -> Vec<u64> {
    assert_eq!(a.len() as u64, fp.tau, "vector length must equal τ");
    transform(a, fp.omega_inv, fp.p)
        .into_iter()
        .map(|v| mul_mod(v, fp.tau_inv, fp.p))
        .collect()
}

/// `(a ⊠ b)[i] = Σ_{j ≤ i} a[j] b[i−j] mod p` for `i < τ`, with `τ` the
/// common input length. Entries past `τ` are dropped, which only matters when
/// the convolution overflows.
pub fn convolve(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    let mut out = vec![0u64; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().take(n - i).enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x % p, y % p, p), p);
        }
    }
    out
}

/// Pointwise product.
pub fn pointwise(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| mul_mod(x, y, p)).collect()
}
