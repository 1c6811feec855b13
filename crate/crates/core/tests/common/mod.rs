//! Shared helpers for the integration tests: instance generators and dense
//! reference evaluators for circuits.

#![allow(dead_code)]

use num_bigint::BigUint;
use num_traits::Zero;
use subsetsum::polyspace::{Circuit, Gate};
use subsetsum::{Instance, Rng};

/// A random set of distinct items in `1..=hi`, at most `n` of them.
pub fn random_set(rng: &mut Rng, n: usize, hi: usize) -> Vec<usize> {
    let mut z: Vec<usize> = (0..n).map(|_| 1 + rng.below(hi)).collect();
    z.sort_unstable();
    z.dedup();
    z
}

/// A random multiset instance with `1..=max_n` items and target `1..=max_t`.
pub fn random_instance(rng: &mut Rng, max_n: usize, max_t: usize) -> Instance {
    let n = 1 + rng.below(max_n);
    let t = 1 + rng.below(max_t);
    let items: Vec<usize> = (0..n).map(|_| 1 + rng.below(t)).collect();
    Instance::from_items(&items, t)
}

/// `{a + b : a ∈ A ∪ {0}, b ∈ B ∪ {0}} ∩ [0, cap]` by brute force.
pub fn brute_sumset(a: &[usize], b: &[usize], cap: usize) -> Vec<usize> {
    let mut out = vec![false; cap + 1];
    for &x in a.iter().chain(&[0]) {
        for &y in b.iter().chain(&[0]) {
            if x + y <= cap {
                out[x + y] = true;
            }
        }
    }
    (0..=cap).filter(|&i| out[i]).collect()
}

/// Sparse vector: sorted `(index, value)` pairs with nonzero values.
type Sparse<V> = Vec<(usize, V)>;

fn sparse_add<V: Clone>(a: &Sparse<V>, b: &Sparse<V>, add: impl Fn(&V, &V) -> V) -> Sparse<V> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j].clone());
            j += 1;
        } else {
            out.push((a[i].0, add(&a[i].1, &b[j].1)));
            i += 1;
            j += 1;
        }
    }
    out
}

fn sparse_conv<V: Clone>(
    a: &Sparse<V>,
    b: &Sparse<V>,
    zero: &V,
    mul_add: impl Fn(&mut V, &V, &V),
    is_zero: impl Fn(&V) -> bool,
) -> Sparse<V> {
    let top = a.last().map_or(0, |x| x.0) + b.last().map_or(0, |x| x.0);
    let mut dense: Vec<Option<V>> = vec![None; top + 1];
    for (i, x) in a {
        for (j, y) in b {
            let slot = dense[i + j].get_or_insert_with(|| zero.clone());
            mul_add(slot, x, y);
        }
    }
    dense
        .into_iter()
        .enumerate()
        .filter_map(|(k, v)| v.filter(|v| !is_zero(v)).map(|v| (k, v)))
        .collect()
}

/// Evaluates every gate on explicit vectors, dropping each gate's vector
/// after its last reader. Returns the output vector as `(index, value)`
/// pairs with nonzero values.
fn dense_eval<V: Clone>(
    c: &Circuit,
    from_u64: impl Fn(u64) -> V,
    add: impl Fn(&V, &V) -> V,
    mul_add: impl Fn(&mut V, &V, &V),
    is_zero: impl Fn(&V) -> bool,
) -> Sparse<V> {
    let gates = c.gates();
    let mut last_use: Vec<usize> = (0..gates.len()).collect();
    for (id, g) in gates.iter().enumerate() {
        if let Some((a, b)) = g.children() {
            last_use[a] = id;
            last_use[b] = id;
        }
    }
    last_use[c.output()] = usize::MAX;
    let zero = from_u64(0);
    let mut vals: Vec<Option<Sparse<V>>> = vec![None; gates.len()];
    for (id, g) in gates.iter().enumerate() {
        let v = match *g {
            Gate::Singleton { index, value } => {
                let v = from_u64(value);
                if is_zero(&v) {
                    Vec::new()
                } else {
                    vec![(index, v)]
                }
            }
            Gate::Add(a, b) => {
                let s = sparse_add(vals[a].as_ref().unwrap(), vals[b].as_ref().unwrap(), &add);
                s.into_iter().filter(|(_, v)| !is_zero(v)).collect()
            }
            Gate::Conv(a, b) => sparse_conv(
                vals[a].as_ref().unwrap(),
                vals[b].as_ref().unwrap(),
                &zero,
                &mul_add,
                &is_zero,
            ),
        };
        vals[id] = Some(v);
        if let Some((a, b)) = g.children() {
            for child in [a, b] {
                if last_use[child] == id {
                    vals[child] = None;
                }
            }
        }
    }
    vals[c.output()].take().unwrap()
}

/// Exact output vector of the circuit over the naturals.
pub fn eval_big(c: &Circuit) -> Vec<(usize, BigUint)> {
    dense_eval(
        c,
        BigUint::from,
        |a, b| a + b,
        |acc, x, y| *acc += x * y,
        |v| v.is_zero(),
    )
}

/// Output vector of the circuit with every operation reduced mod `p`.
pub fn eval_mod(c: &Circuit, p: u64) -> Vec<(usize, u64)> {
    let p128 = p as u128;
    dense_eval(
        c,
        |v| v % p,
        |a, b| ((*a as u128 + *b as u128) % p128) as u64,
        |acc, x, y| *acc = ((*acc as u128 + *x as u128 * *y as u128) % p128) as u64,
        |v| *v == 0,
    )
}

/// Indices where the exact output vector is nonzero.
pub fn support(c: &Circuit) -> Vec<usize> {
    eval_big(c).into_iter().map(|(i, _)| i).collect()
}

/// Entry `x` of a sparse vector.
pub fn entry<V: Clone>(v: &[(usize, V)], x: usize, zero: V) -> V {
    match v.binary_search_by_key(&x, |e| e.0) {
        Ok(i) => v[i].1.clone(),
        Err(_) => zero,
    }
}
