mod common;

use proptest::prelude::*;
use subsetsum::convolve::sumset_with_elems;
use subsetsum::oracle::{bellman_all_sums, unbounded_dp};
use subsetsum::polyspace::circuit::circuit_delta;
use subsetsum::polyspace::{build_circuit, build_instance_circuit, dft, evaluate_entries, FieldParams};
use subsetsum::solver::{self, color_coding, color_coding_layer, faster_subset_sum, is_layer, layer_count};
use subsetsum::unbounded::unbounded_subset_sum;
use subsetsum::{capped_sumset, raw_convolve, Instance, Rng, SumSet};

fn set_strategy(max_len: usize, hi: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::btree_set(0..=hi, 0..=max_len).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn capped_sumset_matches_brute_force(
        a in set_strategy(40, 3000),
        b in set_strategy(40, 3000),
        cap in 0usize..4000,
    ) {
        let sa = SumSet::from_elems(cap, a.iter().copied().filter(|&v| v <= cap));
        let sb = SumSet::from_elems(cap, b.iter().copied().filter(|&v| v <= cap));
        let got = capped_sumset(&sa, &sb, cap);
        let af: Vec<usize> = a.iter().copied().filter(|&v| v <= cap).collect();
        let bf: Vec<usize> = b.iter().copied().filter(|&v| v <= cap).collect();
        prop_assert_eq!(got.to_vec(), common::brute_sumset(&af, &bf, cap));
    }

    #[test]
    fn sumset_is_commutative_with_identity(
        a in set_strategy(30, 500),
        b in set_strategy(30, 500),
    ) {
        let cap = 600;
        let sa = SumSet::from_elems(cap, a.iter().copied());
        let sb = SumSet::from_elems(cap, b.iter().copied());
        prop_assert_eq!(capped_sumset(&sa, &sb, cap), capped_sumset(&sb, &sa, cap));
        let with_zero = {
            let mut s = sa.clone();
            s.insert(0);
            s
        };
        prop_assert_eq!(capped_sumset(&sa, &SumSet::zero(cap), cap), with_zero);
    }

    #[test]
    fn raw_convolution_matches_definition(
        x in prop::collection::vec(any::<bool>(), 1..300),
        y in prop::collection::vec(any::<bool>(), 1..1500),
    ) {
        let z = raw_convolve(&x, &y);
        prop_assert_eq!(z.len(), x.len() + y.len() - 1);
        for (k, &bit) in z.iter().enumerate() {
            let expect = (0..x.len()).any(|i| k >= i && k - i < y.len() && x[i] && y[k - i]);
            prop_assert_eq!(bit, expect, "index {}", k);
        }
    }

    #[test]
    fn instance_text_round_trip(items in prop::collection::vec(1usize..1000, 0..30), t in 1usize..2000) {
        let inst = Instance::from_items(&items, t);
        let (back, dropped) = Instance::parse(&inst.to_text()).unwrap();
        prop_assert_eq!(back, inst);
        prop_assert_eq!(dropped.total(), 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn dense_sumsets_take_the_transform_path_and_agree(
        seed in any::<u64>(),
        cap in 100_000usize..300_000,
    ) {
        // dense operands well above the threshold force the NTT backend
        let mut rng = Rng::new(seed);
        let a = SumSet::from_elems(cap, (0..=cap).filter(|_| rng.below(3) == 0));
        let b = SumSet::from_elems(cap, (0..=cap).filter(|_| rng.below(3) == 0));
        let got = capped_sumset(&a, &b, cap);
        let mut slow = SumSet::zero(cap);
        slow = capped_sumset(&slow, &a, cap);
        sumset_with_elems(&mut slow, &b.to_vec(), cap);
        prop_assert_eq!(got, slow);
    }
}

#[test]
fn soundness_against_bellman() {
    let mut rng = Rng::new(11);
    for seed in 0..400u64 {
        let t = 1 + rng.below(1500);
        let n = 1 + rng.below(30);
        let z = common::random_set(&mut rng, n, t);
        let exact = bellman_all_sums(&Instance::from_items(&z, t));
        for delta in [0.25, 0.01] {
            let got = faster_subset_sum(&z, t, delta, &mut Rng::new(seed));
            assert!(got.is_subset(&exact), "z={z:?} t={t} seed={seed}");
        }
        let k = 1 + rng.below(4);
        assert!(color_coding(&z, t, k, 0.1, &mut Rng::new(seed)).is_subset(&exact));
    }
}

#[test]
fn decide_is_one_sided() {
    let mut rng = Rng::new(12);
    for seed in 0..300u64 {
        let inst = common::random_instance(&mut rng, 25, 400);
        let exact = bellman_all_sums(&inst).contains(inst.target());
        let got = solver::decide(&inst, 0.05, seed);
        if got.answer {
            assert!(exact, "false positive on {inst}");
            assert_eq!(got.error_bound, 0.0);
        }
    }
}

#[test]
fn color_coding_finds_small_sums() {
    // Z = {2,3,5}, t = 10, k = 3: full set {0,2,3,5,7,8,10} in >= 99% of seeds
    let exact = vec![0, 2, 3, 5, 7, 8, 10];
    let hits = (0..1000u64)
        .filter(|&s| color_coding(&[2, 3, 5], 10, 3, 0.01, &mut Rng::new(s)).to_vec() == exact)
        .count();
    assert!(hits >= 990, "{hits}");
    for s in 0..50 {
        let got = color_coding(&[7], 10, 1, 0.5, &mut Rng::new(s));
        assert!(got.contains(0) && got.contains(7));
    }
}

#[test]
fn layer_examples() {
    for s in 0..20 {
        assert_eq!(color_coding_layer(&[100], 100, 1, 0.25, &mut Rng::new(s)).to_vec(), vec![0, 100]);
    }
    // layer Z ⊂ [25, 50], t = 100, ℓ = 4
    let z = [26, 31, 37, 41, 44, 49];
    let exact = bellman_all_sums(&Instance::from_items(&z, 100));
    let mut full = 0;
    for s in 0..400u64 {
        let got = color_coding_layer(&z, 100, 4, 0.25, &mut Rng::new(s));
        assert!(got.is_subset(&exact));
        full += (got == exact) as usize;
    }
    assert!(full * 4 >= 400 * 3, "{full}/400");
}

#[test]
fn faster_subset_sum_examples() {
    let all: Vec<usize> = (0..=15).collect();
    let hits = (0..300u64)
        .filter(|&s| faster_subset_sum(&[1, 2, 4, 8], 15, 0.01, &mut Rng::new(s)).to_vec() == all)
        .count();
    assert!(hits >= 297, "{hits}");
    assert_eq!(faster_subset_sum(&[], 9, 0.1, &mut Rng::new(0)).to_vec(), vec![0]);
    assert_eq!(faster_subset_sum(&[9], 9, 0.1, &mut Rng::new(0)).to_vec(), vec![0, 9]);
}

#[test]
fn deterministic_per_seed() {
    let z = [3, 8, 13, 21, 34, 55, 89, 144];
    let a = faster_subset_sum(&z, 300, 0.1, &mut Rng::new(99));
    let b = faster_subset_sum(&z, 300, 0.1, &mut Rng::new(99));
    assert_eq!(a, b);
    let inst = Instance::from_items(&[4, 4, 4, 9, 9, 15], 40);
    assert_eq!(solver::all_sums(&inst, 0.1, 5), solver::all_sums(&inst, 0.1, 5));
}

/// Every subset with sum <= t inside a layer has at most ℓ = 2^i items.
#[test]
fn layer_size_fact() {
    let mut rng = Rng::new(13);
    for _ in 0..300 {
        let t = 1 + rng.below(200);
        let n = 1 + rng.below(12);
        let z = common::random_set(&mut rng, n, t);
        let count = layer_count(z.len());
        for i in 1..=count {
            let upper = t >> (i - 1);
            let layer: Vec<usize> = if i == count {
                z.iter().copied().filter(|&v| v <= upper).collect()
            } else {
                z.iter().copied().filter(|&v| v > t >> i && v <= upper).collect()
            };
            let ell = 1usize << i;
            assert!(is_layer(&layer, t, ell), "layer {i} of {z:?}, t={t}");
            for mask in 0u32..(1 << layer.len()) {
                let sum: usize = (0..layer.len()).filter(|&b| mask >> b & 1 == 1).map(|b| layer[b]).sum();
                if sum <= t {
                    assert!(mask.count_ones() as usize <= ell);
                }
            }
        }
    }
}

#[test]
fn unbounded_matches_dp() {
    let mut rng = Rng::new(14);
    for _ in 0..200 {
        let t = 1 + rng.below(5000);
        let n = 1 + rng.below(60);
        let z = common::random_set(&mut rng, n, t);
        assert_eq!(unbounded_subset_sum(&z, t), unbounded_dp(&z, t), "{z:?} {t}");
    }
}

/// The circuit records the same run with caps dropped, so its support
/// restricted to [0, t] is exactly what the solver returns for that seed.
#[test]
fn circuit_support_equals_solver_output() {
    let mut rng = Rng::new(15);
    for seed in 0..150u64 {
        let t = 1 + rng.below(200);
        let n = 1 + rng.below(12);
        let z = common::random_set(&mut rng, n, t);
        let c = build_circuit(&z, t, seed);
        c.validate().unwrap();
        let support: Vec<usize> = common::support(&c).into_iter().filter(|&i| i <= t).collect();
        let run = faster_subset_sum(&z, t, circuit_delta(z.len()), &mut Rng::new(seed));
        assert_eq!(support, run.to_vec(), "z={z:?} t={t} seed={seed}");
        let exact = bellman_all_sums(&Instance::from_items(&z, t));
        assert!(run.is_subset(&exact));
    }
}

#[test]
fn length_bound_holds_without_overflow() {
    let mut rng = Rng::new(16);
    for seed in 0..100u64 {
        let inst = common::random_instance(&mut rng, 12, 200);
        let c = build_instance_circuit(&inst, seed);
        c.validate().unwrap();
        // the exact output vector ends at or before its length bound
        let out = common::eval_big(&c);
        let last = out.last().map_or(0, |e| e.0);
        assert!(last <= c.len_bound(c.output()));
        assert!(c.len_bound(c.output()) < c.vec_len());
    }
}

#[test]
fn evaluated_entries_match_dense_mod_p() {
    let mut rng = Rng::new(17);
    for seed in 0..25u64 {
        let inst = common::random_instance(&mut rng, 8, 100);
        let c = build_instance_circuit(&inst, seed);
        let fp = FieldParams::sample(c.vec_len() as u64, 64, &mut rng).unwrap();
        let dense = common::eval_mod(&c, fp.p);
        let xs: Vec<usize> = (0..c.vec_len()).collect();
        let got = evaluate_entries(&c, &fp, &xs);
        for x in xs {
            assert_eq!(got[x], common::entry(&dense, x, 0), "x={x}");
        }
    }
}

#[test]
fn dft_round_trip_and_convolution_theorem() {
    let mut rng = Rng::new(18);
    for log in 2..=8u32 {
        let tau = 1u64 << log;
        let fp = FieldParams::sample(tau, 64, &mut rng).unwrap();
        for _ in 0..10 {
            let a: Vec<u64> = (0..tau).map(|_| rng.next_u64() % fp.p).collect();
            assert_eq!(dft::inverse(&dft::forward(&a, &fp), &fp), a);
            let half = tau as usize / 2;
            let x: Vec<u64> = (0..tau as usize).map(|i| if i < half { rng.next_u64() % fp.p } else { 0 }).collect();
            let y: Vec<u64> = (0..tau as usize).map(|i| if i < half { rng.next_u64() % fp.p } else { 0 }).collect();
            assert_eq!(
                dft::forward(&dft::convolve(&x, &y, fp.p), &fp),
                dft::pointwise(&dft::forward(&x, &fp), &dft::forward(&y, &fp), fp.p)
            );
        }
    }
}
