// SPDX-License-Identifier: Apache-2.0

mod common;

use la_sssp::ops::{
    apply_predicate, ewise_add_vector, ewise_mult_vector, filter_matrix, filter_vector, vxm_min_plus, BinaryOp,
    UnaryPredicate,
};
use la_sssp::{Mask, SparseMatrix, SparseVector};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn weight() -> impl Strategy<Value = f64> {
    prop_oneof![(1u32..=10).prop_map(f64::from), 0.001f64..10.0]
}

fn vector(n: usize) -> impl Strategy<Value = SparseVector> {
    proptest::collection::vec((0..n, weight()), 0..2 * n)
        .prop_map(move |pairs| SparseVector::from_pairs(n, pairs).unwrap())
}

fn matrix(max_n: usize) -> impl Strategy<Value = SparseMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n, weight()), 0..n * n)
            .prop_map(move |t| SparseMatrix::from_triples(n, t).unwrap())
    })
}

fn vector_pair() -> impl Strategy<Value = (SparseVector, SparseVector)> {
    (1usize..40).prop_flat_map(|n| (vector(n), vector(n)))
}

fn domain(v: &SparseVector) -> BTreeSet<usize> {
    v.indices().iter().copied().collect()
}

proptest! {
    #[test]
    fn vector_build_round_trip(n in 1usize..30, pairs in proptest::collection::vec((0usize..30, weight()), 0..60)) {
        let pairs: Vec<_> = pairs.into_iter().filter(|&(i, _)| i < n).collect();
        let v = SparseVector::from_pairs(n, pairs.clone()).unwrap();
        let mut expected = std::collections::BTreeMap::new();
        for (i, x) in pairs {
            let e = expected.entry(i).or_insert(x);
            *e = f64::min(*e, x);
        }
        prop_assert_eq!(v.iter().collect::<Vec<_>>(), expected.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn matrix_build_invariants(a in matrix(12)) {
        let entries: Vec<_> = a.entries().collect();
        prop_assert!(entries.iter().all(|&(r, c, w)| r != c && w > 0.0 && w.is_finite()));
        prop_assert!(entries.windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1)));
        prop_assert_eq!(a.transpose().transpose(), a.clone());
        let mut swapped: Vec<_> = entries.iter().map(|&(r, c, w)| (c, r, w)).collect();
        swapped.sort_by_key(|&(r, c, _)| (r, c));
        prop_assert_eq!(a.transposed_view().entries().collect::<Vec<_>>(), swapped);
    }

    #[test]
    fn union_law((u, v) in vector_pair()) {
        let out = ewise_add_vector(&u, &v, BinaryOp::MIN, None).unwrap();
        let expected: BTreeSet<_> = domain(&u).union(&domain(&v)).copied().collect();
        prop_assert_eq!(domain(&out), expected);
    }

    #[test]
    fn intersection_law((u, v) in vector_pair()) {
        let out = ewise_mult_vector(&u, &v, BinaryOp::TIMES).unwrap();
        let expected: BTreeSet<_> = domain(&u).intersection(&domain(&v)).copied().collect();
        prop_assert_eq!(domain(&out), expected);
    }

    #[test]
    fn lone_values_pass_through_any_operator((u, v) in vector_pair()) {
        for op in [BinaryOp::MIN, BinaryOp::PLUS, BinaryOp::TIMES, BinaryOp::LESS_THAN] {
            let out = ewise_add_vector(&u, &v, op, None).unwrap();
            for (i, x) in u.iter().filter(|(i, _)| !v.contains(*i)) {
                prop_assert_eq!(out.get(i), Some(x));
            }
            for (i, x) in v.iter().filter(|(i, _)| !u.contains(*i)) {
                prop_assert_eq!(out.get(i), Some(x));
            }
        }
    }

    #[test]
    fn masked_add_stays_inside_mask((u, v) in vector_pair()) {
        let mask = Mask::structure_of(&u);
        let out = ewise_add_vector(&u, &v, BinaryOp::LESS_THAN, Some(&mask)).unwrap();
        prop_assert!(domain(&out).is_subset(&domain(&u)));
    }

    #[test]
    fn filter_is_subset_without_false_entries(v in (1usize..40).prop_flat_map(vector), lo in 0.0f64..5.0, width in 0.1f64..5.0) {
        let pred = UnaryPredicate::half_open(lo, lo + width);
        let mask = filter_vector(&v, &pred);
        for &i in mask.indices() {
            prop_assert!(v.contains(i));
            prop_assert!(pred.eval(v.get(i).unwrap()));
        }
        let expected = v.iter().filter(|&(_, x)| pred.eval(x)).count();
        prop_assert_eq!(mask.nnz(), expected);
        let intermediate = apply_predicate(&v, &pred, None).unwrap();
        prop_assert_eq!(mask, Mask::from_truthy(&intermediate));
    }

    #[test]
    fn vxm_matches_dense_brute_force(a in matrix(20), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = a.n();
        let mut pairs = Vec::new();
        for i in 0..n {
            if rng.gen_bool(0.4) {
                pairs.push((i, f64::from(rng.gen_range(0..20u32))));
            }
        }
        let v = SparseVector::from_pairs(n, pairs).unwrap();
        let dense = common::dense_min_plus(&v.to_dense(f64::INFINITY), &common::dense_matrix(&a));
        let sparse = vxm_min_plus(&v, &a, None).unwrap();
        prop_assert_eq!(sparse.to_dense(f64::INFINITY), dense);
    }

    #[test]
    fn light_heavy_partition(a in matrix(15), delta in 0.01f64..12.0) {
        let light = filter_matrix(&a, &UnaryPredicate::left_open(0.0, delta));
        let heavy = filter_matrix(&a, &UnaryPredicate::greater_than(delta));
        let mut both: Vec<_> = light.entries().chain(heavy.entries()).collect();
        both.sort_by_key(|&(r, c, _)| (r, c));
        prop_assert_eq!(both, a.entries().collect::<Vec<_>>());
        prop_assert_eq!(light.nnz() + heavy.nnz(), a.nnz());
    }
}

#[test]
fn vxm_exhaustive_small_graphs() {
    // every 3-vertex graph over weights {1, 2} with every frontier
    let cells: Vec<(usize, usize)> = (0..3).flat_map(|r| (0..3).map(move |c| (r, c))).filter(|(r, c)| r != c).collect();
    for code in 0..3usize.pow(cells.len() as u32) {
        let mut k = code;
        let mut triples = Vec::new();
        for &(r, c) in &cells {
            if k % 3 != 0 {
                triples.push((r, c, (k % 3) as f64));
            }
            k /= 3;
        }
        let a = SparseMatrix::from_triples(3, triples).unwrap();
        for frontier in 0..8usize {
            let pairs = (0..3).filter(|i| frontier >> i & 1 == 1).map(|i| (i, i as f64 * 0.5));
            let v = SparseVector::from_pairs(3, pairs).unwrap();
            let dense = common::dense_min_plus(&v.to_dense(f64::INFINITY), &common::dense_matrix(&a));
            assert_eq!(vxm_min_plus(&v, &a, None).unwrap().to_dense(f64::INFINITY), dense);
        }
    }
}
