use std::collections::BTreeSet;

use proptest::prelude::*;
use quotcoh::combinatorics::{dec_of_weights, enumerate_t, weights_of_dec, TConvention};
use quotcoh::{Perm, SubsetTuple, TupleSequence, WeightVector};

fn decreasing(max_len: usize, r: u32) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(0..r, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        WeightVector(v)
    })
}

/// First Betti number of the bipartite element/set incidence graph, counting
/// the edges that close a cycle.
fn cycle_rank(tuple: &SubsetTuple) -> i64 {
    let sets = tuple.sets();
    let offset = 64;
    let mut parent: Vec<usize> = (0..offset + sets.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut cycles = 0;
    for (j, set) in sets.iter().enumerate() {
        for &e in set {
            let (a, b) = (find(&mut parent, e), find(&mut parent, offset + j));
            if a == b {
                cycles += 1;
            } else {
                parent[a] = b;
            }
        }
    }
    cycles
}

fn subset_tuple() -> impl Strategy<Value = SubsetTuple> {
    prop::collection::vec(1u64..32, 1..=4)
        .prop_map(|masks| SubsetTuple::from_masks(masks.into_iter().map(|m| m << 1).collect()).unwrap())
}

proptest! {
    #[test]
    fn decomposition_bijection(blocks in prop::collection::vec(decreasing(4, 4), 1..=3)) {
        let dec = dec_of_weights(&blocks, 4).unwrap();
        prop_assert_eq!(weights_of_dec(&dec), blocks.clone());
        let co: u32 = blocks.iter().map(WeightVector::co).sum();
        prop_assert_eq!(dec.co(), co);
    }

    #[test]
    fn betti_number_matches_cycle_count(tuple in subset_tuple()) {
        for comp in tuple.connected_components() {
            prop_assert!(comp.is_connected());
            prop_assert_eq!(comp.betti_b1().unwrap(), cycle_rank(&comp));
        }
        let total: usize = tuple.connected_components().iter().map(SubsetTuple::len).sum();
        prop_assert_eq!(total, tuple.len());
    }

    #[test]
    fn permutation_group_laws(v in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(),
                              w in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle()) {
        let s = Perm::from_images(v).unwrap();
        let t = Perm::from_images(w).unwrap();
        prop_assert!(s.compose(&s.inverse()).is_identity());
        let x: Vec<u32> = (10..15).collect();
        prop_assert_eq!(s.compose(&t).apply(&x), s.apply(&t.apply(&x)));
    }
}

/// All tuple sequences with row sums bounded by `u`, filtered by `satisfies`.
fn brute_force(u: &WeightVector, sigma: &Perm, conv: TConvention) -> BTreeSet<Vec<Vec<u32>>> {
    let n = u.len();
    let bound = u.entries().iter().copied().max().unwrap_or(0);
    let mut candidates: Vec<Vec<Vec<u32>>> = vec![vec![]];
    for j in 1..=n {
        let mut next = Vec::new();
        for c in &candidates {
            let mut rows = vec![vec![]];
            for _ in 0..j {
                rows = rows
                    .into_iter()
                    .flat_map(|r: Vec<u32>| (0..=bound).map(move |x| [r.clone(), vec![x]].concat()))
                    .collect();
            }
            for r in rows {
                next.push([c.clone(), vec![r]].concat());
            }
        }
        candidates = next;
    }
    candidates
        .into_iter()
        .filter(|rows| TupleSequence::new(rows.clone()).unwrap().satisfies(u, sigma, conv))
        .collect()
}

#[test]
fn enumeration_matches_brute_force() {
    for u in [vec![1, 0], vec![2, 1], vec![1, 1, 0], vec![2, 1, 0], vec![1, 1, 1]] {
        let u = WeightVector(u);
        for sigma in Perm::all(u.len()) {
            for conv in TConvention::ALL {
                let listed = enumerate_t(&u, &sigma, conv).unwrap();
                let again = enumerate_t(&u, &sigma, conv).unwrap();
                assert_eq!(listed, again);
                assert!(listed.iter().all(|l| l.satisfies(&u, &sigma, conv)));
                let got: BTreeSet<_> = listed.iter().map(|l| l.rows().to_vec()).collect();
                assert_eq!(got.len(), listed.len());
                assert_eq!(got, brute_force(&u, &sigma, conv), "u={u} σ={sigma} {conv}");
            }
        }
    }
}

#[test]
fn figure_tuples() {
    let cases: [(&[&[usize]], i64); 3] = [
        (&[&[1, 2], &[2, 3]], 0),
        (&[&[1, 2], &[2, 3], &[1, 3]], 1),
        (&[&[1, 2], &[2, 3], &[1, 2, 3]], 2),
    ];
    for (sets, b1) in cases {
        let t = SubsetTuple::new(sets).unwrap();
        assert_eq!(t.betti_b1().unwrap(), b1);
        assert_eq!(cycle_rank(&t), b1);
    }
}
