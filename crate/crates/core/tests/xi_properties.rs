use std::sync::Arc;
use std::thread;

use proptest::prelude::*;
use quotcoh::quot::{psi_partial, psi_pullback, psi_pullback_combinatorial, InvariantMode};
use quotcoh::restriction::restrict;
use quotcoh::combinatorics::TConvention;
use quotcoh::{CurveLetter, Degree, Perm, Rank, RingContext, RingElement, WeightVector, XiEngine};

fn weight(n: usize, max_entry: u32) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(0..=max_entry, n).prop_map(WeightVector)
}

fn omega_power(ctx: &Arc<RingContext>, v: &WeightVector) -> RingElement {
    let e: Vec<u16> = v.entries().iter().map(|&x| x as u16).collect();
    RingElement::one(ctx).times_omega_power(&e)
}

#[test]
fn homogeneous_with_unitriangular_leading_term() {
    for n in 1..=4 {
        for g in 0..=2 {
            let ctx = RingContext::new(g, n);
            let engine = XiEngine::new(&ctx);
            for v in WeightVector::all_with_co(n, 5) {
                let x = engine.xi(&v).unwrap();
                assert_eq!(x.degree(), Degree::Homogeneous(2 * v.co()), "v={v}");
                let top = x.filter(|m| m.omega_degree() == v.co());
                assert_eq!(top, omega_power(&ctx, &v), "v={v}");
            }
        }
    }
}

#[test]
fn concurrent_lookups_agree_with_fresh_engine() {
    let ctx = RingContext::new(1, 3);
    let shared = Arc::new(XiEngine::new(&ctx));
    let weights = WeightVector::all_with_co(3, 4);
    let handles: Vec<_> = (0..4)
        .map(|k| {
            let engine = Arc::clone(&shared);
            let mut order = weights.clone();
            let shift = k * 7 % order.len();
            order.rotate_left(shift);
            thread::spawn(move || order.iter().map(|v| (v.clone(), engine.xi(v).unwrap())).collect::<Vec<_>>())
        })
        .collect();
    let fresh = XiEngine::new(&ctx);
    for h in handles {
        for (v, x) in h.join().unwrap() {
            assert_eq!(x, fresh.xi(&v).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn t_to_zero_recovers_non_equivariant_class(g in 0u32..=2, v in (1usize..=3).prop_flat_map(|n| weight(n, 3))) {
        let eq = RingContext::with(g, v.len(), Rank::Finite(5), vec![]).unwrap();
        let plain = RingContext::new(g, v.len());
        let lifted = XiEngine::new(&eq).xi_equivariant(&v).unwrap();
        prop_assert_eq!(lifted.specialize_t_zero(&plain), XiEngine::new(&plain).xi(&v).unwrap());
    }

    #[test]
    fn restriction_is_multiplicative(
        g in 0u32..=1,
        (v, u, w) in (1usize..=3).prop_flat_map(|n| (weight(n, 2), weight(n, 2), weight(n, 2))),
        a in prop::sample::select(vec![CurveLetter::Unit, CurveLetter::Point]),
    ) {
        let n = v.len();
        let ctx = RingContext::with(g, n, Rank::Finite(3), vec![1, 0, -2]).unwrap();
        let engine = XiEngine::new(&ctx);
        let x = &engine.xi_equivariant(&v).unwrap() * &RingElement::pullback(&ctx, 1, a).unwrap();
        let y = engine.xi_equivariant(&u).unwrap() + RingElement::diagonal(&ctx, 1, n.max(2)).unwrap_or_else(|_| RingElement::one(&ctx));
        let lhs = restrict(&(&x * &y), &w).unwrap();
        let rhs = &restrict(&x, &w).unwrap() * &restrict(&y, &w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn generating_function(g in 0u32..=2, n in 1usize..=4, i in 1usize..=4) {
        prop_assume!(i <= n);
        let engine = XiEngine::new(&RingContext::new(g, n));
        prop_assert_eq!(engine.pn_series(i, 4).unwrap(), engine.pn_closed_form(i, 4).unwrap());
    }

    #[test]
    fn any_index_increment(g in 0u32..=2, v in (1usize..=4).prop_flat_map(|n| weight(n, 2)), m in 1usize..=4) {
        prop_assume!(m <= v.len());
        let engine = XiEngine::new(&RingContext::new(g, v.len()));
        prop_assert!(engine.check_increment_any_index(&v, m, false).unwrap().is_zero());
    }

    #[test]
    fn module_recursion(g in 0u32..=1, u in (0usize..=2).prop_flat_map(|k| weight(k, 2)), l in 1u32..=2,
                        letters in prop::collection::vec(prop::sample::select(vec![CurveLetter::Unit, CurveLetter::Alpha(1), CurveLetter::Beta(1), CurveLetter::Point]), 3)) {
        let n = u.len() + 1;
        let ctx = RingContext::new(g.max(1), n);
        let engine = XiEngine::new(&ctx);
        let a = RingElement::tensor(&ctx, &letters[..n]).unwrap();
        prop_assert!(engine.check_module_recursion(&u, l, &a).unwrap().is_zero());
    }

    #[test]
    fn lenient_pullback_methods_agree(
        g in 0u32..=1,
        u in prop::collection::vec(0u32..=2, 3).prop_map(|mut v| { v.sort_unstable_by(|a, b| b.cmp(a)); WeightVector(v) }),
        letters in prop::collection::vec(prop::sample::select(vec![CurveLetter::Unit, CurveLetter::Alpha(1), CurveLetter::Point]), 3),
    ) {
        let ctx = RingContext::new(g.max(1), 3);
        let engine = XiEngine::new(&ctx);
        let a = RingElement::tensor(&ctx, &letters).unwrap();
        let x = psi_pullback(&engine, &u, &a, InvariantMode::Lenient).unwrap();
        let y = psi_pullback_combinatorial(&ctx, &u, &a, InvariantMode::Lenient, TConvention::default()).unwrap();
        prop_assert_eq!(&x.value, &y.value);
        prop_assert_eq!(x.averaged, a.project_invariant(&Perm::stabilizer(u.entries())) != a);
    }
}

#[test]
fn partial_symmetrization_extremes() {
    let ctx = RingContext::new(1, 3);
    let engine = XiEngine::new(&ctx);
    let a = RingElement::tensor(&ctx, &[CurveLetter::Point, CurveLetter::Unit, CurveLetter::Unit]).unwrap();
    for v in [vec![2, 1, 0], vec![1, 1, 0], vec![0, 0, 0]] {
        let v = WeightVector(v);
        let sym = a.project_invariant(&Perm::stabilizer(v.entries()));
        let full = psi_partial(&engine, &[3], &v, &sym).unwrap();
        assert_eq!(full, psi_pullback(&engine, &v, &sym, InvariantMode::Strict).unwrap().value);
        let trivial = psi_partial(&engine, &[1, 1, 1], &v, &a).unwrap();
        assert_eq!(trivial, &engine.xi(&v).unwrap() * &a);
    }
}
