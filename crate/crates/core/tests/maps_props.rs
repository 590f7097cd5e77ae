use num_bigint::BigInt;
use proptest::prelude::*;
use zcpn::context::{PrimePowerCtx, LEVEL_CASES};
use zcpn::kernel::Pipeline;
use zcpn::maps::{f1, f2, ker_pi1_parametrize, lift_to_kernel, pi1, pi2};
use zcpn::units::{hoechsmann_units, CycUnits};
use zcpn::GroupRingElem;

fn ctx_and_pair() -> impl Strategy<Value = (PrimePowerCtx, GroupRingElem, GroupRingElem)> {
    prop::sample::select(LEVEL_CASES.to_vec()).prop_flat_map(|(p, n)| {
        let ctx = PrimePowerCtx::make(p, n, None).unwrap();
        let m = ctx.m as usize;
        let v = move || prop::collection::vec(-9i64..10, m).prop_map(move |c| GroupRingElem::from_i64s(m, 0, &c).unwrap());
        (Just(ctx), v(), v())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn projections_are_ring_homomorphisms((ctx, a, b) in ctx_and_pair()) {
        let sum = &a + &b;
        let prod = &a * &b;
        prop_assert_eq!(pi1(&ctx, &sum).unwrap(), pi1(&ctx, &a).unwrap().checked_add(&pi1(&ctx, &b).unwrap()).unwrap());
        prop_assert_eq!(pi1(&ctx, &prod).unwrap(), pi1(&ctx, &a).unwrap().mul(&pi1(&ctx, &b).unwrap()));
        prop_assert_eq!(pi2(&ctx, &sum).unwrap(), &pi2(&ctx, &a).unwrap() + &pi2(&ctx, &b).unwrap());
        prop_assert_eq!(pi2(&ctx, &prod).unwrap(), &pi2(&ctx, &a).unwrap() * &pi2(&ctx, &b).unwrap());
    }

    #[test]
    fn reductions_are_ring_homomorphisms((ctx, a, b) in ctx_and_pair()) {
        let (x, y) = (pi2(&ctx, &a).unwrap(), pi2(&ctx, &b).unwrap());
        prop_assert_eq!(f1(&ctx, &(&x * &y)).unwrap(), &f1(&ctx, &x).unwrap() * &f1(&ctx, &y).unwrap());
        prop_assert_eq!(f1(&ctx, &(&x + &y)).unwrap(), &f1(&ctx, &x).unwrap() + &f1(&ctx, &y).unwrap());
        let (u, v) = (pi1(&ctx, &a).unwrap(), pi1(&ctx, &b).unwrap());
        prop_assert_eq!(f2(&ctx, &u.mul(&v)).unwrap(), &f2(&ctx, &u).unwrap() * &f2(&ctx, &v).unwrap());
        prop_assert_eq!(f2(&ctx, &u.checked_add(&v).unwrap()).unwrap(), &f2(&ctx, &u).unwrap() + &f2(&ctx, &v).unwrap());
    }

    #[test]
    fn square_commutes((ctx, a, _b) in ctx_and_pair()) {
        prop_assert_eq!(f2(&ctx, &pi1(&ctx, &a).unwrap()).unwrap(), f1(&ctx, &pi2(&ctx, &a).unwrap()).unwrap());
    }

    #[test]
    fn kernel_parametrization_round_trips(
        (p, n) in prop::sample::select(LEVEL_CASES.to_vec()),
        a in prop::collection::vec(-30i64..30, 64),
    ) {
        let ctx = PrimePowerCtx::make(p, n, None).unwrap();
        let q = ctx.prev_order() as usize;
        let mut v = vec![0i64; q];
        for (i, x) in v.iter_mut().enumerate() {
            *x = p as i64 * a[i];
        }
        v[0] += 1;
        let v = GroupRingElem::from_i64s(q, 0, &v).unwrap();
        let k = lift_to_kernel(&ctx, &v).unwrap();
        let w = k.to_group_ring();
        prop_assert!(pi1(&ctx, &w).unwrap().is_one());
        prop_assert_eq!(pi2(&ctx, &w).unwrap(), v);
        prop_assert_eq!(ker_pi1_parametrize(&ctx, &w).unwrap(), Some(k));
    }
}

#[test]
fn lift_of_one_is_trivial_and_bad_inputs_are_rejected() {
    let ctx = PrimePowerCtx::make(3, 3, None).unwrap();
    let k = lift_to_kernel(&ctx, &GroupRingElem::one(9, 0)).unwrap();
    assert!(k.a.iter().all(|x| *x == BigInt::from(0)));
    assert!(k.to_group_ring().is_one());
    let bad = GroupRingElem::from_i64s(9, 0, &[1, 1, 0, 0, 0, 0, 0, 0, 0]).unwrap();
    assert!(lift_to_kernel(&ctx, &bad).is_err());
    let g = GroupRingElem::group_element(27, 0, 1);
    assert_eq!(ker_pi1_parametrize(&ctx, &g).unwrap(), None);
}

#[test]
fn hoechsmann_units_project_to_h() {
    for &(p, n) in &LEVEL_CASES {
        let ctx = PrimePowerCtx::make(p, n, None).unwrap();
        let cyc = CycUnits::new(&ctx).unwrap();
        for (i, th) in hoechsmann_units(&ctx).unwrap().iter().enumerate() {
            let img = pi1(&ctx, th).unwrap();
            assert_eq!(img, cyc.h(i as u64 + 1), "{p}^{n} i={}", i + 1);
            if p != 2 {
                assert_eq!(img.psi().unwrap(), 1);
            }
            let (e, red) = th.split_group_part();
            assert_eq!(red.shift(e as i64), *th);
            assert!(if p == 2 { red.is_u2() } else { red.is_symmetric() });
        }
    }
}

#[test]
fn context_is_deterministic() {
    for &(p, n) in &LEVEL_CASES {
        assert_eq!(PrimePowerCtx::make(p, n, None).unwrap(), PrimePowerCtx::make(p, n, None).unwrap());
    }
}

#[test]
fn kernel_generators_are_symmetric_and_separated() {
    let mut pipe = Pipeline::new();
    for &(p, n) in &LEVEL_CASES {
        let ctx = PrimePowerCtx::make(p, n, None).unwrap();
        let res = pipe.assemble(&ctx).unwrap();
        let table = pipe.level_table(&ctx).unwrap();
        let half = (ctx.m / 2) as i64;
        for (i, k) in res.kernel_part.iter().enumerate() {
            let w = &k.w;
            assert!(pi1(&ctx, w).unwrap().is_one());
            let v = pi2(&ctx, w).unwrap();
            assert!(f1(&ctx, &v).unwrap().is_one());
            // v is the recorded word in the table generators and h
            let r = table.prev_gens.len();
            let mut word = GroupRingElem::group_element(ctx.prev_order() as usize, 0, k.exponents[r]);
            for (u, &e) in table.prev_gens.iter().zip(&k.exponents) {
                word = &word * &u.pow(e).unwrap();
            }
            assert_eq!(v, word, "{p}^{n} w_{}", i + 1);
            if p == 2 {
                let ws = w.shift(half);
                assert!(w.is_symmetric() || (ws.is_symmetric() && ws.shift(half) == *w));
            } else {
                assert!(w.is_symmetric(), "{p}^{n} w_{}", i + 1);
            }
            for other in &res.kernel_part[..i] {
                assert_ne!(pi2(&ctx, &other.w).unwrap(), v);
            }
        }
        // rank of ker(π̄₁) equals the rank of ker(f̄₁) on the table
        assert_eq!(res.kernel_part.len(), table.prev_gens.len(), "{p}^{n}");
    }
}
