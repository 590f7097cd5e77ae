use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use zcpn::arith::{gcd, pow_mod};
use zcpn::context::{in_scope_cases, PrimePowerCtx, LEVEL_CASES};
use zcpn::cyclotomic::{cyclotomic_poly, CycInt};
use zcpn::embedding::{conjugate_reps, log_embedding};
use zcpn::units::{CycUnits, SetName};

/// `(x^{p^n} − 1) / (x^{p^{n−1}} − 1)` by long division.
fn phi_by_division(p: u64, n: u32) -> Vec<BigInt> {
    let m = p.pow(n) as usize;
    let q = p.pow(n - 1) as usize;
    let mut num = vec![BigInt::zero(); m + 1];
    num[0] = BigInt::from(-1);
    num[m] = BigInt::from(1);
    let mut quot = vec![BigInt::zero(); m - q + 1];
    for k in (q..=m).rev() {
        let c = num[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - q] = c.clone();
        num[k] -= &c;
        num[k - q] += &c;
    }
    assert!(num.iter().all(Zero::is_zero));
    quot
}

/// Remainder of `a` modulo the monic `f`.
fn rem_monic(a: &[BigInt], f: &[BigInt]) -> Vec<BigInt> {
    let d = f.len() - 1;
    let mut r = a.to_vec();
    for k in (d..r.len()).rev() {
        let c = r[k].clone();
        if c.is_zero() {
            continue;
        }
        for (j, fj) in f.iter().enumerate() {
            r[k - d + j] -= &c * fj;
        }
    }
    r.resize(d, BigInt::zero());
    r
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn case() -> impl Strategy<Value = (u64, u32)> {
    prop::sample::select(vec![(3u64, 2u32), (3, 3), (5, 2), (7, 2), (2, 3), (2, 4), (2, 5), (5, 1), (11, 1)])
}

#[test]
fn cyclotomic_polynomial_matches_division() {
    for (p, n) in in_scope_cases() {
        assert_eq!(cyclotomic_poly(p, n).unwrap(), phi_by_division(p, n), "{p}^{n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_and_product_match_long_division(
        (p, n) in case(),
        a in prop::collection::vec(-50i64..50, 1..200),
        b in prop::collection::vec(-50i64..50, 1..200),
    ) {
        let f = phi_by_division(p, n);
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let (ab, bb) = (big(&a), big(&b));
        let x = CycInt::new(p, n, ab.clone()).unwrap();
        let y = CycInt::new(p, n, bb.clone()).unwrap();
        prop_assert_eq!(x.coeffs(), &rem_monic(&ab, &f)[..]);
        let xy = x.mul(&y);
        prop_assert_eq!(xy.coeffs(), &rem_monic(&poly_mul(&ab, &bb), &f)[..]);
    }

    #[test]
    fn psi_is_multiplicative_on_units(
        (p, n) in prop::sample::select(vec![(3u64, 2u32), (3, 3), (5, 2), (7, 2), (7, 1), (13, 1)]),
        e in prop::collection::vec(-3i64..4, 6),
        f in prop::collection::vec(-3i64..4, 6),
    ) {
        let ctx = PrimePowerCtx::derive(p, n, None).unwrap();
        let cyc = CycUnits::new(&ctx).unwrap();
        let gens = cyc.members(SetName::S1).unwrap();
        let word = |ex: &[i64]| gens.iter().zip(ex).fold(CycInt::one(p, n).unwrap(), |acc, (g, &k)| acc.mul(&g.pow(k).unwrap()));
        let (u, v) = (word(&e), word(&f));
        let lhs = u.mul(&v).psi().unwrap();
        prop_assert_eq!(lhs, u.psi().unwrap() * v.psi().unwrap() % p);
    }

    #[test]
    fn log_embedding_matches_complex_evaluation(
        (p, n) in prop::sample::select(vec![(3u64, 2u32), (5, 2), (2, 4), (3, 3), (7, 1)]),
        i in 2u64..40,
    ) {
        let m = p.pow(n);
        prop_assume!(gcd(i, m) == 1);
        let u = CycInt::mu(p, n, i).unwrap();
        let lv = log_embedding(&u, 128).unwrap().to_f64();
        for (k, a) in conjugate_reps(m).into_iter().enumerate() {
            let z: Complex64 = u.coeffs().iter().enumerate().map(|(j, c)| {
                let ang = 2.0 * std::f64::consts::PI * ((a * j as u64) % m) as f64 / m as f64;
                Complex64::from_polar(c.to_f64().unwrap(), ang)
            }).sum();
            prop_assert!((z.norm().ln() - lv[k]).abs() < 1e-9, "{} vs {}", z.norm().ln(), lv[k]);
        }
    }
}

#[test]
fn psi_of_mu_i_is_i() {
    for (p, n) in [(3u64, 2u32), (5, 2), (7, 2), (3, 3), (11, 1)] {
        let m = p.pow(n);
        for i in (1..m).filter(|i| gcd(*i, m) == 1) {
            assert_eq!(CycInt::mu(p, n, i).unwrap().psi().unwrap(), i % p);
        }
    }
}

#[test]
fn mu_of_t_power_beyond_half_phi() {
    for &(p, n) in LEVEL_CASES.iter().filter(|c| c.0 != 2) {
        let ctx = PrimePowerCtx::make(p, n, None).unwrap();
        let half = ctx.phi / 2;
        for r in 1..half {
            let i = pow_mod(ctx.t, r + half, ctx.m);
            let lhs = CycInt::mu(p, n, i).unwrap();
            let rhs = CycInt::theta_pow(p, n, i as i64)
                .unwrap()
                .mul(&CycInt::mu(p, n, pow_mod(ctx.t, r, ctx.m)).unwrap())
                .neg();
            assert_eq!(lhs, rhs, "{p}^{n} r={r}");
        }
    }
}

#[test]
fn mu_of_minus_powers_of_three() {
    for &(p, n) in LEVEL_CASES.iter().filter(|c| c.0 == 2) {
        let m = 2u64.pow(n);
        for q in 0..m / 4 {
            let i = (m - 1) * pow_mod(3, q, m) % m;
            let lhs = CycInt::mu(p, n, i).unwrap();
            let rhs = CycInt::theta_pow(p, n, i as i64)
                .unwrap()
                .mul(&CycInt::mu(p, n, pow_mod(3, q, m)).unwrap())
                .neg();
            assert_eq!(lhs, rhs, "2^{n} q={q}");
        }
    }
}

#[test]
fn s1_and_s2_rewrite_into_each_other() {
    for &(p, n) in &LEVEL_CASES {
        let ctx = PrimePowerCtx::make(p, n, None).unwrap();
        let cyc = CycUnits::new(&ctx).unwrap();
        let s1 = cyc.members(SetName::S1).unwrap();
        let s2 = cyc.members(SetName::S2).unwrap();
        let off = usize::from(p != 2) + 1;
        let mu_t = &s2[off];
        assert_eq!(&s1[off], mu_t);
        for i in 2..=ctx.kappa as usize {
            let mu_ti = &s1[off + i - 1];
            let ratio = &s2[off + i - 1];
            // S2 element as an S1 word, and S1 element as an S2 word
            assert_eq!(&mu_t.pow(-(i as i64)).unwrap().mul(mu_ti), ratio, "{p}^{n} i={i}");
            assert_eq!(&mu_t.pow(i as i64).unwrap().mul(ratio), mu_ti, "{p}^{n} i={i}");
        }
    }
}

#[test]
fn u0_and_u_prime_rewrite_into_each_other() {
    for &(p, n) in &LEVEL_CASES {
        let ctx = PrimePowerCtx::make(p, n, None).unwrap();
        let cyc = CycUnits::new(&ctx).unwrap();
        let k = ctx.kappa;
        let h: Vec<CycInt> = (1..=k).map(|i| cyc.h(i)).collect();
        let ratio: Vec<CycInt> = (0..=k + 1).map(|i| cyc.mu_ratio(i)).collect();
        let mut prefix = CycInt::one(p, n).unwrap();
        for i in 2..=k + 1 {
            prefix = prefix.mul(&h[i as usize - 2]);
            assert_eq!(ratio[i as usize], prefix, "{p}^{n}: ratio {i} = h_1…h_{}", i - 1);
        }
        for i in 1..=k as usize {
            let inv = ratio[i].inverse().unwrap();
            assert_eq!(h[i - 1], ratio[i + 1].mul(&inv), "{p}^{n}: h_{i}");
        }
        if p == 2 {
            assert_eq!(ratio[k as usize + 1], cyc.mu_t().pow(-(k as i64 + 1)).unwrap());
        }
    }
}

#[test]
fn text_round_trip() {
    for (p, n) in [(3, 2), (2, 4), (5, 2)] {
        let ctx = PrimePowerCtx::make(p, n, None).unwrap();
        for u in CycUnits::new(&ctx).unwrap().members(SetName::U).unwrap() {
            assert_eq!(CycInt::parse_text(&u.to_text(), p, n).unwrap(), u);
        }
    }
}
