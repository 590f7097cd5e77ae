//! The maps between `ZC_{p^n}`, `Z[θ]`, `ZC_{p^{n-1}}` and `F_p C_{p^{n-1}}`:
//!
//! ```text
//!   ZC_{p^n} --π₁--> Z[θ]
//!      |π₂            |f₂
//!   ZC_{p^{n-1}} --f₁--> F_p C_{p^{n-1}}
//! ```

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::context::PrimePowerCtx;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::ring::GroupRingElem;

fn expect_integral(a: &GroupRingElem, order: u64, what: &str) -> Result<()> {
    if a.order() as u64 != order || a.characteristic() != 0 {
        return Err(Error::ContextMismatch(format!(
            "{what} expects ZC_{order}, got m={} char={}",
            a.order(),
            a.characteristic()
        )));
    }
    Ok(())
}

/// `g ↦ θ`.
pub fn pi1(ctx: &PrimePowerCtx, a: &GroupRingElem) -> Result<CycInt> {
    expect_integral(a, ctx.m, "π₁")?;
    CycInt::new(ctx.p, ctx.n, a.coeffs().to_vec())
}

/// `g ↦ h`, the projection `ZC_{p^n} → ZC_{p^{n-1}}`.
pub fn pi2(ctx: &PrimePowerCtx, a: &GroupRingElem) -> Result<GroupRingElem> {
    if ctx.n < 2 {
        return Err(Error::InvalidArgument("π₂ needs n ≥ 2".into()));
    }
    expect_integral(a, ctx.m, "π₂")?;
    let q = ctx.prev_order() as usize;
    let mut c = vec![BigInt::zero(); q];
    for (i, x) in a.coeffs().iter().enumerate() {
        c[i % q] += x;
    }
    GroupRingElem::new(q, 0, c)
}

/// Reduction of coefficients mod `p` on `ZC_{p^{n-1}}`.
pub fn f1(ctx: &PrimePowerCtx, a: &GroupRingElem) -> Result<GroupRingElem> {
    expect_integral(a, ctx.prev_order(), "f₁")?;
    a.reduce_mod(ctx.p)
}

/// `θ ↦ h` with coefficients mod `p`; well defined because `Φ_{p^n}(h) = p`.
pub fn f2(ctx: &PrimePowerCtx, u: &CycInt) -> Result<GroupRingElem> {
    if (u.p(), u.n()) != (ctx.p, ctx.n) {
        return Err(Error::ContextMismatch(format!(
            "f₂ expects Z[θ_{}], got Z[θ_{}]",
            ctx.m,
            u.order()
        )));
    }
    if ctx.n < 2 {
        return Err(Error::InvalidArgument("f₂ needs n ≥ 2".into()));
    }
    let q = ctx.prev_order() as usize;
    let mut c = vec![BigInt::zero(); q];
    for (i, x) in u.coeffs().iter().enumerate() {
        c[i % q] += x;
    }
    GroupRingElem::new(q, ctx.p, c)
}

/// `1 + Σ_{i<p^{n-1}} a_i g^i · N`, where `N = Σ_{j<p} g^{j p^{n-1}}`
/// generates the ideal `ker π₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelElem {
    pub p: u64,
    pub n: u32,
    #[serde(
        serialize_with = "crate::bigser::serialize_vec",
        deserialize_with = "crate::bigser::deserialize_vec"
    )]
    pub a: Vec<BigInt>,
}

impl KernelElem {
    pub fn to_group_ring(&self) -> GroupRingElem {
        let q = self.a.len();
        let m = q * self.p as usize;
        let mut c = vec![BigInt::zero(); m];
        for (i, x) in c.iter_mut().enumerate() {
            *x = self.a[i % q].clone();
        }
        c[0] += 1;
        GroupRingElem::new(m, 0, c).expect("valid ring")
    }
}

/// Recover `a` when `w − 1` lies in the ideal generated by `N`, i.e. when
/// its coefficients are periodic with period `p^{n-1}`; `None` otherwise.
pub fn ker_pi1_parametrize(ctx: &PrimePowerCtx, w: &GroupRingElem) -> Result<Option<KernelElem>> {
    expect_integral(w, ctx.m, "ker π₁")?;
    if ctx.n < 2 {
        return Err(Error::InvalidArgument("ker π₁ parametrization needs n ≥ 2".into()));
    }
    let q = ctx.prev_order() as usize;
    let mut c = w.coeffs().to_vec();
    c[0] -= 1;
    if (q..c.len()).any(|i| c[i] != c[i - q]) {
        return Ok(None);
    }
    c.truncate(q);
    Ok(Some(KernelElem {
        p: ctx.p,
        n: ctx.n,
        a: c,
    }))
}

/// For `v ≡ 1 (mod p)` in `ZC_{p^{n-1}}`, the kernel element `w` with
/// `π₂(w) = v`: `a = (v − 1)/p`.
pub fn lift_to_kernel(ctx: &PrimePowerCtx, v: &GroupRingElem) -> Result<KernelElem> {
    expect_integral(v, ctx.prev_order(), "kernel lift")?;
    let p = BigInt::from(ctx.p);
    let mut a = Vec::with_capacity(v.order());
    for (i, c) in v.coeffs().iter().enumerate() {
        let c = if i == 0 { c - BigInt::one() } else { c.clone() };
        let (q, r) = c.div_rem(&p);
        if !r.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "coefficient {i} of v − 1 is not divisible by {}",
                ctx.p
            )));
        }
        a.push(q);
    }
    Ok(KernelElem {
        p: ctx.p,
        n: ctx.n,
        a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, n: u32) -> PrimePowerCtx {
        PrimePowerCtx::make(p, n, None).unwrap()
    }

    #[test]
    fn pi1_of_period_sum_vanishes() {
        let c = ctx(3, 3);
        let n = GroupRingElem::geometric(27, 0, 9, 3);
        let any = GroupRingElem::from_i64s(27, 0, &[2, -1, 4, 0, 0, 7, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3, 0, 0, 1]).unwrap();
        assert!(pi1(&c, &(&n * &any)).unwrap().coeffs().iter().all(Zero::is_zero));
        let g = GroupRingElem::group_element(27, 0, 1);
        assert_eq!(pi1(&c, &g).unwrap(), CycInt::theta_pow(3, 3, 1).unwrap());
    }

    #[test]
    fn pi2_folds() {
        let c = ctx(3, 3);
        assert!(pi2(&c, &GroupRingElem::group_element(27, 0, 9)).unwrap().is_one());
        assert!(pi2(&ctx(5, 1), &GroupRingElem::one(5, 0)).is_err());
    }

    #[test]
    fn kernel_round_trip() {
        let c = ctx(3, 3);
        let k = KernelElem {
            p: 3,
            n: 3,
            a: [-12, 11, -9, 6, -2, -2, 6, -9, 11].iter().map(|&x| BigInt::from(x)).collect(),
        };
        let w = k.to_group_ring();
        assert!(pi1(&c, &w).unwrap().is_one());
        assert_eq!(ker_pi1_parametrize(&c, &w).unwrap(), Some(k.clone()));
        let v = pi2(&c, &w).unwrap();
        assert_eq!(lift_to_kernel(&c, &v).unwrap(), k);
        let one = GroupRingElem::one(27, 0);
        assert!(ker_pi1_parametrize(&c, &one).unwrap().unwrap().a.iter().all(Zero::is_zero));
        let g = GroupRingElem::group_element(27, 0, 1);
        assert_eq!(ker_pi1_parametrize(&c, &g).unwrap(), None);
    }

    #[test]
    fn f1_of_congruent_to_one() {
        let c = ctx(3, 3);
        let nine = GroupRingElem::from_i64s(9, 0, &[10, 9, -18, 0, 0, 0, 0, 0, 27]).unwrap();
        assert!(f1(&c, &nine).unwrap().is_one());
    }
}
