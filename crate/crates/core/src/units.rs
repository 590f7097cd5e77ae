//! The named unit families.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::pow_mod;
use crate::certificate::{CertKind, Certificate, Verdict, Witness};
use crate::context::PrimePowerCtx;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::ring::GroupRingElem;

/// A unit of either `ZC_m` / `F_p C_m` or `Z[θ]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Member {
    Group(GroupRingElem),
    Cyc(CycInt),
}

impl Member {
    pub fn to_text(&self) -> String {
        match self {
            Member::Group(g) => g.to_text("g"),
            Member::Cyc(c) => c.to_text(),
        }
    }

    pub fn inverse(&self) -> Option<Member> {
        match self {
            Member::Group(g) => g.inverse().map(Member::Group),
            Member::Cyc(c) => c.inverse().map(Member::Cyc),
        }
    }

    /// Whether `self · other = 1`; `false` for elements of different rings.
    pub fn product_is_one(&self, other: &Member) -> bool {
        match (self, other) {
            (Member::Group(a), Member::Group(b)) => a.checked_mul(b).is_ok_and(|x| x.is_one()),
            (Member::Cyc(a), Member::Cyc(b)) => a.checked_mul(b).is_ok_and(|x| x.is_one()),
            _ => false,
        }
    }
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Exact-inverse certificate: the inverse is stored so that a verifier only
/// has to multiply.
pub fn certify_unit(u: &Member) -> Certificate {
    match u.inverse() {
        Some(inv) => Certificate::new(
            CertKind::ExactInverse,
            vec![u.to_text()],
            Verdict::Unit,
            Witness::Inverse { inverse: inv },
        ),
        None => Certificate::new(
            CertKind::ExactInverse,
            vec![u.to_text()],
            Verdict::NotAUnit,
            Witness::None,
        ),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SetName {
    S1,
    S2,
    U,
    U0,
    Uprime,
    #[serde(rename = "S_hoechsmann")]
    SHoechsmann,
    #[serde(rename = "kernel_gens")]
    KernelGens,
}

impl SetName {
    pub const ALL: [SetName; 7] = [
        SetName::S1,
        SetName::S2,
        SetName::U,
        SetName::U0,
        SetName::Uprime,
        SetName::SHoechsmann,
        SetName::KernelGens,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SetName::S1 => "S1",
            SetName::S2 => "S2",
            SetName::U => "U",
            SetName::U0 => "U0",
            SetName::Uprime => "Uprime",
            SetName::SHoechsmann => "S_hoechsmann",
            SetName::KernelGens => "kernel_gens",
        }
    }
}

impl FromStr for SetName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SetName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownSet(s.to_string()))
    }
}

impl fmt::Display for SetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    pub p: u64,
    pub n: u32,
    pub t: u64,
    pub name: SetName,
    pub members: Vec<Member>,
    pub certs: Vec<Certificate>,
}

impl UnitSystem {
    fn certified(ctx: &PrimePowerCtx, name: SetName, members: Vec<Member>) -> Result<Self> {
        let certs: Vec<Certificate> = members.iter().map(certify_unit).collect();
        if let Some(i) = certs.iter().position(|c| !c.passed()) {
            return Err(Error::Internal(format!(
                "member {i} of {name} for {}^{} is not a unit",
                ctx.p, ctx.n
            )));
        }
        Ok(UnitSystem {
            p: ctx.p,
            n: ctx.n,
            t: ctx.t,
            name,
            members,
            certs,
        })
    }
}

/// Cyclotomic units of one context, sharing the inverse of `μ_t`.
pub struct CycUnits {
    ctx: PrimePowerCtx,
    mu_t_inv: CycInt,
}

impl CycUnits {
    pub fn new(ctx: &PrimePowerCtx) -> Result<Self> {
        let mu_t = CycInt::mu(ctx.p, ctx.n, ctx.t)?;
        let mu_t_inv = mu_t
            .inverse()
            .ok_or_else(|| Error::Internal(format!("μ_{} is not a unit", ctx.t)))?;
        Ok(CycUnits {
            ctx: ctx.clone(),
            mu_t_inv,
        })
    }

    fn t_pow(&self, i: u64) -> u64 {
        pow_mod(self.ctx.t, i, self.ctx.m)
    }

    pub fn theta(&self) -> CycInt {
        CycInt::theta_pow(self.ctx.p, self.ctx.n, 1).expect("valid ctx")
    }

    pub fn mu(&self, i: u64) -> CycInt {
        CycInt::mu(self.ctx.p, self.ctx.n, i).expect("valid ctx")
    }

    pub fn mu_t(&self) -> CycInt {
        self.mu(self.ctx.t)
    }

    pub fn mu_t_inv(&self) -> &CycInt {
        &self.mu_t_inv
    }

    /// `μ_{t^i}`, using that `μ_j` only depends on `j mod p^n`.
    pub fn mu_t_power(&self, i: u64) -> CycInt {
        self.mu(self.t_pow(i))
    }

    /// `μ_t^{-i} μ_{t^i}`.
    pub fn mu_ratio(&self, i: u64) -> CycInt {
        let inv_pow = self.mu_t_inv.pow(i as i64).expect("non-negative power");
        inv_pow.mul(&self.mu_t_power(i))
    }

    /// `ω_{q,s}`.
    pub fn omega(&self, q: u64, s: i64) -> CycInt {
        CycInt::omega(self.ctx.p, self.ctx.n, q, s).expect("valid ctx")
    }

    /// `h_i = ω_{t,1}^{-1} ω_{t,t^i}`; `ω_{t,1} = μ_t`.
    pub fn h(&self, i: u64) -> CycInt {
        self.mu_t_inv.mul(&self.omega(self.ctx.t, self.t_pow(i) as i64))
    }

    pub fn members(&self, name: SetName) -> Result<Vec<CycInt>> {
        let (p, n, kappa) = (self.ctx.p, self.ctx.n, self.ctx.kappa);
        let minus_one = || CycInt::from_i64s(p, n, &[-1]).expect("valid ctx");
        let odd = p != 2;
        let mut v = Vec::new();
        match name {
            SetName::S1 => {
                if odd {
                    v.push(minus_one());
                }
                v.push(self.theta());
                v.extend((1..=kappa).map(|i| self.mu_t_power(i)));
            }
            SetName::S2 => {
                if odd {
                    v.push(minus_one());
                }
                v.push(self.theta());
                v.push(self.mu_t());
                v.extend((2..=kappa).map(|i| self.mu_ratio(i)));
            }
            SetName::U => {
                v.push(self.theta());
                if odd {
                    v.push(self.mu_t().pow(((p - 1) / 2) as i64)?.neg());
                } else {
                    v.push(self.mu_t());
                }
                v.extend((2..=kappa).map(|i| self.mu_ratio(i)));
            }
            SetName::U0 => {
                v.push(self.theta());
                v.extend((1..=kappa).map(|i| self.h(i)));
            }
            SetName::Uprime => {
                v.push(self.theta());
                v.extend((2..=kappa + 1).map(|i| self.mu_ratio(i)));
            }
            SetName::SHoechsmann | SetName::KernelGens => {
                return Err(Error::InvalidArgument(format!("{name} is not a set of Z[θ]")));
            }
        }
        Ok(v)
    }
}

/// `ϑ_i = (Σ_{j<r} g^{jt})(Σ_{j<t} g^{j t^i}) − k ĝ` in `ZC_{p^n}`.
pub fn hoechsmann_unit(ctx: &PrimePowerCtx, i: u64) -> Result<GroupRingElem> {
    if i == 0 || i > ctx.kappa {
        return Err(Error::InvalidArgument(format!(
            "Hoechsmann index {i} outside 1..={}",
            ctx.kappa
        )));
    }
    let m = ctx.m as usize;
    let ti = pow_mod(ctx.t, i, ctx.m) as i64;
    let a = GroupRingElem::geometric(m, 0, ctx.t as i64, ctx.r);
    let b = GroupRingElem::geometric(m, 0, ti, ctx.t);
    let hat = GroupRingElem::hat(m, 0).scale(&BigInt::from(ctx.k));
    Ok(&(&a * &b) - &hat)
}

pub fn hoechsmann_units(ctx: &PrimePowerCtx) -> Result<Vec<GroupRingElem>> {
    (1..=ctx.kappa).map(|i| hoechsmann_unit(ctx, i)).collect()
}

/// The pair `(ϖ, ω)` in `ZC_{p^{n-1}}`:
/// `ϖ = (−1)^p (Σ_{j<t} h^j)^{φ(p^{n-1})/2} − (−1)^p λ ĥ` and `ω` the same
/// with `h^t`-steps up to `s − 1` and `λ′`.
pub fn varpi(ctx: &PrimePowerCtx) -> Result<(GroupRingElem, GroupRingElem)> {
    if ctx.n < 2 {
        return Err(Error::InvalidArgument("ϖ needs n ≥ 2".into()));
    }
    let q = ctx.prev_order() as usize;
    let half = ctx.half_prev_phi();
    let sign = BigInt::from(ctx.sign);
    let lambda = ctx
        .lambda()
        .ok_or_else(|| Error::Internal(format!("λ is not an integer for {}^{}", ctx.p, ctx.n)))?;
    let lambda_p = ctx
        .lambda_prime()
        .ok_or_else(|| Error::Internal(format!("λ′ is not an integer for {}^{}", ctx.p, ctx.n)))?;
    let hat = GroupRingElem::hat(q, 0);
    let build = |step: i64, count: u64, l: &BigInt| {
        let base = GroupRingElem::geometric(q, 0, step, count).pow_u(half);
        &base.scale(&sign) - &hat.scale(&(&sign * l))
    };
    let w = build(1, ctx.t, &lambda);
    let om = build(ctx.t as i64, ctx.s(), &lambda_p);
    Ok((w, om))
}

/// Build a named family with an exact-inverse certificate per member.
pub fn build_set(ctx: &PrimePowerCtx, name: SetName) -> Result<UnitSystem> {
    let members: Vec<Member> = match name {
        SetName::SHoechsmann => {
            let mut v = vec![Member::Group(GroupRingElem::group_element(ctx.m as usize, 0, 1))];
            v.extend(hoechsmann_units(ctx)?.into_iter().map(Member::Group));
            v
        }
        SetName::KernelGens => {
            let res = crate::kernel::Pipeline::new().assemble(ctx)?;
            res.kernel_part.into_iter().map(|k| Member::Group(k.w)).collect()
        }
        _ => CycUnits::new(ctx)?
            .members(name)?
            .into_iter()
            .map(Member::Cyc)
            .collect(),
    };
    UnitSystem::certified(ctx, name, members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, n: u32) -> PrimePowerCtx {
        PrimePowerCtx::make(p, n, None).unwrap()
    }

    #[test]
    fn example_one_units() {
        let c = ctx(3, 2);
        let t1 = hoechsmann_unit(&c, 1).unwrap();
        let t2 = hoechsmann_unit(&c, 2).unwrap();
        assert_eq!(t1.to_text("g"), "g^2 - g^3 + g^4 - g^5 + g^6 - g^7 + g^8");
        assert_eq!(t2.to_text("g"), "g^4 - g^5 + g^6 - g^7 + g^8");
        assert!(hoechsmann_unit(&c, 3).is_err());
    }

    #[test]
    fn set_sizes() {
        let c = ctx(3, 2);
        assert_eq!(build_set(&c, SetName::U0).unwrap().members.len(), 3);
        let c8 = ctx(2, 3);
        let s1 = build_set(&c8, SetName::S1).unwrap();
        assert_eq!(s1.members.len(), 2);
        assert_eq!(build_set(&c, SetName::SHoechsmann).unwrap().members.len(), 3);
    }

    #[test]
    fn varpi_inverse() {
        let (w, om) = varpi(&ctx(3, 3)).unwrap();
        assert!((&w * &om).is_one());
        assert!(varpi(&ctx(2, 3)).is_err());
    }

    #[test]
    fn set_names_parse() {
        for n in SetName::ALL {
            assert_eq!(n.as_str().parse::<SetName>().unwrap(), n);
        }
        assert!("S3".parse::<SetName>().is_err());
    }
}
