//! Scalar parameters of a case `C_{p^n}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, inv_mod, is_prime, multiplicative_order, smallest_primitive_root};
use crate::error::{Error, Result};

/// Largest `φ(p^n)` for which the cyclotomic units are known to generate.
pub const MAX_PHI: u64 = 66;

/// The `n ≥ 2` cases, by group order 9, 27, 81, 25, 49, 8, 16, 32, 64, 128.
pub const LEVEL_CASES: [(u64, u32); 10] = [
    (3, 2),
    (3, 3),
    (3, 4),
    (5, 2),
    (7, 2),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (2, 7),
];

/// Primes `5 ≤ p ≤ 67`, whose `n = 1` cases seed the base tables.
pub fn base_primes() -> Vec<u64> {
    (5..=67).filter(|&q| is_prime(q)).collect()
}

/// Every case the tool handles: the base primes at `n = 1`, then the level cases.
pub fn in_scope_cases() -> Vec<(u64, u32)> {
    let mut v: Vec<(u64, u32)> = base_primes().into_iter().map(|q| (q, 1)).collect();
    v.extend(LEVEL_CASES);
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePowerCtx {
    pub p: u64,
    pub n: u32,
    pub m: u64,
    pub phi: u64,
    pub t: u64,
    pub kappa: u64,
    pub r: u64,
    pub k: u64,
    /// `(-1)^p`.
    pub sign: i64,
}

impl PrimePowerCtx {
    /// Derive all parameters for `C_{p^n}` with generator `t` (validated).
    /// No scope restriction; used for intermediate levels and base cases.
    pub fn derive(p: u64, n: u32, t: Option<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("level n must be at least 1".into()));
        }
        let m = p
            .checked_pow(n)
            .filter(|&m| m <= 1 << 16)
            .ok_or_else(|| Error::InvalidArgument(format!("{p}^{n} is too large")))?;
        if m <= 4 {
            return Err(Error::TrivialCase { order: m });
        }
        let phi = euler_phi(m);
        let t = match t {
            Some(t) => {
                validate_t(p, n, m, phi, t)?;
                t
            }
            None if p == 2 => 3,
            None => smallest_primitive_root(p, n)?,
        };
        let r = inv_mod(t as i128, m).expect("t is a unit");
        let tr = t * r;
        debug_assert_eq!((tr - 1) % m, 0);
        Ok(PrimePowerCtx {
            p,
            n,
            m,
            phi,
            t,
            kappa: phi / 2 - 1,
            r,
            k: (tr - 1) / m,
            sign: if p == 2 { 1 } else { -1 },
        })
    }

    /// Context for a case inside the supported scope (`φ(p^n) ≤ 66`, nontrivial).
    pub fn make(p: u64, n: u32, t: Option<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("level n must be at least 1".into()));
        }
        if !p.checked_pow(n).is_some_and(|m| euler_phi(m) <= MAX_PHI) {
            return Err(Error::OutOfScope {
                p,
                n,
                reason: format!("φ({p}^{n}) exceeds {MAX_PHI}"),
            });
        }
        Self::derive(p, n, t)
    }

    /// `p^{n-1}`, the order of the quotient group `C_{p^{n-1}}`.
    pub fn prev_order(&self) -> u64 {
        self.m / self.p
    }

    /// Context of the level below, with the same `t` reduced.
    pub fn prev(&self) -> Result<Self> {
        if self.n < 2 {
            return Err(Error::InvalidArgument("level 1 has no predecessor".into()));
        }
        Self::derive(self.p, self.n - 1, Some(self.t % self.prev_order()))
    }

    /// `(base^{φ(p^{n-1})/2} − (−1)^p) / p^{n-1}` when integral.
    fn lambda_for(&self, base: u64) -> Option<BigInt> {
        let q = self.prev_order();
        if self.n < 2 {
            return None;
        }
        let half = euler_phi(q) / 2;
        let num = BigInt::from(base).pow(half as u32) - BigInt::from(self.sign);
        let (quot, rem) = num.div_rem(&BigInt::from(q));
        rem.is_zero().then_some(quot)
    }

    /// The integer `λ` of the unit `ϖ`; `None` when it is not integral.
    pub fn lambda(&self) -> Option<BigInt> {
        self.lambda_for(self.t)
    }

    /// Least positive inverse `s` of `t` modulo `p^{n-1}`.
    pub fn s(&self) -> u64 {
        let q = self.prev_order();
        if q == 1 {
            return 1;
        }
        inv_mod(self.t as i128, q).expect("t is a unit")
    }

    /// `λ′`, built from `s` as `λ` is from `t`.
    pub fn lambda_prime(&self) -> Option<BigInt> {
        self.lambda_for(self.s())
    }

    /// `φ(p^{n-1}) / 2`.
    pub fn half_prev_phi(&self) -> u64 {
        euler_phi(self.prev_order()) / 2
    }

    /// `(p^n − 2(n+1) + [p = 2] + 1) / 2`.
    pub fn higman_rank(&self) -> u64 {
        crate::independence::higman_rank(self.m, self.n as u64 + 1, u64::from(self.p == 2))
    }
}

fn validate_t(p: u64, n: u32, m: u64, phi: u64, t: u64) -> Result<()> {
    let bad = |why: &str| Err(Error::InvalidArgument(format!("t = {t} rejected: {why}")));
    if t < 2 || t >= m {
        return bad(&format!("must satisfy 2 ≤ t < {m}"));
    }
    let ord = multiplicative_order(t, m);
    if p == 2 {
        // generator of the cyclic factor of (Z/2^n)^× complementing ±1
        if n >= 3 && ord != Some(phi / 2) {
            return bad("order mod 2^n must be 2^{n-2}");
        }
        if ord.is_none() {
            return bad("must be odd");
        }
    } else if ord != Some(phi) {
        return bad(&format!("not a primitive root mod {m}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine() {
        let c = PrimePowerCtx::make(3, 2, None).unwrap();
        assert_eq!((c.t, c.kappa, c.r, c.k), (2, 2, 5, 1));
    }

    #[test]
    fn twenty_seven_lambda() {
        let c = PrimePowerCtx::make(3, 3, None).unwrap();
        assert_eq!(c.lambda(), Some(BigInt::from(1)));
        assert_eq!(c.s(), 5);
    }

    #[test]
    fn sixteen() {
        let c = PrimePowerCtx::make(2, 4, None).unwrap();
        assert_eq!((c.t, c.kappa), (3, 3));
        assert_eq!(c.lambda(), Some(BigInt::from(1)));
        // at level 8 the λ formula is not integral: (3 − 1)/4
        let c8 = PrimePowerCtx::make(2, 3, None).unwrap();
        assert_eq!(c8.lambda(), None);
    }

    #[test]
    fn scope() {
        assert!(matches!(
            PrimePowerCtx::make(11, 2, None),
            Err(Error::OutOfScope { .. })
        ));
        assert!(matches!(
            PrimePowerCtx::make(2, 2, None),
            Err(Error::TrivialCase { order: 4 })
        ));
        assert!(matches!(PrimePowerCtx::make(3, 1, None), Err(Error::TrivialCase { .. })));
        assert!(matches!(PrimePowerCtx::make(9, 1, None), Err(Error::NotPrime(9))));
        for (p, n) in in_scope_cases() {
            assert!(PrimePowerCtx::make(p, n, None).is_ok(), "{p} {n}");
        }
    }

    #[test]
    fn t_override() {
        assert_eq!(PrimePowerCtx::make(3, 2, Some(5)).unwrap().t, 5);
        assert!(PrimePowerCtx::make(3, 2, Some(4)).is_err());
        assert_eq!(PrimePowerCtx::make(2, 5, Some(5)).unwrap().t, 5);
        assert!(PrimePowerCtx::make(2, 5, Some(7)).is_err());
    }
}
