//! `F_p C_{p^j}` written in the basis `x^k`, `x = g − 1`, where it is the
//! truncated polynomial ring `F_p[x]/(x^{p^j})`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{factorize, inv_mod};
use crate::error::{Error, Result};
use crate::ring::GroupRingElem;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct XAdicElem {
    p: u64,
    terms: Vec<u64>,
}

fn pascal_mod(n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![0u64; n];
        row[0] = 1;
        for k in 1..=i {
            row[k] = (rows[i - 1][k - 1] + rows[i - 1][k]) % p;
        }
        rows.push(row);
    }
    rows
}

fn check_p_power(order: usize, p: u64) -> Result<()> {
    let f = factorize(order as u64);
    if order > 1 && !(f.len() == 1 && f[0].0 == p) {
        return Err(Error::NotPrimePower { m: order, p });
    }
    Ok(())
}

impl XAdicElem {
    pub fn new(p: u64, terms: Vec<u64>) -> Result<Self> {
        if !crate::arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        check_p_power(terms.len(), p)?;
        Ok(XAdicElem {
            p,
            terms: terms.into_iter().map(|t| t % p).collect(),
        })
    }

    pub fn one(p: u64, len: usize) -> Self {
        let mut terms = vec![0; len];
        terms[0] = 1;
        XAdicElem { p, terms }
    }

    pub fn from_group_ring(a: &GroupRingElem) -> Result<Self> {
        let p = a.characteristic();
        if p == 0 {
            return Err(Error::InvalidArgument(
                "x-adic expansion needs positive characteristic".into(),
            ));
        }
        let m = a.order();
        check_p_power(m, p)?;
        let c = pascal_mod(m, p);
        let coeffs: Vec<u64> = a.coeffs().iter().map(|v| v.to_u64().expect("reduced")).collect();
        let mut terms = vec![0u64; m];
        for (i, &ai) in coeffs.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for k in 0..=i {
                terms[k] = (terms[k] + ai * c[i][k]) % p;
            }
        }
        Ok(XAdicElem { p, terms })
    }

    pub fn to_group_ring(&self) -> GroupRingElem {
        let (p, m) = (self.p, self.terms.len());
        let c = pascal_mod(m, p);
        let mut coeffs = vec![0u64; m];
        for (k, &t) in self.terms.iter().enumerate() {
            if t == 0 {
                continue;
            }
            for i in 0..=k {
                let b = c[k][i];
                let v = if (k - i) % 2 == 0 { b } else { (p - b) % p };
                coeffs[i] = (coeffs[i] + t * v) % p;
            }
        }
        GroupRingElem::new(m, p, coeffs.into_iter().map(BigInt::from).collect())
            .expect("valid ring")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn is_one(&self) -> bool {
        self.terms[0] == 1 && self.terms[1..].iter().all(|&t| t == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!((self.p, self.len()), (other.p, other.len()));
        let (p, m) = (self.p as u128, self.len());
        let mut acc = vec![0u128; m];
        for (i, &a) in self.terms.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.terms[..m - i].iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        XAdicElem {
            p: self.p,
            terms: acc.into_iter().map(|v| v as u64).collect(),
        }
    }

    /// Power with a signed exponent; negative powers need a unit.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 {
            self.inverse().ok_or(Error::NotAUnit)?
        } else {
            self.clone()
        };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one(self.p, self.len());
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Inverse as a power series; a unit iff the constant term is nonzero.
    pub fn inverse(&self) -> Option<Self> {
        let p = self.p;
        let c0 = self.terms[0];
        let inv0 = inv_mod(c0 as i128, p)?;
        let m = self.len();
        let mut out = vec![0u64; m];
        out[0] = inv0;
        for k in 1..m {
            let mut s: u128 = 0;
            for i in 1..=k {
                s += self.terms[i] as u128 * out[k - i] as u128;
            }
            let s = (s % p as u128) as u64;
            out[k] = ((p - s) % p) * inv0 % p;
        }
        Some(XAdicElem { p, terms: out })
    }

    /// For `u = 1 + c x^d + O(x^{d+1})` with `c ≠ 0`, returns `(d, c)`;
    /// `None` for the identity or an element with constant term other than 1.
    pub fn leading(&self) -> Option<(usize, u64)> {
        if self.terms[0] != 1 {
            return None;
        }
        self.terms
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &t)| t != 0)
            .map(|(d, &c)| (d, c))
    }

    /// Multiplicative order of an element with constant term 1. Since
    /// `(1 + y)^p = 1 + y^p`, an element of leading degree `d` has order the
    /// least `p^s` with `d p^s ≥ p^j`.
    pub fn order(&self) -> Option<u64> {
        if self.terms[0] != 1 {
            return None;
        }
        let Some((d, _)) = self.leading() else {
            return Some(1);
        };
        let mut o = 1u64;
        let mut deg = d as u64;
        while deg < self.len() as u64 {
            deg *= self.p;
            o *= self.p;
        }
        Some(o)
    }

    pub fn to_text(&self) -> String {
        let c: Vec<BigInt> = self.terms.iter().map(|&t| BigInt::from(t)).collect();
        crate::text::format_terms(&c, "x")
    }
}

impl fmt::Display for XAdicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for XAdicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[F_{}, x^{}=0] {}", self.p, self.len(), self.to_text())
    }
}
