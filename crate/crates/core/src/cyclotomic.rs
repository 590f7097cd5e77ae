//! The ring `Z[θ] = Z[x]/Φ_{p^n}(x)` and its cyclotomic units.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::linalg;

/// Coefficients of `Φ_{p^n}(x) = Σ_{j<p} x^{j p^{n-1}}`, lowest degree first.
pub fn cyclotomic_poly(p: u64, n: u32) -> Result<Vec<BigInt>> {
    check_params(p, n)?;
    let step = p.pow(n - 1) as usize;
    let mut c = vec![BigInt::zero(); (p as usize - 1) * step + 1];
    for j in 0..p as usize {
        c[j * step] = BigInt::one();
    }
    Ok(c)
}

fn check_params(p: u64, n: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("level n must be at least 1".into()));
    }
    match p.checked_pow(n) {
        Some(m) if m <= 1 << 16 => Ok(()),
        _ => Err(Error::InvalidArgument(format!("{p}^{n} is too large"))),
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCyc", into = "RawCyc")]
pub struct CycInt {
    p: u64,
    n: u32,
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCyc {
    p: u64,
    n: u32,
    #[serde(
        serialize_with = "crate::bigser::serialize_vec",
        deserialize_with = "crate::bigser::deserialize_vec"
    )]
    coeffs: Vec<BigInt>,
}

impl TryFrom<RawCyc> for CycInt {
    type Error = Error;
    fn try_from(raw: RawCyc) -> Result<Self> {
        check_params(raw.p, raw.n)?;
        let phi = ((raw.p - 1) * raw.p.pow(raw.n - 1)) as usize;
        if raw.coeffs.len() != phi {
            return Err(Error::Parse(format!(
                "expected {phi} coefficients, got {}",
                raw.coeffs.len()
            )));
        }
        CycInt::new(raw.p, raw.n, raw.coeffs)
    }
}

impl From<CycInt> for RawCyc {
    fn from(c: CycInt) -> Self {
        RawCyc {
            p: c.p,
            n: c.n,
            coeffs: c.coeffs,
        }
    }
}

impl CycInt {
    /// Reduce an arbitrary polynomial in `θ` (index = exponent) to canonical form.
    pub fn new(p: u64, n: u32, poly: Vec<BigInt>) -> Result<Self> {
        check_params(p, n)?;
        Ok(Self::reduce(p, n, poly))
    }

    fn reduce(p: u64, n: u32, poly: Vec<BigInt>) -> Self {
        let m = p.pow(n) as usize;
        let step = m / p as usize;
        let phi = m - step;
        let mut a = vec![BigInt::zero(); m];
        for (i, c) in poly.into_iter().enumerate() {
            if !c.is_zero() {
                a[i % m] += c;
            }
        }
        // θ^k = -Σ_{j=1}^{p-1} θ^{k - j p^{n-1}} for φ ≤ k < p^n
        for k in (phi..m).rev() {
            let c = std::mem::take(&mut a[k]);
            if c.is_zero() {
                continue;
            }
            for j in 1..p as usize {
                a[k - j * step] -= &c;
            }
        }
        a.truncate(phi);
        CycInt { p, n, coeffs: a }
    }

    pub fn from_i64s(p: u64, n: u32, poly: &[i64]) -> Result<Self> {
        Self::new(p, n, poly.iter().map(|&c| c.into()).collect())
    }

    pub fn zero(p: u64, n: u32) -> Result<Self> {
        Self::new(p, n, vec![])
    }

    pub fn one(p: u64, n: u32) -> Result<Self> {
        Self::new(p, n, vec![BigInt::one()])
    }

    /// `θ^e`, with `e` reduced mod `p^n` first.
    pub fn theta_pow(p: u64, n: u32, e: i64) -> Result<Self> {
        check_params(p, n)?;
        let m = p.pow(n) as i64;
        let mut v = vec![BigInt::zero(); m as usize];
        v[e.rem_euclid(m) as usize] = BigInt::one();
        Ok(Self::reduce(p, n, v))
    }

    /// `μ_i = 1 + θ + … + θ^{i-1}`.
    pub fn mu(p: u64, n: u32, i: u64) -> Result<Self> {
        if i == 0 {
            return Err(Error::InvalidArgument("μ_i needs i ≥ 1".into()));
        }
        Self::omega(p, n, i, 1)
    }

    /// `ω_{q,s} = 1 + θ^s + θ^{2s} + … + θ^{(q-1)s}`.
    pub fn omega(p: u64, n: u32, q: u64, s: i64) -> Result<Self> {
        check_params(p, n)?;
        if q == 0 {
            return Err(Error::InvalidArgument("ω_{q,s} needs q ≥ 1".into()));
        }
        let m = p.pow(n);
        let mut v = vec![BigInt::zero(); m as usize];
        // the exponents repeat with period dividing m, so count multiplicities
        let s = s.rem_euclid(m as i64) as u64;
        for j in 0..q.min(m) {
            let reps = (q - j).div_ceil(m);
            v[((j as u128 * s as u128) % m as u128) as usize] += reps;
        }
        Ok(Self::reduce(p, n, v))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn phi(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if (self.p, self.n) != (other.p, other.n) {
            return Err(Error::ContextMismatch(format!(
                "Z[θ] for {}^{} vs {}^{}",
                self.p, self.n, other.p, other.n
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycInt { coeffs: c, ..self.clone_shape() })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycInt { coeffs: c, ..self.clone_shape() })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self::reduce(self.p, self.n, poly_mul(&self.coeffs, &other.coeffs)))
    }

    fn clone_shape(&self) -> Self {
        CycInt {
            p: self.p,
            n: self.n,
            coeffs: Vec::new(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("operands share Z[θ]")
    }

    pub fn neg(&self) -> Self {
        CycInt {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            ..self.clone_shape()
        }
    }

    /// Signed power; negative exponents need a unit.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 {
            self.inverse().ok_or(Error::NotAUnit)?
        } else {
            self.clone()
        };
        let mut n = e.unsigned_abs();
        let mut acc = Self::reduce(self.p, self.n, vec![BigInt::one()]);
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

    /// Exact inverse, `None` for non-units.
    pub fn inverse(&self) -> Option<Self> {
        let (p, n) = (self.p, self.n);
        let phi = self.phi();
        let cols: Vec<Vec<BigInt>> = (0..phi)
            .map(|j| {
                let mut v = vec![BigInt::zero(); j];
                v.extend(self.coeffs.iter().cloned());
                Self::reduce(p, n, v).coeffs
            })
            .collect();
        let one = Self::reduce(p, n, vec![BigInt::one()]).coeffs;
        let mul = |a: &[BigInt], b: &[BigInt]| Self::reduce(p, n, poly_mul(a, b)).coeffs;
        linalg::lift_inverse(&self.coeffs, &cols, &one, &mul).map(|coeffs| CycInt { p, n, coeffs })
    }

    /// `ψ(θ) = 1` into `Z/p`: the coefficient sum mod `p`, for odd `p`.
    pub fn psi(&self) -> Result<u64> {
        if self.p == 2 {
            return Err(Error::OutOfScope {
                p: 2,
                n: self.n,
                reason: "ψ is only used for odd p".into(),
            });
        }
        let s: BigInt = self.coeffs.iter().sum();
        Ok(crate::linalg::to_residue(&s, self.p))
    }

    /// `σ_a(u)`: substitute `θ ↦ θ^a`.
    pub fn galois(&self, a: u64) -> Self {
        let m = self.order();
        let mut v = vec![BigInt::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[((i as u64 * a) % m) as usize] += c;
        }
        Self::reduce(self.p, self.n, v)
    }

    pub fn to_text(&self) -> String {
        crate::text::format_terms(&self.coeffs, "θ")
    }

    pub fn parse_text(s: &str, p: u64, n: u32) -> Result<Self> {
        check_params(p, n)?;
        let m = p.pow(n);
        let terms = crate::text::parse_terms(s, &["θ", "theta"])?;
        let mut v = vec![BigInt::zero(); m as usize];
        for (c, e) in terms {
            v[(e % m) as usize] += c;
        }
        Ok(Self::reduce(p, n, v))
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Smallest non-negative residue of `x` mod `m` as `u64`.
pub(crate) fn residue(x: &BigInt, m: u64) -> u64 {
    use num_traits::ToPrimitive;
    x.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[Z[θ_{}]] {}", self.order(), self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let c = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_poly(3, 2).unwrap(), c(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(cyclotomic_poly(2, 3).unwrap(), c(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_poly(5, 1).unwrap(), c(&[1, 1, 1, 1, 1]));
        assert!(cyclotomic_poly(4, 1).is_err());
    }

    #[test]
    fn reduction_kills_phi() {
        let phi = cyclotomic_poly(3, 2).unwrap();
        assert!(CycInt::new(3, 2, phi).unwrap().coeffs().iter().all(Zero::is_zero));
        let t9 = CycInt::theta_pow(3, 2, 9).unwrap();
        assert!(t9.is_one());
    }

    #[test]
    fn mu_values() {
        assert!(CycInt::mu(3, 2, 1).unwrap().is_one());
        let m8 = CycInt::mu(3, 2, 8).unwrap();
        assert_eq!(m8, CycInt::theta_pow(3, 2, 8).unwrap().neg());
        assert_eq!(CycInt::omega(3, 2, 2, 1).unwrap(), CycInt::mu(3, 2, 2).unwrap());
    }

    #[test]
    fn inverses() {
        let th = CycInt::theta_pow(3, 2, 1).unwrap();
        assert_eq!(th.inverse().unwrap(), CycInt::theta_pow(3, 2, 8).unwrap());
        assert!(CycInt::mu(3, 2, 3).unwrap().inverse().is_none());
        let m2 = CycInt::mu(3, 2, 2).unwrap();
        assert!(m2.mul(&m2.inverse().unwrap()).is_one());
    }

    #[test]
    fn psi_values() {
        for i in 1..20 {
            assert_eq!(CycInt::mu(5, 2, i).unwrap().psi().unwrap(), i % 5);
        }
        assert!(CycInt::one(2, 3).unwrap().psi().is_err());
    }
}
