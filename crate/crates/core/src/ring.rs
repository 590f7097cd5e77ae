//! Dense elements of the group rings `ZC_m` and `F_p C_m`.
//!
//! Index `i` of the coefficient vector holds the coefficient of `g^i`. Integer
//! coefficients are arbitrary precision; mod-p coefficients are kept in
//! `[0, p)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::linalg::{self, hermite_normal_form, lattice_contains};
use crate::xadic::XAdicElem;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawElem", into = "RawElem")]
pub struct GroupRingElem {
    order: usize,
    characteristic: u64,
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElem {
    m: usize,
    #[serde(rename = "char")]
    characteristic: u64,
    #[serde(
        serialize_with = "crate::bigser::serialize_vec",
        deserialize_with = "crate::bigser::deserialize_vec"
    )]
    coeffs: Vec<BigInt>,
}

impl TryFrom<RawElem> for GroupRingElem {
    type Error = Error;
    fn try_from(raw: RawElem) -> Result<Self> {
        if raw.characteristic != 0 && raw.coeffs.iter().any(|c| c.is_negative() || *c >= BigInt::from(raw.characteristic)) {
            return Err(Error::Parse(format!(
                "coefficients must lie in [0, {}) for characteristic {}",
                raw.characteristic, raw.characteristic
            )));
        }
        GroupRingElem::new(raw.m, raw.characteristic, raw.coeffs)
    }
}

impl From<GroupRingElem> for RawElem {
    fn from(e: GroupRingElem) -> Self {
        RawElem {
            m: e.order,
            characteristic: e.characteristic,
            coeffs: e.coeffs,
        }
    }
}

fn check_ring(order: usize, characteristic: u64) -> Result<()> {
    if order == 0 {
        return Err(Error::InvalidArgument("group order must be positive".into()));
    }
    if order > 1 << 16 {
        return Err(Error::InvalidArgument(format!("group order {order} is too large")));
    }
    if characteristic != 0 && !is_prime(characteristic) {
        return Err(Error::NotPrime(characteristic));
    }
    Ok(())
}

impl GroupRingElem {
    pub fn new(order: usize, characteristic: u64, coeffs: Vec<BigInt>) -> Result<Self> {
        check_ring(order, characteristic)?;
        if coeffs.len() != order {
            return Err(Error::InvalidArgument(format!(
                "expected {order} coefficients, got {}",
                coeffs.len()
            )));
        }
        let mut e = GroupRingElem {
            order,
            characteristic,
            coeffs,
        };
        e.normalize();
        Ok(e)
    }

    pub fn from_i64s(order: usize, characteristic: u64, coeffs: &[i64]) -> Result<Self> {
        Self::new(order, characteristic, coeffs.iter().map(|&c| c.into()).collect())
    }

    /// Build from `(coefficient, exponent)` terms; exponents are reduced mod the order.
    pub fn from_terms(order: usize, characteristic: u64, terms: &[(BigInt, i64)]) -> Result<Self> {
        check_ring(order, characteristic)?;
        let mut coeffs = vec![BigInt::zero(); order];
        for (c, e) in terms {
            coeffs[e.rem_euclid(order as i64) as usize] += c;
        }
        Self::new(order, characteristic, coeffs)
    }

    fn normalize(&mut self) {
        if self.characteristic != 0 {
            let p = BigInt::from(self.characteristic);
            for c in self.coeffs.iter_mut() {
                *c = c.mod_floor(&p);
            }
        }
    }

    pub fn zero(order: usize, characteristic: u64) -> Self {
        GroupRingElem {
            order,
            characteristic,
            coeffs: vec![BigInt::zero(); order],
        }
    }

    pub fn one(order: usize, characteristic: u64) -> Self {
        Self::group_element(order, characteristic, 0)
    }

    /// The group element `g^k`.
    pub fn group_element(order: usize, characteristic: u64, k: i64) -> Self {
        let mut e = Self::zero(order, characteristic);
        e.coeffs[k.rem_euclid(order as i64) as usize] = BigInt::one();
        e
    }

    /// The sum of all group elements, written `ĝ`.
    pub fn hat(order: usize, characteristic: u64) -> Self {
        GroupRingElem {
            order,
            characteristic,
            coeffs: vec![BigInt::one(); order],
        }
    }

    /// `1 + g^step + g^{2 step} + ... + g^{(count-1) step}`.
    pub fn geometric(order: usize, characteristic: u64, step: i64, count: u64) -> Self {
        let mut e = Self::zero(order, characteristic);
        for j in 0..count as i64 {
            let idx = (j * step).rem_euclid(order as i64) as usize;
            e.coeffs[idx] += 1;
        }
        e.normalize();
        e
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.order != other.order || self.characteristic != other.characteristic {
            return Err(Error::ContextMismatch(format!(
                "(m={}, char={}) vs (m={}, char={})",
                self.order, self.characteristic, other.order, other.characteristic
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        let mut e = self.with_coeffs(coeffs);
        e.normalize();
        Ok(e)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        let mut e = self.with_coeffs(coeffs);
        e.normalize();
        Ok(e)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut e = self.with_coeffs(cyclic_convolution(&self.coeffs, &other.coeffs));
        e.normalize();
        Ok(e)
    }

    fn with_coeffs(&self, coeffs: Vec<BigInt>) -> Self {
        GroupRingElem {
            order: self.order,
            characteristic: self.characteristic,
            coeffs,
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut e = self.with_coeffs(self.coeffs.iter().map(|c| c * k).collect());
        e.normalize();
        e
    }

    /// Multiply by the group element `g^k`, a cyclic shift of the coefficients.
    pub fn shift(&self, k: i64) -> Self {
        let m = self.order as i64;
        let mut coeffs = vec![BigInt::zero(); self.order];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(i as i64 + k).rem_euclid(m) as usize] = c.clone();
        }
        self.with_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// `a^e` by repeated squaring; negative exponents require a unit.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 {
            self.inverse().ok_or(Error::NotAUnit)?
        } else {
            self.clone()
        };
        Ok(base.pow_u(e.unsigned_abs()))
    }

    pub fn pow_u(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.order, self.characteristic);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// The involution `g ↦ g^{-1}` extended linearly.
    pub fn involution(&self) -> Self {
        let m = self.order;
        let mut coeffs = vec![BigInt::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(m - i) % m] = c.clone();
        }
        self.with_coeffs(coeffs)
    }

    /// Sum of the coefficients, reduced mod p in positive characteristic.
    pub fn augmentation(&self) -> BigInt {
        let s: BigInt = self.coeffs.iter().sum();
        if self.characteristic == 0 {
            s
        } else {
            s.mod_floor(&BigInt::from(self.characteristic))
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.involution() == *self
    }

    pub fn is_normalized(&self) -> bool {
        self.augmentation().is_one()
    }

    /// Whether `a − 1` lies in the square of the augmentation ideal.
    ///
    /// In characteristic zero membership is decided against the Hermite basis
    /// of the lattice spanned by `(g − 1)^2 g^k`; in characteristic `p` (for
    /// a p-group) through the x-adic expansion, where the ideal is `(x^2)`.
    pub fn is_u2(&self) -> bool {
        if self.characteristic == 0 {
            AugmentationSquare::new(self.order).contains_shifted(self)
        } else {
            match self.to_x_basis() {
                Ok(x) => x.terms()[0] == 1 && x.terms().get(1).is_none_or(|&t| t == 0),
                Err(_) => false,
            }
        }
    }

    /// The class of a normalized element in `ΔG/ΔG^2 ≅ C_m`: the exponent `e`
    /// with `a − 1 ≡ g^e − 1`, computed as `Σ i·a_i mod m`.
    pub fn group_component(&self) -> usize {
        let m = BigInt::from(self.order);
        let s: BigInt = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigInt::from(i))
            .sum();
        s.mod_floor(&m).to_usize().expect("fits")
    }

    /// Split a normalized unit as `g^e · u'` with `u'` in `U_2`, which is the
    /// symmetric part when the group order is odd.
    pub fn split_group_part(&self) -> (usize, Self) {
        let e = self.group_component();
        (e, self.shift(-(e as i64)))
    }

    /// Exact inverse, or `None` when the element is not a unit.
    pub fn inverse(&self) -> Option<Self> {
        if self.characteristic == 0 {
            self.inverse_integral()
        } else {
            self.inverse_mod_p()
        }
    }

    fn inverse_integral(&self) -> Option<Self> {
        // A unit of ZG has augmentation ±1.
        if self.augmentation().abs() != BigInt::one() {
            return None;
        }
        let m = self.order;
        let cols: Vec<Vec<BigInt>> = (0..m).map(|j| self.shift(j as i64).coeffs).collect();
        let one = Self::one(m, 0).coeffs;
        let mul = |a: &[BigInt], b: &[BigInt]| cyclic_convolution(a, b);
        linalg::lift_inverse(&self.coeffs, &cols, &one, &mul).map(|coeffs| GroupRingElem {
            order: m,
            characteristic: 0,
            coeffs,
        })
    }

    fn inverse_mod_p(&self) -> Option<Self> {
        let m = self.order;
        let p = self.characteristic;
        let a: Vec<u64> = self.coeffs.iter().map(|c| c.to_u64().expect("reduced")).collect();
        // circulant: (a b)_i = Σ_j a_{i-j} b_j
        let matrix: Vec<Vec<u64>> = (0..m)
            .map(|i| (0..m).map(|j| a[(i + m - j) % m]).collect())
            .collect();
        let mut rhs = vec![0u64; m];
        rhs[0] = 1;
        let x = linalg::solve_mod_prime(matrix, rhs, p)?;
        Some(GroupRingElem {
            order: m,
            characteristic: p,
            coeffs: x.into_iter().map(BigInt::from).collect(),
        })
    }

    /// Coefficientwise reduction into `F_p C_m`.
    pub fn reduce_mod(&self, p: u64) -> Result<Self> {
        if self.characteristic != 0 && self.characteristic != p {
            return Err(Error::ContextMismatch(format!(
                "cannot reduce characteristic {} mod {p}",
                self.characteristic
            )));
        }
        GroupRingElem::new(self.order, p, self.coeffs.clone())
    }

    /// Change to the basis `x^i`, `x = g − 1`, for `m` a power of the characteristic.
    pub fn to_x_basis(&self) -> Result<XAdicElem> {
        XAdicElem::from_group_ring(self)
    }

    /// Canonical text with the given generator symbol.
    pub fn to_text(&self, symbol: &str) -> String {
        crate::text::format_terms(&self.coeffs, symbol)
    }

    pub fn parse_text(s: &str, order: usize, characteristic: u64) -> Result<Self> {
        let terms = crate::text::parse_terms(s, &["g", "h"])?;
        let terms: Vec<(BigInt, i64)> = terms
            .into_iter()
            .map(|(c, e)| {
                i64::try_from(e)
                    .map(|e| (c, e))
                    .map_err(|_| Error::Parse("exponent too large".into()))
            })
            .collect::<Result<_>>()?;
        Self::from_terms(order, characteristic, &terms)
    }
}

pub(crate) fn cyclic_convolution(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let m = a.len();
    let mut out = vec![BigInt::zero(); m];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let k = if i + j >= m { i + j - m } else { i + j };
            out[k] += x * y;
        }
    }
    out
}

/// The lattice `(ΔG)^2 ⊂ ZC_m` in Hermite form, spanned by `(g − 1)^2 g^k`.
pub struct AugmentationSquare {
    order: usize,
    basis: Vec<Vec<BigInt>>,
}

impl AugmentationSquare {
    pub fn new(order: usize) -> Self {
        let sq = GroupRingElem::from_terms(
            order,
            0,
            &[(BigInt::one(), 2), (BigInt::from(-2), 1), (BigInt::one(), 0)],
        )
        .expect("valid order");
        let rows: Vec<Vec<BigInt>> = (0..order).map(|k| sq.shift(k as i64).coeffs).collect();
        AugmentationSquare {
            order,
            basis: hermite_normal_form(&rows, order),
        }
    }

    pub fn contains(&self, a: &GroupRingElem) -> bool {
        a.order == self.order && a.characteristic == 0 && lattice_contains(&self.basis, &a.coeffs)
    }

    /// Whether `a − 1` lies in the lattice.
    pub fn contains_shifted(&self, a: &GroupRingElem) -> bool {
        let d = a - &GroupRingElem::one(a.order, 0);
        self.contains(&d)
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("g"))
    }
}

impl fmt::Debug for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[m={} char={}] {}", self.order, self.characteristic, self)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&GroupRingElem> for &GroupRingElem {
            type Output = GroupRingElem;
            /// Panics when the operands live in different rings; use the
            /// `checked_*` variant to get an error instead.
            fn $method(self, rhs: &GroupRingElem) -> GroupRingElem {
                self.$checked(rhs).expect("group ring operands must share (m, char)")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &GroupRingElem {
    type Output = GroupRingElem;
    fn neg(self) -> GroupRingElem {
        self.scale(&BigInt::from(-1))
    }
}
