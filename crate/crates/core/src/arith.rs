//! Small-integer number theory: primality, totients, orders and primitive roots.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (q, _)| acc / q * (q - 1))
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Inverse of `a` modulo `m`, in `[0, m)`.
pub fn inv_mod(a: i128, m: u64) -> Option<u64> {
    let m_i = m as i128;
    let (mut old_r, mut r) = (a.rem_euclid(m_i), m_i);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m_i) as u64)
}

/// Multiplicative order of `a` modulo `m`, or `None` when `gcd(a, m) != 1`.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a % m, m) != 1 {
        return None;
    }
    let phi = euler_phi(m);
    let mut order = phi;
    for (q, _) in factorize(phi) {
        while order.is_multiple_of(q) && pow_mod(a, order / q, m) == 1 {
            order /= q;
        }
    }
    Some(order)
}

/// Smallest positive primitive root modulo `p^n` for an odd prime `p`.
pub fn smallest_primitive_root(p: u64, n: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let m = p.pow(n);
    let phi = euler_phi(m);
    (2..m.max(3))
        .find(|&c| multiplicative_order(c, m) == Some(phi))
        .ok_or_else(|| Error::InvalidArgument(format!("no primitive root modulo {m}")))
}

/// Number of cyclic subgroups of `C_m`, which is the number of divisors of `m`.
pub fn divisor_count(m: u64) -> u64 {
    factorize(m).iter().map(|&(_, e)| e as u64 + 1).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_totients() {
        assert!(is_prime(2) && is_prime(67) && !is_prime(1) && !is_prime(91));
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(128), 64);
        assert_eq!(euler_phi(49), 42);
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(2, 9), Some(6));
        assert_eq!(multiplicative_order(3, 16), Some(4));
        assert_eq!(multiplicative_order(3, 9), None);
        assert_eq!(smallest_primitive_root(3, 2).unwrap(), 2);
        assert_eq!(smallest_primitive_root(7, 2).unwrap(), 3);
        assert_eq!(smallest_primitive_root(5, 2).unwrap(), 2);
        assert!(smallest_primitive_root(9, 1).is_err());
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(2, 9), Some(5));
        assert_eq!(inv_mod(-1, 7), Some(6));
        assert_eq!(inv_mod(3, 9), None);
    }
}
