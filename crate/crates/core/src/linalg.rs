//! Exact linear algebra: dense solves modulo a prime, p-adic lifting of ring
//! inverses, and Hermite normal forms of integer lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The Mersenne prime `2^61 - 1`, used as the base of inverse lifting.
pub(crate) const LIFT_PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, q);
        }
        b = mul_mod(b, b, q);
        e >>= 1;
    }
    acc
}

/// Solve `matrix · x = rhs` over `F_q` for a prime `q`. Returns `None` when the
/// matrix is singular.
pub fn solve_mod_prime(mut matrix: Vec<Vec<u64>>, mut rhs: Vec<u64>, q: u64) -> Option<Vec<u64>> {
    let n = matrix.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !matrix[r][col].is_multiple_of(q))?;
        matrix.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = pow_mod(matrix[col][col], q - 2, q);
        for j in col..n {
            matrix[col][j] = mul_mod(matrix[col][j], inv, q);
        }
        rhs[col] = mul_mod(rhs[col], inv, q);
        for r in 0..n {
            if r == col || matrix[r][col] == 0 {
                continue;
            }
            let f = matrix[r][col];
            for j in col..n {
                let sub = mul_mod(f, matrix[col][j], q);
                matrix[r][j] = (matrix[r][j] + q - sub) % q;
            }
            let sub = mul_mod(f, rhs[col], q);
            rhs[r] = (rhs[r] + q - sub) % q;
        }
    }
    Some(rhs)
}

pub(crate) fn to_residue(x: &BigInt, q: u64) -> u64 {
    x.mod_floor(&BigInt::from(q)).to_u64().expect("residue fits in u64")
}

fn symmetric_residue(x: &BigInt, modulus: &BigInt) -> BigInt {
    let r = x.mod_floor(modulus);
    if &r * 2 > *modulus {
        r - modulus
    } else {
        r
    }
}

/// Exact inverse of a ring element `a` in a free Z-algebra of rank `cols.len()`.
///
/// `cols[j]` is the coordinate vector of `a · b_j` for the j-th basis element,
/// `one` the coordinates of the identity and `mul` the ring product. The inverse
/// modulo a large prime is lifted by Newton iteration `v ← v(2 − a v)`; after
/// every step the balanced residue is tested by exact multiplication. If the
/// modulus passes twice the Hadamard bound of the multiplication matrix
/// without a verified inverse, the determinant is not ±1 and `a` is not a unit.
pub(crate) fn lift_inverse(
    a: &[BigInt],
    cols: &[Vec<BigInt>],
    one: &[BigInt],
    mul: &dyn Fn(&[BigInt], &[BigInt]) -> Vec<BigInt>,
) -> Option<Vec<BigInt>> {
    let d = cols.len();
    let q = LIFT_PRIME;
    let matrix: Vec<Vec<u64>> = (0..d)
        .map(|i| (0..d).map(|j| to_residue(&cols[j][i], q)).collect())
        .collect();
    let rhs: Vec<u64> = one.iter().map(|x| to_residue(x, q)).collect();
    let v0 = solve_mod_prime(matrix, rhs, q)?;

    // Hadamard: |adj entries| <= prod ||col_j||, so 2^bound_bits dominates them.
    let bound_bits: u64 = cols
        .iter()
        .map(|c| {
            let n2: BigInt = c.iter().map(|x| x * x).sum();
            n2.bits().div_ceil(2)
        })
        .sum();

    let mut modulus = BigInt::from(q);
    let mut v: Vec<BigInt> = v0.into_iter().map(BigInt::from).collect();
    let two_one: Vec<BigInt> = one.iter().map(|x| x * 2).collect();
    loop {
        let balanced: Vec<BigInt> = v.iter().map(|x| symmetric_residue(x, &modulus)).collect();
        if mul(a, &balanced) == one {
            return Some(balanced);
        }
        if modulus.bits() > bound_bits + 2 {
            return None;
        }
        let next = &modulus * &modulus;
        let av = mul(a, &v);
        let r: Vec<BigInt> = two_one.iter().zip(&av).map(|(t, x)| t - x).collect();
        v = mul(&v, &r).iter().map(|x| x.mod_floor(&next)).collect();
        modulus = next;
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`, each of
/// length `ncols`. The result is upper echelon with positive pivots and the
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_normal_form(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(first) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, first);
        for i in r + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let a = m[r][col].clone();
            let b = m[i][col].clone();
            let ext = a.extended_gcd(&b);
            let (g, x, y) = (ext.gcd, ext.x, ext.y);
            let (ag, bg) = (&a / &g, &b / &g);
            let new_r: Vec<BigInt> = m[r].iter().zip(&m[i]).map(|(u, w)| &x * u + &y * w).collect();
            let new_i: Vec<BigInt> = m[r].iter().zip(&m[i]).map(|(u, w)| &bg * u - &ag * w).collect();
            m[r] = new_r;
            m[i] = new_i;
        }
        if m[r][col].is_negative() {
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot = m[r][col].clone();
        for k in 0..r {
            let f = m[k][col].div_floor(&pivot);
            if !f.is_zero() {
                let row_r = m[r].clone();
                for (x, y) in m[k].iter_mut().zip(&row_r) {
                    *x -= &f * y;
                }
            }
        }
        m.retain(|row| row.iter().any(|x| !x.is_zero()));
        r += 1;
    }
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    m
}

/// Column index of the first nonzero entry of an HNF row.
pub fn pivot_col(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// Membership of `v` in the lattice with Hermite basis `hnf`.
pub fn lattice_contains(hnf: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut v = v.to_vec();
    for row in hnf {
        let Some(c) = pivot_col(row) else { continue };
        let (quo, rem) = v[c].div_rem(&row[c]);
        if !rem.is_zero() {
            return false;
        }
        if !quo.is_zero() {
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &quo * y;
            }
        }
    }
    v.iter().all(Zero::is_zero)
}

/// Index of a full-rank lattice in `Z^n`: the product of the HNF pivots.
pub fn lattice_index(hnf: &[Vec<BigInt>]) -> BigInt {
    hnf.iter()
        .filter_map(|r| pivot_col(r).map(|c| r[c].clone()))
        .fold(BigInt::one(), |acc, d| acc * d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn solve_small_system() {
        // [[2,1],[1,1]] x = [3,2] over F_7 -> x = (1,1)
        let x = solve_mod_prime(vec![vec![2, 1], vec![1, 1]], vec![3, 2], 7).unwrap();
        assert_eq!(x, vec![1, 1]);
        assert!(solve_mod_prime(vec![vec![1, 2], vec![2, 4]], vec![1, 1], 7).is_none());
    }

    #[test]
    fn hnf_of_scaled_lattice() {
        let h = hermite_normal_form(&[big(&[3, 0]), big(&[3, 3])], 2);
        assert_eq!(h, vec![big(&[3, 0]), big(&[0, 3])]);
        assert_eq!(lattice_index(&h), BigInt::from(9));
        assert!(lattice_contains(&h, &big(&[6, -3])));
        assert!(!lattice_contains(&h, &big(&[1, 0])));
    }

    #[test]
    fn hnf_with_redundant_rows() {
        let h = hermite_normal_form(&[big(&[2, 4, 6]), big(&[1, 2, 3]), big(&[0, 0, 5]), big(&[0, 0, 0])], 3);
        assert_eq!(h, vec![big(&[1, 2, 3]), big(&[0, 0, 5])]);
    }
}
