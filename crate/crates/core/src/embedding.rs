//! Logarithmic embedding of units of `Z[θ]` and numerical rank.
//!
//! Verdicts from here are numerical certificates: a rank is accepted only when
//! it is the same at the working precision and at twice that precision.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::gcd;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: usize = 128;
/// Relative pivot tolerance for the rank computation.
pub const RANK_TOLERANCE_EXP10: i32 = -20;

const RM: RoundingMode = RoundingMode::ToEven;
const GUARD_BITS: usize = 64;

/// One `log|σ_a(u)|` per conjugate pair `{a, -a}`.
#[derive(Clone, Debug)]
pub struct LogVector {
    pub entries: Vec<BigFloat>,
    pub precision: usize,
}

impl LogVector {
    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(big_to_f64).collect()
    }
}

/// Representatives `1 ≤ a < p^n/2` coprime to `p`, ascending.
pub fn conjugate_reps(m: u64) -> Vec<u64> {
    (1..m.div_ceil(2)).filter(|&a| 2 * a < m && gcd(a, m) == 1).collect()
}

fn to_big(x: &BigInt, prec: usize, cc: &mut Consts) -> BigFloat {
    match x.to_i64() {
        Some(v) => BigFloat::from_i64(v, prec),
        None => BigFloat::parse(&x.to_string(), astro_float::Radix::Dec, prec, RM, cc),
    }
}

pub(crate) fn big_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let s = format!("{x}");
    s.parse::<f64>().unwrap_or(f64::NAN)
}

/// Evaluation context: `cos`/`sin` of `2πk/m` at a fixed precision.
pub struct Embedder {
    m: u64,
    prec: usize,
    cos: Vec<BigFloat>,
    sin: Vec<BigFloat>,
    cc: Consts,
}

impl Embedder {
    pub fn new(m: u64, precision: usize) -> Result<Self> {
        if precision < 32 {
            return Err(Error::InvalidArgument(format!(
                "precision {precision} below the 32-bit minimum"
            )));
        }
        let mut cc = Consts::new().map_err(|e| Error::Internal(format!("{e:?}")))?;
        let prec = precision + GUARD_BITS;
        let two_pi = cc.pi(prec, RM).mul(&BigFloat::from_u64(2, prec), prec, RM);
        let step = two_pi.div(&BigFloat::from_u64(m, prec), prec, RM);
        let mut cos = Vec::with_capacity(m as usize);
        let mut sin = Vec::with_capacity(m as usize);
        for k in 0..m {
            let x = step.mul(&BigFloat::from_u64(k, prec), prec, RM);
            cos.push(x.cos(prec, RM, &mut cc));
            sin.push(x.sin(prec, RM, &mut cc));
        }
        Ok(Embedder { m, prec, cos, sin, cc })
    }

    pub fn precision(&self) -> usize {
        self.prec - GUARD_BITS
    }

    /// `ln|Σ c_j ζ^{a j}|` for integer coefficients `c_j` of powers of `ζ = e^{2πi/m}`.
    pub fn log_abs(&mut self, coeffs: &[BigInt], a: u64) -> Result<BigFloat> {
        let prec = self.prec;
        let mut re = BigFloat::from_u64(0, prec);
        let mut im = BigFloat::from_u64(0, prec);
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = ((j as u64 % self.m) * a % self.m) as usize;
            let cf = to_big(c, prec, &mut self.cc);
            re = re.add(&cf.mul(&self.cos[k], prec, RM), prec, RM);
            im = im.add(&cf.mul(&self.sin[k], prec, RM), prec, RM);
        }
        let norm2 = re.mul(&re, prec, RM).add(&im.mul(&im, prec, RM), prec, RM);
        if norm2.is_zero() {
            return Err(Error::NotAUnit);
        }
        let l = norm2.ln(prec, RM, &mut self.cc);
        Ok(l.div(&BigFloat::from_u64(2, prec), prec, RM))
    }

    pub fn log_vector(&mut self, u: &CycInt) -> Result<LogVector> {
        if u.order() != self.m {
            return Err(Error::ContextMismatch(format!(
                "embedder for m={} given element of Z[θ_{}]",
                self.m,
                u.order()
            )));
        }
        let reps = conjugate_reps(self.m);
        let entries = reps
            .into_iter()
            .map(|a| self.log_abs(u.coeffs(), a))
            .collect::<Result<Vec<_>>>()?;
        Ok(LogVector {
            entries,
            precision: self.precision(),
        })
    }
}

pub fn log_embedding(u: &CycInt, precision: usize) -> Result<LogVector> {
    Embedder::new(u.order(), precision)?.log_vector(u)
}

/// Numerical rank by Gaussian elimination with partial pivoting; pivots below
/// `10^-20` times the largest entry count as zero.
pub fn numeric_rank(rows: &[LogVector]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let prec = rows[0].precision + GUARD_BITS;
    let mut a: Vec<Vec<BigFloat>> = rows.iter().map(|r| r.entries.clone()).collect();
    let ncols = a[0].len();
    let abs = |x: &BigFloat| {
        let mut y = x.clone();
        y.set_sign(Sign::Pos);
        y
    };
    let scale = a
        .iter()
        .flatten()
        .map(abs)
        .fold(BigFloat::from_u64(0, prec), |m, x| if x > m { x } else { m });
    if scale.is_zero() {
        return 0;
    }
    let mut cc = Consts::new().expect("constants");
    let tol = BigFloat::parse(
        &format!("1e{RANK_TOLERANCE_EXP10}"),
        astro_float::Radix::Dec,
        prec,
        RM,
        &mut cc,
    )
    .mul(&scale, prec, RM);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == a.len() {
            break;
        }
        let (best, best_val) = (rank..a.len())
            .map(|r| (r, abs(&a[r][col])))
            .fold((rank, BigFloat::from_u64(0, prec)), |(br, bv), (r, v)| {
                if v > bv {
                    (r, v)
                } else {
                    (br, bv)
                }
            });
        if best_val <= tol {
            continue;
        }
        a.swap(rank, best);
        let pivot = a[rank][col].clone();
        for r in rank + 1..a.len() {
            let f = a[r][col].div(&pivot, prec, RM);
            if f.is_zero() {
                continue;
            }
            for c in col..ncols {
                let t = f.mul(&a[rank][c], prec, RM);
                a[r][c] = a[r][c].sub(&t, prec, RM);
            }
        }
        rank += 1;
    }
    rank
}

/// Rank at `precision` and at `2 * precision`; a disagreement is an error.
pub fn certified_rank(units: &[CycInt], precision: usize) -> Result<(usize, usize)> {
    let Some(first) = units.first() else {
        return Ok((0, 0));
    };
    let mut ranks = [0usize; 2];
    for (slot, prec) in [precision, 2 * precision].into_iter().enumerate() {
        let mut emb = Embedder::new(first.order(), prec)?;
        let rows = units
            .iter()
            .map(|u| emb.log_vector(u))
            .collect::<Result<Vec<_>>>()?;
        ranks[slot] = numeric_rank(&rows);
    }
    if ranks[0] != ranks[1] {
        return Err(Error::Precision {
            low: ranks[0],
            low_bits: precision,
            high: ranks[1],
            high_bits: 2 * precision,
        });
    }
    Ok((ranks[0], ranks[1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reps_for_nine() {
        assert_eq!(conjugate_reps(9), vec![1, 2, 4]);
        assert_eq!(conjugate_reps(8), vec![1, 3]);
        assert_eq!(conjugate_reps(5), vec![1, 2]);
    }

    #[test]
    fn roots_of_unity_vanish() {
        let th = CycInt::theta_pow(3, 2, 1).unwrap();
        let v = log_embedding(&th, 128).unwrap();
        assert!(v.to_f64().iter().all(|x| x.abs() < 1e-30));
    }

    #[test]
    fn golden_ratio_unit() {
        // for C_5, 1 + θ has |1 + ζ| = 2 cos(π/5) = golden ratio
        let u = CycInt::mu(5, 1, 2).unwrap();
        let v = log_embedding(&u, 128).unwrap().to_f64();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((v[0] - phi.ln()).abs() < 1e-12);
        assert!((v[0] + v[1]).abs() < 1e-12);
    }

    #[test]
    fn rank_detects_dependence() {
        let m2 = CycInt::mu(3, 2, 2).unwrap();
        let dep = m2.mul(&m2).mul(&CycInt::theta_pow(3, 2, 3).unwrap());
        assert_eq!(certified_rank(&[m2.clone(), dep], 128).unwrap(), (1, 1));
        let m4 = CycInt::mu(3, 2, 4).unwrap();
        assert_eq!(certified_rank(&[m2, m4], 128).unwrap(), (2, 2));
    }
}
