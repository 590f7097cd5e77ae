//! Multiplicative independence: exactly in `U_1(F_p C_{p^j})`, numerically in
//! the free part of `U(Z[θ])`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::certificate::{CertKind, Certificate, Verdict, Witness};
use crate::cyclotomic::CycInt;
use crate::embedding::{big_to_f64, Embedder};
use crate::error::{Error, Result};
use crate::linalg::{hermite_normal_form, lattice_index};
use crate::ring::GroupRingElem;
use crate::xadic::XAdicElem;

/// `(|G_0| − 2l + m + 1) / 2` for a finite abelian group of order `|G_0|` with
/// `l` cyclic subgroups and `m` elements of order 2.
pub fn higman_rank(order: u64, num_cyclic: u64, num_order2: u64) -> u64 {
    (order + num_order2 + 1 - 2 * num_cyclic) / 2
}

/// Split a positive degree as `p^i · q` with `p ∤ q`.
pub fn p_split(d: usize, p: u64) -> (u32, usize) {
    let (mut i, mut q) = (0, d);
    while q % p as usize == 0 {
        q /= p as usize;
        i += 1;
    }
    (i, q)
}

fn check_inputs(us: &[XAdicElem]) -> Result<()> {
    let Some(first) = us.first() else {
        return Ok(());
    };
    for u in us {
        if (u.p(), u.len()) != (first.p(), first.len()) {
            return Err(Error::ContextMismatch("inputs from different ambients".into()));
        }
        if u.terms()[0] != 1 {
            return Err(Error::InvalidArgument(format!(
                "{} is not in U_1 (constant term must be 1)",
                u.to_text()
            )));
        }
        if u.is_one() {
            return Err(Error::IdentityInput);
        }
    }
    Ok(())
}

fn texts(us: &[XAdicElem]) -> Vec<String> {
    us.iter().map(|u| u.to_text()).collect()
}

/// The leading-term criterion: elements `1 + a x^{p^i q} + …` whose `q`-parts
/// are pairwise distinct are independent. Returns an indeterminate verdict
/// when two `q`-parts coincide.
pub fn leading_term_independent(us: &[XAdicElem]) -> Result<Certificate> {
    check_inputs(us)?;
    let mut seen = HashSet::new();
    let distinct = us.iter().all(|u| {
        let (d, _) = u.leading().expect("checked non-identity");
        seen.insert(p_split(d, u.p()).1)
    });
    let cert = if distinct {
        let orders: Vec<u64> = us.iter().map(|u| u.order().expect("in U_1")).collect();
        let group_order = orders.iter().map(|&o| BigInt::from(o)).product();
        Certificate::new(
            CertKind::LeadingTerm,
            texts(us),
            Verdict::Independent,
            Witness::Orders { orders, group_order },
        )
    } else {
        Certificate::new(CertKind::LeadingTerm, texts(us), Verdict::Indeterminate, Witness::None)
            .with_note("two inputs share a q-part; the criterion does not apply")
    };
    Ok(cert)
}

/// A basis of `⟨u_1, …, u_k⟩ ⊂ U_1(F_p C_{p^j})` whose leading degrees have
/// pairwise distinct `q`-parts, so the subgroup is the direct product of
/// their cyclic groups. Each basis element carries its exponent vector over
/// the inputs.
#[derive(Clone, Debug)]
pub struct SiftedBasis {
    inputs: Vec<XAdicElem>,
    input_orders: Vec<u64>,
    basis: Vec<(XAdicElem, Vec<i64>)>,
    relations: Vec<Vec<i64>>,
}

impl SiftedBasis {
    pub fn new(us: &[XAdicElem]) -> Result<Self> {
        let mut s = SiftedBasis {
            inputs: Vec::new(),
            input_orders: Vec::new(),
            basis: Vec::new(),
            relations: Vec::new(),
        };
        for u in us {
            s.push(u.clone())?;
        }
        Ok(s)
    }

    fn reduce_coords(&self, c: &mut [i64]) {
        for (x, &o) in c.iter_mut().zip(&self.input_orders) {
            *x %= o as i64;
        }
    }

    pub fn push(&mut self, u: XAdicElem) -> Result<()> {
        if u.terms()[0] != 1 {
            return Err(Error::InvalidArgument(format!("{} is not in U_1", u.to_text())));
        }
        if let Some(first) = self.inputs.first() {
            if (first.p(), first.len()) != (u.p(), u.len()) {
                return Err(Error::ContextMismatch("inputs from different ambients".into()));
            }
        }
        let k = self.inputs.len();
        self.input_orders.push(u.order().expect("in U_1"));
        self.inputs.push(u.clone());
        for (_, c) in self.basis.iter_mut() {
            c.push(0);
        }
        for r in self.relations.iter_mut() {
            r.push(0);
        }
        let mut coords = vec![0i64; k + 1];
        coords[k] = 1;
        self.sift(u, coords);
        Ok(())
    }

    fn sift(&mut self, mut u: XAdicElem, mut coords: Vec<i64>) {
        let p = u.p();
        loop {
            let Some((d, c)) = u.leading() else {
                if coords.iter().any(|&x| x != 0) {
                    self.relations.push(coords);
                }
                return;
            };
            let (i, q) = p_split(d, p);
            let slot = self
                .basis
                .iter()
                .position(|(b, _)| p_split(b.leading().expect("non-identity").0, p).1 == q);
            let Some(slot) = slot else {
                self.basis.push((u, coords));
                return;
            };
            let (bd, bc) = self.basis[slot].0.leading().expect("non-identity");
            let (j, _) = p_split(bd, p);
            if j > i {
                // the new element has the lower degree: it takes the slot
                let (old, old_coords) =
                    std::mem::replace(&mut self.basis[slot], (u, coords));
                u = old;
                coords = old_coords;
                continue;
            }
            // b^{p^{i-j}} = 1 + bc x^{p^i q} + …, since bc^p = bc in F_p
            let shift = (p as i64).pow(i - j);
            let inv_bc = crate::arith::inv_mod(bc as i128, p).expect("nonzero");
            let e = (p - c) % p * inv_bc % p;
            let mult = e as i64 * shift;
            let b = &self.basis[slot];
            u = u.mul(&b.0.pow(mult).expect("non-negative power"));
            for (x, y) in coords.iter_mut().zip(&b.1) {
                *x += mult * y;
            }
            self.reduce_coords(&mut coords);
        }
    }

    pub fn basis(&self) -> Vec<XAdicElem> {
        self.basis.iter().map(|(b, _)| b.clone()).collect()
    }

    pub fn basis_coords(&self) -> Vec<Vec<i64>> {
        self.basis.iter().map(|(_, c)| c.clone()).collect()
    }

    pub fn orders(&self) -> Vec<u64> {
        self.basis.iter().map(|(b, _)| b.order().expect("in U_1")).collect()
    }

    /// `|⟨u_1, …, u_k⟩|`.
    pub fn group_order(&self) -> BigInt {
        self.orders().iter().map(|&o| BigInt::from(o)).product()
    }

    pub fn input_orders(&self) -> &[u64] {
        &self.input_orders
    }

    /// Relations found while sifting, in input coordinates.
    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    /// Membership of `v` in the subgroup, by sifting a copy.
    pub fn contains(&self, v: &XAdicElem) -> bool {
        let mut probe = self.clone();
        probe.push(v.clone()).is_ok() && probe.group_order() == self.group_order()
    }

    /// Hermite basis of the relation lattice `{e : Π u_i^{e_i} = 1}`, checked
    /// to have index `|⟨u⟩|`.
    pub fn relation_lattice(&self) -> Result<Vec<Vec<BigInt>>> {
        let k = self.inputs.len();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        for r in &self.relations {
            rows.push(big(r));
        }
        for ((_, c), o) in self.basis.iter().zip(self.orders()) {
            rows.push(big(c).into_iter().map(|x| x * o).collect());
        }
        for (i, &o) in self.input_orders.iter().enumerate() {
            let mut e = vec![BigInt::zero(); k];
            e[i] = BigInt::from(o);
            rows.push(e);
        }
        let hnf = hermite_normal_form(&rows, k);
        let index = if hnf.len() == k { lattice_index(&hnf) } else { BigInt::zero() };
        if index != self.group_order() {
            return Err(Error::Structural(format!(
                "relation lattice index {index} differs from subgroup order {}",
                self.group_order()
            )));
        }
        Ok(hnf)
    }

    /// A relation that is not a consequence of the input orders, normalized so
    /// its first nonzero entry is positive.
    pub fn nontrivial_relation(&self) -> Option<Vec<i64>> {
        let trivial = |r: &[i64]| {
            r.iter()
                .zip(&self.input_orders)
                .all(|(&x, &o)| x % o as i64 == 0)
        };
        let mut r = self.relations.iter().find(|r| !trivial(r))?.clone();
        if r.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            r.iter_mut().for_each(|x| *x = -*x);
        }
        Some(r)
    }
}

/// `Π u_i^{e_i} = 1` by direct multiplication.
pub fn relation_holds(us: &[XAdicElem], exps: &[i64]) -> bool {
    let Some(first) = us.first() else {
        return true;
    };
    let mut acc = XAdicElem::one(first.p(), first.len());
    for (u, &e) in us.iter().zip(exps) {
        match u.pow(e) {
            Ok(x) => acc = acc.mul(&x),
            Err(_) => return false,
        }
    }
    acc.is_one()
}

/// Exact decision of independence: the inputs are independent iff the group
/// they generate has order equal to the product of their orders.
pub fn exact_finite_independent(us: &[XAdicElem]) -> Result<Certificate> {
    check_inputs(us)?;
    let s = SiftedBasis::new(us)?;
    let orders = s.input_orders().to_vec();
    let product: BigInt = orders.iter().map(|&o| BigInt::from(o)).product();
    let group_order = s.group_order();
    if group_order == product {
        return Ok(Certificate::new(
            CertKind::ExactFinite,
            texts(us),
            Verdict::Independent,
            Witness::Orders { orders, group_order },
        ));
    }
    let rel = match s.nontrivial_relation() {
        Some(r) => r,
        None => lattice_witness(&s)?,
    };
    let rel = balance_relation(rel, &orders);
    if !relation_holds(us, &rel) {
        return Err(Error::Internal("dependency witness failed to verify".into()));
    }
    Ok(Certificate::new(
        CertKind::ExactFinite,
        texts(us),
        Verdict::Dependent,
        Witness::Relation { exponents: rel },
    ))
}

/// Reduces each exponent into `(-o/2, o/2]` for its element's order and makes the first
/// non-zero entry positive.
fn balance_relation(rel: Vec<i64>, orders: &[u64]) -> Vec<i64> {
    let mut out: Vec<i64> = rel
        .iter()
        .zip(orders)
        .map(|(&e, &o)| {
            let o = o as i64;
            let r = e.rem_euclid(o);
            if 2 * r > o { r - o } else { r }
        })
        .collect();
    if out.iter().find(|&&e| e != 0).is_some_and(|&e| e < 0) {
        out.iter_mut().for_each(|e| *e = -*e);
    }
    out
}

fn lattice_witness(s: &SiftedBasis) -> Result<Vec<i64>> {
    use num_traits::ToPrimitive;
    let hnf = s.relation_lattice()?;
    for row in hnf {
        let r: Vec<i64> = row.iter().map(|x| x.to_i64().expect("small")).collect();
        let nontrivial = r
            .iter()
            .zip(s.input_orders())
            .any(|(&x, &o)| x % o as i64 != 0);
        if nontrivial {
            return Ok(r);
        }
    }
    Err(Error::Internal("dependent inputs without a nontrivial relation".into()))
}

/// Largest ambient enumerated element by element.
pub const ENUMERATION_CAP: u32 = 20;

/// The subgroup generated by `us`, enumerated element by element (a
/// brute-force oracle for the sifting decider).
pub fn enumerate_subgroup(us: &[XAdicElem]) -> Result<HashSet<Vec<u64>>> {
    let Some(first) = us.first() else {
        return Ok(HashSet::new());
    };
    let p = first.p();
    let bits = (first.len() - 1) as f64 * (p as f64).log2();
    if bits > ENUMERATION_CAP as f64 {
        return Err(Error::Capacity {
            p,
            exponent: first.len() - 1,
        });
    }
    let one = XAdicElem::one(p, first.len());
    let mut seen: HashSet<Vec<u64>> = HashSet::from([one.terms().to_vec()]);
    let mut frontier = vec![one];
    while let Some(x) = frontier.pop() {
        for u in us {
            let y = x.mul(u);
            if seen.insert(y.terms().to_vec()) {
                frontier.push(y);
            }
        }
    }
    Ok(seen)
}

/// Brute-force independence: `⟨u_i⟩ ∩ ⟨rest⟩ = 1` for every `i`.
pub fn enumerate_independent(us: &[XAdicElem]) -> Result<bool> {
    check_inputs(us)?;
    for i in 0..us.len() {
        let rest: Vec<XAdicElem> = us
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, u)| u.clone())
            .collect();
        let span = if rest.is_empty() {
            HashSet::from([XAdicElem::one(us[i].p(), us[i].len()).terms().to_vec()])
        } else {
            enumerate_subgroup(&rest)?
        };
        let mut x = us[i].clone();
        while !x.is_one() {
            if span.contains(x.terms()) {
                return Ok(false);
            }
            x = x.mul(&us[i]);
        }
    }
    Ok(true)
}

/// `|U_1(F_p C_m)|` by testing every element with augmentation 1 for
/// invertibility through a circulant solve.
pub fn count_normalized_units_exhaustive(p: u64, m: usize) -> Result<u64> {
    let total = (p as u128).checked_pow(m as u32).filter(|&t| t <= 1 << 24);
    let Some(total) = total else {
        return Err(Error::Capacity { p, exponent: m });
    };
    let mut count = 0;
    let mut digits = vec![0u64; m];
    for _ in 0..total {
        let aug: u64 = digits.iter().sum::<u64>() % p;
        if aug == 1 {
            let a = GroupRingElem::new(m, p, digits.iter().map(|&d| BigInt::from(d)).collect())?;
            if a.inverse().is_some() {
                count += 1;
            }
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
    Ok(count)
}

fn is_torsion(u: &CycInt) -> bool {
    u.pow(2 * u.order() as i64).is_ok_and(|x| x.is_one())
}

/// Numerical certificate: full rank of the log embedding at `precision` and
/// at twice that. Torsion inputs are rejected.
pub fn log_rank_independent(us: &[CycInt], precision: usize) -> Result<Certificate> {
    if us.iter().any(is_torsion) {
        return Err(Error::TorsionInput);
    }
    let inputs: Vec<String> = us.iter().map(|u| u.to_text()).collect();
    let Some(first) = us.first() else {
        return Ok(Certificate::new(
            CertKind::LogRank,
            inputs,
            Verdict::Independent,
            Witness::Rank { rank: 0, expected: 0 },
        ));
    };
    let precs = [precision, 2 * precision];
    let mut ranks = [0usize; 2];
    let mut high_rows = Vec::new();
    for (slot, &prec) in precs.iter().enumerate() {
        let mut emb = Embedder::new(first.order(), prec)?;
        let rows = us
            .iter()
            .map(|u| emb.log_vector(u))
            .collect::<Result<Vec<_>>>()?;
        ranks[slot] = crate::embedding::numeric_rank(&rows);
        if slot == 1 {
            high_rows = rows;
        }
    }
    let mut cert = if ranks[0] != ranks[1] {
        Certificate::new(
            CertKind::LogRank,
            inputs,
            Verdict::Indeterminate,
            Witness::Rank {
                rank: ranks[1],
                expected: us.len(),
            },
        )
        .with_note(format!(
            "rank {} at {} bits but {} at {} bits",
            ranks[0], precs[0], ranks[1], precs[1]
        ))
    } else if ranks[0] == us.len() {
        Certificate::new(
            CertKind::LogRank,
            inputs,
            Verdict::Independent,
            Witness::Rank {
                rank: ranks[0],
                expected: us.len(),
            },
        )
        .with_note("numerical certificate")
    } else {
        let rows: Vec<Vec<f64>> = high_rows.iter().map(|r| r.entries.iter().map(big_to_f64).collect()).collect();
        match integer_relation(us, &rows) {
            Some(exps) => Certificate::new(
                CertKind::LogRank,
                inputs,
                Verdict::Dependent,
                Witness::Relation { exponents: exps },
            )
            .with_note("relation holds up to a root of unity, verified exactly"),
            None => Certificate::new(
                CertKind::LogRank,
                inputs,
                Verdict::Indeterminate,
                Witness::Rank {
                    rank: ranks[0],
                    expected: us.len(),
                },
            )
            .with_note("rank deficient but no small exact relation found"),
        }
    };
    cert.precision_used = Some(precs);
    Ok(cert)
}

/// A small integer vector in the left kernel of the log matrix, checked
/// exactly: `Π u_i^{e_i}` must be a root of unity.
fn integer_relation(us: &[CycInt], rows: &[Vec<f64>]) -> Option<Vec<i64>> {
    let k = rows.len();
    let ncols = rows.first()?.len();
    // column-reduce the transpose to find a null combination of the rows
    let mut a: Vec<Vec<f64>> = (0..ncols).map(|c| (0..k).map(|r| rows[r][c]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(best) = (r..ncols).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())) else {
            break;
        };
        if a[best][c].abs() < 1e-9 {
            continue;
        }
        a.swap(r, best);
        let piv = a[r][c];
        a[r].iter_mut().for_each(|x| *x /= piv);
        for rr in 0..ncols {
            if rr != r {
                let f = a[rr][c];
                if f != 0.0 {
                    for cc in 0..k {
                        a[rr][cc] -= f * a[r][cc];
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..k).find(|c| !pivots.contains(c))?;
    let mut v = vec![0.0; k];
    v[free] = 1.0;
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[row][free];
    }
    for d in 1..=64 {
        let e: Vec<i64> = v.iter().map(|x| (x * d as f64).round() as i64).collect();
        if e.iter().zip(&v).any(|(&ei, &x)| (ei as f64 - x * d as f64).abs() > 1e-6) {
            continue;
        }
        let mut acc = CycInt::one(us[0].p(), us[0].n()).ok()?;
        for (u, &ei) in us.iter().zip(&e) {
            acc = acc.mul(&u.pow(ei).ok()?);
        }
        if is_torsion(&acc) {
            let mut e = e;
            if e.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                e.iter_mut().for_each(|x| *x = -*x);
            }
            return Some(e);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x3(terms: &[(usize, u64)]) -> XAdicElem {
        let mut t = vec![0u64; 9];
        t[0] = 1;
        for &(d, c) in terms {
            t[d] = c;
        }
        XAdicElem::new(3, t).unwrap()
    }

    #[test]
    fn higman_values() {
        assert_eq!(higman_rank(9, 3, 0), 2);
        assert_eq!(higman_rank(5, 2, 0), 1);
        assert_eq!(higman_rank(8, 4, 1), 1);
    }

    #[test]
    fn sifted_example() {
        let a = x3(&[(4, 2), (5, 2), (6, 1), (7, 1), (8, 1)]);
        let b = x3(&[(4, 1), (5, 1), (7, 2), (8, 2)]);
        let s = SiftedBasis::new(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(s.group_order(), BigInt::from(9));
        let basis = s.basis();
        assert_eq!(basis[0], a);
        assert_eq!(basis[1], a.mul(&b));
        assert_eq!(basis[1].to_text(), "1 + x^6 + 2x^8");
    }

    #[test]
    fn square_is_dependent() {
        let u = x3(&[(2, 1)]);
        let c = exact_finite_independent(&[u.clone(), u.pow(2).unwrap()]).unwrap();
        assert_eq!(c.verdict, Verdict::Dependent);
        assert_eq!(c.witness, Witness::Relation { exponents: vec![2, -1] });
    }

    #[test]
    fn identity_rejected() {
        let one = XAdicElem::one(3, 9);
        assert!(matches!(leading_term_independent(&[one]), Err(Error::IdentityInput)));
    }

    #[test]
    fn same_q_part_is_indeterminate() {
        let mut t = vec![0u64; 8];
        t[0] = 1;
        t[2] = 1;
        let a = XAdicElem::new(2, t.clone()).unwrap();
        t[2] = 0;
        t[4] = 1;
        let b = XAdicElem::new(2, t).unwrap();
        let c = leading_term_independent(&[a, b]).unwrap();
        assert_eq!(c.verdict, Verdict::Indeterminate);
    }

    #[test]
    fn small_unit_counts() {
        assert_eq!(count_normalized_units_exhaustive(3, 3).unwrap(), 9);
        assert_eq!(count_normalized_units_exhaustive(2, 4).unwrap(), 8);
    }
}
