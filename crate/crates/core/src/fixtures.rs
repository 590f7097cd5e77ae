//! Embedded expected values for the worked cases `zc9`, `zc27` and `hyp27`,
//! and the `reproduce` checks that recompute and compare them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::certificate::Verdict;
use crate::context::PrimePowerCtx;
use crate::error::{Error, Result};
use crate::independence::exact_finite_independent;
use crate::kernel::{hypothesis_check, image_basis, LevelTable, Pipeline, FORMAT};
use crate::maps::{f1, lift_to_kernel};
use crate::ring::GroupRingElem;
use crate::units::hoechsmann_unit;
use crate::xadic::XAdicElem;

// ZC_9, t = 2
const ZC9_THETA: [&str; 2] = ["g^2 - g^3 + g^4 - g^5 + g^6 - g^7 + g^8", "g^4 - g^5 + g^6 - g^7 + g^8"];
const ZC9_SHIFT: [usize; 2] = [5, 6];
const ZC9_SYMMETRIC: [&str; 2] = ["-1 + g - g^2 + g^3 + g^6 - g^7 + g^8", "1 - g + g^2 + g^7 - g^8"];

// ZC_27 over the symmetric generators u_1, u_2 of ZC_9, in h
const ZC27_U: [&str; 2] = ["-1 + h - h^2 + h^3 + h^6 - h^7 + h^8", "1 - h + h^2 + h^7 - h^8"];
// f̄₁(u_1), f̄₁(u_2), f̄₁(u_1)·f̄₁(u_2) as x-basis coefficients
const ZC27_F1: [[u64; 9]; 3] = [
    [1, 0, 0, 0, 2, 2, 1, 1, 1],
    [1, 0, 0, 0, 1, 1, 0, 2, 2],
    [1, 0, 0, 0, 0, 0, 1, 0, 2],
];
// u_i^3 = 1 + 3·a_i, and a_i is the kernel parameter of w_i
const ZC27_A: [[i64; 9]; 2] = [
    [-12, 11, -9, 6, -2, -2, 6, -9, 11],
    [6, -6, 5, -3, 1, 1, -3, 5, -6],
];

// hypothesis at ZC_27
const HYP27_LAMBDA: i64 = 1;
const HYP27_E: [u64; 9] = [1, 0, 0, 0, 0, 0, 0, 0, 1];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseId {
    Zc9,
    Zc27,
    Hyp27,
}

impl CaseId {
    pub const ALL: [CaseId; 3] = [CaseId::Zc9, CaseId::Zc27, CaseId::Hyp27];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::Zc9 => "zc9",
            CaseId::Zc27 => "zc27",
            CaseId::Hyp27 => "hyp27",
        }
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown case {s:?}; expected zc9, zc27 or hyp27")))
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReproCheck {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReproReport {
    pub case: CaseId,
    pub checks: Vec<ReproCheck>,
}

impl ReproReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn push(checks: &mut Vec<ReproCheck>, name: impl Into<String>, expected: String, actual: String) {
    let passed = expected == actual;
    checks.push(ReproCheck {
        name: name.into(),
        expected,
        actual,
        passed,
    });
}

fn xadic(terms: &[u64]) -> XAdicElem {
    XAdicElem::new(3, terms.to_vec()).expect("fixture is a valid x-adic element")
}

fn a_text(a: &[BigInt]) -> String {
    let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// The level table of `ZC_27` built from the fixture generators.
pub fn zc27_table() -> Result<LevelTable> {
    let prev_gens = ZC27_U
        .iter()
        .map(|s| GroupRingElem::parse_text(s, 9, 0))
        .collect::<Result<_>>()?;
    Ok(LevelTable {
        format: FORMAT,
        ctx: PrimePowerCtx::make(3, 3, None)?,
        source: crate::kernel::TableSource::PaperBaseCase,
        prev_gens,
    })
}

pub fn reproduce(case: CaseId) -> Result<ReproReport> {
    let checks = match case {
        CaseId::Zc9 => zc9()?,
        CaseId::Zc27 => zc27()?,
        CaseId::Hyp27 => hyp27()?,
    };
    Ok(ReproReport { case, checks })
}

fn zc9() -> Result<Vec<ReproCheck>> {
    let ctx = PrimePowerCtx::make(3, 2, None)?;
    let mut checks = Vec::new();
    push(&mut checks, "t", "2".into(), ctx.t.to_string());
    for i in 0..2 {
        let theta = hoechsmann_unit(&ctx, i as u64 + 1)?;
        push(
            &mut checks,
            format!("theta_{}", i + 1),
            ZC9_THETA[i].into(),
            theta.to_text("g"),
        );
        let (e, sym) = theta.split_group_part();
        push(
            &mut checks,
            format!("theta_{} = g^e * theta_{}'", i + 1, i + 1),
            format!("g^{} * ({})", ZC9_SHIFT[i], ZC9_SYMMETRIC[i]),
            format!("g^{e} * ({})", sym.to_text("g")),
        );
        push(
            &mut checks,
            format!("theta_{}' symmetric", i + 1),
            "true".into(),
            sym.is_symmetric().to_string(),
        );
    }
    let res = Pipeline::new().assemble(&ctx)?;
    for (i, u) in res.next_level_gens.iter().enumerate() {
        let expected = ZC9_SYMMETRIC.get(i).copied().unwrap_or("none");
        push(&mut checks, format!("generator {}", i + 1), expected.into(), u.to_text("g"));
    }
    push(&mut checks, "kernel part", "0".into(), res.kernel_part.len().to_string());
    push(&mut checks, "rank", "2".into(), res.total_rank.to_string());
    Ok(checks)
}

fn zc27() -> Result<Vec<ReproCheck>> {
    let table = zc27_table()?;
    let ctx = &table.ctx;
    let mut checks = Vec::new();
    let images: Vec<XAdicElem> = table
        .prev_gens
        .iter()
        .map(|u| f1(ctx, u)?.to_x_basis())
        .collect::<Result<_>>()?;
    for (i, img) in images.iter().enumerate() {
        push(
            &mut checks,
            format!("f1(u_{})", i + 1),
            xadic(&ZC27_F1[i]).to_text(),
            img.to_text(),
        );
    }
    push(
        &mut checks,
        "f1(u_1) * f1(u_2)",
        xadic(&ZC27_F1[2]).to_text(),
        images[0].mul(&images[1]).to_text(),
    );
    let res = Pipeline::new().assemble(ctx)?;
    for (i, u) in table.prev_gens.iter().enumerate() {
        let cube = u.pow_u(3);
        let mut expected = ZC27_A[i].iter().map(|a| 3 * a).collect::<Vec<_>>();
        expected[0] += 1;
        push(
            &mut checks,
            format!("u_{}^3", i + 1),
            GroupRingElem::from_i64s(9, 0, &expected)?.to_text("h"),
            cube.to_text("h"),
        );
        let k = lift_to_kernel(ctx, &cube)?;
        let from_pipeline = res.kernel_part.get(i).map(|l| &l.kernel);
        let consistent = from_pipeline == Some(&k);
        push(
            &mut checks,
            format!("w_{} parameters", i + 1),
            a_text(&ZC27_A[i].map(BigInt::from)),
            if consistent {
                a_text(&k.a)
            } else {
                format!("{} (pipeline: {:?})", a_text(&k.a), from_pipeline.map(|x| a_text(&x.a)))
            },
        );
    }
    Ok(checks)
}

fn hyp27() -> Result<Vec<ReproCheck>> {
    let table = zc27_table()?;
    let ctx = &table.ctx;
    let mut checks = Vec::new();
    push(
        &mut checks,
        "lambda",
        HYP27_LAMBDA.to_string(),
        ctx.lambda().map_or("none".into(), |l| l.to_string()),
    );
    let cert = hypothesis_check(&table)?;
    let e = xadic(&HYP27_E);
    let actual_e = match &cert.witness {
        crate::certificate::Witness::Hypothesis(ev) => ev.e.clone().unwrap_or_default(),
        _ => String::new(),
    };
    push(&mut checks, "e", e.to_text(), actual_e);
    let (basis, _) = image_basis(&table)?;
    push(
        &mut checks,
        "Im(f1) basis",
        format!("{}, {}", xadic(&ZC27_F1[0]).to_text(), xadic(&ZC27_F1[2]).to_text()),
        basis.iter().map(|b| b.to_text()).collect::<Vec<_>>().join(", "),
    );
    let mut set = vec![e];
    set.extend(basis);
    let indep = exact_finite_independent(&set)?;
    push(
        &mut checks,
        "e independent of the basis",
        format!("{:?}", Verdict::Independent),
        format!("{:?}", indep.verdict),
    );
    push(
        &mut checks,
        "hypothesis",
        format!("{:?}", Verdict::Holds),
        format!("{:?}", cert.verdict),
    );
    Ok(checks)
}
