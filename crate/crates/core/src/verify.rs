//! Re-checking persisted case files: intrinsic checks on every stored element
//! and a location-by-location diff against a fresh recomputation.

use serde::Serialize;
use serde_json::Value;

use crate::certificate::CertKind;
use crate::context::PrimePowerCtx;
use crate::error::Result;
use crate::kernel::{AssemblyResult, LevelTable, Pipeline};
use crate::maps::pi1;
use crate::ring::GroupRingElem;
use crate::units::hoechsmann_unit;

/// Differences beyond this many are summarized.
pub const MAX_DIFFS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    /// JSON pointer, or `line:column` for unreadable input.
    pub location: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub kind: String,
    pub case: Option<String>,
    pub checks: usize,
    pub findings: Vec<Finding>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }
}

struct Collector {
    checks: usize,
    findings: Vec<Finding>,
}

impl Collector {
    fn check(&mut self, ok: bool, location: impl Into<String>, message: impl Into<String>) {
        self.checks += 1;
        if !ok {
            self.findings.push(Finding {
                location: location.into(),
                message: message.into(),
            });
        }
    }

    fn unit(&mut self, u: &GroupRingElem, location: String) {
        let ok = u.inverse().is_some_and(|v| (u * &v).is_one());
        self.check(ok, location, "not a unit");
    }
}

fn describe(v: &Value) -> String {
    let s = v.to_string();
    if s.len() > 60 {
        format!("{}…", &s[..s.char_indices().nth(60).map_or(s.len(), |(i, _)| i)])
    } else {
        s
    }
}

/// Paths where `found` differs from `expected`, as JSON pointers.
pub fn json_diff(expected: &Value, found: &Value) -> Vec<Finding> {
    let mut out = Vec::new();
    diff_into(expected, found, String::new(), &mut out);
    out
}

fn diff_into(expected: &Value, found: &Value, path: String, out: &mut Vec<Finding>) {
    match (expected, found) {
        (Value::Object(a), Value::Object(b)) => {
            for (k, va) in a {
                let p = format!("{path}/{k}");
                match b.get(k) {
                    Some(vb) => diff_into(va, vb, p, out),
                    None => out.push(Finding {
                        location: p,
                        message: "missing".into(),
                    }),
                }
            }
            for k in b.keys().filter(|k| !a.contains_key(*k)) {
                out.push(Finding {
                    location: format!("{path}/{k}"),
                    message: "unexpected field".into(),
                });
            }
        }
        (Value::Array(a), Value::Array(b)) if a.len() == b.len() => {
            for (i, (va, vb)) in a.iter().zip(b).enumerate() {
                diff_into(va, vb, format!("{path}/{i}"), out);
            }
        }
        (Value::Array(a), Value::Array(b)) => out.push(Finding {
            location: path,
            message: format!("expected {} entries, found {}", a.len(), b.len()),
        }),
        _ if expected != found => out.push(Finding {
            location: path,
            message: format!("expected {}, found {}", describe(expected), describe(found)),
        }),
        _ => {}
    }
}

fn unreadable(kind: &str, e: serde_json::Error) -> VerifyReport {
    VerifyReport {
        kind: kind.into(),
        case: None,
        checks: 1,
        findings: vec![Finding {
            location: format!("{}:{}", e.line(), e.column()),
            message: e.to_string(),
        }],
    }
}

/// Verify the text of a case file (assembly result or level table).
pub fn verify_json(text: &str) -> Result<VerifyReport> {
    let value: Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return Ok(unreadable("unknown", e)),
    };
    if value.get("prev_gens").is_some() {
        match serde_json::from_str::<LevelTable>(text) {
            Ok(t) => verify_table(&t, &value),
            Err(e) => Ok(unreadable("level-table", e)),
        }
    } else {
        match serde_json::from_str::<AssemblyResult>(text) {
            Ok(r) => verify_assembly(&r, &value),
            Err(e) => Ok(unreadable("assembly", e)),
        }
    }
}

fn ctx_check(c: &mut Collector, ctx: &PrimePowerCtx) -> Option<PrimePowerCtx> {
    match PrimePowerCtx::derive(ctx.p, ctx.n, Some(ctx.t)) {
        Ok(fresh) => {
            c.check(fresh == *ctx, "/ctx", "parameters do not match their derivation");
            Some(fresh)
        }
        Err(e) => {
            c.check(false, "/ctx", e.to_string());
            None
        }
    }
}

fn add_diffs(c: &mut Collector, expected: &Value, found: &Value) {
    let diffs = json_diff(expected, found);
    c.checks += 1;
    let extra = diffs.len().saturating_sub(MAX_DIFFS);
    c.findings.extend(diffs.into_iter().take(MAX_DIFFS));
    if extra > 0 {
        c.findings.push(Finding {
            location: "/".into(),
            message: format!("{extra} further differences"),
        });
    }
}

pub fn verify_table(table: &LevelTable, value: &Value) -> Result<VerifyReport> {
    let mut c = Collector {
        checks: 0,
        findings: Vec::new(),
    };
    if let Some(ctx) = ctx_check(&mut c, &table.ctx) {
        if let Err(e) = table.validate(false) {
            c.check(false, "/prev_gens", e.to_string());
        }
        for (i, u) in table.prev_gens.iter().enumerate() {
            c.unit(u, format!("/prev_gens/{i}"));
        }
        if c.findings.is_empty() {
            let fresh = Pipeline::new().level_table(&ctx)?;
            add_diffs(&mut c, &serde_json::to_value(&fresh)?, value);
        }
    }
    Ok(VerifyReport {
        kind: "level-table".into(),
        case: Some(format!("{}^{}", table.ctx.p, table.ctx.n)),
        checks: c.checks,
        findings: c.findings,
    })
}

pub fn verify_assembly(res: &AssemblyResult, value: &Value) -> Result<VerifyReport> {
    let mut c = Collector {
        checks: 0,
        findings: Vec::new(),
    };
    let case = Some(format!("{}^{}", res.ctx.p, res.ctx.n));
    let Some(ctx) = ctx_check(&mut c, &res.ctx) else {
        return Ok(VerifyReport {
            kind: "assembly".into(),
            case,
            checks: c.checks,
            findings: c.findings,
        });
    };
    let m = ctx.m as usize;
    for (i, h) in res.hoechsmann_part.iter().enumerate() {
        let loc = format!("/hoechsmann_part/{i}");
        let fresh = hoechsmann_unit(&ctx, h.index).ok();
        c.check(fresh.as_ref() == Some(&h.unit), format!("{loc}/unit"), "differs from the construction");
        c.unit(&h.unit, format!("{loc}/unit"));
        c.check(
            h.unit.order() == m && h.unit.shift(-(h.group_exponent as i64)) == h.reduced,
            format!("{loc}/reduced"),
            "unit is not g^group_exponent * reduced",
        );
    }
    for (i, k) in res.kernel_part.iter().enumerate() {
        let loc = format!("/kernel_part/{i}");
        c.check(
            k.kernel.p == ctx.p && k.kernel.n == ctx.n && k.kernel.to_group_ring() == k.w,
            format!("{loc}/w"),
            "w does not match its kernel parameters",
        );
        c.check(
            k.w.order() == m && pi1(&ctx, &k.w).is_ok_and(|x| x.is_one()),
            format!("{loc}/w"),
            "pi1(w) is not 1",
        );
        c.unit(&k.w, format!("{loc}/w"));
    }
    for (i, u) in res.next_level_gens.iter().enumerate() {
        c.unit(u, format!("/next_level_gens/{i}"));
    }
    for (i, cert) in res.certificates.iter().enumerate() {
        c.check(cert.passed(), format!("/certificates/{i}"), format!("{:?} verdict {:?}", cert.kind, cert.verdict));
    }
    if let Some(h) = &res.hypothesis_cert {
        c.check(h.passed(), "/hypothesis_cert", format!("verdict {:?}", h.verdict));
    }
    for (i, id) in res.identities.iter().enumerate() {
        c.check(id.passed, format!("/identities/{i}"), format!("{} fails", id.name));
    }
    c.check(
        res.total_rank == res.higman_rank && res.higman_rank == ctx.higman_rank(),
        "/total_rank",
        "rank does not match the Higman rank",
    );

    let precision = res
        .certificates
        .iter()
        .find(|c| c.kind == CertKind::LogRank)
        .and_then(|c| c.precision_used)
        .map_or(crate::embedding::DEFAULT_PRECISION, |p| p[0]);
    match Pipeline::new().with_precision(precision).assemble(&ctx) {
        Ok(fresh) => add_diffs(&mut c, &serde_json::to_value(&fresh)?, value),
        Err(e) => c.check(false, "/", format!("recomputation failed: {e}")),
    }
    Ok(VerifyReport {
        kind: "assembly".into(),
        case,
        checks: c.checks,
        findings: c.findings,
    })
}
