//! Text rendering of results.

use std::fmt::Write;
use std::time::Duration;

use serde::Serialize;
use zcpn::certificate::Witness;
use zcpn::fixtures::ReproReport;
use zcpn::kernel::AssemblyResult;
use zcpn::verify::VerifyReport;
use zcpn::Error;

#[derive(Serialize)]
pub struct TrivialCase {
    pub m: u64,
    pub trivial: bool,
    pub description: String,
}

impl TrivialCase {
    pub fn new(m: u64) -> Self {
        TrivialCase {
            m,
            trivial: true,
            description: format!("U(ZC_{m}) = ±C_{m}"),
        }
    }
}

pub fn trivial(m: u64) -> String {
    format!("U(ZC_{m}) = ±C_{m}; the free part is trivial")
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

pub fn assembly(res: &AssemblyResult) -> String {
    let c = &res.ctx;
    let mut s = String::new();
    let _ = writeln!(s, "U(ZC_{}) = {} × <free part of rank {}>", c.m, res.torsion, res.total_rank);
    let _ = writeln!(
        s,
        "p = {}, n = {}, t = {}, φ = {}, κ = {}{}",
        c.p,
        c.n,
        c.t,
        c.phi,
        c.kappa,
        res.table_source
            .map(|t| format!(", table: {}", serde_json::to_value(t).unwrap().as_str().unwrap_or("")))
            .unwrap_or_default()
    );
    let _ = writeln!(s, "\nHoechsmann units, ϑ_i = g^e ϑ_i':");
    for h in &res.hoechsmann_part {
        let _ = writeln!(s, "  ϑ_{} = {}", h.index, h.unit.to_text("g"));
        let _ = writeln!(s, "  ϑ_{}' = {}   (e = {})", h.index, h.reduced.to_text("g"), h.group_exponent);
    }
    if let Some(img) = &res.image {
        let _ = writeln!(s, "\nIm(f̄₁), x = h - 1, order {}:", img.size);
        for (b, o) in img.basis.iter().zip(&img.orders) {
            let _ = writeln!(s, "  {b}   (order {o})");
        }
    }
    if !res.kernel_part.is_empty() {
        let _ = writeln!(s, "\nKernel generators, w = 1 + Σ a_i g^i ĝ, π₂(w) = h^e0 Π u_j^e_j:");
        for (i, k) in res.kernel_part.iter().enumerate() {
            let a: Vec<String> = k.kernel.a.iter().map(|x| x.to_string()).collect();
            let e: Vec<String> = k.exponents.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "  w_{}: a = ({})", i + 1, a.join(", "));
            let _ = writeln!(s, "       exponents ({})", e.join(", "));
        }
    }
    if let Some(h) = &res.hypothesis_cert {
        let _ = write!(s, "\nHypothesis: {:?}", h.verdict);
        if let Witness::Hypothesis(ev) = &h.witness {
            if let Some(l) = &ev.lambda {
                let _ = write!(s, ", λ = {l}");
            }
            if let Some(e) = &ev.e {
                let _ = write!(s, ", e = {e}");
            }
            let _ = write!(s, ", f̄₂(v) = {}", ev.f2_v);
        }
        let _ = writeln!(s);
    }
    let _ = writeln!(s, "\nIdentities:");
    for id in &res.identities {
        let _ = writeln!(s, "  {:<6} {}", mark(id.passed), id.name);
    }
    let passed = res.certificates.iter().filter(|c| c.passed()).count();
    let _ = writeln!(s, "\nCertificates: {passed}/{} passed", res.certificates.len());
    for (i, cert) in res.certificates.iter().enumerate().filter(|(_, c)| !c.passed()) {
        let _ = writeln!(s, "  #{i} {:?}: {:?} on {}", cert.kind, cert.verdict, cert.inputs.join(", "));
    }
    let _ = writeln!(
        s,
        "Rank: {} (Higman rank {}) {}",
        res.total_rank,
        res.higman_rank,
        mark(res.total_rank == res.higman_rank)
    );
    let _ = writeln!(s, "{}", if res.all_passed() { "ALL PASS" } else { "FAILURES" });
    s
}

pub fn repro(r: &ReproReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let _ = writeln!(s, "{:<6} {}: {}", mark(c.passed), c.name, c.actual);
        if !c.passed {
            let _ = writeln!(s, "       expected {}", c.expected);
        }
    }
    let ok = r.checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(s, "{}: {ok}/{} checks pass", r.case, r.checks.len());
    s
}

pub fn verify(file: &str, r: &VerifyReport) -> String {
    let mut s = String::new();
    for f in &r.findings {
        let _ = writeln!(s, "FAILED {file}:{} {}", f.location, f.message);
    }
    let _ = writeln!(
        s,
        "{file}: {} {}, {} checks, {} findings: {}",
        r.kind,
        r.case.as_deref().unwrap_or("?"),
        r.checks,
        r.findings.len(),
        if r.passed() { "all pass" } else { "FAILED" }
    );
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub p: u64,
    pub n: u32,
    pub m: u64,
    pub rank: Option<u64>,
    pub higman_rank: Option<u64>,
    pub kernel_rank: Option<usize>,
    pub image_order: Option<String>,
    pub hypothesis: Option<String>,
    pub certificates: Option<(usize, usize)>,
    pub ok: bool,
    pub error: Option<String>,
    pub millis: u128,
}

impl SweepRow {
    pub fn new(p: u64, n: u32, res: Result<AssemblyResult, Error>, took: Duration) -> Self {
        let m = p.pow(n);
        let millis = took.as_millis();
        match res {
            Ok(r) => SweepRow {
                p,
                n,
                m,
                rank: Some(r.total_rank),
                higman_rank: Some(r.higman_rank),
                kernel_rank: Some(r.kernel_part.len()),
                image_order: r.image.as_ref().map(|i| i.size.to_string()),
                hypothesis: r.hypothesis_cert.as_ref().map(|h| format!("{:?}", h.verdict)),
                certificates: Some((
                    r.certificates.iter().filter(|c| c.passed()).count(),
                    r.certificates.len(),
                )),
                ok: r.all_passed(),
                error: None,
                millis,
            },
            Err(e) => SweepRow {
                p,
                n,
                m,
                rank: None,
                higman_rank: None,
                kernel_rank: None,
                image_order: None,
                hypothesis: None,
                certificates: None,
                ok: false,
                error: Some(e.to_string()),
                millis,
            },
        }
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or("-".into(), |x| x.to_string())
}

pub fn sweep(rows: &[SweepRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>5} {:>3} {:>3} {:>6} {:>6} {:>6} {:>10} {:>10} {:>9} {:>8}  status",
        "m", "p", "n", "rank", "higman", "kernel", "|Im f1|", "hypothesis", "certs", "ms"
    );
    for r in rows {
        let certs = r.certificates.map_or("-".into(), |(a, b)| format!("{a}/{b}"));
        let _ = writeln!(
            s,
            "{:>5} {:>3} {:>3} {:>6} {:>6} {:>6} {:>10} {:>10} {:>9} {:>8}  {}",
            r.m,
            r.p,
            r.n,
            opt(&r.rank),
            opt(&r.higman_rank),
            opt(&r.kernel_rank),
            opt(&r.image_order),
            opt(&r.hypothesis),
            certs,
            r.millis,
            r.error.as_deref().unwrap_or(if r.ok { "ok" } else { "FAILED" })
        );
    }
    let ok = rows.iter().filter(|r| r.ok).count();
    let _ = writeln!(s, "{ok}/{} cases pass", rows.len());
    s
}
