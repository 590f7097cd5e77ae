use zcpn::context::PrimePowerCtx;
use zcpn::kernel::Pipeline;
use zcpn::verify::verify_json;

fn assembly_json(p: u64, n: u32) -> String {
    let ctx = PrimePowerCtx::make(p, n, None).unwrap();
    serde_json::to_string_pretty(&Pipeline::new().assemble(&ctx).unwrap()).unwrap()
}

#[test]
fn fresh_assembly_verifies() {
    for (p, n) in [(3, 2), (3, 3), (2, 4)] {
        let r = verify_json(&assembly_json(p, n)).unwrap();
        assert!(r.passed(), "{p}^{n}: {:?}", r.findings);
        assert!(r.checks > 5);
    }
}

#[test]
fn tampered_coefficient_is_located() {
    let text = assembly_json(3, 3);
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let c = &mut v["kernel_part"][0]["w"]["coeffs"][3];
    *c = serde_json::json!(c.as_i64().unwrap() + 1);
    let r = verify_json(&v.to_string()).unwrap();
    assert!(!r.passed());
    assert!(
        r.findings.iter().any(|f| f.location == "/kernel_part/0/w/coeffs/3"),
        "{:?}",
        r.findings
    );
    assert!(r.findings.iter().any(|f| f.location == "/kernel_part/0/w" && f.message.contains("kernel")));
}

#[test]
fn tampered_verdict_is_reported() {
    let mut v: serde_json::Value = serde_json::from_str(&assembly_json(3, 2)).unwrap();
    v["certificates"][0]["verdict"] = serde_json::json!("not-a-unit");
    let r = verify_json(&v.to_string()).unwrap();
    assert!(r.findings.iter().any(|f| f.location == "/certificates/0"));
}

#[test]
fn malformed_file_reports_position() {
    let r = verify_json("{\"format\": 1,\n  \"ctx\": [").unwrap();
    assert!(!r.passed());
    assert!(r.findings[0].location.starts_with("2:"));
}

#[test]
fn table_files_verify() {
    let dir = std::env::temp_dir().join(format!("zcpn-verify-{}", std::process::id()));
    let ctx = PrimePowerCtx::make(3, 3, None).unwrap();
    Pipeline::new().with_cases_dir(&dir).assemble(&ctx).unwrap();
    let text = std::fs::read_to_string(dir.join("p3n3.table.json")).unwrap();
    let r = verify_json(&text).unwrap();
    assert!(r.passed(), "{:?}", r.findings);
    assert_eq!(r.kind, "level-table");
    let again = std::fs::read_to_string(dir.join("p3n3.json")).unwrap();
    assert!(verify_json(&again).unwrap().passed());
    std::fs::remove_dir_all(&dir).unwrap();
}
