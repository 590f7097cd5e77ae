#![no_main]

use libfuzzer_sys::fuzz_target;
use zcpn::fixtures::CaseId;
use zcpn::units::SetName;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = s.parse::<CaseId>() {
        assert_eq!(c.to_string().parse::<CaseId>().unwrap(), c);
    }
    if let Ok(n) = s.parse::<SetName>() {
        assert_eq!(n.to_string(), s);
    }
});
