#![no_main]

use libfuzzer_sys::fuzz_target;
use zcpn::GroupRingElem;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    for (m, ch) in [(9, 0), (27, 0), (8, 2), (9, 3)] {
        if let Ok(a) = GroupRingElem::parse_text(s, m, ch) {
            let back = GroupRingElem::parse_text(&a.to_text("g"), m, ch).expect("canonical text parses");
            assert_eq!(a, back);
        }
    }
});
