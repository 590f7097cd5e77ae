#![no_main]

use libfuzzer_sys::fuzz_target;
use zcpn::CycInt;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    for (p, n) in [(3, 2), (2, 4), (5, 1)] {
        if let Ok(a) = CycInt::parse_text(s, p, n) {
            let back = CycInt::parse_text(&a.to_text(), p, n).expect("canonical text parses");
            assert_eq!(a, back);
        }
    }
});
