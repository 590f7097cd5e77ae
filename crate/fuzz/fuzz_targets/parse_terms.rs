#![no_main]

use libfuzzer_sys::fuzz_target;
use num_bigint::BigInt;
use zcpn::text::{format_terms, parse_terms};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(terms) = parse_terms(s, &["g", "h"]) {
        let max = terms.iter().map(|t| t.1).max().unwrap_or(0);
        if max < 4096 {
            let mut dense = vec![BigInt::default(); max as usize + 1];
            for (c, e) in terms {
                dense[e as usize] += c;
            }
            let text = format_terms(&dense, "g");
            assert!(parse_terms(&text, &["g"]).is_ok());
        }
    }
});
