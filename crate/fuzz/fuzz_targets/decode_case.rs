#![no_main]

use libfuzzer_sys::fuzz_target;
use zcpn::kernel::{AssemblyResult, LevelTable};

fuzz_target!(|data: &[u8]| {
    if let Ok(t) = serde_json::from_slice::<LevelTable>(data) {
        let _ = t.validate(false);
    }
    let _ = serde_json::from_slice::<AssemblyResult>(data);
});
