#![no_main]

use libfuzzer_sys::fuzz_target;
use zcpn::{CycInt, GroupRingElem};

fuzz_target!(|data: &[u8]| {
    if let Ok(a) = serde_json::from_slice::<GroupRingElem>(data) {
        let back: GroupRingElem = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        assert_eq!(a, back);
        let _ = a.is_u2();
    }
    if let Ok(a) = serde_json::from_slice::<CycInt>(data) {
        let back: CycInt = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        assert_eq!(a, back);
    }
});
