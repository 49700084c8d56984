#![no_main]

use kschur_core::quantum::GWExpansion;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(gw) = GWExpansion::from_json(text) {
        assert_eq!(GWExpansion::from_json(&gw.to_json()).expect("encoded value decodes"), gw);
    }
});
