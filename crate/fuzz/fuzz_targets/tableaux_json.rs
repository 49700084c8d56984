#![no_main]

use kschur_core::ktableaux::tableaux_from_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(ts) = tableaux_from_json(text) {
        let encoded = serde_json::to_string(&ts).expect("tableaux serialize");
        assert_eq!(tableaux_from_json(&encoded).expect("encoded tableaux decode"), ts);
    }
});
