#![no_main]

use kschur_core::SymPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = SymPoly::from_json(text) {
        assert_eq!(SymPoly::from_json(&f.to_json()).expect("encoded value decodes"), f);
    }
});
