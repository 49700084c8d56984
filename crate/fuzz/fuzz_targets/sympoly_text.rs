#![no_main]

use kschur_core::SymPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = SymPoly::parse(text) {
        let printed = f.to_string();
        let again = SymPoly::parse(&printed).expect("printed value parses");
        assert_eq!(again.to_string(), printed);
        if !f.is_zero() {
            assert_eq!(again, f);
        }
    }
});
