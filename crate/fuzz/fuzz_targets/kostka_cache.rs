#![no_main]

use kschur_core::cache;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = cache::decode(text) {
        let encoded = cache::encode(&m).expect("decoded entries fit in i64");
        assert_eq!(cache::decode(&encoded).expect("re-encoded file decodes").index(), m.index());
    }
});
