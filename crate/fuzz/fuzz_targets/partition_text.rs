#![no_main]

use kschur_core::Partition;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = text.parse::<Partition>() {
        let again: Partition = p.to_string().parse().expect("printed partition parses");
        assert_eq!(again, p);
    }
});
