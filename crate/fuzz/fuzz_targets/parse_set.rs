#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(s) = dpcheck::parse::parse_set(src) {
        let again = dpcheck::parse::parse_set(&s.to_string()).expect("display parses");
        assert_eq!(again, s);
        let _ = dpcheck::orders::classify(&s);
    }
});
