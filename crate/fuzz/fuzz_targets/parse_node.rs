#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(n) = dpcheck::parse::parse_node(src) {
        let again = dpcheck::parse::parse_node(&n.to_string()).expect("display parses");
        assert_eq!(again, n);
    }
});
