#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(w) = dpcheck::parse::parse_word(src) {
        let again = dpcheck::parse::parse_word(&w.to_string()).expect("display parses");
        assert_eq!(again, w);
        assert!(w.concat(&w.inverse()).is_identity());
    }
});
