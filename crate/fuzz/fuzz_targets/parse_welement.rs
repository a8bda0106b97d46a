#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(e) = dpcheck::parse::parse_welement(src) {
        let again = dpcheck::parse::parse_welement(&e.to_string()).expect("display parses");
        assert_eq!(again, e);
        let _ = dpcheck::wspace::in_n0(&e);
    }
});
