#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = dpcheck::parse::parse_dpath(src) {
        let r = dpcheck::dspace::reduce_dpath(&p);
        assert_eq!(r.end(), p.end());
        let again = dpcheck::parse::parse_dpath(&r.to_string());
        if !r.is_constant() {
            assert_eq!(again.expect("display parses"), r);
        }
        let _ = dpcheck::dspace::contact_class(&p);
    }
});
