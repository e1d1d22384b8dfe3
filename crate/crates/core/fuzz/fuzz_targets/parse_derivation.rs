#![no_main]

use derivkit::text::{parse_derivation, print_derivation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(d) = parse_derivation(text) {
        let printed = print_derivation(&d);
        assert_eq!(parse_derivation(&printed).unwrap(), d);
    }
});
