#![no_main]

use derivkit::exactalg::Ring;
use derivkit::text::{parse_automorphism, print_automorphism};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&flag, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let ring = Ring::new(["X", "Y", "Z"]).unwrap();
    if let Ok(rho) = parse_automorphism(text, &ring, flag & 1 == 1) {
        let printed = print_automorphism(&rho);
        assert_eq!(parse_automorphism(&printed, &ring, false).unwrap(), rho);
    }
});
