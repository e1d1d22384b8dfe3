#![no_main]

use derivkit::exactalg::Ring;
use derivkit::text::{parse_expr, print_polynomial};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let ring = Ring::new(["X", "Y", "Z"]).unwrap();
    if let Ok(p) = parse_expr(text, &ring) {
        let printed = print_polynomial(&p, &ring);
        assert_eq!(parse_expr(&printed, &ring).unwrap(), p);
    }
});
