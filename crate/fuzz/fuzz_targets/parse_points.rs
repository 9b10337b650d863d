#![no_main]

use libfuzzer_sys::fuzz_target;
use tenpoints::chirotope::{format_points, parse_points};
use tenpoints::Chirotope;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(pts) = parse_points(text) {
        assert_eq!(parse_points(&format_points(&pts)).unwrap(), pts);
        let _ = Chirotope::from_points(&pts);
    }
});
