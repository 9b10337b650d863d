#![no_main]

use libfuzzer_sys::fuzz_target;
use tenpoints::chirotope::decode_b16_record;
use tenpoints::Chirotope;

fuzz_target!(|data: &[u8]| {
    if let Ok(pts) = decode_b16_record(data) {
        let _ = Chirotope::from_points(&pts);
    }
});
