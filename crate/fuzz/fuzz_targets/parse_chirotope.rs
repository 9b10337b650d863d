#![no_main]

use libfuzzer_sys::fuzz_target;
use tenpoints::Chirotope;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(chi) = Chirotope::parse_text(text) {
        assert_eq!(Chirotope::parse_text(&chi.to_text()).unwrap(), chi);
        if chi.n() <= 8 {
            let _ = chi.check_axioms();
        }
    }
});
