#![no_main]

use libfuzzer_sys::fuzz_target;
use tenpoints::KPartiteGraph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = KPartiteGraph::parse_kpg(text) {
        let again = KPartiteGraph::parse_kpg(&g.write_kpg()).expect("written graph parses");
        assert_eq!(again.write_kpg(), g.write_kpg());
    }
});
