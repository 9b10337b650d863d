#![no_main]

use libfuzzer_sys::fuzz_target;
use tenpoints::KPartiteGraph;

// raw bytes, so gzip-framed and invalid UTF-8 input reach the reader
fuzz_target!(|data: &[u8]| {
    let _ = KPartiteGraph::read_kpg(data);
});
