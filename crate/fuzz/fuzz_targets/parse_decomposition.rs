#![no_main]

use isobelief::iso::reconstruct;
use isobelief::json::{decomposition_to_json, parse_decomposition};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(d) = parse_decomposition(s) {
        let again = parse_decomposition(&decomposition_to_json(&d)).expect("emitted decomposition re-parses");
        assert_eq!(again, d);
        let _ = reconstruct(&d);
    }
});
