#![no_main]

use isobelief::json::{parse_weights, weights_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(w) = parse_weights(s) {
        let again = parse_weights(&weights_to_json(&w)).expect("emitted weights re-parse");
        assert_eq!(again, w);
    }
});
