#![no_main]

use isobelief::json::{network_to_json, parse_network};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(net) = parse_network(s) {
        let again = parse_network(&network_to_json(&net)).expect("emitted network re-parses");
        assert_eq!(again, net);
    }
});
