#![no_main]

use isobelief::json::{mass_to_json, parse_mass, parse_mass_stream};
use isobelief::mass::Tolerances;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_mass(s) {
        let again = parse_mass(&mass_to_json(&m)).expect("emitted document re-parses");
        assert_eq!(again, m);
    }
    let _ = parse_mass_stream(s, Tolerances::default());
});
