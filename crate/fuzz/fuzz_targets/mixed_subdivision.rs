#![no_main]

use libfuzzer_sys::fuzz_target;
use trisum::mixed::parse_mixed;

fuzz_target!(|data: &[u8]| {
    if data.len() > 8192 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(m) = parse_mixed(text) else { return };
    let printed = m.to_string();
    let again = parse_mixed(&printed).expect("printed subdivisions parse");
    assert_eq!(printed, again.to_string());
    let _ = m.validate();
});
