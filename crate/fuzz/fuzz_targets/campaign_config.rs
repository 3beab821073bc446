#![no_main]

use libfuzzer_sys::fuzz_target;
use trisum::harness::CampaignSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = CampaignSpec::parse(text) {
        // Parsing never yields a spec that cannot be reported on.
        let _ = format!("{spec:?}");
    }
});
