#![no_main]

use libfuzzer_sys::fuzz_target;
use trisum::io::{format_exchange, parse_exchange, parse_point_set, parse_triangulation};

// Input: a point set, a line holding `---`, then an exchange file.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let (points, simplices) = text.split_once("\n---\n").unwrap_or(("0 0\n1 0\n0 1\n", text));
    if let Ok(list) = parse_exchange(simplices) {
        let again = parse_exchange(&format_exchange(&list)).expect("formatted lists parse");
        assert_eq!(list.simplices, again.simplices);
    }
    let Ok(base) = parse_point_set(points) else { return };
    if base.dim() != 2 || base.len() > 64 {
        return;
    }
    if let Ok(t) = parse_triangulation(&base, simplices) {
        let _ = t.validate();
    }
});
