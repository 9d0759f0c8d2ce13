#![no_main]

use gaudin_gl11::scalar::Scalar;
use libfuzzer_sys::fuzz_target;

// The scalar parser must never panic on untrusted text, and anything it
// accepts must round-trip through Display.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(s) = Scalar::parse(text) {
        let again = Scalar::parse(&s.to_string()).expect("display output reparses");
        assert_eq!(s, again);
    }
});
