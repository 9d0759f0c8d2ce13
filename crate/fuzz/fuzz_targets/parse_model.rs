#![no_main]

use gaudin_gl11::model::ModelSpec;
use libfuzzer_sys::fuzz_target;

// Model-spec files come from users; parsing must reject bad input with an
// error, never a panic, and accepted specs must satisfy their invariants.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = ModelSpec::parse(text) {
        spec.validate().expect("parsed spec validates");
    }
});
