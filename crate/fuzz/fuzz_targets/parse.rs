//! The parser must never panic; it either yields a tree or error spans.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = scchecklist::parser::parse(text);
    }
});
