//! Pragma version constraints come straight from source text; parsing and
//! querying them must never panic.

#![no_main]

use libfuzzer_sys::fuzz_target;
use scchecklist::version::{parse_constraint, Version};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Some(constraint) = parse_constraint(text) {
            let _ = constraint.is_exact();
            let _ = constraint.allows_below(Version::new(0, 8, 0));
        }
    }
});
