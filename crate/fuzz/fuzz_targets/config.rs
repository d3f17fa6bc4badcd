//! Config files are user input; decoding must never panic.

#![no_main]

use libfuzzer_sys::fuzz_target;
use scchecklist::checklist::ScanConfig;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(config) = ScanConfig::from_json(text, "fuzz") {
            let _ = config.validate();
        }
    }
});
