//! Anything that parses must pretty-print to source that parses again,
//! and the two trees must match once spans are erased.

#![no_main]

use libfuzzer_sys::fuzz_target;
use scchecklist::ast::strip_spans;
use scchecklist::parser::parse;
use scchecklist::printer::pretty_print;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(mut unit) = parse(text) else { return };
    let printed = pretty_print(&unit);
    let mut reparsed = parse(&printed)
        .unwrap_or_else(|e| panic!("printed source does not parse: {e:?}\n{printed}"));
    strip_spans(&mut unit);
    strip_spans(&mut reparsed);
    assert_eq!(unit, reparsed, "round trip changed the tree for:\n{printed}");
});
