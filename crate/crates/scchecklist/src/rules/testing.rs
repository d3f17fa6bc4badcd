//! Testing-phase rules T01–T02.

use super::{Diagnostic, RuleCtx};
use crate::ast::{Expression, PragmaDirective};
use crate::span::Span;

/// The span and message for a pragma problem, if the file has one: the
/// first solidity pragma that fails to lock the compiler to a single
/// version, or a synthetic start-of-file location when there is no
/// solidity pragma at all.
pub fn check_pragma_lock(pragmas: &[PragmaDirective]) -> Option<(Span, String)> {
    let mut saw_solidity = false;
    for p in pragmas {
        if p.name != "solidity" {
            continue;
        }
        saw_solidity = true;
        let exact = p.constraint.as_ref().is_some_and(|c| c.is_exact());
        if !exact {
            return Some((
                p.span,
                format!(
                    "pragma `solidity {}` accepts more than one compiler version; \
                     lock it to the exact version the tests ran against",
                    p.content.trim()
                ),
            ));
        }
    }
    if saw_solidity {
        None
    } else {
        Some((
            Span { start: 0, end: 0, line: 1, col: 1 },
            "file has no solidity version pragma; add one locked to the exact \
             compiler version the tests ran against"
                .to_string(),
        ))
    }
}

/// T01: floating or missing compiler version pragma.
pub(super) fn unlocked_pragma(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    match check_pragma_lock(&r.ctx.unit.pragmas) {
        Some((span, message)) => vec![r.diag("T01", span, message, Vec::new())],
        None => Vec::new(),
    }
}

/// T02: contract writes state but never asserts an invariant.
pub(super) fn assert_guard_inventory(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for contract in &r.ctx.unit.contracts {
        let mut spans = Vec::new();
        for f in &contract.functions {
            spans.push(f.span);
        }
        for m in &contract.modifiers {
            spans.push(m.span);
        }

        let mut writes_state = false;
        let mut asserts = 0usize;
        for span in spans {
            if r.ctx.effects_for(span).is_some_and(|e| !e.writes.is_empty()) {
                writes_state = true;
            }
            asserts += r
                .ctx
                .calls_for(span)
                .iter()
                .filter(|site| {
                    matches!(
                        &site.callee,
                        Expression::Identifier { name, .. } if name == "assert"
                    )
                })
                .count();
        }
        if writes_state && asserts == 0 {
            out.push(r.diag(
                "T02",
                contract.name_span,
                format!(
                    "contract `{}` mutates state but contains no assert() guards; \
                     asserts document invariants that tests and analyzers can target",
                    contract.name
                ),
                Vec::new(),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::check_pragma_lock;
    use crate::parser::parse;

    fn pragmas_of(src: &str) -> crate::ast::SourceUnit {
        parse(src).expect("fixture parses")
    }

    #[test]
    fn exact_pragma_is_clean() {
        let unit = pragmas_of("pragma solidity 0.8.19;\ncontract A {}\n");
        assert!(check_pragma_lock(&unit.pragmas).is_none());
    }

    #[test]
    fn equals_prefix_counts_as_exact() {
        let unit = pragmas_of("pragma solidity =0.8.19;\ncontract A {}\n");
        assert!(check_pragma_lock(&unit.pragmas).is_none());
    }

    #[test]
    fn caret_pragma_is_flagged_at_the_pragma() {
        let unit = pragmas_of("pragma solidity ^0.8.0;\ncontract A {}\n");
        let (span, message) = check_pragma_lock(&unit.pragmas).expect("flagged");
        assert_eq!(span, unit.pragmas[0].span);
        assert!(message.contains("^0.8.0"));
    }

    #[test]
    fn range_pragma_is_flagged() {
        let unit = pragmas_of("pragma solidity >=0.7.0 <0.9.0;\ncontract A {}\n");
        assert!(check_pragma_lock(&unit.pragmas).is_some());
    }

    #[test]
    fn missing_pragma_points_at_the_file_start() {
        let unit = pragmas_of("contract A {}\n");
        let (span, message) = check_pragma_lock(&unit.pragmas).expect("flagged");
        assert_eq!((span.start, span.end, span.line, span.col), (0, 0, 1, 1));
        assert!(message.contains("no solidity version pragma"));
    }

    #[test]
    fn non_solidity_pragmas_do_not_satisfy_the_check() {
        let unit = pragmas_of("pragma experimental ABIEncoderV2;\ncontract A {}\n");
        assert!(check_pragma_lock(&unit.pragmas).is_some());
    }

    #[test]
    fn first_floating_pragma_wins_over_a_later_exact_one() {
        let unit =
            pragmas_of("pragma solidity ^0.8.0;\npragma solidity 0.8.19;\ncontract A {}\n");
        let (span, _) = check_pragma_lock(&unit.pragmas).expect("flagged");
        assert_eq!(span, unit.pragmas[0].span);
    }
}

#[cfg(test)]
mod rule_tests {
    use super::super::testutil::{lines, run_rule};
    use crate::rules::Severity;

    #[test]
    fn t01_flags_a_floating_pragma_once() {
        let src = "pragma solidity ^0.8.0;\n\
                   contract A {}\n";
        let diags = run_rule(src, "T01");
        assert_eq!(lines(&diags), vec![1]);
        assert_eq!(diags[0].severity, Severity::Warning);
        assert!(diags[0].message.contains("^0.8.0"));
    }

    #[test]
    fn t01_accepts_an_exact_pragma() {
        let src = "pragma solidity 0.8.19;\n\
                   contract A {}\n";
        assert!(run_rule(src, "T01").is_empty());
    }

    #[test]
    fn t01_flags_a_missing_pragma_at_the_file_head() {
        let diags = run_rule("contract A {}\n", "T01");
        assert_eq!(lines(&diags), vec![1]);
        assert!(diags[0].message.contains("no solidity version pragma"));
    }

    #[test]
    fn t02_flags_stateful_contracts_without_asserts() {
        let src = "pragma solidity 0.8.19;\n\
                   contract Book {\n\
                   uint total;\n\
                   function add(uint v) public { total = total + v; }\n\
                   }\n";
        let diags = run_rule(src, "T02");
        assert_eq!(lines(&diags), vec![2]);
        assert_eq!(diags[0].severity, Severity::Info);
        assert!(diags[0].message.contains("`Book`"));
    }

    #[test]
    fn t02_is_satisfied_by_an_assert_and_skips_readonly_contracts() {
        let src = "pragma solidity 0.8.19;\n\
                   contract Book2 {\n\
                   uint total;\n\
                   function add(uint v) public {\n\
                   total = total + v;\n\
                   assert(total >= v);\n\
                   }\n\
                   }\n\
                   contract Viewer {\n\
                   uint total;\n\
                   function get() public view returns (uint) { return total; }\n\
                   }\n";
        assert!(run_rule(src, "T02").is_empty());
    }
}
