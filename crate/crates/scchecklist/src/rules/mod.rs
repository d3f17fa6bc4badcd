//! The rule engine and its 19-rule catalog.
//!
//! Each rule is a pure function from the analysis context to diagnostics,
//! with a stable identifier, a default severity, one linked checklist item,
//! and the abstract security patterns it serves. The engine filters by
//! configuration, applies severity overrides, and sorts the merged output so
//! identical inputs always produce identical reports.
//!
//! Severity defaults follow one principle: constructs that are directly
//! exploitable as written (C01, C02, C04, C10) are errors; missing
//! safeguards are warnings; advisory observations are info.

mod coding;
mod design;
mod testing;

pub use coding::detect_cei_violation;
pub use testing::check_pragma_lock;

use crate::ast::*;
use crate::checklist::config::ScanConfig;
use crate::semantics::AnalysisContext;
use crate::span::Span;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Warning,
    Error,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Info => "info",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Severity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "error" => Ok(Severity::Error),
            "warning" => Ok(Severity::Warning),
            "info" => Ok(Severity::Info),
            other => Err(format!(
                "unknown severity `{other}` (expected error, warning, or info)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Phase {
    Design,
    Coding,
    Testing,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Design => "design",
            Phase::Coding => "coding",
            Phase::Testing => "testing",
        }
    }
}

/// Static description of one rule.
#[derive(Debug, Clone, Copy)]
pub struct RuleSpec {
    pub id: &'static str,
    pub title: &'static str,
    pub phase: Phase,
    pub default_severity: Severity,
    /// The checklist item this rule automates (fully or partially).
    pub checklist_item: &'static str,
    /// Abstract security pattern ids served by the rule.
    pub patterns: &'static [&'static str],
    pub doc: &'static str,
}

/// One finding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub rule_id: &'static str,
    pub severity: Severity,
    pub file: String,
    pub span: Span,
    pub message: String,
    /// Secondary locations (e.g. the external call and the later write).
    pub evidence: Vec<Span>,
    pub pattern_ids: &'static [&'static str],
}

/// The full catalog: 4 design rules, 13 coding rules, 2 testing rules.
pub fn catalog() -> &'static [RuleSpec] {
    &CATALOG
}

pub fn rule_spec(id: &str) -> Option<&'static RuleSpec> {
    CATALOG.iter().find(|r| r.id == id)
}

static CATALOG: [RuleSpec; 19] = [
    RuleSpec {
        id: "D01",
        title: "Strict balance equality",
        phase: Phase::Design,
        default_severity: Severity::Warning,
        checklist_item: "DES-02",
        patterns: &["CEI", "MH", "GC"],
        doc: "Flags `==`/`!=` comparisons against the contract's own ether \
              balance. Anyone can force ether into a contract (selfdestruct, \
              block rewards), so logic gated on an exact balance can be \
              wedged permanently; compare with `>=`/`<=` instead. Supports \
              checklist item DES-02 (design phase).",
    },
    RuleSpec {
        id: "D02",
        title: "Missing circuit breaker",
        phase: Phase::Design,
        default_severity: Severity::Info,
        checklist_item: "DES-01",
        patterns: &["SB", "RL", "TE", "PD", "OW"],
        doc: "Points out contracts with state-mutating entry points but no \
              recognizable emergency-stop mechanism: no owner-gated boolean \
              pause flag tested in a modifier or require, and no \
              access-guarded selfdestruct. A heuristic aid for checklist \
              item DES-01 (design phase); human review remains required.",
    },
    RuleSpec {
        id: "D03",
        title: "Push payment inside a loop",
        phase: Phase::Design,
        default_severity: Severity::Warning,
        checklist_item: "DES-08",
        patterns: &["CEI"],
        doc: "Flags ether transfers (transfer, send, call with value) inside \
              loop bodies. One failing or gas-hungry recipient blocks every \
              later payment; prefer pull payments where recipients withdraw \
              individually. Supports checklist item DES-08 (design phase).",
    },
    RuleSpec {
        id: "D04",
        title: "Inheritance linearization hazard",
        phase: Phase::Design,
        default_severity: Severity::Info,
        checklist_item: "DES-06",
        patterns: &["PD", "REU"],
        doc: "Points out contracts with two or more base contracts where the \
              same function or modifier name is defined in several linearized \
              ancestors, making behavior depend on base order. Lists the \
              resolution order so reviewers can confirm it is intended. \
              Supports checklist item DES-06 (design phase).",
    },
    RuleSpec {
        id: "C01",
        title: "Unchecked low-level call",
        phase: Phase::Coding,
        default_severity: Severity::Error,
        checklist_item: "COD-01",
        patterns: &["CEI", "MU", "GC"],
        doc: "Flags `call`/`delegatecall`/`staticcall`/`send` whose boolean \
              result is discarded. These primitives report failure in their \
              return value instead of reverting, so ignoring it silently \
              swallows failed transfers. Automates checklist item COD-01 \
              (coding phase).",
    },
    RuleSpec {
        id: "C02",
        title: "State change after external call",
        phase: Phase::Coding,
        default_severity: Severity::Error,
        checklist_item: "COD-02",
        patterns: &["CEI", "MU"],
        doc: "Flags external calls that can be followed by a state write (or \
              a second external call) on some control-flow path — the \
              reentrancy shape. Commit all state changes before interacting \
              with other contracts. Reachability is path-insensitive on \
              purpose: a checklist tool prefers false alarms over missed \
              windows. Automates checklist item COD-02 (coding phase).",
    },
    RuleSpec {
        id: "C03",
        title: "Missing access control on a critical operation",
        phase: Phase::Coding,
        default_severity: Severity::Warning,
        checklist_item: "COD-03",
        patterns: &["AU", "OW"],
        doc: "Flags externally reachable functions that selfdestruct, assign \
              owner-like state variables, or move the whole balance without \
              any modifier and without a require/if on msg.sender dominating \
              the critical statement. The owner-variable name pattern is \
              configurable (default: `owner`, case-insensitive). Supports \
              checklist item COD-03 (coding phase).",
    },
    RuleSpec {
        id: "C04",
        title: "tx.origin as authorization",
        phase: Phase::Coding,
        default_severity: Severity::Error,
        checklist_item: "COD-06",
        patterns: &["AU"],
        doc: "Flags every read of tx.origin. In require/if conditions it is \
              an authorization check that any intermediary contract can \
              satisfy by relaying the victim's transaction (reported at the \
              rule's severity); other reads are reported as warnings. Use \
              msg.sender. Automates checklist item COD-06 (coding phase).",
    },
    RuleSpec {
        id: "C05",
        title: "Unchecked arithmetic",
        phase: Phase::Coding,
        default_severity: Severity::Warning,
        checklist_item: "COD-10",
        patterns: &["MH", "GC", "REU", "BL"],
        doc: "Under pragmas admitting a compiler below 0.8, flags `+ - * **` \
              in contracts without a safe-math-style `using` directive \
              (library name pattern configurable, default `SafeMath`); under \
              0.8-or-later pragmas, flags arithmetic inside `unchecked` \
              blocks. Supports checklist item COD-10 (coding phase).",
    },
    RuleSpec {
        id: "C06",
        title: "Division before multiplication",
        phase: Phase::Coding,
        default_severity: Severity::Warning,
        checklist_item: "COD-11",
        patterns: &["MH", "GC", "REU"],
        doc: "Flags multiplications taking a division as a direct operand. \
              Integer division rounds down, so dividing first discards \
              precision the multiplication then amplifies; reorder to \
              multiply first. Automates checklist item COD-11 (coding \
              phase).",
    },
    RuleSpec {
        id: "C07",
        title: "Missing input validation",
        phase: Phase::Coding,
        default_severity: Severity::Info,
        checklist_item: "COD-12",
        patterns: &["GC"],
        doc: "Points out externally reachable functions none of whose \
              parameters appear in a require/assert argument or \
              revert-guarded condition before their first other use. \
              Validating inputs at the boundary keeps garbage out of state. \
              Supports checklist item COD-12 (coding phase).",
    },
    RuleSpec {
        id: "C08",
        title: "Unbounded loop",
        phase: Phase::Coding,
        default_severity: Severity::Warning,
        checklist_item: "COD-13",
        patterns: &["RL", "BL", "TC", "TE"],
        doc: "Flags loops whose bound is the length of a dynamic state array \
              or a comparison against a state variable, without a constant \
              cap in the condition. Such loops grow with stored data until \
              they exceed the block gas limit and brick the function. \
              Automates checklist item COD-13 (coding phase).",
    },
    RuleSpec {
        id: "C09",
        title: "Fallback hygiene",
        phase: Phase::Coding,
        default_severity: Severity::Warning,
        checklist_item: "COD-14",
        patterns: &["CEI", "MU", "GC"],
        doc: "Flags fallback functions that declare return values, exceed a \
              statement budget (configurable, default 3), or make external \
              calls — fallbacks run on unknown selectors and plain sends, \
              often with a small gas stipend. Logging-only fallbacks that \
              never check msg.data.length are pointed out as info. Automates \
              checklist item COD-14 (coding phase).",
    },
    RuleSpec {
        id: "C10",
        title: "Shadowing of built-in globals",
        phase: Phase::Coding,
        default_severity: Severity::Error,
        checklist_item: "COD-15",
        patterns: &["GC"],
        doc: "Flags declarations (contracts, functions, modifiers, state \
              variables, parameters, locals) named after a built-in global \
              such as msg, require, or selfdestruct. The declaration wins \
              inside its scope, silently changing what security-relevant \
              expressions mean. Automates checklist item COD-15 (coding \
              phase).",
    },
    RuleSpec {
        id: "C11",
        title: "Address parameter used as a contract",
        phase: Phase::Coding,
        default_severity: Severity::Info,
        checklist_item: "COD-16",
        patterns: &["GC"],
        doc: "Points out address-typed parameters that the body casts to a \
              contract type or targets with a low-level call. Declaring the \
              parameter with the interface type instead gets compiler type \
              checking and documents intent. Supports checklist item COD-16 \
              (coding phase).",
    },
    RuleSpec {
        id: "C12",
        title: "Weak randomness source",
        phase: Phase::Coding,
        default_severity: Severity::Warning,
        checklist_item: "COD-17",
        patterns: &["OR", "REU"],
        doc: "Flags block.timestamp, blockhash(...), block.difficulty, or \
              block.number feeding a keccak256/sha256 hash or a modulo \
              operation — the classic homemade lottery. Block producers \
              influence all of these; use an oracle for randomness. Supports \
              checklist item COD-17 (coding phase).",
    },
    RuleSpec {
        id: "C13",
        title: "Timestamp dependence",
        phase: Phase::Coding,
        default_severity: Severity::Info,
        checklist_item: "COD-18",
        patterns: &["TC"],
        doc: "Points out branches controlled by block.timestamp/now \
              comparisons, and block.number arithmetic with literals (a \
              block-counting clock). Miners can nudge timestamps and block \
              inclusion, so tolerances must be deliberate. Automates \
              checklist item COD-18 (coding phase).",
    },
    RuleSpec {
        id: "T01",
        title: "Unlocked compiler pragma",
        phase: Phase::Testing,
        default_severity: Severity::Warning,
        checklist_item: "TST-02",
        patterns: &[],
        doc: "Flags files whose solidity pragma is a caret, range, or \
              inequality — or missing entirely. Deployment should use \
              exactly the compiler the tests used; lock the pragma to one \
              version. Automates checklist item TST-02 (testing phase).",
    },
    RuleSpec {
        id: "T02",
        title: "Assert guard inventory",
        phase: Phase::Testing,
        default_severity: Severity::Info,
        checklist_item: "TST-03",
        patterns: &["GC"],
        doc: "Points out contracts that mutate state but contain no assert() \
              invariant guards. Asserts encode conditions that must never \
              fail, giving tests and analyzers something to aim at. Supports \
              checklist item TST-03 (testing phase).",
    },
];

/// Shared evaluation context handed to every rule.
pub(crate) struct RuleCtx<'a> {
    pub ctx: &'a AnalysisContext<'a>,
    pub config: &'a ScanConfig,
    pub file: &'a str,
}

impl RuleCtx<'_> {
    pub fn diag(
        &self,
        rule_id: &'static str,
        span: Span,
        message: String,
        evidence: Vec<Span>,
    ) -> Diagnostic {
        let spec = rule_spec(rule_id).expect("rule id from the catalog");
        Diagnostic {
            rule_id: spec.id,
            severity: spec.default_severity,
            file: self.file.to_string(),
            span,
            message,
            evidence,
            pattern_ids: spec.patterns,
        }
    }

    /// Every function in the unit, paired with its contract.
    pub fn functions(&self) -> impl Iterator<Item = (&ContractDef, &FunctionDef)> {
        self.ctx
            .unit
            .contracts
            .iter()
            .flat_map(|c| c.functions.iter().map(move |f| (c, f)))
    }

    /// Every executable body in the unit: function and modifier bodies,
    /// paired with their contract and the span keying the calls/effects
    /// maps.
    pub fn bodies(&self) -> Vec<(&ContractDef, Span, &Block)> {
        let mut out = Vec::new();
        for c in &self.ctx.unit.contracts {
            for f in &c.functions {
                if let Some(b) = &f.body {
                    out.push((c, f.span, b));
                }
            }
            for m in &c.modifiers {
                if let Some(b) = &m.body {
                    out.push((c, m.span, b));
                }
            }
        }
        out
    }
}

/// Run every enabled rule and return the merged, sorted, severity-adjusted
/// diagnostics for one file.
pub fn evaluate_rules(
    ctx: &AnalysisContext<'_>,
    config: &ScanConfig,
    file: &str,
) -> Vec<Diagnostic> {
    let rctx = RuleCtx { ctx, config, file };
    let mut out: Vec<Diagnostic> = Vec::new();

    type RuleFn = fn(&RuleCtx<'_>) -> Vec<Diagnostic>;
    let rules: [(&str, RuleFn); 19] = [
        ("D01", design::strict_balance_equality),
        ("D02", design::missing_circuit_breaker),
        ("D03", design::push_payment_in_loop),
        ("D04", design::c3_hazard),
        ("C01", coding::unchecked_low_level_call),
        ("C02", coding::reentrancy_cei),
        ("C03", coding::missing_access_control),
        ("C04", coding::tx_origin_auth),
        ("C05", coding::unchecked_arithmetic),
        ("C06", coding::divide_before_multiply),
        ("C07", coding::missing_input_validation),
        ("C08", coding::unbounded_loop),
        ("C09", coding::fallback_hygiene),
        ("C10", coding::builtin_shadowing),
        ("C11", coding::address_param_interface),
        ("C12", coding::weak_randomness),
        ("C13", coding::timestamp_dependence),
        ("T01", testing::unlocked_pragma),
        ("T02", testing::assert_guard_inventory),
    ];

    for (id, run) in rules {
        if !config.rule_enabled(id) {
            continue;
        }
        let mut diags = run(&rctx);
        if let Some(over) = config.severity_overrides.get(id) {
            for d in &mut diags {
                d.severity = *over;
            }
        }
        out.append(&mut diags);
    }

    out.sort_by(|a, b| {
        (a.file.as_str(), a.span.start, a.rule_id, a.span.end, a.message.as_str()).cmp(&(
            b.file.as_str(),
            b.span.start,
            b.rule_id,
            b.span.end,
            b.message.as_str(),
        ))
    });
    out
}

// ---------------------------------------------------------------------------
// Shared expression helpers used by several rules.
// ---------------------------------------------------------------------------

/// `<something involving this>.balance` — the contract's own ether balance.
pub(crate) fn is_own_balance(expr: &Expression) -> bool {
    match expr {
        Expression::MemberAccess { base, member, .. } if member == "balance" => {
            base.mentions_identifier("this")
        }
        _ => false,
    }
}

/// Does the expression contain `msg.sender`?
pub(crate) fn mentions_msg_sender(expr: &Expression) -> bool {
    let mut found = false;
    expr.walk(&mut |e| {
        if let Expression::MemberAccess { base, member, .. } = e {
            if member == "sender"
                && matches!(base.as_ref(), Expression::Identifier { name, .. } if name == "msg")
            {
                found = true;
            }
        }
    });
    found
}

/// Is this expression `block.<member>`?
pub(crate) fn is_block_member(expr: &Expression, wanted: &str) -> bool {
    matches!(
        expr,
        Expression::MemberAccess { base, member, .. }
            if member == wanted
                && matches!(base.as_ref(), Expression::Identifier { name, .. } if name == "block")
    )
}

/// Is this a call to the bare identifier `name` (e.g. `require(...)`)?
pub(crate) fn is_call_to<'e>(expr: &'e Expression, name: &str) -> Option<&'e [Expression]> {
    if let Expression::Call { callee, args, .. } = expr {
        if matches!(callee.as_ref(), Expression::Identifier { name: n, .. } if n == name) {
            return Some(args);
        }
    }
    None
}

/// Find the `Call` expression with exactly this span inside a block.
pub(crate) fn find_call_in_block(block: &Block, span: Span) -> Option<Expression> {
    let mut found = None;
    for stmt in &block.statements {
        stmt.walk_expressions(&mut |e| {
            if found.is_none() && matches!(e, Expression::Call { .. }) && e.span() == span {
                found = Some(e.clone());
            }
        });
    }
    found
}

/// Externally reachable: explicit public/external, or no visibility at all
/// (pre-0.5 sources default to public).
pub(crate) fn is_externally_reachable(func: &FunctionDef) -> bool {
    matches!(
        func.visibility,
        Some(Visibility::Public) | Some(Visibility::External) | None
    )
}

/// Integer value of a number literal, handling underscores, hex, and simple
/// scientific notation. `None` for malformed or oversized values.
pub(crate) fn literal_value(text: &str) -> Option<u128> {
    let cleaned: String = text.chars().filter(|c| *c != '_').collect();
    if let Some(hex) = cleaned.strip_prefix("0x").or_else(|| cleaned.strip_prefix("0X")) {
        return u128::from_str_radix(hex, 16).ok();
    }
    if let Some((mantissa, exp)) = cleaned.split_once(['e', 'E']) {
        let m: u128 = mantissa.parse().ok()?;
        let e: u32 = exp.parse().ok()?;
        return m.checked_mul(10u128.checked_pow(e)?);
    }
    cleaned.parse().ok()
}
