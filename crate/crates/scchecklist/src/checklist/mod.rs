//! The security-assurance checklist: 16 abstract patterns, 32 items across
//! the design, coding, and testing phases, and a 6-entry informational
//! appendix of architectural patterns.
//!
//! The manifest ships embedded. Item ids are stable identifiers so project
//! configuration survives reordering; every item keeps its original row
//! title for traceability. Items with empty `automation` are manual review
//! steps; items whose automation only approximates the check keep
//! `manual_required = true` so a human still signs off.

pub mod config;
pub mod evaluate;

pub use config::{ConfigError, ManualAnswer, ManualStatus, ScanConfig, Thresholds};
pub use evaluate::{evaluate_checklist, ChecklistReport, ItemResult, ItemStatus};

use crate::rules::Phase;
use std::collections::BTreeSet;
use thiserror::Error;

/// One abstract security pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pattern {
    pub id: &'static str,
    pub name: &'static str,
    pub description: &'static str,
}

/// One checklist item.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChecklistItem {
    pub item_id: &'static str,
    pub phase: Phase,
    pub title: &'static str,
    pub description: &'static str,
    /// Abstract patterns this item applies.
    pub pattern_ids: &'static [&'static str],
    /// Rules that automate the item, fully or partially. Empty = manual.
    pub automation: &'static [&'static str],
    /// True when a human must still sign off (no automation, or automation
    /// that only approximates the check).
    pub manual_required: bool,
}

/// One entry of the informational appendix: architectural patterns worth
/// knowing that are not scored pass/fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AppendixEntry {
    pub name: &'static str,
    pub description: &'static str,
}

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("manifest defect: expected {expected} {what}, found {got}")]
    Cardinality { what: &'static str, expected: usize, got: usize },
    #[error("manifest defect: duplicate id `{0}`")]
    DuplicateId(String),
    #[error("manifest defect: item `{item}` references unknown pattern `{pattern}`")]
    UnknownPattern { item: String, pattern: String },
    #[error("manifest defect: item `{item}` references unknown rule `{rule}`")]
    UnknownRule { item: String, rule: String },
    #[error("manifest defect: rule `{rule}` declares item `{declared}` but `{item}` lists it")]
    RuleItemMismatch { rule: String, declared: String, item: String },
}

pub fn manifest_patterns() -> &'static [Pattern] {
    &PATTERNS
}

pub fn manifest_items() -> &'static [ChecklistItem] {
    &ITEMS
}

pub fn appendix_entries() -> &'static [AppendixEntry] {
    &APPENDIX
}

pub fn checklist_item(id: &str) -> Option<&'static ChecklistItem> {
    ITEMS.iter().find(|i| i.item_id == id)
}

/// The validated manifest. The embedded data is static, so failure is a
/// defect guard, not a runtime condition.
pub fn load_manifest() -> Result<(&'static [Pattern], &'static [ChecklistItem]), ManifestError> {
    if PATTERNS.len() != 16 {
        return Err(ManifestError::Cardinality {
            what: "patterns",
            expected: 16,
            got: PATTERNS.len(),
        });
    }
    for (phase, expected) in [(Phase::Design, 8), (Phase::Coding, 18), (Phase::Testing, 6)] {
        let got = ITEMS.iter().filter(|i| i.phase == phase).count();
        if got != expected {
            return Err(ManifestError::Cardinality {
                what: match phase {
                    Phase::Design => "design items",
                    Phase::Coding => "coding items",
                    Phase::Testing => "testing items",
                },
                expected,
                got,
            });
        }
    }

    let mut seen = BTreeSet::new();
    for p in &PATTERNS {
        if !seen.insert(p.id) {
            return Err(ManifestError::DuplicateId(p.id.to_string()));
        }
    }
    let mut seen = BTreeSet::new();
    for item in &ITEMS {
        if !seen.insert(item.item_id) {
            return Err(ManifestError::DuplicateId(item.item_id.to_string()));
        }
        for pid in item.pattern_ids {
            if !PATTERNS.iter().any(|p| p.id == *pid) {
                return Err(ManifestError::UnknownPattern {
                    item: item.item_id.to_string(),
                    pattern: pid.to_string(),
                });
            }
        }
        for rid in item.automation {
            let Some(spec) = crate::rules::rule_spec(rid) else {
                return Err(ManifestError::UnknownRule {
                    item: item.item_id.to_string(),
                    rule: rid.to_string(),
                });
            };
            if spec.checklist_item != item.item_id {
                return Err(ManifestError::RuleItemMismatch {
                    rule: rid.to_string(),
                    declared: spec.checklist_item.to_string(),
                    item: item.item_id.to_string(),
                });
            }
        }
    }
    // The reverse direction: every rule's declared item must list the rule.
    for spec in crate::rules::catalog() {
        let Some(item) = ITEMS.iter().find(|i| i.item_id == spec.checklist_item) else {
            return Err(ManifestError::RuleItemMismatch {
                rule: spec.id.to_string(),
                declared: spec.checklist_item.to_string(),
                item: "<missing>".to_string(),
            });
        };
        if !item.automation.contains(&spec.id) {
            return Err(ManifestError::RuleItemMismatch {
                rule: spec.id.to_string(),
                declared: spec.checklist_item.to_string(),
                item: item.item_id.to_string(),
            });
        }
    }
    Ok((&PATTERNS, &ITEMS))
}

static PATTERNS: [Pattern; 16] = [
    Pattern {
        id: "CEI",
        name: "Check Effect Interaction",
        description: "Order every function as: validate preconditions first, \
                      write the contract's own state second, and talk to \
                      other contracts last. Keeping interactions at the end \
                      means a re-entering caller always sees finished state.",
    },
    Pattern {
        id: "PD",
        name: "Proxy Delegate / Decorator",
        description: "Route calls through a proxy that holds a replaceable \
                      implementation address, so contract logic can be \
                      upgraded despite on-chain immutability and shared \
                      logic saves deployment gas.",
    },
    Pattern {
        id: "AU",
        name: "Authorization",
        description: "Restrict critical functions to specific callers, \
                      typically via address allowlists enforced in \
                      modifiers.",
    },
    Pattern {
        id: "OW",
        name: "Ownership",
        description: "Designate one owner address with special management \
                      permissions — the only account allowed to call \
                      administrative functions. A special case of \
                      authorization.",
    },
    Pattern {
        id: "OR",
        name: "Oracle",
        description: "A contract that supplies off-chain data fed by a \
                      trusted source. The security question is always how \
                      much that source deserves the trust.",
    },
    Pattern {
        id: "RO",
        name: "Reverse Oracle",
        description: "A contract exposing on-chain data for off-chain \
                      components to read and act upon.",
    },
    Pattern {
        id: "RL",
        name: "Rate Limit",
        description: "Bound how often a task can run within a time window, \
                      capping a contract's message volume and computational \
                      load.",
    },
    Pattern {
        id: "BL",
        name: "Balance Limit",
        description: "Cap the funds a contract will hold at any one time, \
                      bounding the damage any single failure can cause.",
    },
    Pattern {
        id: "GC",
        name: "Guard Check",
        description: "Verify every requirement on contract state and \
                      function inputs before acting, using require, assert, \
                      and revert.",
    },
    Pattern {
        id: "TC",
        name: "Time Constraint",
        description: "Permit an action only in a time window, judged by the \
                      timestamp recorded in the including block. Also a \
                      building block for speed bumps and rate limits.",
    },
    Pattern {
        id: "TE",
        name: "Termination",
        description: "Provide a deliberate end-of-life path for a contract — \
                      dedicated shutdown code or selfdestruct — normally \
                      callable only by the owner.",
    },
    Pattern {
        id: "MH",
        name: "Math",
        description: "Perform critical arithmetic through logic that guards \
                      against overflow, underflow, and the other sharp edges \
                      of finite-width integers.",
    },
    Pattern {
        id: "PR",
        name: "Privacy",
        description: "Encrypt sensitive on-chain data to keep it \
                      confidential and to meet legal requirements on stored \
                      personal data.",
    },
    Pattern {
        id: "REU",
        name: "Reusability",
        description: "Prefer audited libraries and templates over fresh \
                      code; use factories to stamp out multiple instances of \
                      a vetted contract.",
    },
    Pattern {
        id: "MU",
        name: "Mutex",
        description: "Guard a resource with a lock so an external call \
                      cannot re-enter its calling function before the first \
                      invocation finishes.",
    },
    Pattern {
        id: "SB",
        name: "Speed Bump",
        description: "Slow down sensitive operations — withdrawal delays, \
                      per-day caps — so an attack in progress does bounded \
                      damage and leaves time to react.",
    },
];

static ITEMS: [ChecklistItem; 32] = [
    // ----------------------------------------------------------- design --
    ChecklistItem {
        item_id: "DES-01",
        phase: Phase::Design,
        title: "Include fail-safe mechanisms",
        description: "Plan for discovered bugs: include an emergency stop an \
                      authenticated party can trigger to disable sensitive \
                      functions, and consider a proxy so calls can be \
                      forwarded to a fixed replacement contract.",
        pattern_ids: &["SB", "RL", "TE", "PD", "OW"],
        automation: &["D02"],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "DES-02",
        phase: Phase::Design,
        title: "Never assume that a contract has zero balance",
        description: "Do not write invariants that compare the contract's \
                      balance exactly: anyone can force ether into an \
                      account, and nothing can prevent it.",
        pattern_ids: &["CEI", "MH", "GC"],
        automation: &["D01"],
        manual_required: false,
    },
    ChecklistItem {
        item_id: "DES-03",
        phase: Phase::Design,
        title: "State Channel / Off-chain Support",
        description: "When per-transaction fees or latency are out of \
                      proportion to the value moved, run the interaction \
                      off-chain and commit the batched result in a single \
                      transaction.",
        pattern_ids: &["RL"],
        automation: &[],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "DES-04",
        phase: Phase::Design,
        title: "Limit the amount of ether",
        description: "A bug in the code, the compiler, or the platform can \
                      strand whatever the contract holds, so cap the balance \
                      — and pay out only through explicit withdrawals made \
                      by the beneficiary.",
        pattern_ids: &["RL", "BL", "AU"],
        automation: &[],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "DES-05",
        phase: Phase::Design,
        title: "Beware of transaction ordering",
        description: "Block producers choose the order of transactions that \
                      arrive close together; logic that assumes \
                      invocation-time order invites race conditions.",
        pattern_ids: &["TC"],
        automation: &[],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "DES-06",
        phase: Phase::Design,
        title: "Be careful with multiple inheritance",
        description: "Method resolution linearizes base contracts from right \
                      to left; repeated overrides across a deep hierarchy \
                      can interact in surprising ways, so keep hierarchies \
                      shallow and know the resolution order.",
        pattern_ids: &["PD", "REU"],
        automation: &["D04"],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "DES-07",
        phase: Phase::Design,
        title: "Use trustworthy dependencies",
        description: "Depend on audited, widely used contracts and \
                      libraries; the less new code written, the less there \
                      is to get wrong.",
        pattern_ids: &["REU"],
        automation: &[],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "DES-08",
        phase: Phase::Design,
        title: "Withdrawal from Contracts / Pull over Push",
        description: "Never push ether or tokens to an address as a side \
                      effect; record the entitlement and let the recipient \
                      withdraw it in a transaction they initiate.",
        pattern_ids: &["CEI"],
        automation: &["D03"],
        manual_required: true,
    },
    // ----------------------------------------------------------- coding --
    ChecklistItem {
        item_id: "COD-01",
        phase: Phase::Coding,
        title: "Be careful with external calls",
        description: "Avoid external calls where possible. When a low-level \
                      call is unavoidable, handle its failure by checking \
                      the returned flag, avoid batching several transfers \
                      into one transaction, and name untrusted interfaces so \
                      the danger is visible at the call site.",
        pattern_ids: &["CEI", "MU", "GC"],
        automation: &["C01"],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "COD-02",
        phase: Phase::Coding,
        title: "Beware of re-entrancy",
        description: "Never leave a function callable again before its first \
                      invocation finishes: commit state changes before any \
                      external call, or hold a mutex across the interaction.",
        pattern_ids: &["CEI", "MU"],
        automation: &["C02"],
        manual_required: false,
    },
    ChecklistItem {
        item_id: "COD-03",
        phase: Phase::Coding,
        title: "Embed addresses to grant permissions",
        description: "Critical functions must be callable only by a known \
                      set of privileged addresses — typically the owner — \
                      including, above all, the function that changes who \
                      the owner is.",
        pattern_ids: &["AU", "OW"],
        automation: &["C03"],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "COD-04",
        phase: Phase::Coding,
        title: "Use hash secrets to grant permissions",
        description: "When the privileged parties' addresses are unknown at \
                      development time, require the hash of a secret \
                      instead: the contract checks the hash, and the secret \
                      is delivered off-chain to whoever is being authorized.",
        pattern_ids: &["AU"],
        automation: &[],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "COD-05",
        phase: Phase::Coding,
        title: "Use multi-signature",
        description: "For actions that matter, name a set of authorizing \
                      addresses and require signatures from a quorum rather \
                      than any single key.",
        pattern_ids: &["AU", "OW"],
        automation: &[],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "COD-06",
        phase: Phase::Coding,
        title: "Avoid using tx.origin for authorizations",
        description: "tx.origin names the account that started the \
                      transaction, not the immediate caller, so any contract \
                      a victim interacts with can relay calls that pass a \
                      tx.origin check. Authorize msg.sender instead.",
        pattern_ids: &["AU"],
        automation: &["C04"],
        manual_required: false,
    },
    ChecklistItem {
        item_id: "COD-07",
        phase: Phase::Coding,
        title: "Encrypt on-chain data",
        description: "Blockchain state is public; encrypt stored data that \
                      competitors or the law require to stay confidential.",
        pattern_ids: &["PR"],
        automation: &[],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "COD-08",
        phase: Phase::Coding,
        title: "Hash objects for tracking off-chain data",
        description: "Large artifacts do not belong on-chain: store their \
                      hashes instead, which also keeps sensitive content out \
                      of public, permanent storage.",
        pattern_ids: &["PR"],
        automation: &[],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "COD-09",
        phase: Phase::Coding,
        title: "Use platform related standards",
        description: "Follow the ecosystem's application-level standards \
                      (such as the ERC token interfaces) rather than \
                      inventing private conventions.",
        pattern_ids: &["REU"],
        automation: &[],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "COD-10",
        phase: Phase::Coding,
        title: "Prevent overflow and underflow",
        description: "Fixed-width integers wrap: a balance at the maximum \
                      circles to zero and a subtraction below zero lands at \
                      the maximum. Use a checked-math library or a compiler \
                      version with built-in overflow checking.",
        pattern_ids: &["MH", "GC", "REU", "BL"],
        automation: &["C05"],
        manual_required: false,
    },
    ChecklistItem {
        item_id: "COD-11",
        phase: Phase::Coding,
        title: "Beware of rounding errors",
        description: "Integer division rounds toward zero. Check every \
                      truncation for consequences — locked remainders, \
                      skewed shares — and order arithmetic so precision is \
                      lost last.",
        pattern_ids: &["MH", "GC", "REU"],
        automation: &["C06"],
        manual_required: false,
    },
    ChecklistItem {
        item_id: "COD-12",
        phase: Phase::Coding,
        title: "Validate inputs to external and public functions",
        description: "Check arguments before using them: require for \
                      inputs, assert for invariants, revert for everything \
                      that must not proceed.",
        pattern_ids: &["GC"],
        automation: &["C07"],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "COD-13",
        phase: Phase::Coding,
        title: "Prevent unbounded loops",
        description: "Gas grows with every iteration until the block limit \
                      kills the transaction. Fix a maximum iteration count \
                      up front, and split work across transactions when the \
                      data outgrows it.",
        pattern_ids: &["RL", "BL", "TC", "TE"],
        automation: &["C08"],
        manual_required: false,
    },
    ChecklistItem {
        item_id: "COD-14",
        phase: Phase::Coding,
        title: "Provide fallback functions",
        description: "The fallback runs on unmatched selectors and plain \
                      ether sends: mark it payable, give it no arguments and \
                      no return values, keep it external and minimal — and \
                      if it exists only to log received ether, require that \
                      msg.data is empty.",
        pattern_ids: &["CEI", "MU", "GC"],
        automation: &["C09"],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "COD-15",
        phase: Phase::Coding,
        title: "Check if built-in variables or functions were overridden",
        description: "Declarations may reuse the names of built-in globals, \
                      silently changing what the name means for all code in \
                      scope — audit every contract you call for overridden \
                      built-ins.",
        pattern_ids: &["GC"],
        automation: &["C10"],
        manual_required: false,
    },
    ChecklistItem {
        item_id: "COD-16",
        phase: Phase::Coding,
        title: "Use interface type instead of the address for type safety",
        description: "When a function takes the address of a contract, \
                      declare the parameter with the interface or contract \
                      type: every call through it then gets compiler \
                      checking.",
        pattern_ids: &["GC"],
        automation: &["C11"],
        manual_required: false,
    },
    ChecklistItem {
        item_id: "COD-17",
        phase: Phase::Coding,
        title: "Be careful with randomness",
        description: "A deterministic machine has no entropy of its own, \
                      and block fields are producer-influenced. For anything \
                      that matters, use commit-reveal schemes or an external \
                      randomness source rather than pseudo-randomness.",
        pattern_ids: &["OR", "REU"],
        automation: &["C12"],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "COD-18",
        phase: Phase::Coding,
        title: "Be careful with Timestamp",
        description: "Block timestamps can be shifted by the producer within \
                      a window of seconds: acceptable for auction endings \
                      and registration periods that tolerate ~30s of drift, \
                      unacceptable as precision clocks — and block numbers \
                      are not timestamps either.",
        pattern_ids: &["TC"],
        automation: &["C13"],
        manual_required: false,
    },
    // ---------------------------------------------------------- testing --
    ChecklistItem {
        item_id: "TST-01",
        phase: Phase::Testing,
        title: "Fix compiler warnings",
        description: "Treat warnings as findings and fix them; build with a \
                      current compiler so newly introduced warnings are \
                      heard at all.",
        pattern_ids: &[],
        automation: &[],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "TST-02",
        phase: Phase::Testing,
        title: "Lock programs to specific compiler version",
        description: "Deploy with exactly the compiler version and flags the \
                      tests ran against; a floating pragma invites bugs no \
                      test has ever seen.",
        pattern_ids: &[],
        automation: &["T01"],
        manual_required: false,
    },
    ChecklistItem {
        item_id: "TST-03",
        phase: Phase::Testing,
        title: "Enforce invariants with assert",
        description: "Assert properties that must never fail so violations \
                      trip loudly. Pair assert guards with a pause or \
                      upgrade path, or a failing assertion can brick the \
                      contract.",
        pattern_ids: &[],
        automation: &["T02"],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "TST-04",
        phase: Phase::Testing,
        title: "Develop unit testing",
        description: "Reach full coverage and exercise the critical edge \
                      cases; never deploy code fresh from the editor, least \
                      of all code written against a deadline.",
        pattern_ids: &[],
        automation: &[],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "TST-05",
        phase: Phase::Testing,
        title: "Use frameworks for testing",
        description: "Test with an established contract-testing framework \
                      rather than scaffolding from scratch.",
        pattern_ids: &[],
        automation: &[],
        manual_required: true,
    },
    ChecklistItem {
        item_id: "TST-06",
        phase: Phase::Testing,
        title: "Use test networks",
        description: "Before the main network, run the contract on a public \
                      test network or a locally configured private one.",
        pattern_ids: &[],
        automation: &[],
        manual_required: true,
    },
];

static APPENDIX: [AppendixEntry; 6] = [
    AppendixEntry {
        name: "Publisher-Subscriber",
        description: "When one contract's state change must trigger work in \
                      another, let producers publish messages that \
                      subscribing contracts receive, instead of every \
                      interested party polling and filtering.",
    },
    AppendixEntry {
        name: "Tokenisation",
        description: "Represent digital or physical services as tokens, \
                      using the standard token interfaces rather than \
                      bespoke ones.",
    },
    AppendixEntry {
        name: "X-confirmation",
        description: "Treat a transaction as final only after enough further \
                      blocks have been added that a fork replacing it is \
                      improbable; how many depends on the chain.",
    },
    AppendixEntry {
        name: "Contract Registry",
        description: "When collaborating contracts are upgraded over time, \
                      keep a registry mapping each contract to its latest \
                      address and resolve through it before every \
                      invocation.",
    },
    AppendixEntry {
        name: "Eternal Storage / Data Contract",
        description: "Keep data and logic in separate contracts so replacing \
                      the logic does not force a data migration.",
    },
    AppendixEntry {
        name: "Abstract Factory",
        description: "When a system works with families of related \
                      contracts, define an abstract factory that creates \
                      them, keeping the system independent of the concrete \
                      variants.",
    },
];
