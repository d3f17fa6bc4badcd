//! Static analysis and security-assurance checklists for Solidity contracts.
//!
//! `scchecklist` parses a practical subset of Solidity (the 0.5–0.8 language
//! window), runs a catalog of nineteen security rules over the parsed
//! contracts, and folds the findings into a three-phase security checklist
//! (design, coding, testing & deployment). Each checklist item is linked to
//! the abstract security patterns it exercises, so a finding is always
//! traceable to the practice it violates.
//!
//! The pipeline is strictly layered:
//!
//! 1. [`lexer`] / [`parser`] — source text to a span-annotated AST
//!    ([`ast::SourceUnit`]). Files that fail to parse are reported and
//!    excluded from analysis; no rule ever sees a partially understood AST.
//! 2. [`semantics`] — per-file analysis context: C3 inheritance
//!    linearization, symbol tables, per-function control-flow graphs, call
//!    classification, and state read/write sets.
//! 3. [`rules`] — the rule catalog and engine producing [`rules::Diagnostic`]
//!    values with stable ids, severities, and pattern linkage.
//! 4. [`checklist`] — the embedded checklist manifest, scan configuration,
//!    and the evaluator that turns diagnostics plus manual answers into
//!    per-item statuses.
//! 5. [`report`] — deterministic text, JSON, and markdown renderings.
//!
//! Everything below the CLI is pure: scanning the same bytes with the same
//! configuration yields byte-identical reports.

pub mod ast;
pub mod checklist;
pub mod cli;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod report;
pub mod rules;
pub mod scan;
pub mod semantics;
pub mod span;
pub mod version;

pub use rules::{Diagnostic, Severity};
pub use span::Span;
