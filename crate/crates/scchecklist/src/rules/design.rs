//! Design-phase rules: D01 strict balance equality, D02 missing circuit
//! breaker, D03 push payment in a loop, D04 inheritance linearization
//! hazard.

use super::{is_call_to, is_own_balance, mentions_msg_sender, Diagnostic, RuleCtx};
use crate::ast::*;
use crate::printer::expr_to_string;
use crate::semantics::CallKind;
use std::collections::{BTreeMap, BTreeSet};

/// D01: `==` / `!=` against the contract's own balance.
pub(super) fn strict_balance_equality(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (_, _, block) in r.bodies() {
        for stmt in &block.statements {
            stmt.walk_expressions(&mut |e| {
                if let Expression::Binary { op, left, right, span } = e {
                    if matches!(op, BinaryOp::Eq | BinaryOp::Ne)
                        && (is_own_balance(left) || is_own_balance(right))
                    {
                        out.push(r.diag(
                            "D01",
                            *span,
                            format!(
                                "strict `{}` comparison against the contract's own balance; \
                                 ether can be forced in, so use `>=`/`<=` bounds instead",
                                if *op == BinaryOp::Eq { "==" } else { "!=" }
                            ),
                            Vec::new(),
                        ));
                    }
                }
            });
        }
    }
    out
}

/// D02: contract with state-mutating entry points but no pause flag and no
/// guarded selfdestruct.
pub(super) fn missing_circuit_breaker(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for contract in &r.ctx.unit.contracts {
        if contract.kind != ContractKind::Contract {
            continue;
        }
        let mutates_publicly = contract.functions.iter().any(|f| {
            super::is_externally_reachable(f)
                && f.body.is_some()
                && r.ctx
                    .effects_for(f.span)
                    .is_some_and(|fx| !fx.writes.is_empty())
        });
        if !mutates_publicly {
            continue;
        }
        if has_boolean_gate(r, contract) || has_guarded_selfdestruct(r, contract) {
            continue;
        }
        out.push(r.diag(
            "D02",
            contract.name_span,
            format!(
                "contract `{}` changes state through public entry points but has no \
                 circuit breaker (no owner-gated pause flag and no guarded selfdestruct)",
                contract.name
            ),
            Vec::new(),
        ));
    }
    out
}

/// A boolean state variable tested in a modifier body or a require argument,
/// anywhere along the contract's linearization.
fn has_boolean_gate(r: &RuleCtx<'_>, contract: &ContractDef) -> bool {
    let flags: BTreeSet<&str> = r
        .ctx
        .symbols
        .state_vars
        .get(&contract.name)
        .map(|vars| {
            vars.values()
                .filter(|v| v.type_name.is_bool())
                .map(|v| v.name.as_str())
                .collect()
        })
        .unwrap_or_default();
    if flags.is_empty() {
        return false;
    }
    for ancestor in r.ctx.linearization_of(&contract.name) {
        let Some(def) = r.ctx.contracts.get(&ancestor) else { continue };
        for m in &def.modifiers {
            let Some(body) = &m.body else { continue };
            for stmt in &body.statements {
                let mut hit = false;
                stmt.walk_expressions(&mut |e| {
                    if let Expression::Identifier { name, .. } = e {
                        if flags.contains(name.as_str()) {
                            hit = true;
                        }
                    }
                });
                if hit {
                    return true;
                }
            }
        }
        for f in &def.functions {
            let Some(body) = &f.body else { continue };
            for stmt in &body.statements {
                let mut hit = false;
                stmt.walk_expressions(&mut |e| {
                    if let Some(args) = is_call_to(e, "require") {
                        for a in args {
                            a.walk(&mut |inner| {
                                if let Expression::Identifier { name, .. } = inner {
                                    if flags.contains(name.as_str()) {
                                        hit = true;
                                    }
                                }
                            });
                        }
                    }
                });
                if hit {
                    return true;
                }
            }
        }
    }
    false
}

/// A selfdestruct call inside a function that shows access-control evidence
/// (a modifier, or any require/if mentioning msg.sender).
fn has_guarded_selfdestruct(r: &RuleCtx<'_>, contract: &ContractDef) -> bool {
    for ancestor in r.ctx.linearization_of(&contract.name) {
        let Some(def) = r.ctx.contracts.get(&ancestor) else { continue };
        for f in &def.functions {
            let Some(body) = &f.body else { continue };
            let mut has_selfdestruct = false;
            let mut mentions_sender = false;
            for stmt in &body.statements {
                stmt.walk_expressions(&mut |e| {
                    if is_call_to(e, "selfdestruct").is_some()
                        || is_call_to(e, "suicide").is_some()
                    {
                        has_selfdestruct = true;
                    }
                    if mentions_msg_sender(e) {
                        mentions_sender = true;
                    }
                });
            }
            if has_selfdestruct && (!f.modifiers.is_empty() || mentions_sender) {
                return true;
            }
        }
    }
    false
}

/// D03: value-bearing transfer inside a loop body.
pub(super) fn push_payment_in_loop(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (_, func) in r.functions() {
        let Some(cfg) = r.ctx.cfg_for(func) else { continue };
        for site in r.ctx.calls_for(func.span) {
            let pays = site.kind == CallKind::ValueTransfer
                || (site.kind == CallKind::LowLevel && site.carries_value);
            if !pays {
                continue;
            }
            let Some(stmt) = cfg.stmt_for_span(site.stmt_span) else { continue };
            let (block, _) = cfg.stmt_blocks[stmt.0];
            if cfg.in_cycle(block) {
                out.push(r.diag(
                    "D03",
                    site.span,
                    format!(
                        "ether is pushed to `{}` inside a loop; one failing recipient \
                         blocks the rest — prefer pull-payment withdrawals",
                        receiver_of(&site.callee)
                    ),
                    Vec::new(),
                ));
            }
        }
    }
    out
}

/// Best-effort receiver description for a payment call.
fn receiver_of(callee: &Expression) -> String {
    match callee {
        Expression::MemberAccess { base, .. } => expr_to_string(base),
        other => expr_to_string(other),
    }
}

/// D04: with ≥2 bases, a function/modifier name defined in more than one
/// linearized ancestor makes behavior depend on the linearization order.
pub(super) fn c3_hazard(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for contract in &r.ctx.unit.contracts {
        if contract.bases.len() < 2 {
            continue;
        }
        let order = r.ctx.linearization_of(&contract.name);
        let mut definers: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for ancestor in &order {
            let Some(def) = r.ctx.contracts.get(ancestor.as_str()) else { continue };
            for f in &def.functions {
                if f.kind == FunctionKind::Regular && f.body.is_some() {
                    definers.entry(f.name.as_str()).or_default().push(ancestor);
                }
            }
            for m in &def.modifiers {
                definers.entry(m.name.as_str()).or_default().push(ancestor);
            }
        }
        let collisions: Vec<String> = definers
            .iter()
            .filter(|(_, owners)| owners.len() > 1)
            .map(|(name, owners)| format!("`{}` (in {})", name, owners.join(", ")))
            .collect();
        if collisions.is_empty() {
            continue;
        }
        out.push(r.diag(
            "D04",
            contract.name_span,
            format!(
                "`{}` inherits the same member name from several ancestors: {}; \
                 resolution order is {} — confirm the base order is intended",
                contract.name,
                collisions.join(", "),
                order.join(", ")
            ),
            Vec::new(),
        ));
    }
    out
}
