//! Coding-phase rules C01–C13.

use super::{
    is_block_member, is_call_to, is_externally_reachable, is_own_balance, literal_value,
    mentions_msg_sender, Diagnostic, RuleCtx, Severity,
};
use crate::ast::*;
use crate::semantics::cfg::Cfg;
use crate::semantics::effects::StateEffect;
use crate::semantics::symbols::SymbolKind;
use crate::semantics::{CallKind, CallSite};
use crate::span::Span;
use crate::version::Version;
use std::collections::{BTreeMap, BTreeSet};

/// C01: low-level call whose result is discarded.
pub(super) fn unchecked_low_level_call(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (_, span, _) in r.bodies() {
        for site in r.ctx.calls_for(span) {
            if site.kind == CallKind::LowLevel && !site.result_used {
                let name = site.member.as_deref().unwrap_or("call");
                out.push(r.diag(
                    "C01",
                    site.span,
                    format!(
                        "the boolean result of `{name}` is ignored; a failed call \
                         continues silently — check it or use transfer/revert"
                    ),
                    Vec::new(),
                ));
            }
        }
    }
    out
}

/// Every (external call span, follower span) pair where the follower — a
/// state write or another external call — can execute strictly after the
/// call. Reachability is over CFG edges including loop-backs, at statement
/// granularity: a write in the same statement as the call is not "after" it.
pub fn detect_cei_violation(
    cfg: &Cfg,
    calls: &[CallSite],
    effects: &StateEffect,
) -> Vec<(Span, Span)> {
    let externals: Vec<&CallSite> = calls.iter().filter(|c| c.kind.is_external()).collect();
    let mut pairs = Vec::new();
    for call in &externals {
        let Some(call_stmt) = cfg.stmt_for_span(call.stmt_span) else { continue };
        for write in &effects.writes {
            let Some(write_stmt) = cfg.stmt_for_span(write.stmt_span) else { continue };
            if cfg.may_follow(call_stmt, write_stmt) {
                pairs.push((call.span, write.span));
            }
        }
        for other in &externals {
            if other.span == call.span {
                continue;
            }
            let Some(other_stmt) = cfg.stmt_for_span(other.stmt_span) else { continue };
            if cfg.may_follow(call_stmt, other_stmt) {
                pairs.push((call.span, other.span));
            }
        }
    }
    pairs.sort_by_key(|(a, b)| (a.start, a.end, b.start, b.end));
    pairs.dedup();
    pairs
}

/// C02: state write (or second external call) reachable after an external
/// call. One diagnostic per offending call site.
pub(super) fn reentrancy_cei(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (_, func) in r.functions() {
        let Some(cfg) = r.ctx.cfg_for(func) else { continue };
        let calls = r.ctx.calls_for(func.span);
        let Some(effects) = r.ctx.effects_for(func.span) else { continue };
        let pairs = detect_cei_violation(cfg, calls, effects);
        if pairs.is_empty() {
            continue;
        }
        let call_spans: BTreeSet<Span> = calls.iter().map(|c| c.span).collect();
        let mut grouped: BTreeMap<Span, Vec<Span>> = BTreeMap::new();
        for (call, follower) in pairs {
            grouped.entry(call).or_default().push(follower);
        }
        for (call_span, followers) in grouped {
            let writes = followers.iter().filter(|s| !call_spans.contains(s)).count();
            let recalls = followers.len() - writes;
            let mut what = Vec::new();
            if writes > 0 {
                what.push(format!(
                    "{writes} state write{}",
                    if writes == 1 { "" } else { "s" }
                ));
            }
            if recalls > 0 {
                what.push(format!(
                    "{recalls} further external call{}",
                    if recalls == 1 { "" } else { "s" }
                ));
            }
            let mut evidence = vec![call_span];
            evidence.extend(followers.iter().copied());
            out.push(r.diag(
                "C02",
                call_span,
                format!(
                    "external call can be followed by {}; commit state changes \
                     before interacting with other contracts",
                    what.join(" and ")
                ),
                evidence,
            ));
        }
    }
    out
}

/// C03: critical operation without a modifier and without a dominating
/// msg.sender guard. Constructors are exempt — they run once, for the
/// deployer.
pub(super) fn missing_access_control(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    let owner_re = match r.config.owner_regex() {
        Ok(re) => re,
        Err(_) => return Vec::new(),
    };
    let mut out = Vec::new();
    for (_, func) in r.functions() {
        if func.kind == FunctionKind::Constructor || !is_externally_reachable(func) {
            continue;
        }
        let Some(body) = &func.body else { continue };
        if !func.modifiers.is_empty() {
            // Any modifier is taken as access-control evidence; its body is
            // part of the function for this purpose.
            continue;
        }
        let Some(cfg) = r.ctx.cfg_for(func) else { continue };

        // Critical statements: (diagnostic span, carrying stmt span, what).
        let mut criticals: BTreeMap<Span, (Span, String)> = BTreeMap::new();
        for site in r.ctx.calls_for(func.span) {
            if let Expression::Identifier { name, .. } = &site.callee {
                if name == "selfdestruct" || name == "suicide" {
                    criticals.insert(
                        site.span,
                        (site.stmt_span, format!("calls {name}")),
                    );
                    continue;
                }
            }
            if site.carries_value && call_moves_whole_balance(body, site) {
                criticals.insert(
                    site.span,
                    (site.stmt_span, "transfers the entire contract balance".to_string()),
                );
            }
        }
        if let Some(effects) = r.ctx.effects_for(func.span) {
            for w in &effects.writes {
                if owner_re.is_match(&w.var) {
                    criticals.insert(
                        w.span,
                        (w.stmt_span, format!("assigns the owner-like variable `{}`", w.var)),
                    );
                }
            }
        }
        if criticals.is_empty() {
            continue;
        }

        let guard_stmts = collect_sender_guards(body);
        let dom = cfg.dominators();
        for (diag_span, (stmt_span, what)) in criticals {
            let Some(crit) = cfg.stmt_for_span(stmt_span) else { continue };
            let (crit_block, crit_pos) = cfg.stmt_blocks[crit.0];
            let guarded = guard_stmts.iter().any(|g| {
                let Some(gid) = cfg.stmt_for_span(*g) else { return false };
                let (gb, gp) = cfg.stmt_blocks[gid.0];
                if gb == crit_block {
                    gp < crit_pos
                } else {
                    dom[crit_block.0].contains(&gb)
                }
            });
            if !guarded {
                let fname = if func.name.is_empty() { "<fallback>" } else { &func.name };
                out.push(r.diag(
                    "C03",
                    diag_span,
                    format!(
                        "`{fname}` {what} but is callable by anyone: no modifier and \
                         no require/if on msg.sender precedes it"
                    ),
                    Vec::new(),
                ));
            }
        }
    }
    out
}

/// Statements usable as access-control guards: require/assert mentioning
/// msg.sender, or an `if` whose condition mentions it.
fn collect_sender_guards(body: &Block) -> Vec<Span> {
    let mut guards = Vec::new();
    for stmt in &body.statements {
        stmt.walk(&mut |s| match s {
            Statement::Expression { expr, span } => {
                for name in ["require", "assert"] {
                    if let Some(args) = is_call_to(expr, name) {
                        if args.iter().any(mentions_msg_sender) {
                            guards.push(*span);
                        }
                    }
                }
            }
            Statement::If { condition, span, .. } => {
                if mentions_msg_sender(condition) {
                    guards.push(*span);
                }
            }
            _ => {}
        });
    }
    guards
}

/// Does this value-bearing call move `address(this).balance`?
fn call_moves_whole_balance(body: &Block, site: &CallSite) -> bool {
    let Some(Expression::Call { callee, options, args, .. }) =
        super::find_call_in_block(body, site.span)
    else {
        return false;
    };
    let mut found = false;
    let mut check = |e: &Expression| {
        e.walk(&mut |n| {
            if is_own_balance(n) {
                found = true;
            }
        })
    };
    // The legacy `.value(x)` layer lives inside the callee expression.
    check(&callee);
    for (_, v) in &options {
        check(v);
    }
    for a in &args {
        check(a);
    }
    found
}

/// C04: every tx.origin read. Reads inside require/assert arguments or `if`
/// conditions keep the rule's error severity; other reads downgrade to
/// warning.
pub(super) fn tx_origin_auth(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (_, _, block) in r.bodies() {
        for stmt in &block.statements {
            stmt.walk(&mut |s| {
                let in_if = matches!(s, Statement::If { .. });
                for e in s.own_expressions() {
                    scan_tx_origin(e, in_if, &mut |span, in_auth| {
                        let mut d = r.diag(
                            "C04",
                            span,
                            if in_auth {
                                "tx.origin used as an authorization check; any contract \
                                 the victim calls can relay and pass it — use msg.sender"
                                    .to_string()
                            } else {
                                "tx.origin is read; it names the transaction originator, \
                                 not the caller, and invites phishing-style relays"
                                    .to_string()
                            },
                            Vec::new(),
                        );
                        if !in_auth {
                            d.severity = Severity::Warning;
                        }
                        out.push(d);
                    });
                }
            });
        }
    }
    out
}

fn scan_tx_origin(expr: &Expression, in_auth: bool, hit: &mut impl FnMut(Span, bool)) {
    match expr {
        Expression::MemberAccess { base, member, span, .. } => {
            if member == "origin"
                && matches!(base.as_ref(), Expression::Identifier { name, .. } if name == "tx")
            {
                hit(*span, in_auth);
            } else {
                scan_tx_origin(base, in_auth, hit);
            }
        }
        Expression::Call { callee, options, args, .. } => {
            let is_guard = matches!(
                callee.as_ref(),
                Expression::Identifier { name, .. } if name == "require" || name == "assert"
            );
            scan_tx_origin(callee, in_auth, hit);
            for (_, v) in options {
                scan_tx_origin(v, in_auth, hit);
            }
            for a in args {
                scan_tx_origin(a, in_auth || is_guard, hit);
            }
        }
        Expression::IndexAccess { base, index, .. } => {
            scan_tx_origin(base, in_auth, hit);
            scan_tx_origin(index, in_auth, hit);
        }
        Expression::TypeCast { arg, .. } => scan_tx_origin(arg, in_auth, hit),
        Expression::Binary { left, right, .. } => {
            scan_tx_origin(left, in_auth, hit);
            scan_tx_origin(right, in_auth, hit);
        }
        Expression::Unary { operand, .. } => scan_tx_origin(operand, in_auth, hit),
        Expression::Assignment { lhs, rhs, .. } => {
            scan_tx_origin(lhs, in_auth, hit);
            scan_tx_origin(rhs, in_auth, hit);
        }
        Expression::Conditional { condition, true_expr, false_expr, .. } => {
            scan_tx_origin(condition, in_auth, hit);
            scan_tx_origin(true_expr, in_auth, hit);
            scan_tx_origin(false_expr, in_auth, hit);
        }
        Expression::Tuple { components, .. } => {
            for c in components.iter().flatten() {
                scan_tx_origin(c, in_auth, hit);
            }
        }
        Expression::Identifier { .. }
        | Expression::NumberLiteral { .. }
        | Expression::StringLiteral { .. }
        | Expression::BoolLiteral { .. }
        | Expression::New { .. } => {}
    }
}

/// C05: overflow-prone arithmetic. Pre-0.8 pragmas (or no pragma): all
/// `+ - * **` outside safe-math contracts; 0.8+ pragmas: arithmetic inside
/// `unchecked` blocks.
pub(super) fn unchecked_arithmetic(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    let safemath_re = match r.config.safemath_regex() {
        Ok(re) => re,
        Err(_) => return Vec::new(),
    };
    let allows_pre_08 = match r.ctx.unit.solidity_constraint() {
        // An unparseable constraint is treated as unlocked.
        Some(p) => p
            .constraint
            .as_ref()
            .map(|c| c.allows_below(Version::new(0, 8, 0)))
            .unwrap_or(true),
        None => true,
    };
    let mut out = Vec::new();
    let mut seen: BTreeSet<Span> = BTreeSet::new();

    if allows_pre_08 {
        for (contract, _, block) in r.bodies() {
            if contract_uses_safemath(r, contract, &safemath_re) {
                continue;
            }
            for stmt in &block.statements {
                stmt.walk_expressions(&mut |e| {
                    if let Some(span) = overflow_candidate(e) {
                        if seen.insert(span) {
                            out.push(r.diag(
                                "C05",
                                span,
                                "arithmetic can wrap silently on pre-0.8 compilers; \
                                 use a checked-math library or pin the pragma to 0.8+"
                                    .to_string(),
                                Vec::new(),
                            ));
                        }
                    }
                });
            }
        }
    } else {
        for (_, _, block) in r.bodies() {
            for stmt in &block.statements {
                stmt.walk(&mut |s| {
                    if let Statement::Unchecked { block: inner, .. } = s {
                        for is in &inner.statements {
                            is.walk_expressions(&mut |e| {
                                if let Some(span) = overflow_candidate(e) {
                                    if seen.insert(span) {
                                        out.push(r.diag(
                                            "C05",
                                            span,
                                            "arithmetic inside `unchecked` wraps on \
                                             overflow; confirm the bounds are proven"
                                                .to_string(),
                                            Vec::new(),
                                        ));
                                    }
                                }
                            });
                        }
                    }
                });
            }
        }
    }
    out
}

/// An overflow-relevant binary node: `+ - * **` with at least one
/// non-literal operand.
fn overflow_candidate(e: &Expression) -> Option<Span> {
    if let Expression::Binary { op, left, right, span } = e {
        let arithmetic = matches!(
            op,
            BinaryOp::Add | BinaryOp::Sub | BinaryOp::Mul | BinaryOp::Pow
        );
        let literal = |x: &Expression| {
            matches!(
                x,
                Expression::NumberLiteral { .. }
                    | Expression::StringLiteral { .. }
                    | Expression::BoolLiteral { .. }
            )
        };
        if arithmetic && !(literal(left) && literal(right)) {
            return Some(*span);
        }
    }
    None
}

fn contract_uses_safemath(r: &RuleCtx<'_>, contract: &ContractDef, re: &regex::Regex) -> bool {
    for ancestor in r.ctx.linearization_of(&contract.name) {
        let Some(def) = r.ctx.contracts.get(ancestor.as_str()) else { continue };
        for u in &def.using_directives {
            let integer_target =
                u.target == "*" || u.target.contains("uint") || u.target.contains("int");
            if integer_target && re.is_match(&u.library) {
                return true;
            }
        }
    }
    false
}

/// C06: multiplication with a division as a direct operand.
pub(super) fn divide_before_multiply(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (_, _, block) in r.bodies() {
        for stmt in &block.statements {
            stmt.walk_expressions(&mut |e| {
                if let Expression::Binary { op: BinaryOp::Mul, left, right, span } = e {
                    let division = |x: &Expression| {
                        matches!(x, Expression::Binary { op: BinaryOp::Div, .. })
                    };
                    if division(left) || division(right) {
                        out.push(r.diag(
                            "C06",
                            *span,
                            "division happens before multiplication; integer division \
                             rounds down, so multiply first to keep precision"
                                .to_string(),
                            Vec::new(),
                        ));
                    }
                }
            });
        }
    }
    out
}

/// C07: externally reachable function none of whose parameters is validated
/// before its first other use.
pub(super) fn missing_input_validation(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (_, func) in r.functions() {
        if func.kind != FunctionKind::Regular || !is_externally_reachable(func) {
            continue;
        }
        let Some(body) = &func.body else { continue };
        let named: Vec<&Parameter> =
            func.params.iter().filter(|p| p.name.is_some()).collect();
        if named.is_empty() {
            continue;
        }

        let validation_spans = collect_validation_spans(body);
        let any_validated = named.iter().any(|p| {
            let decl = p.name_span;
            let mut first_validated: Option<usize> = None;
            let mut first_other: Option<usize> = None;
            for (use_span, res) in &r.ctx.symbols.resolutions {
                if res.kind != SymbolKind::Param || res.decl_span != Some(decl) {
                    continue;
                }
                let inside_validation =
                    validation_spans.iter().any(|v| v.contains(use_span));
                let slot = if inside_validation { &mut first_validated } else { &mut first_other };
                if slot.is_none_or(|cur| use_span.start < cur) {
                    *slot = Some(use_span.start);
                }
            }
            match (first_validated, first_other) {
                (Some(v), Some(o)) => v < o,
                (Some(_), None) => true,
                _ => false,
            }
        });
        if !any_validated {
            out.push(r.diag(
                "C07",
                func.name_span,
                format!(
                    "`{}` takes {} parameter{} but validates none of them with \
                     require/assert or a guarded revert before use",
                    func.name,
                    named.len(),
                    if named.len() == 1 { "" } else { "s" }
                ),
                Vec::new(),
            ));
        }
    }
    out
}

/// Spans whose contents count as validation: require/assert arguments and
/// conditions of `if` statements that lead to a revert.
fn collect_validation_spans(body: &Block) -> Vec<Span> {
    let mut spans = Vec::new();
    for stmt in &body.statements {
        stmt.walk(&mut |s| {
            for e in s.own_expressions() {
                e.walk(&mut |node| {
                    for guard in ["require", "assert"] {
                        if let Some(args) = is_call_to(node, guard) {
                            spans.extend(args.iter().map(Expression::span));
                        }
                    }
                });
            }
            if let Statement::If { condition, then_branch, .. } = s {
                if branch_reverts(then_branch) {
                    spans.push(condition.span());
                }
            }
        });
    }
    spans
}

fn branch_reverts(stmt: &Statement) -> bool {
    let mut reverts = false;
    stmt.walk(&mut |s| match s {
        Statement::Revert { .. } => reverts = true,
        Statement::Expression { expr, .. } => {
            if is_call_to(expr, "revert").is_some() {
                reverts = true;
            }
        }
        _ => {}
    });
    reverts
}

/// C08: loop bound tied to a dynamic state array length or a state variable,
/// with no literal cap in the condition.
pub(super) fn unbounded_loop(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (contract, _, block) in r.bodies() {
        for stmt in &block.statements {
            stmt.walk(&mut |s| {
                let condition = match s {
                    Statement::While { condition, .. }
                    | Statement::DoWhile { condition, .. } => Some(condition),
                    Statement::For { condition, .. } => condition.as_ref(),
                    _ => None,
                };
                let Some(cond) = condition else { return };
                if has_literal_comparison(cond) {
                    return;
                }
                if let Some(culprit) = unbounded_culprit(r, contract, cond) {
                    out.push(r.diag(
                        "C08",
                        cond.span(),
                        format!(
                            "loop bound depends on {culprit}, which grows with stored \
                             data; iteration can outgrow the block gas limit — cap it"
                        ),
                        Vec::new(),
                    ));
                }
            });
        }
    }
    out
}

fn has_literal_comparison(cond: &Expression) -> bool {
    let mut found = false;
    cond.walk(&mut |e| {
        if let Expression::Binary { op, left, right, .. } = e {
            if matches!(op, BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge)
                && (matches!(left.as_ref(), Expression::NumberLiteral { .. })
                    || matches!(right.as_ref(), Expression::NumberLiteral { .. }))
            {
                found = true;
            }
        }
    });
    found
}

fn unbounded_culprit(
    r: &RuleCtx<'_>,
    contract: &ContractDef,
    cond: &Expression,
) -> Option<String> {
    let mut culprit = None;
    cond.walk(&mut |e| {
        if culprit.is_some() {
            return;
        }
        match e {
            // `.length` of a dynamically sized state array.
            Expression::MemberAccess { base, member, .. } if member == "length" => {
                if let Some(name) = state_array_name(r, contract, base) {
                    culprit = Some(format!("the length of state array `{name}`"));
                }
            }
            // Comparison against anything reading a state variable.
            Expression::Binary { op, left, right, .. }
                if matches!(
                    op,
                    BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge | BinaryOp::Ne
                ) =>
            {
                for side in [left, right] {
                    if culprit.is_some() {
                        break;
                    }
                    side.walk(&mut |n| {
                        if culprit.is_some() {
                            return;
                        }
                        if let Expression::Identifier { name, span } = n {
                            let is_state = r
                                .ctx
                                .symbols
                                .resolve(*span)
                                .is_some_and(|res| res.kind == SymbolKind::StateVar);
                            if is_state {
                                culprit = Some(format!("state variable `{name}`"));
                            }
                        }
                    });
                }
            }
            _ => {}
        }
    });
    culprit
}

/// Base of a `.length` access, if it bottoms out in a dynamic state array.
fn state_array_name(
    r: &RuleCtx<'_>,
    contract: &ContractDef,
    base: &Expression,
) -> Option<String> {
    let mut e = base;
    loop {
        match e {
            Expression::Identifier { name, span } => {
                let res = r.ctx.symbols.resolve(*span)?;
                if res.kind != SymbolKind::StateVar {
                    return None;
                }
                let info = r.ctx.symbols.state_var(&contract.name, name)?;
                return info.type_name.is_dynamic_array().then(|| name.clone());
            }
            Expression::IndexAccess { base, .. } | Expression::MemberAccess { base, .. } => {
                e = base;
            }
            _ => return None,
        }
    }
}

/// C09: fallback functions that do too much, plus logging-only fallbacks
/// that skip the msg.data emptiness check.
pub(super) fn fallback_hygiene(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    let budget = r.config.thresholds.fallback_max_statements;
    let mut out = Vec::new();
    for (_, func) in r.functions() {
        if func.kind != FunctionKind::Fallback {
            continue;
        }
        let Some(body) = &func.body else { continue };

        let mut statements = 0usize;
        let mut all_emits = true;
        for stmt in &body.statements {
            stmt.walk(&mut |s| {
                if !matches!(s, Statement::Block(_)) {
                    statements += 1;
                    if !matches!(s, Statement::Emit { .. }) {
                        all_emits = false;
                    }
                }
            });
        }

        let mut reasons = Vec::new();
        if !func.returns.is_empty() {
            reasons.push("declares return values".to_string());
        }
        if statements > budget {
            reasons.push(format!("has {statements} statements (budget {budget})"));
        }
        if r.ctx.calls_for(func.span).iter().any(|s| s.is_external()) {
            reasons.push("makes an external call".to_string());
        }
        if !reasons.is_empty() {
            out.push(r.diag(
                "C09",
                func.name_span,
                format!(
                    "fallback function {}; fallbacks run on unknown selectors and \
                     plain sends, so keep them minimal",
                    reasons.join(", ")
                ),
                Vec::new(),
            ));
        }

        if statements > 0 && all_emits && !mentions_msg_data_length(body) {
            let mut d = r.diag(
                "C09",
                func.name_span,
                "logging-only fallback never checks msg.data.length == 0, so typo'd \
                 calls are indistinguishable from plain ether sends"
                    .to_string(),
                Vec::new(),
            );
            d.severity = Severity::Info;
            out.push(d);
        }
    }
    out
}

fn mentions_msg_data_length(body: &Block) -> bool {
    let mut found = false;
    for stmt in &body.statements {
        stmt.walk_expressions(&mut |e| {
            if let Expression::MemberAccess { base, member, .. } = e {
                if member == "length" {
                    if let Expression::MemberAccess { base: inner, member: m2, .. } =
                        base.as_ref()
                    {
                        if m2 == "data"
                            && matches!(inner.as_ref(),
                                Expression::Identifier { name, .. } if name == "msg")
                        {
                            found = true;
                        }
                    }
                }
            }
        });
    }
    found
}

/// C10: declarations named after built-in globals.
pub(super) fn builtin_shadowing(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    r.ctx
        .symbols
        .shadows
        .iter()
        .map(|s| {
            r.diag(
                "C10",
                s.span,
                format!(
                    "{} `{}` shadows the built-in global of the same name; code in \
                     scope now silently means something else",
                    s.declared_as, s.name
                ),
                Vec::new(),
            )
        })
        .collect()
}

/// C11: address parameter cast to a contract type or targeted by a
/// low-level call.
pub(super) fn address_param_interface(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (_, func) in r.functions() {
        let Some(body) = &func.body else { continue };
        for p in &func.params {
            if !p.type_name.is_address() {
                continue;
            }
            let Some(pname) = &p.name else { continue };

            let mut cast_to: Option<String> = None;
            for stmt in &body.statements {
                stmt.walk_expressions(&mut |e| {
                    if cast_to.is_some() {
                        return;
                    }
                    if let Expression::Call { callee, args, .. } = e {
                        if let Expression::Identifier { name, .. } = callee.as_ref() {
                            if r.ctx.known_contracts.contains(name)
                                && args.len() == 1
                                && args[0].mentions_identifier(pname)
                            {
                                cast_to = Some(name.clone());
                            }
                        }
                    }
                });
            }
            let low_level = r.ctx.calls_for(func.span).iter().any(|site| {
                site.kind == CallKind::LowLevel && site.callee.mentions_identifier(pname)
            });

            let usage = match (&cast_to, low_level) {
                (Some(iface), _) => format!("cast to contract type `{iface}`"),
                (None, true) => "the target of a low-level call".to_string(),
                (None, false) => continue,
            };
            out.push(r.diag(
                "C11",
                p.span,
                format!(
                    "parameter `{pname}` is a raw address later {usage}; declaring \
                     the interface type gets compiler checking for free"
                ),
                Vec::new(),
            ));
        }
    }
    out
}

/// C12: block-derived entropy feeding a hash or modulo.
pub(super) fn weak_randomness(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    let mut hits: BTreeMap<Span, &'static str> = BTreeMap::new();
    for (_, _, block) in r.bodies() {
        for stmt in &block.statements {
            stmt.walk_expressions(&mut |e| {
                match e {
                    Expression::Call { callee, args, .. } => {
                        let hashing = matches!(
                            callee.as_ref(),
                            Expression::Identifier { name, .. }
                                if name == "keccak256" || name == "sha256"
                        );
                        if hashing {
                            for a in args {
                                collect_entropy(a, &mut hits);
                            }
                        }
                    }
                    Expression::Binary { op: BinaryOp::Mod, left, right, .. } => {
                        collect_entropy(left, &mut hits);
                        collect_entropy(right, &mut hits);
                    }
                    _ => {}
                }
            });
        }
    }
    hits.into_iter()
        .map(|(span, source)| {
            r.diag(
                "C12",
                span,
                format!(
                    "{source} feeds a randomness computation; block producers \
                     influence it — use an external randomness source"
                ),
                Vec::new(),
            )
        })
        .collect()
}

fn collect_entropy(expr: &Expression, hits: &mut BTreeMap<Span, &'static str>) {
    expr.walk(&mut |n| {
        for member in ["timestamp", "difficulty", "number"] {
            if is_block_member(n, member) {
                let label = match member {
                    "timestamp" => "block.timestamp",
                    "difficulty" => "block.difficulty",
                    _ => "block.number",
                };
                hits.insert(n.span(), label);
            }
        }
        if is_call_to(n, "blockhash").is_some() {
            hits.insert(n.span(), "blockhash(...)");
        }
    });
}

/// C13: timestamp comparisons steering branches, and block-number
/// arithmetic used as a clock.
pub(super) fn timestamp_dependence(r: &RuleCtx<'_>) -> Vec<Diagnostic> {
    let mut branch_hits: BTreeSet<Span> = BTreeSet::new();
    let mut clock_hits: BTreeSet<Span> = BTreeSet::new();
    for (_, _, block) in r.bodies() {
        for stmt in &block.statements {
            stmt.walk(&mut |s| {
                let condition = match s {
                    Statement::If { condition, .. }
                    | Statement::While { condition, .. }
                    | Statement::DoWhile { condition, .. } => Some(condition),
                    Statement::For { condition, .. } => condition.as_ref(),
                    _ => None,
                };
                if let Some(cond) = condition {
                    collect_time_comparisons(cond, &mut branch_hits);
                }
                for e in s.own_expressions() {
                    e.walk(&mut |node| {
                        if let Expression::Conditional { condition, .. } = node {
                            collect_time_comparisons(condition, &mut branch_hits);
                        }
                        if let Some(span) = block_number_clock(node) {
                            clock_hits.insert(span);
                        }
                    });
                }
            });
        }
    }
    let mut out: Vec<Diagnostic> = Vec::new();
    for span in branch_hits {
        out.push(r.diag(
            "C13",
            span,
            "branch is controlled by a block-timestamp comparison; miners can \
             shift the timestamp by several seconds"
                .to_string(),
            Vec::new(),
        ));
    }
    for span in clock_hits {
        out.push(r.diag(
            "C13",
            span,
            "block.number arithmetic is used as a clock; block intervals vary, \
             so derived durations drift"
                .to_string(),
            Vec::new(),
        ));
    }
    out
}

fn collect_time_comparisons(cond: &Expression, hits: &mut BTreeSet<Span>) {
    cond.walk(&mut |e| {
        if let Expression::Binary { op, left, right, span } = e {
            let comparison = matches!(
                op,
                BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge | BinaryOp::Eq | BinaryOp::Ne
            );
            if comparison && (mentions_timestamp(left) || mentions_timestamp(right)) {
                hits.insert(*span);
            }
        }
    });
}

fn mentions_timestamp(expr: &Expression) -> bool {
    let mut found = false;
    expr.walk(&mut |e| {
        if is_block_member(e, "timestamp") {
            found = true;
        }
        if matches!(e, Expression::Identifier { name, .. } if name == "now") {
            found = true;
        }
    });
    found
}

/// `block.number <op> literal(>=2)` — deriving a duration from block counts.
fn block_number_clock(e: &Expression) -> Option<Span> {
    if let Expression::Binary { op, left, right, span } = e {
        if matches!(op, BinaryOp::Add | BinaryOp::Sub | BinaryOp::Mul | BinaryOp::Div) {
            for (a, b) in [(left, right), (right, left)] {
                if is_block_member(a, "number") {
                    if let Expression::NumberLiteral { text, denomination: None, .. } = b.as_ref()
                    {
                        if literal_value(text).is_some_and(|v| v >= 2) {
                            return Some(*span);
                        }
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::testutil::{lines, run_rule};
    use super::detect_cei_violation;
    use crate::parser::parse;
    use crate::rules::Severity;
    use crate::semantics::AnalysisContext;
    use crate::span::Span;

    #[test]
    fn c01_flags_low_level_calls_with_ignored_results() {
        let src = "contract A {\n\
                   function f(address t) public {\n\
                   t.call(\"\");\n\
                   bool ok = t.call(\"\");\n\
                   require(ok);\n\
                   t.transfer(1);\n\
                   if (t.send(2)) {}\n\
                   t.send(3);\n\
                   }\n\
                   }\n";
        let diags = run_rule(src, "C01");
        assert_eq!(lines(&diags), vec![3, 8]);
        assert!(diags[0].message.contains("`call`"));
        assert!(diags[1].message.contains("`send`"));
        assert!(diags.iter().all(|d| d.severity == Severity::Error));
    }

    /// Pairs reported by the core reachability check for one function,
    /// reduced to (call line, follower line).
    fn cei_pairs(src: &str, contract: usize, func: usize) -> Vec<(u32, u32)> {
        let unit = parse(src).expect("fixture parses");
        let ctx = AnalysisContext::build_single(&unit);
        let f = &unit.contracts[contract].functions[func];
        let cfg = ctx.cfg_for(f).expect("function has a body");
        let effects = ctx.effects_for(f.span).expect("effects computed");
        let line_of = |s: Span| s.line;
        detect_cei_violation(cfg, ctx.calls_for(f.span), effects)
            .into_iter()
            .map(|(a, b)| (line_of(a), line_of(b)))
            .collect()
    }

    #[test]
    fn cei_matrix_write_then_call_is_clean() {
        let src = "contract T {\n\
                   uint bal;\n\
                   function f(address to) public {\n\
                   bal = 0;\n\
                   to.call(\"\");\n\
                   }\n\
                   }\n";
        assert_eq!(cei_pairs(src, 0, 0), vec![]);
    }

    #[test]
    fn cei_matrix_call_then_write_pairs_once() {
        let src = "contract T {\n\
                   uint bal;\n\
                   function f(address to) public {\n\
                   to.call(\"\");\n\
                   bal = 0;\n\
                   }\n\
                   }\n";
        assert_eq!(cei_pairs(src, 0, 0), vec![(4, 5)]);
    }

    #[test]
    fn cei_matrix_call_and_write_in_disjoint_branches_is_clean() {
        let src = "contract T {\n\
                   uint bal;\n\
                   function f(address to, bool x) public {\n\
                   if (x) { to.call(\"\"); } else { bal = 1; }\n\
                   }\n\
                   }\n";
        assert_eq!(cei_pairs(src, 0, 0), vec![]);
    }

    #[test]
    fn cei_matrix_loop_makes_the_write_follow_the_call() {
        let src = "contract T {\n\
                   uint bal;\n\
                   function f(address to) public {\n\
                   for (uint i = 0; i < 2; i = i + 1) {\n\
                   to.call(\"\");\n\
                   bal = i;\n\
                   }\n\
                   }\n\
                   }\n";
        assert_eq!(cei_pairs(src, 0, 0), vec![(5, 6)]);
    }

    #[test]
    fn cei_matrix_internal_calls_do_not_count() {
        let src = "contract T {\n\
                   uint bal;\n\
                   function inner() internal { bal = 1; }\n\
                   function outer() public {\n\
                   inner();\n\
                   bal = 2;\n\
                   }\n\
                   }\n";
        assert_eq!(cei_pairs(src, 0, 1), vec![]);
    }

    #[test]
    fn cei_matrix_write_only_function_is_clean() {
        let src = "contract T {\n\
                   uint bal;\n\
                   function f() public { bal = 3; }\n\
                   }\n";
        assert_eq!(cei_pairs(src, 0, 0), vec![]);
    }

    #[test]
    fn c02_reports_one_diagnostic_per_offending_call_with_evidence() {
        let src = "contract Wallet {\n\
                   uint funds;\n\
                   function withdraw(address to) public {\n\
                   to.call.value(1)(\"\");\n\
                   funds = 0;\n\
                   }\n\
                   }\n";
        let diags = run_rule(src, "C02");
        assert_eq!(lines(&diags), vec![4]);
        assert!(diags[0].message.contains("1 state write"));
        assert_eq!(diags[0].evidence.len(), 2);
        assert_eq!(diags[0].evidence[0], diags[0].span);
        assert_eq!(diags[0].evidence[1].line, 5);
    }

    #[test]
    fn c02_counts_a_second_external_call_as_a_follower() {
        let src = "contract Multi {\n\
                   function pay(address a, address b) public {\n\
                   a.transfer(1);\n\
                   b.transfer(2);\n\
                   }\n\
                   }\n";
        let diags = run_rule(src, "C02");
        assert_eq!(lines(&diags), vec![3]);
        assert!(diags[0].message.contains("1 further external call"));
    }

    #[test]
    fn c02_is_silent_when_state_is_committed_first() {
        let src = "contract Wallet {\n\
                   uint funds;\n\
                   function withdraw(address to) public {\n\
                   funds = 0;\n\
                   to.call.value(1)(\"\");\n\
                   }\n\
                   }\n";
        assert!(run_rule(src, "C02").is_empty());
    }

    #[test]
    fn c03_flags_unguarded_owner_writes_and_selfdestruct() {
        let src = "contract Own {\n\
                   address owner;\n\
                   function setOwner(address o) public {\n\
                   owner = o;\n\
                   }\n\
                   function kill() public {\n\
                   selfdestruct(msg.sender);\n\
                   }\n\
                   }\n";
        let diags = run_rule(src, "C03");
        assert_eq!(lines(&diags), vec![4, 7]);
        assert!(diags[0].message.contains("`owner`"));
        assert!(diags[1].message.contains("selfdestruct"));
    }

    #[test]
    fn c03_flags_whole_balance_transfers() {
        let src = "contract Drain {\n\
                   function drain(address to) public {\n\
                   to.transfer(address(this).balance);\n\
                   }\n\
                   }\n";
        let diags = run_rule(src, "C03");
        assert_eq!(lines(&diags), vec![3]);
        assert!(diags[0].message.contains("entire contract balance"));
    }

    #[test]
    fn c03_accepts_modifiers_dominating_guards_and_private_helpers() {
        let src = "contract Safe1 {\n\
                   address owner;\n\
                   modifier onlyOwner() { require(msg.sender == owner); _; }\n\
                   function setOwner(address o) public onlyOwner { owner = o; }\n\
                   function reclaim() public {\n\
                   require(msg.sender == owner);\n\
                   owner = msg.sender;\n\
                   }\n\
                   function maybe(address o) public {\n\
                   if (msg.sender == owner) {\n\
                   owner = o;\n\
                   }\n\
                   }\n\
                   function internalSet(address o) internal { owner = o; }\n\
                   }\n\
                   contract Init {\n\
                   address owner;\n\
                   constructor() public { owner = msg.sender; }\n\
                   }\n";
        assert!(run_rule(src, "C03").is_empty());
    }

    #[test]
    fn c03_guard_inside_one_branch_does_not_cover_the_join() {
        let src = "contract Half {\n\
                   address owner;\n\
                   function risky(address o, bool c) public {\n\
                   if (c) {\n\
                   require(msg.sender == owner);\n\
                   }\n\
                   owner = o;\n\
                   }\n\
                   }\n";
        let diags = run_rule(src, "C03");
        assert_eq!(lines(&diags), vec![7]);
    }

    #[test]
    fn c04_flags_every_tx_origin_read_with_context_severities() {
        let src = "contract A {\n\
                   address owner;\n\
                   function f() public {\n\
                   require(tx.origin == owner);\n\
                   if (tx.origin == owner) {\n\
                   owner = tx.origin;\n\
                   }\n\
                   }\n\
                   }\n";
        let diags = run_rule(src, "C04");
        assert_eq!(lines(&diags), vec![4, 5, 6]);
        assert_eq!(
            diags.iter().map(|d| d.severity).collect::<Vec<_>>(),
            vec![Severity::Error, Severity::Error, Severity::Warning]
        );
    }

    #[test]
    fn c04_is_silent_for_msg_sender() {
        let src = "contract A {\n\
                   address owner;\n\
                   function f() public {\n\
                   require(msg.sender == owner);\n\
                   owner = msg.sender;\n\
                   }\n\
                   }\n";
        assert!(run_rule(src, "C04").is_empty());
    }

    #[test]
    fn c05_pre_08_flags_every_wrapping_operator_outside_safemath() {
        let src = "contract M {\n\
                   uint x;\n\
                   function f(uint a) public {\n\
                   x = a + 1;\n\
                   x = a * 2;\n\
                   x = a - x;\n\
                   uint y = 2 ** 8;\n\
                   x = a / y;\n\
                   }\n\
                   }\n";
        let diags = run_rule(src, "C05");
        assert_eq!(lines(&diags), vec![4, 5, 6]);
    }

    #[test]
    fn c05_honors_safemath_directives_on_self_and_ancestors() {
        let src = "contract S {\n\
                   using SafeMath for uint256;\n\
                   uint x;\n\
                   function f(uint a) public { x = a + 1; }\n\
                   }\n\
                   contract Base0 { using SafeMath for *; }\n\
                   contract Child0 is Base0 {\n\
                   uint x;\n\
                   function f(uint a) public { x = a + 1; }\n\
                   }\n";
        assert!(run_rule(src, "C05").is_empty());
    }

    #[test]
    fn c05_caret_pragma_below_08_still_counts_as_wrapping() {
        let src = "pragma solidity ^0.7.0;\n\
                   contract M {\n\
                   uint x;\n\
                   function f(uint a) public { x = a + 1; }\n\
                   }\n";
        assert_eq!(lines(&run_rule(src, "C05")), vec![4]);
    }

    #[test]
    fn c05_on_08_flags_only_unchecked_blocks() {
        let src = "pragma solidity 0.8.19;\n\
                   contract U {\n\
                   uint x;\n\
                   function f(uint a) public {\n\
                   x = a + 1;\n\
                   unchecked {\n\
                   x = a + 2;\n\
                   x = a * 3;\n\
                   }\n\
                   }\n\
                   }\n";
        let diags = run_rule(src, "C05");
        assert_eq!(lines(&diags), vec![7, 8]);
        assert!(diags[0].message.contains("unchecked"));
    }

    #[test]
    fn c06_flags_division_feeding_a_multiplication() {
        let src = "contract R {\n\
                   function f(uint a, uint b) public pure returns (uint) {\n\
                   return a / b * 100;\n\
                   }\n\
                   function g(uint a, uint b) public pure returns (uint) {\n\
                   return a * 100 / b;\n\
                   }\n\
                   }\n";
        let diags = run_rule(src, "C06");
        assert_eq!(lines(&diags), vec![3]);
    }

    #[test]
    fn c07_flags_functions_that_validate_no_parameter() {
        let src = "contract V {\n\
                   uint total;\n\
                   function set(uint amount) public {\n\
                   total = amount;\n\
                   }\n\
                   }\n";
        let diags = run_rule(src, "C07");
        assert_eq!(lines(&diags), vec![3]);
        assert!(diags[0].message.contains("`set`"));
        assert_eq!(diags[0].severity, Severity::Info);
    }

    #[test]
    fn c07_validation_must_precede_the_first_use() {
        let src = "contract V4 {\n\
                   uint total;\n\
                   function set(uint amount) public {\n\
                   total = amount;\n\
                   require(amount > 0);\n\
                   }\n\
                   }\n";
        assert_eq!(lines(&run_rule(src, "C07")), vec![3]);
    }

    #[test]
    fn c07_accepts_require_guarded_revert_and_partial_validation() {
        let src = "contract V2 {\n\
                   uint total;\n\
                   function viaRequire(uint amount) public {\n\
                   require(amount > 0);\n\
                   total = amount;\n\
                   }\n\
                   function viaRevert(uint amount) public {\n\
                   if (amount == 0) { revert(); }\n\
                   total = amount;\n\
                   }\n\
                   function pair(uint a, uint b) public {\n\
                   require(a > 0);\n\
                   total = a + b;\n\
                   }\n\
                   function hidden(uint a) internal { total = a; }\n\
                   }\n";
        assert!(run_rule(src, "C07").is_empty());
    }

    #[test]
    fn c08_flags_state_bound_loops_and_accepts_literal_caps() {
        let src = "contract L {\n\
                   uint[] items;\n\
                   uint limit;\n\
                   function all() public {\n\
                   for (uint i = 0; i < items.length; i = i + 1) {}\n\
                   for (uint j = 0; j < limit; j = j + 1) {}\n\
                   for (uint k = 0; k < 10; k = k + 1) {}\n\
                   uint n = items.length;\n\
                   for (uint m = 0; m < n && m < 100; m = m + 1) {}\n\
                   }\n\
                   }\n";
        let diags = run_rule(src, "C08");
        assert_eq!(lines(&diags), vec![5, 6]);
        assert!(diags[0].message.contains("`items`"));
        assert!(diags[1].message.contains("`limit`"));
    }

    #[test]
    fn c09_flags_oversized_and_externally_calling_fallbacks() {
        let src = "contract F {\n\
                   uint a;\n\
                   function() external {\n\
                   a = 1;\n\
                   a = 2;\n\
                   a = 3;\n\
                   a = 4;\n\
                   }\n\
                   }\n\
                   contract F2 {\n\
                   fallback() external {\n\
                   msg.sender.call(\"\");\n\
                   }\n\
                   }\n";
        let diags = run_rule(src, "C09");
        assert_eq!(lines(&diags), vec![3, 11]);
        assert!(diags[0].message.contains("has 4 statements (budget 3)"));
        assert!(diags[1].message.contains("makes an external call"));
    }

    #[test]
    fn c09_logging_only_fallback_without_data_check_is_an_info() {
        let src = "contract F3 {\n\
                   event Got(address s);\n\
                   fallback() external payable {\n\
                   emit Got(msg.sender);\n\
                   }\n\
                   }\n";
        let diags = run_rule(src, "C09");
        assert_eq!(lines(&diags), vec![3]);
        assert_eq!(diags[0].severity, Severity::Info);
        assert!(diags[0].message.contains("msg.data.length"));
    }

    #[test]
    fn c09_accepts_minimal_fallbacks_and_checked_loggers() {
        let src = "contract F4 {\n\
                   event Got(address s);\n\
                   fallback() external payable {\n\
                   require(msg.data.length == 0);\n\
                   emit Got(msg.sender);\n\
                   }\n\
                   }\n\
                   contract F5 {\n\
                   uint hits;\n\
                   fallback() external {\n\
                   hits = hits + 1;\n\
                   }\n\
                   }\n";
        assert!(run_rule(src, "C09").is_empty());
    }

    #[test]
    fn c10_flags_declarations_shadowing_builtin_globals() {
        let src = "contract S1 {\n\
                   uint now;\n\
                   function f(uint require) public {}\n\
                   function g() public {\n\
                   uint msg = 1;\n\
                   msg = msg + 1;\n\
                   }\n\
                   }\n";
        let diags = run_rule(src, "C10");
        assert_eq!(lines(&diags), vec![2, 3, 5]);
        assert!(diags[0].message.contains("state variable `now`"));
        assert!(diags[1].message.contains("parameter `require`"));
        assert!(diags[2].message.contains("local variable `msg`"));
    }

    #[test]
    fn c10_is_silent_for_ordinary_names() {
        let src = "contract S2 {\n\
                   uint total;\n\
                   function f(uint amount) public {\n\
                   uint next = amount;\n\
                   total = next;\n\
                   }\n\
                   }\n";
        assert!(run_rule(src, "C10").is_empty());
    }

    #[test]
    fn c11_flags_address_params_cast_or_called_low_level() {
        let src = "contract IToken { function transferFrom(address a, address b, uint v) public {} }\n\
                   contract U1 {\n\
                   function pull(address token, uint v) public {\n\
                   IToken(token).transferFrom(msg.sender, address(this), v);\n\
                   }\n\
                   function poke(address target) public {\n\
                   target.call(\"\");\n\
                   }\n\
                   function hold(address safe) public {}\n\
                   }\n";
        let diags = run_rule(src, "C11");
        assert_eq!(lines(&diags), vec![3, 6]);
        assert!(diags[0].message.contains("cast to contract type `IToken`"));
        assert!(diags[1].message.contains("low-level call"));
    }

    #[test]
    fn c11_is_satisfied_by_an_interface_typed_parameter() {
        let src = "contract IToken { function transferFrom(address a, address b, uint v) public {} }\n\
                   contract U2 {\n\
                   function pull(IToken token, uint v) public {\n\
                   token.transferFrom(msg.sender, address(this), v);\n\
                   }\n\
                   }\n";
        assert!(run_rule(src, "C11").is_empty());
    }

    #[test]
    fn c12_flags_block_entropy_in_hashes_and_modulo() {
        let src = "contract Lottery {\n\
                   function draw() public view returns (uint) {\n\
                   return uint(keccak256(abi.encodePacked(block.timestamp, msg.sender))) % 10;\n\
                   }\n\
                   function roll() public view returns (uint) {\n\
                   return block.number % 6;\n\
                   }\n\
                   function mix() public view returns (bytes32) {\n\
                   return sha256(abi.encodePacked(block.difficulty));\n\
                   }\n\
                   }\n";
        let diags = run_rule(src, "C12");
        assert_eq!(lines(&diags), vec![3, 6, 9]);
        assert!(diags[0].message.contains("block.timestamp"));
        assert!(diags[1].message.contains("block.number"));
        assert!(diags[2].message.contains("block.difficulty"));
    }

    #[test]
    fn c12_ignores_caller_supplied_entropy_and_bare_reads() {
        let src = "contract Fair {\n\
                   function ok(uint salt) public pure returns (uint) {\n\
                   return uint(keccak256(abi.encodePacked(salt))) % 10;\n\
                   }\n\
                   function timeOnly() public view returns (uint) {\n\
                   return block.timestamp;\n\
                   }\n\
                   }\n";
        assert!(run_rule(src, "C12").is_empty());
    }

    #[test]
    fn c13_flags_branch_comparisons_and_block_number_clocks() {
        let src = "contract T {\n\
                   uint deadline;\n\
                   function a() public view returns (bool) {\n\
                   if (block.timestamp > deadline) { return true; }\n\
                   return false;\n\
                   }\n\
                   function c() public view returns (uint) {\n\
                   return block.number + 100;\n\
                   }\n\
                   function d() public view returns (uint) {\n\
                   return block.timestamp < deadline ? 1 : 2;\n\
                   }\n\
                   }\n";
        let diags = run_rule(src, "C13");
        assert_eq!(lines(&diags), vec![4, 8, 11]);
        assert!(diags[0].message.contains("branch"));
        assert!(diags[1].message.contains("block.number"));
        assert!(diags[2].message.contains("branch"));
    }

    #[test]
    fn c13_ignores_require_guards_and_small_offsets() {
        let src = "contract OkT {\n\
                   uint deadline;\n\
                   function s1() public view {\n\
                   require(block.timestamp < deadline);\n\
                   }\n\
                   function s2() public view returns (uint) {\n\
                   return block.number + 1;\n\
                   }\n\
                   function s3() public view returns (uint) {\n\
                   return now - deadline;\n\
                   }\n\
                   }\n";
        assert!(run_rule(src, "C13").is_empty());
    }
}
