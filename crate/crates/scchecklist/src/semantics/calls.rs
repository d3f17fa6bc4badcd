//! Call-site extraction and classification.
//!
//! Every `Call` expression in a function body becomes exactly one
//! [`CallSite`] tagged with a [`CallKind`]. Classification is syntactic plus
//! symbol-table knowledge: names the scan set defines resolve precisely;
//! anything unresolved is treated as an external call, because missing a real
//! external call costs far more than flagging a benign one.

use crate::ast::*;
use crate::semantics::symbols::SymbolTable;
use crate::span::Span;
use std::collections::BTreeSet;

/// Callable built-in global functions.
pub const BUILTIN_CALLABLES: [&str; 13] = [
    "require",
    "assert",
    "revert",
    "keccak256",
    "sha256",
    "ripemd160",
    "ecrecover",
    "addmod",
    "mulmod",
    "selfdestruct",
    "suicide",
    "blockhash",
    "gasleft",
];

const LOW_LEVEL_MEMBERS: [&str; 4] = ["call", "delegatecall", "staticcall", "send"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CallKind {
    /// `.call` / `.delegatecall` / `.staticcall` / `.send`, in both the
    /// option-brace and legacy `.value(..)` chain spellings.
    LowLevel,
    /// One-argument `.transfer` — an ether transfer that reverts on failure.
    ValueTransfer,
    /// A call that leaves the contract through a typed interface, or that
    /// cannot be proven local.
    ExternalHighLevel,
    /// Same-contract (possibly inherited) or library function.
    Internal,
    /// Language built-ins: `require`, `keccak256`, casts, `push`/`pop`,
    /// `abi.*`, array/bytes `new`, legacy gas/value option applications.
    Builtin,
    /// The call inside an `emit` statement.
    EventEmit,
}

impl CallKind {
    /// Whether control leaves the contract.
    pub fn is_external(self) -> bool {
        matches!(
            self,
            CallKind::LowLevel | CallKind::ValueTransfer | CallKind::ExternalHighLevel
        )
    }
}

#[derive(Debug, Clone)]
pub struct CallSite {
    /// Span of the whole call expression.
    pub span: Span,
    pub callee: Expression,
    pub kind: CallKind,
    /// False only for calls whose value is discarded: expression statements
    /// and `emit`.
    pub result_used: bool,
    /// Whether the call sends ether (`send`, one-argument `transfer`,
    /// a `value:` option, or a legacy `.value(..)` layer).
    pub carries_value: bool,
    /// Member name for method-style calls (`call`, `transfer`, ...).
    pub member: Option<String>,
    /// Span of the innermost statement carrying this call, usable as a CFG
    /// lookup key.
    pub stmt_span: Span,
    pub arg_count: usize,
}

impl CallSite {
    pub fn is_external(&self) -> bool {
        self.kind.is_external()
    }
}

/// Classify every call in a function body. Bodyless declarations yield an
/// empty list. Calls inside modifier-invocation argument lists are not
/// statements and are out of scope here.
pub fn classify_calls(
    func: &FunctionDef,
    contract: &str,
    symbols: &SymbolTable,
    known_contracts: &BTreeSet<String>,
) -> Vec<CallSite> {
    func.body
        .as_ref()
        .map(|b| classify_calls_in_block(b, contract, symbols, known_contracts))
        .unwrap_or_default()
}

/// Classify every call in a block (used for modifier bodies as well).
pub fn classify_calls_in_block(
    block: &Block,
    contract: &str,
    symbols: &SymbolTable,
    known_contracts: &BTreeSet<String>,
) -> Vec<CallSite> {
    let ctx = Ctx { contract, symbols, known_contracts };
    let mut sites = Vec::new();
    for stmt in &block.statements {
        stmt.walk(&mut |s| {
            let stmt_span = s.span();
            let (discarded_root, is_emit) = match s {
                Statement::Expression { expr, .. } => (Some(expr.span()), false),
                Statement::Emit { call, .. } => (Some(call.span()), true),
                _ => (None, false),
            };
            for e in s.own_expressions() {
                e.walk(&mut |node| {
                    if let Expression::Call { .. } = node {
                        let is_root = Some(node.span()) == discarded_root;
                        sites.push(classify_one(
                            node,
                            &ctx,
                            /* result_used */ !is_root,
                            /* force_event */ is_emit && is_root,
                            stmt_span,
                        ));
                    }
                });
            }
        });
    }
    sites.sort_by_key(|s| (s.span.start, s.span.end));
    sites
}

struct Ctx<'a> {
    contract: &'a str,
    symbols: &'a SymbolTable,
    known_contracts: &'a BTreeSet<String>,
}

fn classify_one(
    call: &Expression,
    ctx: &Ctx,
    result_used: bool,
    force_event: bool,
    stmt_span: Span,
) -> CallSite {
    let Expression::Call { callee, options, args, span } = call else {
        unreachable!("classify_one is only called on Call expressions");
    };
    let option_value = options.iter().any(|(k, _)| k == "value");
    let mut member = match callee.as_ref() {
        Expression::MemberAccess { member, .. } => Some(member.clone()),
        _ => None,
    };
    let mut carries_value = option_value;

    let kind = if force_event {
        CallKind::EventEmit
    } else if let Some((low_member, chain_value)) = legacy_chain(callee) {
        // `a.call{value: v}(..)`, `a.send(x)`, or a legacy
        // `a.call.gas(g).value(v)(..)` chain.
        carries_value |= chain_value || low_member == "send";
        member = Some(low_member);
        CallKind::LowLevel
    } else {
        match callee.as_ref() {
            Expression::MemberAccess { base, member: m, .. } => {
                if is_option_application(m, base) {
                    CallKind::Builtin
                } else if matches!(base.as_ref(),
                    Expression::Identifier { name, .. } if name == "super")
                {
                    CallKind::Internal
                } else if m == "transfer" && args.len() == 1 {
                    carries_value = true;
                    CallKind::ValueTransfer
                } else if m == "push" || m == "pop" {
                    CallKind::Builtin
                } else {
                    match base.as_ref() {
                        Expression::Identifier { name, .. } if name == "this" => {
                            CallKind::ExternalHighLevel
                        }
                        Expression::Identifier { name, .. } if name == "abi" => CallKind::Builtin,
                        Expression::Identifier { name, .. }
                            if ctx.known_contracts.contains(name) =>
                        {
                            // Qualified library/contract function access.
                            CallKind::Internal
                        }
                        _ => CallKind::ExternalHighLevel,
                    }
                }
            }
            Expression::Identifier { name, .. } => {
                if BUILTIN_CALLABLES.contains(&name.as_str()) {
                    CallKind::Builtin
                } else if ctx.symbols.has_event(ctx.contract, name) {
                    CallKind::EventEmit
                } else if ctx.symbols.has_function(ctx.contract, name) {
                    CallKind::Internal
                } else if ctx.known_contracts.contains(name) && args.len() == 1 {
                    // Contract-type cast: `Token(addr)`.
                    CallKind::Builtin
                } else {
                    CallKind::ExternalHighLevel
                }
            }
            Expression::New { type_name, .. } => match type_name {
                TypeName::UserDefined(path) => {
                    let head = path.first().map(String::as_str).unwrap_or("");
                    if ctx.known_contracts.contains(head) {
                        CallKind::Internal
                    } else {
                        CallKind::ExternalHighLevel
                    }
                }
                _ => CallKind::Builtin,
            },
            // Function pointers, curried forms, anything else: assume the
            // worst.
            _ => CallKind::ExternalHighLevel,
        }
    };

    CallSite {
        span: *span,
        callee: callee.as_ref().clone(),
        kind,
        result_used,
        carries_value,
        member,
        stmt_span,
        arg_count: args.len(),
    }
}

/// Resolve a callee that may chain legacy `.gas(g)` / `.value(v)`
/// applications down to a low-level member access. Returns the low-level
/// member name and whether any `.value` layer appeared.
fn legacy_chain(callee: &Expression) -> Option<(String, bool)> {
    match callee {
        Expression::MemberAccess { member, .. }
            if LOW_LEVEL_MEMBERS.contains(&member.as_str()) =>
        {
            Some((member.clone(), false))
        }
        Expression::Call { callee: inner, .. } => {
            if let Expression::MemberAccess { base, member, .. } = inner.as_ref() {
                if member == "value" || member == "gas" {
                    let (low, has_value) = legacy_chain(base)?;
                    return Some((low, has_value || member == "value"));
                }
            }
            None
        }
        _ => None,
    }
}

/// Whether this call is itself a legacy option application (`....value(v)`
/// or `....gas(g)` applied to a low-level chain), classified as a built-in
/// so the chain produces exactly one low-level site.
fn is_option_application(member: &str, base: &Expression) -> bool {
    (member == "value" || member == "gas") && legacy_chain(base).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use crate::semantics::linearize::linearize;
    use crate::semantics::symbols::build_symbols;
    use std::collections::BTreeMap;

    fn sites_for(src: &str, contract: &str, func: usize) -> Vec<CallSite> {
        let unit = parse(src).expect("fixture parses");
        let global: BTreeMap<String, &ContractDef> =
            unit.contracts.iter().map(|c| (c.name.clone(), c)).collect();
        let linearizations: BTreeMap<String, Vec<String>> = unit
            .contracts
            .iter()
            .filter_map(|c| linearize(c, &global).ok().map(|l| (c.name.clone(), l)))
            .collect();
        let symbols = build_symbols(&unit, &global, &linearizations);
        let known: BTreeSet<String> = global.keys().cloned().collect();
        let def = unit
            .contracts
            .iter()
            .find(|c| c.name == contract)
            .expect("contract exists");
        classify_calls(&def.functions[func], contract, &symbols, &known)
    }

    fn in_body(body: &str) -> Vec<CallSite> {
        let src = format!(
            "contract T {{\n\
                 event Ping(uint v);\n\
                 uint[] arr;\n\
                 function helper(uint v) internal returns (uint) {{ return v; }}\n\
                 function f(address payable a, address t, uint n) public {{ {body} }}\n\
             }}"
        );
        sites_for(&src, "T", 1)
    }

    fn kinds(sites: &[CallSite]) -> Vec<CallKind> {
        sites.iter().map(|s| s.kind).collect()
    }

    #[test]
    fn low_level_members_in_both_spellings() {
        let sites = in_body("a.call(\"\"); a.delegatecall(\"\"); a.staticcall(\"\"); a.send(1);");
        assert_eq!(kinds(&sites), vec![CallKind::LowLevel; 4]);
        assert_eq!(
            sites.iter().map(|s| s.carries_value).collect::<Vec<_>>(),
            vec![false, false, false, true]
        );
        assert_eq!(sites[0].member.as_deref(), Some("call"));
        assert!(sites.iter().all(|s| s.is_external()));
    }

    #[test]
    fn call_options_set_the_value_flag() {
        let sites = in_body("a.call{value: n}(\"\"); a.call{gas: n}(\"\");");
        assert_eq!(kinds(&sites), vec![CallKind::LowLevel, CallKind::LowLevel]);
        assert!(sites[0].carries_value);
        assert!(!sites[1].carries_value);
    }

    #[test]
    fn legacy_value_chain_yields_one_low_level_site() {
        // Three Call nodes: the option applications are built-ins; only the
        // outermost call leaves the contract.
        let sites = in_body("a.call.gas(2500).value(n)(\"\");");
        assert_eq!(sites.len(), 3);
        let low: Vec<&CallSite> = sites.iter().filter(|s| s.kind == CallKind::LowLevel).collect();
        assert_eq!(low.len(), 1);
        assert!(low[0].carries_value);
        assert_eq!(low[0].member.as_deref(), Some("call"));
        assert_eq!(
            sites.iter().filter(|s| s.kind == CallKind::Builtin).count(),
            2
        );
    }

    #[test]
    fn transfer_arity_separates_ether_from_tokens() {
        let sites = in_body("payable(a).transfer(n); IToken(t).transfer(a, n);");
        // Sites in source order: the ether transfer, the IToken cast (not a
        // scan-set contract, so conservatively external), the token transfer.
        assert_eq!(sites.len(), 3);
        assert_eq!(sites[0].kind, CallKind::ValueTransfer);
        assert!(sites[0].carries_value);
        assert_eq!(sites[1].kind, CallKind::ExternalHighLevel);
        assert_eq!(sites[2].kind, CallKind::ExternalHighLevel);
        assert!(!sites[2].carries_value);
        assert_eq!(sites[2].member.as_deref(), Some("transfer"));
    }

    #[test]
    fn identifier_calls_resolve_through_the_symbol_table() {
        let sites = in_body("helper(n); unknownFn(n); require(n > 0); emit Ping(n);");
        assert_eq!(
            kinds(&sites),
            vec![
                CallKind::Internal,
                CallKind::ExternalHighLevel,
                CallKind::Builtin,
                CallKind::EventEmit,
            ]
        );
        // Expression statements and emits discard the result.
        assert!(sites.iter().all(|s| !s.result_used));
    }

    #[test]
    fn super_this_and_abi_bases() {
        let src = "contract Base { function hook() internal {} }\n\
                   contract T is Base {\n\
                       function hook() internal {}\n\
                       function f() public {\n\
                           super.hook();\n\
                           this.probe();\n\
                           abi.encodePacked(uint(1));\n\
                       }\n\
                       function probe() external {}\n\
                   }";
        let sites = sites_for(src, "T", 1);
        // `uint(1)` is a TypeCast, not a call, so exactly three sites.
        assert_eq!(
            kinds(&sites),
            vec![CallKind::Internal, CallKind::ExternalHighLevel, CallKind::Builtin]
        );
    }

    #[test]
    fn known_contract_names_make_casts_and_library_calls() {
        let src = "contract Lib { function twice(uint v) internal returns (uint) { return v; } }\n\
                   contract Other { function ping() public {} }\n\
                   contract T {\n\
                       function f(address x, uint n) public {\n\
                           Lib.twice(n);\n\
                           Other(x);\n\
                           Mystery(x);\n\
                       }\n\
                   }";
        let sites = sites_for(src, "T", 0);
        assert_eq!(
            kinds(&sites),
            vec![CallKind::Internal, CallKind::Builtin, CallKind::ExternalHighLevel]
        );
    }

    #[test]
    fn new_expressions_split_by_type() {
        let src = "contract Child { }\n\
                   contract T {\n\
                       function f(uint n) public {\n\
                           new Child();\n\
                           new Stranger();\n\
                           new uint[](n);\n\
                           new bytes(n);\n\
                       }\n\
                   }";
        let sites = sites_for(src, "T", 0);
        assert_eq!(
            kinds(&sites),
            vec![
                CallKind::Internal,
                CallKind::ExternalHighLevel,
                CallKind::Builtin,
                CallKind::Builtin,
            ]
        );
    }

    #[test]
    fn push_and_pop_are_builtins() {
        let sites = in_body("arr.push(n); arr.pop();");
        assert_eq!(kinds(&sites), vec![CallKind::Builtin, CallKind::Builtin]);
    }

    #[test]
    fn result_use_depends_on_the_carrying_statement() {
        let sites = in_body(
            "a.send(1);\n\
             bool ok = a.send(2);\n\
             if (a.send(3)) { n = 1; }\n\
             n = helper(n);",
        );
        let used: Vec<bool> = sites.iter().map(|s| s.result_used).collect();
        assert_eq!(used, vec![false, true, true, true]);
    }

    #[test]
    fn statement_attribution_points_at_the_innermost_carrier() {
        let src = "contract T {\n\
                       function f(address payable a, uint n) public {\n\
                           if (a.send(n)) {\n\
                               a.transfer(n);\n\
                           }\n\
                       }\n\
                   }";
        let unit = parse(src).unwrap();
        let sites = sites_for(src, "T", 0);
        assert_eq!(sites.len(), 2);
        let func = &unit.contracts[0].functions[0];
        let if_span = func.body.as_ref().unwrap().statements[0].span();
        // The condition call belongs to the `if` statement itself...
        assert_eq!(sites[0].stmt_span, if_span);
        // ...while the branch call belongs to the inner expression statement.
        assert_ne!(sites[1].stmt_span, if_span);
        assert!(if_span.contains(&sites[1].stmt_span));
    }

    #[test]
    fn every_call_node_is_classified_exactly_once() {
        let sites = in_body(
            "helper(helper(n));\n\
             a.call.value(n)(\"\");\n\
             emit Ping(helper(n));\n\
             uint k = n > 0 ? helper(1) : helper(2);\n\
             n = k;",
        );
        let src = format!(
            "contract T {{\n\
                 event Ping(uint v);\n\
                 uint[] arr;\n\
                 function helper(uint v) internal returns (uint) {{ return v; }}\n\
                 function f(address payable a, address t, uint n) public {{ {} }}\n\
             }}",
            "helper(helper(n));\n\
             a.call.value(n)(\"\");\n\
             emit Ping(helper(n));\n\
             uint k = n > 0 ? helper(1) : helper(2);\n\
             n = k;"
        );
        let unit = parse(&src).unwrap();
        let mut call_nodes = 0usize;
        let func = &unit.contracts[0].functions[1];
        for stmt in &func.body.as_ref().unwrap().statements {
            stmt.walk_expressions(&mut |e| {
                if matches!(e, Expression::Call { .. }) {
                    call_nodes += 1;
                }
            });
        }
        assert_eq!(sites.len(), call_nodes);
        // Hand count: helper(helper(n)) = 2; a.call.value(n)("") = 2 (the
        // `.value(n)` application and the final call — `a.call` itself is a
        // member access, not a call); emit Ping(helper(n)) = 2; the
        // conditional arms = 2. Total 8.
        assert_eq!(sites.len(), 8);
    }
}
