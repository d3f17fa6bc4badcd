//! State-variable read/write collection.
//!
//! For one function (or modifier) body, records which state variables are
//! read and written and where. Writes are attributed to the *base* variable:
//! `balances[msg.sender] = 0` writes `balances`, `config.owner = x` writes
//! `config`. Index and member expressions inside an assignment target still
//! count as reads.
//!
//! Storage-pointer locals (`Data storage p = items[i];`) are recorded as
//! alias notes rather than traced: a later `p.total = 0` mutates state, but
//! attributing it to `items` would require points-to analysis, so the
//! declaration itself is surfaced for human review instead.

use crate::ast::*;
use crate::semantics::symbols::{SymbolKind, SymbolTable};
use crate::span::Span;

/// One read or write occurrence of a state variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectSite {
    /// State variable name.
    pub var: String,
    /// Span of the expression that touched it.
    pub span: Span,
    /// Span of the innermost statement carrying the access.
    pub stmt_span: Span,
}

/// A storage-pointer local aliasing part of a state variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AliasNote {
    /// Name of the aliased state variable.
    pub state_var: String,
    /// Name of the local storage pointer.
    pub local: String,
    /// Span of the declaring statement.
    pub span: Span,
}

#[derive(Debug, Clone, Default)]
pub struct StateEffect {
    pub reads: Vec<EffectSite>,
    pub writes: Vec<EffectSite>,
    pub alias_notes: Vec<AliasNote>,
}

impl StateEffect {
    pub fn writes_var(&self, name: &str) -> bool {
        self.writes.iter().any(|w| w.var == name)
    }

    pub fn reads_var(&self, name: &str) -> bool {
        self.reads.iter().any(|r| r.var == name)
    }
}

/// Collect state reads and writes for a function body. Bodyless
/// declarations yield an empty effect.
pub fn collect_state_effects(func: &FunctionDef, symbols: &SymbolTable) -> StateEffect {
    func.body
        .as_ref()
        .map(|b| collect_state_effects_in_block(b, symbols))
        .unwrap_or_default()
}

/// Collect state reads and writes for any block (modifier bodies included).
pub fn collect_state_effects_in_block(block: &Block, symbols: &SymbolTable) -> StateEffect {
    let mut collector = Collector {
        symbols,
        effect: StateEffect::default(),
    };
    for stmt in &block.statements {
        stmt.walk(&mut |s| {
            let stmt_span = s.span();
            if let Statement::VariableDeclaration { declarations, initializer, .. } = s {
                collector.record_storage_aliases(declarations, initializer.as_ref(), stmt_span);
            }
            for e in s.own_expressions() {
                collector.scan(e, stmt_span);
            }
        });
    }
    let mut effect = collector.effect;
    effect.reads.sort_by_key(|s| (s.span.start, s.span.end));
    effect.writes.sort_by_key(|s| (s.span.start, s.span.end));
    effect
}

struct Collector<'a> {
    symbols: &'a SymbolTable,
    effect: StateEffect,
}

impl Collector<'_> {
    /// Name of the state variable an lvalue bottoms out in, if any. Strips
    /// index and member layers; tuples are handled by the caller.
    fn state_base(&self, expr: &Expression) -> Option<(String, Span)> {
        match expr {
            Expression::Identifier { name, span } => {
                let res = self.symbols.resolve(*span)?;
                (res.kind == SymbolKind::StateVar).then(|| (name.clone(), *span))
            }
            Expression::IndexAccess { base, .. } | Expression::MemberAccess { base, .. } => {
                self.state_base(base)
            }
            _ => None,
        }
    }

    fn read(&mut self, var: String, span: Span, stmt_span: Span) {
        self.effect.reads.push(EffectSite { var, span, stmt_span });
    }

    fn write(&mut self, var: String, span: Span, stmt_span: Span) {
        self.effect.writes.push(EffectSite { var, span, stmt_span });
    }

    /// Record a write through an lvalue, plus reads for its index/member
    /// subexpressions. `also_read` marks compound assignments and
    /// increments, which read the old value.
    fn scan_lvalue(&mut self, lhs: &Expression, also_read: bool, stmt_span: Span) {
        match lhs {
            Expression::Tuple { components, .. } => {
                for c in components.iter().flatten() {
                    self.scan_lvalue(c, also_read, stmt_span);
                }
            }
            _ => {
                if let Some((var, base_span)) = self.state_base(lhs) {
                    self.write(var.clone(), base_span, stmt_span);
                    if also_read {
                        self.read(var, base_span, stmt_span);
                    }
                }
                // Indexes and member chains still read whatever they mention
                // (`m[k] = v` reads `k`), but the base identifier itself is
                // the write target, so scan only the non-base children.
                self.scan_lvalue_children(lhs, stmt_span);
            }
        }
    }

    fn scan_lvalue_children(&mut self, lhs: &Expression, stmt_span: Span) {
        match lhs {
            Expression::IndexAccess { base, index, .. } => {
                self.scan(index, stmt_span);
                self.scan_lvalue_children(base, stmt_span);
            }
            Expression::MemberAccess { base, .. } => {
                self.scan_lvalue_children(base, stmt_span);
            }
            Expression::Identifier { .. } => {}
            // Unusual write targets (casts, calls): treat them as plain
            // expressions.
            other => self.scan(other, stmt_span),
        }
    }

    /// Walk an expression recording state reads, dispatching writes for
    /// assignment-like forms.
    fn scan(&mut self, expr: &Expression, stmt_span: Span) {
        match expr {
            Expression::Assignment { op, lhs, rhs, .. } => {
                self.scan_lvalue(lhs, *op != AssignOp::Assign, stmt_span);
                self.scan(rhs, stmt_span);
            }
            Expression::Unary { op, operand, .. }
                if matches!(op, UnaryOp::Inc | UnaryOp::Dec | UnaryOp::Delete) =>
            {
                self.scan_lvalue(operand, *op != UnaryOp::Delete, stmt_span);
            }
            Expression::Call { callee, options, args, .. } => {
                // `state.push(x)` / `state.pop()` mutate the array in place.
                if let Expression::MemberAccess { base, member, .. } = callee.as_ref() {
                    if member == "push" || member == "pop" {
                        if let Some((var, base_span)) = self.state_base(base) {
                            self.write(var.clone(), base_span, stmt_span);
                            self.read(var, base_span, stmt_span);
                        }
                        self.scan_lvalue_children(base.as_ref(), stmt_span);
                        for (_, v) in options {
                            self.scan(v, stmt_span);
                        }
                        for a in args {
                            self.scan(a, stmt_span);
                        }
                        return;
                    }
                }
                self.scan(callee, stmt_span);
                for (_, v) in options {
                    self.scan(v, stmt_span);
                }
                for a in args {
                    self.scan(a, stmt_span);
                }
            }
            Expression::Identifier { name, span } => {
                if let Some(res) = self.symbols.resolve(*span) {
                    if res.kind == SymbolKind::StateVar {
                        self.read(name.clone(), *span, stmt_span);
                    }
                }
            }
            Expression::MemberAccess { base, .. } => self.scan(base, stmt_span),
            Expression::IndexAccess { base, index, .. } => {
                self.scan(base, stmt_span);
                self.scan(index, stmt_span);
            }
            Expression::TypeCast { arg, .. } => self.scan(arg, stmt_span),
            Expression::Binary { left, right, .. } => {
                self.scan(left, stmt_span);
                self.scan(right, stmt_span);
            }
            Expression::Unary { operand, .. } => self.scan(operand, stmt_span),
            Expression::Conditional { condition, true_expr, false_expr, .. } => {
                self.scan(condition, stmt_span);
                self.scan(true_expr, stmt_span);
                self.scan(false_expr, stmt_span);
            }
            Expression::Tuple { components, .. } => {
                for c in components.iter().flatten() {
                    self.scan(c, stmt_span);
                }
            }
            Expression::NumberLiteral { .. }
            | Expression::StringLiteral { .. }
            | Expression::BoolLiteral { .. }
            | Expression::New { .. } => {}
        }
    }

    fn record_storage_aliases(
        &mut self,
        declarations: &[Option<DeclaredVar>],
        initializer: Option<&Expression>,
        stmt_span: Span,
    ) {
        let Some(init) = initializer else { return };
        for var in declarations.iter().flatten() {
            if var.location != Some(DataLocation::Storage) {
                continue;
            }
            if let Some((state_var, _)) = self.state_base(init) {
                self.effect.alias_notes.push(AliasNote {
                    state_var,
                    local: var.name.clone(),
                    span: stmt_span,
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use crate::semantics::linearize::linearize;
    use crate::semantics::symbols::build_symbols;
    use std::collections::BTreeMap;

    fn effects_for(src: &str, contract: &str, func: usize) -> StateEffect {
        let unit = parse(src).expect("fixture parses");
        let global: BTreeMap<String, &ContractDef> =
            unit.contracts.iter().map(|c| (c.name.clone(), c)).collect();
        let linearizations: BTreeMap<String, Vec<String>> = unit
            .contracts
            .iter()
            .filter_map(|c| linearize(c, &global).ok().map(|l| (c.name.clone(), l)))
            .collect();
        let symbols = build_symbols(&unit, &global, &linearizations);
        let def = unit
            .contracts
            .iter()
            .find(|c| c.name == contract)
            .expect("contract exists");
        collect_state_effects(&def.functions[func], &symbols)
    }

    fn in_body(body: &str) -> StateEffect {
        let src = format!(
            "contract T {{\n\
                 uint total;\n\
                 uint[] arr;\n\
                 mapping(address => uint) balances;\n\
                 function f(address who, uint n) public {{ {body} }}\n\
             }}"
        );
        effects_for(&src, "T", 0)
    }

    fn names(sites: &[EffectSite]) -> Vec<&str> {
        sites.iter().map(|s| s.var.as_str()).collect()
    }

    #[test]
    fn simple_assignment_writes_without_reading() {
        let fx = in_body("total = n;");
        assert_eq!(names(&fx.writes), vec!["total"]);
        assert!(fx.reads.is_empty());
    }

    #[test]
    fn compound_assignment_reads_and_writes() {
        let fx = in_body("total += n;");
        assert_eq!(names(&fx.writes), vec!["total"]);
        assert_eq!(names(&fx.reads), vec!["total"]);
    }

    #[test]
    fn index_writes_attribute_to_the_base_variable() {
        let fx = in_body("balances[who] = total;");
        assert_eq!(names(&fx.writes), vec!["balances"]);
        // The rhs reads `total`; the write target's base is not a read.
        assert_eq!(names(&fx.reads), vec!["total"]);
    }

    #[test]
    fn index_expressions_inside_the_target_still_read() {
        let fx = in_body("balances[arr[n]] = 1;");
        assert_eq!(names(&fx.writes), vec!["balances"]);
        assert_eq!(names(&fx.reads), vec!["arr"]);
    }

    #[test]
    fn increments_deletes_and_push_pop() {
        let fx = in_body("total++; delete balances[who]; arr.push(n); arr.pop();");
        assert_eq!(names(&fx.writes), vec!["total", "balances", "arr", "arr"]);
        // total++ reads; delete does not; push/pop read the array slot.
        assert_eq!(names(&fx.reads), vec!["total", "arr", "arr"]);
    }

    #[test]
    fn reads_in_conditions_returns_and_args() {
        let src = "contract T {\n\
                       uint total;\n\
                       uint limit;\n\
                       function f(uint n) public returns (uint) {\n\
                           require(total > limit);\n\
                           if (total > 0) { return total; }\n\
                           return limit;\n\
                       }\n\
                   }";
        let fx = effects_for(src, "T", 0);
        assert!(fx.writes.is_empty());
        assert_eq!(names(&fx.reads), vec!["total", "limit", "total", "total", "limit"]);
    }

    #[test]
    fn locals_do_not_count_and_tuples_split() {
        let fx = in_body("uint local = total; local = 5; (total, local) = (n, n);");
        // `local = 5` and the tuple's second slot touch only the local.
        assert_eq!(names(&fx.writes), vec!["total"]);
        assert_eq!(names(&fx.reads), vec!["total"]);
    }

    #[test]
    fn inherited_state_variables_are_attributed() {
        let src = "contract Base { uint stock; }\n\
                   contract T is Base { function f(uint n) public { stock = n; } }";
        let fx = effects_for(src, "T", 0);
        assert_eq!(names(&fx.writes), vec!["stock"]);
    }

    #[test]
    fn storage_pointer_declarations_become_alias_notes() {
        let src = "contract T {\n\
                       uint[] arr;\n\
                       function f(uint i) public {\n\
                           uint[] storage p = arr;\n\
                           p[i] = 1;\n\
                       }\n\
                   }";
        let fx = effects_for(src, "T", 0);
        assert_eq!(fx.alias_notes.len(), 1);
        assert_eq!(fx.alias_notes[0].state_var, "arr");
        assert_eq!(fx.alias_notes[0].local, "p");
        // The write through the pointer is NOT attributed to `arr`.
        assert!(fx.writes.is_empty());
        assert_eq!(names(&fx.reads), vec!["arr"]);
    }

    #[test]
    fn memory_declarations_are_not_aliases() {
        let fx = in_body("uint[] memory copy = arr; copy[0] = 1;");
        assert!(fx.alias_notes.is_empty());
        assert_eq!(names(&fx.reads), vec!["arr"]);
        assert!(fx.writes.is_empty());
    }
}
