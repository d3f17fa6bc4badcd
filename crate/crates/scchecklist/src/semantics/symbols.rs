//! Symbol tables and identifier resolution.
//!
//! Builds per-contract views of state variables, functions, modifiers, and
//! events — including everything inherited along the C3 linearization, with
//! derived declarations shadowing base ones — then resolves every identifier
//! used inside function and modifier bodies to a [`SymbolKind`]. Resolution
//! failures are recorded as [`SymbolKind::Unknown`], never as errors, because
//! imports are opaque to the frontend.
//!
//! Declarations whose names collide with one of the twelve built-in globals
//! are recorded as [`ShadowRecord`]s regardless of whether they are used.

use crate::ast::*;
use crate::span::Span;
use std::collections::{BTreeMap, BTreeSet};

/// The built-in global names a declaration can shadow.
pub const BUILTIN_GLOBALS: [&str; 12] = [
    "msg",
    "tx",
    "block",
    "now",
    "require",
    "assert",
    "revert",
    "selfdestruct",
    "keccak256",
    "blockhash",
    "address",
    "this",
];

pub fn is_builtin_global(name: &str) -> bool {
    BUILTIN_GLOBALS.contains(&name)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SymbolKind {
    StateVar,
    Local,
    Param,
    Function,
    Modifier,
    Builtin,
    Unknown,
}

/// What one identifier use resolves to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub kind: SymbolKind,
    pub name: String,
    /// Span of the resolved declaration's name, when there is one.
    pub decl_span: Option<Span>,
    /// Contract that declares the symbol (state vars, functions, modifiers).
    pub owner: Option<String>,
}

#[derive(Debug, Clone)]
pub struct StateVarInfo {
    pub owner: String,
    pub name: String,
    pub name_span: Span,
    pub span: Span,
    pub type_name: TypeName,
    pub is_constant: bool,
    pub is_immutable: bool,
    pub visibility: Option<Visibility>,
}

#[derive(Debug, Clone)]
pub struct FunctionInfo {
    pub owner: String,
    pub name: String,
    pub arity: usize,
    pub name_span: Span,
    pub span: Span,
}

#[derive(Debug, Clone)]
pub struct ModifierInfo {
    pub owner: String,
    pub name: String,
    pub name_span: Span,
    pub span: Span,
}

/// A declaration whose name collides with a built-in global.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowRecord {
    pub name: String,
    pub span: Span,
    /// What was declared: "contract", "function", "modifier",
    /// "state variable", "local variable", or "parameter".
    pub declared_as: &'static str,
    pub contract: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct SymbolTable {
    /// contract → state var name → info, inherited vars included.
    pub state_vars: BTreeMap<String, BTreeMap<String, StateVarInfo>>,
    /// contract → (function name, arity) → info, inherited included.
    pub functions: BTreeMap<String, BTreeMap<(String, usize), FunctionInfo>>,
    /// contract → modifier name → info, inherited included.
    pub modifiers: BTreeMap<String, BTreeMap<String, ModifierInfo>>,
    /// contract → event names, inherited included.
    pub events: BTreeMap<String, BTreeSet<String>>,
    /// identifier-use span → resolution, for every identifier in a body.
    pub resolutions: BTreeMap<Span, Resolution>,
    /// declarations that shadow built-in globals.
    pub shadows: Vec<ShadowRecord>,
}

impl SymbolTable {
    pub fn resolve(&self, span: Span) -> Option<&Resolution> {
        self.resolutions.get(&span)
    }

    /// Resolution for an identifier expression; `None` for other expressions.
    pub fn resolve_expr(&self, expr: &Expression) -> Option<&Resolution> {
        match expr {
            Expression::Identifier { span, .. } => self.resolve(*span),
            _ => None,
        }
    }

    pub fn state_var(&self, contract: &str, name: &str) -> Option<&StateVarInfo> {
        self.state_vars.get(contract)?.get(name)
    }

    pub fn has_function(&self, contract: &str, name: &str) -> bool {
        self.functions
            .get(contract)
            .is_some_and(|fns| fns.keys().any(|(n, _)| n == name))
    }

    pub fn has_event(&self, contract: &str, name: &str) -> bool {
        self.events.get(contract).is_some_and(|evs| evs.contains(name))
    }
}

/// Build the symbol table for one source unit. `global` maps every contract
/// name in the scan set to its definition (so inherited members resolve
/// across files); `linearizations` supplies the resolution order, falling
/// back to the contract alone when absent.
pub fn build_symbols(
    unit: &SourceUnit,
    global: &BTreeMap<String, &ContractDef>,
    linearizations: &BTreeMap<String, Vec<String>>,
) -> SymbolTable {
    let mut table = SymbolTable::default();

    for contract in &unit.contracts {
        let order = linearizations
            .get(&contract.name)
            .cloned()
            .unwrap_or_else(|| vec![contract.name.clone()]);

        let mut vars = BTreeMap::new();
        let mut funcs = BTreeMap::new();
        let mut mods = BTreeMap::new();
        let mut events = BTreeSet::new();
        // Base-most first, so derived members overwrite inherited ones.
        for ancestor in order.iter().rev() {
            let Some(def) = global.get(ancestor) else { continue };
            for v in &def.state_vars {
                vars.insert(
                    v.name.clone(),
                    StateVarInfo {
                        owner: ancestor.clone(),
                        name: v.name.clone(),
                        name_span: v.name_span,
                        span: v.span,
                        type_name: v.type_name.clone(),
                        is_constant: v.is_constant,
                        is_immutable: v.is_immutable,
                        visibility: v.visibility,
                    },
                );
            }
            for f in &def.functions {
                if f.kind == FunctionKind::Regular {
                    funcs.insert(
                        (f.name.clone(), f.params.len()),
                        FunctionInfo {
                            owner: ancestor.clone(),
                            name: f.name.clone(),
                            arity: f.params.len(),
                            name_span: f.name_span,
                            span: f.span,
                        },
                    );
                }
            }
            for m in &def.modifiers {
                mods.insert(
                    m.name.clone(),
                    ModifierInfo {
                        owner: ancestor.clone(),
                        name: m.name.clone(),
                        name_span: m.name_span,
                        span: m.span,
                    },
                );
            }
            for e in &def.events {
                events.insert(e.name.clone());
            }
        }
        table.state_vars.insert(contract.name.clone(), vars);
        table.functions.insert(contract.name.clone(), funcs);
        table.modifiers.insert(contract.name.clone(), mods);
        table.events.insert(contract.name.clone(), events);
    }

    for contract in &unit.contracts {
        record_shadows(contract, &mut table.shadows);
        let mut resolver = Resolver {
            contract: &contract.name,
            table: &mut table,
            scopes: Vec::new(),
        };
        for f in &contract.functions {
            resolver.run_callable(&f.params, &f.returns, f.body.as_ref());
            for inv in &f.modifiers {
                if let Some(args) = &inv.args {
                    // Modifier arguments evaluate in the function's parameter
                    // scope.
                    resolver.scopes.push(scope_of_params(&f.params));
                    for a in args {
                        resolver.resolve_expression(a);
                    }
                    resolver.scopes.pop();
                }
            }
        }
        for m in &contract.modifiers {
            resolver.run_callable(&m.params, &[], m.body.as_ref());
        }
        for v in &contract.state_vars {
            if let Some(init) = &v.initializer {
                let mut resolver = Resolver {
                    contract: &contract.name,
                    table: &mut table,
                    scopes: Vec::new(),
                };
                resolver.resolve_expression(init);
            }
        }
    }

    table
}

fn record_shadows(contract: &ContractDef, shadows: &mut Vec<ShadowRecord>) {
    if is_builtin_global(&contract.name) {
        shadows.push(ShadowRecord {
            name: contract.name.clone(),
            span: contract.name_span,
            declared_as: "contract",
            contract: None,
        });
    }
    let mut push = |name: &str, span: Span, declared_as: &'static str| {
        if is_builtin_global(name) {
            shadows.push(ShadowRecord {
                name: name.to_string(),
                span,
                declared_as,
                contract: Some(contract.name.clone()),
            });
        }
    };
    for v in &contract.state_vars {
        push(&v.name, v.name_span, "state variable");
    }
    for f in &contract.functions {
        if f.kind == FunctionKind::Regular {
            push(&f.name, f.name_span, "function");
        }
        for p in f.params.iter().chain(f.returns.iter()) {
            if let Some(name) = &p.name {
                push(name, p.name_span, "parameter");
            }
        }
        if let Some(body) = &f.body {
            shadow_locals(body, &mut push);
        }
    }
    for m in &contract.modifiers {
        push(&m.name, m.name_span, "modifier");
        for p in &m.params {
            if let Some(name) = &p.name {
                push(name, p.name_span, "parameter");
            }
        }
        if let Some(body) = &m.body {
            shadow_locals(body, &mut push);
        }
    }
}

fn shadow_locals(block: &Block, push: &mut impl FnMut(&str, Span, &'static str)) {
    for stmt in &block.statements {
        stmt.walk(&mut |s| {
            if let Statement::VariableDeclaration { declarations, .. } = s {
                for var in declarations.iter().flatten() {
                    push(&var.name, var.name_span, "local variable");
                }
            }
        });
    }
}

fn scope_of_params(params: &[Parameter]) -> BTreeMap<String, Span> {
    params
        .iter()
        .filter_map(|p| p.name.as_ref().map(|n| (n.clone(), p.name_span)))
        .collect()
}

struct Resolver<'a> {
    contract: &'a str,
    table: &'a mut SymbolTable,
    /// Innermost scope last; parameter scope is pushed first.
    scopes: Vec<BTreeMap<String, Span>>,
}

impl Resolver<'_> {
    fn run_callable(
        &mut self,
        params: &[Parameter],
        returns: &[Parameter],
        body: Option<&Block>,
    ) {
        let Some(body) = body else { return };
        let mut param_scope = scope_of_params(params);
        param_scope.extend(scope_of_params(returns));
        self.scopes.push(param_scope);
        self.resolve_block(body);
        self.scopes.pop();
    }

    fn resolve_block(&mut self, block: &Block) {
        self.scopes.push(BTreeMap::new());
        for stmt in &block.statements {
            self.resolve_statement(stmt);
        }
        self.scopes.pop();
    }

    fn resolve_statement(&mut self, stmt: &Statement) {
        match stmt {
            Statement::Block(block) | Statement::Unchecked { block, .. } => {
                self.resolve_block(block)
            }
            Statement::If { condition, then_branch, else_branch, .. } => {
                self.resolve_expression(condition);
                self.resolve_statement(then_branch);
                if let Some(e) = else_branch {
                    self.resolve_statement(e);
                }
            }
            Statement::While { condition, body, .. }
            | Statement::DoWhile { condition, body, .. } => {
                self.resolve_expression(condition);
                self.resolve_statement(body);
            }
            Statement::For { init, condition, update, body, .. } => {
                // Loop variables live in a scope that covers the whole loop.
                self.scopes.push(BTreeMap::new());
                if let Some(i) = init {
                    self.resolve_statement(i);
                }
                if let Some(c) = condition {
                    self.resolve_expression(c);
                }
                if let Some(u) = update {
                    self.resolve_expression(u);
                }
                self.resolve_statement(body);
                self.scopes.pop();
            }
            Statement::VariableDeclaration { declarations, initializer, .. } => {
                // The initializer sees the outer scope only.
                if let Some(init) = initializer {
                    self.resolve_expression(init);
                }
                if let Some(scope) = self.scopes.last_mut() {
                    for var in declarations.iter().flatten() {
                        scope.insert(var.name.clone(), var.name_span);
                    }
                }
            }
            Statement::Return { value, .. } => {
                if let Some(v) = value {
                    self.resolve_expression(v);
                }
            }
            Statement::Emit { call, .. } => self.resolve_expression(call),
            Statement::Expression { expr, .. } => self.resolve_expression(expr),
            Statement::Revert { call, .. } => {
                if let Some(c) = call {
                    self.resolve_expression(c);
                }
            }
            Statement::Assembly { .. } | Statement::Placeholder { .. } => {}
        }
    }

    fn resolve_expression(&mut self, expr: &Expression) {
        expr.walk(&mut |e| {
            if let Expression::Identifier { name, span } = e {
                let resolution = self.lookup(name);
                self.table.resolutions.insert(*span, resolution);
            }
        });
    }

    fn lookup(&self, name: &str) -> Resolution {
        for (depth, scope) in self.scopes.iter().enumerate().rev() {
            if let Some(span) = scope.get(name) {
                // The outermost scope holds the parameters.
                let kind = if depth == 0 { SymbolKind::Param } else { SymbolKind::Local };
                return Resolution {
                    kind,
                    name: name.to_string(),
                    decl_span: Some(*span),
                    owner: None,
                };
            }
        }
        if let Some(info) = self.table.state_var(self.contract, name) {
            return Resolution {
                kind: SymbolKind::StateVar,
                name: name.to_string(),
                decl_span: Some(info.name_span),
                owner: Some(info.owner.clone()),
            };
        }
        if let Some(fns) = self.table.functions.get(self.contract) {
            if let Some(info) = fns.values().find(|f| f.name == name) {
                return Resolution {
                    kind: SymbolKind::Function,
                    name: name.to_string(),
                    decl_span: Some(info.name_span),
                    owner: Some(info.owner.clone()),
                };
            }
        }
        if let Some(mods) = self.table.modifiers.get(self.contract) {
            if let Some(info) = mods.get(name) {
                return Resolution {
                    kind: SymbolKind::Modifier,
                    name: name.to_string(),
                    decl_span: Some(info.name_span),
                    owner: Some(info.owner.clone()),
                };
            }
        }
        if is_builtin_global(name) {
            return Resolution {
                kind: SymbolKind::Builtin,
                name: name.to_string(),
                decl_span: None,
                owner: None,
            };
        }
        Resolution {
            kind: SymbolKind::Unknown,
            name: name.to_string(),
            decl_span: None,
            owner: None,
        }
    }
}
