//! Span-annotated AST for the supported Solidity subset.
//!
//! Every node carries the [`Span`] of the source text it was parsed from;
//! child spans always nest within their parent's span. Structural equality
//! tests use [`strip_spans`] to erase positions first, so two parses of
//! differently formatted but structurally identical sources compare equal.
//!
//! The shape is deliberately small: exactly the declarations, statements,
//! and expressions the rule catalog inspects. Constructs outside the subset
//! (user-defined value types, `try`/`catch`, Yul internals, ...) are parse
//! errors rather than half-understood nodes.

use crate::span::Span;
use crate::version::VersionConstraint;

#[derive(Debug, Clone, PartialEq)]
pub struct SourceUnit {
    pub pragmas: Vec<PragmaDirective>,
    pub imports: Vec<ImportDirective>,
    pub contracts: Vec<ContractDef>,
    pub span: Span,
}

impl SourceUnit {
    /// The constraint of the first `pragma solidity` directive, if any.
    pub fn solidity_constraint(&self) -> Option<&PragmaDirective> {
        self.pragmas.iter().find(|p| p.name == "solidity")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PragmaDirective {
    /// The word after `pragma` (`solidity`, `experimental`, ...).
    pub name: String,
    /// Parsed version constraint for `solidity` pragmas that carry one.
    pub constraint: Option<VersionConstraint>,
    /// Raw body text between the name and the `;`, preserved for printing.
    pub content: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImportDirective {
    /// The quoted import path. Imports are otherwise opaque.
    pub path: String,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractKind {
    Contract,
    Interface,
    Library,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContractDef {
    pub name: String,
    pub name_span: Span,
    pub kind: ContractKind,
    pub is_abstract: bool,
    /// Base contracts in source order.
    pub bases: Vec<BaseSpecifier>,
    pub state_vars: Vec<StateVarDecl>,
    pub functions: Vec<FunctionDef>,
    pub modifiers: Vec<ModifierDef>,
    pub events: Vec<EventDef>,
    pub using_directives: Vec<UsingDirective>,
    pub span: Span,
}

impl ContractDef {
    pub fn has_fallback(&self) -> bool {
        self.functions.iter().any(|f| f.kind == FunctionKind::Fallback)
    }

    pub fn has_receive(&self) -> bool {
        self.functions.iter().any(|f| f.kind == FunctionKind::Receive)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaseSpecifier {
    pub name: String,
    pub name_span: Span,
    /// Constructor arguments given in the inheritance list, if any.
    pub args: Option<Vec<Expression>>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EventDef {
    pub name: String,
    pub name_span: Span,
    pub span: Span,
}

/// `using <library> for <type>;`
#[derive(Debug, Clone, PartialEq)]
pub struct UsingDirective {
    pub library: String,
    /// Target type exactly as written (`uint256`, `*`, ...).
    pub target: String,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Visibility {
    Public,
    Private,
    Internal,
    External,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutability {
    Pure,
    View,
    Payable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataLocation {
    Memory,
    Storage,
    Calldata,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVarDecl {
    pub name: String,
    pub name_span: Span,
    pub type_name: TypeName,
    pub visibility: Option<Visibility>,
    pub is_constant: bool,
    pub is_immutable: bool,
    pub initializer: Option<Expression>,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    Regular,
    Constructor,
    Fallback,
    Receive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionDef {
    pub kind: FunctionKind,
    /// Empty for constructors and for keyword-style fallback/receive.
    pub name: String,
    pub name_span: Span,
    pub params: Vec<Parameter>,
    pub returns: Vec<Parameter>,
    pub visibility: Option<Visibility>,
    pub mutability: Option<Mutability>,
    pub is_virtual: bool,
    /// `override` clause; the vector holds the parenthesized names, if any.
    pub overrides: Option<Vec<String>>,
    pub modifiers: Vec<ModifierInvocation>,
    /// `None` for bodyless declarations (interfaces, abstract functions).
    pub body: Option<Block>,
    pub span: Span,
}

impl FunctionDef {
    /// Display name for diagnostics (`constructor`, `fallback`, ...).
    pub fn display_name(&self) -> &str {
        match self.kind {
            FunctionKind::Constructor => "constructor",
            FunctionKind::Fallback if self.name.is_empty() => "fallback",
            FunctionKind::Receive if self.name.is_empty() => "receive",
            _ => &self.name,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Parameter {
    pub type_name: TypeName,
    pub location: Option<DataLocation>,
    /// Unnamed parameters are legal (`function f(uint) ...`).
    pub name: Option<String>,
    pub name_span: Span,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModifierInvocation {
    pub name: String,
    pub name_span: Span,
    /// `None` when written without parentheses (`onlyOwner` vs `onlyOwner()`).
    pub args: Option<Vec<Expression>>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModifierDef {
    pub name: String,
    pub name_span: Span,
    pub params: Vec<Parameter>,
    pub is_virtual: bool,
    pub overrides: Option<Vec<String>>,
    /// `None` for `modifier m virtual;` declarations.
    pub body: Option<Block>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TypeName {
    /// `uint256`, `address`, `address payable`, `bytes32`, ...
    Elementary(String),
    /// A possibly qualified user-defined name (`IToken`, `Lib.Struct`).
    UserDefined(Vec<String>),
    Mapping { key: Box<TypeName>, value: Box<TypeName> },
    /// `T[]` (dynamic) or `T[n]` (fixed length).
    Array { base: Box<TypeName>, length: Option<Box<Expression>> },
}

impl TypeName {
    pub fn is_address(&self) -> bool {
        matches!(self, TypeName::Elementary(t) if t == "address" || t == "address payable")
    }

    pub fn is_dynamic_array(&self) -> bool {
        matches!(self, TypeName::Array { length: None, .. })
    }

    pub fn is_bool(&self) -> bool {
        matches!(self, TypeName::Elementary(t) if t == "bool")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub statements: Vec<Statement>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    Block(Block),
    If {
        condition: Expression,
        /// Always a `Statement::Block`; the parser normalizes single
        /// statements into one-element blocks.
        then_branch: Box<Statement>,
        /// A `Block`, or an `If` for `else if` chains.
        else_branch: Option<Box<Statement>>,
        span: Span,
    },
    While {
        condition: Expression,
        body: Box<Statement>,
        span: Span,
    },
    DoWhile {
        body: Box<Statement>,
        condition: Expression,
        span: Span,
    },
    For {
        init: Option<Box<Statement>>,
        condition: Option<Expression>,
        update: Option<Expression>,
        body: Box<Statement>,
        span: Span,
    },
    Return {
        value: Option<Expression>,
        span: Span,
    },
    Emit {
        /// The event invocation, kept as a call expression.
        call: Expression,
        span: Span,
    },
    Expression {
        expr: Expression,
        span: Span,
    },
    VariableDeclaration {
        /// One entry per declared slot; `None` for skipped tuple slots as in
        /// `(bool ok, ) = ...`.
        declarations: Vec<Option<DeclaredVar>>,
        initializer: Option<Expression>,
        span: Span,
    },
    Unchecked {
        block: Block,
        span: Span,
    },
    /// Inline assembly, kept opaque. `body` is the raw text inside the
    /// braces, preserved only so the printer can reproduce it.
    Assembly {
        body: String,
        span: Span,
    },
    Revert {
        /// `revert()`, `revert("why")`, `revert Custom(...)` — the call part.
        call: Option<Expression>,
        span: Span,
    },
    /// The `_;` placeholder inside a modifier body.
    Placeholder {
        span: Span,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeclaredVar {
    pub type_name: TypeName,
    pub location: Option<DataLocation>,
    pub name: String,
    pub name_span: Span,
    pub span: Span,
}

impl Statement {
    pub fn span(&self) -> Span {
        match self {
            Statement::Block(b) => b.span,
            Statement::If { span, .. }
            | Statement::While { span, .. }
            | Statement::DoWhile { span, .. }
            | Statement::For { span, .. }
            | Statement::Return { span, .. }
            | Statement::Emit { span, .. }
            | Statement::Expression { span, .. }
            | Statement::VariableDeclaration { span, .. }
            | Statement::Unchecked { span, .. }
            | Statement::Assembly { span, .. }
            | Statement::Revert { span, .. }
            | Statement::Placeholder { span } => *span,
        }
    }

    /// The expressions evaluated by this statement itself, excluding those
    /// belonging to nested statements. For a loop this is the condition
    /// (and `for`-update); the body's expressions belong to the body.
    pub fn own_expressions(&self) -> Vec<&Expression> {
        match self {
            Statement::Block(_) | Statement::Unchecked { .. } | Statement::Assembly { .. } => {
                Vec::new()
            }
            Statement::If { condition, .. } | Statement::While { condition, .. } => {
                vec![condition]
            }
            Statement::DoWhile { condition, .. } => vec![condition],
            Statement::For { condition, update, .. } => {
                condition.iter().chain(update.iter()).collect()
            }
            Statement::Return { value, .. } => value.iter().collect(),
            Statement::Emit { call, .. } => vec![call],
            Statement::Expression { expr, .. } => vec![expr],
            Statement::VariableDeclaration { initializer, .. } => initializer.iter().collect(),
            Statement::Revert { call, .. } => call.iter().collect(),
            Statement::Placeholder { .. } => Vec::new(),
        }
    }

    /// Visit this statement and every statement nested inside it, pre-order.
    pub fn walk(&self, visit: &mut impl FnMut(&Statement)) {
        visit(self);
        match self {
            Statement::Block(b) | Statement::Unchecked { block: b, .. } => {
                for s in &b.statements {
                    s.walk(visit);
                }
            }
            Statement::If { then_branch, else_branch, .. } => {
                then_branch.walk(visit);
                if let Some(e) = else_branch {
                    e.walk(visit);
                }
            }
            Statement::While { body, .. } | Statement::DoWhile { body, .. } => body.walk(visit),
            Statement::For { init, body, .. } => {
                if let Some(i) = init {
                    i.walk(visit);
                }
                body.walk(visit);
            }
            _ => {}
        }
    }

    /// Visit every expression anywhere under this statement, including
    /// inside nested statements, each followed by its subexpressions.
    pub fn walk_expressions(&self, visit: &mut impl FnMut(&Expression)) {
        self.walk(&mut |s| {
            for e in s.own_expressions() {
                e.walk(visit);
            }
        });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Pow,
    Shl,
    Shr,
    BitAnd,
    BitOr,
    BitXor,
    And,
    Or,
    Eq,
    Ne,
    Lt,
    Gt,
    Le,
    Ge,
}

impl BinaryOp {
    pub fn is_comparison(self) -> bool {
        use BinaryOp::*;
        matches!(self, Eq | Ne | Lt | Gt | Le | Ge)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Not,
    BitNot,
    Neg,
    Inc,
    Dec,
    Delete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssignOp {
    Assign,
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    BitAnd,
    BitOr,
    BitXor,
    Shl,
    Shr,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expression {
    Identifier {
        name: String,
        span: Span,
    },
    MemberAccess {
        base: Box<Expression>,
        member: String,
        member_span: Span,
        span: Span,
    },
    IndexAccess {
        base: Box<Expression>,
        index: Box<Expression>,
        span: Span,
    },
    Call {
        callee: Box<Expression>,
        /// `{value: ..., gas: ...}` call options (0.7+ syntax).
        options: Vec<(String, Expression)>,
        args: Vec<Expression>,
        span: Span,
    },
    /// A cast through an elementary type keyword: `address(x)`,
    /// `payable(y)`, `uint160(z)`. Casts through contract names parse as
    /// ordinary calls and are resolved semantically.
    TypeCast {
        target: String,
        arg: Box<Expression>,
        span: Span,
    },
    Binary {
        op: BinaryOp,
        left: Box<Expression>,
        right: Box<Expression>,
        span: Span,
    },
    Unary {
        op: UnaryOp,
        operand: Box<Expression>,
        prefix: bool,
        span: Span,
    },
    Assignment {
        op: AssignOp,
        lhs: Box<Expression>,
        rhs: Box<Expression>,
        span: Span,
    },
    Conditional {
        condition: Box<Expression>,
        true_expr: Box<Expression>,
        false_expr: Box<Expression>,
        span: Span,
    },
    NumberLiteral {
        /// Verbatim literal text (`0x1F`, `1_000`, `1e18`).
        text: String,
        /// Attached denomination or time unit (`ether`, `days`, ...).
        denomination: Option<String>,
        span: Span,
    },
    StringLiteral {
        /// Verbatim text including quotes.
        raw: String,
        span: Span,
    },
    BoolLiteral {
        value: bool,
        span: Span,
    },
    /// Parenthesized tuple `(a, b)`; single parenthesized expressions are
    /// unwrapped by the parser and never appear as one-element tuples.
    /// `None` marks empty slots as in `(, b)`.
    Tuple {
        components: Vec<Option<Expression>>,
        span: Span,
    },
    New {
        type_name: TypeName,
        span: Span,
    },
}

impl Expression {
    pub fn span(&self) -> Span {
        match self {
            Expression::Identifier { span, .. }
            | Expression::MemberAccess { span, .. }
            | Expression::IndexAccess { span, .. }
            | Expression::Call { span, .. }
            | Expression::TypeCast { span, .. }
            | Expression::Binary { span, .. }
            | Expression::Unary { span, .. }
            | Expression::Assignment { span, .. }
            | Expression::Conditional { span, .. }
            | Expression::NumberLiteral { span, .. }
            | Expression::StringLiteral { span, .. }
            | Expression::BoolLiteral { span, .. }
            | Expression::Tuple { span, .. }
            | Expression::New { span, .. } => *span,
        }
    }

    /// Visit this expression and all subexpressions, pre-order.
    pub fn walk(&self, visit: &mut impl FnMut(&Expression)) {
        visit(self);
        match self {
            Expression::MemberAccess { base, .. } => base.walk(visit),
            Expression::IndexAccess { base, index, .. } => {
                base.walk(visit);
                index.walk(visit);
            }
            Expression::Call { callee, options, args, .. } => {
                callee.walk(visit);
                for (_, o) in options {
                    o.walk(visit);
                }
                for a in args {
                    a.walk(visit);
                }
            }
            Expression::TypeCast { arg, .. } => arg.walk(visit),
            Expression::Binary { left, right, .. } => {
                left.walk(visit);
                right.walk(visit);
            }
            Expression::Unary { operand, .. } => operand.walk(visit),
            Expression::Assignment { lhs, rhs, .. } => {
                lhs.walk(visit);
                rhs.walk(visit);
            }
            Expression::Conditional { condition, true_expr, false_expr, .. } => {
                condition.walk(visit);
                true_expr.walk(visit);
                false_expr.walk(visit);
            }
            Expression::Tuple { components, .. } => {
                for c in components.iter().flatten() {
                    c.walk(visit);
                }
            }
            Expression::New { type_name, .. } => walk_type_exprs(type_name, visit),
            Expression::Identifier { .. }
            | Expression::NumberLiteral { .. }
            | Expression::StringLiteral { .. }
            | Expression::BoolLiteral { .. } => {}
        }
    }

    /// True if any node in this expression satisfies the predicate.
    pub fn contains(&self, pred: &mut impl FnMut(&Expression) -> bool) -> bool {
        let mut found = false;
        self.walk(&mut |e| {
            if !found && pred(e) {
                found = true;
            }
        });
        found
    }

    /// True if the expression mentions the identifier `name` anywhere.
    pub fn mentions_identifier(&self, name: &str) -> bool {
        self.contains(&mut |e| matches!(e, Expression::Identifier { name: n, .. } if n == name))
    }
}

fn walk_type_exprs(ty: &TypeName, visit: &mut impl FnMut(&Expression)) {
    match ty {
        TypeName::Array { base, length } => {
            if let Some(len) = length {
                len.walk(visit);
            }
            walk_type_exprs(base, visit);
        }
        TypeName::Mapping { key, value } => {
            walk_type_exprs(key, visit);
            walk_type_exprs(value, visit);
        }
        TypeName::Elementary(_) | TypeName::UserDefined(_) => {}
    }
}

// ---------------------------------------------------------------------------
// Span erasure for structural comparison.
// ---------------------------------------------------------------------------

/// Set every span in the unit to the default. Two parses are structurally
/// equal iff their stripped forms compare equal.
pub fn strip_spans(unit: &mut SourceUnit) {
    unit.span = Span::default();
    for p in &mut unit.pragmas {
        p.span = Span::default();
    }
    for i in &mut unit.imports {
        i.span = Span::default();
    }
    for c in &mut unit.contracts {
        strip_contract(c);
    }
}

fn strip_contract(c: &mut ContractDef) {
    c.span = Span::default();
    c.name_span = Span::default();
    for b in &mut c.bases {
        b.span = Span::default();
        b.name_span = Span::default();
        if let Some(args) = &mut b.args {
            for a in args {
                strip_expr(a);
            }
        }
    }
    for v in &mut c.state_vars {
        v.span = Span::default();
        v.name_span = Span::default();
        strip_type(&mut v.type_name);
        if let Some(e) = &mut v.initializer {
            strip_expr(e);
        }
    }
    for f in &mut c.functions {
        strip_function(f);
    }
    for m in &mut c.modifiers {
        m.span = Span::default();
        m.name_span = Span::default();
        for p in &mut m.params {
            strip_param(p);
        }
        if let Some(b) = &mut m.body {
            strip_block(b);
        }
    }
    for e in &mut c.events {
        e.span = Span::default();
        e.name_span = Span::default();
    }
    for u in &mut c.using_directives {
        u.span = Span::default();
    }
}

fn strip_function(f: &mut FunctionDef) {
    f.span = Span::default();
    f.name_span = Span::default();
    for p in f.params.iter_mut().chain(f.returns.iter_mut()) {
        strip_param(p);
    }
    for m in &mut f.modifiers {
        m.span = Span::default();
        m.name_span = Span::default();
        if let Some(args) = &mut m.args {
            for a in args {
                strip_expr(a);
            }
        }
    }
    if let Some(b) = &mut f.body {
        strip_block(b);
    }
}

fn strip_param(p: &mut Parameter) {
    p.span = Span::default();
    p.name_span = Span::default();
    strip_type(&mut p.type_name);
}

fn strip_type(ty: &mut TypeName) {
    match ty {
        TypeName::Mapping { key, value } => {
            strip_type(key);
            strip_type(value);
        }
        TypeName::Array { base, length } => {
            strip_type(base);
            if let Some(len) = length {
                strip_expr(len);
            }
        }
        TypeName::Elementary(_) | TypeName::UserDefined(_) => {}
    }
}

fn strip_block(b: &mut Block) {
    b.span = Span::default();
    for s in &mut b.statements {
        strip_stmt(s);
    }
}

fn strip_stmt(s: &mut Statement) {
    match s {
        Statement::Block(b) => strip_block(b),
        Statement::If { condition, then_branch, else_branch, span } => {
            *span = Span::default();
            strip_expr(condition);
            strip_stmt(then_branch);
            if let Some(e) = else_branch {
                strip_stmt(e);
            }
        }
        Statement::While { condition, body, span } => {
            *span = Span::default();
            strip_expr(condition);
            strip_stmt(body);
        }
        Statement::DoWhile { body, condition, span } => {
            *span = Span::default();
            strip_stmt(body);
            strip_expr(condition);
        }
        Statement::For { init, condition, update, body, span } => {
            *span = Span::default();
            if let Some(i) = init {
                strip_stmt(i);
            }
            if let Some(c) = condition {
                strip_expr(c);
            }
            if let Some(u) = update {
                strip_expr(u);
            }
            strip_stmt(body);
        }
        Statement::Return { value, span } => {
            *span = Span::default();
            if let Some(v) = value {
                strip_expr(v);
            }
        }
        Statement::Emit { call, span } => {
            *span = Span::default();
            strip_expr(call);
        }
        Statement::Expression { expr, span } => {
            *span = Span::default();
            strip_expr(expr);
        }
        Statement::VariableDeclaration { declarations, initializer, span } => {
            *span = Span::default();
            for d in declarations.iter_mut().flatten() {
                d.span = Span::default();
                d.name_span = Span::default();
                strip_type(&mut d.type_name);
            }
            if let Some(e) = initializer {
                strip_expr(e);
            }
        }
        Statement::Unchecked { block, span } => {
            *span = Span::default();
            strip_block(block);
        }
        Statement::Assembly { span, .. } => *span = Span::default(),
        Statement::Revert { call, span } => {
            *span = Span::default();
            if let Some(c) = call {
                strip_expr(c);
            }
        }
        Statement::Placeholder { span } => *span = Span::default(),
    }
}

fn strip_expr(e: &mut Expression) {
    match e {
        Expression::Identifier { span, .. }
        | Expression::NumberLiteral { span, .. }
        | Expression::StringLiteral { span, .. }
        | Expression::BoolLiteral { span, .. } => *span = Span::default(),
        Expression::MemberAccess { base, member_span, span, .. } => {
            *span = Span::default();
            *member_span = Span::default();
            strip_expr(base);
        }
        Expression::IndexAccess { base, index, span } => {
            *span = Span::default();
            strip_expr(base);
            strip_expr(index);
        }
        Expression::Call { callee, options, args, span } => {
            *span = Span::default();
            strip_expr(callee);
            for (_, o) in options {
                strip_expr(o);
            }
            for a in args {
                strip_expr(a);
            }
        }
        Expression::TypeCast { arg, span, .. } => {
            *span = Span::default();
            strip_expr(arg);
        }
        Expression::Binary { left, right, span, .. } => {
            *span = Span::default();
            strip_expr(left);
            strip_expr(right);
        }
        Expression::Unary { operand, span, .. } => {
            *span = Span::default();
            strip_expr(operand);
        }
        Expression::Assignment { lhs, rhs, span, .. } => {
            *span = Span::default();
            strip_expr(lhs);
            strip_expr(rhs);
        }
        Expression::Conditional { condition, true_expr, false_expr, span } => {
            *span = Span::default();
            strip_expr(condition);
            strip_expr(true_expr);
            strip_expr(false_expr);
        }
        Expression::Tuple { components, span } => {
            *span = Span::default();
            for c in components.iter_mut().flatten() {
                strip_expr(c);
            }
        }
        Expression::New { type_name, span } => {
            *span = Span::default();
            strip_type(type_name);
        }
    }
}
