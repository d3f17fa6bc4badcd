//! Canonical pretty-printer for the AST.
//!
//! [`pretty_print`] produces deterministic, normalized source text with the
//! invariant that re-parsing the output yields a structurally identical tree
//! (spans aside). Operands that are not atomic are parenthesized
//! conservatively so the printed precedence always matches the tree.

use crate::ast::*;

/// Render a whole source unit as normalized Solidity text.
pub fn pretty_print(unit: &SourceUnit) -> String {
    let mut p = Printer::new();
    for pragma in &unit.pragmas {
        if pragma.content.is_empty() {
            p.line(&format!("pragma {};", pragma.name));
        } else {
            p.line(&format!("pragma {} {};", pragma.name, pragma.content));
        }
    }
    for import in &unit.imports {
        p.line(&format!("import \"{}\";", import.path));
    }
    if !unit.pragmas.is_empty() || !unit.imports.is_empty() {
        p.blank();
    }
    for (i, contract) in unit.contracts.iter().enumerate() {
        if i > 0 {
            p.blank();
        }
        p.contract(contract);
    }
    p.out
}

/// Render a type exactly as the parser would accept it back.
pub fn type_to_string(ty: &TypeName) -> String {
    match ty {
        TypeName::Elementary(name) => name.clone(),
        TypeName::UserDefined(path) => path.join("."),
        TypeName::Mapping { key, value } => {
            format!("mapping({} => {})", type_to_string(key), type_to_string(value))
        }
        TypeName::Array { base, length } => match length {
            Some(len) => format!("{}[{}]", type_to_string(base), expr_to_string(len)),
            None => format!("{}[]", type_to_string(base)),
        },
    }
}

/// Render one expression on its own.
pub fn expr_to_string(expr: &Expression) -> String {
    let mut s = String::new();
    write_expr(&mut s, expr);
    s
}

struct Printer {
    out: String,
    indent: usize,
}

impl Printer {
    fn new() -> Self {
        Printer { out: String::new(), indent: 0 }
    }

    fn line(&mut self, text: &str) {
        for _ in 0..self.indent {
            self.out.push_str("    ");
        }
        self.out.push_str(text);
        self.out.push('\n');
    }

    fn blank(&mut self) {
        self.out.push('\n');
    }

    fn contract(&mut self, c: &ContractDef) {
        let mut header = String::new();
        if c.is_abstract {
            header.push_str("abstract ");
        }
        header.push_str(match c.kind {
            ContractKind::Contract => "contract",
            ContractKind::Interface => "interface",
            ContractKind::Library => "library",
        });
        header.push(' ');
        header.push_str(&c.name);
        if !c.bases.is_empty() {
            header.push_str(" is ");
            let bases: Vec<String> = c
                .bases
                .iter()
                .map(|b| match &b.args {
                    Some(args) => format!("{}({})", b.name, join_exprs(args)),
                    None => b.name.clone(),
                })
                .collect();
            header.push_str(&bases.join(", "));
        }
        header.push_str(" {");
        self.line(&header);
        self.indent += 1;

        for u in &c.using_directives {
            self.line(&format!("using {} for {};", u.library, u.target));
        }
        for e in &c.events {
            self.line(&format!("event {}();", e.name));
        }
        for v in &c.state_vars {
            self.state_var(v);
        }
        for m in &c.modifiers {
            self.modifier(m);
        }
        for f in &c.functions {
            self.function(f);
        }

        self.indent -= 1;
        self.line("}");
    }

    fn state_var(&mut self, v: &StateVarDecl) {
        let mut s = type_to_string(&v.type_name);
        if let Some(vis) = v.visibility {
            s.push(' ');
            s.push_str(visibility_str(vis));
        }
        if v.is_constant {
            s.push_str(" constant");
        }
        if v.is_immutable {
            s.push_str(" immutable");
        }
        s.push(' ');
        s.push_str(&v.name);
        if let Some(init) = &v.initializer {
            s.push_str(" = ");
            write_expr(&mut s, init);
        }
        s.push(';');
        self.line(&s);
    }

    fn modifier(&mut self, m: &ModifierDef) {
        let mut s = format!("modifier {}({})", m.name, params_to_string(&m.params));
        if m.is_virtual {
            s.push_str(" virtual");
        }
        if let Some(list) = &m.overrides {
            s.push_str(&override_str(list));
        }
        match &m.body {
            Some(body) => {
                self.open_block(&s);
                self.block_stmts(body);
                self.close_block();
            }
            None => {
                s.push(';');
                self.line(&s);
            }
        }
    }

    fn function(&mut self, f: &FunctionDef) {
        let mut s = match f.kind {
            FunctionKind::Regular => format!("function {}", f.name),
            FunctionKind::Constructor => "constructor".to_string(),
            FunctionKind::Fallback => "fallback".to_string(),
            FunctionKind::Receive => "receive".to_string(),
        };
        s.push('(');
        s.push_str(&params_to_string(&f.params));
        s.push(')');
        if let Some(vis) = f.visibility {
            s.push(' ');
            s.push_str(visibility_str(vis));
        }
        if let Some(m) = f.mutability {
            s.push(' ');
            s.push_str(match m {
                Mutability::Pure => "pure",
                Mutability::View => "view",
                Mutability::Payable => "payable",
            });
        }
        if f.is_virtual {
            s.push_str(" virtual");
        }
        if let Some(list) = &f.overrides {
            s.push_str(&override_str(list));
        }
        for m in &f.modifiers {
            s.push(' ');
            s.push_str(&m.name);
            if let Some(args) = &m.args {
                s.push('(');
                s.push_str(&join_exprs(args));
                s.push(')');
            }
        }
        if !f.returns.is_empty() {
            s.push_str(" returns (");
            s.push_str(&params_to_string(&f.returns));
            s.push(')');
        }
        match &f.body {
            Some(body) => {
                self.open_block(&s);
                self.block_stmts(body);
                self.close_block();
            }
            None => {
                s.push(';');
                self.line(&s);
            }
        }
    }

    fn open_block(&mut self, header: &str) {
        if header.is_empty() {
            self.line("{");
        } else {
            self.line(&format!("{header} {{"));
        }
        self.indent += 1;
    }

    fn close_block(&mut self) {
        self.indent -= 1;
        self.line("}");
    }

    fn block_stmts(&mut self, block: &Block) {
        for stmt in &block.statements {
            self.statement(stmt);
        }
    }

    fn statement(&mut self, stmt: &Statement) {
        match stmt {
            Statement::Block(block) => {
                self.open_block("");
                self.block_stmts(block);
                self.close_block();
            }
            Statement::If { condition, then_branch, else_branch, .. } => {
                self.if_chain(condition, then_branch, else_branch.as_deref());
            }
            Statement::While { condition, body, .. } => {
                self.open_block(&format!("while ({})", expr_to_string(condition)));
                self.branch_body(body);
                self.close_block();
            }
            Statement::DoWhile { body, condition, .. } => {
                self.open_block("do");
                self.branch_body(body);
                self.indent -= 1;
                self.line(&format!("}} while ({});", expr_to_string(condition)));
            }
            Statement::For { init, condition, update, body, .. } => {
                let init_s = match init {
                    Some(stmt) => self.inline_stmt(stmt),
                    None => ";".to_string(),
                };
                let cond_s = condition.as_ref().map(expr_to_string).unwrap_or_default();
                let update_s = update.as_ref().map(expr_to_string).unwrap_or_default();
                self.open_block(&format!("for ({init_s} {cond_s}; {update_s})"));
                self.branch_body(body);
                self.close_block();
            }
            Statement::Return { value, .. } => match value {
                Some(v) => self.line(&format!("return {};", expr_to_string(v))),
                None => self.line("return;"),
            },
            Statement::Emit { call, .. } => {
                self.line(&format!("emit {};", expr_to_string(call)));
            }
            Statement::Expression { expr, .. } => {
                self.line(&format!("{};", expr_to_string(expr)));
            }
            Statement::VariableDeclaration { declarations, initializer, .. } => {
                self.line(&self.var_decl_string(declarations, initializer.as_ref()));
            }
            Statement::Unchecked { block, .. } => {
                self.open_block("unchecked");
                self.block_stmts(block);
                self.close_block();
            }
            Statement::Assembly { body, .. } => {
                self.line(&format!("assembly {{{body}}}"));
            }
            Statement::Revert { call, .. } => match call {
                Some(c) => self.line(&format!("revert {};", expr_to_string(c))),
                None => self.line("revert;"),
            },
            Statement::Placeholder { .. } => self.line("_;"),
        }
    }

    /// Loop/branch bodies were normalized to blocks at parse time; print the
    /// contained statements, falling back to a nested statement if a caller
    /// built an unnormalized tree by hand.
    fn branch_body(&mut self, body: &Statement) {
        match body {
            Statement::Block(block) => self.block_stmts(block),
            other => self.statement(other),
        }
    }

    fn if_chain(
        &mut self,
        condition: &Expression,
        then_branch: &Statement,
        else_branch: Option<&Statement>,
    ) {
        self.open_block(&format!("if ({})", expr_to_string(condition)));
        self.branch_body(then_branch);
        match else_branch {
            None => self.close_block(),
            Some(els) => self.else_tail(els),
        }
    }

    fn else_tail(&mut self, els: &Statement) {
        if let Statement::If { condition, then_branch, else_branch, .. } = els {
            self.indent -= 1;
            self.open_block(&format!("}} else if ({})", expr_to_string(condition)));
            self.branch_body(then_branch);
            match else_branch {
                None => self.close_block(),
                Some(inner) => self.else_tail(inner),
            }
        } else {
            self.indent -= 1;
            self.open_block("} else");
            self.branch_body(els);
            self.close_block();
        }
    }

    /// A statement rendered without indentation or newline, for `for` headers.
    fn inline_stmt(&self, stmt: &Statement) -> String {
        match stmt {
            Statement::VariableDeclaration { declarations, initializer, .. } => {
                self.var_decl_string(declarations, initializer.as_ref())
            }
            Statement::Expression { expr, .. } => format!("{};", expr_to_string(expr)),
            other => format!("{};", expr_to_string(&placeholder_expr(other))),
        }
    }

    fn var_decl_string(
        &self,
        declarations: &[Option<DeclaredVar>],
        initializer: Option<&Expression>,
    ) -> String {
        let mut s = String::new();
        if declarations.len() == 1 {
            if let Some(var) = &declarations[0] {
                s.push_str(&declared_var_string(var));
            }
        } else {
            s.push('(');
            let parts: Vec<String> = declarations
                .iter()
                .map(|slot| slot.as_ref().map(declared_var_string).unwrap_or_default())
                .collect();
            s.push_str(&parts.join(", "));
            s.push(')');
        }
        if let Some(init) = initializer {
            s.push_str(" = ");
            write_expr(&mut s, init);
        }
        s.push(';');
        s
    }
}

/// Only reachable from hand-built trees that put an unexpected statement in a
/// `for` initializer; renders a harmless stand-in instead of panicking.
fn placeholder_expr(stmt: &Statement) -> Expression {
    Expression::Identifier { name: "_invalid_init".into(), span: stmt.span() }
}

fn declared_var_string(var: &DeclaredVar) -> String {
    let mut s = type_to_string(&var.type_name);
    if let Some(loc) = var.location {
        s.push(' ');
        s.push_str(location_str(loc));
    }
    s.push(' ');
    s.push_str(&var.name);
    s
}

fn params_to_string(params: &[Parameter]) -> String {
    let parts: Vec<String> = params
        .iter()
        .map(|p| {
            let mut s = type_to_string(&p.type_name);
            if let Some(loc) = p.location {
                s.push(' ');
                s.push_str(location_str(loc));
            }
            if let Some(name) = &p.name {
                s.push(' ');
                s.push_str(name);
            }
            s
        })
        .collect();
    parts.join(", ")
}

fn visibility_str(v: Visibility) -> &'static str {
    match v {
        Visibility::Public => "public",
        Visibility::Private => "private",
        Visibility::Internal => "internal",
        Visibility::External => "external",
    }
}

fn location_str(loc: DataLocation) -> &'static str {
    match loc {
        DataLocation::Memory => "memory",
        DataLocation::Storage => "storage",
        DataLocation::Calldata => "calldata",
    }
}

fn override_str(list: &[String]) -> String {
    if list.is_empty() {
        " override".to_string()
    } else {
        format!(" override({})", list.join(", "))
    }
}

fn join_exprs(exprs: &[Expression]) -> String {
    let parts: Vec<String> = exprs.iter().map(expr_to_string).collect();
    parts.join(", ")
}

/// True for expressions that never need wrapping parentheses when used as an
/// operand or access base.
fn is_atom(expr: &Expression) -> bool {
    matches!(
        expr,
        Expression::Identifier { .. }
            | Expression::NumberLiteral { .. }
            | Expression::StringLiteral { .. }
            | Expression::BoolLiteral { .. }
            | Expression::Call { .. }
            | Expression::MemberAccess { .. }
            | Expression::IndexAccess { .. }
            | Expression::TypeCast { .. }
            | Expression::Tuple { .. }
    )
}

fn write_wrapped(out: &mut String, expr: &Expression) {
    if is_atom(expr) {
        write_expr(out, expr);
    } else {
        out.push('(');
        write_expr(out, expr);
        out.push(')');
    }
}

fn write_expr(out: &mut String, expr: &Expression) {
    match expr {
        Expression::Identifier { name, .. } => out.push_str(name),
        Expression::NumberLiteral { text, denomination, .. } => {
            out.push_str(text);
            if let Some(d) = denomination {
                out.push(' ');
                out.push_str(d);
            }
        }
        Expression::StringLiteral { raw, .. } => out.push_str(raw),
        Expression::BoolLiteral { value, .. } => {
            out.push_str(if *value { "true" } else { "false" })
        }
        Expression::MemberAccess { base, member, .. } => {
            write_wrapped(out, base);
            out.push('.');
            out.push_str(member);
        }
        Expression::IndexAccess { base, index, .. } => {
            write_wrapped(out, base);
            out.push('[');
            write_expr(out, index);
            out.push(']');
        }
        Expression::Call { callee, options, args, .. } => {
            // `new T(...)` reads back as a call on a `new` expression; the
            // parens an ordinary non-atom callee would get are unnecessary.
            if matches!(callee.as_ref(), Expression::New { .. }) {
                write_expr(out, callee);
            } else {
                write_wrapped(out, callee);
            }
            if !options.is_empty() {
                out.push('{');
                for (i, (key, value)) in options.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(key);
                    out.push_str(": ");
                    write_expr(out, value);
                }
                out.push('}');
            }
            out.push('(');
            out.push_str(&join_exprs(args));
            out.push(')');
        }
        Expression::TypeCast { target, arg, .. } => {
            out.push_str(target);
            out.push('(');
            write_expr(out, arg);
            out.push(')');
        }
        Expression::New { type_name, .. } => {
            out.push_str("new ");
            out.push_str(&type_to_string(type_name));
        }
        Expression::Binary { op, left, right, .. } => {
            write_binary_operand(out, left);
            out.push(' ');
            out.push_str(binary_op_str(*op));
            out.push(' ');
            write_binary_operand(out, right);
        }
        Expression::Unary { op, operand, prefix, .. } => {
            if *prefix {
                out.push_str(unary_op_str(*op));
                if *op == UnaryOp::Delete {
                    out.push(' ');
                }
                write_wrapped(out, operand);
            } else {
                write_wrapped(out, operand);
                out.push_str(unary_op_str(*op));
            }
        }
        Expression::Assignment { op, lhs, rhs, .. } => {
            write_wrapped(out, lhs);
            out.push(' ');
            out.push_str(assign_op_str(*op));
            out.push(' ');
            write_wrapped(out, rhs);
        }
        Expression::Conditional { condition, true_expr, false_expr, .. } => {
            write_wrapped(out, condition);
            out.push_str(" ? ");
            write_wrapped(out, true_expr);
            out.push_str(" : ");
            write_wrapped(out, false_expr);
        }
        Expression::Tuple { components, .. } => {
            out.push('(');
            for (i, slot) in components.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                if let Some(e) = slot {
                    write_expr(out, e);
                }
            }
            out.push(')');
        }
    }
}

/// Binary operands keep bare unary children (the grammar regroups them
/// identically) but parenthesize nested binaries to pin associativity.
fn write_binary_operand(out: &mut String, operand: &Expression) {
    if is_atom(operand) || matches!(operand, Expression::Unary { .. }) {
        write_expr(out, operand);
    } else {
        out.push('(');
        write_expr(out, operand);
        out.push(')');
    }
}

fn binary_op_str(op: BinaryOp) -> &'static str {
    match op {
        BinaryOp::Or => "||",
        BinaryOp::And => "&&",
        BinaryOp::Eq => "==",
        BinaryOp::Ne => "!=",
        BinaryOp::Lt => "<",
        BinaryOp::Gt => ">",
        BinaryOp::Le => "<=",
        BinaryOp::Ge => ">=",
        BinaryOp::BitOr => "|",
        BinaryOp::BitXor => "^",
        BinaryOp::BitAnd => "&",
        BinaryOp::Shl => "<<",
        BinaryOp::Shr => ">>",
        BinaryOp::Add => "+",
        BinaryOp::Sub => "-",
        BinaryOp::Mul => "*",
        BinaryOp::Div => "/",
        BinaryOp::Mod => "%",
        BinaryOp::Pow => "**",
    }
}

fn unary_op_str(op: UnaryOp) -> &'static str {
    match op {
        UnaryOp::Not => "!",
        UnaryOp::BitNot => "~",
        UnaryOp::Neg => "-",
        UnaryOp::Inc => "++",
        UnaryOp::Dec => "--",
        UnaryOp::Delete => "delete",
    }
}

fn assign_op_str(op: AssignOp) -> &'static str {
    match op {
        AssignOp::Assign => "=",
        AssignOp::Add => "+=",
        AssignOp::Sub => "-=",
        AssignOp::Mul => "*=",
        AssignOp::Div => "/=",
        AssignOp::Mod => "%=",
        AssignOp::BitAnd => "&=",
        AssignOp::BitOr => "|=",
        AssignOp::BitXor => "^=",
        AssignOp::Shl => "<<=",
        AssignOp::Shr => ">>=",
    }
}
