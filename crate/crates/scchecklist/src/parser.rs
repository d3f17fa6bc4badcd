//! Recursive-descent parser for the supported Solidity subset.
//!
//! [`parse`] either returns a complete [`SourceUnit`] or *all* the parse
//! errors it could collect — never a partial tree. Error recovery skips to
//! the next statement or declaration boundary (`;`, or past a balanced
//! `{...}`) and keeps going, so one bad statement does not mask later
//! problems, but any error at all means the file is excluded from analysis.
//!
//! Disambiguation between declarations and expressions (`Foo x = ...;` vs
//! `foo = ...;`, tuple declarations vs tuple assignments) is handled by
//! speculative parsing: the parser snapshots its position, attempts the
//! declaration form, and rolls back cleanly when that fails.

use crate::ast::*;
use crate::lexer::{self, Token, TokenKind};
use crate::span::Span;
use crate::version;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub span: Span,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}:{}: {}", self.span.line, self.span.col, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

/// Parse one source file. Returns every error found when the file does not
/// fully conform to the supported grammar.
pub fn parse(source: &str) -> Result<SourceUnit, Vec<ParseError>> {
    let tokens = match lexer::tokenize(source) {
        Ok(tokens) => tokens,
        Err(e) => {
            let span = match &e {
                lexer::LexError::UnterminatedString { line, col }
                | lexer::LexError::UnterminatedComment { line, col }
                | lexer::LexError::IllegalCharacter { line, col, .. } => {
                    Span::new(0, 0, *line, *col)
                }
            };
            return Err(vec![ParseError { message: e.to_string(), span }]);
        }
    };
    let mut parser = Parser::new(source, tokens);
    let unit = parser.source_unit();
    if parser.errors.is_empty() {
        Ok(unit)
    } else {
        Err(parser.errors)
    }
}

struct Parser<'src> {
    src: &'src str,
    /// Comment tokens are filtered out up front.
    tokens: Vec<Token<'src>>,
    pos: usize,
    errors: Vec<ParseError>,
}

impl<'src> Parser<'src> {
    fn new(src: &'src str, tokens: Vec<Token<'src>>) -> Self {
        let tokens = tokens
            .into_iter()
            .filter(|t| t.kind != TokenKind::Comment)
            .collect();
        Parser { src, tokens, pos: 0, errors: Vec::new() }
    }

    // -- token plumbing ------------------------------------------------------

    fn peek(&self) -> Option<&Token<'src>> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, offset: usize) -> Option<&Token<'src>> {
        self.tokens.get(self.pos + offset)
    }

    fn at_text(&self, text: &str) -> bool {
        self.peek().is_some_and(|t| t.text == text)
    }

    fn at_kind(&self, kind: TokenKind) -> bool {
        self.peek().is_some_and(|t| t.kind == kind)
    }

    fn bump(&mut self) -> Option<Token<'src>> {
        let t = self.tokens.get(self.pos).copied();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, text: &str) -> bool {
        if self.at_text(text) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, text: &str) -> PResult<Token<'src>> {
        match self.peek() {
            Some(t) if t.text == text => Ok(self.bump().unwrap()),
            Some(t) => Err(self.err_at(*t, format!("expected `{text}`, found `{}`", t.text))),
            None => Err(self.err_eof(format!("expected `{text}`"))),
        }
    }

    fn expect_identifier(&mut self, what: &str) -> PResult<Token<'src>> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier => Ok(self.bump().unwrap()),
            Some(t) => Err(self.err_at(*t, format!("expected {what}, found `{}`", t.text))),
            None => Err(self.err_eof(format!("expected {what}"))),
        }
    }

    fn err_at(&self, token: Token<'src>, message: String) -> ParseError {
        ParseError { message, span: token.span }
    }

    fn err_here(&self, message: String) -> ParseError {
        match self.peek() {
            Some(t) => ParseError { message, span: t.span },
            None => self.err_eof(message),
        }
    }

    fn err_eof(&self, message: String) -> ParseError {
        let span = self
            .tokens
            .last()
            .map(|t| t.span)
            .unwrap_or_else(|| Span::new(0, 0, 1, 1));
        ParseError { message: format!("{message}, found end of file"), span }
    }

    fn prev_span(&self) -> Span {
        if self.pos == 0 {
            Span::new(0, 0, 1, 1)
        } else {
            self.tokens[self.pos - 1].span
        }
    }

    fn span_from(&self, start: Span) -> Span {
        start.to(self.prev_span())
    }

    /// Run a parse attempt; on failure rewind to where it started.
    fn speculate<T>(&mut self, f: impl FnOnce(&mut Self) -> PResult<T>) -> Option<T> {
        let saved = self.pos;
        match f(self) {
            Ok(v) => Some(v),
            Err(_) => {
                self.pos = saved;
                None
            }
        }
    }

    /// Skip to the next recovery point: past the next `;`, past a balanced
    /// `{...}`, or to a closing `}` left for the caller.
    fn recover(&mut self) {
        while let Some(t) = self.peek() {
            match t.text {
                ";" => {
                    self.bump();
                    return;
                }
                "{" => {
                    self.skip_balanced_braces();
                    return;
                }
                "}" => return,
                _ => {
                    self.bump();
                }
            }
        }
    }

    fn skip_balanced_braces(&mut self) {
        debug_assert!(self.at_text("{"));
        let mut depth = 0usize;
        while let Some(t) = self.bump() {
            match t.text {
                "{" => depth += 1,
                "}" => {
                    depth -= 1;
                    if depth == 0 {
                        return;
                    }
                }
                _ => {}
            }
        }
    }

    // -- source unit ---------------------------------------------------------

    fn source_unit(&mut self) -> SourceUnit {
        let mut unit = SourceUnit {
            pragmas: Vec::new(),
            imports: Vec::new(),
            contracts: Vec::new(),
            span: Span::new(0, self.src.len(), 1, 1),
        };
        while let Some(t) = self.peek() {
            let result = match t.text {
                "pragma" => self.pragma_directive().map(|p| unit.pragmas.push(p)),
                "import" => self.import_directive().map(|i| unit.imports.push(i)),
                "contract" | "interface" | "library" | "abstract" => {
                    self.contract_def().map(|c| {
                        if unit.contracts.iter().any(|other| other.name == c.name) {
                            self.errors.push(ParseError {
                                message: format!("duplicate contract name `{}`", c.name),
                                span: c.name_span,
                            });
                        } else {
                            unit.contracts.push(c);
                        }
                    })
                }
                _ => Err(self.err_at(
                    *t,
                    format!("expected pragma, import, or contract definition, found `{}`", t.text),
                )),
            };
            if let Err(e) = result {
                self.errors.push(e);
                self.recover();
                // A stray `}` at the top level would stall recovery forever.
                if self.at_text("}") {
                    self.bump();
                }
            }
        }
        unit
    }

    fn pragma_directive(&mut self) -> PResult<PragmaDirective> {
        let start = self.expect("pragma")?.span;
        let name_tok = match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier || t.kind == TokenKind::Keyword => {
                self.bump().unwrap()
            }
            Some(t) => return Err(self.err_at(*t, "expected pragma name".into())),
            None => return Err(self.err_eof("expected pragma name".into())),
        };
        let body_start = name_tok.span.end;
        let mut body_end = body_start;
        loop {
            match self.peek() {
                Some(t) if t.text == ";" => {
                    self.bump();
                    break;
                }
                Some(t) => {
                    body_end = t.span.end;
                    self.bump();
                }
                None => return Err(self.err_eof("expected `;` to end pragma".into())),
            }
        }
        let content = self.src[body_start..body_end].trim().to_string();
        let name = name_tok.text.to_string();
        let constraint = if name == "solidity" {
            version::parse_constraint(&content)
        } else {
            None
        };
        Ok(PragmaDirective { name, constraint, content, span: self.span_from(start) })
    }

    fn import_directive(&mut self) -> PResult<ImportDirective> {
        let start = self.expect("import")?.span;
        let mut path = None;
        loop {
            match self.peek() {
                Some(t) if t.text == ";" => {
                    self.bump();
                    break;
                }
                Some(t) => {
                    if t.kind == TokenKind::StringLiteral && path.is_none() {
                        path = Some(t.text[1..t.text.len() - 1].to_string());
                    }
                    self.bump();
                }
                None => return Err(self.err_eof("expected `;` to end import".into())),
            }
        }
        let path = path.ok_or_else(|| ParseError {
            message: "import directive has no path string".into(),
            span: self.span_from(start),
        })?;
        Ok(ImportDirective { path, span: self.span_from(start) })
    }

    // -- contracts -----------------------------------------------------------

    fn contract_def(&mut self) -> PResult<ContractDef> {
        let start = self.peek().expect("caller checked").span;
        let is_abstract = self.eat("abstract");
        let kind = match self.peek().map(|t| t.text) {
            Some("contract") => ContractKind::Contract,
            Some("interface") => ContractKind::Interface,
            Some("library") => ContractKind::Library,
            _ => return Err(self.err_here("expected `contract`, `interface`, or `library`".into())),
        };
        self.bump();
        let name_tok = self.expect_identifier("contract name")?;
        let mut bases = Vec::new();
        if self.eat("is") {
            loop {
                bases.push(self.base_specifier()?);
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect("{")?;
        let mut def = ContractDef {
            name: name_tok.text.to_string(),
            name_span: name_tok.span,
            kind,
            is_abstract,
            bases,
            state_vars: Vec::new(),
            functions: Vec::new(),
            modifiers: Vec::new(),
            events: Vec::new(),
            using_directives: Vec::new(),
            span: Span::default(),
        };
        loop {
            match self.peek() {
                None => return Err(self.err_eof("expected `}` to close contract".into())),
                Some(t) if t.text == "}" => {
                    self.bump();
                    break;
                }
                Some(_) => {
                    if let Err(e) = self.contract_member(&mut def) {
                        self.errors.push(e);
                        self.recover();
                    }
                }
            }
        }
        def.span = self.span_from(start);
        Ok(def)
    }

    fn base_specifier(&mut self) -> PResult<BaseSpecifier> {
        let name_tok = self.expect_identifier("base contract name")?;
        let start = name_tok.span;
        let args = if self.at_text("(") {
            Some(self.call_args()?)
        } else {
            None
        };
        Ok(BaseSpecifier {
            name: name_tok.text.to_string(),
            name_span: name_tok.span,
            args,
            span: self.span_from(start),
        })
    }

    fn contract_member(&mut self, def: &mut ContractDef) -> PResult<()> {
        let t = *self.peek().expect("caller checked");
        match t.text {
            "using" => {
                let u = self.using_directive()?;
                def.using_directives.push(u);
            }
            "function" => {
                let f = self.function_def()?;
                def.functions.push(f);
            }
            "constructor" => {
                let f = self.special_function(FunctionKind::Constructor)?;
                def.functions.push(f);
            }
            "fallback" | "receive" if self.peek_at(1).is_some_and(|n| n.text == "(") => {
                let kind = if t.text == "fallback" {
                    FunctionKind::Fallback
                } else {
                    FunctionKind::Receive
                };
                let f = self.special_function(kind)?;
                def.functions.push(f);
            }
            "modifier" => {
                let m = self.modifier_def()?;
                def.modifiers.push(m);
            }
            "event" => {
                let e = self.event_def()?;
                def.events.push(e);
            }
            "struct" | "enum" => {
                return Err(self.err_at(
                    t,
                    format!("`{}` declarations are outside the supported subset", t.text),
                ));
            }
            _ => {
                let v = self.state_var_decl()?;
                def.state_vars.push(v);
            }
        }
        Ok(())
    }

    fn using_directive(&mut self) -> PResult<UsingDirective> {
        let start = self.expect("using")?.span;
        let lib = self.expect_identifier("library name")?;
        self.expect("for")?;
        let target = if self.eat("*") {
            "*".to_string()
        } else {
            let ty = self.type_name()?;
            crate::printer::type_to_string(&ty)
        };
        self.expect(";")?;
        Ok(UsingDirective {
            library: lib.text.to_string(),
            target,
            span: self.span_from(start),
        })
    }

    fn event_def(&mut self) -> PResult<EventDef> {
        let start = self.expect("event")?.span;
        let name_tok = self.expect_identifier("event name")?;
        self.expect("(")?;
        let mut depth = 1usize;
        while depth > 0 {
            match self.bump() {
                Some(t) if t.text == "(" => depth += 1,
                Some(t) if t.text == ")" => depth -= 1,
                Some(_) => {}
                None => return Err(self.err_eof("expected `)` in event declaration".into())),
            }
        }
        self.eat("anonymous");
        self.expect(";")?;
        Ok(EventDef {
            name: name_tok.text.to_string(),
            name_span: name_tok.span,
            span: self.span_from(start),
        })
    }

    fn state_var_decl(&mut self) -> PResult<StateVarDecl> {
        let start = match self.peek() {
            Some(t) => t.span,
            None => return Err(self.err_eof("expected state variable".into())),
        };
        let type_name = self.type_name()?;
        let mut visibility = None;
        let mut is_constant = false;
        let mut is_immutable = false;
        loop {
            match self.peek().map(|t| t.text) {
                Some("public") => {
                    visibility = Some(Visibility::Public);
                    self.bump();
                }
                Some("private") => {
                    visibility = Some(Visibility::Private);
                    self.bump();
                }
                Some("internal") => {
                    visibility = Some(Visibility::Internal);
                    self.bump();
                }
                Some("constant") => {
                    is_constant = true;
                    self.bump();
                }
                Some("immutable") => {
                    is_immutable = true;
                    self.bump();
                }
                Some("override") => {
                    self.bump();
                    if self.at_text("(") {
                        self.override_list()?;
                    }
                }
                _ => break,
            }
        }
        let name_tok = self.expect_identifier("state variable name")?;
        let initializer = if self.eat("=") {
            Some(self.expression()?)
        } else {
            None
        };
        self.expect(";")?;
        Ok(StateVarDecl {
            name: name_tok.text.to_string(),
            name_span: name_tok.span,
            type_name,
            visibility,
            is_constant,
            is_immutable,
            initializer,
            span: self.span_from(start),
        })
    }

    // -- functions & modifiers -----------------------------------------------

    fn function_def(&mut self) -> PResult<FunctionDef> {
        let start = self.expect("function")?.span;
        // `function(...)` with no name is the 0.5-era unnamed fallback.
        let (kind, name, name_span) = match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier => {
                let t = *t;
                self.bump();
                (FunctionKind::Regular, t.text.to_string(), t.span)
            }
            Some(t) if t.text == "(" => (FunctionKind::Fallback, String::new(), t.span),
            Some(t) => return Err(self.err_at(*t, "expected function name or `(`".into())),
            None => return Err(self.err_eof("expected function name".into())),
        };
        self.function_rest(kind, name, name_span, start)
    }

    /// Constructor / `fallback()` / `receive()` definitions.
    fn special_function(&mut self, kind: FunctionKind) -> PResult<FunctionDef> {
        let kw = self.bump().expect("caller checked");
        self.function_rest(kind, String::new(), kw.span, kw.span)
    }

    fn function_rest(
        &mut self,
        kind: FunctionKind,
        name: String,
        name_span: Span,
        start: Span,
    ) -> PResult<FunctionDef> {
        let params = self.parameter_list()?;
        if kind == FunctionKind::Receive && !params.is_empty() {
            return Err(ParseError {
                message: "receive function takes no parameters".into(),
                span: self.span_from(start),
            });
        }
        let mut visibility = None;
        let mut mutability = None;
        let mut is_virtual = false;
        let mut overrides = None;
        let mut modifiers = Vec::new();
        let mut returns = Vec::new();
        loop {
            let Some(t) = self.peek() else { break };
            match t.text {
                "public" => {
                    visibility = Some(Visibility::Public);
                    self.bump();
                }
                "private" => {
                    visibility = Some(Visibility::Private);
                    self.bump();
                }
                "internal" => {
                    visibility = Some(Visibility::Internal);
                    self.bump();
                }
                "external" => {
                    visibility = Some(Visibility::External);
                    self.bump();
                }
                "pure" => {
                    mutability = Some(Mutability::Pure);
                    self.bump();
                }
                "view" | "constant" => {
                    mutability = Some(Mutability::View);
                    self.bump();
                }
                "payable" => {
                    mutability = Some(Mutability::Payable);
                    self.bump();
                }
                "virtual" => {
                    is_virtual = true;
                    self.bump();
                }
                "override" => {
                    self.bump();
                    overrides = Some(if self.at_text("(") {
                        self.override_list()?
                    } else {
                        Vec::new()
                    });
                }
                "returns" => {
                    self.bump();
                    returns = self.parameter_list()?;
                }
                _ if t.kind == TokenKind::Identifier => {
                    let name_tok = *t;
                    self.bump();
                    let args = if self.at_text("(") {
                        Some(self.call_args()?)
                    } else {
                        None
                    };
                    modifiers.push(ModifierInvocation {
                        name: name_tok.text.to_string(),
                        name_span: name_tok.span,
                        args,
                        span: self.span_from(name_tok.span),
                    });
                }
                _ => break,
            }
        }
        let body = if self.eat(";") {
            None
        } else {
            Some(self.block()?)
        };
        Ok(FunctionDef {
            kind,
            name,
            name_span,
            params,
            returns,
            visibility,
            mutability,
            is_virtual,
            overrides,
            modifiers,
            body,
            span: self.span_from(start),
        })
    }

    fn modifier_def(&mut self) -> PResult<ModifierDef> {
        let start = self.expect("modifier")?.span;
        let name_tok = self.expect_identifier("modifier name")?;
        let params = if self.at_text("(") {
            self.parameter_list()?
        } else {
            Vec::new()
        };
        let mut is_virtual = false;
        let mut overrides = None;
        loop {
            match self.peek().map(|t| t.text) {
                Some("virtual") => {
                    is_virtual = true;
                    self.bump();
                }
                Some("override") => {
                    self.bump();
                    overrides = Some(if self.at_text("(") {
                        self.override_list()?
                    } else {
                        Vec::new()
                    });
                }
                _ => break,
            }
        }
        let body = if self.eat(";") {
            None
        } else {
            Some(self.block()?)
        };
        Ok(ModifierDef {
            name: name_tok.text.to_string(),
            name_span: name_tok.span,
            params,
            is_virtual,
            overrides,
            body,
            span: self.span_from(start),
        })
    }

    fn override_list(&mut self) -> PResult<Vec<String>> {
        self.expect("(")?;
        let mut names = Vec::new();
        if !self.at_text(")") {
            loop {
                names.push(self.expect_identifier("override base name")?.text.to_string());
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(")")?;
        Ok(names)
    }

    fn parameter_list(&mut self) -> PResult<Vec<Parameter>> {
        self.expect("(")?;
        let mut params = Vec::new();
        if !self.at_text(")") {
            loop {
                params.push(self.parameter()?);
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(")")?;
        Ok(params)
    }

    fn parameter(&mut self) -> PResult<Parameter> {
        let start = match self.peek() {
            Some(t) => t.span,
            None => return Err(self.err_eof("expected parameter".into())),
        };
        let type_name = self.type_name()?;
        let location = self.data_location();
        let (name, name_span) = match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier => {
                let t = *t;
                self.bump();
                (Some(t.text.to_string()), t.span)
            }
            _ => (None, self.prev_span()),
        };
        Ok(Parameter { type_name, location, name, name_span, span: self.span_from(start) })
    }

    fn data_location(&mut self) -> Option<DataLocation> {
        let loc = match self.peek().map(|t| t.text) {
            Some("memory") => DataLocation::Memory,
            Some("storage") => DataLocation::Storage,
            Some("calldata") => DataLocation::Calldata,
            _ => return None,
        };
        self.bump();
        Some(loc)
    }

    // -- types ---------------------------------------------------------------

    fn type_name(&mut self) -> PResult<TypeName> {
        let base = match self.peek() {
            Some(t) if t.text == "mapping" => {
                self.bump();
                self.expect("(")?;
                let key = self.type_name()?;
                self.expect("=>")?;
                let value = self.type_name()?;
                self.expect(")")?;
                TypeName::Mapping { key: Box::new(key), value: Box::new(value) }
            }
            Some(t) if lexer::is_elementary_type(t.text) => {
                let mut text = t.text.to_string();
                self.bump();
                if text == "address" && self.at_text("payable") {
                    self.bump();
                    text = "address payable".to_string();
                }
                TypeName::Elementary(text)
            }
            Some(t) if t.kind == TokenKind::Identifier => {
                let mut path = vec![t.text.to_string()];
                self.bump();
                while self.at_text(".")
                    && self.peek_at(1).is_some_and(|t| t.kind == TokenKind::Identifier)
                {
                    self.bump();
                    path.push(self.bump().unwrap().text.to_string());
                }
                TypeName::UserDefined(path)
            }
            Some(t) => return Err(self.err_at(*t, format!("expected type, found `{}`", t.text))),
            None => return Err(self.err_eof("expected type".into())),
        };
        let mut ty = base;
        while self.at_text("[") {
            self.bump();
            let length = if self.at_text("]") {
                None
            } else {
                Some(Box::new(self.expression()?))
            };
            self.expect("]")?;
            ty = TypeName::Array { base: Box::new(ty), length };
        }
        Ok(ty)
    }

    // -- statements ----------------------------------------------------------

    fn block(&mut self) -> PResult<Block> {
        let start = self.expect("{")?.span;
        let mut statements = Vec::new();
        loop {
            match self.peek() {
                None => return Err(self.err_eof("expected `}` to close block".into())),
                Some(t) if t.text == "}" => {
                    self.bump();
                    break;
                }
                Some(_) => match self.statement() {
                    Ok(s) => statements.push(s),
                    Err(e) => {
                        self.errors.push(e);
                        self.recover();
                    }
                },
            }
        }
        Ok(Block { statements, span: self.span_from(start) })
    }

    /// Parse a loop or branch body, normalizing a single statement into a
    /// one-element block so downstream passes see a uniform shape.
    fn body_as_block(&mut self) -> PResult<Statement> {
        if self.at_text("{") {
            return Ok(Statement::Block(self.block()?));
        }
        let stmt = self.statement()?;
        let span = stmt.span();
        Ok(Statement::Block(Block { statements: vec![stmt], span }))
    }

    fn statement(&mut self) -> PResult<Statement> {
        let t = match self.peek() {
            Some(t) => *t,
            None => return Err(self.err_eof("expected statement".into())),
        };
        match t.text {
            "{" => Ok(Statement::Block(self.block()?)),
            "if" => self.if_statement(),
            "while" => {
                let start = self.bump().unwrap().span;
                self.expect("(")?;
                let condition = self.expression()?;
                self.expect(")")?;
                let body = Box::new(self.body_as_block()?);
                Ok(Statement::While { condition, body, span: self.span_from(start) })
            }
            "do" => {
                let start = self.bump().unwrap().span;
                let body = Box::new(self.body_as_block()?);
                self.expect("while")?;
                self.expect("(")?;
                let condition = self.expression()?;
                self.expect(")")?;
                self.expect(";")?;
                Ok(Statement::DoWhile { body, condition, span: self.span_from(start) })
            }
            "for" => self.for_statement(),
            "return" => {
                let start = self.bump().unwrap().span;
                let value = if self.at_text(";") {
                    None
                } else {
                    Some(self.expression()?)
                };
                self.expect(";")?;
                Ok(Statement::Return { value, span: self.span_from(start) })
            }
            "emit" => {
                let start = self.bump().unwrap().span;
                let call = self.expression()?;
                if !matches!(call, Expression::Call { .. }) {
                    return Err(ParseError {
                        message: "expected event invocation after `emit`".into(),
                        span: call.span(),
                    });
                }
                self.expect(";")?;
                Ok(Statement::Emit { call, span: self.span_from(start) })
            }
            "unchecked" => {
                let start = self.bump().unwrap().span;
                let block = self.block()?;
                Ok(Statement::Unchecked { block, span: self.span_from(start) })
            }
            "assembly" => self.assembly_statement(),
            "_" if self.peek_at(1).is_some_and(|n| n.text == ";") => {
                let start = self.bump().unwrap().span;
                self.bump();
                Ok(Statement::Placeholder { span: self.span_from(start) })
            }
            // `revert CustomError(...)` — `revert(...)` goes the expression way.
            "revert"
                if self
                    .peek_at(1)
                    .is_some_and(|n| n.kind == TokenKind::Identifier) =>
            {
                let start = self.bump().unwrap().span;
                let call = self.expression()?;
                self.expect(";")?;
                Ok(Statement::Revert { call: Some(call), span: self.span_from(start) })
            }
            "break" | "continue" | "try" | "throw" => Err(self.err_at(
                t,
                format!("`{}` statements are outside the supported subset", t.text),
            )),
            _ => {
                if let Some(decl) = self.speculate(|p| p.variable_declaration()) {
                    return Ok(decl);
                }
                let start = t.span;
                let expr = self.expression()?;
                self.expect(";")?;
                Ok(Statement::Expression { expr, span: self.span_from(start) })
            }
        }
    }

    fn if_statement(&mut self) -> PResult<Statement> {
        let start = self.expect("if")?.span;
        self.expect("(")?;
        let condition = self.expression()?;
        self.expect(")")?;
        let then_branch = Box::new(self.body_as_block()?);
        let else_branch = if self.eat("else") {
            if self.at_text("if") {
                Some(Box::new(self.if_statement()?))
            } else {
                Some(Box::new(self.body_as_block()?))
            }
        } else {
            None
        };
        Ok(Statement::If { condition, then_branch, else_branch, span: self.span_from(start) })
    }

    fn for_statement(&mut self) -> PResult<Statement> {
        let start = self.expect("for")?.span;
        self.expect("(")?;
        let init = if self.eat(";") {
            None
        } else {
            let stmt = if let Some(decl) = self.speculate(|p| p.variable_declaration()) {
                decl
            } else {
                let estart = self.peek().map(|t| t.span).unwrap_or_default();
                let expr = self.expression()?;
                self.expect(";")?;
                Statement::Expression { expr, span: self.span_from(estart) }
            };
            Some(Box::new(stmt))
        };
        let condition = if self.at_text(";") {
            None
        } else {
            Some(self.expression()?)
        };
        self.expect(";")?;
        let update = if self.at_text(")") {
            None
        } else {
            Some(self.expression()?)
        };
        self.expect(")")?;
        let body = Box::new(self.body_as_block()?);
        Ok(Statement::For { init, condition, update, body, span: self.span_from(start) })
    }

    fn assembly_statement(&mut self) -> PResult<Statement> {
        let start = self.expect("assembly")?.span;
        // Tolerate a dialect string: `assembly "evmasm" { ... }`.
        if self.at_kind(TokenKind::StringLiteral) {
            self.bump();
        }
        let open = self.expect("{")?;
        let mut depth = 1usize;
        let mut end = open.span.end;
        while depth > 0 {
            match self.bump() {
                Some(t) if t.text == "{" => depth += 1,
                Some(t) if t.text == "}" => {
                    depth -= 1;
                    end = t.span.start;
                }
                Some(_) => {}
                None => return Err(self.err_eof("expected `}` to close assembly block".into())),
            }
        }
        let body = self.src[open.span.end..end].to_string();
        Ok(Statement::Assembly { body, span: self.span_from(start) })
    }

    /// Speculative entry: either `Type [loc] name [= expr];` or the tuple
    /// form `(Type a, , Type c) = expr;`. Fails without consuming input.
    fn variable_declaration(&mut self) -> PResult<Statement> {
        let t = match self.peek() {
            Some(t) => *t,
            None => return Err(self.err_eof("expected declaration".into())),
        };
        let start = t.span;
        if t.text == "(" {
            self.bump();
            let mut declarations = Vec::new();
            loop {
                if self.at_text(",") {
                    declarations.push(None);
                    self.bump();
                    continue;
                }
                if self.at_text(")") {
                    // Trailing empty slot as in `(bool ok, )`.
                    if !declarations.is_empty() {
                        declarations.push(None);
                    }
                    break;
                }
                declarations.push(Some(self.declared_var()?));
                if !self.eat(",") {
                    break;
                }
            }
            self.expect(")")?;
            self.expect("=")?;
            let initializer = Some(self.expression()?);
            self.expect(";")?;
            if !declarations.iter().any(Option::is_some) {
                return Err(ParseError {
                    message: "tuple declaration declares nothing".into(),
                    span: self.span_from(start),
                });
            }
            return Ok(Statement::VariableDeclaration {
                declarations,
                initializer,
                span: self.span_from(start),
            });
        }
        let var = self.declared_var()?;
        let initializer = if self.eat("=") {
            Some(self.expression()?)
        } else {
            None
        };
        self.expect(";")?;
        Ok(Statement::VariableDeclaration {
            declarations: vec![Some(var)],
            initializer,
            span: self.span_from(start),
        })
    }

    fn declared_var(&mut self) -> PResult<DeclaredVar> {
        let start = match self.peek() {
            Some(t) => t.span,
            None => return Err(self.err_eof("expected declaration".into())),
        };
        let type_name = self.type_name()?;
        let location = self.data_location();
        let name_tok = self.expect_identifier("variable name")?;
        Ok(DeclaredVar {
            type_name,
            location,
            name: name_tok.text.to_string(),
            name_span: name_tok.span,
            span: self.span_from(start),
        })
    }

    // -- expressions ---------------------------------------------------------

    fn expression(&mut self) -> PResult<Expression> {
        self.assignment_expr()
    }

    fn assignment_expr(&mut self) -> PResult<Expression> {
        let lhs = self.conditional_expr()?;
        let op = match self.peek().map(|t| t.text) {
            Some("=") => AssignOp::Assign,
            Some("+=") => AssignOp::Add,
            Some("-=") => AssignOp::Sub,
            Some("*=") => AssignOp::Mul,
            Some("/=") => AssignOp::Div,
            Some("%=") => AssignOp::Mod,
            Some("&=") => AssignOp::BitAnd,
            Some("|=") => AssignOp::BitOr,
            Some("^=") => AssignOp::BitXor,
            Some("<<=") => AssignOp::Shl,
            Some(">>=") => AssignOp::Shr,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.assignment_expr()?;
        let span = lhs.span().to(rhs.span());
        Ok(Expression::Assignment { op, lhs: Box::new(lhs), rhs: Box::new(rhs), span })
    }

    fn conditional_expr(&mut self) -> PResult<Expression> {
        let condition = self.binary_expr(0)?;
        if !self.eat("?") {
            return Ok(condition);
        }
        let true_expr = self.expression()?;
        self.expect(":")?;
        let false_expr = self.conditional_expr()?;
        let span = condition.span().to(false_expr.span());
        Ok(Expression::Conditional {
            condition: Box::new(condition),
            true_expr: Box::new(true_expr),
            false_expr: Box::new(false_expr),
            span,
        })
    }

    /// Precedence-climbing over the binary operator table.
    fn binary_expr(&mut self, min_level: u8) -> PResult<Expression> {
        let mut left = self.unary_expr()?;
        while let Some(t) = self.peek() {
            let Some((op, level)) = binary_op(t.text) else { break };
            if level < min_level {
                break;
            }
            self.bump();
            // `**` is right-associative; everything else associates left.
            let next_min = if op == BinaryOp::Pow { level } else { level + 1 };
            let right = self.binary_expr(next_min)?;
            let span = left.span().to(right.span());
            left = Expression::Binary { op, left: Box::new(left), right: Box::new(right), span };
        }
        Ok(left)
    }

    fn unary_expr(&mut self) -> PResult<Expression> {
        let t = match self.peek() {
            Some(t) => *t,
            None => return Err(self.err_eof("expected expression".into())),
        };
        let op = match t.text {
            "!" => Some(UnaryOp::Not),
            "~" => Some(UnaryOp::BitNot),
            "-" => Some(UnaryOp::Neg),
            "++" => Some(UnaryOp::Inc),
            "--" => Some(UnaryOp::Dec),
            "delete" => Some(UnaryOp::Delete),
            _ => None,
        };
        if let Some(op) = op {
            self.bump();
            let operand = self.unary_expr()?;
            let span = t.span.to(operand.span());
            return Ok(Expression::Unary { op, operand: Box::new(operand), prefix: true, span });
        }
        self.postfix_expr()
    }

    fn postfix_expr(&mut self) -> PResult<Expression> {
        let mut expr = self.primary_expr()?;
        loop {
            let Some(t) = self.peek() else { break };
            match t.text {
                "." => {
                    if !self
                        .peek_at(1)
                        .is_some_and(|n| matches!(n.kind, TokenKind::Identifier | TokenKind::Keyword))
                    {
                        break;
                    }
                    self.bump();
                    let member = self.bump().unwrap();
                    let span = expr.span().to(member.span);
                    expr = Expression::MemberAccess {
                        base: Box::new(expr),
                        member: member.text.to_string(),
                        member_span: member.span,
                        span,
                    };
                }
                "[" => {
                    self.bump();
                    let index = self.expression()?;
                    let close = self.expect("]")?;
                    let span = expr.span().to(close.span);
                    expr = Expression::IndexAccess {
                        base: Box::new(expr),
                        index: Box::new(index),
                        span,
                    };
                }
                "(" => {
                    let args = self.call_args()?;
                    let span = expr.span().to(self.prev_span());
                    expr = Expression::Call {
                        callee: Box::new(expr),
                        options: Vec::new(),
                        args,
                        span,
                    };
                }
                // Call options `{value: ..., gas: ...}` must be followed by
                // an argument list.
                "{" if self.looks_like_call_options() => {
                    self.bump();
                    let mut options = Vec::new();
                    while !self.at_text("}") {
                        let key = self.expect_identifier("call option name")?;
                        self.expect(":")?;
                        let value = self.expression()?;
                        options.push((key.text.to_string(), value));
                        if !self.eat(",") {
                            break;
                        }
                    }
                    self.expect("}")?;
                    let args = self.call_args()?;
                    let span = expr.span().to(self.prev_span());
                    expr = Expression::Call { callee: Box::new(expr), options, args, span };
                }
                "++" | "--" => {
                    let op = if t.text == "++" { UnaryOp::Inc } else { UnaryOp::Dec };
                    let op_tok = *t;
                    self.bump();
                    let span = expr.span().to(op_tok.span);
                    expr = Expression::Unary {
                        op,
                        operand: Box::new(expr),
                        prefix: false,
                        span,
                    };
                }
                _ => break,
            }
        }
        Ok(expr)
    }

    fn looks_like_call_options(&self) -> bool {
        self.at_text("{")
            && self.peek_at(1).is_some_and(|t| t.kind == TokenKind::Identifier)
            && self.peek_at(2).is_some_and(|t| t.text == ":")
    }

    fn call_args(&mut self) -> PResult<Vec<Expression>> {
        self.expect("(")?;
        let mut args = Vec::new();
        if !self.at_text(")") {
            loop {
                args.push(self.expression()?);
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(")")?;
        Ok(args)
    }

    fn primary_expr(&mut self) -> PResult<Expression> {
        let t = match self.peek() {
            Some(t) => *t,
            None => return Err(self.err_eof("expected expression".into())),
        };
        match t.kind {
            TokenKind::IntegerLiteral => {
                self.bump();
                let denomination = match self.peek() {
                    Some(d) if is_denomination(d.text) => {
                        let d = *d;
                        self.bump();
                        Some(d.text.to_string())
                    }
                    _ => None,
                };
                let span = t.span.to(self.prev_span());
                Ok(Expression::NumberLiteral {
                    text: t.text.to_string(),
                    denomination,
                    span,
                })
            }
            TokenKind::StringLiteral => {
                self.bump();
                Ok(Expression::StringLiteral { raw: t.text.to_string(), span: t.span })
            }
            TokenKind::Identifier => {
                self.bump();
                Ok(Expression::Identifier { name: t.text.to_string(), span: t.span })
            }
            TokenKind::Keyword => match t.text {
                "true" | "false" => {
                    self.bump();
                    Ok(Expression::BoolLiteral { value: t.text == "true", span: t.span })
                }
                "new" => {
                    self.bump();
                    let type_name = self.type_name()?;
                    let span = self.span_from(t.span);
                    Ok(Expression::New { type_name, span })
                }
                // `payable(...)` and elementary-type casts like `address(x)`.
                _ if t.text == "payable" || lexer::is_elementary_type(t.text) => {
                    self.bump();
                    self.expect("(")?;
                    let arg = self.expression()?;
                    let close = self.expect(")")?;
                    let span = t.span.to(close.span);
                    Ok(Expression::TypeCast {
                        target: t.text.to_string(),
                        arg: Box::new(arg),
                        span,
                    })
                }
                _ => Err(self.err_at(t, format!("unexpected `{}` in expression", t.text))),
            },
            TokenKind::Punctuation if t.text == "(" => {
                self.bump();
                let mut components: Vec<Option<Expression>> = Vec::new();
                let mut saw_comma = false;
                loop {
                    if self.at_text(")") {
                        if saw_comma && components.len() == 1 {
                            // `(a,)` has a trailing empty slot.
                            components.push(None);
                        }
                        break;
                    }
                    if self.at_text(",") {
                        self.bump();
                        saw_comma = true;
                        if components.is_empty() {
                            components.push(None);
                        }
                        if self.at_text(")") {
                            components.push(None);
                            break;
                        }
                        continue;
                    }
                    components.push(Some(self.expression()?));
                    if self.at_text(",") {
                        self.bump();
                        saw_comma = true;
                        if self.at_text(")") {
                            components.push(None);
                            break;
                        }
                    } else {
                        break;
                    }
                }
                let close = self.expect(")")?;
                let span = t.span.to(close.span);
                if components.len() == 1 && !saw_comma {
                    match components.pop().unwrap() {
                        Some(inner) => Ok(inner),
                        None => Err(self.err_at(t, "empty parentheses".into())),
                    }
                } else if components.is_empty() {
                    Err(self.err_at(t, "empty parentheses".into()))
                } else {
                    Ok(Expression::Tuple { components, span })
                }
            }
            _ => Err(self.err_at(t, format!("unexpected `{}` in expression", t.text))),
        }
    }
}

fn is_denomination(text: &str) -> bool {
    matches!(
        text,
        "wei" | "gwei" | "szabo" | "finney" | "ether" | "seconds" | "minutes"
            | "hours" | "days" | "weeks" | "years"
    )
}

/// Operator and its precedence level; higher binds tighter.
fn binary_op(text: &str) -> Option<(BinaryOp, u8)> {
    Some(match text {
        "||" => (BinaryOp::Or, 0),
        "&&" => (BinaryOp::And, 1),
        "==" => (BinaryOp::Eq, 2),
        "!=" => (BinaryOp::Ne, 2),
        "<" => (BinaryOp::Lt, 3),
        ">" => (BinaryOp::Gt, 3),
        "<=" => (BinaryOp::Le, 3),
        ">=" => (BinaryOp::Ge, 3),
        "|" => (BinaryOp::BitOr, 4),
        "^" => (BinaryOp::BitXor, 5),
        "&" => (BinaryOp::BitAnd, 6),
        "<<" => (BinaryOp::Shl, 7),
        ">>" => (BinaryOp::Shr, 7),
        "+" => (BinaryOp::Add, 8),
        "-" => (BinaryOp::Sub, 8),
        "*" => (BinaryOp::Mul, 9),
        "/" => (BinaryOp::Div, 9),
        "%" => (BinaryOp::Mod, 9),
        "**" => (BinaryOp::Pow, 10),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_ok(src: &str) -> SourceUnit {
        match parse(src) {
            Ok(unit) => unit,
            Err(errors) => panic!("expected clean parse, got {errors:?}"),
        }
    }

    fn parse_errs(src: &str) -> Vec<ParseError> {
        parse(src).expect_err("expected parse errors")
    }

    fn first_fn_body(unit: &SourceUnit) -> &Block {
        unit.contracts[0].functions[0]
            .body
            .as_ref()
            .expect("function has a body")
    }

    #[test]
    fn minimal_contract_shape() {
        let unit = parse_ok(
            "pragma solidity ^0.8.0;\n\
             contract Vault {\n\
                 uint256 public total;\n\
                 function deposit(uint256 amount) public payable {\n\
                     total = total + amount;\n\
                 }\n\
             }\n",
        );
        assert_eq!(unit.pragmas.len(), 1);
        assert_eq!(unit.pragmas[0].name, "solidity");
        assert_eq!(unit.pragmas[0].content, "^0.8.0");
        assert!(unit.pragmas[0].constraint.is_some());
        assert_eq!(unit.contracts.len(), 1);
        let c = &unit.contracts[0];
        assert_eq!(c.name, "Vault");
        assert_eq!(c.kind, ContractKind::Contract);
        assert_eq!(c.state_vars.len(), 1);
        assert_eq!(c.state_vars[0].name, "total");
        assert_eq!(c.state_vars[0].visibility, Some(Visibility::Public));
        assert_eq!(c.functions.len(), 1);
        let f = &c.functions[0];
        assert_eq!(f.kind, FunctionKind::Regular);
        assert_eq!(f.name, "deposit");
        assert_eq!(f.params.len(), 1);
        assert_eq!(f.params[0].name.as_deref(), Some("amount"));
        assert_eq!(f.visibility, Some(Visibility::Public));
        assert_eq!(f.mutability, Some(Mutability::Payable));
        assert_eq!(f.body.as_ref().unwrap().statements.len(), 1);
    }

    #[test]
    fn single_statement_bodies_are_normalized_to_blocks() {
        let unit = parse_ok(
            "contract C { function f(bool c) public { if (c) x = 1; while (c) x = 2; uint x; } }",
        );
        let body = first_fn_body(&unit);
        match &body.statements[0] {
            Statement::If { then_branch, else_branch, .. } => {
                assert!(matches!(then_branch.as_ref(), Statement::Block(b) if b.statements.len() == 1));
                assert!(else_branch.is_none());
            }
            other => panic!("expected if, got {other:?}"),
        }
        match &body.statements[1] {
            Statement::While { body, .. } => {
                assert!(matches!(body.as_ref(), Statement::Block(b) if b.statements.len() == 1));
            }
            other => panic!("expected while, got {other:?}"),
        }
    }

    #[test]
    fn parenthesized_expression_unwraps_to_inner() {
        let unit = parse_ok("contract C { function f() public { uint x = (1); x = ((x)); } }");
        let body = first_fn_body(&unit);
        match &body.statements[0] {
            Statement::VariableDeclaration { initializer, .. } => {
                assert!(matches!(initializer, Some(Expression::NumberLiteral { .. })));
            }
            other => panic!("expected declaration, got {other:?}"),
        }
        match &body.statements[1] {
            Statement::Expression { expr: Expression::Assignment { rhs, .. }, .. } => {
                assert!(matches!(rhs.as_ref(), Expression::Identifier { name, .. } if name == "x"));
            }
            other => panic!("expected assignment, got {other:?}"),
        }
    }

    #[test]
    fn tuple_declaration_vs_tuple_assignment() {
        let unit = parse_ok(
            "contract C { function f() public { (uint a, bool ok) = g(); (x, y) = g(); (bool s, ) = h(); } }",
        );
        let body = first_fn_body(&unit);
        match &body.statements[0] {
            Statement::VariableDeclaration { declarations, initializer, .. } => {
                assert_eq!(declarations.len(), 2);
                assert!(declarations.iter().all(Option::is_some));
                assert!(initializer.is_some());
            }
            other => panic!("expected tuple declaration, got {other:?}"),
        }
        match &body.statements[1] {
            Statement::Expression { expr: Expression::Assignment { lhs, .. }, .. } => {
                assert!(matches!(lhs.as_ref(), Expression::Tuple { components, .. } if components.len() == 2));
            }
            other => panic!("expected tuple assignment, got {other:?}"),
        }
        match &body.statements[2] {
            Statement::VariableDeclaration { declarations, .. } => {
                assert_eq!(declarations.len(), 2);
                assert!(declarations[0].is_some());
                assert!(declarations[1].is_none());
            }
            other => panic!("expected tuple declaration, got {other:?}"),
        }
    }

    #[test]
    fn error_recovery_reports_every_bad_statement() {
        let errors = parse_errs(
            "contract C {\n\
                 function f() public { x = ; y = 1; }\n\
                 function g() public { z = ; }\n\
             }",
        );
        assert_eq!(errors.len(), 2);
        assert_eq!(errors[0].span.line, 2);
        assert_eq!(errors[1].span.line, 3);
    }

    #[test]
    fn recovery_continues_after_the_semicolon() {
        // The statement after the bad one must still be reachable: only one
        // error for the bad statement, none for `y = 1;`.
        let errors = parse_errs("contract C { function f() public { x = ; y = 1; } }");
        assert_eq!(errors.len(), 1);
        assert!(errors[0].message.contains("unexpected `;`"));
    }

    #[test]
    fn duplicate_contract_names_are_rejected() {
        let errors = parse_errs("contract A {} contract A {}");
        assert_eq!(errors.len(), 1);
        assert!(errors[0].message.contains("duplicate contract name `A`"));
    }

    #[test]
    fn unsupported_constructs_error_cleanly() {
        assert!(parse_errs("contract C { struct S { uint a; } }")[0]
            .message
            .contains("struct"));
        assert!(parse_errs("contract C { enum E { A } }")[0].message.contains("enum"));
        assert!(parse_errs("contract C { function f() public { while (true) break; } }")[0]
            .message
            .contains("break"));
        assert!(!parse_errs("contract C { function f() public { try x() {} catch {} } }").is_empty());
    }

    #[test]
    fn call_options_attach_to_the_call() {
        let unit = parse_ok(
            "contract C { function f(address a) public { a.call{value: 1 ether, gas: 5000}(\"\"); } }",
        );
        let body = first_fn_body(&unit);
        match &body.statements[0] {
            Statement::Expression { expr: Expression::Call { callee, options, args, .. }, .. } => {
                assert!(matches!(callee.as_ref(), Expression::MemberAccess { member, .. } if member == "call"));
                assert_eq!(options.len(), 2);
                assert_eq!(options[0].0, "value");
                assert!(matches!(
                    &options[0].1,
                    Expression::NumberLiteral { denomination: Some(d), .. } if d == "ether"
                ));
                assert_eq!(options[1].0, "gas");
                assert_eq!(args.len(), 1);
            }
            other => panic!("expected call with options, got {other:?}"),
        }
    }

    #[test]
    fn fallback_and_receive_forms() {
        let unit = parse_ok(
            "contract A { function() external payable {} }\n\
             contract B { fallback() external payable {} receive() external payable {} }",
        );
        assert_eq!(unit.contracts[0].functions[0].kind, FunctionKind::Fallback);
        assert_eq!(unit.contracts[0].functions[0].name, "");
        assert_eq!(unit.contracts[1].functions[0].kind, FunctionKind::Fallback);
        assert_eq!(unit.contracts[1].functions[1].kind, FunctionKind::Receive);
        assert!(unit.contracts[1].has_fallback());
        assert!(unit.contracts[1].has_receive());

        let errors = parse_errs("contract C { receive(uint x) external payable {} }");
        assert!(errors[0].message.contains("receive function takes no parameters"));
    }

    #[test]
    fn revert_statement_vs_revert_call() {
        let unit = parse_ok(
            "contract C { function f() public { revert(\"nope\"); revert Unauthorized(msg.sender); } }",
        );
        let body = first_fn_body(&unit);
        match &body.statements[0] {
            Statement::Expression { expr: Expression::Call { callee, .. }, .. } => {
                assert!(matches!(callee.as_ref(), Expression::Identifier { name, .. } if name == "revert"));
            }
            other => panic!("expected revert(...) expression, got {other:?}"),
        }
        match &body.statements[1] {
            Statement::Revert { call: Some(Expression::Call { callee, .. }), .. } => {
                assert!(matches!(callee.as_ref(), Expression::Identifier { name, .. } if name == "Unauthorized"));
            }
            other => panic!("expected revert statement, got {other:?}"),
        }
    }

    #[test]
    fn operator_precedence_shapes() {
        let unit = parse_ok(
            "contract C { function f() public { x = a + b * c; y = a ** b ** c; z = a < b && c < d; } }",
        );
        let body = first_fn_body(&unit);
        let rhs = |stmt: &Statement| -> Expression {
            match stmt {
                Statement::Expression { expr: Expression::Assignment { rhs, .. }, .. } => {
                    rhs.as_ref().clone()
                }
                other => panic!("expected assignment, got {other:?}"),
            }
        };
        // a + (b * c)
        match rhs(&body.statements[0]) {
            Expression::Binary { op: BinaryOp::Add, right, .. } => {
                assert!(matches!(right.as_ref(), Expression::Binary { op: BinaryOp::Mul, .. }));
            }
            other => panic!("expected addition at the root, got {other:?}"),
        }
        // a ** (b ** c): exponentiation associates right.
        match rhs(&body.statements[1]) {
            Expression::Binary { op: BinaryOp::Pow, left, right, .. } => {
                assert!(matches!(left.as_ref(), Expression::Identifier { .. }));
                assert!(matches!(right.as_ref(), Expression::Binary { op: BinaryOp::Pow, .. }));
            }
            other => panic!("expected power at the root, got {other:?}"),
        }
        // (a < b) && (c < d)
        match rhs(&body.statements[2]) {
            Expression::Binary { op: BinaryOp::And, left, right, .. } => {
                assert!(matches!(left.as_ref(), Expression::Binary { op: BinaryOp::Lt, .. }));
                assert!(matches!(right.as_ref(), Expression::Binary { op: BinaryOp::Lt, .. }));
            }
            other => panic!("expected && at the root, got {other:?}"),
        }
    }

    #[test]
    fn mapping_and_array_types() {
        let unit = parse_ok(
            "contract C {\n\
                 mapping(address => mapping(uint256 => bool)) public flags;\n\
                 uint256[] public list;\n\
                 uint256[4][] public grid;\n\
             }",
        );
        let vars = &unit.contracts[0].state_vars;
        match &vars[0].type_name {
            TypeName::Mapping { key, value } => {
                assert!(matches!(key.as_ref(), TypeName::Elementary(t) if t == "address"));
                assert!(matches!(value.as_ref(), TypeName::Mapping { .. }));
            }
            other => panic!("expected mapping, got {other:?}"),
        }
        assert!(vars[1].type_name.is_dynamic_array());
        match &vars[2].type_name {
            TypeName::Array { base, length: None } => {
                assert!(matches!(base.as_ref(), TypeName::Array { length: Some(_), .. }));
            }
            other => panic!("expected array of fixed arrays, got {other:?}"),
        }
    }

    #[test]
    fn assembly_body_is_kept_verbatim() {
        let unit = parse_ok(
            "contract C { function f() public { uint x = 1; assembly { let y := mload(0x40) { nested } } x = 2; } }",
        );
        let body = first_fn_body(&unit);
        assert_eq!(body.statements.len(), 3);
        match &body.statements[1] {
            Statement::Assembly { body, .. } => {
                assert_eq!(body, " let y := mload(0x40) { nested } ");
            }
            other => panic!("expected assembly, got {other:?}"),
        }
    }

    #[test]
    fn pragma_and_import_forms() {
        let unit = parse_ok(
            "pragma solidity >=0.7.0 <0.9.0;\n\
             pragma experimental ABIEncoderV2;\n\
             import \"./a.sol\";\n\
             import {A as B} from \"./b.sol\";\n\
             contract C {}",
        );
        assert_eq!(unit.pragmas.len(), 2);
        assert!(unit.pragmas[0].constraint.is_some());
        assert_eq!(unit.pragmas[1].name, "experimental");
        assert_eq!(unit.pragmas[1].content, "ABIEncoderV2");
        assert!(unit.pragmas[1].constraint.is_none());
        assert_eq!(unit.imports.len(), 2);
        assert_eq!(unit.imports[0].path, "./a.sol");
        assert_eq!(unit.imports[1].path, "./b.sol");
    }

    #[test]
    fn modifier_bodies_and_placeholder() {
        let unit = parse_ok(
            "contract C {\n\
                 address owner;\n\
                 modifier onlyOwner() { require(msg.sender == owner); _; }\n\
                 function f() public onlyOwner {}\n\
             }",
        );
        let m = &unit.contracts[0].modifiers[0];
        assert_eq!(m.name, "onlyOwner");
        let body = m.body.as_ref().unwrap();
        assert_eq!(body.statements.len(), 2);
        assert!(matches!(body.statements[1], Statement::Placeholder { .. }));
        let f = &unit.contracts[0].functions[0];
        assert_eq!(f.modifiers.len(), 1);
        assert_eq!(f.modifiers[0].name, "onlyOwner");
        assert!(f.modifiers[0].args.is_none());
    }

    #[test]
    fn for_loop_variants() {
        let unit = parse_ok(
            "contract C { function f(uint n) public {\n\
                 for (uint i = 0; i < n; i++) { g(); }\n\
                 for (;;) { g(); }\n\
                 for (i = 0; ; ) { g(); }\n\
             } }",
        );
        let body = first_fn_body(&unit);
        match &body.statements[0] {
            Statement::For { init, condition, update, .. } => {
                assert!(matches!(init.as_deref(), Some(Statement::VariableDeclaration { .. })));
                assert!(condition.is_some());
                assert!(matches!(update, Some(Expression::Unary { prefix: false, .. })));
            }
            other => panic!("expected for, got {other:?}"),
        }
        match &body.statements[1] {
            Statement::For { init, condition, update, .. } => {
                assert!(init.is_none() && condition.is_none() && update.is_none());
            }
            other => panic!("expected for, got {other:?}"),
        }
        match &body.statements[2] {
            Statement::For { init, condition, update, .. } => {
                assert!(matches!(init.as_deref(), Some(Statement::Expression { .. })));
                assert!(condition.is_none() && update.is_none());
            }
            other => panic!("expected for, got {other:?}"),
        }
    }

    #[test]
    fn lex_errors_surface_as_parse_errors() {
        let errors = parse_errs("contract C { string s = \"oops\n; }");
        assert_eq!(errors.len(), 1);
        assert!(errors[0].message.contains("unterminated string"));
    }

    #[test]
    fn inheritance_with_constructor_args() {
        let unit = parse_ok(
            "contract Base { constructor(uint x) {} }\n\
             abstract contract Mid is Base(1) {}\n\
             interface IThing {}\n\
             library Lib {}\n\
             contract End is Mid, IThing {}",
        );
        assert_eq!(unit.contracts.len(), 5);
        assert_eq!(unit.contracts[0].functions[0].kind, FunctionKind::Constructor);
        let mid = &unit.contracts[1];
        assert!(mid.is_abstract);
        assert_eq!(mid.bases.len(), 1);
        assert_eq!(mid.bases[0].name, "Base");
        assert_eq!(mid.bases[0].args.as_ref().unwrap().len(), 1);
        assert_eq!(unit.contracts[2].kind, ContractKind::Interface);
        assert_eq!(unit.contracts[3].kind, ContractKind::Library);
        let end = &unit.contracts[4];
        assert_eq!(end.bases.len(), 2);
        assert!(end.bases[1].args.is_none());
    }

    #[test]
    fn using_events_and_state_var_attributes() {
        let unit = parse_ok(
            "contract C {\n\
                 using SafeMath for uint256;\n\
                 using Lib for *;\n\
                 event Transfer(address indexed from, address indexed to, uint256 value);\n\
                 uint256 public constant MAX = 100;\n\
                 address private immutable deployer;\n\
             }",
        );
        let c = &unit.contracts[0];
        assert_eq!(c.using_directives.len(), 2);
        assert_eq!(c.using_directives[0].library, "SafeMath");
        assert_eq!(c.using_directives[0].target, "uint256");
        assert_eq!(c.using_directives[1].target, "*");
        assert_eq!(c.events.len(), 1);
        assert_eq!(c.events[0].name, "Transfer");
        assert!(c.state_vars[0].is_constant);
        assert_eq!(c.state_vars[0].visibility, Some(Visibility::Public));
        assert!(c.state_vars[1].is_immutable);
    }

    #[test]
    fn unchecked_do_while_and_casts() {
        let unit = parse_ok(
            "contract C { function f(address a) public {\n\
                 unchecked { x = x + 1; }\n\
                 do { x--; } while (x > 0);\n\
                 address p = address(uint160(a));\n\
                 Token t = Token(a);\n\
                 payable(a).transfer(1);\n\
             } }",
        );
        let body = first_fn_body(&unit);
        assert!(matches!(&body.statements[0], Statement::Unchecked { block, .. } if block.statements.len() == 1));
        assert!(matches!(&body.statements[1], Statement::DoWhile { .. }));
        match &body.statements[2] {
            Statement::VariableDeclaration { initializer: Some(Expression::TypeCast { target, arg, .. }), .. } => {
                assert_eq!(target, "address");
                assert!(matches!(arg.as_ref(), Expression::TypeCast { target, .. } if target == "uint160"));
            }
            other => panic!("expected nested cast, got {other:?}"),
        }
        // A user-defined cast parses as a one-argument call.
        match &body.statements[3] {
            Statement::VariableDeclaration { initializer: Some(Expression::Call { callee, args, .. }), .. } => {
                assert!(matches!(callee.as_ref(), Expression::Identifier { name, .. } if name == "Token"));
                assert_eq!(args.len(), 1);
            }
            other => panic!("expected call-style cast, got {other:?}"),
        }
        match &body.statements[4] {
            Statement::Expression { expr: Expression::Call { callee, .. }, .. } => {
                assert!(matches!(
                    callee.as_ref(),
                    Expression::MemberAccess { base, member, .. }
                        if member == "transfer" && matches!(base.as_ref(), Expression::TypeCast { target, .. } if target == "payable")
                ));
            }
            other => panic!("expected payable cast call, got {other:?}"),
        }
    }

    #[test]
    fn new_expression_and_emit() {
        let unit = parse_ok(
            "contract C { event D(); function f() public { C c = new C(); uint[] memory xs = new uint[](3); emit D(); } }",
        );
        let body = first_fn_body(&unit);
        match &body.statements[0] {
            Statement::VariableDeclaration { initializer: Some(Expression::Call { callee, .. }), .. } => {
                assert!(matches!(callee.as_ref(), Expression::New { .. }));
            }
            other => panic!("expected new-call, got {other:?}"),
        }
        match &body.statements[1] {
            Statement::VariableDeclaration { declarations, .. } => {
                let var = declarations[0].as_ref().unwrap();
                assert_eq!(var.location, Some(DataLocation::Memory));
                assert!(var.type_name.is_dynamic_array());
            }
            other => panic!("expected declaration, got {other:?}"),
        }
        assert!(matches!(&body.statements[2], Statement::Emit { .. }));
    }

    #[test]
    fn spans_point_into_the_source() {
        let src = "contract C { uint x; }";
        let unit = parse_ok(src);
        let c = &unit.contracts[0];
        assert_eq!(&src[c.name_span.start..c.name_span.end], "C");
        let v = &c.state_vars[0];
        assert_eq!(&src[v.name_span.start..v.name_span.end], "x");
        assert_eq!(&src[v.span.start..v.span.end], "uint x;");
        assert_eq!(&src[c.span.start..c.span.end], src);
    }
}
