//! Hand-written Solidity lexer.
//!
//! The lexer produces a flat token stream over UTF-8 input. Comments are
//! kept as tokens (the parser skips them); whitespace is dropped but fully
//! recoverable: concatenating the token texts with the whitespace between
//! their spans reproduces the input byte-for-byte. A leading UTF-8 BOM is
//! tolerated and skipped.
//!
//! Two deliberate quirks:
//!
//! * `now` is lexed as an ordinary identifier; the semantic layer treats it
//!   as an alias of `block.timestamp`, which keeps the token stream uniform
//!   across the 0.5–0.8 language window.
//! * Inside a `pragma` directive (from the `pragma` keyword to the closing
//!   `;`) characters that would otherwise be illegal are collected into
//!   [`TokenKind::PragmaToken`] words instead of failing the whole file —
//!   pragma bodies are free-form and compilers lex them loosely.

use crate::span::Span;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Identifier,
    Keyword,
    IntegerLiteral,
    StringLiteral,
    Punctuation,
    /// Free-form word inside a `pragma` directive body.
    PragmaToken,
    Comment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'src> {
    pub kind: TokenKind,
    /// The exact source slice; `&source[span.start..span.end]`.
    pub text: &'src str,
    pub span: Span,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LexError {
    #[error("line {line}:{col}: unterminated string literal")]
    UnterminatedString { line: u32, col: u32 },
    #[error("line {line}:{col}: unterminated block comment")]
    UnterminatedComment { line: u32, col: u32 },
    #[error("line {line}:{col}: illegal character `{ch}`")]
    IllegalCharacter { ch: char, line: u32, col: u32 },
}

/// Solidity keywords recognized by this front end.
///
/// `now` is intentionally absent (see module docs). `fallback` and `receive`
/// are contextual in Solidity and stay identifiers so that 0.5-era code may
/// still use them as plain function names.
const KEYWORDS: &[&str] = &[
    "abstract", "anonymous", "assembly", "break", "calldata", "constant",
    "constructor", "continue", "contract", "delete", "do", "else", "emit",
    "enum", "event", "external", "false", "for", "function", "if", "immutable",
    "import", "indexed", "interface", "internal", "is", "library", "mapping",
    "memory", "modifier", "new", "override", "payable", "pragma", "private",
    "public", "pure", "return", "returns", "storage", "struct", "true",
    "unchecked", "using", "view", "virtual", "while",
    // ether denominations and time units
    "wei", "gwei", "szabo", "finney", "ether", "seconds", "minutes", "hours",
    "days", "weeks", "years",
];

/// True for elementary type names (`uint256`, `bytes32`, `address`, ...),
/// which are lexed as keywords.
pub fn is_elementary_type(name: &str) -> bool {
    match name {
        "address" | "bool" | "string" | "byte" | "bytes" | "int" | "uint" => return true,
        _ => {}
    }
    if let Some(suffix) = name.strip_prefix("uint").or_else(|| name.strip_prefix("int")) {
        return matches!(
            suffix.parse::<u32>(),
            Ok(bits) if bits % 8 == 0 && (8..=256).contains(&bits)
        );
    }
    if let Some(suffix) = name.strip_prefix("bytes") {
        return matches!(suffix.parse::<u32>(), Ok(n) if (1..=32).contains(&n));
    }
    false
}

pub fn is_keyword(name: &str) -> bool {
    KEYWORDS.contains(&name) || is_elementary_type(name)
}

/// Tokenize one source file.
///
/// On success the returned tokens have strictly increasing, non-overlapping
/// spans and include comments. The first lexical problem aborts the scan;
/// a file that does not lex never reaches the parser.
pub fn tokenize(source: &str) -> Result<Vec<Token<'_>>, LexError> {
    Lexer::new(source).run()
}

struct Lexer<'src> {
    src: &'src str,
    pos: usize,
    line: u32,
    col: u32,
    /// Set between a `pragma` keyword and the next `;`.
    in_pragma: bool,
    tokens: Vec<Token<'src>>,
}

impl<'src> Lexer<'src> {
    fn new(src: &'src str) -> Self {
        Lexer { src, pos: 0, line: 1, col: 1, in_pragma: false, tokens: Vec::new() }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.src[self.pos..].chars();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let ch = self.peek()?;
        self.pos += ch.len_utf8();
        if ch == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(ch)
    }

    fn push(&mut self, kind: TokenKind, start: usize, line: u32, col: u32) {
        let span = Span::new(start, self.pos, line, col);
        let text = &self.src[start..self.pos];
        self.tokens.push(Token { kind, text, span });
    }

    fn run(mut self) -> Result<Vec<Token<'src>>, LexError> {
        // A UTF-8 byte-order mark is not part of any token.
        if self.src[self.pos..].starts_with('\u{feff}') {
            self.pos += '\u{feff}'.len_utf8();
        }
        while let Some(ch) = self.peek() {
            if ch.is_whitespace() {
                self.bump();
                continue;
            }
            let (start, line, col) = (self.pos, self.line, self.col);
            if ch == '/' && matches!(self.peek2(), Some('/') | Some('*')) {
                self.comment(start, line, col)?;
            } else if is_ident_start(ch) {
                self.identifier(start, line, col);
            } else if ch.is_ascii_digit() {
                self.number(start, line, col);
            } else if ch == '"' || ch == '\'' {
                self.string(start, line, col)?;
            } else if let Some(len) = punctuation_len(&self.src[self.pos..]) {
                for _ in 0..len {
                    self.bump();
                }
                if &self.src[start..self.pos] == ";" {
                    self.in_pragma = false;
                }
                self.push(TokenKind::Punctuation, start, line, col);
            } else if self.in_pragma {
                // Free-form pragma word: consume until whitespace or `;`.
                while let Some(c) = self.peek() {
                    if c.is_whitespace() || c == ';' {
                        break;
                    }
                    self.bump();
                }
                self.push(TokenKind::PragmaToken, start, line, col);
            } else {
                return Err(LexError::IllegalCharacter { ch, line, col });
            }
        }
        Ok(self.tokens)
    }

    fn comment(&mut self, start: usize, line: u32, col: u32) -> Result<(), LexError> {
        self.bump(); // `/`
        match self.bump() {
            Some('/') => {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            }
            Some('*') => loop {
                match self.bump() {
                    Some('*') if self.peek() == Some('/') => {
                        self.bump();
                        break;
                    }
                    Some(_) => {}
                    None => return Err(LexError::UnterminatedComment { line, col }),
                }
            },
            _ => unreachable!("caller checked the second character"),
        }
        self.push(TokenKind::Comment, start, line, col);
        Ok(())
    }

    fn identifier(&mut self, start: usize, line: u32, col: u32) {
        while let Some(c) = self.peek() {
            if is_ident_continue(c) {
                self.bump();
            } else {
                break;
            }
        }
        let text = &self.src[start..self.pos];
        let kind = if is_keyword(text) { TokenKind::Keyword } else { TokenKind::Identifier };
        if text == "pragma" {
            self.in_pragma = true;
        }
        self.push(kind, start, line, col);
    }

    fn number(&mut self, start: usize, line: u32, col: u32) {
        if self.peek() == Some('0') && matches!(self.peek2(), Some('x') | Some('X')) {
            self.bump();
            self.bump();
            while let Some(c) = self.peek() {
                if c.is_ascii_hexdigit() || c == '_' {
                    self.bump();
                } else {
                    break;
                }
            }
        } else {
            while let Some(c) = self.peek() {
                if c.is_ascii_digit() || c == '_' {
                    self.bump();
                } else {
                    break;
                }
            }
            // Scientific notation: `1e18`, `2E+9`.
            if matches!(self.peek(), Some('e') | Some('E')) {
                let digits_after = |l: &Lexer<'src>, off: usize| {
                    l.src[l.pos + off..].chars().next().is_some_and(|c| c.is_ascii_digit())
                };
                let signed = matches!(self.peek2(), Some('+') | Some('-'));
                if digits_after(self, 1) || (signed && digits_after(self, 2)) {
                    self.bump();
                    if signed {
                        self.bump();
                    }
                    while let Some(c) = self.peek() {
                        if c.is_ascii_digit() || c == '_' {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
            }
        }
        self.push(TokenKind::IntegerLiteral, start, line, col);
    }

    fn string(&mut self, start: usize, line: u32, col: u32) -> Result<(), LexError> {
        let quote = self.bump().expect("caller checked the quote");
        loop {
            match self.peek() {
                None | Some('\n') => return Err(LexError::UnterminatedString { line, col }),
                Some('\\') => {
                    self.bump();
                    if self.bump().is_none() {
                        return Err(LexError::UnterminatedString { line, col });
                    }
                }
                Some(c) => {
                    self.bump();
                    if c == quote {
                        break;
                    }
                }
            }
        }
        self.push(TokenKind::StringLiteral, start, line, col);
        Ok(())
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_' || c == '$'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '$'
}

/// Length in characters of the longest punctuation token at the start of
/// `rest`, or `None` if `rest` does not begin with punctuation.
fn punctuation_len(rest: &str) -> Option<usize> {
    const THREE: &[&str] = &[">>=", "<<="];
    const TWO: &[&str] = &[
        "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=",
        "%=", "&=", "|=", "^=", "<<", ">>", "**", "=>",
    ];
    const ONE: &[char] = &[
        '+', '-', '*', '/', '%', '=', '<', '>', '!', '&', '|', '^', '~', '(',
        ')', '{', '}', '[', ']', ';', ',', '.', '?', ':',
    ];
    if THREE.iter().any(|p| rest.starts_with(p)) {
        return Some(3);
    }
    if TWO.iter().any(|p| rest.starts_with(p)) {
        return Some(2);
    }
    if rest.starts_with(ONE) {
        return Some(1);
    }
    None
}
