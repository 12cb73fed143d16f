//! Hand-rolled lexer and recursive-descent parser for the Turtle subset.
//!
//! The parser recovers at statement boundaries: after an error it skips to
//! the next `.` and continues, so one pass reports every malformed
//! statement in a document.

use super::{
    is_valid_language_tag, is_valid_pname_prefix, Graph, Literal, ParseError, ParseErrorKind,
    Term, Triple,
};
use crate::vocab;
use std::path::{Path, PathBuf};

/// Parse a Turtle document into a [`Graph`].
///
/// On success the graph contains exactly the triples denoted by the
/// document, with anonymous blank nodes skolemized to `_:genN` labels in
/// document order. On failure all detected errors are returned, not only
/// the first.
pub fn parse(source: &str, origin: &Path) -> Result<Graph, Vec<ParseError>> {
    Parser::new(source, origin).run()
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    PrefixDirective,
    IriRef(String),
    PName { prefix: String, local: String },
    BlankLabel(String),
    StringLit(String),
    LangTag(String),
    CaretCaret,
    Integer(String),
    Decimal(String),
    Boolean(String),
    KeywordA,
    Dot,
    Semicolon,
    Comma,
    OpenBracket,
    CloseBracket,
    Eof,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::PrefixDirective => "`@prefix`".into(),
            TokenKind::IriRef(iri) => format!("IRI <{iri}>"),
            TokenKind::PName { prefix, local } => format!("`{prefix}:{local}`"),
            TokenKind::BlankLabel(label) => format!("`_:{label}`"),
            TokenKind::StringLit(_) => "string literal".into(),
            TokenKind::LangTag(tag) => format!("`@{tag}`"),
            TokenKind::CaretCaret => "`^^`".into(),
            TokenKind::Integer(n) | TokenKind::Decimal(n) => format!("`{n}`"),
            TokenKind::Boolean(b) => format!("`{b}`"),
            TokenKind::KeywordA => "`a`".into(),
            TokenKind::Dot => "`.`".into(),
            TokenKind::Semicolon => "`;`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::OpenBracket => "`[`".into(),
            TokenKind::CloseBracket => "`]`".into(),
            TokenKind::Eof => "end of file".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    line: usize,
    column: usize,
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Lexer {
    fn new(source: &str) -> Self {
        Lexer {
            chars: source.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn error(
        &self,
        line: usize,
        column: usize,
        kind: ParseErrorKind,
        message: impl Into<String>,
    ) -> LexError {
        LexError {
            line,
            column,
            kind,
            message: message.into(),
        }
    }

    fn next_token(&mut self) -> Result<Token, LexError> {
        self.skip_trivia();
        let (line, column) = (self.line, self.column);
        let token = |kind| Token { kind, line, column };

        let Some(c) = self.peek() else {
            return Ok(token(TokenKind::Eof));
        };

        match c {
            ';' => {
                self.bump();
                Ok(token(TokenKind::Semicolon))
            }
            ',' => {
                self.bump();
                Ok(token(TokenKind::Comma))
            }
            '[' => {
                self.bump();
                Ok(token(TokenKind::OpenBracket))
            }
            ']' => {
                self.bump();
                Ok(token(TokenKind::CloseBracket))
            }
            '.' => {
                // a dot directly followed by a digit starts a decimal
                if self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
                    self.lex_number(line, column)
                } else {
                    self.bump();
                    Ok(token(TokenKind::Dot))
                }
            }
            '^' => {
                self.bump();
                if self.peek() == Some('^') {
                    self.bump();
                    Ok(token(TokenKind::CaretCaret))
                } else {
                    Err(self.error(line, column, ParseErrorKind::UnexpectedToken, "stray `^`"))
                }
            }
            '<' => self.lex_iri(line, column),
            '"' => self.lex_string(line, column),
            '@' => self.lex_at(line, column),
            '_' => self.lex_blank(line, column),
            '+' | '-' => self.lex_number(line, column),
            c if c.is_ascii_digit() => self.lex_number(line, column),
            ':' => self.lex_pname(line, column),
            c if c.is_ascii_alphabetic() => self.lex_pname(line, column),
            other => {
                self.bump();
                Err(self.error(
                    line,
                    column,
                    ParseErrorKind::UnexpectedToken,
                    format!("unexpected character `{other}`"),
                ))
            }
        }
    }

    fn lex_iri(&mut self, line: usize, column: usize) -> Result<Token, LexError> {
        self.bump(); // '<'
        let mut value = String::new();
        loop {
            match self.peek() {
                Some('>') => {
                    self.bump();
                    break;
                }
                Some('\n') | None => {
                    return Err(self.error(
                        line,
                        column,
                        ParseErrorKind::BadIri,
                        "unterminated IRI (missing `>`)",
                    ));
                }
                Some(c) => {
                    value.push(c);
                    self.bump();
                }
            }
        }
        match Term::iri(&value) {
            Ok(_) => Ok(Token {
                kind: TokenKind::IriRef(value),
                line,
                column,
            }),
            Err(err) => Err(self.error(line, column, ParseErrorKind::BadIri, err.to_string())),
        }
    }

    fn lex_string(&mut self, line: usize, column: usize) -> Result<Token, LexError> {
        self.bump(); // opening quote
        if self.peek() == Some('"') && self.peek_at(1) == Some('"') {
            // consume the triple quote so recovery resumes past it
            self.bump();
            self.bump();
            return Err(self.error(
                line,
                column,
                ParseErrorKind::BadLiteral,
                "triple-quoted literals are not supported",
            ));
        }
        let mut value = String::new();
        loop {
            match self.peek() {
                Some('"') => {
                    self.bump();
                    break;
                }
                Some('\\') => {
                    self.bump();
                    let escaped = match self.peek() {
                        Some('"') => '"',
                        Some('\\') => '\\',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('t') => '\t',
                        other => {
                            if other.is_some() {
                                self.bump();
                            }
                            return Err(self.error(
                                line,
                                column,
                                ParseErrorKind::BadLiteral,
                                match other {
                                    Some(c) => format!("unsupported escape `\\{c}` in string"),
                                    None => "unterminated string literal".to_string(),
                                },
                            ));
                        }
                    };
                    self.bump();
                    value.push(escaped);
                }
                Some('\n') | None => {
                    return Err(self.error(
                        line,
                        column,
                        ParseErrorKind::BadLiteral,
                        "unterminated string literal",
                    ));
                }
                Some(c) => {
                    value.push(c);
                    self.bump();
                }
            }
        }
        Ok(Token {
            kind: TokenKind::StringLit(value),
            line,
            column,
        })
    }

    fn lex_at(&mut self, line: usize, column: usize) -> Result<Token, LexError> {
        self.bump(); // '@'
        let mut word = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '-' {
                word.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if word == "prefix" {
            return Ok(Token {
                kind: TokenKind::PrefixDirective,
                line,
                column,
            });
        }
        if word == "base" {
            return Err(self.error(
                line,
                column,
                ParseErrorKind::UnexpectedToken,
                "`@base` is not supported; use absolute IRIs",
            ));
        }
        if is_valid_language_tag(&word) {
            return Ok(Token {
                kind: TokenKind::LangTag(word),
                line,
                column,
            });
        }
        Err(self.error(
            line,
            column,
            ParseErrorKind::BadLiteral,
            format!("`@{word}` is neither a directive nor a valid language tag"),
        ))
    }

    fn lex_blank(&mut self, line: usize, column: usize) -> Result<Token, LexError> {
        self.bump(); // '_'
        if self.peek() != Some(':') {
            return Err(self.error(
                line,
                column,
                ParseErrorKind::UnexpectedToken,
                "expected `:` after `_` in blank node label",
            ));
        }
        self.bump();
        let mut label = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                label.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if label.is_empty() {
            return Err(self.error(
                line,
                column,
                ParseErrorKind::UnexpectedToken,
                "blank node label must match [A-Za-z0-9_]+",
            ));
        }
        Ok(Token {
            kind: TokenKind::BlankLabel(label),
            line,
            column,
        })
    }

    fn lex_number(&mut self, line: usize, column: usize) -> Result<Token, LexError> {
        let mut text = String::new();
        if matches!(self.peek(), Some('+') | Some('-')) {
            text.push(self.bump().unwrap());
        }
        let mut has_dot = false;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                text.push(c);
                self.bump();
            } else if c == '.' && !has_dot && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
                has_dot = true;
                text.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if text.trim_start_matches(['+', '-']).is_empty() {
            return Err(self.error(
                line,
                column,
                ParseErrorKind::UnexpectedToken,
                format!("expected digits after `{text}`"),
            ));
        }
        let kind = if has_dot {
            TokenKind::Decimal(text)
        } else {
            TokenKind::Integer(text)
        };
        Ok(Token { kind, line, column })
    }

    fn lex_pname(&mut self, line: usize, column: usize) -> Result<Token, LexError> {
        let mut prefix = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                prefix.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if self.peek() != Some(':') {
            // a bare word: only `a`, `true` and `false` are keywords
            return match prefix.as_str() {
                "a" => Ok(Token {
                    kind: TokenKind::KeywordA,
                    line,
                    column,
                }),
                "true" | "false" => Ok(Token {
                    kind: TokenKind::Boolean(prefix),
                    line,
                    column,
                }),
                _ => Err(self.error(
                    line,
                    column,
                    ParseErrorKind::UnexpectedToken,
                    format!("unexpected word `{prefix}` (missing `:`?)"),
                )),
            };
        }
        if !is_valid_pname_prefix(&prefix) {
            return Err(self.error(
                line,
                column,
                ParseErrorKind::UnexpectedToken,
                format!("`{prefix}` is not a valid prefix label"),
            ));
        }
        self.bump(); // ':'
        let mut local = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                local.push(c);
                self.bump();
            } else if c == '.'
                && self
                    .peek_at(1)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
            {
                // dots are allowed inside a local name but never at its end,
                // so a trailing dot stays a statement terminator
                local.push(c);
                self.bump();
            } else {
                break;
            }
        }
        Ok(Token {
            kind: TokenKind::PName { prefix, local },
            line,
            column,
        })
    }
}

struct LexError {
    line: usize,
    column: usize,
    kind: ParseErrorKind,
    message: String,
}

struct Parser {
    lexer: Lexer,
    peeked: Option<Result<Token, LexError>>,
    graph: Graph,
    errors: Vec<ParseError>,
    origin: PathBuf,
    anon_counter: usize,
}

type Parsed<T> = Result<T, ParseError>;

impl Parser {
    fn new(source: &str, origin: &Path) -> Self {
        let mut graph = Graph::new();
        graph.set_origin(origin);
        Parser {
            lexer: Lexer::new(source),
            peeked: None,
            graph,
            errors: Vec::new(),
            origin: origin.to_path_buf(),
            anon_counter: 0,
        }
    }

    fn run(mut self) -> Result<Graph, Vec<ParseError>> {
        loop {
            match self.peek_kind() {
                Ok(TokenKind::Eof) => break,
                Ok(TokenKind::PrefixDirective) => {
                    if let Err(err) = self.parse_prefix_directive() {
                        self.errors.push(err);
                        self.recover();
                    }
                }
                _ => {
                    if let Err(err) = self.parse_triples_block() {
                        self.errors.push(err);
                        self.recover();
                    }
                }
            }
        }
        if self.errors.is_empty() {
            Ok(self.graph)
        } else {
            Err(self.errors)
        }
    }

    fn lift(&self, err: LexError) -> ParseError {
        ParseError {
            file: self.origin.clone(),
            line: err.line,
            column: err.column,
            kind: err.kind,
            message: err.message,
        }
    }

    fn error_at(
        &self,
        token: &Token,
        kind: ParseErrorKind,
        message: impl Into<String>,
    ) -> ParseError {
        ParseError {
            file: self.origin.clone(),
            line: token.line,
            column: token.column,
            kind,
            message: message.into(),
        }
    }

    fn next(&mut self) -> Parsed<Token> {
        match self.peeked.take() {
            Some(Ok(token)) => Ok(token),
            Some(Err(err)) => Err(self.lift(err)),
            None => match self.lexer.next_token() {
                Ok(token) => Ok(token),
                Err(err) => Err(self.lift(err)),
            },
        }
    }

    fn peek_kind(&mut self) -> Result<&TokenKind, ()> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lexer.next_token());
        }
        match self.peeked.as_ref().unwrap() {
            Ok(token) => Ok(&token.kind),
            Err(_) => Err(()),
        }
    }

    /// Skip tokens until a statement terminator has been consumed, eating
    /// further lexer errors silently: they belong to the statement already
    /// reported.
    fn recover(&mut self) {
        loop {
            match self.next() {
                Ok(token) if token.kind == TokenKind::Dot => break,
                Ok(token) if token.kind == TokenKind::Eof => break,
                Ok(_) | Err(_) => continue,
            }
        }
    }

    fn expect_dot(&mut self) -> Parsed<()> {
        let token = self.next()?;
        match token.kind {
            TokenKind::Dot => Ok(()),
            TokenKind::Eof => Err(self.error_at(
                &token,
                ParseErrorKind::UnterminatedStatement,
                "end of file inside a statement (missing `.`)",
            )),
            other => Err(self.error_at(
                &token,
                ParseErrorKind::UnexpectedToken,
                format!("expected `.`, found {}", other.describe()),
            )),
        }
    }

    fn parse_prefix_directive(&mut self) -> Parsed<()> {
        self.next()?; // @prefix
        let token = self.next()?;
        let label = match token.kind {
            TokenKind::PName { prefix, local } if local.is_empty() => prefix,
            TokenKind::Eof => {
                return Err(self.error_at(
                    &token,
                    ParseErrorKind::UnterminatedStatement,
                    "end of file inside `@prefix` directive",
                ))
            }
            ref other => {
                return Err(self.error_at(
                    &token,
                    ParseErrorKind::UnexpectedToken,
                    format!("expected a prefix label, found {}", other.describe()),
                ))
            }
        };
        let token = self.next()?;
        let namespace = match token.kind {
            TokenKind::IriRef(iri) => iri,
            TokenKind::Eof => {
                return Err(self.error_at(
                    &token,
                    ParseErrorKind::UnterminatedStatement,
                    "end of file inside `@prefix` directive",
                ))
            }
            ref other => {
                return Err(self.error_at(
                    &token,
                    ParseErrorKind::UnexpectedToken,
                    format!("expected a namespace IRI, found {}", other.describe()),
                ))
            }
        };
        self.graph
            .prefixes_mut()
            .insert(label, namespace)
            .expect("lexer validated the IRI");
        self.expect_dot()
    }

    fn parse_triples_block(&mut self) -> Parsed<()> {
        let token = self.next()?;
        let mut anon_with_props = false;
        let subject = match token.kind {
            TokenKind::IriRef(iri) => Term::Iri(iri),
            TokenKind::PName { prefix, local } => self.expand_pname(&token, &prefix, &local)?,
            TokenKind::BlankLabel(label) => Term::BlankNode(label),
            TokenKind::OpenBracket => {
                let node = self.fresh_blank();
                anon_with_props = self.parse_anon_body(&node)?;
                node
            }
            TokenKind::Eof => {
                return Err(self.error_at(
                    &token,
                    ParseErrorKind::UnterminatedStatement,
                    "end of file inside a statement",
                ))
            }
            ref other => {
                return Err(self.error_at(
                    &token,
                    ParseErrorKind::UnexpectedToken,
                    format!("expected a subject, found {}", other.describe()),
                ))
            }
        };

        // `[ p o ] .` is a complete statement; `[] .` is not
        if anon_with_props && matches!(self.peek_kind(), Ok(TokenKind::Dot)) {
            self.next()?;
            return Ok(());
        }
        self.parse_predicate_object_list(&subject)?;
        self.expect_dot()
    }

    fn parse_predicate_object_list(&mut self, subject: &Term) -> Parsed<()> {
        loop {
            let predicate = self.parse_verb()?;
            self.parse_object_list(subject, &predicate)?;
            // consume `;` separators (Turtle tolerates repeats and a
            // trailing one before `.` or `]`)
            let mut saw_semicolon = false;
            while matches!(self.peek_kind(), Ok(TokenKind::Semicolon)) {
                self.next()?;
                saw_semicolon = true;
            }
            if !saw_semicolon {
                return Ok(());
            }
            match self.peek_kind() {
                Ok(TokenKind::Dot) | Ok(TokenKind::CloseBracket) | Ok(TokenKind::Eof) => {
                    return Ok(())
                }
                _ => continue,
            }
        }
    }

    fn parse_verb(&mut self) -> Parsed<Term> {
        let token = self.next()?;
        match token.kind {
            TokenKind::KeywordA => Ok(Term::Iri(vocab::RDF_TYPE.to_string())),
            TokenKind::IriRef(iri) => Ok(Term::Iri(iri)),
            TokenKind::PName { prefix, local } => self.expand_pname(&token, &prefix, &local),
            TokenKind::Eof => Err(self.error_at(
                &token,
                ParseErrorKind::UnterminatedStatement,
                "end of file where a predicate was expected",
            )),
            ref other => Err(self.error_at(
                &token,
                ParseErrorKind::UnexpectedToken,
                format!("expected a predicate, found {}", other.describe()),
            )),
        }
    }

    fn parse_object_list(&mut self, subject: &Term, predicate: &Term) -> Parsed<()> {
        loop {
            let object = self.parse_object()?;
            let triple = Triple::new(subject.clone(), predicate.clone(), object)
                .expect("parser only builds valid subject/predicate terms");
            self.graph.insert(triple);
            if matches!(self.peek_kind(), Ok(TokenKind::Comma)) {
                self.next()?;
                continue;
            }
            return Ok(());
        }
    }

    fn parse_object(&mut self) -> Parsed<Term> {
        let token = self.next()?;
        match token.kind {
            TokenKind::IriRef(iri) => Ok(Term::Iri(iri)),
            TokenKind::PName { prefix, local } => self.expand_pname(&token, &prefix, &local),
            TokenKind::BlankLabel(label) => Ok(Term::BlankNode(label)),
            TokenKind::OpenBracket => {
                let node = self.fresh_blank();
                self.parse_anon_body(&node)?;
                Ok(node)
            }
            TokenKind::StringLit(value) => self.parse_literal_suffix(value),
            TokenKind::Integer(text) => Ok(Literal::typed(text, vocab::XSD_INTEGER)
                .expect("xsd:integer is a valid IRI")
                .into()),
            TokenKind::Decimal(text) => Ok(Literal::typed(text, vocab::XSD_DECIMAL)
                .expect("xsd:decimal is a valid IRI")
                .into()),
            TokenKind::Boolean(text) => Ok(Literal::typed(text, vocab::XSD_BOOLEAN)
                .expect("xsd:boolean is a valid IRI")
                .into()),
            TokenKind::Eof => Err(self.error_at(
                &token,
                ParseErrorKind::UnterminatedStatement,
                "end of file where an object was expected",
            )),
            ref other => Err(self.error_at(
                &token,
                ParseErrorKind::UnexpectedToken,
                format!("expected an object, found {}", other.describe()),
            )),
        }
    }

    fn parse_literal_suffix(&mut self, value: String) -> Parsed<Term> {
        match self.peek_kind() {
            Ok(TokenKind::LangTag(_)) => {
                let token = self.next()?;
                let TokenKind::LangTag(tag) = token.kind else {
                    unreachable!()
                };
                Ok(Literal::lang_tagged(value, tag)
                    .expect("lexer validated the tag")
                    .into())
            }
            Ok(TokenKind::CaretCaret) => {
                self.next()?;
                let token = self.next()?;
                let datatype = match token.kind {
                    TokenKind::IriRef(iri) => iri,
                    TokenKind::PName { prefix, local } => {
                        let term = self.expand_pname(&token, &prefix, &local)?;
                        match term {
                            Term::Iri(iri) => iri,
                            _ => unreachable!(),
                        }
                    }
                    TokenKind::Eof => {
                        return Err(self.error_at(
                            &token,
                            ParseErrorKind::UnterminatedStatement,
                            "end of file where a datatype was expected",
                        ))
                    }
                    ref other => {
                        return Err(self.error_at(
                            &token,
                            ParseErrorKind::BadLiteral,
                            format!("expected a datatype IRI after `^^`, found {}", other.describe()),
                        ))
                    }
                };
                Ok(Literal::typed(value, datatype)
                    .expect("datatype came from a validated IRI token")
                    .into())
            }
            _ => Ok(Literal::plain(value).into()),
        }
    }

    /// `[` has been consumed; parse an optional predicate-object list and
    /// the closing `]`. Returns whether the node carried any properties.
    fn parse_anon_body(&mut self, node: &Term) -> Parsed<bool> {
        if matches!(self.peek_kind(), Ok(TokenKind::CloseBracket)) {
            self.next()?;
            return Ok(false);
        }
        self.parse_predicate_object_list(node)?;
        let token = self.next()?;
        match token.kind {
            TokenKind::CloseBracket => Ok(true),
            TokenKind::Eof => Err(self.error_at(
                &token,
                ParseErrorKind::UnterminatedStatement,
                "end of file inside `[ ... ]`",
            )),
            ref other => Err(self.error_at(
                &token,
                ParseErrorKind::UnexpectedToken,
                format!("expected `]`, found {}", other.describe()),
            )),
        }
    }

    fn fresh_blank(&mut self) -> Term {
        let label = format!("gen{}", self.anon_counter);
        self.anon_counter += 1;
        Term::BlankNode(label)
    }

    fn expand_pname(&self, token: &Token, prefix: &str, local: &str) -> Parsed<Term> {
        match self.graph.prefixes().get(prefix) {
            Some(ns) => Ok(Term::Iri(format!("{ns}{local}"))),
            None => Err(self.error_at(
                token,
                ParseErrorKind::UndefinedPrefix,
                format!("prefix `{prefix}:` is not declared"),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn parse_ok(source: &str) -> Graph {
        parse(source, &PathBuf::from("test.ttl")).expect("document should parse")
    }

    fn parse_err(source: &str) -> Vec<ParseError> {
        parse(source, &PathBuf::from("test.ttl")).expect_err("document should not parse")
    }

    fn iri(value: &str) -> Term {
        Term::iri(value).unwrap()
    }

    #[test]
    fn empty_document() {
        let graph = parse_ok("");
        assert_eq!(graph.len(), 0);
        assert!(graph.prefixes().is_empty());
    }

    #[test]
    fn comments_and_whitespace_only() {
        let graph = parse_ok("# nothing here\n\n   # more\n");
        assert_eq!(graph.len(), 0);
    }

    #[test]
    fn single_triple_with_prefixes() {
        let graph = parse_ok("@prefix ex: <http://ex.org/v#> .\nex:A a ex:B .\n");
        assert_eq!(graph.len(), 1);
        let triple = graph.triples().next().unwrap();
        assert_eq!(triple.subject(), &iri("http://ex.org/v#A"));
        assert_eq!(triple.predicate_iri(), vocab::RDF_TYPE);
        assert_eq!(triple.object(), &iri("http://ex.org/v#B"));
    }

    #[test]
    fn predicate_and_object_lists() {
        let graph = parse_ok(
            "@prefix ex: <http://ex.org/v#> .\n\
             ex:A ex:p ex:B , ex:C ;\n   ex:q \"x\" .\n",
        );
        assert_eq!(graph.len(), 3);
    }

    #[test]
    fn trailing_semicolon_tolerated() {
        let graph = parse_ok("@prefix ex: <http://ex.org/v#> .\nex:A ex:p ex:B ; .\n");
        assert_eq!(graph.len(), 1);
    }

    #[test]
    fn literal_forms() {
        let graph = parse_ok(
            "@prefix ex: <http://ex.org/v#> .\n\
             @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n\
             ex:A ex:plain \"p\" ;\n\
                  ex:tagged \"t\"@en-US ;\n\
                  ex:typed \"1930\"^^xsd:gYear ;\n\
                  ex:str \"s\"^^xsd:string ;\n\
                  ex:int 42 ;\n\
                  ex:neg -7 ;\n\
                  ex:dec 3.14 ;\n\
                  ex:half .5 ;\n\
                  ex:yes true .\n",
        );
        let objects: Vec<_> = graph.triples().map(|t| t.object().clone()).collect();
        assert!(objects.contains(&Literal::plain("p").into()));
        assert!(objects.contains(&Literal::lang_tagged("t", "en-US").unwrap().into()));
        assert!(objects.contains(
            &Literal::typed("1930", "http://www.w3.org/2001/XMLSchema#gYear")
                .unwrap()
                .into()
        ));
        // ^^xsd:string collapses to a plain literal
        assert!(objects.contains(&Literal::plain("s").into()));
        assert!(objects.contains(&Literal::typed("42", vocab::XSD_INTEGER).unwrap().into()));
        assert!(objects.contains(&Literal::typed("-7", vocab::XSD_INTEGER).unwrap().into()));
        assert!(objects.contains(&Literal::typed("3.14", vocab::XSD_DECIMAL).unwrap().into()));
        assert!(objects.contains(&Literal::typed(".5", vocab::XSD_DECIMAL).unwrap().into()));
        assert!(objects.contains(&Literal::typed("true", vocab::XSD_BOOLEAN).unwrap().into()));
    }

    #[test]
    fn string_escapes_round_trip() {
        let graph = parse_ok(
            "@prefix ex: <http://ex.org/v#> .\nex:A ex:p \"line\\nbreak \\\"quoted\\\" back\\\\slash\\ttab\" .\n",
        );
        let object = graph.triples().next().unwrap().object().clone();
        assert_eq!(
            object,
            Literal::plain("line\nbreak \"quoted\" back\\slash\ttab").into()
        );
    }

    #[test]
    fn labeled_and_anonymous_blank_nodes() {
        let graph = parse_ok(
            "@prefix ex: <http://ex.org/v#> .\n\
             _:b1 ex:p ex:A .\n\
             ex:B ex:q [ ex:r ex:C ; ex:s [ ] ] .\n",
        );
        assert_eq!(graph.len(), 4);
        let labels: Vec<String> = graph
            .triples()
            .flat_map(|t| [t.subject().clone(), t.object().clone()])
            .filter_map(|t| match t {
                Term::BlankNode(l) => Some(l),
                _ => None,
            })
            .collect();
        assert!(labels.contains(&"b1".to_string()));
        assert!(labels.contains(&"gen0".to_string()));
        assert!(labels.contains(&"gen1".to_string()));
    }

    #[test]
    fn anonymous_subject_statement() {
        let graph = parse_ok("@prefix ex: <http://ex.org/v#> .\n[ ex:p ex:A ] .\n");
        assert_eq!(graph.len(), 1);
        assert_eq!(
            graph.triples().next().unwrap().subject(),
            &Term::blank("gen0").unwrap()
        );

        let graph = parse_ok("@prefix ex: <http://ex.org/v#> .\n[ ex:p ex:A ] ex:q ex:B .\n");
        assert_eq!(graph.len(), 2);
    }

    #[test]
    fn anon_labels_are_positional_and_deterministic() {
        let source = "@prefix ex: <http://ex.org/v#> .\nex:A ex:p [ ex:q [ ] ] .\nex:B ex:p [ ] .\n";
        let first = parse_ok(source);
        let second = parse_ok(source);
        assert_eq!(first, second);
        let labels: std::collections::BTreeSet<String> = first
            .triples()
            .filter_map(|t| match t.object() {
                Term::BlankNode(l) => Some(l.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(
            labels,
            ["gen0", "gen1", "gen2"]
                .into_iter()
                .map(String::from)
                .collect()
        );
    }

    #[test]
    fn undefined_prefix_is_reported_once_per_statement() {
        let errors = parse_err("ex:A a ex:B .");
        assert_eq!(errors.len(), 1);
        assert_eq!(errors[0].kind, ParseErrorKind::UndefinedPrefix);
        assert_eq!(errors[0].line, 1);
    }

    #[test]
    fn error_positions_point_into_the_source() {
        let errors = parse_err("@prefix ex: <http://ex.org/v#> .\nex:A ex:p undefined:B .\n");
        assert_eq!(errors.len(), 1);
        assert_eq!(errors[0].kind, ParseErrorKind::UndefinedPrefix);
        assert_eq!(errors[0].line, 2);
        assert_eq!(errors[0].column, 11);
        assert_eq!(errors[0].file, PathBuf::from("test.ttl"));
    }

    #[test]
    fn recovery_reports_every_malformed_statement() {
        let errors = parse_err(
            "@prefix ex: <http://ex.org/v#> .\n\
             ex:A ex:p .\n\
             undefined:B ex:p ex:C .\n\
             ex:D ex:q \"unterminated .\n\
             ex:E ex:r ex:F .\n",
        );
        assert!(errors.len() >= 3, "got {errors:?}");
    }

    #[test]
    fn valid_statements_around_errors_still_parse() {
        let result = parse(
            "@prefix ex: <http://ex.org/v#> .\nex:A ex:p ex:B .\nbroken here .\nex:C ex:q ex:D .\n",
            &PathBuf::from("test.ttl"),
        );
        let errors = result.expect_err("middle statement is malformed");
        assert_eq!(errors.len(), 1);
    }

    #[test]
    fn unterminated_statement_at_eof() {
        let errors = parse_err("@prefix ex: <http://ex.org/v#> .\nex:A ex:p ex:B ");
        assert_eq!(errors.len(), 1);
        assert_eq!(errors[0].kind, ParseErrorKind::UnterminatedStatement);
    }

    #[test]
    fn bad_iri_detected() {
        let errors = parse_err("<relative> <http://ex.org/p> <http://ex.org/o> .");
        assert_eq!(errors[0].kind, ParseErrorKind::BadIri);

        let errors = parse_err("<http://ex.org/with space> <http://ex.org/p> <http://ex.org/o> .");
        assert_eq!(errors[0].kind, ParseErrorKind::BadIri);
    }

    #[test]
    fn bad_literal_detected() {
        let errors = parse_err("@prefix ex: <http://ex.org/v#> .\nex:A ex:p \"x\"@9bad .\n");
        assert_eq!(errors[0].kind, ParseErrorKind::BadLiteral);

        let errors = parse_err("@prefix ex: <http://ex.org/v#> .\nex:A ex:p \"\"\"x\"\"\" .\n");
        assert_eq!(errors[0].kind, ParseErrorKind::BadLiteral);
    }

    #[test]
    fn unsupported_directives_and_syntax() {
        let errors = parse_err("@base <http://ex.org/> .");
        assert_eq!(errors[0].kind, ParseErrorKind::UnexpectedToken);

        let errors = parse_err("@prefix ex: <http://ex.org/v#> .\nex:A ex:p ( ex:B ex:C ) .\n");
        assert!(!errors.is_empty());
    }

    #[test]
    fn crlf_input_accepted() {
        let graph = parse_ok("@prefix ex: <http://ex.org/v#> .\r\nex:A a ex:B .\r\n");
        assert_eq!(graph.len(), 1);
    }

    #[test]
    fn dot_directly_after_terms() {
        // terminator dot with no preceding space, after pname / literal / iri
        let graph = parse_ok(
            "@prefix ex: <http://ex.org/v#>.\nex:A ex:p ex:B.\nex:C ex:q \"x\".\nex:D ex:r <http://ex.org/x>.\n",
        );
        assert_eq!(graph.len(), 3);
    }

    #[test]
    fn empty_local_name_resolves_to_namespace() {
        let graph = parse_ok("@prefix scor: <http://purl.org/eis/vocab/scor#> .\nscor:Process scor:definedBy scor: .\n");
        let triple = graph.triples().next().unwrap();
        assert_eq!(
            triple.object(),
            &iri("http://purl.org/eis/vocab/scor#")
        );
    }

    #[test]
    fn prefix_redeclaration_rebinds_later_statements() {
        let graph = parse_ok(
            "@prefix ex: <http://one.org/#> .\nex:a ex:p ex:b .\n@prefix ex: <http://two.org/#> .\nex:a ex:p ex:b .\n",
        );
        assert_eq!(graph.len(), 2);
        let subjects: Vec<_> = graph.subjects().cloned().collect();
        assert!(subjects.contains(&iri("http://one.org/#a")));
        assert!(subjects.contains(&iri("http://two.org/#a")));
    }
}
