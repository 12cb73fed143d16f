//! RDF data model and a Turtle subset parser with a deterministic,
//! diff-friendly serialization.
//!
//! The supported syntax covers `@prefix` directives, prefixed names,
//! angle-bracket IRIs, the `a` keyword, plain/language-tagged/typed string
//! literals, integer/decimal/boolean shorthand, `;` predicate lists, `,`
//! object lists, labeled and anonymous blank nodes, and `#` comments.
//! Collections `( )`, `@base` and triple-quoted literals are out of scope.

mod canon;
mod parser;

pub use canon::{is_canonical, serialize_canonical, CanonStatus};
pub use parser::parse;

use crate::vocab;
use std::collections::btree_set;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Violation of a term-level invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("IRI must not be empty")]
    EmptyIri,
    #[error("IRI `{0}` contains whitespace or a character not allowed in IRIs")]
    ForbiddenIriChar(String),
    #[error("IRI `{0}` has no valid scheme prefix")]
    MissingScheme(String),
    #[error("blank node label `{0}` must match [A-Za-z0-9_]+")]
    BadBlankNodeLabel(String),
    #[error("`{0}` is not a well-formed language tag")]
    BadLanguageTag(String),
    #[error("`{0}` is not a valid prefix label")]
    BadPrefixLabel(String),
}

/// An RDF literal: a lexical form plus at most one of a language tag or a
/// datatype IRI. A literal with neither has the effective datatype
/// `xsd:string`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    lang: Option<String>,
    datatype: Option<String>,
}

impl Literal {
    /// A plain literal (effective datatype `xsd:string`).
    pub fn plain(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            lang: None,
            datatype: None,
        }
    }

    /// A language-tagged literal. The tag must match
    /// `[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*`.
    pub fn lang_tagged(
        lexical: impl Into<String>,
        tag: impl Into<String>,
    ) -> Result<Self, TermError> {
        let tag = tag.into();
        if !is_valid_language_tag(&tag) {
            return Err(TermError::BadLanguageTag(tag));
        }
        Ok(Literal {
            lexical: lexical.into(),
            lang: Some(tag),
            datatype: None,
        })
    }

    /// A typed literal. `^^xsd:string` is normalized to a plain literal so
    /// that equal terms have a single representation.
    pub fn typed(lexical: impl Into<String>, datatype: impl Into<String>) -> Result<Self, TermError> {
        let datatype = datatype.into();
        validate_iri(&datatype)?;
        if datatype == vocab::XSD_STRING {
            return Ok(Literal::plain(lexical));
        }
        Ok(Literal {
            lexical: lexical.into(),
            lang: None,
            datatype: Some(datatype),
        })
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn lang(&self) -> Option<&str> {
        self.lang.as_deref()
    }

    pub fn datatype(&self) -> Option<&str> {
        self.datatype.as_deref()
    }

    /// The datatype IRI, defaulting to `xsd:string` for plain literals.
    /// Language-tagged literals report `rdf:langString` semantics are out of
    /// scope; they return `xsd:string` here and are distinguished by tag.
    pub fn effective_datatype(&self) -> &str {
        self.datatype.as_deref().unwrap_or(vocab::XSD_STRING)
    }
}

/// A node in an RDF graph: an IRI, a blank node, or a literal.
///
/// The derived ordering (IRI < blank node < literal, lexicographic within
/// each kind, literals by lexical form then language then datatype) is the
/// ordering used everywhere deterministic output is required.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(String),
    BlankNode(String),
    Literal(Literal),
}

impl Term {
    /// An IRI term. The value must be non-empty, contain no whitespace or
    /// bracket/quote characters, and start with a `scheme:` prefix.
    pub fn iri(value: impl Into<String>) -> Result<Self, TermError> {
        let value = value.into();
        validate_iri(&value)?;
        Ok(Term::Iri(value))
    }

    /// A labeled blank node. Labels match `[A-Za-z0-9_]+`.
    pub fn blank(label: impl Into<String>) -> Result<Self, TermError> {
        let label = label.into();
        if label.is_empty() || !label.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_') {
            return Err(TermError::BadBlankNodeLabel(label));
        }
        Ok(Term::BlankNode(label))
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(value) => Some(value),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

fn validate_iri(value: &str) -> Result<(), TermError> {
    if value.is_empty() {
        return Err(TermError::EmptyIri);
    }
    if value
        .chars()
        .any(|c| c.is_whitespace() || c.is_control() || "<>\"{}|^`\\".contains(c))
    {
        return Err(TermError::ForbiddenIriChar(value.to_string()));
    }
    let Some(colon) = value.find(':') else {
        return Err(TermError::MissingScheme(value.to_string()));
    };
    let scheme = &value[..colon];
    let mut chars = scheme.chars();
    let valid_scheme = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'));
    if !valid_scheme {
        return Err(TermError::MissingScheme(value.to_string()));
    }
    Ok(())
}

fn is_valid_language_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let Some(first) = parts.next() else {
        return false;
    };
    if first.is_empty() || first.len() > 8 || !first.bytes().all(|b| b.is_ascii_alphabetic()) {
        return false;
    }
    parts.all(|p| !p.is_empty() && p.len() <= 8 && p.bytes().all(|b| b.is_ascii_alphanumeric()))
}

/// Violation of a triple-level invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripleError {
    #[error("triple subject must be an IRI or blank node")]
    LiteralSubject,
    #[error("triple predicate must be an IRI")]
    NonIriPredicate,
}

/// A single RDF statement. Subjects are IRIs or blank nodes; predicates are
/// always IRIs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    subject: Term,
    predicate: Term,
    object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Result<Self, TripleError> {
        if subject.is_literal() {
            return Err(TripleError::LiteralSubject);
        }
        if !predicate.is_iri() {
            return Err(TripleError::NonIriPredicate);
        }
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Term {
        &self.predicate
    }

    /// The predicate IRI. Always present by construction.
    pub fn predicate_iri(&self) -> &str {
        self.predicate.as_iri().expect("predicate is an IRI")
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    /// True if `term` occurs in subject, predicate or object position.
    pub fn mentions(&self, term: &Term) -> bool {
        &self.subject == term || &self.predicate == term || &self.object == term
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}",
            canon::render_term_raw(&self.subject),
            canon::render_term_raw(&self.predicate),
            canon::render_term_raw(&self.object)
        )
    }
}

/// Namespace prefix declarations, ordered by prefix label. The empty label
/// is the default prefix written as a bare `:` in Turtle.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixMap {
    entries: BTreeMap<String, String>,
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Bind `label` to `namespace`. Re-binding an existing label replaces
    /// the previous namespace, mirroring Turtle's redeclaration semantics.
    pub fn insert(
        &mut self,
        label: impl Into<String>,
        namespace: impl Into<String>,
    ) -> Result<(), TermError> {
        let label = label.into();
        if !is_valid_pname_prefix(&label) {
            return Err(TermError::BadPrefixLabel(label));
        }
        let namespace = namespace.into();
        validate_iri(&namespace)?;
        self.entries.insert(label, namespace);
        Ok(())
    }

    pub fn get(&self, label: &str) -> Option<&str> {
        self.entries.get(label).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(l, n)| (l.as_str(), n.as_str()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Merge another map into this one; bindings in `other` win on conflict.
    pub fn extend(&mut self, other: &PrefixMap) {
        for (label, ns) in other.iter() {
            self.entries.insert(label.to_string(), ns.to_string());
        }
    }

    /// Express `iri` as a prefixed name if a declared namespace matches and
    /// the remainder is a valid local name. The longest namespace wins;
    /// equal namespaces bound to several labels resolve to the smallest
    /// label.
    pub fn shorten(&self, iri: &str) -> Option<(&str, &str)> {
        let mut best: Option<(&str, &str)> = None;
        for (label, ns) in self.iter() {
            if let Some(local) = iri.strip_prefix(ns) {
                if is_valid_pname_local(local)
                    && best.is_none_or(|(_, b): (&str, &str)| ns.len() > iri.len() - b.len())
                {
                    best = Some((label, local));
                }
            }
        }
        best
    }
}

pub(crate) fn is_valid_pname_local(s: &str) -> bool {
    if s.is_empty() {
        return true;
    }
    let bytes = s.as_bytes();
    let head_ok = bytes[0].is_ascii_alphanumeric() || bytes[0] == b'_';
    let body_ok = bytes
        .iter()
        .all(|&b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'-' | b'.'));
    head_ok && body_ok && bytes[bytes.len() - 1] != b'.'
}

pub(crate) fn is_valid_pname_prefix(s: &str) -> bool {
    if s.is_empty() {
        return true;
    }
    let bytes = s.as_bytes();
    bytes[0].is_ascii_alphabetic()
        && bytes
            .iter()
            .all(|&b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'-'))
}

/// A set of triples with the prefix declarations of the document it came
/// from. Insertion of an existing triple is a no-op.
///
/// Equality compares triple sets only: prefixes and origin are
/// serialization metadata, not graph content.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    prefixes: PrefixMap,
    origin: Option<PathBuf>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Insert a triple, returning false when it was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        self.triples.remove(triple)
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Triples in term order.
    pub fn triples(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    pub fn triple_set(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn prefixes(&self) -> &PrefixMap {
        &self.prefixes
    }

    pub fn prefixes_mut(&mut self) -> &mut PrefixMap {
        &mut self.prefixes
    }

    pub fn origin(&self) -> Option<&Path> {
        self.origin.as_deref()
    }

    pub fn set_origin(&mut self, origin: impl Into<PathBuf>) {
        self.origin = Some(origin.into());
    }

    /// Distinct subject terms in term order.
    pub fn subjects(&self) -> impl Iterator<Item = &Term> {
        Deduped {
            inner: self.triples.iter(),
            last: None,
        }
    }

    /// All objects of `(subject, predicate, _)` triples, in term order.
    pub fn objects(&self, subject: &Term, predicate: &str) -> Vec<&Term> {
        self.triples
            .iter()
            .filter(|t| t.subject() == subject && t.predicate_iri() == predicate)
            .map(Triple::object)
            .collect()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.triples == other.triples
    }
}

impl Eq for Graph {}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut graph = Graph::new();
        for triple in iter {
            graph.insert(triple);
        }
        graph
    }
}

struct Deduped<'a> {
    inner: btree_set::Iter<'a, Triple>,
    last: Option<&'a Term>,
}

impl<'a> Iterator for Deduped<'a> {
    type Item = &'a Term;

    fn next(&mut self) -> Option<Self::Item> {
        for triple in self.inner.by_ref() {
            if Some(triple.subject()) != self.last {
                self.last = Some(triple.subject());
                return Some(triple.subject());
            }
        }
        None
    }
}

/// What went wrong at a particular place in a Turtle document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    UnexpectedToken,
    UndefinedPrefix,
    BadIri,
    BadLiteral,
    UnterminatedStatement,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ParseErrorKind::UnexpectedToken => "UnexpectedToken",
            ParseErrorKind::UndefinedPrefix => "UndefinedPrefix",
            ParseErrorKind::BadIri => "BadIri",
            ParseErrorKind::BadLiteral => "BadLiteral",
            ParseErrorKind::UnterminatedStatement => "UnterminatedStatement",
        };
        f.write_str(name)
    }
}

/// A syntax error with its position in the source file. Lines and columns
/// are 1-based; the column counts characters, not bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub file: PathBuf,
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{} {} {}",
            self.file.display(),
            self.line,
            self.column,
            self.kind,
            self.message
        )
    }
}

impl std::error::Error for ParseError {}
