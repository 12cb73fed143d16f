//! The canonical "one triple per line" serialization.
//!
//! Canonical layout, top to bottom: `@prefix` lines sorted by label, one
//! blank line, then one block per subject separated by blank lines.
//! Subjects are ordered IRIs first (lexicographically), then blank nodes by
//! label. Inside a block the subject stands alone on its first line and
//! every predicate-object pair gets its own two-space-indented line, joined
//! with ` ;` and closed with ` .`. `rdf:type` always comes first; remaining
//! predicates are sorted by expanded IRI, objects by term order. Prefixed
//! names are used whenever a declared prefix matches.

use super::{parse, Graph, Literal, ParseError, PrefixMap, Term};
use crate::vocab;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

/// Result of checking a document against its canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanonStatus {
    Canonical,
    /// The 1-based line where the document first differs from its
    /// canonical serialization.
    Divergent { line: usize },
}

impl CanonStatus {
    pub fn is_canonical(&self) -> bool {
        matches!(self, CanonStatus::Canonical)
    }

    pub fn divergence_line(&self) -> Option<usize> {
        match self {
            CanonStatus::Canonical => None,
            CanonStatus::Divergent { line } => Some(*line),
        }
    }
}

/// Serialize a graph to its unique canonical text.
///
/// The output is deterministic byte-for-byte: equal graphs (triple sets and
/// prefix maps) serialize identically, and re-parsing the output yields an
/// equal graph. A graph with no triples and no prefixes serializes to the
/// empty string.
pub fn serialize_canonical(graph: &Graph) -> String {
    let mut out = String::new();
    for (label, ns) in graph.prefixes().iter() {
        out.push_str("@prefix ");
        out.push_str(label);
        out.push_str(": <");
        out.push_str(ns);
        out.push_str("> .\n");
    }

    // subject -> (rdf:type-last flag, predicate IRI) -> objects
    let mut blocks: BTreeMap<&Term, BTreeMap<(bool, &str), BTreeSet<&Term>>> = BTreeMap::new();
    for triple in graph.triples() {
        let predicate = triple.predicate_iri();
        blocks
            .entry(triple.subject())
            .or_default()
            .entry((predicate != vocab::RDF_TYPE, predicate))
            .or_default()
            .insert(triple.object());
    }

    let has_prefixes = !graph.prefixes().is_empty();
    let mut first_block = true;
    for (subject, predicates) in &blocks {
        if !first_block || has_prefixes {
            out.push('\n');
        }
        first_block = false;

        out.push_str(&render_term(subject, graph.prefixes()));
        out.push('\n');

        let pairs: Vec<(&str, &Term)> = predicates
            .iter()
            .flat_map(|(&(_, predicate), objects)| {
                objects.iter().map(move |&object| (predicate, object))
            })
            .collect();
        let last = pairs.len() - 1;
        for (index, (predicate, object)) in pairs.iter().enumerate() {
            out.push_str("  ");
            out.push_str(&render_iri(predicate, graph.prefixes()));
            out.push(' ');
            out.push_str(&render_term(object, graph.prefixes()));
            out.push_str(if index == last { " .\n" } else { " ;\n" });
        }
    }
    out
}

/// Check whether `source` is already in canonical form.
///
/// Returns the parse errors unchanged when the document does not parse.
pub fn is_canonical(source: &str, origin: &Path) -> Result<CanonStatus, Vec<ParseError>> {
    let graph = parse(source, origin)?;
    let canonical = serialize_canonical(&graph);
    if source == canonical {
        Ok(CanonStatus::Canonical)
    } else {
        Ok(CanonStatus::Divergent {
            line: first_divergence_line(source, &canonical),
        })
    }
}

fn first_divergence_line(a: &str, b: &str) -> usize {
    let mut a_lines = a.split('\n');
    let mut b_lines = b.split('\n');
    let mut line = 1;
    loop {
        match (a_lines.next(), b_lines.next()) {
            (Some(x), Some(y)) if x == y => line += 1,
            _ => return line,
        }
    }
}

fn render_term(term: &Term, prefixes: &PrefixMap) -> String {
    match term {
        Term::Iri(iri) => render_iri(iri, prefixes),
        Term::BlankNode(label) => format!("_:{label}"),
        Term::Literal(lit) => render_literal(lit, prefixes),
    }
}

fn render_iri(iri: &str, prefixes: &PrefixMap) -> String {
    match prefixes.shorten(iri) {
        Some((label, local)) => format!("{label}:{local}"),
        None => format!("<{iri}>"),
    }
}

fn render_literal(lit: &Literal, prefixes: &PrefixMap) -> String {
    if let Some(datatype) = lit.datatype() {
        let lexical = lit.lexical();
        let shorthand = match datatype {
            vocab::XSD_INTEGER => is_integer_lexical(lexical),
            vocab::XSD_DECIMAL => is_decimal_lexical(lexical),
            vocab::XSD_BOOLEAN => lexical == "true" || lexical == "false",
            _ => false,
        };
        if shorthand {
            return lexical.to_string();
        }
    }
    let mut out = String::with_capacity(lit.lexical().len() + 2);
    out.push('"');
    for c in lit.lexical().chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            other => out.push(other),
        }
    }
    out.push('"');
    if let Some(tag) = lit.lang() {
        out.push('@');
        out.push_str(tag);
    } else if let Some(datatype) = lit.datatype() {
        out.push_str("^^");
        out.push_str(&render_iri(datatype, prefixes));
    }
    out
}

/// Prefix-free rendering used in diagnostics.
pub(crate) fn render_term_raw(term: &Term) -> String {
    render_term(term, &PrefixMap::new())
}

fn is_integer_lexical(s: &str) -> bool {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn is_decimal_lexical(s: &str) -> bool {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    let Some((int_part, frac_part)) = body.split_once('.') else {
        return false;
    };
    int_part.bytes().all(|b| b.is_ascii_digit())
        && !frac_part.is_empty()
        && frac_part.bytes().all(|b| b.is_ascii_digit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn parse_ok(source: &str) -> Graph {
        parse(source, &PathBuf::from("test.ttl")).expect("fixture parses")
    }

    #[test]
    fn empty_graph_is_empty_string() {
        assert_eq!(serialize_canonical(&Graph::new()), "");
    }

    #[test]
    fn prefix_only_graph_keeps_declarations() {
        let graph = parse_ok("@prefix ex: <http://ex.org/v#> .\n");
        assert_eq!(
            serialize_canonical(&graph),
            "@prefix ex: <http://ex.org/v#> .\n"
        );
    }

    #[test]
    fn canonical_layout_of_a_small_document() {
        let graph = parse_ok(
            "@prefix ex: <http://ex.org/v#> .\n\
             @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n\
             ex:B rdfs:label \"b\" . ex:A a ex:K ; rdfs:label \"a\" ; ex:p ex:B , ex:C .\n",
        );
        let expected = "\
@prefix ex: <http://ex.org/v#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .

ex:A
  <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> ex:K ;
  ex:p ex:B ;
  ex:p ex:C ;
  rdfs:label \"a\" .

ex:B
  rdfs:label \"b\" .
";
        assert_eq!(serialize_canonical(&graph), expected);
    }

    #[test]
    fn rdf_type_sorts_first_when_prefixed() {
        let graph = parse_ok(
            "@prefix ex: <http://ex.org/v#> .\n\
             @prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n\
             @prefix aa: <http://aa.example/#> .\n\
             ex:A aa:zz ex:B ; a ex:K .\n",
        );
        let text = serialize_canonical(&graph);
        let block: Vec<&str> = text.lines().skip_while(|l| !l.starts_with("ex:A")).collect();
        assert_eq!(block[1], "  rdf:type ex:K ;");
        assert_eq!(block[2], "  aa:zz ex:B .");
    }

    #[test]
    fn blank_node_subjects_come_after_iris() {
        let graph = parse_ok(
            "@prefix ex: <http://ex.org/v#> .\n_:b ex:p ex:A .\nex:Z ex:p _:b .\n",
        );
        let text = serialize_canonical(&graph);
        let z = text.find("ex:Z").unwrap();
        let b = text.find("_:b\n").unwrap();
        assert!(z < b);
    }

    #[test]
    fn numeric_and_boolean_shorthand() {
        let graph = parse_ok(
            "@prefix ex: <http://ex.org/v#> .\nex:A ex:i 42 ; ex:d 3.14 ; ex:b true .\n",
        );
        let text = serialize_canonical(&graph);
        assert!(text.contains("ex:i 42 "));
        assert!(text.contains("ex:d 3.14 "));
        assert!(text.contains("ex:b true "));
        assert!(!text.contains("^^"));
    }

    #[test]
    fn non_shorthand_datatypes_render_with_carets() {
        let graph = parse_ok(
            "@prefix ex: <http://ex.org/v#> .\n\
             @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n\
             ex:A ex:y \"1930\"^^xsd:gYear .\n",
        );
        let text = serialize_canonical(&graph);
        assert!(text.contains("\"1930\"^^xsd:gYear"));
    }

    #[test]
    fn escapes_in_literals() {
        let mut graph = Graph::new();
        graph.prefixes_mut().insert("ex", "http://ex.org/v#").unwrap();
        graph.insert(
            crate::turtle::Triple::new(
                Term::iri("http://ex.org/v#A").unwrap(),
                Term::iri("http://ex.org/v#p").unwrap(),
                Literal::plain("say \"hi\"\nback\\slash\ttab\rret").into(),
            )
            .unwrap(),
        );
        let text = serialize_canonical(&graph);
        assert!(text.contains("\"say \\\"hi\\\"\\nback\\\\slash\\ttab\\rret\""));
    }

    #[test]
    fn unshortenable_iris_use_angle_brackets() {
        let graph = parse_ok("<http://other.org/x> <http://other.org/p> <http://other.org/y> .\n");
        let text = serialize_canonical(&graph);
        assert!(text.starts_with("<http://other.org/x>\n"));
        assert!(text.contains("  <http://other.org/p> <http://other.org/y> .\n"));
    }

    #[test]
    fn canonical_output_is_reported_canonical() {
        let graph = parse_ok(
            "@prefix ex: <http://ex.org/v#> .\nex:B ex:p ex:A .\nex:A ex:p ex:B .\n",
        );
        let canonical = serialize_canonical(&graph);
        let status = is_canonical(&canonical, &PathBuf::from("test.ttl")).unwrap();
        assert!(status.is_canonical());
    }

    #[test]
    fn divergence_line_points_at_first_difference() {
        // same prefix block as canonical, but triples in the wrong order
        let source = "\
@prefix ex: <http://ex.org/v#> .

ex:B
  ex:p ex:A .

ex:A
  ex:p ex:B .
";
        let status = is_canonical(source, &PathBuf::from("test.ttl")).unwrap();
        assert_eq!(status, CanonStatus::Divergent { line: 3 });
    }

    #[test]
    fn parse_errors_propagate() {
        let errors = is_canonical("nonsense", &PathBuf::from("test.ttl")).unwrap_err();
        assert!(!errors.is_empty());
    }

    #[test]
    fn serialization_is_idempotent_on_a_handwritten_sample() {
        let graph = parse_ok(
            "@prefix ex: <http://ex.org/v#> .\n\
             ex:A ex:p [ ex:q \"v\"@en ] ; ex:r -3 .\n\
             _:x ex:s \"plain\" .\n",
        );
        let once = serialize_canonical(&graph);
        let reparsed = parse(&once, &PathBuf::from("test.ttl")).unwrap();
        let twice = serialize_canonical(&reparsed);
        assert_eq!(once, twice);
        assert_eq!(graph, reparsed);
    }
}
