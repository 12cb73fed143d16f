//! Well-known namespaces and term IRIs used throughout the toolkit.

pub const RDF_NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS_NS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL_NS: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD_NS: &str = "http://www.w3.org/2001/XMLSchema#";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDF_PROPERTY: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property";

pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const RDFS_COMMENT: &str = "http://www.w3.org/2000/01/rdf-schema#comment";
pub const RDFS_SUB_CLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
pub const RDFS_SUB_PROPERTY_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
pub const RDFS_DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";
pub const RDFS_RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";
pub const RDFS_IS_DEFINED_BY: &str = "http://www.w3.org/2000/01/rdf-schema#isDefinedBy";
pub const RDFS_SEE_ALSO: &str = "http://www.w3.org/2000/01/rdf-schema#seeAlso";

pub const OWL_CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
pub const OWL_OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
pub const OWL_DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
pub const OWL_EQUIVALENT_CLASS: &str = "http://www.w3.org/2002/07/owl#equivalentClass";
pub const OWL_EQUIVALENT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#equivalentProperty";
pub const OWL_SAME_AS: &str = "http://www.w3.org/2002/07/owl#sameAs";

pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
pub const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";

/// The namespaces of the RDF/RDFS/OWL/XSD modeling vocabularies themselves.
///
/// IRIs under these namespaces are never treated as externally reused
/// resources when classifying changes.
pub const BUILTIN_NAMESPACES: [&str; 4] = [RDF_NS, RDFS_NS, OWL_NS, XSD_NS];

/// True if `iri` falls under one of the RDF/RDFS/OWL/XSD namespaces.
pub fn is_builtin(iri: &str) -> bool {
    BUILTIN_NAMESPACES.iter().any(|ns| iri.starts_with(ns))
}

/// The namespace portion of an IRI: everything up to and including the last
/// `#` or `/`. IRIs without either separator past the scheme are their own
/// namespace.
pub fn namespace_of(iri: &str) -> &str {
    match iri.rfind(['#', '/']) {
        Some(idx) => &iri[..=idx],
        None => iri,
    }
}

/// The local name of an IRI: everything after the last `#` or `/`.
pub fn local_name(iri: &str) -> &str {
    match iri.rfind(['#', '/']) {
        Some(idx) => &iri[idx + 1..],
        None => iri,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn namespace_splits_on_hash_and_slash() {
        assert_eq!(namespace_of("http://ex.org/v#Process"), "http://ex.org/v#");
        assert_eq!(local_name("http://ex.org/v#Process"), "Process");
        assert_eq!(namespace_of("http://ex.org/v/Process"), "http://ex.org/v/");
        assert_eq!(local_name("http://ex.org/v/Process"), "Process");
        assert_eq!(namespace_of("urn:thing"), "urn:thing");
        assert_eq!(local_name("urn:thing"), "urn:thing");
    }

    #[test]
    fn builtin_detection() {
        assert!(is_builtin(RDF_TYPE));
        assert!(is_builtin(XSD_STRING));
        assert!(!is_builtin("http://purl.org/dc/terms/title"));
    }
}
