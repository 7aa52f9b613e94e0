//! Minimal RDF data model: IRIs, terms, triples and set-semantics graphs,
//! together with the N-Triples / Turtle-subset readers and writers and
//! signature extraction.

mod iri;
mod isomorphism;
mod parse;
mod serialize;
mod signature;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::vocab::{rdf, xsd};

pub use iri::Iri;
pub use isomorphism::isomorphic;
pub use parse::parse_graph;
pub use serialize::serialize_graph;
pub use signature::{signature, Partition, SignatureTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("cannot resolve relative IRI <{0}> without a base")]
    RelativeIri(String),
    #[error("invalid IRI <{iri}>: {reason}")]
    InvalidIri { iri: String, reason: String },
    #[error("a language tag requires the rdf:langString datatype")]
    LanguageTagDatatype,
}

/// Supported concrete syntaxes. The format is always passed explicitly; file
/// extensions are never consulted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RdfFormat {
    NTriples,
    Turtle,
}

impl std::str::FromStr for RdfFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ntriples" | "n-triples" | "nt" => Ok(RdfFormat::NTriples),
            "turtle" | "ttl" => Ok(RdfFormat::Turtle),
            other => Err(format!("unknown RDF format '{other}' (expected ntriples or turtle)")),
        }
    }
}

/// A blank node label, local to the graph it was parsed into.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlankNode(String);

impl BlankNode {
    pub fn new(label: impl Into<String>) -> Self {
        BlankNode(label.into())
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for BlankNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    datatype: Iri,
    language: Option<String>,
}

impl Literal {
    pub fn new(lexical: impl Into<String>, datatype: Iri, language: Option<String>) -> Result<Self, GraphError> {
        let is_lang = datatype.as_str() == rdf::LANG_STRING;
        if language.is_some() != is_lang {
            return Err(GraphError::LanguageTagDatatype);
        }
        Ok(Literal {
            lexical: lexical.into(),
            datatype,
            language: language.map(|l| l.to_ascii_lowercase()),
        })
    }

    pub fn string(lexical: impl Into<String>) -> Self {
        Literal { lexical: lexical.into(), datatype: xsd::string(), language: None }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        Literal::new(lexical, datatype, None).expect("non-language datatype")
    }

    pub fn lang(lexical: impl Into<String>, tag: impl Into<String>) -> Self {
        Literal::new(lexical, Iri::new(rdf::LANG_STRING).expect("static"), Some(tag.into())).expect("langString")
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    /// Interprets `true`/`1` and `false`/`0` booleans regardless of datatype annotation.
    pub fn as_bool(&self) -> Option<bool> {
        match self.lexical.as_str() {
            "true" | "1" => Some(true),
            "false" | "0" => Some(false),
            _ => None,
        }
    }
}

/// Subject position: an IRI or a blank node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subject {
    Iri(Iri),
    Blank(BlankNode),
}

impl Subject {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Subject::Iri(i) => Some(i),
            Subject::Blank(_) => None,
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            Subject::Iri(i) => Term::Iri(i.clone()),
            Subject::Blank(b) => Term::Blank(b.clone()),
        }
    }
}

impl From<Iri> for Subject {
    fn from(i: Iri) -> Self {
        Subject::Iri(i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Blank(BlankNode),
    Literal(Literal),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(i) => Some(i),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }

    /// Converts to a subject-position node; literals have none.
    pub fn as_subject(&self) -> Option<Subject> {
        match self {
            Term::Iri(i) => Some(Subject::Iri(i.clone())),
            Term::Blank(b) => Some(Subject::Blank(b.clone())),
            Term::Literal(_) => None,
        }
    }
}

impl From<Iri> for Term {
    fn from(i: Iri) -> Self {
        Term::Iri(i)
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Self {
        Term::Literal(l)
    }
}

/// A triple; the predicate is always an IRI by construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Subject,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<Subject>, predicate: Iri, object: impl Into<Term>) -> Self {
        Triple { subject: subject.into(), predicate, object: object.into() }
    }
}

/// A set of triples with an optional label. Immutable once shared.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    label: Option<Iri>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn with_label(label: Iri) -> Self {
        Graph { triples: BTreeSet::new(), label: Some(label) }
    }

    pub fn label(&self) -> Option<&Iri> {
        self.label.as_ref()
    }

    pub fn set_label(&mut self, label: Option<Iri>) {
        self.label = label;
    }

    /// Returns false when the triple was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn extend(&mut self, triples: impl IntoIterator<Item = Triple>) {
        self.triples.extend(triples);
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

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    /// Union of two graphs; the label of `self` is kept.
    pub fn union(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        g.extend(other.iter().cloned());
        g
    }

    pub fn with_predicate<'a>(&'a self, predicate: &'a str) -> impl Iterator<Item = &'a Triple> + 'a {
        self.triples.iter().filter(move |t| t.predicate.as_str() == predicate)
    }

    pub fn blank_nodes(&self) -> BTreeSet<&BlankNode> {
        let mut out = BTreeSet::new();
        for t in &self.triples {
            if let Subject::Blank(b) = &t.subject {
                out.insert(b);
            }
            if let Term::Blank(b) = &t.object {
                out.insert(b);
            }
        }
        out
    }

    pub fn index(&self) -> GraphIndex<'_> {
        GraphIndex::new(self)
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        Graph { triples: iter.into_iter().collect(), label: None }
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = std::collections::btree_set::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

/// Subject-keyed lookup over a borrowed graph.
pub struct GraphIndex<'g> {
    by_subject: BTreeMap<&'g Subject, Vec<&'g Triple>>,
}

impl<'g> GraphIndex<'g> {
    fn new(graph: &'g Graph) -> Self {
        let mut by_subject: BTreeMap<&Subject, Vec<&Triple>> = BTreeMap::new();
        for t in graph.iter() {
            by_subject.entry(&t.subject).or_default().push(t);
        }
        GraphIndex { by_subject }
    }

    pub fn about(&self, subject: &Subject) -> &[&'g Triple] {
        self.by_subject.get(subject).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn objects<'s>(&'s self, subject: &Subject, predicate: &'s str) -> impl Iterator<Item = &'g Term> + 's {
        self.about(subject).iter().filter(move |t| t.predicate.as_str() == predicate).map(|t| &t.object)
    }

    pub fn object(&self, subject: &Subject, predicate: &str) -> Option<&'g Term> {
        self.objects(subject, predicate).next()
    }

    pub fn subjects(&self) -> impl Iterator<Item = &&'g Subject> {
        self.by_subject.keys()
    }

    /// Walks an `rdf:first`/`rdf:rest` list. Returns `None` for malformed or cyclic lists,
    /// together with the triples that make up the list spine.
    pub fn list(&self, head: &Term) -> Option<(Vec<&'g Term>, Vec<&'g Triple>)> {
        let mut items = Vec::new();
        let mut spine = Vec::new();
        let mut seen = BTreeSet::new();
        let mut cur = head.clone();
        loop {
            match &cur {
                Term::Iri(i) if i.as_str() == rdf::NIL => return Some((items, spine)),
                Term::Blank(b) => {
                    if !seen.insert(b.clone()) {
                        return None;
                    }
                    let node = Subject::Blank(b.clone());
                    let mut first = None;
                    let mut rest = None;
                    for t in self.about(&node) {
                        match t.predicate.as_str() {
                            rdf::FIRST if first.is_none() => {
                                first = Some(&t.object);
                                spine.push(*t);
                            }
                            rdf::REST if rest.is_none() => {
                                rest = Some(&t.object);
                                spine.push(*t);
                            }
                            _ => {}
                        }
                    }
                    items.push(first?);
                    cur = rest?.clone();
                }
                _ => return None,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    #[test]
    fn duplicate_insert_keeps_count() {
        let mut g = Graph::new();
        let t = Triple::new(iri("http://x.org/a"), iri(rdf::TYPE), iri("http://x.org/B"));
        assert!(g.insert(t.clone()));
        assert!(!g.insert(t));
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn language_tag_requires_lang_string() {
        assert_eq!(
            Literal::new("x", xsd::string(), Some("en".into())),
            Err(GraphError::LanguageTagDatatype)
        );
        assert!(Literal::new("x", iri(rdf::LANG_STRING), None).is_err());
        assert_eq!(Literal::lang("x", "EN").language(), Some("en"));
    }
}
