//! Structural reading of a schema graph into axioms.
//!
//! The RDF mapping of OWL is read back into a small axiom model covering the
//! supported catalogue. Every axiom keeps the triples it was read from so a
//! module can be returned as a subgraph of the input. Triples that fit no
//! supported shape become `Unrecognized` axioms rather than errors.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{BlankNode, Graph, GraphIndex, Iri, Literal, SignatureTable, Subject, Term, Triple};
use crate::vocab::{is_builtin, owl, rdf, rdfs, sh, xsd};

/// Whether a name denotes a class or a property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Concept,
    Role,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Concept => "concept",
            Kind::Role => "role",
        })
    }
}

pub type Name = (Iri, Kind);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertyExpr {
    Named(Iri),
    Inverse(Iri),
}

impl PropertyExpr {
    pub fn name(&self) -> &Iri {
        match self {
            PropertyExpr::Named(i) | PropertyExpr::Inverse(i) => i,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CardinalityBound {
    Min,
    Max,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassExpr {
    Named(Iri),
    Thing,
    Nothing,
    Datatype(Iri),
    Some(PropertyExpr, Box<ClassExpr>),
    All(PropertyExpr, Box<ClassExpr>),
    HasValue(PropertyExpr, Term),
    Cardinality { property: PropertyExpr, bound: CardinalityBound, n: u64, filler: Option<Box<ClassExpr>> },
    And(Vec<ClassExpr>),
    Or(Vec<ClassExpr>),
    Not(Box<ClassExpr>),
    OneOf(Vec<Term>),
    Malformed(String),
}

impl ClassExpr {
    pub fn as_named(&self) -> Option<&Iri> {
        match self {
            ClassExpr::Named(i) => Some(i),
            _ => None,
        }
    }

    pub fn is_complex(&self) -> bool {
        !matches!(self, ClassExpr::Named(_) | ClassExpr::Thing | ClassExpr::Nothing | ClassExpr::Datatype(_))
    }

    /// Concept and role names occurring in the expression.
    pub fn names(&self, out: &mut BTreeSet<Name>) {
        match self {
            ClassExpr::Named(i) => {
                out.insert((i.clone(), Kind::Concept));
            }
            ClassExpr::Thing | ClassExpr::Nothing | ClassExpr::Datatype(_) | ClassExpr::Malformed(_) => {}
            ClassExpr::Some(p, c) | ClassExpr::All(p, c) => {
                out.insert((p.name().clone(), Kind::Role));
                c.names(out);
            }
            ClassExpr::HasValue(p, _) => {
                out.insert((p.name().clone(), Kind::Role));
            }
            ClassExpr::Cardinality { property, filler, .. } => {
                out.insert((property.name().clone(), Kind::Role));
                if let Some(c) = filler {
                    c.names(out);
                }
            }
            ClassExpr::And(xs) | ClassExpr::Or(xs) => xs.iter().for_each(|x| x.names(out)),
            ClassExpr::Not(c) => c.names(out),
            ClassExpr::OneOf(_) => {}
        }
    }

    pub fn is_malformed(&self) -> bool {
        match self {
            ClassExpr::Malformed(_) => true,
            ClassExpr::Some(_, c) | ClassExpr::All(_, c) | ClassExpr::Not(c) => c.is_malformed(),
            ClassExpr::Cardinality { filler: Some(c), .. } => c.is_malformed(),
            ClassExpr::And(xs) | ClassExpr::Or(xs) => xs.iter().any(ClassExpr::is_malformed),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DeclarationKind {
    Class,
    ObjectProperty,
    DatatypeProperty,
    AnnotationProperty,
    RdfProperty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Characteristic {
    Transitive,
    Functional,
    InverseFunctional,
    Symmetric,
    Asymmetric,
    Reflexive,
    Irreflexive,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomBody {
    Declaration(Iri, DeclarationKind),
    SubClassOf(ClassExpr, ClassExpr),
    EquivalentClasses(ClassExpr, ClassExpr),
    DisjointClasses(ClassExpr, ClassExpr),
    SubPropertyOf(Iri, Iri),
    EquivalentProperties(Iri, Iri),
    InverseProperties(Iri, Iri),
    Domain(Iri, ClassExpr),
    Range(Iri, ClassExpr),
    Characteristic(Iri, Characteristic),
    /// Annotation on a named entity (labels, comments, ...).
    Annotation(Subject, Iri),
    OntologyHeader(Subject),
    /// SHACL shape triples; metadata, not schema axioms.
    Shape(Subject),
    /// An instance-level triple found in the schema graph.
    Assertion(Subject, Iri, Term),
    Unrecognized(String),
}

/// Census key for an axiom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AxiomKind {
    ClassDeclaration,
    PropertyDeclaration,
    SubClassOf,
    SubPropertyOf,
    Domain,
    Range,
    EquivalentClassNamed,
    EquivalentClassExpression,
    DisjointWith,
    EquivalentProperty,
    InverseOf,
    TransitiveProperty,
    FunctionalProperty,
    InverseFunctionalProperty,
    SymmetricProperty,
    AsymmetricProperty,
    ReflexiveProperty,
    IrreflexiveProperty,
    Annotation,
    OntologyHeader,
    ShaclShape,
    Assertion,
    Unrecognized,
}

impl AxiomKind {
    pub const ALL: [AxiomKind; 23] = [
        AxiomKind::ClassDeclaration,
        AxiomKind::PropertyDeclaration,
        AxiomKind::SubClassOf,
        AxiomKind::SubPropertyOf,
        AxiomKind::Domain,
        AxiomKind::Range,
        AxiomKind::EquivalentClassNamed,
        AxiomKind::EquivalentClassExpression,
        AxiomKind::DisjointWith,
        AxiomKind::EquivalentProperty,
        AxiomKind::InverseOf,
        AxiomKind::TransitiveProperty,
        AxiomKind::FunctionalProperty,
        AxiomKind::InverseFunctionalProperty,
        AxiomKind::SymmetricProperty,
        AxiomKind::AsymmetricProperty,
        AxiomKind::ReflexiveProperty,
        AxiomKind::IrreflexiveProperty,
        AxiomKind::Annotation,
        AxiomKind::OntologyHeader,
        AxiomKind::ShaclShape,
        AxiomKind::Assertion,
        AxiomKind::Unrecognized,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomKind::ClassDeclaration => "ClassDeclaration",
            AxiomKind::PropertyDeclaration => "PropertyDeclaration",
            AxiomKind::SubClassOf => "SubClassOf",
            AxiomKind::SubPropertyOf => "SubPropertyOf",
            AxiomKind::Domain => "Domain",
            AxiomKind::Range => "Range",
            AxiomKind::EquivalentClassNamed => "EquivalentClassNamed",
            AxiomKind::EquivalentClassExpression => "EquivalentClassExpression",
            AxiomKind::DisjointWith => "DisjointWith",
            AxiomKind::EquivalentProperty => "EquivalentProperty",
            AxiomKind::InverseOf => "InverseOf",
            AxiomKind::TransitiveProperty => "TransitiveProperty",
            AxiomKind::FunctionalProperty => "FunctionalProperty",
            AxiomKind::InverseFunctionalProperty => "InverseFunctionalProperty",
            AxiomKind::SymmetricProperty => "SymmetricProperty",
            AxiomKind::AsymmetricProperty => "AsymmetricProperty",
            AxiomKind::ReflexiveProperty => "ReflexiveProperty",
            AxiomKind::IrreflexiveProperty => "IrreflexiveProperty",
            AxiomKind::Annotation => "Annotation",
            AxiomKind::OntologyHeader => "OntologyHeader",
            AxiomKind::ShaclShape => "ShaclShape",
            AxiomKind::Assertion => "Assertion",
            AxiomKind::Unrecognized => "Unrecognized",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axiom {
    pub body: AxiomBody,
    /// Source triples, including those of any anonymous class expressions.
    pub triples: Vec<Triple>,
}

impl Axiom {
    /// Stable identifier: the functional-style rendering of the axiom.
    /// Blank nodes render as `[]`, so the id does not depend on parse labels.
    pub fn id(&self) -> String {
        self.body.to_string()
    }

    pub fn kind(&self) -> AxiomKind {
        match &self.body {
            AxiomBody::Declaration(_, DeclarationKind::Class) => AxiomKind::ClassDeclaration,
            AxiomBody::Declaration(..) => AxiomKind::PropertyDeclaration,
            AxiomBody::SubClassOf(..) => AxiomKind::SubClassOf,
            AxiomBody::EquivalentClasses(a, b) if !a.is_complex() && !b.is_complex() => AxiomKind::EquivalentClassNamed,
            AxiomBody::EquivalentClasses(..) => AxiomKind::EquivalentClassExpression,
            AxiomBody::DisjointClasses(..) => AxiomKind::DisjointWith,
            AxiomBody::SubPropertyOf(..) => AxiomKind::SubPropertyOf,
            AxiomBody::EquivalentProperties(..) => AxiomKind::EquivalentProperty,
            AxiomBody::InverseProperties(..) => AxiomKind::InverseOf,
            AxiomBody::Domain(..) => AxiomKind::Domain,
            AxiomBody::Range(..) => AxiomKind::Range,
            AxiomBody::Characteristic(_, c) => match c {
                Characteristic::Transitive => AxiomKind::TransitiveProperty,
                Characteristic::Functional => AxiomKind::FunctionalProperty,
                Characteristic::InverseFunctional => AxiomKind::InverseFunctionalProperty,
                Characteristic::Symmetric => AxiomKind::SymmetricProperty,
                Characteristic::Asymmetric => AxiomKind::AsymmetricProperty,
                Characteristic::Reflexive => AxiomKind::ReflexiveProperty,
                Characteristic::Irreflexive => AxiomKind::IrreflexiveProperty,
            },
            AxiomBody::Annotation(..) => AxiomKind::Annotation,
            AxiomBody::OntologyHeader(_) => AxiomKind::OntologyHeader,
            AxiomBody::Shape(_) => AxiomKind::ShaclShape,
            AxiomBody::Assertion(..) => AxiomKind::Assertion,
            AxiomBody::Unrecognized(_) => AxiomKind::Unrecognized,
        }
    }

    /// Concept and role names the axiom mentions.
    pub fn names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        let role = |i: &Iri, out: &mut BTreeSet<Name>| {
            if !is_builtin(i) {
                out.insert((i.clone(), Kind::Role));
            }
        };
        match &self.body {
            AxiomBody::Declaration(i, DeclarationKind::Class) => {
                out.insert((i.clone(), Kind::Concept));
            }
            AxiomBody::Declaration(i, _) | AxiomBody::Characteristic(i, _) => role(i, &mut out),
            AxiomBody::SubClassOf(a, b) | AxiomBody::EquivalentClasses(a, b) | AxiomBody::DisjointClasses(a, b) => {
                a.names(&mut out);
                b.names(&mut out);
            }
            AxiomBody::SubPropertyOf(p, q) | AxiomBody::EquivalentProperties(p, q) | AxiomBody::InverseProperties(p, q) => {
                role(p, &mut out);
                role(q, &mut out);
            }
            AxiomBody::Domain(p, c) | AxiomBody::Range(p, c) => {
                role(p, &mut out);
                c.names(&mut out);
            }
            AxiomBody::Assertion(_, p, o) => {
                role(p, &mut out);
                if p.as_str() == rdf::TYPE {
                    if let Some(c) = o.as_iri().filter(|c| !is_builtin(c)) {
                        out.insert((c.clone(), Kind::Concept));
                    }
                }
            }
            AxiomBody::Annotation(..) | AxiomBody::OntologyHeader(_) | AxiomBody::Shape(_) | AxiomBody::Unrecognized(_) => {}
        }
        out
    }

    /// Logical axioms take part in reasoning; declarations, annotations,
    /// headers, shapes and unrecognized triples do not.
    pub fn is_logical(&self) -> bool {
        !matches!(
            self.body,
            AxiomBody::Declaration(..)
                | AxiomBody::Annotation(..)
                | AxiomBody::OntologyHeader(_)
                | AxiomBody::Shape(_)
                | AxiomBody::Unrecognized(_)
        )
    }
}

/// The axioms of a schema graph, in deterministic order.
#[derive(Debug, Clone, Default)]
pub struct Tbox {
    pub axioms: Vec<Axiom>,
}

const ANNOTATION_PREDICATES: [&str; 7] = [
    rdfs::LABEL,
    rdfs::COMMENT,
    rdfs::SEE_ALSO,
    rdfs::IS_DEFINED_BY,
    owl::VERSION_INFO,
    owl::DEPRECATED,
    owl::VERSION_IRI,
];

const ANNOTATION_NAMESPACES: [&str; 3] =
    ["http://www.w3.org/2004/02/skos/core#", "http://purl.org/dc/elements/1.1/", "http://purl.org/dc/terms/"];

const EXPRESSION_PREDICATES: [&str; 13] = [
    owl::ON_PROPERTY,
    owl::ON_CLASS,
    owl::SOME_VALUES_FROM,
    owl::ALL_VALUES_FROM,
    owl::HAS_VALUE,
    owl::MIN_CARDINALITY,
    owl::MAX_CARDINALITY,
    owl::CARDINALITY,
    owl::MIN_QUALIFIED_CARDINALITY,
    owl::MAX_QUALIFIED_CARDINALITY,
    owl::QUALIFIED_CARDINALITY,
    rdf::FIRST,
    rdf::REST,
];

fn characteristic(iri: &str) -> Option<Characteristic> {
    Some(match iri {
        owl::TRANSITIVE_PROPERTY => Characteristic::Transitive,
        owl::FUNCTIONAL_PROPERTY => Characteristic::Functional,
        owl::INVERSE_FUNCTIONAL_PROPERTY => Characteristic::InverseFunctional,
        owl::SYMMETRIC_PROPERTY => Characteristic::Symmetric,
        owl::ASYMMETRIC_PROPERTY => Characteristic::Asymmetric,
        owl::REFLEXIVE_PROPERTY => Characteristic::Reflexive,
        owl::IRREFLEXIVE_PROPERTY => Characteristic::Irreflexive,
        _ => return None,
    })
}

fn declaration(iri: &str) -> Option<DeclarationKind> {
    Some(match iri {
        owl::CLASS | rdfs::CLASS => DeclarationKind::Class,
        owl::OBJECT_PROPERTY => DeclarationKind::ObjectProperty,
        owl::DATATYPE_PROPERTY => DeclarationKind::DatatypeProperty,
        owl::ANNOTATION_PROPERTY => DeclarationKind::AnnotationProperty,
        rdf::PROPERTY => DeclarationKind::RdfProperty,
        _ => return None,
    })
}

struct Reader<'g> {
    graph: &'g Graph,
    index: GraphIndex<'g>,
    consumed: HashSet<&'g Triple>,
}

impl Tbox {
    pub fn from_graph(graph: &Graph) -> Tbox {
        let mut reader = Reader { graph, index: graph.index(), consumed: HashSet::new() };
        reader.read()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Axiom> {
        self.axioms.iter()
    }
}

impl<'g> Reader<'g> {
    fn read(&mut self) -> Tbox {
        let mut axioms = Vec::new();
        let table = SignatureTable::of(self.graph);
        let annotation_props: BTreeSet<&Iri> = self
            .graph
            .iter()
            .filter(|t| t.predicate.as_str() == rdf::TYPE && t.object.as_iri().is_some_and(|o| o.as_str() == owl::ANNOTATION_PROPERTY))
            .filter_map(|t| t.subject.as_iri())
            .collect();

        // Shapes and ontology headers are claimed first, whole subtrees at a time.
        for root in self.shape_roots() {
            let triples = self.subtree(&root);
            axioms.push(Axiom { body: AxiomBody::Shape(root), triples });
        }
        let headers: Vec<Subject> = self
            .graph
            .iter()
            .filter(|t| t.predicate.as_str() == rdf::TYPE && t.object.as_iri().is_some_and(|o| o.as_str() == owl::ONTOLOGY))
            .map(|t| t.subject.clone())
            .collect();
        for h in headers {
            let triples: Vec<Triple> = self.index.about(&h).iter().filter(|t| self.consumed.insert(t)).map(|t| (*t).clone()).collect();
            if !triples.is_empty() {
                axioms.push(Axiom { body: AxiomBody::OntologyHeader(h), triples });
            }
        }

        let graph = self.graph;
        for t in graph.iter() {
            if self.consumed.contains(t) || self.is_expression_part(t) {
                continue;
            }
            self.consumed.insert(t);
            let mut triples = vec![t.clone()];
            let p = t.predicate.as_str();
            let subject_term = t.subject.to_term();
            let body = match p {
                rdfs::SUB_CLASS_OF | owl::EQUIVALENT_CLASS | owl::DISJOINT_WITH => {
                    let a = self.class_expr(&subject_term, &mut triples, &mut Vec::new());
                    let b = self.class_expr(&t.object, &mut triples, &mut Vec::new());
                    match p {
                        rdfs::SUB_CLASS_OF => AxiomBody::SubClassOf(a, b),
                        owl::EQUIVALENT_CLASS => AxiomBody::EquivalentClasses(a, b),
                        _ => AxiomBody::DisjointClasses(a, b),
                    }
                }
                owl::INTERSECTION_OF | owl::UNION_OF | owl::COMPLEMENT_OF | owl::ONE_OF => match t.subject.as_iri() {
                    Some(named) => {
                        let expr = self.constructor(p, &t.object, &mut triples, &mut Vec::new());
                        AxiomBody::EquivalentClasses(ClassExpr::Named(named.clone()), expr)
                    }
                    None => AxiomBody::Unrecognized(format!("dangling class constructor: {}", render_triple(t))),
                },
                rdfs::SUB_PROPERTY_OF | owl::EQUIVALENT_PROPERTY | owl::INVERSE_OF => {
                    match (t.subject.as_iri(), t.object.as_iri()) {
                        (Some(a), Some(b)) => match p {
                            rdfs::SUB_PROPERTY_OF => AxiomBody::SubPropertyOf(a.clone(), b.clone()),
                            owl::EQUIVALENT_PROPERTY => AxiomBody::EquivalentProperties(a.clone(), b.clone()),
                            _ => AxiomBody::InverseProperties(a.clone(), b.clone()),
                        },
                        _ => AxiomBody::Unrecognized(format!("anonymous property axiom: {}", render_triple(t))),
                    }
                }
                rdfs::DOMAIN | rdfs::RANGE => match t.subject.as_iri() {
                    Some(prop) => {
                        let c = self.class_expr(&t.object, &mut triples, &mut Vec::new());
                        if p == rdfs::DOMAIN {
                            AxiomBody::Domain(prop.clone(), c)
                        } else {
                            AxiomBody::Range(prop.clone(), c)
                        }
                    }
                    None => AxiomBody::Unrecognized(format!("anonymous property axiom: {}", render_triple(t))),
                },
                rdf::TYPE => {
                    let object = t.object.as_iri().map(Iri::as_str).unwrap_or("");
                    match (t.subject.as_iri(), declaration(object), characteristic(object)) {
                        (Some(s), Some(d), _) => AxiomBody::Declaration(s.clone(), d),
                        (Some(s), _, Some(c)) => AxiomBody::Characteristic(s.clone(), c),
                        _ if matches!(t.object.as_iri(), Some(o) if !is_builtin(o) || o.as_str() == owl::NAMED_INDIVIDUAL || o.as_str() == owl::THING) => {
                            AxiomBody::Assertion(t.subject.clone(), t.predicate.clone(), t.object.clone())
                        }
                        _ => AxiomBody::Unrecognized(format!("unsupported typing: {}", render_triple(t))),
                    }
                }
                _ if ANNOTATION_PREDICATES.contains(&p)
                    || ANNOTATION_NAMESPACES.iter().any(|ns| t.predicate.in_namespace(ns))
                    || annotation_props.contains(&t.predicate) =>
                {
                    AxiomBody::Annotation(t.subject.clone(), t.predicate.clone())
                }
                _ if is_builtin(&t.predicate) => AxiomBody::Unrecognized(format!("unsupported construct: {}", render_triple(t))),
                _ if table.concepts.contains(&t.predicate) => {
                    AxiomBody::Unrecognized(format!("class used as a property: {}", render_triple(t)))
                }
                _ => AxiomBody::Assertion(t.subject.clone(), t.predicate.clone(), t.object.clone()),
            };
            axioms.push(Axiom { body, triples });
        }

        // Expression triples nothing claimed.
        for t in graph.iter() {
            if !self.consumed.contains(t) {
                self.consumed.insert(t);
                axioms.push(Axiom {
                    body: AxiomBody::Unrecognized(format!("dangling expression triple: {}", render_triple(t))),
                    triples: vec![t.clone()],
                });
            }
        }
        Tbox { axioms }
    }

    fn shape_roots(&self) -> Vec<Subject> {
        let mut shape_nodes: BTreeSet<&Subject> = BTreeSet::new();
        let mut referenced: HashSet<Term> = HashSet::new();
        for t in self.graph.iter() {
            let is_shape = t.predicate.in_namespace(sh::NS)
                || (t.predicate.as_str() == rdf::TYPE && t.object.as_iri().is_some_and(|o| o.in_namespace(sh::NS)));
            if is_shape {
                shape_nodes.insert(&t.subject);
                if t.predicate.in_namespace(sh::NS) {
                    referenced.insert(t.object.clone());
                }
            }
        }
        shape_nodes.into_iter().filter(|s| !referenced.contains(&s.to_term())).cloned().collect()
    }

    /// All triples reachable from `root` through blank nodes, marked consumed.
    fn subtree(&mut self, root: &Subject) -> Vec<Triple> {
        let mut out = Vec::new();
        let mut stack = vec![root.clone()];
        let mut seen = HashSet::new();
        while let Some(node) = stack.pop() {
            if !seen.insert(node.clone()) {
                continue;
            }
            for t in self.index.about(&node) {
                if self.consumed.insert(t) {
                    out.push((*t).clone());
                }
                if let Term::Blank(b) = &t.object {
                    stack.push(Subject::Blank(b.clone()));
                }
            }
        }
        out
    }

    /// Triples that belong to an anonymous class or property expression and are
    /// claimed by whichever axiom refers to that expression.
    fn is_expression_part(&self, t: &Triple) -> bool {
        let Subject::Blank(_) = t.subject else {
            return false;
        };
        let p = t.predicate.as_str();
        if EXPRESSION_PREDICATES.contains(&p) {
            return true;
        }
        match p {
            owl::INTERSECTION_OF | owl::UNION_OF | owl::COMPLEMENT_OF | owl::ONE_OF | owl::INVERSE_OF => true,
            rdf::TYPE => t.object.as_iri().is_some_and(|o| o.as_str() == owl::RESTRICTION || o.as_str() == owl::CLASS),
            _ => false,
        }
    }

    fn claim(&mut self, node: &BlankNode, triples: &mut Vec<Triple>) -> Vec<&'g Triple> {
        let about: Vec<&'g Triple> = self.index.about(&Subject::Blank(node.clone())).to_vec();
        for t in &about {
            if self.consumed.insert(t) {
                triples.push((*t).clone());
            } else if !triples.contains(t) {
                // shared sub-expression: still part of this axiom's source
                triples.push((*t).clone());
            }
        }
        about
    }

    fn class_expr(&mut self, term: &Term, triples: &mut Vec<Triple>, visiting: &mut Vec<BlankNode>) -> ClassExpr {
        let b = match term {
            Term::Iri(i) => {
                return match i.as_str() {
                    owl::THING | rdfs::RESOURCE => ClassExpr::Thing,
                    owl::NOTHING => ClassExpr::Nothing,
                    rdfs::LITERAL => ClassExpr::Datatype(i.clone()),
                    _ if i.in_namespace(xsd::NS) => ClassExpr::Datatype(i.clone()),
                    _ => ClassExpr::Named(i.clone()),
                }
            }
            Term::Literal(l) => return ClassExpr::Malformed(format!("literal in class position: {}", l.lexical())),
            Term::Blank(b) => b,
        };
        if visiting.contains(b) {
            return ClassExpr::Malformed("cyclic class expression".into());
        }
        visiting.push(b.clone());
        let about = self.claim(b, triples);
        let find = |p: &str| about.iter().find(|t| t.predicate.as_str() == p).map(|t| t.object.clone());

        let expr = if let Some(prop) = find(owl::ON_PROPERTY) {
            match self.property_expr(&prop, triples) {
                None => ClassExpr::Malformed("restriction on an unsupported property expression".into()),
                Some(property) => {
                    if let Some(f) = find(owl::SOME_VALUES_FROM) {
                        ClassExpr::Some(property, Box::new(self.class_expr(&f, triples, visiting)))
                    } else if let Some(f) = find(owl::ALL_VALUES_FROM) {
                        ClassExpr::All(property, Box::new(self.class_expr(&f, triples, visiting)))
                    } else if let Some(v) = find(owl::HAS_VALUE) {
                        ClassExpr::HasValue(property, v)
                    } else {
                        let on_class = find(owl::ON_CLASS);
                        let bounds = [
                            (owl::MIN_CARDINALITY, CardinalityBound::Min),
                            (owl::MAX_CARDINALITY, CardinalityBound::Max),
                            (owl::CARDINALITY, CardinalityBound::Exact),
                            (owl::MIN_QUALIFIED_CARDINALITY, CardinalityBound::Min),
                            (owl::MAX_QUALIFIED_CARDINALITY, CardinalityBound::Max),
                            (owl::QUALIFIED_CARDINALITY, CardinalityBound::Exact),
                        ];
                        let found = bounds.iter().find_map(|(p, bound)| find(p).map(|v| (*bound, v)));
                        match found {
                            Some((bound, Term::Literal(n))) => match n.lexical().parse::<u64>() {
                                Ok(n) => {
                                    let filler = on_class.map(|c| Box::new(self.class_expr(&c, triples, visiting)));
                                    ClassExpr::Cardinality { property, bound, n, filler }
                                }
                                Err(_) => ClassExpr::Malformed("non-integer cardinality".into()),
                            },
                            _ => ClassExpr::Malformed("restriction without a supported constraint".into()),
                        }
                    }
                }
            }
        } else if let Some((p, o)) = [owl::INTERSECTION_OF, owl::UNION_OF, owl::COMPLEMENT_OF, owl::ONE_OF]
            .iter()
            .find_map(|p| find(p).map(|o| (*p, o)))
        {
            self.constructor(p, &o, triples, visiting)
        } else {
            ClassExpr::Malformed("anonymous class without a constructor".into())
        };
        visiting.pop();
        expr
    }

    fn constructor(&mut self, predicate: &str, object: &Term, triples: &mut Vec<Triple>, visiting: &mut Vec<BlankNode>) -> ClassExpr {
        if predicate == owl::COMPLEMENT_OF {
            return ClassExpr::Not(Box::new(self.class_expr(object, triples, visiting)));
        }
        let Some((items, spine)) = self.index.list(object) else {
            return ClassExpr::Malformed("malformed list".into());
        };
        for t in spine {
            self.consumed.insert(t);
            triples.push(t.clone());
        }
        match predicate {
            owl::ONE_OF => ClassExpr::OneOf(items.into_iter().cloned().collect()),
            _ => {
                let members: Vec<ClassExpr> = items.iter().map(|i| self.class_expr(i, triples, visiting)).collect();
                if predicate == owl::INTERSECTION_OF {
                    ClassExpr::And(members)
                } else {
                    ClassExpr::Or(members)
                }
            }
        }
    }

    fn property_expr(&mut self, term: &Term, triples: &mut Vec<Triple>) -> Option<PropertyExpr> {
        match term {
            Term::Iri(i) => Some(PropertyExpr::Named(i.clone())),
            Term::Blank(b) => {
                let about = self.claim(b, triples);
                about
                    .iter()
                    .find(|t| t.predicate.as_str() == owl::INVERSE_OF)
                    .and_then(|t| t.object.as_iri())
                    .map(|i| PropertyExpr::Inverse(i.clone()))
            }
            Term::Literal(_) => None,
        }
    }
}

fn render_term(t: &Term) -> String {
    match t {
        Term::Iri(i) => format!("<{i}>"),
        Term::Blank(_) => "[]".into(),
        Term::Literal(l) => render_literal(l),
    }
}

fn render_literal(l: &Literal) -> String {
    match l.language() {
        Some(lang) => format!("{:?}@{lang}", l.lexical()),
        None if l.datatype().as_str() == xsd::STRING => format!("{:?}", l.lexical()),
        None => format!("{:?}^^<{}>", l.lexical(), l.datatype()),
    }
}

fn render_subject(s: &Subject) -> String {
    render_term(&s.to_term())
}

fn render_triple(t: &Triple) -> String {
    format!("{} <{}> {}", render_subject(&t.subject), t.predicate, render_term(&t.object))
}

impl fmt::Display for PropertyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyExpr::Named(i) => write!(f, "<{i}>"),
            PropertyExpr::Inverse(i) => write!(f, "ObjectInverseOf(<{i}>)"),
        }
    }
}

fn join(xs: &[ClassExpr]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassExpr::Named(i) | ClassExpr::Datatype(i) => write!(f, "<{i}>"),
            ClassExpr::Thing => f.write_str("owl:Thing"),
            ClassExpr::Nothing => f.write_str("owl:Nothing"),
            ClassExpr::Some(p, c) => write!(f, "ObjectSomeValuesFrom({p} {c})"),
            ClassExpr::All(p, c) => write!(f, "ObjectAllValuesFrom({p} {c})"),
            ClassExpr::HasValue(p, v) => write!(f, "ObjectHasValue({p} {})", render_term(v)),
            ClassExpr::Cardinality { property, bound, n, filler } => {
                let name = match bound {
                    CardinalityBound::Min => "ObjectMinCardinality",
                    CardinalityBound::Max => "ObjectMaxCardinality",
                    CardinalityBound::Exact => "ObjectExactCardinality",
                };
                match filler {
                    Some(c) => write!(f, "{name}({n} {property} {c})"),
                    None => write!(f, "{name}({n} {property})"),
                }
            }
            ClassExpr::And(xs) => write!(f, "ObjectIntersectionOf({})", join(xs)),
            ClassExpr::Or(xs) => write!(f, "ObjectUnionOf({})", join(xs)),
            ClassExpr::Not(c) => write!(f, "ObjectComplementOf({c})"),
            ClassExpr::OneOf(xs) => {
                write!(f, "ObjectOneOf({})", xs.iter().map(render_term).collect::<Vec<_>>().join(" "))
            }
            ClassExpr::Malformed(why) => write!(f, "Malformed({why:?})"),
        }
    }
}

impl fmt::Display for AxiomBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomBody::Declaration(i, k) => {
                let k = match k {
                    DeclarationKind::Class => "Class",
                    DeclarationKind::ObjectProperty => "ObjectProperty",
                    DeclarationKind::DatatypeProperty => "DataProperty",
                    DeclarationKind::AnnotationProperty => "AnnotationProperty",
                    DeclarationKind::RdfProperty => "Property",
                };
                write!(f, "Declaration({k}(<{i}>))")
            }
            AxiomBody::SubClassOf(a, b) => write!(f, "SubClassOf({a} {b})"),
            AxiomBody::EquivalentClasses(a, b) => write!(f, "EquivalentClasses({a} {b})"),
            AxiomBody::DisjointClasses(a, b) => write!(f, "DisjointClasses({a} {b})"),
            AxiomBody::SubPropertyOf(p, q) => write!(f, "SubObjectPropertyOf(<{p}> <{q}>)"),
            AxiomBody::EquivalentProperties(p, q) => write!(f, "EquivalentObjectProperties(<{p}> <{q}>)"),
            AxiomBody::InverseProperties(p, q) => write!(f, "InverseObjectProperties(<{p}> <{q}>)"),
            AxiomBody::Domain(p, c) => write!(f, "ObjectPropertyDomain(<{p}> {c})"),
            AxiomBody::Range(p, c) => write!(f, "ObjectPropertyRange(<{p}> {c})"),
            AxiomBody::Characteristic(p, c) => write!(f, "{c:?}ObjectProperty(<{p}>)"),
            AxiomBody::Annotation(s, p) => write!(f, "AnnotationAssertion(<{p}> {})", render_subject(s)),
            AxiomBody::OntologyHeader(s) => write!(f, "Ontology({})", render_subject(s)),
            AxiomBody::Shape(s) => write!(f, "Shape({})", render_subject(s)),
            AxiomBody::Assertion(s, p, o) => write!(f, "Assertion({} <{p}> {})", render_subject(s), render_term(o)),
            AxiomBody::Unrecognized(why) => write!(f, "Unrecognized({why:?})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph, RdfFormat};

    pub(crate) fn ttl(s: &str) -> Graph {
        let src = format!(
            "@prefix rdf: <{}> . @prefix rdfs: <{}> . @prefix owl: <{}> . @prefix sh: <{}> . @prefix ex: <http://example.org/> .\n{s}",
            rdf::NS,
            rdfs::NS,
            owl::NS,
            sh::NS
        );
        parse_graph(src.as_bytes(), RdfFormat::Turtle).unwrap()
    }

    fn kinds(t: &Tbox) -> Vec<AxiomKind> {
        let mut k: Vec<_> = t.iter().map(Axiom::kind).collect();
        k.sort();
        k
    }

    #[test]
    fn every_triple_is_claimed_exactly_once() {
        let g = ttl(concat!(
            "<http://example.org/onto> a owl:Ontology ; rdfs:label \"o\" .\n",
            "ex:A a owl:Class ; rdfs:subClassOf [ a owl:Restriction ; owl:onProperty ex:p ; owl:someValuesFrom ex:B ] .\n",
            "ex:C owl:equivalentClass [ a owl:Class ; owl:intersectionOf _:l1 ] .\n",
            "_:l1 rdf:first ex:A ; rdf:rest _:l2 . _:l2 rdf:first ex:B ; rdf:rest rdf:nil .\n",
            "ex:S a sh:NodeShape ; sh:closed true ; sh:property [ sh:path ex:p ] .\n",
            "ex:i a ex:A .\n",
        ));
        let tbox = Tbox::from_graph(&g);
        let total: usize = tbox.iter().map(|a| a.triples.len()).sum();
        assert_eq!(total, g.len());
        assert_eq!(
            kinds(&tbox),
            vec![
                AxiomKind::ClassDeclaration,
                AxiomKind::SubClassOf,
                AxiomKind::EquivalentClassExpression,
                AxiomKind::OntologyHeader,
                AxiomKind::ShaclShape,
                AxiomKind::Assertion,
            ]
        );
    }

    #[test]
    fn axiom_ids_do_not_depend_on_blank_labels() {
        let src = "ex:A rdfs:subClassOf [ a owl:Restriction ; owl:onProperty ex:p ; owl:someValuesFrom ex:B ] .";
        let a = Tbox::from_graph(&ttl(src));
        let b = Tbox::from_graph(&ttl(src));
        assert_eq!(a.axioms[0].id(), b.axioms[0].id());
        assert_eq!(
            a.axioms[0].id(),
            "SubClassOf(<http://example.org/A> ObjectSomeValuesFrom(<http://example.org/p> <http://example.org/B>))"
        );
    }

    #[test]
    fn named_constructor_means_equivalence() {
        let t = Tbox::from_graph(&ttl("ex:A owl:unionOf _:l . _:l rdf:first ex:B ; rdf:rest _:m . _:m rdf:first ex:C ; rdf:rest rdf:nil ."));
        assert_eq!(t.axioms.len(), 1);
        assert_eq!(
            t.axioms[0].id(),
            "EquivalentClasses(<http://example.org/A> ObjectUnionOf(<http://example.org/B> <http://example.org/C>))"
        );
        assert_eq!(t.axioms[0].triples.len(), 5);
        let bad = Tbox::from_graph(&ttl("ex:A owl:unionOf ex:B ."));
        assert!(matches!(&bad.axioms[0].body, AxiomBody::EquivalentClasses(_, ClassExpr::Malformed(_))));
    }

    #[test]
    fn class_used_as_property_is_unrecognized() {
        let t = Tbox::from_graph(&ttl("ex:A a owl:Class . ex:x ex:A ex:y ."));
        assert!(t.iter().any(|a| matches!(&a.body, AxiomBody::Unrecognized(why) if why.contains("class used as a property"))));
    }

    #[test]
    fn inverse_property_in_restriction() {
        let t = Tbox::from_graph(&ttl(
            "ex:A rdfs:subClassOf [ a owl:Restriction ; owl:onProperty [ owl:inverseOf ex:p ] ; owl:allValuesFrom ex:B ] .",
        ));
        assert_eq!(t.axioms.len(), 1);
        match &t.axioms[0].body {
            AxiomBody::SubClassOf(_, ClassExpr::All(PropertyExpr::Inverse(p), _)) => assert_eq!(p.local_name(), "p"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn names_by_kind() {
        let t = Tbox::from_graph(&ttl(
            "ex:A owl:equivalentClass [ a owl:Restriction ; owl:onProperty ex:p ; owl:someValuesFrom ex:B ] .",
        ));
        let names: Vec<_> = t.axioms[0].names().into_iter().map(|(i, k)| (i.local_name().to_string(), k)).collect();
        assert_eq!(
            names,
            vec![("A".into(), Kind::Concept), ("B".into(), Kind::Concept), ("p".into(), Kind::Role)]
        );
    }
}
