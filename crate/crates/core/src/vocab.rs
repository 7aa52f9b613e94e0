//! Namespace constants for the vocabularies the tool reads and writes.

use crate::graph::Iri;

pub(crate) fn iri(s: &str) -> Iri {
    Iri::new(s).expect("static vocabulary IRI")
}

pub mod rdf {
    pub const NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    pub const TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    pub const PROPERTY: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property";
    pub const FIRST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
    pub const REST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
    pub const NIL: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
    pub const LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
    pub const JSON: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#JSON";
}

pub mod rdfs {
    pub const NS: &str = "http://www.w3.org/2000/01/rdf-schema#";
    pub const CLASS: &str = "http://www.w3.org/2000/01/rdf-schema#Class";
    pub const SUB_CLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
    pub const SUB_PROPERTY_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
    pub const DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";
    pub const RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";
    pub const LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
    pub const COMMENT: &str = "http://www.w3.org/2000/01/rdf-schema#comment";
    pub const SEE_ALSO: &str = "http://www.w3.org/2000/01/rdf-schema#seeAlso";
    pub const IS_DEFINED_BY: &str = "http://www.w3.org/2000/01/rdf-schema#isDefinedBy";
    pub const LITERAL: &str = "http://www.w3.org/2000/01/rdf-schema#Literal";
    pub const RESOURCE: &str = "http://www.w3.org/2000/01/rdf-schema#Resource";
    pub const DATATYPE: &str = "http://www.w3.org/2000/01/rdf-schema#Datatype";
}

pub mod owl {
    pub const NS: &str = "http://www.w3.org/2002/07/owl#";
    pub const CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
    pub const THING: &str = "http://www.w3.org/2002/07/owl#Thing";
    pub const NOTHING: &str = "http://www.w3.org/2002/07/owl#Nothing";
    pub const ONTOLOGY: &str = "http://www.w3.org/2002/07/owl#Ontology";
    pub const IMPORTS: &str = "http://www.w3.org/2002/07/owl#imports";
    pub const VERSION_INFO: &str = "http://www.w3.org/2002/07/owl#versionInfo";
    pub const VERSION_IRI: &str = "http://www.w3.org/2002/07/owl#versionIRI";
    pub const DEPRECATED: &str = "http://www.w3.org/2002/07/owl#deprecated";
    pub const OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
    pub const DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
    pub const ANNOTATION_PROPERTY: &str = "http://www.w3.org/2002/07/owl#AnnotationProperty";
    pub const NAMED_INDIVIDUAL: &str = "http://www.w3.org/2002/07/owl#NamedIndividual";
    pub const RESTRICTION: &str = "http://www.w3.org/2002/07/owl#Restriction";
    pub const ON_PROPERTY: &str = "http://www.w3.org/2002/07/owl#onProperty";
    pub const ON_CLASS: &str = "http://www.w3.org/2002/07/owl#onClass";
    pub const SOME_VALUES_FROM: &str = "http://www.w3.org/2002/07/owl#someValuesFrom";
    pub const ALL_VALUES_FROM: &str = "http://www.w3.org/2002/07/owl#allValuesFrom";
    pub const HAS_VALUE: &str = "http://www.w3.org/2002/07/owl#hasValue";
    pub const MIN_CARDINALITY: &str = "http://www.w3.org/2002/07/owl#minCardinality";
    pub const MAX_CARDINALITY: &str = "http://www.w3.org/2002/07/owl#maxCardinality";
    pub const CARDINALITY: &str = "http://www.w3.org/2002/07/owl#cardinality";
    pub const MIN_QUALIFIED_CARDINALITY: &str = "http://www.w3.org/2002/07/owl#minQualifiedCardinality";
    pub const MAX_QUALIFIED_CARDINALITY: &str = "http://www.w3.org/2002/07/owl#maxQualifiedCardinality";
    pub const QUALIFIED_CARDINALITY: &str = "http://www.w3.org/2002/07/owl#qualifiedCardinality";
    pub const INTERSECTION_OF: &str = "http://www.w3.org/2002/07/owl#intersectionOf";
    pub const UNION_OF: &str = "http://www.w3.org/2002/07/owl#unionOf";
    pub const COMPLEMENT_OF: &str = "http://www.w3.org/2002/07/owl#complementOf";
    pub const ONE_OF: &str = "http://www.w3.org/2002/07/owl#oneOf";
    pub const EQUIVALENT_CLASS: &str = "http://www.w3.org/2002/07/owl#equivalentClass";
    pub const EQUIVALENT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#equivalentProperty";
    pub const DISJOINT_WITH: &str = "http://www.w3.org/2002/07/owl#disjointWith";
    pub const INVERSE_OF: &str = "http://www.w3.org/2002/07/owl#inverseOf";
    pub const TRANSITIVE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#TransitiveProperty";
    pub const FUNCTIONAL_PROPERTY: &str = "http://www.w3.org/2002/07/owl#FunctionalProperty";
    pub const INVERSE_FUNCTIONAL_PROPERTY: &str = "http://www.w3.org/2002/07/owl#InverseFunctionalProperty";
    pub const SYMMETRIC_PROPERTY: &str = "http://www.w3.org/2002/07/owl#SymmetricProperty";
    pub const ASYMMETRIC_PROPERTY: &str = "http://www.w3.org/2002/07/owl#AsymmetricProperty";
    pub const REFLEXIVE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ReflexiveProperty";
    pub const IRREFLEXIVE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#IrreflexiveProperty";
}

pub mod xsd {
    use crate::graph::Iri;

    pub const NS: &str = "http://www.w3.org/2001/XMLSchema#";
    pub const STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
    pub const BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
    pub const INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
    pub const DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
    pub const DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
    pub const DATE_TIME: &str = "http://www.w3.org/2001/XMLSchema#dateTime";

    pub fn string() -> Iri {
        super::iri(STRING)
    }
}

pub mod sh {
    pub const NS: &str = "http://www.w3.org/ns/shacl#";
    pub const NODE_SHAPE: &str = "http://www.w3.org/ns/shacl#NodeShape";
    pub const CLOSED: &str = "http://www.w3.org/ns/shacl#closed";
    pub const TARGET_CLASS: &str = "http://www.w3.org/ns/shacl#targetClass";
    pub const PROPERTY: &str = "http://www.w3.org/ns/shacl#property";
    pub const PATH: &str = "http://www.w3.org/ns/shacl#path";
    pub const IGNORED_PROPERTIES: &str = "http://www.w3.org/ns/shacl#ignoredProperties";
}

pub mod void {
    pub const NS: &str = "http://rdfs.org/ns/void#";
    pub const DATASET: &str = "http://rdfs.org/ns/void#Dataset";
    pub const CLASS: &str = "http://rdfs.org/ns/void#class";
    pub const PROPERTY: &str = "http://rdfs.org/ns/void#property";
}

pub mod dcat {
    pub const NS: &str = "http://www.w3.org/ns/dcat#";
    pub const DATASET: &str = "http://www.w3.org/ns/dcat#Dataset";
}

/// SPARQL 1.1 Service Description.
pub mod sd {
    pub const NS: &str = "http://www.w3.org/ns/sparql-service-description#";
    pub const DEFAULT_ENTAILMENT_REGIME: &str = "http://www.w3.org/ns/sparql-service-description#defaultEntailmentRegime";
    pub const ENTAILMENT_REGIME: &str = "http://www.w3.org/ns/sparql-service-description#entailmentRegime";
    pub const SUPPORTED_ENTAILMENT_PROFILE: &str =
        "http://www.w3.org/ns/sparql-service-description#supportedEntailmentProfile";
    pub const DEFAULT_SUPPORTED_ENTAILMENT_PROFILE: &str =
        "http://www.w3.org/ns/sparql-service-description#defaultSupportedEntailmentProfile";
}

/// W3C entailment regime IRIs used with `sd:entailmentRegime`.
pub mod ent {
    pub const SIMPLE: &str = "http://www.w3.org/ns/entailment/Simple";
    pub const RDF: &str = "http://www.w3.org/ns/entailment/RDF";
    pub const RDFS: &str = "http://www.w3.org/ns/entailment/RDFS";
    pub const D: &str = "http://www.w3.org/ns/entailment/D";
    pub const OWL_DIRECT: &str = "http://www.w3.org/ns/entailment/OWL-Direct";
    pub const OWL_RDF_BASED: &str = "http://www.w3.org/ns/entailment/OWL-RDF-Based";
}

/// OWL 2 profile IRIs used with `sd:supportedEntailmentProfile`.
pub mod owl_profile {
    pub const EL: &str = "http://www.w3.org/ns/owl-profile/EL";
    pub const QL: &str = "http://www.w3.org/ns/owl-profile/QL";
    pub const RL: &str = "http://www.w3.org/ns/owl-profile/RL";
    pub const DL: &str = "http://www.w3.org/ns/owl-profile/DL";
    pub const FULL: &str = "http://www.w3.org/ns/owl-profile/Full";
}

/// The affordance-profile vocabulary. Version 0.1 is a minimal strawman; the
/// human-readable definition ships in `data/aap-vocabulary.ttl`.
pub mod aap {
    pub const NS: &str = "https://w3id.org/aap/v0.1#";

    // metadata recognised when extracting trust scope and discoverability
    pub const ENTAILMENT_REGIME: &str = "https://w3id.org/aap/v0.1#entailmentRegime";
    pub const CLOSED_PREDICATE: &str = "https://w3id.org/aap/v0.1#closedPredicate";
    pub const CLOSURE_SEMANTICS: &str = "https://w3id.org/aap/v0.1#closureSemantics";
    pub const CLOSURE_SOURCE: &str = "https://w3id.org/aap/v0.1#closureSource";
    pub const TARGET_CLASS: &str = "https://w3id.org/aap/v0.1#targetClass";
    pub const WORLD_ASSUMPTION: &str = "https://w3id.org/aap/v0.1#worldAssumption";
    pub const CLOSED_WORLD: &str = "https://w3id.org/aap/v0.1#ClosedWorld";
    pub const ALL_PREDICATES: &str = "https://w3id.org/aap/v0.1#AllPredicates";
    pub const NOT_CLOSED: &str = "https://w3id.org/aap/v0.1#notClosed";
    pub const CONSISTENCY_STATUS: &str = "https://w3id.org/aap/v0.1#consistencyStatus";
    pub const CERTIFIED_BY: &str = "https://w3id.org/aap/v0.1#certifiedBy";
    pub const RESIDENT_NAME: &str = "https://w3id.org/aap/v0.1#residentName";
    pub const RESIDENT_CONCEPT: &str = "https://w3id.org/aap/v0.1#residentConcept";
    pub const RESIDENT_ROLE: &str = "https://w3id.org/aap/v0.1#residentRole";
    pub const GROUNDED_NAME: &str = "https://w3id.org/aap/v0.1#groundedName";
    pub const UNGROUNDED_NAME: &str = "https://w3id.org/aap/v0.1#ungroundedName";

    // regime / fragment / status individuals
    pub const SIMPLE: &str = "https://w3id.org/aap/v0.1#Simple";
    pub const RDF_ONLY: &str = "https://w3id.org/aap/v0.1#RdfOnly";
    pub const RDFS: &str = "https://w3id.org/aap/v0.1#Rdfs";
    pub const OWL_EL: &str = "https://w3id.org/aap/v0.1#OwlEl";
    pub const OWL_QL: &str = "https://w3id.org/aap/v0.1#OwlQl";
    pub const OWL_RL: &str = "https://w3id.org/aap/v0.1#OwlRl";
    pub const OWL_DL: &str = "https://w3id.org/aap/v0.1#OwlDl";
    pub const OWL_FULL: &str = "https://w3id.org/aap/v0.1#OwlFull";
    pub const UNCERTIFIED: &str = "https://w3id.org/aap/v0.1#Uncertified";
    pub const TBOX_CONSISTENT: &str = "https://w3id.org/aap/v0.1#TboxConsistent";
    pub const JOINTLY_CONSISTENT: &str = "https://w3id.org/aap/v0.1#JointlyConsistent";
    pub const GLOBAL_CWA: &str = "https://w3id.org/aap/v0.1#GlobalCwa";
    pub const PREDICATE_LCWA: &str = "https://w3id.org/aap/v0.1#PredicateLcwa";
    pub const SHACL_CLOSED_SHAPE: &str = "https://w3id.org/aap/v0.1#ShaclClosedShape";

    // profile documents
    pub const PROFILE: &str = "https://w3id.org/aap/v0.1#Profile";
    pub const PROFILE_OF: &str = "https://w3id.org/aap/v0.1#profileOf";
    pub const FRAGMENT: &str = "https://w3id.org/aap/v0.1#fragment";
    pub const CONFORMANCE_RATIO: &str = "https://w3id.org/aap/v0.1#conformanceRatio";
    pub const CENSUS_ENTRY: &str = "https://w3id.org/aap/v0.1#censusEntry";
    pub const AXIOM_KIND: &str = "https://w3id.org/aap/v0.1#axiomKind";
    pub const COUNT: &str = "https://w3id.org/aap/v0.1#count";
    pub const DIAGNOSTIC: &str = "https://w3id.org/aap/v0.1#diagnostic";
    pub const REGIME_CONFLICT: &str = "https://w3id.org/aap/v0.1#regimeConflict";
    pub const DECLARED_REGIME: &str = "https://w3id.org/aap/v0.1#declaredRegime";
    pub const CLOSURE: &str = "https://w3id.org/aap/v0.1#closure";
    pub const DISCOVERABILITY: &str = "https://w3id.org/aap/v0.1#discoverability";
    pub const DISCOVERABILITY_BAND: &str = "https://w3id.org/aap/v0.1#discoverabilityBand";
    pub const GROUNDING_ROUTE: &str = "https://w3id.org/aap/v0.1#groundingRoute";
    pub const DERIVED_NAME: &str = "https://w3id.org/aap/v0.1#derivedName";
    pub const NAME: &str = "https://w3id.org/aap/v0.1#name";
    pub const KIND: &str = "https://w3id.org/aap/v0.1#kind";
    pub const CONCEPT: &str = "https://w3id.org/aap/v0.1#Concept";
    pub const ROLE: &str = "https://w3id.org/aap/v0.1#Role";
    pub const PROVENANCE: &str = "https://w3id.org/aap/v0.1#provenance";
    pub const WEAK: &str = "https://w3id.org/aap/v0.1#weak";
    pub const VIA_REFERENCE: &str = "https://w3id.org/aap/v0.1#viaReference";
    pub const CYCLE_WARNING: &str = "https://w3id.org/aap/v0.1#cycleWarning";
    pub const TASK_ASSESSMENT: &str = "https://w3id.org/aap/v0.1#taskAssessment";
    pub const TASK: &str = "https://w3id.org/aap/v0.1#task";
    pub const COVERAGE: &str = "https://w3id.org/aap/v0.1#coverage";
    pub const KIND_MISMATCH: &str = "https://w3id.org/aap/v0.1#kindMismatch";
    pub const WEAK_NAME: &str = "https://w3id.org/aap/v0.1#weakName";
    pub const VIA_REFERENCE_NAME: &str = "https://w3id.org/aap/v0.1#viaReferenceName";
    pub const LOWER_BOUND: &str = "https://w3id.org/aap/v0.1#lowerBound";
    pub const MODULE_NAME: &str = "https://w3id.org/aap/v0.1#moduleName";
    pub const METADATA_VERDICT: &str = "https://w3id.org/aap/v0.1#metadataVerdict";
    pub const DECIDABLE_FIT: &str = "https://w3id.org/aap/v0.1#DecidableFit";
    pub const DECIDABLE_UNFIT: &str = "https://w3id.org/aap/v0.1#DecidableUnfit";
    pub const UNDECIDABLE: &str = "https://w3id.org/aap/v0.1#Undecidable";
    pub const RDFS_REACHABILITY: &str = "https://w3id.org/aap/v0.1#RdfsReachability";
    pub const DEFINITION_PATTERNS: &str = "https://w3id.org/aap/v0.1#DefinitionPatterns";
    pub const UNSUPPORTED: &str = "https://w3id.org/aap/v0.1#Unsupported";
    pub const TOOL_VERSION: &str = "https://w3id.org/aap/v0.1#toolVersion";
    pub const INPUT_DIGEST: &str = "https://w3id.org/aap/v0.1#inputDigest";
    pub const GENERATED_AT: &str = "https://w3id.org/aap/v0.1#generatedAt";
    pub const WARNING: &str = "https://w3id.org/aap/v0.1#warning";

    // mediators
    pub const MEDIATOR: &str = "https://w3id.org/aap/v0.1#Mediator";
    pub const INPUT_NAME: &str = "https://w3id.org/aap/v0.1#inputName";
    pub const OUTPUT_NAME: &str = "https://w3id.org/aap/v0.1#outputName";
    pub const PRESERVATION_CLAIM: &str = "https://w3id.org/aap/v0.1#preservationClaim";
}

/// Namespaces whose terms are built-in vocabulary and never part of a signature.
pub const BUILTIN_NAMESPACES: [&str; 5] = [rdf::NS, rdfs::NS, owl::NS, sh::NS, xsd::NS];

pub fn is_builtin(iri: &Iri) -> bool {
    BUILTIN_NAMESPACES.iter().any(|ns| iri.in_namespace(ns))
}

/// Prefixes offered to the Turtle writer.
pub const WELL_KNOWN_PREFIXES: [(&str, &str); 10] = [
    ("aap", aap::NS),
    ("dcat", dcat::NS),
    ("owl", owl::NS),
    ("rdf", rdf::NS),
    ("rdfs", rdfs::NS),
    ("sd", sd::NS),
    ("sh", sh::NS),
    ("void", void::NS),
    ("xsd", xsd::NS),
    ("dcterms", "http://purl.org/dc/terms/"),
];

/// Turtle source of the AAP vocabulary document.
pub const VOCABULARY_TTL: &str = include_str!("../data/aap-vocabulary.ttl");

pub fn vocabulary_graph() -> &'static crate::graph::Graph {
    static GRAPH: std::sync::OnceLock<crate::graph::Graph> = std::sync::OnceLock::new();
    GRAPH.get_or_init(|| {
        crate::graph::parse_graph(VOCABULARY_TTL.as_bytes(), crate::graph::RdfFormat::Turtle)
            .expect("bundled vocabulary parses")
    })
}
