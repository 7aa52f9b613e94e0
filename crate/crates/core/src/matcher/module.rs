//! Syntactic ⊥-locality modules.

use std::collections::BTreeSet;

use crate::graph::{Graph, Iri, Partition, SignatureTable, Subject};
use crate::tbox::{Axiom, AxiomBody, CardinalityBound, Characteristic, ClassExpr, PropertyExpr, Tbox};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Polarity {
    Bottom,
    Top,
    Neither,
}

fn role_out(p: &PropertyExpr, sig: &BTreeSet<Iri>) -> bool {
    !sig.contains(p.name())
}

fn classify(c: &ClassExpr, sig: &BTreeSet<Iri>) -> Polarity {
    use Polarity::*;
    match c {
        ClassExpr::Nothing => Bottom,
        ClassExpr::Thing => Top,
        ClassExpr::Named(a) => {
            if sig.contains(a) {
                Neither
            } else {
                Bottom
            }
        }
        ClassExpr::Datatype(_) | ClassExpr::Malformed(_) => Neither,
        ClassExpr::Some(p, f) => {
            if role_out(p, sig) || classify(f, sig) == Bottom {
                Bottom
            } else {
                Neither
            }
        }
        ClassExpr::All(p, f) => {
            if role_out(p, sig) || classify(f, sig) == Top {
                Top
            } else {
                Neither
            }
        }
        ClassExpr::HasValue(p, _) => {
            if role_out(p, sig) {
                Bottom
            } else {
                Neither
            }
        }
        ClassExpr::Cardinality { property, bound, n, filler } => {
            let filler_bottom = filler.as_ref().is_some_and(|f| classify(f, sig) == Bottom);
            let empty = role_out(property, sig) || filler_bottom;
            match bound {
                CardinalityBound::Min | CardinalityBound::Exact if *n >= 1 && empty => Bottom,
                CardinalityBound::Max if empty => Top,
                CardinalityBound::Exact if *n == 0 && empty => Top,
                CardinalityBound::Min if *n == 0 => Top,
                _ => Neither,
            }
        }
        ClassExpr::And(xs) => {
            let ps: Vec<Polarity> = xs.iter().map(|x| classify(x, sig)).collect();
            if ps.contains(&Bottom) {
                Bottom
            } else if ps.iter().all(|p| *p == Top) {
                Top
            } else {
                Neither
            }
        }
        ClassExpr::Or(xs) => {
            let ps: Vec<Polarity> = xs.iter().map(|x| classify(x, sig)).collect();
            if ps.contains(&Top) {
                Top
            } else if ps.iter().all(|p| *p == Bottom) {
                Bottom
            } else {
                Neither
            }
        }
        ClassExpr::Not(x) => match classify(x, sig) {
            Bottom => Top,
            Top => Bottom,
            Neither => Neither,
        },
        ClassExpr::OneOf(xs) => {
            if xs.is_empty() {
                Bottom
            } else {
                Neither
            }
        }
    }
}

fn mentions(axiom: &Axiom, sig: &BTreeSet<Iri>) -> bool {
    axiom.triples.iter().any(|t| {
        t.subject.as_iri().is_some_and(|s| sig.contains(s))
            || sig.contains(&t.predicate)
            || t.object.as_iri().is_some_and(|o| sig.contains(o))
    })
}

/// Whether `axiom` is ⊥-local with respect to `sig`.
///
/// Declarations, annotations, assertions, shapes and unrecognized triples
/// carry no class-level semantics here; they are local unless they mention
/// a name in `sig`.
pub fn is_bottom_local(axiom: &Axiom, sig: &BTreeSet<Iri>) -> bool {
    use Polarity::*;
    let out = |p: &Iri| !sig.contains(p);
    match &axiom.body {
        AxiomBody::SubClassOf(c, d) => classify(c, sig) == Bottom || classify(d, sig) == Top,
        AxiomBody::EquivalentClasses(c, d) => {
            let (pc, pd) = (classify(c, sig), classify(d, sig));
            (pc == Bottom && pd == Bottom) || (pc == Top && pd == Top)
        }
        AxiomBody::DisjointClasses(c, d) => classify(c, sig) == Bottom || classify(d, sig) == Bottom,
        AxiomBody::SubPropertyOf(r, _) => out(r),
        AxiomBody::EquivalentProperties(r, s) | AxiomBody::InverseProperties(r, s) => out(r) && out(s),
        AxiomBody::Domain(r, c) | AxiomBody::Range(r, c) => out(r) || classify(c, sig) == Top,
        AxiomBody::Characteristic(_, Characteristic::Reflexive) => false,
        AxiomBody::Characteristic(r, _) => out(r),
        AxiomBody::Declaration(e, _) => out(e),
        AxiomBody::Annotation(s, _) => !matches!(s, Subject::Iri(i) if sig.contains(i)),
        AxiomBody::Assertion(..) | AxiomBody::Shape(_) | AxiomBody::Unrecognized(_) => !mentions(axiom, sig),
        // carried along with any non-empty module
        AxiomBody::OntologyHeader(_) => true,
    }
}

fn axiom_iris(axiom: &Axiom) -> impl Iterator<Item = Iri> {
    axiom.names().into_iter().map(|(i, _)| i)
}

/// ⊥-locality module of `schema` for `seed`, as a subgraph of `schema`.
///
/// Seed names that occur in the schema only inside local axioms are anchored
/// by the first axiom mentioning them, so every such name stays visible in the
/// module's signature.
pub fn extract_module(schema: &Graph, seed: &BTreeSet<Iri>) -> Graph {
    let tbox = Tbox::from_graph(schema);
    extract_module_tbox(&tbox, seed)
}

pub fn extract_module_tbox(tbox: &Tbox, seed: &BTreeSet<Iri>) -> Graph {
    let mut sig: BTreeSet<Iri> = seed.clone();
    let mut included = vec![false; tbox.axioms.len()];

    let schema_names: BTreeSet<Iri> = tbox.iter().flat_map(axiom_iris).collect();
    for name in seed.iter().filter(|n| schema_names.contains(*n)) {
        if let Some((i, a)) = tbox.iter().enumerate().find(|(_, a)| a.names().iter().any(|(n, _)| n == name)) {
            if !included[i] {
                included[i] = true;
                sig.extend(axiom_iris(a));
            }
        }
    }

    loop {
        let mut changed = false;
        for (i, a) in tbox.iter().enumerate() {
            if included[i] || is_bottom_local(a, &sig) {
                continue;
            }
            included[i] = true;
            sig.extend(axiom_iris(a));
            changed = true;
        }
        if !changed {
            break;
        }
    }

    let mut module = Graph::new();
    if !included.iter().any(|x| *x) {
        return module;
    }
    for (i, a) in tbox.iter().enumerate() {
        if included[i] || matches!(a.body, AxiomBody::OntologyHeader(_)) {
            module.extend(a.triples.iter().cloned());
        }
    }
    module
}

/// Concept and role names of a module graph.
pub fn module_signature(module: &Graph) -> BTreeSet<Iri> {
    let table = SignatureTable::of(module);
    let mut names = table.partition(Partition::Concepts);
    names.extend(table.partition(Partition::Roles));
    names
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph, RdfFormat};
    use crate::grounding::resident_signature;
    use crate::vocab::{owl, rdf, rdfs};

    fn ttl(s: &str) -> Graph {
        let src = format!(
            "@prefix rdf: <{}> . @prefix rdfs: <{}> . @prefix owl: <{}> . @prefix ex: <http://example.org/> .\n{s}",
            rdf::NS,
            rdfs::NS,
            owl::NS
        );
        parse_graph(src.as_bytes(), RdfFormat::Turtle).unwrap()
    }

    fn ex(s: &str) -> Iri {
        Iri::new(format!("http://example.org/{s}")).unwrap()
    }

    const SCHEMA: &str = concat!(
        "<http://example.org/onto> a owl:Ontology .\n",
        "ex:A a owl:Class . ex:B a owl:Class . ex:C a owl:Class . ex:D a owl:Class . ex:p a owl:ObjectProperty .\n",
        "ex:A rdfs:subClassOf ex:B .\n",
        "ex:B rdfs:subClassOf [ a owl:Restriction ; owl:onProperty ex:p ; owl:someValuesFrom ex:C ] .\n",
        "ex:D rdfs:subClassOf ex:C .\n",
    );

    #[test]
    fn empty_seed_gives_empty_module() {
        assert!(extract_module(&ttl(SCHEMA), &BTreeSet::new()).is_empty());
    }

    #[test]
    fn full_signature_gives_whole_schema() {
        let g = ttl(SCHEMA);
        let seed = resident_signature(&g).names.into_iter().map(|(i, _)| i).collect();
        assert_eq!(extract_module(&g, &seed), g);
    }

    #[test]
    fn module_follows_dependencies_upward() {
        let g = ttl(SCHEMA);
        let m = extract_module(&g, &BTreeSet::from([ex("A")]));
        let names = module_signature(&m);
        assert_eq!(names, BTreeSet::from([ex("A"), ex("B"), ex("C"), ex("p")]));
        assert!(!names.contains(&ex("D")));
    }

    #[test]
    fn undeclared_seed_names_are_anchored() {
        let g = ttl("ex:A rdfs:subClassOf ex:S .");
        let m = extract_module(&g, &BTreeSet::from([ex("S")]));
        assert_eq!(m, g);
    }
}
