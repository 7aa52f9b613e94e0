use std::collections::BTreeSet;

use super::{Graph, GraphIndex, Iri, Subject, Term};
use crate::vocab::{is_builtin, owl, rdf, rdfs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partition {
    Concepts,
    Roles,
    Individuals,
    All,
}

/// Names occurring in a graph, split by the position they occur in.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SignatureTable {
    pub concepts: BTreeSet<Iri>,
    pub roles: BTreeSet<Iri>,
    pub individuals: BTreeSet<Iri>,
    /// Names found in both class and property positions. They stay in both sets.
    pub punned: BTreeSet<Iri>,
}

const CLASS_DECLARATIONS: [&str; 2] = [rdfs::CLASS, owl::CLASS];

const PROPERTY_DECLARATIONS: [&str; 11] = [
    rdf::PROPERTY,
    owl::OBJECT_PROPERTY,
    owl::DATATYPE_PROPERTY,
    owl::ANNOTATION_PROPERTY,
    owl::TRANSITIVE_PROPERTY,
    owl::FUNCTIONAL_PROPERTY,
    owl::INVERSE_FUNCTIONAL_PROPERTY,
    owl::SYMMETRIC_PROPERTY,
    owl::ASYMMETRIC_PROPERTY,
    owl::REFLEXIVE_PROPERTY,
    owl::IRREFLEXIVE_PROPERTY,
];

impl SignatureTable {
    pub fn of(g: &Graph) -> Self {
        let mut table = SignatureTable::default();
        let index = g.index();
        let concept = |t: &Term, table: &mut SignatureTable| {
            if let Some(i) = t.as_iri().filter(|i| !is_builtin(i)) {
                table.concepts.insert(i.clone());
            }
        };
        let role = |t: &Term, table: &mut SignatureTable| {
            if let Some(i) = t.as_iri().filter(|i| !is_builtin(i)) {
                table.roles.insert(i.clone());
            }
        };

        for t in g.iter() {
            let subject = t.subject.to_term();
            match t.predicate.as_str() {
                rdf::TYPE => {
                    let object = t.object.as_iri();
                    if object.is_some_and(|o| CLASS_DECLARATIONS.contains(&o.as_str())) {
                        concept(&subject, &mut table);
                    } else if object.is_some_and(|o| PROPERTY_DECLARATIONS.contains(&o.as_str())) {
                        role(&subject, &mut table);
                    } else {
                        concept(&t.object, &mut table);
                    }
                }
                rdfs::SUB_CLASS_OF | owl::EQUIVALENT_CLASS | owl::DISJOINT_WITH => {
                    concept(&subject, &mut table);
                    concept(&t.object, &mut table);
                }
                owl::COMPLEMENT_OF | owl::SOME_VALUES_FROM | owl::ALL_VALUES_FROM | owl::ON_CLASS => {
                    concept(&t.object, &mut table);
                }
                owl::INTERSECTION_OF | owl::UNION_OF => {
                    concept(&subject, &mut table);
                    if let Some((items, _)) = index.list(&t.object) {
                        for item in items {
                            concept(item, &mut table);
                        }
                    }
                }
                rdfs::SUB_PROPERTY_OF | owl::EQUIVALENT_PROPERTY | owl::INVERSE_OF => {
                    role(&subject, &mut table);
                    role(&t.object, &mut table);
                }
                rdfs::DOMAIN | rdfs::RANGE => {
                    role(&subject, &mut table);
                    concept(&t.object, &mut table);
                }
                owl::ON_PROPERTY => role(&t.object, &mut table),
                _ => {}
            }
            if !is_builtin(&t.predicate) {
                table.roles.insert(t.predicate.clone());
            }
        }

        let mut named = BTreeSet::new();
        for t in g.iter() {
            if let Subject::Iri(i) = &t.subject {
                named.insert(i);
            }
            if let Term::Iri(i) = &t.object {
                named.insert(i);
            }
        }
        for i in named {
            if !is_builtin(i) && !table.concepts.contains(i) && !table.roles.contains(i) && !is_list_node(&index, i) {
                table.individuals.insert(i.clone());
            }
        }
        table.punned = table.concepts.intersection(&table.roles).cloned().collect();
        table
    }

    pub fn partition(&self, partition: Partition) -> BTreeSet<Iri> {
        match partition {
            Partition::Concepts => self.concepts.clone(),
            Partition::Roles => self.roles.clone(),
            Partition::Individuals => self.individuals.clone(),
            Partition::All => self.concepts.iter().chain(&self.roles).chain(&self.individuals).cloned().collect(),
        }
    }
}

fn is_list_node(index: &GraphIndex<'_>, i: &Iri) -> bool {
    index.object(&Subject::Iri(i.clone()), rdf::FIRST).is_some()
}

/// Names of `g` in the requested partition. Built-in vocabulary and blank nodes never appear.
pub fn signature(g: &Graph, partition: Partition) -> BTreeSet<Iri> {
    SignatureTable::of(g).partition(partition)
}
