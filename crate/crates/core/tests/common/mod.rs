//! Shared fixtures and random generators for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fmt::Write;
use std::path::PathBuf;

use aap_core::discoverability::TaskType;
use aap_core::graph::{parse_graph, Graph, Iri, RdfFormat};
use aap_core::matcher::MediatorDescriptor;
use aap_core::profile::{build_profiles, AapProfile};
use aap_core::registry::manifest::{load_manifest, LoadedManifest};
use aap_core::tbox::{Kind, Name};
use proptest::prelude::*;

pub const STAMP: &str = "2024-01-01T00:00:00Z";
pub const CONF: &str = "http://example.org/conference#";
pub const T: &str = "http://example.org/t#";

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture_graph(rel: &str) -> Graph {
    let bytes = std::fs::read(fixture_dir().join(rel)).unwrap();
    parse_graph(&bytes, RdfFormat::Turtle).unwrap()
}

pub fn manifest() -> LoadedManifest {
    load_manifest(&fixture_dir().join("manifest.json")).unwrap()
}

pub fn profiles(m: &LoadedManifest) -> Vec<AapProfile> {
    build_profiles(&m.kgs, &m.catalogue, m.reference.as_ref(), STAMP)
}

pub fn mediators(m: &LoadedManifest) -> Vec<MediatorDescriptor> {
    m.mediators
        .iter()
        .flat_map(|(_, bytes)| MediatorDescriptor::from_graph(&parse_graph(bytes, RdfFormat::Turtle).unwrap()).unwrap())
        .collect()
}

pub fn task<'a>(m: &'a LoadedManifest, key: &str) -> &'a TaskType {
    m.catalogue.find(key).unwrap()
}

pub fn conf(local: &str) -> Iri {
    Iri::new(format!("{CONF}{local}")).unwrap()
}

pub fn t(local: &str) -> Iri {
    Iri::new(format!("{T}{local}")).unwrap()
}

pub const CONCEPTS: usize = 10;
pub const ROLES: usize = 5;

fn c(i: usize) -> Name {
    (t(&format!("C{i}")), Kind::Concept)
}

fn r(i: usize) -> Name {
    (t(&format!("r{i}")), Kind::Role)
}

/// Axiom shapes drawn by the random TBox generator. Indices name `t:C<i>` and `t:r<i>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ax {
    Sub(usize, usize),
    SubSome(usize, usize, usize),
    SubProp(usize, usize),
    EqNamed(usize, usize),
    EqAnd(usize, usize, usize),
    EqSome(usize, usize, usize),
    EqAndSome(usize, usize, usize, usize),
    EqProp(usize, usize),
    Domain(usize, usize),
    Range(usize, usize),
    DeclClass(usize),
    DeclProp(usize),
}

impl Ax {
    /// Every name the axiom mentions.
    pub fn names(&self) -> Vec<Name> {
        match *self {
            Ax::Sub(a, b) | Ax::EqNamed(a, b) => vec![c(a), c(b)],
            Ax::SubSome(a, p, b) | Ax::EqSome(a, p, b) => vec![c(a), r(p), c(b)],
            Ax::SubProp(p, q) | Ax::EqProp(p, q) => vec![r(p), r(q)],
            Ax::EqAnd(a, b, d) => vec![c(a), c(b), c(d)],
            Ax::EqAndSome(a, b, p, d) => vec![c(a), c(b), r(p), c(d)],
            Ax::Domain(p, a) | Ax::Range(p, a) => vec![r(p), c(a)],
            Ax::DeclClass(a) => vec![c(a)],
            Ax::DeclProp(p) => vec![r(p)],
        }
    }

    /// Derivation rules as (derived name, names needed, weak).
    pub fn rules(&self) -> Vec<(Name, Vec<Name>, bool)> {
        let define = |a: Name, body: Vec<Name>| if body.contains(&a) { vec![] } else { vec![(a, body, false)] };
        match *self {
            Ax::Sub(a, b) => vec![(c(b), vec![c(a)], false), (c(a), vec![c(b)], true)],
            Ax::SubProp(p, q) => vec![(r(q), vec![r(p)], false), (r(p), vec![r(q)], true)],
            Ax::EqNamed(a, b) => [define(c(a), vec![c(b)]), define(c(b), vec![c(a)])].concat(),
            Ax::EqProp(p, q) => vec![(r(p), vec![r(q)], false), (r(q), vec![r(p)], false)],
            Ax::EqAnd(a, b, d) => define(c(a), vec![c(b), c(d)]),
            Ax::EqSome(a, p, b) => define(c(a), vec![r(p), c(b)]),
            Ax::EqAndSome(a, b, p, d) => define(c(a), vec![c(b), r(p), c(d)]),
            _ => vec![],
        }
    }

    fn turtle(&self, n: usize, out: &mut String) {
        let list = |items: &[String], out: &mut String| -> String {
            for (i, item) in items.iter().enumerate() {
                let rest = if i + 1 == items.len() { "rdf:nil".to_string() } else { format!("_:l{n}_{}", i + 1) };
                let _ = writeln!(out, "_:l{n}_{i} rdf:first {item} ; rdf:rest {rest} .");
            }
            format!("_:l{n}_0")
        };
        let some = |p: usize, b: usize, tag: &str, out: &mut String| -> String {
            let _ = writeln!(out, "_:{tag}{n} a owl:Restriction ; owl:onProperty t:r{p} ; owl:someValuesFrom t:C{b} .");
            format!("_:{tag}{n}")
        };
        match *self {
            Ax::Sub(a, b) => {
                let _ = writeln!(out, "t:C{a} rdfs:subClassOf t:C{b} .");
            }
            Ax::SubSome(a, p, b) => {
                let s = some(p, b, "s", out);
                let _ = writeln!(out, "t:C{a} rdfs:subClassOf {s} .");
            }
            Ax::SubProp(p, q) => {
                let _ = writeln!(out, "t:r{p} rdfs:subPropertyOf t:r{q} .");
            }
            Ax::EqNamed(a, b) => {
                let _ = writeln!(out, "t:C{a} owl:equivalentClass t:C{b} .");
            }
            Ax::EqAnd(a, b, d) => {
                let l = list(&[format!("t:C{b}"), format!("t:C{d}")], out);
                let _ = writeln!(out, "t:C{a} owl:equivalentClass [ a owl:Class ; owl:intersectionOf {l} ] .");
            }
            Ax::EqSome(a, p, b) => {
                let s = some(p, b, "s", out);
                let _ = writeln!(out, "t:C{a} owl:equivalentClass {s} .");
            }
            Ax::EqAndSome(a, b, p, d) => {
                let s = some(p, d, "s", out);
                let l = list(&[format!("t:C{b}"), s], out);
                let _ = writeln!(out, "t:C{a} owl:equivalentClass [ a owl:Class ; owl:intersectionOf {l} ] .");
            }
            Ax::EqProp(p, q) => {
                let _ = writeln!(out, "t:r{p} owl:equivalentProperty t:r{q} .");
            }
            Ax::Domain(p, a) => {
                let _ = writeln!(out, "t:r{p} rdfs:domain t:C{a} .");
            }
            Ax::Range(p, a) => {
                let _ = writeln!(out, "t:r{p} rdfs:range t:C{a} .");
            }
            Ax::DeclClass(a) => {
                let _ = writeln!(out, "t:C{a} a owl:Class .");
            }
            Ax::DeclProp(p) => {
                let _ = writeln!(out, "t:r{p} a owl:ObjectProperty .");
            }
        }
    }
}

pub const PREFIXES: &str = "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n\
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n\
@prefix owl: <http://www.w3.org/2002/07/owl#> .\n\
@prefix t: <http://example.org/t#> .\n";

pub fn tbox_turtle(axioms: &[Ax]) -> String {
    let mut out = PREFIXES.to_string();
    for (n, a) in axioms.iter().enumerate() {
        a.turtle(n, &mut out);
    }
    out
}

pub fn tbox_graph(axioms: &[Ax]) -> Graph {
    parse_graph(tbox_turtle(axioms).as_bytes(), RdfFormat::Turtle).unwrap()
}

pub fn axiom() -> impl Strategy<Value = Ax> {
    let cc = 0..CONCEPTS;
    let rr = 0..ROLES;
    prop_oneof![
        3 => (cc.clone(), cc.clone()).prop_map(|(a, b)| Ax::Sub(a, b)),
        1 => (cc.clone(), rr.clone(), cc.clone()).prop_map(|(a, p, b)| Ax::SubSome(a, p, b)),
        2 => (rr.clone(), rr.clone()).prop_map(|(p, q)| Ax::SubProp(p, q)),
        1 => (cc.clone(), cc.clone()).prop_map(|(a, b)| Ax::EqNamed(a, b)),
        2 => (cc.clone(), cc.clone(), cc.clone()).prop_map(|(a, b, d)| Ax::EqAnd(a, b, d)),
        2 => (cc.clone(), rr.clone(), cc.clone()).prop_map(|(a, p, b)| Ax::EqSome(a, p, b)),
        1 => (cc.clone(), cc.clone(), rr.clone(), cc.clone()).prop_map(|(a, b, p, d)| Ax::EqAndSome(a, b, p, d)),
        1 => (rr.clone(), rr.clone()).prop_map(|(p, q)| Ax::EqProp(p, q)),
        1 => (rr.clone(), cc.clone()).prop_map(|(p, a)| Ax::Domain(p, a)),
        1 => (rr.clone(), cc.clone()).prop_map(|(p, a)| Ax::Range(p, a)),
        1 => cc.prop_map(Ax::DeclClass),
        1 => rr.prop_map(Ax::DeclProp),
    ]
}

pub fn tbox(max: usize) -> impl Strategy<Value = Vec<Ax>> {
    proptest::collection::vec(axiom(), 0..=max)
}

/// Naive closure: names mentioned by `schema`, then every rule of `schema`
/// and `reference` applied until nothing changes.
pub fn naive_closure(schema: &[Ax], reference: &[Ax]) -> BTreeSet<Name> {
    let mut closed: BTreeSet<Name> = schema.iter().flat_map(Ax::names).collect();
    let rules: Vec<_> = schema.iter().chain(reference).flat_map(Ax::rules).collect();
    loop {
        let before = closed.len();
        for (name, needs, _) in &rules {
            if needs.iter().all(|n| closed.contains(n)) {
                closed.insert(name.clone());
            }
        }
        if closed.len() == before {
            return closed;
        }
    }
}

/// Names with a non-weak rule whose premises all lie in `closed`.
pub fn strongly_supported(schema: &[Ax], reference: &[Ax], closed: &BTreeSet<Name>) -> BTreeSet<Name> {
    schema
        .iter()
        .chain(reference)
        .flat_map(Ax::rules)
        .filter(|(_, needs, weak)| !weak && needs.iter().all(|n| closed.contains(n)))
        .map(|(name, _, _)| name)
        .collect()
}

pub fn all_names() -> Vec<Name> {
    (0..CONCEPTS).map(c).chain((0..ROLES).map(r)).collect()
}
