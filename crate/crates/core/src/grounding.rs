//! Dimension G: signature closure of a TBox and coverage of task signatures.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::Ratio;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expressivity::{detect_fragment_tbox, fragment_leq, DlFragment};
use crate::graph::{Graph, Iri, SignatureTable};
use crate::tbox::{Axiom, AxiomBody, ClassExpr, Kind, Name, Tbox};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroundingError {
    #[error("task signature is empty")]
    EmptyTaskSignature,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskSignature {
    pub entries: BTreeSet<Name>,
}

impl TaskSignature {
    pub fn new(entries: impl IntoIterator<Item = Name>) -> Self {
        TaskSignature { entries: entries.into_iter().collect() }
    }

    pub fn names(&self) -> BTreeSet<Iri> {
        self.entries.iter().map(|(i, _)| i.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidentSignature {
    pub names: BTreeSet<Name>,
}

pub fn resident_signature(schema: &Graph) -> ResidentSignature {
    let table = SignatureTable::of(schema);
    let names = table
        .concepts
        .into_iter()
        .map(|c| (c, Kind::Concept))
        .chain(table.roles.into_iter().map(|r| (r, Kind::Role)))
        .collect();
    ResidentSignature { names }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedName {
    pub name: Iri,
    pub kind: Kind,
    /// Axiom ids of the derivation, dependencies first.
    pub provenance: Vec<String>,
    /// Reached only through a super-name: subsumption without definition.
    pub weak: bool,
    /// The derivation uses at least one reference-ontology axiom.
    pub via_reference: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWarning {
    pub cycle: Vec<Iri>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroundingRoute {
    RdfsReachability,
    DefinitionPatterns,
    Unsupported,
}

impl GroundingRoute {
    pub fn name(self) -> &'static str {
        match self {
            GroundingRoute::RdfsReachability => "RdfsReachability",
            GroundingRoute::DefinitionPatterns => "DefinitionPatterns",
            GroundingRoute::Unsupported => "Unsupported",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [GroundingRoute::RdfsReachability, GroundingRoute::DefinitionPatterns, GroundingRoute::Unsupported]
            .into_iter()
            .find(|r| r.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteAssessment {
    pub route: GroundingRoute,
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureClosure {
    pub base: ResidentSignature,
    pub derived: BTreeMap<Name, DerivedName>,
    pub cycle_warnings: Vec<CycleWarning>,
    pub route: RouteAssessment,
}

impl SignatureClosure {
    pub fn contains(&self, name: &Iri, kind: Kind) -> bool {
        let key = (name.clone(), kind);
        self.base.names.contains(&key) || self.derived.contains_key(&key)
    }

    pub fn names(&self) -> BTreeSet<Name> {
        self.base.names.iter().cloned().chain(self.derived.keys().cloned()).collect()
    }

    pub fn iris(&self) -> BTreeSet<Iri> {
        self.names().into_iter().map(|(i, _)| i).collect()
    }
}

struct Sourced<'a> {
    axiom: &'a Axiom,
    from_reference: bool,
}

/// Closure of the schema's resident signature under the reachability and
/// explicit-definition rules, using schema and reference axioms together.
pub fn signature_closure(schema: &Graph, reference: Option<&Graph>) -> SignatureClosure {
    let schema_tbox = Tbox::from_graph(schema);
    let reference_tbox = reference.map(Tbox::from_graph).unwrap_or_default();
    closure_from_parts(resident_signature(schema), &schema_tbox, &reference_tbox)
}

pub fn closure_from_parts(base: ResidentSignature, schema: &Tbox, reference: &Tbox) -> SignatureClosure {
    let axioms: Vec<Sourced<'_>> = schema
        .iter()
        .map(|axiom| Sourced { axiom, from_reference: false })
        .chain(reference.iter().map(|axiom| Sourced { axiom, from_reference: true }))
        .filter(|s| s.axiom.is_logical())
        .collect();

    let mut derived: BTreeMap<Name, DerivedName> = BTreeMap::new();
    let closed = |n: &Name, derived: &BTreeMap<Name, DerivedName>| base.names.contains(n) || derived.contains_key(n);

    loop {
        let mut changed = false;
        for s in &axioms {
            for candidate in witnesses(s.axiom) {
                let Witness { name, needs, weak } = candidate;
                if base.names.contains(&name) {
                    continue;
                }
                if let Some(existing) = derived.get(&name) {
                    if !existing.weak || weak {
                        continue;
                    }
                }
                if !needs.iter().all(|n| closed(n, &derived)) {
                    continue;
                }
                let mut provenance: Vec<String> = Vec::new();
                let mut via_reference = s.from_reference;
                for n in &needs {
                    if let Some(d) = derived.get(n) {
                        via_reference |= d.via_reference;
                        for step in &d.provenance {
                            if !provenance.contains(step) {
                                provenance.push(step.clone());
                            }
                        }
                    }
                }
                provenance.push(s.axiom.id());
                derived.insert(
                    name.clone(),
                    DerivedName { name: name.0.clone(), kind: name.1, provenance, weak, via_reference },
                );
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let combined: Vec<&Axiom> = axioms.iter().map(|s| s.axiom).collect();
    let all: Vec<&Axiom> = schema.iter().chain(reference.iter()).collect();
    SignatureClosure { base, derived, cycle_warnings: definition_cycles(&combined), route: assess_route(&all) }
}

struct Witness {
    name: Name,
    needs: Vec<Name>,
    weak: bool,
}

/// Candidate derivations an axiom licenses: `name` joins the closure once
/// every name in `needs` is in it.
fn witnesses(axiom: &Axiom) -> Vec<Witness> {
    let mut out = Vec::new();
    let definition = |n: &Iri, d: &ClassExpr, out: &mut Vec<Witness>| {
        if d.is_malformed() {
            return;
        }
        let mut sig = BTreeSet::new();
        d.names(&mut sig);
        let name = (n.clone(), Kind::Concept);
        if sig.contains(&name) {
            return;
        }
        out.push(Witness { name, needs: sig.into_iter().collect(), weak: false });
    };
    match &axiom.body {
        AxiomBody::SubClassOf(ClassExpr::Named(a), ClassExpr::Named(b)) => {
            out.push(Witness { name: (b.clone(), Kind::Concept), needs: vec![(a.clone(), Kind::Concept)], weak: false });
            out.push(Witness { name: (a.clone(), Kind::Concept), needs: vec![(b.clone(), Kind::Concept)], weak: true });
        }
        AxiomBody::SubPropertyOf(p, q) => {
            out.push(Witness { name: (q.clone(), Kind::Role), needs: vec![(p.clone(), Kind::Role)], weak: false });
            out.push(Witness { name: (p.clone(), Kind::Role), needs: vec![(q.clone(), Kind::Role)], weak: true });
        }
        AxiomBody::EquivalentClasses(a, b) => {
            if let ClassExpr::Named(n) = a {
                definition(n, b, &mut out);
            }
            if let ClassExpr::Named(n) = b {
                definition(n, a, &mut out);
            }
        }
        AxiomBody::EquivalentProperties(p, q) => {
            out.push(Witness { name: (p.clone(), Kind::Role), needs: vec![(q.clone(), Kind::Role)], weak: false });
            out.push(Witness { name: (q.clone(), Kind::Role), needs: vec![(p.clone(), Kind::Role)], weak: false });
        }
        _ => {}
    }
    out
}

/// Strongly connected groups of names linked by expression definitions.
fn definition_cycles(axioms: &[&Axiom]) -> Vec<CycleWarning> {
    let mut graph: DiGraph<Iri, bool> = DiGraph::new();
    let mut nodes: HashMap<Iri, petgraph::graph::NodeIndex> = HashMap::new();
    let mut node = |i: &Iri, graph: &mut DiGraph<Iri, bool>| *nodes.entry(i.clone()).or_insert_with(|| graph.add_node(i.clone()));
    for a in axioms {
        let AxiomBody::EquivalentClasses(x, y) = &a.body else { continue };
        for (n, d) in [(x, y), (y, x)] {
            let ClassExpr::Named(n) = n else { continue };
            let mut sig = BTreeSet::new();
            d.names(&mut sig);
            let from = node(n, &mut graph);
            for (m, _) in sig {
                let to = node(&m, &mut graph);
                graph.add_edge(from, to, d.is_complex());
            }
        }
    }
    let mut warnings = Vec::new();
    for scc in tarjan_scc(&graph) {
        let members: BTreeSet<_> = scc.iter().copied().collect();
        let cyclic_expression = graph.edge_indices().any(|e| {
            let (s, t) = graph.edge_endpoints(e).expect("edge exists");
            graph[e] && members.contains(&s) && members.contains(&t)
        });
        if cyclic_expression {
            let mut cycle: Vec<Iri> = scc.iter().map(|i| graph[*i].clone()).collect();
            cycle.sort();
            warnings.push(CycleWarning { cycle });
        }
    }
    warnings.sort_by(|a, b| a.cycle.cmp(&b.cycle));
    warnings
}

fn assess_route(axioms: &[&Axiom]) -> RouteAssessment {
    let tbox = Tbox { axioms: axioms.iter().map(|a| (*a).clone()).collect() };
    let fragment = detect_fragment_tbox(&tbox);
    let gci = axioms.iter().find(|a| match &a.body {
        AxiomBody::SubClassOf(lhs, _) => lhs.is_complex() || matches!(lhs, ClassExpr::Thing),
        _ => false,
    });
    let missing = "implicit definitions need uniform interpolation or query rewriting, which are not implemented; coverage is a sound lower bound";
    if fragment == DlFragment::OwlFull {
        return RouteAssessment {
            route: GroundingRoute::Unsupported,
            diagnostic: Some(format!("schema is OwlFull; {missing}")),
        };
    }
    if let Some(a) = gci {
        return RouteAssessment {
            route: GroundingRoute::Unsupported,
            diagnostic: Some(format!("general concept inclusion {}; {missing}", a.id())),
        };
    }
    if fragment_leq(fragment, DlFragment::Rdfs) == Some(true) {
        RouteAssessment { route: GroundingRoute::RdfsReachability, diagnostic: None }
    } else {
        RouteAssessment { route: GroundingRoute::DefinitionPatterns, diagnostic: None }
    }
}

pub fn grounding_route(schema: &Graph) -> RouteAssessment {
    let tbox = Tbox::from_graph(schema);
    assess_route(&tbox.iter().collect::<Vec<_>>())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageResult {
    pub score: Ratio<u64>,
    pub covered: BTreeSet<Iri>,
    pub gap: BTreeSet<Iri>,
    /// Gap names present in the closure with the other kind.
    pub kind_mismatch: BTreeSet<Iri>,
    pub via_reference: BTreeSet<Iri>,
    pub weak: BTreeSet<Iri>,
    /// Set when the closure was computed under an unsupported route.
    pub lower_bound: bool,
}

pub fn coverage(task: &TaskSignature, closure: &SignatureClosure) -> Result<CoverageResult, GroundingError> {
    if task.is_empty() {
        return Err(GroundingError::EmptyTaskSignature);
    }
    let mut result = CoverageResult {
        score: Ratio::from_integer(0),
        covered: BTreeSet::new(),
        gap: BTreeSet::new(),
        kind_mismatch: BTreeSet::new(),
        via_reference: BTreeSet::new(),
        weak: BTreeSet::new(),
        lower_bound: closure.route.route == GroundingRoute::Unsupported,
    };
    for (name, kind) in &task.entries {
        if closure.contains(name, *kind) {
            result.covered.insert(name.clone());
            if let Some(d) = closure.derived.get(&(name.clone(), *kind)) {
                if d.via_reference {
                    result.via_reference.insert(name.clone());
                }
                if d.weak {
                    result.weak.insert(name.clone());
                }
            }
        } else {
            let other = match kind {
                Kind::Concept => Kind::Role,
                Kind::Role => Kind::Concept,
            };
            if closure.contains(name, other) {
                result.kind_mismatch.insert(name.clone());
            }
        }
    }
    // A name listed with both kinds may be covered under one and missing
    // under the other; it counts as covered.
    let names = task.names();
    result.gap = names.iter().filter(|n| !result.covered.contains(*n)).cloned().collect();
    result.kind_mismatch.retain(|n| result.gap.contains(n));
    result.score = Ratio::new(result.covered.len() as u64, names.len() as u64);
    Ok(result)
}
