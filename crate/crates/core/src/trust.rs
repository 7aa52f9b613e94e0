//! Dimension R: consistency status, entailment regime and completeness scope.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::expressivity::{fragment_leq, DlFragment};
use crate::graph::{Graph, GraphIndex, Iri, Subject, Term};
use crate::vocab::{aap, ent, iri, owl_profile, sd, sh};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConsistencyLevel {
    Uncertified,
    TboxConsistent,
    JointlyConsistent,
}

impl ConsistencyLevel {
    pub const ALL: [ConsistencyLevel; 3] =
        [ConsistencyLevel::Uncertified, ConsistencyLevel::TboxConsistent, ConsistencyLevel::JointlyConsistent];

    pub fn name(self) -> &'static str {
        match self {
            ConsistencyLevel::Uncertified => "Uncertified",
            ConsistencyLevel::TboxConsistent => "TboxConsistent",
            ConsistencyLevel::JointlyConsistent => "JointlyConsistent",
        }
    }

    pub fn iri(self) -> &'static str {
        match self {
            ConsistencyLevel::Uncertified => aap::UNCERTIFIED,
            ConsistencyLevel::TboxConsistent => aap::TBOX_CONSISTENT,
            ConsistencyLevel::JointlyConsistent => aap::JOINTLY_CONSISTENT,
        }
    }

    pub fn from_iri(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.iri() == s)
    }
}

impl FromStr for ConsistencyLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown consistency status `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyStatus {
    pub level: ConsistencyLevel,
    pub certificate_source: Option<Iri>,
}

impl Default for ConsistencyStatus {
    fn default() -> Self {
        ConsistencyStatus { level: ConsistencyLevel::Uncertified, certificate_source: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EntailmentRegime {
    Simple,
    Rdfs,
    OwlEl,
    OwlQl,
    OwlRl,
    OwlDl,
}

impl EntailmentRegime {
    pub const ALL: [EntailmentRegime; 6] = [
        EntailmentRegime::Simple,
        EntailmentRegime::Rdfs,
        EntailmentRegime::OwlEl,
        EntailmentRegime::OwlQl,
        EntailmentRegime::OwlRl,
        EntailmentRegime::OwlDl,
    ];

    pub fn as_fragment(self) -> DlFragment {
        match self {
            EntailmentRegime::Simple => DlFragment::RdfOnly,
            EntailmentRegime::Rdfs => DlFragment::Rdfs,
            EntailmentRegime::OwlEl => DlFragment::OwlEl,
            EntailmentRegime::OwlQl => DlFragment::OwlQl,
            EntailmentRegime::OwlRl => DlFragment::OwlRl,
            EntailmentRegime::OwlDl => DlFragment::OwlDl,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EntailmentRegime::Simple => "Simple",
            EntailmentRegime::Rdfs => "Rdfs",
            EntailmentRegime::OwlEl => "OwlEl",
            EntailmentRegime::OwlQl => "OwlQl",
            EntailmentRegime::OwlRl => "OwlRl",
            EntailmentRegime::OwlDl => "OwlDl",
        }
    }

    pub fn iri(self) -> &'static str {
        match self {
            EntailmentRegime::Simple => aap::SIMPLE,
            EntailmentRegime::Rdfs => aap::RDFS,
            EntailmentRegime::OwlEl => aap::OWL_EL,
            EntailmentRegime::OwlQl => aap::OWL_QL,
            EntailmentRegime::OwlRl => aap::OWL_RL,
            EntailmentRegime::OwlDl => aap::OWL_DL,
        }
    }

    pub fn from_aap_iri(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.iri() == s)
    }

    /// Greatest lower bound.
    pub fn meet(self, other: Self) -> Self {
        match regime_leq(self, other) {
            Some(true) => self,
            Some(false) => other,
            None => EntailmentRegime::Rdfs,
        }
    }
}

impl fmt::Display for EntailmentRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EntailmentRegime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| format!("unknown entailment regime `{s}`"))
    }
}

pub fn regime_leq(a: EntailmentRegime, b: EntailmentRegime) -> Option<bool> {
    fragment_leq(a.as_fragment(), b.as_fragment())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClosureSemantics {
    GlobalCwa,
    PredicateLcwa,
    ShaclClosedShape,
}

impl ClosureSemantics {
    pub fn iri(self) -> &'static str {
        match self {
            ClosureSemantics::GlobalCwa => aap::GLOBAL_CWA,
            ClosureSemantics::PredicateLcwa => aap::PREDICATE_LCWA,
            ClosureSemantics::ShaclClosedShape => aap::SHACL_CLOSED_SHAPE,
        }
    }

    pub fn from_iri(s: &str) -> Option<Self> {
        [ClosureSemantics::GlobalCwa, ClosureSemantics::PredicateLcwa, ClosureSemantics::ShaclClosedShape]
            .into_iter()
            .find(|c| c.iri() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClosureDeclaration {
    /// The closed name; `aap:AllPredicates` for a global closed-world declaration.
    pub predicate: Iri,
    pub semantics: ClosureSemantics,
    pub source: String,
    pub target_class: Option<Iri>,
}

impl ClosureDeclaration {
    pub fn global(source: impl Into<String>) -> Self {
        ClosureDeclaration {
            predicate: iri(aap::ALL_PREDICATES),
            semantics: ClosureSemantics::GlobalCwa,
            source: source.into(),
            target_class: None,
        }
    }

    pub fn predicate_lcwa(predicate: Iri, source: impl Into<String>) -> Self {
        ClosureDeclaration { predicate, semantics: ClosureSemantics::PredicateLcwa, source: source.into(), target_class: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeConflict {
    pub declared: EntailmentRegime,
    pub maximum: DlFragment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrustScopeProfile {
    pub consistency: ConsistencyStatus,
    pub regime: EntailmentRegime,
    pub closures: BTreeSet<ClosureDeclaration>,
    /// Set when the declared regime exceeded the schema fragment and was clamped.
    pub conflict: Option<RegimeConflict>,
    pub diagnostics: Vec<String>,
}

impl Default for TrustScopeProfile {
    fn default() -> Self {
        TrustScopeProfile {
            consistency: ConsistencyStatus::default(),
            regime: EntailmentRegime::Simple,
            closures: BTreeSet::new(),
            conflict: None,
            diagnostics: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosedPredicates {
    All,
    Some(BTreeSet<Iri>),
}

impl ClosedPredicates {
    pub fn contains(&self, p: &Iri) -> bool {
        match self {
            ClosedPredicates::All => true,
            ClosedPredicates::Some(s) => s.contains(p),
        }
    }

    pub fn is_superset(&self, other: &ClosedPredicates) -> bool {
        match (self, other) {
            (ClosedPredicates::All, _) => true,
            (ClosedPredicates::Some(_), ClosedPredicates::All) => false,
            (ClosedPredicates::Some(a), ClosedPredicates::Some(b)) => b.is_subset(a),
        }
    }
}

pub fn closed_predicates(profile: &TrustScopeProfile) -> ClosedPredicates {
    if profile.closures.iter().any(|c| c.semantics == ClosureSemantics::GlobalCwa) {
        ClosedPredicates::All
    } else {
        ClosedPredicates::Some(profile.closures.iter().map(|c| c.predicate.clone()).collect())
    }
}

impl TrustScopeProfile {
    /// Componentwise dominance: regime, closed predicates, consistency.
    pub fn dominates(&self, other: &TrustScopeProfile) -> bool {
        regime_leq(other.regime, self.regime) == Some(true)
            && closed_predicates(self).is_superset(&closed_predicates(other))
            && self.consistency.level >= other.consistency.level
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpistemicRequirement {
    pub min_regime: EntailmentRegime,
    pub closed_predicates_needed: BTreeSet<Iri>,
    pub min_consistency: ConsistencyLevel,
}

impl Default for EpistemicRequirement {
    fn default() -> Self {
        EpistemicRequirement {
            min_regime: EntailmentRegime::Simple,
            closed_predicates_needed: BTreeSet::new(),
            min_consistency: ConsistencyLevel::Uncertified,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shortfall {
    Regime { required: EntailmentRegime, declared: EntailmentRegime },
    Closure { missing: BTreeSet<Iri> },
    Consistency { required: ConsistencyLevel, declared: ConsistencyLevel },
}

impl fmt::Display for Shortfall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shortfall::Regime { required, declared } => write!(f, "regime {declared} does not reach {required}"),
            Shortfall::Closure { missing } => {
                let names: Vec<String> = missing.iter().map(|m| format!("<{m}>")).collect();
                write!(f, "no closure declared for {}", names.join(", "))
            }
            Shortfall::Consistency { required, declared } => {
                write!(f, "consistency {} below {}", declared.name(), required.name())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Satisfaction {
    pub holds: bool,
    pub shortfall: Option<Shortfall>,
}

pub fn satisfies(profile: &TrustScopeProfile, req: &EpistemicRequirement) -> Satisfaction {
    let fail = |s: Shortfall| Satisfaction { holds: false, shortfall: Some(s) };
    if regime_leq(req.min_regime, profile.regime) != Some(true) {
        return fail(Shortfall::Regime { required: req.min_regime, declared: profile.regime });
    }
    let closed = closed_predicates(profile);
    let missing: BTreeSet<Iri> = req.closed_predicates_needed.iter().filter(|p| !closed.contains(p)).cloned().collect();
    if !missing.is_empty() {
        return fail(Shortfall::Closure { missing });
    }
    if profile.consistency.level < req.min_consistency {
        return fail(Shortfall::Consistency { required: req.min_consistency, declared: profile.consistency.level });
    }
    Satisfaction { holds: true, shortfall: None }
}

/// Regime statements in a metadata graph, before any clamping.
///
/// SPARQL service descriptions and `aap:entailmentRegime` are both read;
/// several declarations combine to their meet. `None` when nothing is declared.
pub fn declared_regime(metadata: &Graph) -> (Option<EntailmentRegime>, Vec<String>) {
    let mut diagnostics = Vec::new();
    let mut profiles: Option<EntailmentRegime> = None;
    for t in metadata.iter() {
        if matches!(t.predicate.as_str(), sd::SUPPORTED_ENTAILMENT_PROFILE | sd::DEFAULT_SUPPORTED_ENTAILMENT_PROFILE) {
            let p = match t.object.as_iri().map(Iri::as_str) {
                Some(owl_profile::EL) => Some(EntailmentRegime::OwlEl),
                Some(owl_profile::QL) => Some(EntailmentRegime::OwlQl),
                Some(owl_profile::RL) => Some(EntailmentRegime::OwlRl),
                Some(owl_profile::DL) | Some(owl_profile::FULL) => Some(EntailmentRegime::OwlDl),
                _ => None,
            };
            if let Some(p) = p {
                profiles = Some(profiles.map_or(p, |q| q.meet(p)));
            }
        }
    }

    let mut regime: Option<EntailmentRegime> = None;
    for t in metadata.iter() {
        let declared = match t.predicate.as_str() {
            sd::DEFAULT_ENTAILMENT_REGIME | sd::ENTAILMENT_REGIME => match t.object.as_iri().map(Iri::as_str) {
                Some(ent::SIMPLE | ent::RDF | ent::D) => Some(EntailmentRegime::Simple),
                Some(ent::RDFS) => Some(EntailmentRegime::Rdfs),
                Some(ent::OWL_DIRECT) => Some(profiles.unwrap_or(EntailmentRegime::OwlDl)),
                Some(ent::OWL_RDF_BASED) => Some(profiles.map_or(EntailmentRegime::OwlDl, |p| p.meet(EntailmentRegime::OwlDl))),
                _ => {
                    diagnostics.push(format!("unrecognised entailment regime {}", render(&t.object)));
                    None
                }
            },
            aap::ENTAILMENT_REGIME => {
                let r = t.object.as_iri().and_then(|o| EntailmentRegime::from_aap_iri(o.as_str()));
                if r.is_none() {
                    diagnostics.push(format!("unrecognised entailment regime {}", render(&t.object)));
                }
                r
            }
            _ => None,
        };
        if let Some(d) = declared {
            regime = Some(regime.map_or(d, |r| r.meet(d)));
        }
    }
    (regime, diagnostics)
}

fn render(t: &Term) -> String {
    match t {
        Term::Iri(i) => format!("<{i}>"),
        Term::Blank(_) => "[]".into(),
        Term::Literal(l) => format!("{:?}", l.lexical()),
    }
}

fn render_subject(s: &Subject) -> String {
    render(&s.to_term())
}

/// Closed SHACL node shapes with a target class. Each contributes the target
/// class itself and every named property path not listed as ignored.
pub fn shacl_closures(graph: &Graph) -> Vec<ClosureDeclaration> {
    let index = graph.index();
    let mut out = Vec::new();
    for t in graph.with_predicate(sh::CLOSED) {
        if t.object.as_literal().and_then(|l| l.as_bool()) != Some(true) {
            continue;
        }
        let shape = &t.subject;
        let source = format!("shape {}", render_subject(shape));
        let ignored: BTreeSet<&Iri> = index
            .objects(shape, sh::IGNORED_PROPERTIES)
            .filter_map(|head| index.list(head))
            .flat_map(|(items, _)| items)
            .filter_map(Term::as_iri)
            .collect();
        let paths = property_paths(&index, shape);
        for target in index.objects(shape, sh::TARGET_CLASS).filter_map(Term::as_iri) {
            out.push(ClosureDeclaration {
                predicate: target.clone(),
                semantics: ClosureSemantics::ShaclClosedShape,
                source: source.clone(),
                target_class: Some(target.clone()),
            });
            for p in paths.iter().filter(|p| !ignored.contains(*p)) {
                out.push(ClosureDeclaration {
                    predicate: (*p).clone(),
                    semantics: ClosureSemantics::ShaclClosedShape,
                    source: source.clone(),
                    target_class: Some(target.clone()),
                });
            }
        }
    }
    out
}

fn property_paths<'g>(index: &GraphIndex<'g>, shape: &Subject) -> Vec<&'g Iri> {
    index
        .objects(shape, sh::PROPERTY)
        .filter_map(Term::as_subject)
        .filter_map(|ps| index.object(&ps, sh::PATH))
        .filter_map(Term::as_iri)
        .collect()
}

/// Completeness statements in the AAP vocabulary.
pub fn declared_closures(metadata: &Graph) -> Vec<ClosureDeclaration> {
    let index = metadata.index();
    let mut out = Vec::new();
    for t in metadata.iter() {
        match t.predicate.as_str() {
            aap::CLOSED_PREDICATE => {
                let Some(p) = t.object.as_iri() else { continue };
                let semantics = index
                    .object(&t.subject, aap::CLOSURE_SEMANTICS)
                    .and_then(Term::as_iri)
                    .and_then(|s| ClosureSemantics::from_iri(s.as_str()))
                    .unwrap_or(ClosureSemantics::PredicateLcwa);
                let source = format!("statement {}", render_subject(&t.subject));
                if p.as_str() == aap::ALL_PREDICATES || semantics == ClosureSemantics::GlobalCwa {
                    out.push(ClosureDeclaration::global(source));
                } else {
                    let target_class = index.object(&t.subject, aap::TARGET_CLASS).and_then(Term::as_iri).cloned();
                    out.push(ClosureDeclaration { predicate: p.clone(), semantics, source, target_class });
                }
            }
            aap::WORLD_ASSUMPTION if t.object.as_iri().is_some_and(|o| o.as_str() == aap::CLOSED_WORLD) => {
                out.push(ClosureDeclaration::global(format!("statement {}", render_subject(&t.subject))));
            }
            _ => {}
        }
    }
    out
}

/// Lowest declared consistency status, with its certificate source.
pub fn declared_consistency(metadata: &Graph) -> Option<ConsistencyStatus> {
    let index = metadata.index();
    metadata
        .with_predicate(aap::CONSISTENCY_STATUS)
        .filter_map(|t| {
            let level = ConsistencyLevel::from_iri(t.object.as_iri()?.as_str())?;
            let certificate_source = index.object(&t.subject, aap::CERTIFIED_BY).and_then(Term::as_iri).cloned();
            Some(ConsistencyStatus { level, certificate_source })
        })
        .min_by(|a, b| a.level.cmp(&b.level).then_with(|| a.certificate_source.cmp(&b.certificate_source)))
}

/// Trust scope of a KG. Shapes are read from both metadata and schema graphs.
pub fn extract_trust_scope(metadata: &Graph, schema: &Graph, fragment: DlFragment) -> TrustScopeProfile {
    let (declared, mut diagnostics) = declared_regime(metadata);
    let mut conflict = None;
    let regime = match declared {
        None => EntailmentRegime::Simple,
        Some(r) if fragment_leq(r.as_fragment(), fragment) == Some(true) => r,
        Some(r) => {
            diagnostics.push(format!("declared regime {r} exceeds schema fragment {fragment}; clamped to Simple"));
            conflict = Some(RegimeConflict { declared: r, maximum: fragment });
            EntailmentRegime::Simple
        }
    };
    let mut closures: BTreeSet<ClosureDeclaration> = shacl_closures(metadata).into_iter().collect();
    closures.extend(shacl_closures(schema));
    closures.extend(declared_closures(metadata));
    TrustScopeProfile {
        consistency: declared_consistency(metadata).unwrap_or_default(),
        regime,
        closures,
        conflict,
        diagnostics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph, RdfFormat};
    use crate::vocab::rdf;

    fn ttl(s: &str) -> Graph {
        let src = format!(
            "@prefix sd: <{}> . @prefix sh: <{}> . @prefix aap: <{}> . @prefix rdf: <{}> . @prefix ex: <http://example.org/> .\n{s}",
            sd::NS,
            sh::NS,
            aap::NS,
            rdf::NS
        );
        parse_graph(src.as_bytes(), RdfFormat::Turtle).unwrap()
    }

    fn ex(s: &str) -> Iri {
        Iri::new(format!("http://example.org/{s}")).unwrap()
    }

    #[test]
    fn defaults_on_silence() {
        let p = extract_trust_scope(&Graph::new(), &Graph::new(), DlFragment::RdfOnly);
        assert_eq!(p, TrustScopeProfile::default());
    }

    #[test]
    fn owl_direct_narrowed_by_profile() {
        let md = ttl(&format!(
            "ex:svc sd:defaultEntailmentRegime <{}> ; sd:supportedEntailmentProfile <{}> .",
            ent::OWL_DIRECT,
            owl_profile::EL
        ));
        let p = extract_trust_scope(&md, &Graph::new(), DlFragment::OwlEl);
        assert_eq!(p.regime, EntailmentRegime::OwlEl);
        assert!(p.conflict.is_none());
    }

    #[test]
    fn regime_beyond_fragment_is_clamped() {
        let md = ttl(&format!("ex:svc sd:defaultEntailmentRegime <{}> .", ent::OWL_DIRECT));
        let p = extract_trust_scope(&md, &Graph::new(), DlFragment::OwlEl);
        assert_eq!(p.regime, EntailmentRegime::Simple);
        assert_eq!(p.conflict, Some(RegimeConflict { declared: EntailmentRegime::OwlDl, maximum: DlFragment::OwlEl }));
    }

    #[test]
    fn closed_shape_respects_ignored_properties() {
        let md = ttl(concat!(
            "ex:S a sh:NodeShape ; sh:closed true ; sh:targetClass ex:C ;\n",
            "  sh:property [ sh:path ex:p ] , [ sh:path ex:q ] ; sh:ignoredProperties _:l .\n",
            "_:l rdf:first ex:q ; rdf:rest rdf:nil .\n",
            "ex:T a sh:NodeShape ; sh:closed false ; sh:targetClass ex:D ; sh:property [ sh:path ex:r ] .\n",
        ));
        let p = extract_trust_scope(&md, &Graph::new(), DlFragment::RdfOnly);
        assert_eq!(closed_predicates(&p), ClosedPredicates::Some(BTreeSet::from([ex("C"), ex("p")])));
    }

    #[test]
    fn explicit_statements() {
        let md = ttl(concat!(
            "ex:kg aap:closedPredicate ex:p , ex:q .\n",
            "ex:kg aap:consistencyStatus aap:TboxConsistent ; aap:certifiedBy ex:reasoner .\n",
        ));
        let p = extract_trust_scope(&md, &Graph::new(), DlFragment::RdfOnly);
        assert_eq!(closed_predicates(&p), ClosedPredicates::Some(BTreeSet::from([ex("p"), ex("q")])));
        assert_eq!(p.consistency.level, ConsistencyLevel::TboxConsistent);
        assert_eq!(p.consistency.certificate_source, Some(ex("reasoner")));
        let global = extract_trust_scope(&ttl("ex:kg aap:worldAssumption aap:ClosedWorld ."), &Graph::new(), DlFragment::RdfOnly);
        assert_eq!(closed_predicates(&global), ClosedPredicates::All);
    }

    #[test]
    fn shortfall_order() {
        let profile = TrustScopeProfile::default();
        let req = EpistemicRequirement {
            min_regime: EntailmentRegime::OwlEl,
            closed_predicates_needed: BTreeSet::from([ex("p")]),
            min_consistency: ConsistencyLevel::JointlyConsistent,
        };
        assert!(matches!(satisfies(&profile, &req).shortfall, Some(Shortfall::Regime { .. })));
        let profile = TrustScopeProfile { regime: EntailmentRegime::OwlDl, ..profile };
        assert!(matches!(satisfies(&profile, &req).shortfall, Some(Shortfall::Closure { .. })));
        let mut profile = profile;
        profile.closures.insert(ClosureDeclaration::predicate_lcwa(ex("p"), "t"));
        assert!(matches!(satisfies(&profile, &req).shortfall, Some(Shortfall::Consistency { .. })));
        assert!(satisfies(&profile, &EpistemicRequirement::default()).holds);
    }

    #[test]
    fn meet_of_profiles() {
        use EntailmentRegime::*;
        assert_eq!(OwlEl.meet(OwlQl), Rdfs);
        assert_eq!(OwlEl.meet(OwlDl), OwlEl);
        assert_eq!(Simple.meet(OwlDl), Simple);
    }
}
