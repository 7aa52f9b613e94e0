//! Profile documents: an [`AapProfile`] written as an RDF graph in the AAP
//! vocabulary, and read back.
//!
//! Every node is named: sub-nodes hang off the profile IRI, which is the KG id
//! followed by `#aap` (or `-aap` when the id already has a fragment).

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use thiserror::Error;

use crate::discoverability::{Band, DiscoverabilityScore, MetadataVerdict};
use crate::expressivity::{DlFragment, ExpressivityProfile};
use crate::graph::{parse_graph, serialize_graph, Graph, GraphError, GraphIndex, Iri, Literal, RdfFormat, Subject, Term, Triple};
use crate::grounding::{
    CoverageResult, CycleWarning, DerivedName, GroundingRoute, ResidentSignature, RouteAssessment, SignatureClosure,
};
use crate::profile::{AapProfile, Provenance, TaskAssessment};
use crate::tbox::{AxiomKind, Kind};
use crate::trust::{
    ClosureDeclaration, ClosureSemantics, ConsistencyLevel, ConsistencyStatus, EntailmentRegime, RegimeConflict,
    TrustScopeProfile,
};
use crate::vocab::{aap, iri, rdf, xsd};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no aap:Profile node in document")]
    NoProfile,
    #[error("several aap:Profile nodes in document")]
    SeveralProfiles,
    #[error("<{node}> lacks {property}")]
    Missing { node: String, property: &'static str },
    #[error("<{node}> has an invalid {property}: {message}")]
    Invalid { node: String, property: &'static str, message: String },
}

pub fn profile_iri(kg_id: &Iri) -> Iri {
    let sep = if kg_id.as_str().contains('#') { "-aap" } else { "#aap" };
    Iri::new(format!("{kg_id}{sep}")).expect("suffix keeps the IRI valid")
}

fn node(base: &Iri, suffix: &str) -> Iri {
    Iri::new(format!("{base}-{suffix}")).expect("suffix keeps the IRI valid")
}

fn ratio_literal(r: Ratio<u64>) -> Term {
    Term::Literal(Literal::string(format!("{}/{}", r.numer(), r.denom())))
}

fn parse_ratio(s: &str) -> Option<Ratio<u64>> {
    let (n, d) = s.split_once('/')?;
    let (n, d): (u64, u64) = (n.trim().parse().ok()?, d.trim().parse().ok()?);
    (d != 0).then(|| Ratio::new(n, d))
}

fn bool_literal(b: bool) -> Term {
    Term::Literal(Literal::typed(b.to_string(), iri(xsd::BOOLEAN)))
}

fn json_literal<T: serde::Serialize>(value: &T) -> Term {
    let text = serde_json::to_string(value).expect("plain data serializes");
    Term::Literal(Literal::typed(text, iri(rdf::JSON)))
}

fn aap_term(local: &str) -> Term {
    Term::Iri(Iri::new(format!("{}{local}", aap::NS)).expect("aap term"))
}

struct Writer {
    graph: Graph,
}

impl Writer {
    fn add(&mut self, s: &Iri, p: &str, o: Term) {
        self.graph.insert(Triple::new(s.clone(), iri(p), o));
    }

    fn add_iri(&mut self, s: &Iri, p: &str, o: &Iri) {
        self.add(s, p, Term::Iri(o.clone()));
    }

    fn add_str(&mut self, s: &Iri, p: &str, o: &str) {
        self.add(s, p, Term::Literal(Literal::string(o)));
    }
}

/// The RDF form of `profile`.
pub fn profile_to_graph(profile: &AapProfile) -> Graph {
    let mut w = Writer { graph: Graph::new() };
    let me = profile_iri(&profile.kg_id);
    w.add_iri(&me, rdf::TYPE, &iri(aap::PROFILE));
    w.add_iri(&me, aap::PROFILE_OF, &profile.kg_id);

    let e = &profile.expressivity;
    w.add(&me, aap::FRAGMENT, aap_term(e.fragment.name()));
    w.add(&me, aap::CONFORMANCE_RATIO, ratio_literal(e.conformance_ratio));
    for (kind, count) in &e.axiom_census {
        let n = node(&me, &format!("census-{}", kind.name()));
        w.add_iri(&me, aap::CENSUS_ENTRY, &n);
        w.add_str(&n, aap::AXIOM_KIND, kind.name());
        w.add(&n, aap::COUNT, Term::Literal(Literal::typed(count.to_string(), iri(xsd::INTEGER))));
    }
    w.add(&me, aap::DIAGNOSTIC, json_literal(&e.diagnostics));

    write_trust(&mut w, &me, &profile.trust);

    let d = &profile.discoverability;
    w.add(&me, aap::DISCOVERABILITY, ratio_literal(d.value));
    w.add_str(&me, aap::DISCOVERABILITY_BAND, d.band.name());

    for (i, (task, a)) in profile.per_task.iter().enumerate() {
        let n = node(&me, &format!("task-{}", i + 1));
        w.add_iri(&me, aap::TASK_ASSESSMENT, &n);
        w.add_iri(&n, aap::TASK, task);
        let c = &a.coverage;
        w.add(&n, aap::COVERAGE, ratio_literal(c.score));
        for (p, names) in [
            (aap::GROUNDED_NAME, &c.covered),
            (aap::UNGROUNDED_NAME, &c.gap),
            (aap::KIND_MISMATCH, &c.kind_mismatch),
            (aap::VIA_REFERENCE_NAME, &c.via_reference),
            (aap::WEAK_NAME, &c.weak),
            (aap::MODULE_NAME, &a.module_signature),
        ] {
            for name in names {
                w.add_iri(&n, p, name);
            }
        }
        w.add(&n, aap::LOWER_BOUND, bool_literal(c.lower_bound));
        w.add_iri(&n, aap::METADATA_VERDICT, &iri(a.metadata_verdict.iri()));
    }

    if let Some(closure) = &profile.closure {
        write_closure(&mut w, &me, closure);
    }

    w.add(&me, aap::WARNING, json_literal(&profile.warnings));
    let p = &profile.provenance;
    w.add_str(&me, aap::TOOL_VERSION, &p.tool_version);
    w.add(&me, aap::INPUT_DIGEST, json_literal(&p.input_digests));
    w.add_str(&me, aap::GENERATED_AT, &p.generated_at);
    w.graph
}

fn write_trust(w: &mut Writer, me: &Iri, t: &TrustScopeProfile) {
    let n = node(me, "trust");
    w.add_iri(me, aap::CLOSURE, &n);
    w.add_iri(&n, aap::ENTAILMENT_REGIME, &iri(t.regime.iri()));
    w.add_iri(&n, aap::CONSISTENCY_STATUS, &iri(t.consistency.level.iri()));
    if let Some(src) = &t.consistency.certificate_source {
        w.add_iri(&n, aap::CERTIFIED_BY, src);
    }
    for (i, c) in t.closures.iter().enumerate() {
        let cn = node(me, &format!("closure-{}", i + 1));
        w.add_iri(&n, aap::CLOSED_PREDICATE, &cn);
        w.add_iri(&cn, aap::NAME, &c.predicate);
        w.add_iri(&cn, aap::CLOSURE_SEMANTICS, &iri(c.semantics.iri()));
        w.add_str(&cn, aap::CLOSURE_SOURCE, &c.source);
        if let Some(tc) = &c.target_class {
            w.add_iri(&cn, aap::TARGET_CLASS, tc);
        }
    }
    if let Some(conflict) = &t.conflict {
        let cn = node(me, "conflict");
        w.add_iri(&n, aap::REGIME_CONFLICT, &cn);
        w.add_iri(&cn, aap::DECLARED_REGIME, &iri(conflict.declared.iri()));
        w.add(&cn, aap::FRAGMENT, aap_term(conflict.maximum.name()));
    }
    w.add(&n, aap::DIAGNOSTIC, json_literal(&t.diagnostics));
}

fn kind_term(k: Kind) -> Term {
    match k {
        Kind::Concept => Term::Iri(iri(aap::CONCEPT)),
        Kind::Role => Term::Iri(iri(aap::ROLE)),
    }
}

fn write_closure(w: &mut Writer, me: &Iri, c: &SignatureClosure) {
    let n = node(me, "grounding");
    w.add_iri(me, aap::GROUNDING_ROUTE, &n);
    w.add(&n, aap::GROUNDING_ROUTE, aap_term(c.route.route.name()));
    if let Some(d) = &c.route.diagnostic {
        w.add_str(&n, aap::DIAGNOSTIC, d);
    }
    for (name, kind) in &c.base.names {
        let p = if *kind == Kind::Concept { aap::RESIDENT_CONCEPT } else { aap::RESIDENT_ROLE };
        w.add_iri(&n, p, name);
    }
    for (i, d) in c.derived.values().enumerate() {
        let dn = node(me, &format!("derived-{}", i + 1));
        w.add_iri(&n, aap::DERIVED_NAME, &dn);
        w.add_iri(&dn, aap::NAME, &d.name);
        w.add(&dn, aap::KIND, kind_term(d.kind));
        w.add(&dn, aap::PROVENANCE, json_literal(&d.provenance));
        w.add(&dn, aap::WEAK, bool_literal(d.weak));
        w.add(&dn, aap::VIA_REFERENCE, bool_literal(d.via_reference));
    }
    let cycles: Vec<&Vec<Iri>> = c.cycle_warnings.iter().map(|w| &w.cycle).collect();
    w.add(&n, aap::CYCLE_WARNING, json_literal(&cycles));
}

/// Turtle bytes of the profile document.
pub fn emit_document(profile: &AapProfile) -> Vec<u8> {
    serialize_graph(&profile_to_graph(profile), RdfFormat::Turtle)
}

struct Reader<'g> {
    index: GraphIndex<'g>,
}

impl<'g> Reader<'g> {
    fn objects(&self, s: &Iri, p: &str) -> Vec<&'g Term> {
        self.index.objects(&Subject::Iri(s.clone()), p).collect()
    }

    fn one(&self, s: &Iri, p: &'static str) -> Result<&'g Term, DocumentError> {
        self.index
            .object(&Subject::Iri(s.clone()), p)
            .ok_or_else(|| DocumentError::Missing { node: s.to_string(), property: p })
    }

    fn invalid(s: &Iri, p: &'static str, message: impl Into<String>) -> DocumentError {
        DocumentError::Invalid { node: s.to_string(), property: p, message: message.into() }
    }

    fn iri(&self, s: &Iri, p: &'static str) -> Result<Iri, DocumentError> {
        self.one(s, p)?.as_iri().cloned().ok_or_else(|| Self::invalid(s, p, "expected an IRI"))
    }

    fn lexical(&self, s: &Iri, p: &'static str) -> Result<String, DocumentError> {
        self.one(s, p)?
            .as_literal()
            .map(|l| l.lexical().to_string())
            .ok_or_else(|| Self::invalid(s, p, "expected a literal"))
    }

    fn ratio(&self, s: &Iri, p: &'static str) -> Result<Ratio<u64>, DocumentError> {
        let text = self.lexical(s, p)?;
        parse_ratio(&text).ok_or_else(|| Self::invalid(s, p, format!("`{text}` is not n/d")))
    }

    fn boolean(&self, s: &Iri, p: &'static str) -> Result<bool, DocumentError> {
        self.one(s, p)?.as_literal().and_then(Literal::as_bool).ok_or_else(|| Self::invalid(s, p, "expected a boolean"))
    }

    fn json<T: serde::de::DeserializeOwned>(&self, s: &Iri, p: &'static str) -> Result<T, DocumentError> {
        let text = self.lexical(s, p)?;
        serde_json::from_str(&text).map_err(|e| Self::invalid(s, p, e.to_string()))
    }

    fn iris(&self, s: &Iri, p: &str) -> BTreeSet<Iri> {
        self.objects(s, p).into_iter().filter_map(Term::as_iri).cloned().collect()
    }

    fn aap_enum<T>(&self, s: &Iri, p: &'static str, parse: impl Fn(&str) -> Option<T>) -> Result<T, DocumentError> {
        let i = self.iri(s, p)?;
        i.as_str()
            .strip_prefix(aap::NS)
            .and_then(&parse)
            .ok_or_else(|| Self::invalid(s, p, format!("unknown value <{i}>")))
    }
}

fn fragment_from_name(s: &str) -> Option<DlFragment> {
    s.parse().ok()
}

/// Reads the single profile described by `g`.
pub fn profile_from_graph(g: &Graph) -> Result<AapProfile, DocumentError> {
    let mut profiles = g
        .with_predicate(rdf::TYPE)
        .filter(|t| t.object.as_iri().is_some_and(|o| o.as_str() == aap::PROFILE))
        .filter_map(|t| t.subject.as_iri());
    let me = profiles.next().ok_or(DocumentError::NoProfile)?.clone();
    if profiles.next().is_some() {
        return Err(DocumentError::SeveralProfiles);
    }
    let r = Reader { index: g.index() };
    let kg_id = r.iri(&me, aap::PROFILE_OF)?;

    let mut axiom_census = BTreeMap::new();
    for entry in r.iris(&me, aap::CENSUS_ENTRY) {
        let name = r.lexical(&entry, aap::AXIOM_KIND)?;
        let kind = AxiomKind::from_name(&name)
            .ok_or_else(|| Reader::invalid(&entry, aap::AXIOM_KIND, format!("unknown axiom kind `{name}`")))?;
        let count = r.lexical(&entry, aap::COUNT)?;
        let count = count.parse().map_err(|_| Reader::invalid(&entry, aap::COUNT, format!("`{count}` is not a count")))?;
        axiom_census.insert(kind, count);
    }
    let expressivity = ExpressivityProfile {
        fragment: r.aap_enum(&me, aap::FRAGMENT, fragment_from_name)?,
        conformance_ratio: r.ratio(&me, aap::CONFORMANCE_RATIO)?,
        axiom_census,
        diagnostics: r.json(&me, aap::DIAGNOSTIC)?,
    };

    let trust = read_trust(&r, &r.iri(&me, aap::CLOSURE)?)?;

    let mut per_task = BTreeMap::new();
    for n in r.iris(&me, aap::TASK_ASSESSMENT) {
        let verdict = r.iri(&n, aap::METADATA_VERDICT)?;
        let metadata_verdict = MetadataVerdict::from_iri(verdict.as_str())
            .ok_or_else(|| Reader::invalid(&n, aap::METADATA_VERDICT, format!("unknown verdict <{verdict}>")))?;
        let coverage = CoverageResult {
            score: r.ratio(&n, aap::COVERAGE)?,
            covered: r.iris(&n, aap::GROUNDED_NAME),
            gap: r.iris(&n, aap::UNGROUNDED_NAME),
            kind_mismatch: r.iris(&n, aap::KIND_MISMATCH),
            via_reference: r.iris(&n, aap::VIA_REFERENCE_NAME),
            weak: r.iris(&n, aap::WEAK_NAME),
            lower_bound: r.boolean(&n, aap::LOWER_BOUND)?,
        };
        per_task.insert(
            r.iri(&n, aap::TASK)?,
            TaskAssessment { coverage, module_signature: r.iris(&n, aap::MODULE_NAME), metadata_verdict },
        );
    }

    let band_name = r.lexical(&me, aap::DISCOVERABILITY_BAND)?;
    let verdicts: BTreeMap<Iri, MetadataVerdict> =
        per_task.iter().map(|(t, a)| (t.clone(), a.metadata_verdict)).collect();
    let discoverability = DiscoverabilityScore {
        value: r.ratio(&me, aap::DISCOVERABILITY)?,
        decidable: verdicts.iter().filter(|(_, v)| v.is_decidable()).map(|(t, _)| t.clone()).collect(),
        per_task: verdicts,
        band: Band::from_name(&band_name)
            .ok_or_else(|| Reader::invalid(&me, aap::DISCOVERABILITY_BAND, format!("unknown band `{band_name}`")))?,
    };

    let closure = match r.objects(&me, aap::GROUNDING_ROUTE).first().and_then(|t| t.as_iri()) {
        Some(n) => Some(read_closure(&r, n)?),
        None => None,
    };

    Ok(AapProfile {
        kg_id,
        expressivity,
        trust,
        per_task,
        discoverability,
        closure,
        warnings: r.json(&me, aap::WARNING)?,
        provenance: Provenance {
            tool_version: r.lexical(&me, aap::TOOL_VERSION)?,
            input_digests: r.json(&me, aap::INPUT_DIGEST)?,
            generated_at: r.lexical(&me, aap::GENERATED_AT)?,
        },
    })
}

fn read_trust(r: &Reader<'_>, n: &Iri) -> Result<TrustScopeProfile, DocumentError> {
    let regime_iri = r.iri(n, aap::ENTAILMENT_REGIME)?;
    let regime = EntailmentRegime::from_aap_iri(regime_iri.as_str())
        .ok_or_else(|| Reader::invalid(n, aap::ENTAILMENT_REGIME, format!("unknown regime <{regime_iri}>")))?;
    let level_iri = r.iri(n, aap::CONSISTENCY_STATUS)?;
    let level = ConsistencyLevel::from_iri(level_iri.as_str())
        .ok_or_else(|| Reader::invalid(n, aap::CONSISTENCY_STATUS, format!("unknown status <{level_iri}>")))?;
    let certificate_source = r.objects(n, aap::CERTIFIED_BY).first().and_then(|t| t.as_iri()).cloned();

    let mut closures = BTreeSet::new();
    for cn in r.iris(n, aap::CLOSED_PREDICATE) {
        let sem = r.iri(&cn, aap::CLOSURE_SEMANTICS)?;
        let semantics = ClosureSemantics::from_iri(sem.as_str())
            .ok_or_else(|| Reader::invalid(&cn, aap::CLOSURE_SEMANTICS, format!("unknown semantics <{sem}>")))?;
        closures.insert(ClosureDeclaration {
            predicate: r.iri(&cn, aap::NAME)?,
            semantics,
            source: r.lexical(&cn, aap::CLOSURE_SOURCE)?,
            target_class: r.objects(&cn, aap::TARGET_CLASS).first().and_then(|t| t.as_iri()).cloned(),
        });
    }

    let conflict = match r.objects(n, aap::REGIME_CONFLICT).first().and_then(|t| t.as_iri()) {
        Some(cn) => {
            let d = r.iri(cn, aap::DECLARED_REGIME)?;
            Some(RegimeConflict {
                declared: EntailmentRegime::from_aap_iri(d.as_str())
                    .ok_or_else(|| Reader::invalid(cn, aap::DECLARED_REGIME, format!("unknown regime <{d}>")))?,
                maximum: r.aap_enum(cn, aap::FRAGMENT, fragment_from_name)?,
            })
        }
        None => None,
    };

    Ok(TrustScopeProfile {
        consistency: ConsistencyStatus { level, certificate_source },
        regime,
        closures,
        conflict,
        diagnostics: r.json(n, aap::DIAGNOSTIC)?,
    })
}

fn read_kind(r: &Reader<'_>, n: &Iri) -> Result<Kind, DocumentError> {
    match r.iri(n, aap::KIND)?.as_str() {
        aap::CONCEPT => Ok(Kind::Concept),
        aap::ROLE => Ok(Kind::Role),
        other => Err(Reader::invalid(n, aap::KIND, format!("unknown kind <{other}>"))),
    }
}

fn read_closure(r: &Reader<'_>, n: &Iri) -> Result<SignatureClosure, DocumentError> {
    let route = r.aap_enum(n, aap::GROUNDING_ROUTE, GroundingRoute::from_name)?;
    let diagnostic = r.objects(n, aap::DIAGNOSTIC).first().and_then(|t| t.as_literal()).map(|l| l.lexical().to_string());

    let mut names = BTreeSet::new();
    names.extend(r.iris(n, aap::RESIDENT_CONCEPT).into_iter().map(|i| (i, Kind::Concept)));
    names.extend(r.iris(n, aap::RESIDENT_ROLE).into_iter().map(|i| (i, Kind::Role)));

    let mut derived = BTreeMap::new();
    for dn in r.iris(n, aap::DERIVED_NAME) {
        let d = DerivedName {
            name: r.iri(&dn, aap::NAME)?,
            kind: read_kind(r, &dn)?,
            provenance: r.json(&dn, aap::PROVENANCE)?,
            weak: r.boolean(&dn, aap::WEAK)?,
            via_reference: r.boolean(&dn, aap::VIA_REFERENCE)?,
        };
        derived.insert((d.name.clone(), d.kind), d);
    }

    let cycles: Vec<Vec<Iri>> = r.json(n, aap::CYCLE_WARNING)?;
    Ok(SignatureClosure {
        base: ResidentSignature { names },
        derived,
        cycle_warnings: cycles.into_iter().map(|cycle| CycleWarning { cycle }).collect(),
        route: RouteAssessment { route, diagnostic },
    })
}

/// Parses Turtle bytes of a profile document.
pub fn load_document(bytes: &[u8]) -> Result<AapProfile, DocumentError> {
    profile_from_graph(&parse_graph(bytes, RdfFormat::Turtle)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{parse_graph, RdfFormat};

    #[test]
    fn fixture_profiles_round_trip() {
        for p in fixtures::profiles() {
            let bytes = emit_document(p);
            assert_eq!(&load_document(&bytes).unwrap(), p);
            assert_eq!(emit_document(&load_document(&bytes).unwrap()), bytes);
        }
    }

    #[test]
    fn documents_have_no_blank_nodes() {
        for p in fixtures::profiles() {
            let g = parse_graph(&emit_document(p), RdfFormat::Turtle).unwrap();
            assert!(g.blank_nodes().is_empty());
            assert_eq!(g, profile_to_graph(p));
        }
    }

    #[test]
    fn profile_iri_shapes() {
        assert_eq!(profile_iri(&Iri::new("http://x.org/kg").unwrap()).as_str(), "http://x.org/kg#aap");
        assert_eq!(profile_iri(&Iri::new("http://x.org/o#kg").unwrap()).as_str(), "http://x.org/o#kg-aap");
    }

    #[test]
    fn non_profile_graph_is_rejected() {
        assert!(matches!(load_document(b"<http://a> <http://b> <http://c> ."), Err(DocumentError::NoProfile)));
        assert!(load_document(b"not turtle at all").is_err());
    }
}
