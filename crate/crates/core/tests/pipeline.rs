mod common;

use aap_core::discoverability::Band;
use aap_core::expressivity::DlFragment;
use aap_core::graph::{parse_graph, Graph, Iri, RdfFormat};
use aap_core::grounding::{coverage, signature_closure, GroundingRoute, TaskSignature};
use aap_core::profile::{build_profile, KgDescriptor};
use aap_core::registry::{emit_document, load_document};
use aap_core::tbox::Kind;
use aap_core::trust::{ClosedPredicates, EntailmentRegime};
use common::*;
use num_rational::Ratio;

#[test]
fn beth_definition_grounds_through_reference() {
    let schema = fixture_graph("beth/schema.ttl");
    let reference = fixture_graph("beth/reference.ttl");
    let invited = conf("Invited_speaker");

    let alone = signature_closure(&schema, None);
    assert!(!alone.contains(&invited, Kind::Concept));

    let closure = signature_closure(&schema, Some(&reference));
    let d = &closure.derived[&(invited.clone(), Kind::Concept)];
    assert!(d.via_reference && !d.weak);
    assert_eq!(d.provenance.len(), 1);

    let task = TaskSignature::new([(invited.clone(), Kind::Concept), (conf("Researcher"), Kind::Concept)]);
    let c = coverage(&task, &closure).unwrap();
    assert_eq!(c.score, Ratio::from_integer(1));
    assert!(c.via_reference.contains(&invited));
}

#[test]
fn kg3_profile_row() {
    let m = manifest();
    let p = build_profile(&m.kgs[2], &m.catalogue, m.reference.as_ref(), STAMP);
    assert_eq!(p.expressivity.fragment, DlFragment::OwlDl);
    assert_eq!(p.discoverability.band, Band::High);
    assert_eq!(p.trust.regime, EntailmentRegime::OwlDl);
    let s = task(&m, "invited-talks");
    assert_eq!(p.per_task[&s.id].coverage.score, Ratio::from_integer(1));
    let closed = aap_core::trust::closed_predicates(&p.trust);
    assert!(closed.contains(&conf("Invited_speaker")));
    assert!(!p.is_partial());
    assert_eq!(p.closure.as_ref().unwrap().route.route, GroundingRoute::DefinitionPatterns);
}

#[test]
fn empty_metadata_gives_defaults() {
    let m = manifest();
    let kg = KgDescriptor {
        kg_id: Iri::new("http://example.org/kg/bare").unwrap(),
        schema: m.kgs[0].schema.clone(),
        data: Graph::new(),
        metadata: Graph::new(),
    };
    let p = build_profile(&kg, &m.catalogue, None, STAMP);
    assert_eq!(p.discoverability.value, Ratio::from_integer(0));
    assert_eq!(p.discoverability.band, Band::Low);
    assert_eq!(p.trust.regime, EntailmentRegime::Simple);
    assert_eq!(aap_core::trust::closed_predicates(&p.trust), ClosedPredicates::Some(Default::default()));
}

#[test]
fn profiles_are_deterministic_modulo_timestamp() {
    let m = manifest();
    for kg in &m.kgs {
        let a = build_profile(kg, &m.catalogue, m.reference.as_ref(), "2024-01-01T00:00:00Z");
        let b = build_profile(kg, &m.catalogue, m.reference.as_ref(), "2025-06-30T12:00:00Z");
        let c = build_profile(kg, &m.catalogue, m.reference.as_ref(), "2024-01-01T00:00:00Z");
        assert_eq!(emit_document(&a), emit_document(&c));
        let mut b = b;
        b.provenance.generated_at = a.provenance.generated_at.clone();
        assert_eq!(emit_document(&a), emit_document(&b));
    }
}

#[test]
fn general_inclusion_marks_profile_partial() {
    let schema = parse_graph(
        format!(
            "{PREFIXES}_:r a owl:Restriction ; owl:onProperty t:r0 ; owl:someValuesFrom t:C1 .\n_:r rdfs:subClassOf t:C2 .\n"
        )
        .as_bytes(),
        RdfFormat::Turtle,
    )
    .unwrap();
    let m = manifest();
    let kg = KgDescriptor { kg_id: t("gci"), schema, data: Graph::new(), metadata: Graph::new() };
    let p = build_profile(&kg, &m.catalogue, None, STAMP);
    assert!(p.is_partial());
    assert!(p.warnings.iter().any(|w| w.starts_with("PartialProfile")));
    assert!(p.per_task.values().all(|a| a.coverage.lower_bound));
    assert_eq!(load_document(&emit_document(&p)).unwrap(), p);
}

#[test]
fn hand_evaluations_hold() {
    use aap_core::matcher::{extract_module, module_signature, rank, MatchConfig};
    use aap_core::registry::report::ratio_str;
    use serde_json::Value;
    use std::collections::BTreeSet;

    let expected: Value = serde_json::from_slice(&std::fs::read(fixture_dir().join("expected.json")).unwrap()).unwrap();
    let m = manifest();
    let ps = profiles(&m);
    let s = task(&m, expected["task"].as_str().unwrap());
    let cfg = MatchConfig::default();
    let local = |v: &Value| -> BTreeSet<Iri> { v.as_array().unwrap().iter().map(|n| conf(n.as_str().unwrap())).collect() };

    for p in &ps {
        let e = &expected["kgs"][p.kg_id.as_str()];
        assert_eq!(p.expressivity.fragment.name(), e["fragment"], "{}", p.kg_id);
        assert_eq!(p.trust.regime.name(), e["regime"]);
        assert_eq!(ratio_str(p.discoverability.value), e["discoverability"]);
        assert_eq!(p.discoverability.band.name(), e["band"]);
        for t in &m.catalogue.tasks {
            assert_eq!(p.discoverability.per_task[&t.id].name(), e["metadataVerdicts"][t.id.local_name()], "{} {}", p.kg_id, t.id);
        }
        let v = aap_core::matcher::feasible(p, s, &cfg).unwrap();
        assert_eq!(ratio_str(v.dimensions.coverage), e["coverage"]);
        assert_eq!(v.detail.coverage.gap, local(&e["gap"]));
        assert_eq!(v.failure_dimension.map(|f| f.name()), e["failureDimension"].as_str());
        assert_eq!(v.remedy.name(), e["remedy"]);
    }
    let verdicts = rank(&ps, s, &cfg);
    let ranking: Vec<&str> = verdicts.iter().map(|v| v.kg_id.as_str()).collect();
    let want: Vec<&str> = expected["ranking"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(ranking, want);

    let module = &expected["conferenceModule"];
    let schema = fixture_graph("conference.ttl");
    let got = module_signature(&extract_module(&schema, &local(&module["seed"])));
    assert_eq!(got, local(&module["signature"]));
    assert!(got.is_disjoint(&local(&module["excluded"])));
}
