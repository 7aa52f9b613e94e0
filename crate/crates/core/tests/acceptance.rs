//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::cell::Cell;
use std::collections::BTreeSet;
use std::path::Path;
use std::time::{Duration, Instant};

use aap_core::discoverability::{discoverability, Band, TaskType};
use aap_core::expressivity::{fragment_leq, DlFragment};
use aap_core::graph::{isomorphic, parse_graph, serialize_graph, Graph, Iri, RdfFormat, Triple};
use aap_core::grounding::{coverage, signature_closure, TaskSignature};
use aap_core::matcher::{compose, extract_module, feasible, rank, FailureDimension, MatchConfig, Remedy};
use aap_core::registry::load_registry;
use aap_core::registry::manifest::populate_registry;
use aap_core::tbox::Kind;
use aap_core::trust::{
    closed_predicates, extract_trust_scope, regime_leq, satisfies, ClosedPredicates, ClosureDeclaration, ConsistencyLevel,
    ConsistencyStatus, EntailmentRegime, EpistemicRequirement, RegimeConflict, TrustScopeProfile,
};
use aap_core::vocab::{aap, void};
use common::*;
use num_rational::Ratio;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture_verdicts() -> Outcome {
    let start = Instant::now();
    let m = manifest();
    let ps = profiles(&m);
    let s = task(&m, "invited-talks");
    let verdicts = rank(&ps, s, &MatchConfig::default());
    let elapsed = start.elapsed();

    let by = |kg: &str| verdicts.iter().find(|v| v.kg_id.local_name() == kg).ok_or(format!("no verdict for {kg}"));
    let (v1, v2, v3) = (by("KG1")?, by("KG2")?, by("KG3")?);
    let d = |v: &aap_core::matcher::FeasibilityVerdict| {
        format!(
            "{} E={} G={} R={} {:?}/{}",
            v.kg_id.local_name(),
            v.dimensions.fragment,
            v.dimensions.coverage,
            v.dimensions.regime,
            v.failure_dimension,
            v.remedy
        )
    };
    check(
        v1.dimensions.fragment == DlFragment::Rdfs
            && v1.dimensions.coverage == Ratio::new(1, 2)
            && v1.dimensions.regime == EntailmentRegime::Simple
            && !v1.feasible
            && v1.failure_dimension == Some(FailureDimension::GFailure)
            && v1.remedy == Remedy::VocabularyMediation,
        || d(v1),
    )?;
    check(
        v2.dimensions.fragment == DlFragment::OwlEl
            && v2.dimensions.coverage == Ratio::from_integer(1)
            && v2.dimensions.regime == EntailmentRegime::OwlEl
            && v2.dimensions.closed_predicates == ClosedPredicates::Some(BTreeSet::new())
            && !v2.feasible
            && v2.failure_dimension == Some(FailureDimension::RFailure)
            && v2.remedy == Remedy::KgReselection,
        || d(v2),
    )?;
    check(
        v3.dimensions.fragment == DlFragment::OwlDl
            && v3.dimensions.coverage == Ratio::from_integer(1)
            && v3.dimensions.closed_predicates.contains(&conf("Invited_speaker"))
            && v3.feasible
            && v3.remedy == Remedy::None,
        || d(v3),
    )?;
    check(verdicts[0].kg_id.local_name() == "KG3", || format!("selected {}", verdicts[0].kg_id))?;
    check(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("KG3 selected, KG1 GFailure, KG2 RFailure in {} ms", elapsed.as_millis()))
}

fn g_formula() -> Outcome {
    let m = manifest();
    let closure = signature_closure(&m.kgs[0].schema, m.reference.as_ref());
    let c = coverage(&task(&m, "invited-talks").signature, &closure).map_err(|e| e.to_string())?;
    let gap: BTreeSet<Iri> = ["Invited_speaker", "Conference", "givenAt"].into_iter().map(conf).collect();
    check(c.score == Ratio::new(1, 2), || format!("G = {}", c.score))?;
    check(c.gap == gap, || format!("gap {:?}", c.gap))?;
    Ok("G(KG1) = 1/2, gap {Invited_speaker, Conference, givenAt}".into())
}

fn d_bands() -> Outcome {
    let m = manifest();
    let ds: Vec<_> = m.kgs.iter().map(|kg| discoverability(&kg.metadata, &m.catalogue).unwrap()).collect();
    let bands: Vec<Band> = ds.iter().map(|d| d.band).collect();
    check(bands == [Band::Low, Band::Med, Band::High], || format!("bands {bands:?}"))?;
    check(ds[1].value == Ratio::new(1, 2), || format!("D(KG2) = {}", ds[1].value))?;
    Ok(format!("D = {}, {}, {}", ds[0].value, ds[1].value, ds[2].value))
}

fn closure_oracle() -> Outcome {
    let cases = 256;
    let mut r = runner(cases);
    r.run(&(tbox(30), tbox(30)), |(schema, reference)| {
        let closure = signature_closure(&tbox_graph(&schema), Some(&tbox_graph(&reference)));
        let oracle = naive_closure(&schema, &reference);
        prop_assert_eq!(&closure.names(), &oracle);
        let strong = strongly_supported(&schema, &reference, &oracle);
        let local = naive_closure(&schema, &[]);
        for (name, d) in &closure.derived {
            prop_assert_eq!(d.weak, !strong.contains(name), "weak flag of {:?}", name);
            if !local.contains(name) {
                prop_assert!(d.via_reference, "{:?} needs the reference", name);
            }
        }
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    Ok(format!("{cases} random TBox pairs, 0 discrepancies"))
}

fn module_preservation() -> Outcome {
    let schemas = ["kg1/schema.ttl", "kg2/schema.ttl", "kg3/schema.ttl", "conference.ttl", "beth/schema.ttl", "beth/reference.ttl"];
    let slowest = Cell::new(Duration::ZERO);
    let mut checks = 0;
    for rel in schemas {
        let schema = fixture_graph(rel);
        let full = signature_closure(&schema, None);
        let conference = signature_closure(&fixture_graph("conference.ttl"), None);
        let pool: Vec<(Iri, Kind)> = full.base.names.iter().chain(&conference.base.names).cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let seeds = proptest::sample::subsequence(pool.clone(), 1..=pool.len().min(6));
        let mut r = runner(100);
        r.run(&seeds, |seed| {
            let start = Instant::now();
            let task = TaskSignature::new(seed);
            let module = extract_module(&schema, &task.names());
            let on_module = coverage(&task, &signature_closure(&module, None)).unwrap();
            let on_schema = coverage(&task, &full).unwrap();
            let took = start.elapsed();
            slowest.set(slowest.get().max(took));
            prop_assert_eq!(&on_module.score, &on_schema.score, "{}", rel);
            prop_assert_eq!(&on_module.gap, &on_schema.gap);
            prop_assert!(took < Duration::from_millis(100), "{} took {:?}", rel, took);
            Ok(())
        })
        .map_err(|e| format!("{rel}: {e}"))?;
        checks += 100;
    }
    Ok(format!("{checks} seeds over {} schemas, slowest {} µs", schemas.len(), slowest.get().as_micros()))
}

fn order_theory() -> Outcome {
    let f = DlFragment::ALL;
    for a in f {
        check(fragment_leq(a, a) == Some(true), || format!("{a} not reflexive"))?;
        for b in f {
            if fragment_leq(a, b) == Some(true) && fragment_leq(b, a) == Some(true) {
                check(a == b, || format!("{a} and {b} break antisymmetry"))?;
            }
            check(fragment_leq(a, b).is_none() == fragment_leq(b, a).is_none(), || format!("{a}/{b} asymmetric comparability"))?;
            for c in f {
                if fragment_leq(a, b) == Some(true) && fragment_leq(b, c) == Some(true) {
                    check(fragment_leq(a, c) == Some(true), || format!("{a} ≤ {b} ≤ {c} not transitive"))?;
                }
            }
        }
    }
    let rg = EntailmentRegime::ALL;
    for a in rg {
        check(regime_leq(a, a) == Some(true), || format!("{a} not reflexive"))?;
        for b in rg {
            if regime_leq(a, b) == Some(true) && regime_leq(b, a) == Some(true) {
                check(a == b, || format!("{a} and {b} break antisymmetry"))?;
            }
            for c in rg {
                if regime_leq(a, b) == Some(true) && regime_leq(b, c) == Some(true) {
                    check(regime_leq(a, c) == Some(true), || format!("{a} ≤ {b} ≤ {c} not transitive"))?;
                }
            }
        }
    }
    check(fragment_leq(DlFragment::OwlEl, DlFragment::OwlQl).is_none(), || "EL/QL comparable".into())?;
    check(fragment_leq(DlFragment::OwlQl, DlFragment::OwlEl).is_none(), || "QL/EL comparable".into())?;
    check(regime_leq(EntailmentRegime::OwlEl, EntailmentRegime::OwlQl).is_none(), || "EL/QL regimes comparable".into())?;

    let p = conf("givenAt");
    let q = conf("authorOf");
    let closure_sets: Vec<BTreeSet<ClosureDeclaration>> = vec![
        BTreeSet::new(),
        [ClosureDeclaration::predicate_lcwa(p.clone(), "t")].into(),
        [ClosureDeclaration::predicate_lcwa(q.clone(), "t")].into(),
        [ClosureDeclaration::predicate_lcwa(p, "t"), ClosureDeclaration::predicate_lcwa(q, "t")].into(),
        [ClosureDeclaration::global("t")].into(),
    ];
    let mut profiles = Vec::new();
    for regime in rg {
        for closures in &closure_sets {
            for level in ConsistencyLevel::ALL {
                profiles.push(TrustScopeProfile {
                    consistency: ConsistencyStatus { level, certificate_source: None },
                    regime,
                    closures: closures.clone(),
                    ..TrustScopeProfile::default()
                });
            }
        }
    }
    let key = |t: &TrustScopeProfile| (t.regime, closed_predicates(t), t.consistency.level);
    for a in &profiles {
        check(a.dominates(a), || format!("{:?} not reflexive", key(a)))?;
        for b in &profiles {
            if a.dominates(b) && b.dominates(a) {
                check(key(a) == key(b), || format!("{:?} / {:?} break antisymmetry", key(a), key(b)))?;
            }
            for c in &profiles {
                if a.dominates(b) && b.dominates(c) {
                    check(a.dominates(c), || format!("{:?} ⪰ {:?} ⪰ {:?} not transitive", key(a), key(b), key(c)))?;
                }
            }
        }
    }
    Ok(format!("7×7 fragments, 6×6 regimes, {} trust profiles; EL/QL incomparable", profiles.len()))
}

fn metadata_pool() -> Vec<Triple> {
    let kg = Iri::new("http://example.org/kg/probe").unwrap();
    let stmt = Iri::new("http://example.org/kg/probe#closure").unwrap();
    let p = |s: &str| Iri::new(s).unwrap();
    let names = ["Researcher", "Paper", "Invited_speaker", "Conference", "Sponsor", "Review", "Organisation"];
    let roles = ["authorOf", "givenAt", "sponsors", "reviews"];
    let mut pool = Vec::new();
    for n in names {
        pool.push(Triple::new(kg.clone(), p(aap::RESIDENT_CONCEPT), conf(n)));
        pool.push(Triple::new(kg.clone(), p(void::CLASS), conf(n)));
        pool.push(Triple::new(kg.clone(), p(aap::UNGROUNDED_NAME), conf(n)));
        pool.push(Triple::new(kg.clone(), p(aap::NOT_CLOSED), conf(n)));
        pool.push(Triple::new(stmt.clone(), p(aap::CLOSED_PREDICATE), conf(n)));
    }
    for r in roles {
        pool.push(Triple::new(kg.clone(), p(aap::RESIDENT_ROLE), conf(r)));
        pool.push(Triple::new(kg.clone(), p(void::PROPERTY), conf(r)));
        pool.push(Triple::new(stmt.clone(), p(aap::CLOSED_PREDICATE), conf(r)));
    }
    for r in EntailmentRegime::ALL {
        pool.push(Triple::new(kg.clone(), p(aap::ENTAILMENT_REGIME), p(r.iri())));
    }
    for c in ConsistencyLevel::ALL {
        pool.push(Triple::new(kg.clone(), p(aap::CONSISTENCY_STATUS), p(c.iri())));
    }
    pool.push(Triple::new(stmt, p(aap::CLOSED_PREDICATE), p(aap::ALL_PREDICATES)));
    pool
}

fn monotonicity() -> Outcome {
    let m = manifest();
    let pool = metadata_pool();
    let steps = 100;

    let mut r = runner(4);
    r.run(&proptest::collection::vec(0..pool.len(), steps), |picks| {
        for kg in &m.kgs {
            let mut g = kg.metadata.clone();
            let mut last = discoverability(&g, &m.catalogue).unwrap().value;
            for i in &picks {
                g.insert(pool[*i].clone());
                let now = discoverability(&g, &m.catalogue).unwrap().value;
                prop_assert!(now >= last, "D fell from {} to {} adding {:?}", last, now, pool[*i]);
                last = now;
            }
        }
        Ok(())
    })
    .map_err(|e| format!("D: {e}"))?;

    let tasks: Vec<TaskSignature> = vec![
        TaskSignature::new(all_names()),
        TaskSignature::new(all_names().into_iter().step_by(2)),
        TaskSignature::new(all_names().into_iter().skip(3).take(4)),
    ];
    let mut r = runner(4);
    r.run(&(tbox(10), proptest::collection::vec(axiom(), steps), tbox(10)), |(start, additions, reference)| {
        let reference = tbox_graph(&reference);
        let mut axioms = start;
        let g_of = |axioms: &[Ax]| -> Vec<Ratio<u64>> {
            let closure = signature_closure(&tbox_graph(axioms), Some(&reference));
            tasks.iter().map(|t| coverage(t, &closure).unwrap().score).collect()
        };
        let mut last = g_of(&axioms);
        for a in additions {
            axioms.push(a.clone());
            let now = g_of(&axioms);
            for (before, after) in last.iter().zip(&now) {
                prop_assert!(after >= before, "G fell from {} to {} adding {:?}", before, after, a);
            }
            last = now;
        }
        Ok(())
    })
    .map_err(|e| format!("G: {e}"))?;

    let closure_pool: Vec<Triple> =
        pool.iter().filter(|t| t.predicate.as_str() == aap::CLOSED_PREDICATE).cloned().collect();
    let mut r = runner(4);
    r.run(&proptest::collection::vec(0..closure_pool.len(), steps), |picks| {
        for (kg, base) in m.kgs.iter().zip(profiles(&m)) {
            let mut g = kg.metadata.clone();
            let mut holds: Vec<bool> = m.catalogue.tasks.iter().map(|t| satisfies(&base.trust, &t.requirement).holds).collect();
            for i in &picks {
                g.insert(closure_pool[*i].clone());
                let trust = extract_trust_scope(&g, &kg.schema, base.expressivity.fragment);
                for (t, before) in m.catalogue.tasks.iter().zip(holds.iter_mut()) {
                    let now = satisfies(&trust, &t.requirement).holds;
                    prop_assert!(!*before || now, "satisfies flipped for {} adding {:?}", t.id, closure_pool[*i]);
                    *before = now;
                }
            }
        }
        Ok(())
    })
    .map_err(|e| format!("R: {e}"))?;
    Ok(format!("{steps}-step runs: D, G and satisfies never regress"))
}

fn random_task(id: usize, names: Vec<(Iri, Kind)>, regime: EntailmentRegime, closed: usize, level: ConsistencyLevel) -> TaskType {
    let closed_predicates_needed = names.iter().take(closed).map(|(n, _)| n.clone()).collect();
    TaskType {
        id: Iri::new(format!("http://example.org/tasks#random-{id}")).unwrap(),
        signature: TaskSignature::new(names),
        requirement: EpistemicRequirement { min_regime: regime, closed_predicates_needed, min_consistency: level },
        description: String::new(),
    }
}

fn factorization() -> Outcome {
    let m = manifest();
    let base = profiles(&m);
    let conference = signature_closure(&fixture_graph("conference.ttl"), None);
    let pool: Vec<(Iri, Kind)> = conference.base.names.iter().cloned().collect();
    let trust_closures: Vec<ClosureDeclaration> = pool
        .iter()
        .map(|(n, _)| ClosureDeclaration::predicate_lcwa(n.clone(), "random"))
        .chain([ClosureDeclaration::global("random")])
        .collect();

    let regimes = proptest::sample::select(EntailmentRegime::ALL.to_vec());
    let levels = proptest::sample::select(ConsistencyLevel::ALL.to_vec());
    let strategy = (
        0..base.len(),
        regimes.clone(),
        proptest::sample::subsequence(trust_closures.clone(), 0..=4),
        levels.clone(),
        any::<bool>(),
        (0u64..=10, 1u64..=10),
        proptest::sample::subsequence(pool.clone(), 1..=6),
        regimes,
        0usize..=2,
        levels,
    );
    let cases = 500;
    let mut r = runner(cases);
    let infeasible = Cell::new(0);
    r.run(&strategy, |(kg, regime, closures, level, conflict, (num, den), names, min_regime, closed, min_level)| {
        let mut p = base[kg].clone();
        p.per_task.clear();
        p.trust.regime = regime;
        p.trust.closures = closures.into_iter().collect();
        p.trust.consistency.level = level;
        p.trust.conflict = conflict.then_some(RegimeConflict { declared: EntailmentRegime::OwlDl, maximum: DlFragment::Rdfs });
        p.expressivity.conformance_ratio = Ratio::new(num.min(den), den);
        let t = random_task(0, names, min_regime, closed, min_level);

        let v = feasible(&p, &t, &MatchConfig::default()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let g = coverage(&t.signature, p.closure.as_ref().unwrap()).unwrap().score;
        let s = satisfies(&p.trust, &t.requirement).holds;
        prop_assert_eq!(v.feasible, g == Ratio::from_integer(1) && s);
        match v.failure_dimension {
            None => {
                prop_assert!(v.feasible);
                prop_assert_eq!(v.remedy, Remedy::None);
            }
            Some(f) => {
                infeasible.set(infeasible.get() + 1);
                prop_assert!(!v.feasible);
                prop_assert_eq!(v.remedy, f.remedy());
                prop_assert!(!v.detail.secondary.contains(&f));
                if g < Ratio::from_integer(1) && v.detail.expressivity.is_none() {
                    prop_assert_eq!(f, FailureDimension::GFailure);
                }
            }
        }
        Ok(())
    })
    .map_err(|e| e.to_string())?;
    Ok(format!("{cases} pairs ({} infeasible), feasible ⇔ G=1 ∧ satisfies", infeasible.get()))
}

fn ttl_files(dir: &Path, out: &mut Vec<std::path::PathBuf>) {
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            ttl_files(&path, out);
        } else if path.extension().is_some_and(|e| e == "ttl") {
            out.push(path);
        }
    }
}

fn round_trip() -> Outcome {
    let mut files = Vec::new();
    ttl_files(&fixture_dir(), &mut files);
    files.sort();
    for path in &files {
        let g = parse_graph(&std::fs::read(path).unwrap(), RdfFormat::Turtle).map_err(|e| format!("{path:?}: {e}"))?;
        for format in [RdfFormat::Turtle, RdfFormat::NTriples] {
            let once = serialize_graph(&g, format);
            let back: Graph = parse_graph(&once, format).map_err(|e| format!("{path:?} {format:?}: {e}"))?;
            check(isomorphic(&g, &back), || format!("{path:?} {format:?} changed the graph"))?;
            check(isomorphic(&parse_graph(&serialize_graph(&back, format), format).unwrap(), &g), || {
                format!("{path:?} {format:?} drifts on a second pass")
            })?;
            if g.blank_nodes().is_empty() {
                check(serialize_graph(&back, format) == once, || format!("{path:?} {format:?} is not a byte fixpoint"))?;
            }
        }
    }

    let m = manifest();
    let fresh = profiles(&m);
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    populate_registry(dir.path(), &m, STAMP).map_err(|e| e.to_string())?;
    let loaded = load_registry(dir.path()).map_err(|e| e.to_string())?;
    check(loaded.profiles == fresh, || "loaded profiles differ from computed ones".into())?;
    for entry in &loaded.index.profiles {
        let bytes = std::fs::read(dir.path().join(&entry.path)).map_err(|e| e.to_string())?;
        let g = parse_graph(&bytes, RdfFormat::Turtle).map_err(|e| e.to_string())?;
        check(serialize_graph(&g, RdfFormat::Turtle) == bytes, || format!("{} is not a byte fixpoint", entry.path))?;
    }
    let ms = mediators(&m);
    for t in &m.catalogue.tasks {
        let cfg = MatchConfig::default();
        check(rank(&loaded.profiles, t, &cfg) == rank(&fresh, t, &cfg), || format!("verdicts differ for {}", t.id))?;
        check(compose(&loaded.profiles, t, &loaded.mediators) == compose(&fresh, t, &ms), || format!("plans differ for {}", t.id))?;
    }
    Ok(format!("{} fixture files, {} tasks × {} KGs", files.len(), m.catalogue.tasks.len(), fresh.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("fixture verdicts", fixture_verdicts),
        ("G formula", g_formula),
        ("D bands", d_bands),
        ("closure oracle", closure_oracle),
        ("module preservation", module_preservation),
        ("order theory", order_theory),
        ("monotonicity", monotonicity),
        ("factorization", factorization),
        ("round trip", round_trip),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
