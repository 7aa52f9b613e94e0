mod common;

use aap_core::discoverability::Band;
use aap_core::graph::{isomorphic, parse_graph, serialize_graph, RdfFormat};
use aap_core::grounding::{coverage, signature_closure, TaskSignature};
use aap_core::matcher::{extract_module, is_bottom_local, module_signature};
use aap_core::tbox::Tbox;
use common::*;
use num_rational::Ratio;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn coverage_partitions_the_task(axioms in tbox(20), seed in proptest::sample::subsequence(all_names(), 1..8)) {
        let closure = signature_closure(&tbox_graph(&axioms), None);
        let task = TaskSignature::new(seed);
        let c = coverage(&task, &closure).unwrap();
        prop_assert!(c.score <= Ratio::from_integer(1));
        prop_assert!(c.covered.is_disjoint(&c.gap));
        prop_assert_eq!(c.covered.len() + c.gap.len(), task.names().len());
        prop_assert!(c.kind_mismatch.is_subset(&c.gap));
        prop_assert!(c.weak.is_subset(&c.covered));
    }

    #[test]
    fn reference_only_adds_names(schema in tbox(20), reference in tbox(20)) {
        let g = tbox_graph(&schema);
        let alone = signature_closure(&g, None).names();
        let with = signature_closure(&g, Some(&tbox_graph(&reference))).names();
        prop_assert!(alone.is_subset(&with));
    }

    #[test]
    fn turtle_round_trips(axioms in tbox(25)) {
        let g = tbox_graph(&axioms);
        for format in [RdfFormat::Turtle, RdfFormat::NTriples] {
            let back = parse_graph(&serialize_graph(&g, format), format).unwrap();
            prop_assert!(isomorphic(&g, &back));
        }
    }

    #[test]
    fn module_axioms_outside_are_local(axioms in tbox(25), seed in proptest::sample::subsequence(all_names(), 0..6)) {
        let g = tbox_graph(&axioms);
        let names = TaskSignature::new(seed).names();
        let module = extract_module(&g, &names);
        let sig = module_signature(&module);
        for a in Tbox::from_graph(&g).iter() {
            if !a.triples.iter().all(|t| module.contains(t)) {
                prop_assert!(is_bottom_local(a, &sig), "{} left out but not local", a.id());
            }
        }
        prop_assert!(module.iter().all(|t| g.contains(t)));
    }

    #[test]
    fn bands_follow_thresholds(n in 0u64..=30, d in 1u64..=30) {
        let v = Ratio::new(n.min(d), d);
        let band = Band::of(v);
        let expected = if v * 3 < Ratio::from_integer(1) { Band::Low } else if v * 3 < Ratio::from_integer(2) { Band::Med } else { Band::High };
        prop_assert_eq!(band, expected);
    }
}
