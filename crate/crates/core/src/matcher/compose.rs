use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::discoverability::TaskType;
use crate::graph::{Graph, Iri, Subject, Term};
use crate::grounding::TaskSignature;
use crate::profile::AapProfile;
use crate::tbox::{Kind, Name};
use crate::trust::closed_predicates;
use crate::vocab::{aap, rdf};

use super::module::{extract_module, module_signature};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MediatorError {
    #[error("mediator <{0}> declares an empty input signature")]
    EmptyInput(Iri),
    #[error("mediator <{0}> declares an empty output signature")]
    EmptyOutput(Iri),
}

/// A declared bridge between signatures. Only its declaration is ever read.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MediatorDescriptor {
    pub id: Iri,
    pub input_signature: BTreeSet<Iri>,
    pub output_signature: BTreeSet<Iri>,
    pub preservation_claim: String,
}

impl MediatorDescriptor {
    pub fn new(
        id: Iri,
        input_signature: BTreeSet<Iri>,
        output_signature: BTreeSet<Iri>,
        preservation_claim: impl Into<String>,
    ) -> Result<Self, MediatorError> {
        if input_signature.is_empty() {
            return Err(MediatorError::EmptyInput(id));
        }
        if output_signature.is_empty() {
            return Err(MediatorError::EmptyOutput(id));
        }
        Ok(MediatorDescriptor { id, input_signature, output_signature, preservation_claim: preservation_claim.into() })
    }

    /// Every `aap:Mediator` described in `g`.
    pub fn from_graph(g: &Graph) -> Result<Vec<MediatorDescriptor>, MediatorError> {
        let index = g.index();
        let mediators: BTreeSet<&Iri> = g
            .with_predicate(rdf::TYPE)
            .filter(|t| t.object.as_iri().is_some_and(|o| o.as_str() == aap::MEDIATOR))
            .filter_map(|t| t.subject.as_iri())
            .collect();
        mediators
            .into_iter()
            .map(|id| {
                let s = Subject::Iri(id.clone());
                let iris = |p: &str| index.objects(&s, p).filter_map(Term::as_iri).cloned().collect::<BTreeSet<_>>();
                let claim = index
                    .object(&s, aap::PRESERVATION_CLAIM)
                    .and_then(Term::as_literal)
                    .map(|l| l.lexical().to_string())
                    .unwrap_or_default();
                MediatorDescriptor::new(id.clone(), iris(aap::INPUT_NAME), iris(aap::OUTPUT_NAME), claim)
            })
            .collect()
    }
}

/// Whether some input of `mediator` lies in the task-scoped module of `schema`.
pub fn mediator_module_filter(mediator: &MediatorDescriptor, schema: &Graph, task: &TaskSignature) -> bool {
    let module = extract_module(schema, &task.names());
    let names = module_signature(&module);
    !mediator.input_signature.is_disjoint(&names)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompositionVerdict {
    Closed,
    OpenGap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionPlan {
    pub kg_ids: Vec<Iri>,
    pub union_closure: BTreeSet<Name>,
    pub initial_gap: BTreeSet<Iri>,
    pub residual_gap: BTreeSet<Iri>,
    pub candidate_mediators: BTreeMap<Iri, Vec<Iri>>,
    pub verdict: CompositionVerdict,
    /// No registered mediator touches any task-scoped module.
    pub alignment_failure_predicted: bool,
    pub warnings: Vec<String>,
}

fn profile_names(profile: &AapProfile, task: &TaskType) -> BTreeSet<Name> {
    match (&profile.closure, profile.per_task.get(&task.id)) {
        (Some(c), _) => c.names(),
        (None, Some(a)) => task.signature.entries.iter().filter(|(i, _)| a.coverage.covered.contains(i)).cloned().collect(),
        (None, None) => BTreeSet::new(),
    }
}

fn module_names(profile: &AapProfile, task: &TaskType) -> BTreeSet<Iri> {
    profile.per_task.get(&task.id).map(|a| a.module_signature.clone()).unwrap_or_default()
}

/// Checks whether `profiles` jointly, plus declared `mediators`, ground `task`.
pub fn compose(profiles: &[AapProfile], task: &TaskType, mediators: &[MediatorDescriptor]) -> CompositionPlan {
    let per_kg: Vec<BTreeSet<Name>> = profiles.iter().map(|p| profile_names(p, task)).collect();
    let union_closure: BTreeSet<Name> = per_kg.iter().flatten().cloned().collect();
    let union_iris: BTreeSet<Iri> = union_closure.iter().map(|(i, _)| i.clone()).collect();

    let initial_gap: BTreeSet<Iri> = task
        .signature
        .entries
        .iter()
        .filter(|n| !union_closure.contains(*n))
        .map(|(i, _)| i.clone())
        .collect();

    let modules: Vec<BTreeSet<Iri>> = profiles.iter().map(|p| module_names(p, task)).collect();
    let passes_filter = |m: &MediatorDescriptor| modules.iter().any(|names| !m.input_signature.is_disjoint(names));

    let mut candidate_mediators = BTreeMap::new();
    let mut residual_gap = BTreeSet::new();
    for name in &initial_gap {
        let ids: Vec<Iri> = mediators
            .iter()
            .filter(|m| m.output_signature.contains(name) && m.input_signature.is_subset(&union_iris) && passes_filter(m))
            .map(|m| m.id.clone())
            .collect();
        if ids.is_empty() {
            residual_gap.insert(name.clone());
        }
        candidate_mediators.insert(name.clone(), ids);
    }

    let alignment_failure_predicted = !initial_gap.is_empty() && !mediators.iter().any(passes_filter);

    let mut warnings = Vec::new();
    let closed: Vec<_> = profiles.iter().map(|p| closed_predicates(&p.trust)).collect();
    let role_iris = |names: &BTreeSet<Name>| -> BTreeSet<Iri> {
        names.iter().filter(|(_, k)| *k == Kind::Role).map(|(i, _)| i.clone()).collect()
    };
    let roles: Vec<BTreeSet<Iri>> = per_kg.iter().map(role_iris).collect();
    for p in role_iris(&union_closure) {
        let sharing: Vec<usize> = (0..profiles.len()).filter(|i| roles[*i].contains(&p)).collect();
        if sharing.len() < 2 {
            continue;
        }
        let closed_in: Vec<bool> = sharing.iter().map(|i| closed[*i].contains(&p)).collect();
        if closed_in.iter().any(|c| *c) && closed_in.iter().any(|c| !*c) {
            let ids: Vec<String> = sharing.iter().map(|i| format!("<{}>", profiles[*i].kg_id)).collect();
            warnings.push(format!("IncoherentClosure: <{p}> is closed in some but not all of {}", ids.join(", ")));
        }
    }

    CompositionPlan {
        kg_ids: profiles.iter().map(|p| p.kg_id.clone()).collect(),
        union_closure,
        verdict: if residual_gap.is_empty() { CompositionVerdict::Closed } else { CompositionVerdict::OpenGap },
        initial_gap,
        residual_gap,
        candidate_mediators,
        alignment_failure_predicted,
        warnings,
    }
}
