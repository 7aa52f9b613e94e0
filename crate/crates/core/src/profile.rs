//! Four-dimensional affordance profiles of a KG against a task catalogue.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::discoverability::{discoverability, DiscoverabilityScore, MetadataVerdict, TaskCatalogue};
use crate::expressivity::ExpressivityProfile;
use crate::graph::{serialize_graph, Graph, Iri, RdfFormat};
use crate::grounding::{coverage, signature_closure, CoverageResult, GroundingRoute, SignatureClosure};
use crate::matcher::module::{extract_module_tbox, module_signature};
use crate::tbox::Tbox;
use crate::trust::{extract_trust_scope, TrustScopeProfile};

pub const TOOL_VERSION: &str = concat!("aap ", env!("CARGO_PKG_VERSION"));

/// The three graphs describing one KG.
#[derive(Debug, Clone)]
pub struct KgDescriptor {
    pub kg_id: Iri,
    pub schema: Graph,
    pub data: Graph,
    pub metadata: Graph,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskAssessment {
    pub coverage: CoverageResult,
    /// Concept and role names of the task-scoped ⊥-module.
    pub module_signature: BTreeSet<Iri>,
    pub metadata_verdict: MetadataVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    /// sha256 of the canonical N-Triples of each input, keyed by role.
    pub input_digests: BTreeMap<String, String>,
    pub generated_at: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AapProfile {
    pub kg_id: Iri,
    pub expressivity: ExpressivityProfile,
    pub trust: TrustScopeProfile,
    pub per_task: BTreeMap<Iri, TaskAssessment>,
    pub discoverability: DiscoverabilityScore,
    /// Absent when a profile document carried no closure data.
    pub closure: Option<SignatureClosure>,
    pub warnings: Vec<String>,
    pub provenance: Provenance,
}

impl AapProfile {
    /// True when some dimension was computed under an unsupported grounding route.
    pub fn is_partial(&self) -> bool {
        self.closure.as_ref().is_some_and(|c| c.route.route == GroundingRoute::Unsupported)
    }
}

pub fn graph_digest(g: &Graph) -> String {
    hex::encode(Sha256::digest(serialize_graph(g, RdfFormat::NTriples)))
}

/// Runs every dimension for `kg` against `catalogue`.
///
/// `generated_at` is written verbatim into the provenance block.
pub fn build_profile(
    kg: &KgDescriptor,
    catalogue: &TaskCatalogue,
    reference: Option<&Graph>,
    generated_at: &str,
) -> AapProfile {
    let tbox = Tbox::from_graph(&kg.schema);
    let expressivity = ExpressivityProfile::from_tbox(&tbox, &kg.schema, &kg.data);
    let closure = signature_closure(&kg.schema, reference);
    let trust = extract_trust_scope(&kg.metadata, &kg.schema, expressivity.fragment);
    let discoverability = discoverability(&kg.metadata, catalogue).expect("catalogue is validated non-empty");

    let per_task: BTreeMap<Iri, TaskAssessment> = catalogue
        .tasks
        .par_iter()
        .map(|task| {
            let coverage = coverage(&task.signature, &closure).expect("catalogue signatures are validated non-empty");
            let module = extract_module_tbox(&tbox, &task.signature.names());
            let verdict = discoverability.per_task.get(&task.id).copied().unwrap_or(MetadataVerdict::Undecidable);
            (
                task.id.clone(),
                TaskAssessment { coverage, module_signature: module_signature(&module), metadata_verdict: verdict },
            )
        })
        .collect();

    let mut warnings = Vec::new();
    if closure.route.route == GroundingRoute::Unsupported {
        let why = closure.route.diagnostic.clone().unwrap_or_default();
        warnings.push(format!("PartialProfile: {why}"));
    }
    for c in &closure.cycle_warnings {
        let names: Vec<String> = c.cycle.iter().map(|i| format!("<{i}>")).collect();
        warnings.push(format!("definition cycle through {}", names.join(", ")));
    }
    warnings.extend(expressivity.diagnostics.iter().cloned());
    warnings.extend(trust.diagnostics.iter().cloned());

    let mut input_digests = BTreeMap::new();
    input_digests.insert("schema".to_string(), graph_digest(&kg.schema));
    input_digests.insert("data".to_string(), graph_digest(&kg.data));
    input_digests.insert("metadata".to_string(), graph_digest(&kg.metadata));
    if let Some(r) = reference {
        input_digests.insert("reference".to_string(), graph_digest(r));
    }

    AapProfile {
        kg_id: kg.kg_id.clone(),
        expressivity,
        trust,
        per_task,
        discoverability,
        closure: Some(closure),
        warnings,
        provenance: Provenance {
            tool_version: TOOL_VERSION.to_string(),
            input_digests,
            generated_at: generated_at.to_string(),
        },
    }
}

/// Profiles several KGs, one unit of work per KG.
pub fn build_profiles(
    kgs: &[KgDescriptor],
    catalogue: &TaskCatalogue,
    reference: Option<&Graph>,
    generated_at: &str,
) -> Vec<AapProfile> {
    kgs.par_iter().map(|kg| build_profile(kg, catalogue, reference, generated_at)).collect()
}
