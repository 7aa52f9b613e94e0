//! JSON reports written by the command-line tool.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::discoverability::TaskType;
use crate::graph::Iri;
use crate::matcher::{CompositionPlan, CompositionVerdict, FeasibilityVerdict};
use crate::profile::{AapProfile, TOOL_VERSION};
use crate::tbox::Kind;
use crate::trust::ClosedPredicates;

/// JSON Schema every report validates against.
pub const REPORT_SCHEMA: &str = include_str!("../../data/report.schema.json");

pub fn ratio_str(r: Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NameJson {
    pub name: Iri,
    pub kind: Kind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskJson {
    pub id: Iri,
    pub signature: Vec<NameJson>,
    pub min_regime: String,
    pub closed_predicates_needed: Vec<Iri>,
    pub min_consistency: String,
}

impl From<&TaskType> for TaskJson {
    fn from(t: &TaskType) -> Self {
        TaskJson {
            id: t.id.clone(),
            signature: t.signature.entries.iter().map(|(name, kind)| NameJson { name: name.clone(), kind: *kind }).collect(),
            min_regime: t.requirement.min_regime.name().to_string(),
            closed_predicates_needed: t.requirement.closed_predicates_needed.iter().cloned().collect(),
            min_consistency: t.requirement.min_consistency.name().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpressivityJson {
    pub fragment: String,
    pub conformance_ratio: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscoverabilityJson {
    pub value: String,
    pub band: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundingJson {
    pub coverage: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrustJson {
    pub regime: String,
    /// True under a global closed-world declaration.
    pub closed_world: bool,
    pub closed_predicates: Vec<Iri>,
    pub consistency: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionsJson {
    #[serde(rename = "E")]
    pub e: ExpressivityJson,
    #[serde(rename = "D")]
    pub d: DiscoverabilityJson,
    #[serde(rename = "G")]
    pub g: GroundingJson,
    #[serde(rename = "R")]
    pub r: TrustJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetailJson {
    pub gap: Vec<Iri>,
    pub kind_mismatch: Vec<Iri>,
    pub weak: Vec<Iri>,
    pub via_reference: Vec<Iri>,
    pub lower_bound: bool,
    pub trust_shortfall: Option<String>,
    pub expressivity_conflict: Option<String>,
    pub secondary_failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationJson {
    pub name: Iri,
    pub kind: Kind,
    pub provenance: Vec<String>,
    pub weak: bool,
    pub via_reference: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplanationJson {
    pub grounding_route: Option<String>,
    pub derivations: Vec<DerivationJson>,
    pub profile_warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub kg_id: Iri,
    pub task_id: Iri,
    pub feasible: bool,
    pub failure_dimension: Option<String>,
    pub remedy: String,
    pub dimensions: DimensionsJson,
    pub detail: DetailJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explanation: Option<ExplanationJson>,
}

impl From<&FeasibilityVerdict> for VerdictJson {
    fn from(v: &FeasibilityVerdict) -> Self {
        let d = &v.dimensions;
        let (closed_world, closed_predicates) = match &d.closed_predicates {
            ClosedPredicates::All => (true, Vec::new()),
            ClosedPredicates::Some(s) => (false, s.iter().cloned().collect()),
        };
        let c = &v.detail.coverage;
        VerdictJson {
            kg_id: v.kg_id.clone(),
            task_id: v.task_id.clone(),
            feasible: v.feasible,
            failure_dimension: v.failure_dimension.map(|f| f.name().to_string()),
            remedy: v.remedy.name().to_string(),
            dimensions: DimensionsJson {
                e: ExpressivityJson { fragment: d.fragment.name().to_string(), conformance_ratio: ratio_str(d.conformance_ratio) },
                d: DiscoverabilityJson { value: ratio_str(d.discoverability), band: d.band.name().to_string() },
                g: GroundingJson { coverage: ratio_str(d.coverage) },
                r: TrustJson {
                    regime: d.regime.name().to_string(),
                    closed_world,
                    closed_predicates,
                    consistency: d.consistency.name().to_string(),
                },
            },
            detail: DetailJson {
                gap: c.gap.iter().cloned().collect(),
                kind_mismatch: c.kind_mismatch.iter().cloned().collect(),
                weak: c.weak.iter().cloned().collect(),
                via_reference: c.via_reference.iter().cloned().collect(),
                lower_bound: c.lower_bound,
                trust_shortfall: v.detail.trust.shortfall.as_ref().map(ToString::to_string),
                expressivity_conflict: v.detail.expressivity.clone(),
                secondary_failures: v.detail.secondary.iter().map(|f| f.name().to_string()).collect(),
            },
            explanation: None,
        }
    }
}

impl VerdictJson {
    /// Adds the derivations behind the covered task names.
    pub fn explain(mut self, profile: &AapProfile, task: &TaskType) -> Self {
        let closure = profile.closure.as_ref();
        let derivations = closure
            .map(|c| {
                c.derived
                    .iter()
                    .filter(|(name, _)| task.signature.entries.contains(*name))
                    .map(|(_, d)| DerivationJson {
                        name: d.name.clone(),
                        kind: d.kind,
                        provenance: d.provenance.clone(),
                        weak: d.weak,
                        via_reference: d.via_reference,
                    })
                    .collect()
            })
            .unwrap_or_default();
        self.explanation = Some(ExplanationJson {
            grounding_route: closure.map(|c| c.route.route.name().to_string()),
            derivations,
            profile_warnings: profile.warnings.clone(),
        });
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanJson {
    pub kg_ids: Vec<Iri>,
    pub union_closure: Vec<NameJson>,
    pub initial_gap: Vec<Iri>,
    pub residual_gap: Vec<Iri>,
    pub candidate_mediators: BTreeMap<Iri, Vec<Iri>>,
    pub verdict: String,
    pub alignment_failure_predicted: bool,
    pub warnings: Vec<String>,
}

impl From<&CompositionPlan> for PlanJson {
    fn from(p: &CompositionPlan) -> Self {
        PlanJson {
            kg_ids: p.kg_ids.clone(),
            union_closure: p.union_closure.iter().map(|(name, kind)| NameJson { name: name.clone(), kind: *kind }).collect(),
            initial_gap: p.initial_gap.iter().cloned().collect(),
            residual_gap: p.residual_gap.iter().cloned().collect(),
            candidate_mediators: p.candidate_mediators.clone(),
            verdict: match p.verdict {
                CompositionVerdict::Closed => "Closed",
                CompositionVerdict::OpenGap => "OpenGap",
            }
            .to_string(),
            alignment_failure_predicted: p.alignment_failure_predicted,
            warnings: p.warnings.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub task: TaskJson,
    pub verdicts: Vec<VerdictJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plan: Option<PlanJson>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(task: &TaskType) -> Self {
        Report {
            tool_version: TOOL_VERSION.to_string(),
            task: task.into(),
            verdicts: Vec::new(),
            plan: None,
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
