//! Feasibility verdicts, ranking and multi-KG composition.

mod compose;
pub mod module;

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::discoverability::{Band, TaskType};
use crate::expressivity::DlFragment;
use crate::graph::Iri;
use crate::grounding::{coverage, CoverageResult};
use crate::profile::AapProfile;
use crate::trust::{closed_predicates, satisfies, ClosedPredicates, ConsistencyLevel, EntailmentRegime, Satisfaction};

pub use compose::{compose, mediator_module_filter, CompositionPlan, CompositionVerdict, MediatorDescriptor, MediatorError};
pub use module::{extract_module, is_bottom_local, module_signature};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchError {
    #[error("task <{task}> is not assessed in the profile of <{kg}> and no closure is available")]
    UnknownTask { kg: Iri, task: Iri },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FailureDimension {
    EFailure,
    GFailure,
    RFailure,
}

impl FailureDimension {
    pub fn remedy(self) -> Remedy {
        match self {
            FailureDimension::GFailure => Remedy::VocabularyMediation,
            FailureDimension::RFailure => Remedy::KgReselection,
            FailureDimension::EFailure => Remedy::ContentOrSchemaRepair,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FailureDimension::EFailure => "EFailure",
            FailureDimension::GFailure => "GFailure",
            FailureDimension::RFailure => "RFailure",
        }
    }

    /// Position among infeasible verdicts when ranking.
    fn rank_group(self) -> u8 {
        match self {
            FailureDimension::GFailure => 0,
            FailureDimension::RFailure => 1,
            FailureDimension::EFailure => 2,
        }
    }
}

impl fmt::Display for FailureDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Remedy {
    VocabularyMediation,
    KgReselection,
    ContentOrSchemaRepair,
    None,
}

impl Remedy {
    pub fn name(self) -> &'static str {
        match self {
            Remedy::VocabularyMediation => "VocabularyMediation",
            Remedy::KgReselection => "KgReselection",
            Remedy::ContentOrSchemaRepair => "ContentOrSchemaRepair",
            Remedy::None => "None",
        }
    }
}

impl fmt::Display for Remedy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchConfig {
    /// Conformance ratios below this count as an expressivity failure.
    pub conformance_floor: Ratio<u64>,
}

impl Default for MatchConfig {
    fn default() -> Self {
        MatchConfig { conformance_floor: Ratio::new(9, 10) }
    }
}

/// The four dimension values a verdict was computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionValues {
    pub fragment: DlFragment,
    pub conformance_ratio: Ratio<u64>,
    pub discoverability: Ratio<u64>,
    pub band: Band,
    pub coverage: Ratio<u64>,
    pub regime: EntailmentRegime,
    pub closed_predicates: ClosedPredicates,
    pub consistency: ConsistencyLevel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDetail {
    pub coverage: CoverageResult,
    pub trust: Satisfaction,
    /// Recorded regime conflict or conformance shortfall.
    pub expressivity: Option<String>,
    /// Further failing dimensions beyond the attributed one.
    pub secondary: Vec<FailureDimension>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityVerdict {
    pub kg_id: Iri,
    pub task_id: Iri,
    pub feasible: bool,
    pub failure_dimension: Option<FailureDimension>,
    pub remedy: Remedy,
    pub dimensions: DimensionValues,
    pub detail: VerdictDetail,
}

fn expressivity_issue(profile: &AapProfile, config: &MatchConfig) -> Option<String> {
    if let Some(c) = &profile.trust.conflict {
        return Some(format!("declared regime {} exceeds schema fragment {}", c.declared, c.maximum));
    }
    let ratio = profile.expressivity.conformance_ratio;
    (ratio < config.conformance_floor).then(|| {
        format!(
            "conformance ratio {}/{} below floor {}/{}",
            ratio.numer(),
            ratio.denom(),
            config.conformance_floor.numer(),
            config.conformance_floor.denom()
        )
    })
}

pub fn feasible(profile: &AapProfile, task: &TaskType, config: &MatchConfig) -> Result<FeasibilityVerdict, MatchError> {
    let cov = match (profile.per_task.get(&task.id), &profile.closure) {
        (Some(a), _) => a.coverage.clone(),
        (None, Some(closure)) => coverage(&task.signature, closure)
            .map_err(|_| MatchError::UnknownTask { kg: profile.kg_id.clone(), task: task.id.clone() })?,
        (None, None) => return Err(MatchError::UnknownTask { kg: profile.kg_id.clone(), task: task.id.clone() }),
    };
    let trust = satisfies(&profile.trust, &task.requirement);
    let expressivity = expressivity_issue(profile, config);

    let g_ok = cov.score == Ratio::from_integer(1);
    let is_feasible = g_ok && trust.holds;
    let mut failing = Vec::new();
    if !is_feasible {
        if expressivity.is_some() {
            failing.push(FailureDimension::EFailure);
        }
        if !g_ok {
            failing.push(FailureDimension::GFailure);
        }
        if !trust.holds {
            failing.push(FailureDimension::RFailure);
        }
    }
    let failure_dimension = failing.first().copied();
    let remedy = failure_dimension.map_or(Remedy::None, FailureDimension::remedy);

    Ok(FeasibilityVerdict {
        kg_id: profile.kg_id.clone(),
        task_id: task.id.clone(),
        feasible: is_feasible,
        failure_dimension,
        remedy,
        dimensions: DimensionValues {
            fragment: profile.expressivity.fragment,
            conformance_ratio: profile.expressivity.conformance_ratio,
            discoverability: profile.discoverability.value,
            band: profile.discoverability.band,
            coverage: cov.score,
            regime: profile.trust.regime,
            closed_predicates: closed_predicates(&profile.trust),
            consistency: profile.trust.consistency.level,
        },
        detail: VerdictDetail {
            coverage: cov,
            trust,
            expressivity,
            secondary: failing.into_iter().skip(1).collect(),
        },
    })
}

fn rank_order(a: &FeasibilityVerdict, b: &FeasibilityVerdict) -> Ordering {
    let group = |v: &FeasibilityVerdict| v.failure_dimension.map_or(0, |d| 1 + d.rank_group());
    group(a)
        .cmp(&group(b))
        .then_with(|| b.dimensions.discoverability.cmp(&a.dimensions.discoverability))
        .then_with(|| b.dimensions.conformance_ratio.cmp(&a.dimensions.conformance_ratio))
        .then_with(|| a.kg_id.cmp(&b.kg_id))
}

/// Verdicts for every profile that can be assessed against `task`, best first.
///
/// Profiles that neither assess the task nor carry a closure are left out.
pub fn rank(profiles: &[AapProfile], task: &TaskType, config: &MatchConfig) -> Vec<FeasibilityVerdict> {
    let mut verdicts: Vec<FeasibilityVerdict> = profiles.iter().filter_map(|p| feasible(p, task, config).ok()).collect();
    verdicts.sort_by(rank_order);
    verdicts
}
