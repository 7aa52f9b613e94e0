//! Dimension D: how much of a task catalogue can be assessed from metadata alone.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Iri, Term, Triple};
use crate::grounding::TaskSignature;
use crate::tbox::Kind;
use crate::trust::{
    closed_predicates, declared_closures, declared_consistency, declared_regime, regime_leq, shacl_closures,
    ConsistencyLevel, EntailmentRegime, EpistemicRequirement, TrustScopeProfile,
};
use crate::vocab::{aap, rdf, rdfs, vocabulary_graph, void};

#[derive(Debug, Error)]
pub enum CatalogueError {
    #[error("task catalogue is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("task catalogue is empty")]
    EmptyCatalogue,
    #[error("duplicate task id {0}")]
    DuplicateTaskId(String),
    #[error("task {task}: {message}")]
    InvalidTask { task: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskType {
    pub id: Iri,
    pub signature: TaskSignature,
    pub requirement: EpistemicRequirement,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskCatalogue {
    pub tasks: Vec<TaskType>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct TaskFile {
    id: String,
    #[serde(default)]
    description: String,
    signature: Vec<EntryFile>,
    #[serde(default = "simple")]
    min_regime: String,
    #[serde(default)]
    closed_predicates_needed: Vec<String>,
    #[serde(default = "uncertified")]
    min_consistency: String,
}

fn simple() -> String {
    "Simple".into()
}

fn uncertified() -> String {
    "Uncertified".into()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryFile {
    name: String,
    kind: Kind,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogueFile {
    #[serde(default)]
    #[allow(dead_code)]
    version: Option<String>,
    tasks: Vec<TaskFile>,
}

impl TaskCatalogue {
    pub fn new(tasks: Vec<TaskType>) -> Result<Self, CatalogueError> {
        if tasks.is_empty() {
            return Err(CatalogueError::EmptyCatalogue);
        }
        let mut seen = BTreeSet::new();
        for t in &tasks {
            if !seen.insert(&t.id) {
                return Err(CatalogueError::DuplicateTaskId(t.id.to_string()));
            }
            let invalid = |message: String| CatalogueError::InvalidTask { task: t.id.to_string(), message };
            if t.signature.is_empty() {
                return Err(invalid("empty signature".into()));
            }
            let names = t.signature.names();
            if let Some(p) = t.requirement.closed_predicates_needed.iter().find(|p| !names.contains(*p)) {
                return Err(invalid(format!("closed predicate <{p}> is not in the task signature")));
            }
        }
        Ok(TaskCatalogue { tasks })
    }

    pub fn from_json(source: &str) -> Result<Self, CatalogueError> {
        let file: CatalogueFile = serde_json::from_str(source)?;
        let mut tasks = Vec::with_capacity(file.tasks.len());
        for t in file.tasks {
            let invalid = |message: String| CatalogueError::InvalidTask { task: t.id.clone(), message };
            let id = Iri::new(&t.id).map_err(|e| invalid(e.to_string()))?;
            let mut entries = BTreeSet::new();
            for e in &t.signature {
                entries.insert((Iri::new(&e.name).map_err(|e| invalid(e.to_string()))?, e.kind));
            }
            let closed = t
                .closed_predicates_needed
                .iter()
                .map(|p| Iri::new(p).map_err(|e| invalid(e.to_string())))
                .collect::<Result<_, _>>()?;
            let requirement = EpistemicRequirement {
                min_regime: t.min_regime.parse().map_err(invalid)?,
                closed_predicates_needed: closed,
                min_consistency: t.min_consistency.parse().map_err(invalid)?,
            };
            tasks.push(TaskType { id, signature: TaskSignature { entries }, requirement, description: t.description });
        }
        TaskCatalogue::new(tasks)
    }

    /// Looks a task up by full IRI, or by a fragment/last-segment suffix when unambiguous.
    pub fn find(&self, key: &str) -> Option<&TaskType> {
        if let Some(t) = self.tasks.iter().find(|t| t.id.as_str() == key) {
            return Some(t);
        }
        let mut hits = self.tasks.iter().filter(|t| t.id.local_name() == key);
        match (hits.next(), hits.next()) {
            (Some(t), None) => Some(t),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MetadataVerdict {
    DecidableFit,
    DecidableUnfit,
    Undecidable,
}

impl MetadataVerdict {
    pub fn is_decidable(self) -> bool {
        self != MetadataVerdict::Undecidable
    }

    pub fn name(self) -> &'static str {
        match self {
            MetadataVerdict::DecidableFit => "DecidableFit",
            MetadataVerdict::DecidableUnfit => "DecidableUnfit",
            MetadataVerdict::Undecidable => "Undecidable",
        }
    }

    pub fn iri(self) -> &'static str {
        match self {
            MetadataVerdict::DecidableFit => aap::DECIDABLE_FIT,
            MetadataVerdict::DecidableUnfit => aap::DECIDABLE_UNFIT,
            MetadataVerdict::Undecidable => aap::UNDECIDABLE,
        }
    }

    pub fn from_iri(s: &str) -> Option<Self> {
        [MetadataVerdict::DecidableFit, MetadataVerdict::DecidableUnfit, MetadataVerdict::Undecidable]
            .into_iter()
            .find(|v| v.iri() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Band {
    Low,
    Med,
    High,
}

impl Band {
    /// low = [0, 1/3), med = [1/3, 2/3), high = [2/3, 1].
    pub fn of(value: Ratio<u64>) -> Band {
        if value < Ratio::new(1, 3) {
            Band::Low
        } else if value < Ratio::new(2, 3) {
            Band::Med
        } else {
            Band::High
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Band::Low => "low",
            Band::Med => "med",
            Band::High => "high",
        }
    }

    pub fn from_name(s: &str) -> Option<Band> {
        [Band::Low, Band::Med, Band::High].into_iter().find(|b| b.name() == s)
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub const BAND_THRESHOLDS: &str = "low = [0, 1/3), med = [1/3, 2/3), high = [2/3, 1]";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscoverabilityScore {
    pub value: Ratio<u64>,
    pub decidable: BTreeSet<Iri>,
    pub per_task: BTreeMap<Iri, MetadataVerdict>,
    pub band: Band,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiscoverabilityError {
    #[error("task catalogue is empty")]
    EmptyCatalogue,
}

/// RDFS closure (subproperty, subclass, domain, range) of `g`.
pub fn rdfs_materialize(g: &Graph) -> Graph {
    let mut out = g.clone();
    loop {
        let mut super_props: HashMap<&Iri, Vec<Iri>> = HashMap::new();
        let mut super_classes: HashMap<Term, Vec<Term>> = HashMap::new();
        let mut domains: HashMap<&Iri, Vec<Term>> = HashMap::new();
        let mut ranges: HashMap<&Iri, Vec<Term>> = HashMap::new();
        for t in out.iter() {
            let Some(s) = t.subject.as_iri() else { continue };
            match t.predicate.as_str() {
                rdfs::SUB_PROPERTY_OF => {
                    if let Some(o) = t.object.as_iri() {
                        super_props.entry(s).or_default().push(o.clone());
                    }
                }
                rdfs::SUB_CLASS_OF => super_classes.entry(Term::Iri(s.clone())).or_default().push(t.object.clone()),
                rdfs::DOMAIN => domains.entry(s).or_default().push(t.object.clone()),
                rdfs::RANGE => ranges.entry(s).or_default().push(t.object.clone()),
                _ => {}
            }
        }
        let type_iri = crate::vocab::iri(rdf::TYPE);
        let mut new: Vec<Triple> = Vec::new();
        for t in out.iter() {
            for q in super_props.get(&t.predicate).into_iter().flatten() {
                new.push(Triple { subject: t.subject.clone(), predicate: q.clone(), object: t.object.clone() });
            }
            for c in domains.get(&t.predicate).into_iter().flatten() {
                new.push(Triple { subject: t.subject.clone(), predicate: type_iri.clone(), object: c.clone() });
            }
            if let Some(o) = t.object.as_subject() {
                for c in ranges.get(&t.predicate).into_iter().flatten() {
                    new.push(Triple { subject: o.clone(), predicate: type_iri.clone(), object: c.clone() });
                }
            }
            if t.predicate == type_iri {
                for c in super_classes.get(&t.object).into_iter().flatten() {
                    new.push(Triple { subject: t.subject.clone(), predicate: type_iri.clone(), object: c.clone() });
                }
            }
            if t.predicate.as_str() == rdfs::SUB_PROPERTY_OF || t.predicate.as_str() == rdfs::SUB_CLASS_OF {
                let next = if t.predicate.as_str() == rdfs::SUB_CLASS_OF {
                    super_classes.get(&t.object).cloned().unwrap_or_default()
                } else {
                    t.object.as_iri().and_then(|o| super_props.get(o)).map(|v| v.iter().cloned().map(Term::Iri).collect()).unwrap_or_default()
                };
                for o in next {
                    new.push(Triple { subject: t.subject.clone(), predicate: t.predicate.clone(), object: o });
                }
            }
        }
        let before = out.len();
        out.extend(new);
        if out.len() == before {
            return out;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tri {
    Holds,
    Fails,
    Unknown,
}

fn combine(parts: impl IntoIterator<Item = Tri>) -> Tri {
    let mut all_hold = true;
    for p in parts {
        match p {
            Tri::Fails => return Tri::Fails,
            Tri::Unknown => all_hold = false,
            Tri::Holds => {}
        }
    }
    if all_hold {
        Tri::Holds
    } else {
        Tri::Unknown
    }
}

/// What a (materialized) metadata graph states about names, regime,
/// closures and consistency.
struct MetadataFacts {
    positive: BTreeSet<(Iri, Option<Kind>)>,
    negative: BTreeSet<Iri>,
    regime: Option<EntailmentRegime>,
    closed: TrustScopeProfile,
    not_closed: BTreeSet<Iri>,
    consistency: Option<ConsistencyLevel>,
}

impl MetadataFacts {
    fn read(metadata: &Graph) -> Self {
        let g = rdfs_materialize(&metadata.union(vocabulary_graph()));
        let mut positive = BTreeSet::new();
        let mut negative = BTreeSet::new();
        let mut not_closed = BTreeSet::new();
        for t in g.iter() {
            let Some(o) = t.object.as_iri() else { continue };
            let kind = match t.predicate.as_str() {
                aap::RESIDENT_CONCEPT | void::CLASS => Some(Some(Kind::Concept)),
                aap::RESIDENT_ROLE | void::PROPERTY => Some(Some(Kind::Role)),
                aap::RESIDENT_NAME | aap::GROUNDED_NAME => Some(None),
                aap::UNGROUNDED_NAME => {
                    negative.insert(o.clone());
                    None
                }
                aap::NOT_CLOSED => {
                    not_closed.insert(o.clone());
                    None
                }
                _ => None,
            };
            if let Some(k) = kind {
                positive.insert((o.clone(), k));
            }
        }
        let mut closed = TrustScopeProfile::default();
        closed.closures.extend(shacl_closures(&g));
        closed.closures.extend(declared_closures(&g));
        MetadataFacts {
            positive,
            negative,
            regime: declared_regime(&g).0,
            closed,
            not_closed,
            consistency: declared_consistency(&g).map(|c| c.level),
        }
    }

    fn name(&self, name: &Iri, kind: Kind) -> Tri {
        // A negative statement is never overridden, so a decided failure stays decided.
        if self.negative.contains(name) {
            Tri::Fails
        } else if self.positive.contains(&(name.clone(), Some(kind))) || self.positive.contains(&(name.clone(), None)) {
            Tri::Holds
        } else {
            Tri::Unknown
        }
    }

    fn grounding(&self, task: &TaskType) -> Tri {
        combine(task.signature.entries.iter().map(|(n, k)| self.name(n, *k)))
    }

    fn trust(&self, req: &EpistemicRequirement) -> Tri {
        let regime = match self.regime {
            None => Tri::Unknown,
            Some(r) if regime_leq(req.min_regime, r) == Some(true) => Tri::Holds,
            Some(_) => Tri::Fails,
        };
        let closed = closed_predicates(&self.closed);
        let closures = req.closed_predicates_needed.iter().map(|p| {
            if self.not_closed.contains(p) {
                Tri::Fails
            } else if closed.contains(p) {
                Tri::Holds
            } else {
                Tri::Unknown
            }
        });
        let consistency = if req.min_consistency == ConsistencyLevel::Uncertified {
            Tri::Holds
        } else {
            match self.consistency {
                None => Tri::Unknown,
                Some(c) if c >= req.min_consistency => Tri::Holds,
                Some(_) => Tri::Fails,
            }
        };
        combine(std::iter::once(regime).chain(closures).chain(std::iter::once(consistency)))
    }

    fn verdict(&self, task: &TaskType) -> MetadataVerdict {
        match (self.grounding(task), self.trust(&task.requirement)) {
            (Tri::Fails, _) | (_, Tri::Fails) => MetadataVerdict::DecidableUnfit,
            (Tri::Holds, Tri::Holds) => MetadataVerdict::DecidableFit,
            _ => MetadataVerdict::Undecidable,
        }
    }
}

/// Fitness of `task` judged from the metadata graph alone.
pub fn metadata_fitness_decidable(metadata: &Graph, task: &TaskType) -> MetadataVerdict {
    MetadataFacts::read(metadata).verdict(task)
}

pub fn discoverability(metadata: &Graph, catalogue: &TaskCatalogue) -> Result<DiscoverabilityScore, DiscoverabilityError> {
    if catalogue.tasks.is_empty() {
        return Err(DiscoverabilityError::EmptyCatalogue);
    }
    let facts = MetadataFacts::read(metadata);
    let per_task: BTreeMap<Iri, MetadataVerdict> =
        catalogue.tasks.par_iter().map(|t| (t.id.clone(), facts.verdict(t))).collect();
    let decidable: BTreeSet<Iri> = per_task.iter().filter(|(_, v)| v.is_decidable()).map(|(k, _)| k.clone()).collect();
    let total = per_task.len() as u64;
    let value = Ratio::new(decidable.len() as u64, total);
    Ok(DiscoverabilityScore { value, decidable, per_task, band: Band::of(value) })
}
