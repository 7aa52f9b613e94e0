//! Dimension E: where a schema sits on the fragment order, and how well the
//! data conforms to it.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Iri, Partition, SignatureTable, Subject, Term};
use crate::tbox::{Axiom, AxiomBody, AxiomKind, Characteristic, ClassExpr, DeclarationKind, PropertyExpr, Tbox};
use crate::vocab::{is_builtin, owl, rdf, rdfs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DlFragment {
    RdfOnly,
    Rdfs,
    OwlEl,
    OwlQl,
    OwlRl,
    OwlDl,
    OwlFull,
}

impl DlFragment {
    pub const ALL: [DlFragment; 7] = [
        DlFragment::RdfOnly,
        DlFragment::Rdfs,
        DlFragment::OwlEl,
        DlFragment::OwlQl,
        DlFragment::OwlRl,
        DlFragment::OwlDl,
        DlFragment::OwlFull,
    ];

    fn level(self) -> u8 {
        match self {
            DlFragment::RdfOnly => 0,
            DlFragment::Rdfs => 1,
            DlFragment::OwlEl | DlFragment::OwlQl | DlFragment::OwlRl => 2,
            DlFragment::OwlDl => 3,
            DlFragment::OwlFull => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DlFragment::RdfOnly => "RdfOnly",
            DlFragment::Rdfs => "Rdfs",
            DlFragment::OwlEl => "OwlEl",
            DlFragment::OwlQl => "OwlQl",
            DlFragment::OwlRl => "OwlRl",
            DlFragment::OwlDl => "OwlDl",
            DlFragment::OwlFull => "OwlFull",
        }
    }
}

impl fmt::Display for DlFragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DlFragment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown fragment `{s}`"))
    }
}

/// `Some(true)` if `a ≤ b`, `Some(false)` if comparable and not, `None` if incomparable.
pub fn fragment_leq(a: DlFragment, b: DlFragment) -> Option<bool> {
    if a == b {
        Some(true)
    } else if a.level() == 2 && b.level() == 2 {
        None
    } else {
        Some(a.level() < b.level())
    }
}

/// The expressivity order, exposed through `PartialOrd` so `<=` reads naturally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ByExpressivity(pub DlFragment);

impl PartialOrd for ByExpressivity {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering;
        if self.0 == other.0 {
            return Some(Ordering::Equal);
        }
        match fragment_leq(self.0, other.0)? {
            true => Some(Ordering::Less),
            false => Some(Ordering::Greater),
        }
    }
}

/// Schema features the membership table is keyed by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Feature {
    ClassDeclaration,
    PropertyDeclaration,
    SubClassOf,
    SubPropertyOf,
    Domain,
    Range,
    EquivalentClassNamed,
    EquivalentClassExpression,
    DisjointWith,
    EquivalentProperty,
    InverseOf,
    TransitiveProperty,
    FunctionalProperty,
    InverseFunctionalProperty,
    SymmetricProperty,
    AsymmetricProperty,
    IrreflexiveProperty,
    ReflexiveProperty,
    ExistentialSub,
    ExistentialSuper,
    ExistentialEquivalence,
    UniversalSub,
    UniversalSuper,
    UniversalEquivalence,
    IntersectionSub,
    IntersectionSuper,
    IntersectionEquivalence,
    UnionSub,
    UnionSuper,
    UnionEquivalence,
    ComplementSub,
    ComplementSuper,
    ComplementEquivalence,
    HasValueSub,
    HasValueSuper,
    HasValueEquivalence,
    CardinalitySub,
    CardinalitySuper,
    CardinalityEquivalence,
    OneOfSub,
    OneOfSuper,
    OneOfEquivalence,
    InverseRoleInRestriction,
    /// Anything outside the catalogue. Only OwlFull admits it.
    Unrecognized,
}

#[derive(Debug, Deserialize)]
struct MembershipFile {
    version: String,
    features: BTreeMap<Feature, BTreeSet<DlFragment>>,
}

/// The versioned feature → fragment table shipped with the crate.
#[derive(Debug)]
pub struct MembershipTable {
    pub version: String,
    features: BTreeMap<Feature, BTreeSet<DlFragment>>,
}

const MEMBERSHIP_SOURCE: &str = include_str!("../data/fragment-membership.toml");

impl MembershipTable {
    pub fn parse(source: &str) -> Result<Self, toml::de::Error> {
        let file: MembershipFile = toml::from_str(source)?;
        Ok(MembershipTable { version: file.version, features: file.features })
    }

    pub fn builtin() -> &'static MembershipTable {
        static TABLE: OnceLock<MembershipTable> = OnceLock::new();
        TABLE.get_or_init(|| MembershipTable::parse(MEMBERSHIP_SOURCE).expect("bundled membership table is valid"))
    }

    /// Fragments admitting `feature`; OwlFull always does, RdfOnly never.
    pub fn admits(&self, feature: Feature) -> BTreeSet<DlFragment> {
        let mut out = self.features.get(&feature).cloned().unwrap_or_default();
        out.remove(&DlFragment::RdfOnly);
        out.insert(DlFragment::OwlFull);
        out
    }

    pub fn features(&self) -> impl Iterator<Item = Feature> + '_ {
        self.features.keys().copied()
    }
}

#[derive(Clone, Copy)]
enum Position {
    Sub,
    Super,
    Equivalence,
}

impl Position {
    fn flip(self) -> Self {
        match self {
            Position::Sub => Position::Super,
            Position::Super => Position::Sub,
            Position::Equivalence => Position::Equivalence,
        }
    }

    fn pick(self, sub: Feature, sup: Feature, eq: Feature) -> Feature {
        match self {
            Position::Sub => sub,
            Position::Super => sup,
            Position::Equivalence => eq,
        }
    }
}

fn expression_features(expr: &ClassExpr, pos: Position, out: &mut BTreeSet<Feature>) {
    use Feature as F;
    let property = |p: &PropertyExpr, out: &mut BTreeSet<Feature>| {
        if matches!(p, PropertyExpr::Inverse(_)) {
            out.insert(F::InverseRoleInRestriction);
        }
    };
    match expr {
        ClassExpr::Named(_) | ClassExpr::Thing | ClassExpr::Nothing | ClassExpr::Datatype(_) => {}
        ClassExpr::Malformed(_) => {
            out.insert(F::Unrecognized);
        }
        ClassExpr::Some(p, c) => {
            out.insert(pos.pick(F::ExistentialSub, F::ExistentialSuper, F::ExistentialEquivalence));
            property(p, out);
            expression_features(c, pos, out);
        }
        ClassExpr::All(p, c) => {
            out.insert(pos.pick(F::UniversalSub, F::UniversalSuper, F::UniversalEquivalence));
            property(p, out);
            expression_features(c, pos, out);
        }
        ClassExpr::HasValue(p, _) => {
            out.insert(pos.pick(F::HasValueSub, F::HasValueSuper, F::HasValueEquivalence));
            property(p, out);
        }
        ClassExpr::Cardinality { property: p, filler, .. } => {
            out.insert(pos.pick(F::CardinalitySub, F::CardinalitySuper, F::CardinalityEquivalence));
            property(p, out);
            if let Some(c) = filler {
                expression_features(c, pos, out);
            }
        }
        ClassExpr::And(xs) => {
            out.insert(pos.pick(F::IntersectionSub, F::IntersectionSuper, F::IntersectionEquivalence));
            xs.iter().for_each(|x| expression_features(x, pos, out));
        }
        ClassExpr::Or(xs) => {
            out.insert(pos.pick(F::UnionSub, F::UnionSuper, F::UnionEquivalence));
            xs.iter().for_each(|x| expression_features(x, pos, out));
        }
        ClassExpr::Not(c) => {
            out.insert(pos.pick(F::ComplementSub, F::ComplementSuper, F::ComplementEquivalence));
            expression_features(c, pos.flip(), out);
        }
        ClassExpr::OneOf(_) => {
            out.insert(pos.pick(F::OneOfSub, F::OneOfSuper, F::OneOfEquivalence));
        }
    }
}

/// Features exercised by one axiom. Annotations, headers, shapes and
/// assertions exercise none.
pub fn axiom_features(axiom: &Axiom) -> BTreeSet<Feature> {
    use Feature as F;
    let mut out = BTreeSet::new();
    match &axiom.body {
        AxiomBody::Declaration(_, DeclarationKind::Class) => {
            out.insert(F::ClassDeclaration);
        }
        AxiomBody::Declaration(..) => {
            out.insert(F::PropertyDeclaration);
        }
        AxiomBody::SubClassOf(a, b) => {
            if !a.is_complex() && !b.is_complex() {
                out.insert(if matches!(b, ClassExpr::Nothing) { F::DisjointWith } else { F::SubClassOf });
            }
            expression_features(a, Position::Sub, &mut out);
            expression_features(b, Position::Super, &mut out);
        }
        AxiomBody::EquivalentClasses(a, b) => {
            if !a.is_complex() && !b.is_complex() {
                out.insert(F::EquivalentClassNamed);
            } else {
                out.insert(F::EquivalentClassExpression);
            }
            expression_features(a, Position::Equivalence, &mut out);
            expression_features(b, Position::Equivalence, &mut out);
        }
        AxiomBody::DisjointClasses(a, b) => {
            out.insert(F::DisjointWith);
            expression_features(a, Position::Sub, &mut out);
            expression_features(b, Position::Sub, &mut out);
        }
        AxiomBody::SubPropertyOf(..) => {
            out.insert(F::SubPropertyOf);
        }
        AxiomBody::EquivalentProperties(..) => {
            out.insert(F::EquivalentProperty);
        }
        AxiomBody::InverseProperties(..) => {
            out.insert(F::InverseOf);
        }
        AxiomBody::Domain(_, c) => {
            out.insert(F::Domain);
            expression_features(c, Position::Super, &mut out);
        }
        AxiomBody::Range(_, c) => {
            out.insert(F::Range);
            expression_features(c, Position::Super, &mut out);
        }
        AxiomBody::Characteristic(_, c) => {
            out.insert(match c {
                Characteristic::Transitive => F::TransitiveProperty,
                Characteristic::Functional => F::FunctionalProperty,
                Characteristic::InverseFunctional => F::InverseFunctionalProperty,
                Characteristic::Symmetric => F::SymmetricProperty,
                Characteristic::Asymmetric => F::AsymmetricProperty,
                Characteristic::Reflexive => F::ReflexiveProperty,
                Characteristic::Irreflexive => F::IrreflexiveProperty,
            });
        }
        AxiomBody::Unrecognized(_) => {
            out.insert(F::Unrecognized);
        }
        AxiomBody::Annotation(..) | AxiomBody::OntologyHeader(_) | AxiomBody::Shape(_) | AxiomBody::Assertion(..) => {}
    }
    out
}

/// Least fragment admitting every feature in `features`.
///
/// When the admitting set has several minimal elements (only possible among
/// the three profiles) the choice falls to OwlEl, then OwlQl, then OwlRl.
pub fn fragment_for(features: &BTreeSet<Feature>, table: &MembershipTable) -> DlFragment {
    if features.is_empty() {
        return DlFragment::RdfOnly;
    }
    let mut candidates: BTreeSet<DlFragment> = DlFragment::ALL.into_iter().filter(|f| *f != DlFragment::RdfOnly).collect();
    for f in features {
        let admits = table.admits(*f);
        candidates.retain(|c| admits.contains(c));
    }
    let minimal: Vec<DlFragment> = candidates
        .iter()
        .copied()
        .filter(|c| !candidates.iter().any(|d| d != c && fragment_leq(*d, *c) == Some(true)))
        .collect();
    // Enum order already encodes the preference among profiles.
    minimal.into_iter().min().unwrap_or(DlFragment::OwlFull)
}

pub fn detect_fragment_tbox(tbox: &Tbox) -> DlFragment {
    let features: BTreeSet<Feature> = tbox.iter().flat_map(axiom_features).collect();
    fragment_for(&features, MembershipTable::builtin())
}

pub fn detect_fragment(schema: &Graph) -> DlFragment {
    detect_fragment_tbox(&Tbox::from_graph(schema))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpressivityProfile {
    pub fragment: DlFragment,
    pub conformance_ratio: Ratio<u64>,
    pub axiom_census: BTreeMap<AxiomKind, u64>,
    pub diagnostics: Vec<String>,
}

impl ExpressivityProfile {
    pub fn compute(schema: &Graph, data: &Graph) -> Self {
        let tbox = Tbox::from_graph(schema);
        Self::from_tbox(&tbox, schema, data)
    }

    pub fn from_tbox(tbox: &Tbox, schema: &Graph, data: &Graph) -> Self {
        let mut census: BTreeMap<AxiomKind, u64> = BTreeMap::new();
        let mut diagnostics = Vec::new();
        for a in tbox.iter() {
            *census.entry(a.kind()).or_default() += 1;
            match &a.body {
                AxiomBody::Unrecognized(why) => diagnostics.push(why.clone()),
                body if (a.is_logical() || matches!(body, AxiomBody::Declaration(..)))
                    && axiom_features(a).contains(&Feature::Unrecognized) =>
                {
                    diagnostics.push(format!("malformed class expression in {}", a.id()));
                }
                _ => {}
            }
        }
        for name in SignatureTable::of(schema).punned {
            diagnostics.push(format!("punned name used as both class and property: <{name}>"));
        }
        ExpressivityProfile {
            fragment: detect_fragment_tbox(tbox),
            conformance_ratio: conformance_with(tbox, schema, data),
            axiom_census: census,
            diagnostics,
        }
    }
}

fn is_annotation_predicate(p: &Iri, declared: &BTreeSet<Iri>) -> bool {
    matches!(
        p.as_str(),
        rdfs::LABEL | rdfs::COMMENT | rdfs::SEE_ALSO | rdfs::IS_DEFINED_BY | owl::VERSION_INFO | owl::DEPRECATED
    ) || declared.contains(p)
}

/// Data assertions that count towards the conformance denominator: annotations
/// and typings to built-in classes are excluded.
pub fn counted_assertions<'g>(schema_tbox: &Tbox, data: &'g Graph) -> impl Iterator<Item = &'g crate::graph::Triple> + 'g {
    let declared: BTreeSet<Iri> = schema_tbox
        .iter()
        .filter_map(|a| match &a.body {
            AxiomBody::Declaration(i, DeclarationKind::AnnotationProperty) => Some(i.clone()),
            _ => None,
        })
        .collect();
    data.iter().filter(move |t| {
        if is_annotation_predicate(&t.predicate, &declared) {
            return false;
        }
        !(t.predicate.as_str() == rdf::TYPE && t.object.as_iri().is_some_and(is_builtin))
    })
}

/// Share of counted data assertions that conform to the schema.
pub fn conformance_ratio(schema: &Graph, data: &Graph) -> Ratio<u64> {
    conformance_with(&Tbox::from_graph(schema), schema, data)
}

fn conformance_with(tbox: &Tbox, schema: &Graph, data: &Graph) -> Ratio<u64> {
    let table = SignatureTable::of(schema);
    let concepts = table.partition(Partition::Concepts);
    let roles = table.partition(Partition::Roles);

    let mut super_classes: HashMap<&Iri, Vec<&Iri>> = HashMap::new();
    let mut super_props: HashMap<&Iri, Vec<&Iri>> = HashMap::new();
    let mut domains: HashMap<&Iri, Vec<&ClassExpr>> = HashMap::new();
    let mut ranges: HashMap<&Iri, Vec<&ClassExpr>> = HashMap::new();
    for a in tbox.iter() {
        match &a.body {
            AxiomBody::SubClassOf(ClassExpr::Named(x), ClassExpr::Named(y)) => super_classes.entry(x).or_default().push(y),
            AxiomBody::EquivalentClasses(ClassExpr::Named(x), ClassExpr::Named(y)) => {
                super_classes.entry(x).or_default().push(y);
                super_classes.entry(y).or_default().push(x);
            }
            AxiomBody::SubPropertyOf(p, q) => super_props.entry(p).or_default().push(q),
            AxiomBody::EquivalentProperties(p, q) => {
                super_props.entry(p).or_default().push(q);
                super_props.entry(q).or_default().push(p);
            }
            AxiomBody::Domain(p, c) => domains.entry(p).or_default().push(c),
            AxiomBody::Range(p, c) => ranges.entry(p).or_default().push(c),
            _ => {}
        }
    }
    let reach = |start: &Iri, edges: &HashMap<&Iri, Vec<&Iri>>| -> BTreeSet<Iri> {
        let mut seen = BTreeSet::from([start.clone()]);
        let mut stack = vec![start.clone()];
        while let Some(x) = stack.pop() {
            for y in edges.get(&x).into_iter().flatten() {
                if seen.insert((*y).clone()) {
                    stack.push((*y).clone());
                }
            }
        }
        seen
    };

    let mut types: HashMap<Term, BTreeSet<Iri>> = HashMap::new();
    for t in data.with_predicate(rdf::TYPE) {
        if let Some(c) = t.object.as_iri() {
            types.entry(t.subject.to_term()).or_default().extend(reach(c, &super_classes));
        }
    }
    let satisfies = |node: &Term, c: &ClassExpr| -> bool {
        match c {
            ClassExpr::Thing => true,
            ClassExpr::Datatype(d) => match node.as_literal() {
                Some(l) => d.as_str() == rdfs::LITERAL || l.datatype() == d,
                None => false,
            },
            ClassExpr::Named(n) => node.as_literal().is_none() && types.get(node).is_some_and(|ts| ts.contains(n)),
            ClassExpr::Nothing => false,
            // complex constraints are beyond the RDFS approximation
            _ => true,
        }
    };

    let mut total = 0u64;
    let mut good = 0u64;
    for t in counted_assertions(tbox, data) {
        total += 1;
        let ok = if t.predicate.as_str() == rdf::TYPE {
            t.object.as_iri().is_some_and(|c| concepts.contains(c))
        } else if !roles.contains(&t.predicate) {
            false
        } else {
            let subject = match &t.subject {
                Subject::Iri(i) => Term::Iri(i.clone()),
                Subject::Blank(b) => Term::Blank(b.clone()),
            };
            reach(&t.predicate, &super_props).iter().all(|p| {
                domains.get(p).into_iter().flatten().all(|c| satisfies(&subject, c))
                    && ranges.get(p).into_iter().flatten().all(|c| satisfies(&t.object, c))
            })
        };
        if ok {
            good += 1;
        }
    }
    if total == 0 {
        Ratio::from_integer(1)
    } else {
        Ratio::new(good, total)
    }
}
