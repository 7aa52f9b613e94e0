pub mod discoverability;
pub mod expressivity;
pub mod graph;
pub mod grounding;
pub mod matcher;
pub mod profile;
pub mod registry;
pub mod tbox;
pub mod trust;
pub mod vocab;

#[cfg(test)]
pub(crate) mod fixtures {
    use std::path::PathBuf;
    use std::sync::OnceLock;

    use crate::matcher::MediatorDescriptor;
    use crate::profile::{build_profiles, AapProfile};
    use crate::registry::manifest::{load_manifest, LoadedManifest};

    pub fn dir() -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
    }

    pub fn manifest() -> &'static LoadedManifest {
        static M: OnceLock<LoadedManifest> = OnceLock::new();
        M.get_or_init(|| load_manifest(&dir().join("manifest.json")).expect("fixture manifest loads"))
    }

    /// KG1, KG2, KG3 in that order.
    pub fn profiles() -> &'static [AapProfile] {
        static P: OnceLock<Vec<AapProfile>> = OnceLock::new();
        P.get_or_init(|| {
            let m = manifest();
            build_profiles(&m.kgs, &m.catalogue, m.reference.as_ref(), "2024-01-01T00:00:00Z")
        })
    }

    pub fn mediators() -> Vec<MediatorDescriptor> {
        let mut out = Vec::new();
        for (_, bytes) in &manifest().mediators {
            let g = crate::graph::parse_graph(bytes, crate::graph::RdfFormat::Turtle).unwrap();
            out.extend(MediatorDescriptor::from_graph(&g).unwrap());
        }
        out
    }
}
