//! File-based registry: a directory of Turtle profile and mediator documents
//! with a JSON index of content digests.

pub mod document;
pub mod manifest;
pub mod report;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::graph::{parse_graph, Graph, Iri, RdfFormat};
use crate::matcher::MediatorDescriptor;
use crate::profile::AapProfile;
use crate::vocab::{aap, rdf};

pub use document::{emit_document, load_document, profile_from_graph, profile_iri, profile_to_graph, DocumentError};

pub const INDEX_FILE: &str = "index.json";

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("registry directory {0} does not exist")]
    NotFound(PathBuf),
    #[error("reading {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid registry index {path}: {source}")]
    Index { path: PathBuf, source: serde_json::Error },
    #[error("kg id <{0}> is registered more than once")]
    DuplicateKgId(Iri),
    #[error("digest mismatch for {path}: index records {expected}, file has {actual}")]
    DigestMismatch { path: PathBuf, expected: String, actual: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProfileEntry {
    pub kg_id: Iri,
    pub path: String,
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MediatorEntry {
    pub id: Iri,
    pub path: String,
    pub digest: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryIndex {
    pub profiles: Vec<ProfileEntry>,
    pub mediators: Vec<MediatorEntry>,
}

#[derive(Debug, Clone, Default)]
pub struct Registry {
    pub index: RegistryIndex,
    pub profiles: Vec<AapProfile>,
    pub mediators: Vec<MediatorDescriptor>,
    /// Files skipped because they could not be read as documents.
    pub warnings: Vec<String>,
}

impl Registry {
    /// Looks a profile up by full KG id, or by its last segment when unambiguous.
    pub fn find(&self, key: &str) -> Option<&AapProfile> {
        if let Some(p) = self.profiles.iter().find(|p| p.kg_id.as_str() == key) {
            return Some(p);
        }
        let mut hits = self.profiles.iter().filter(|p| p.kg_id.local_name() == key);
        match (hits.next(), hits.next()) {
            (Some(p), None) => Some(p),
            _ => None,
        }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// File digest and parsed content.
type Read = (String, Loaded);

enum Loaded {
    Profile(Box<AapProfile>),
    Mediators(Vec<MediatorDescriptor>),
    Other,
    Broken(String),
}

fn is_typed(g: &Graph, class: &str) -> bool {
    g.with_predicate(rdf::TYPE).any(|t| t.object.as_iri().is_some_and(|o| o.as_str() == class))
}

fn read_document(bytes: &[u8]) -> Loaded {
    let g = match parse_graph(bytes, RdfFormat::Turtle) {
        Ok(g) => g,
        Err(e) => return Loaded::Broken(e.to_string()),
    };
    if is_typed(&g, aap::PROFILE) {
        document::profile_from_graph(&g).map_or_else(|e| Loaded::Broken(e.to_string()), |p| Loaded::Profile(Box::new(p)))
    } else if is_typed(&g, aap::MEDIATOR) {
        MediatorDescriptor::from_graph(&g).map_or_else(|e| Loaded::Broken(e.to_string()), Loaded::Mediators)
    } else {
        Loaded::Other
    }
}

fn turtle_files(dir: &Path) -> Result<Vec<String>, RegistryError> {
    let io = |source| RegistryError::Io { path: dir.to_path_buf(), source };
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(io)? {
        let entry = entry.map_err(io)?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if name.ends_with(".ttl") && entry.path().is_file() {
            out.push(name);
        }
    }
    out.sort();
    Ok(out)
}

fn read_index(dir: &Path) -> Result<Option<RegistryIndex>, RegistryError> {
    let path = dir.join(INDEX_FILE);
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&path).map_err(|source| RegistryError::Io { path: path.clone(), source })?;
    serde_json::from_str(&text).map(Some).map_err(|source| RegistryError::Index { path, source })
}

/// Loads every profile and mediator document in `dir`.
///
/// Files listed in `index.json` must match their recorded digest. Other `.ttl`
/// files are picked up as well. Files that fail to parse are skipped with a
/// warning.
pub fn load_registry(dir: &Path) -> Result<Registry, RegistryError> {
    load(dir, true)
}

/// Rescans `dir` and rewrites its `index.json` with fresh digests.
pub fn rebuild_index(dir: &Path) -> Result<Registry, RegistryError> {
    let registry = load(dir, false)?;
    let path = dir.join(INDEX_FILE);
    let mut text = serde_json::to_string_pretty(&registry.index).expect("index serializes");
    text.push('\n');
    fs::write(&path, text).map_err(|source| RegistryError::Io { path, source })?;
    Ok(registry)
}

fn load(dir: &Path, verify: bool) -> Result<Registry, RegistryError> {
    if !dir.is_dir() {
        return Err(RegistryError::NotFound(dir.to_path_buf()));
    }
    let index = if verify { read_index(dir)? } else { None };
    let mut expected: BTreeMap<String, String> = BTreeMap::new();
    if let Some(index) = &index {
        let mut seen = BTreeSet::new();
        for e in &index.profiles {
            if !seen.insert(&e.kg_id) {
                return Err(RegistryError::DuplicateKgId(e.kg_id.clone()));
            }
            expected.insert(e.path.clone(), e.digest.clone());
        }
        for e in &index.mediators {
            expected.insert(e.path.clone(), e.digest.clone());
        }
    }
    let mut files: BTreeSet<String> = turtle_files(dir)?.into_iter().collect();
    files.extend(expected.keys().cloned());

    let results: Vec<(String, Result<Read, RegistryError>)> = files
        .into_par_iter()
        .map(|name| {
            let path = dir.join(&name);
            let outcome = fs::read(&path).map_err(|source| RegistryError::Io { path: path.clone(), source }).and_then(
                |bytes| {
                    let actual = digest(&bytes);
                    if let Some(want) = expected.get(&name).filter(|want| **want != actual) {
                        return Err(RegistryError::DigestMismatch { path: path.clone(), expected: want.clone(), actual });
                    }
                    Ok((actual, read_document(&bytes)))
                },
            );
            (name, outcome)
        })
        .collect();

    let mut registry = Registry::default();
    let mut by_id: BTreeSet<Iri> = BTreeSet::new();
    for (name, outcome) in results {
        let (file_digest, loaded) = outcome?;
        match loaded {
            Loaded::Profile(p) => {
                if !by_id.insert(p.kg_id.clone()) {
                    return Err(RegistryError::DuplicateKgId(p.kg_id));
                }
                registry.index.profiles.push(ProfileEntry { kg_id: p.kg_id.clone(), path: name, digest: file_digest });
                registry.profiles.push(*p);
            }
            Loaded::Mediators(ms) => {
                for m in ms {
                    registry.index.mediators.push(MediatorEntry {
                        id: m.id.clone(),
                        path: name.clone(),
                        digest: file_digest.clone(),
                    });
                    registry.mediators.push(m);
                }
            }
            Loaded::Other => {}
            Loaded::Broken(why) => registry.warnings.push(format!("skipped {name}: {why}")),
        }
    }
    registry.profiles.sort_by(|a, b| a.kg_id.cmp(&b.kg_id));
    registry.mediators.sort_by(|a, b| a.id.cmp(&b.id));
    registry.index.profiles.sort_by(|a, b| a.kg_id.cmp(&b.kg_id));
    registry.index.mediators.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(registry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::registry::manifest::{populate_registry, profile_file_name};

    fn populated() -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        populate_registry(dir.path(), fixtures::manifest(), "2024-01-01T00:00:00Z").unwrap();
        dir
    }

    #[test]
    fn empty_directory_gives_empty_index() {
        let dir = tempfile::tempdir().unwrap();
        let r = rebuild_index(dir.path()).unwrap();
        assert_eq!(r.index, RegistryIndex::default());
        assert!(r.profiles.is_empty() && r.warnings.is_empty());
        assert_eq!(load_registry(dir.path()).unwrap().index, RegistryIndex::default());
    }

    #[test]
    fn missing_directory() {
        assert!(matches!(load_registry(Path::new("/nonexistent/aap-registry")), Err(RegistryError::NotFound(_))));
    }

    #[test]
    fn fixture_registry_round_trips() {
        let dir = populated();
        let r = load_registry(dir.path()).unwrap();
        assert_eq!(r.profiles.len(), 3);
        assert_eq!(r.mediators.len(), 2);
        assert!(r.warnings.is_empty());
        assert_eq!(r.profiles, fixtures::profiles());
        assert!(r.find("KG2").is_some());
        assert!(r.find("http://example.org/kg/KG3").is_some());
        assert!(r.find("KG9").is_none());
    }

    #[test]
    fn corrupted_unindexed_file_is_skipped_with_warning() {
        let dir = populated();
        let name = profile_file_name(&fixtures::profiles()[1].kg_id);
        fs::write(dir.path().join(&name), "this is @@ not turtle").unwrap();
        let mut index: RegistryIndex = serde_json::from_str(&fs::read_to_string(dir.path().join(INDEX_FILE)).unwrap()).unwrap();
        index.profiles.retain(|e| e.path != name);
        fs::write(dir.path().join(INDEX_FILE), serde_json::to_string(&index).unwrap()).unwrap();

        let r = load_registry(dir.path()).unwrap();
        assert_eq!(r.profiles.len(), 2);
        assert_eq!(r.warnings.len(), 1);
        assert!(r.warnings[0].contains(&name));
    }

    #[test]
    fn edited_indexed_file_is_a_digest_mismatch() {
        let dir = populated();
        let path = dir.path().join(profile_file_name(&fixtures::profiles()[0].kg_id));
        let mut bytes = fs::read(&path).unwrap();
        bytes.extend_from_slice(b"\n# edited\n");
        fs::write(&path, bytes).unwrap();
        assert!(matches!(load_registry(dir.path()), Err(RegistryError::DigestMismatch { .. })));
        rebuild_index(dir.path()).unwrap();
        assert_eq!(load_registry(dir.path()).unwrap().profiles.len(), 3);
    }

    #[test]
    fn duplicate_kg_id_is_rejected() {
        let dir = populated();
        let src = dir.path().join(profile_file_name(&fixtures::profiles()[0].kg_id));
        fs::copy(&src, dir.path().join("copy.aap.ttl")).unwrap();
        assert!(matches!(load_registry(dir.path()), Err(RegistryError::DuplicateKgId(_))));

        let dir = populated();
        let mut index: RegistryIndex = serde_json::from_str(&fs::read_to_string(dir.path().join(INDEX_FILE)).unwrap()).unwrap();
        let first = index.profiles[0].clone();
        index.profiles.push(first);
        fs::write(dir.path().join(INDEX_FILE), serde_json::to_string(&index).unwrap()).unwrap();
        assert!(matches!(load_registry(dir.path()), Err(RegistryError::DuplicateKgId(_))));
    }

    #[test]
    fn index_records_digests() {
        let dir = populated();
        let r = load_registry(dir.path()).unwrap();
        for e in &r.index.profiles {
            assert_eq!(e.digest, digest(&fs::read(dir.path().join(&e.path)).unwrap()));
        }
        assert!(r.index.mediators.iter().all(|m| m.digest.starts_with("sha256:")));
    }
}
