//! Batch manifests: several KGs, a task catalogue and mediators, profiled
//! together into a registry directory.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::discoverability::{CatalogueError, TaskCatalogue};
use crate::graph::{parse_graph, Graph, GraphError, Iri, RdfFormat};
use crate::profile::{build_profiles, KgDescriptor};

use super::{emit_document, rebuild_index, Registry, RegistryError};

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("reading {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid manifest {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("parsing {path}: {source}")]
    Graph { path: PathBuf, source: GraphError },
    #[error("task catalogue {path}: {source}")]
    Catalogue { path: PathBuf, source: CatalogueError },
    #[error(transparent)]
    Registry(#[from] RegistryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct KgEntry {
    pub id: String,
    pub schema: String,
    pub data: String,
    pub metadata: String,
}

/// Paths are relative to the manifest file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Manifest {
    pub tasks: String,
    #[serde(default)]
    pub reference: Option<String>,
    pub kgs: Vec<KgEntry>,
    #[serde(default)]
    pub mediators: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct LoadedManifest {
    pub catalogue: TaskCatalogue,
    pub reference: Option<Graph>,
    pub kgs: Vec<KgDescriptor>,
    /// File name and bytes of each mediator document.
    pub mediators: Vec<(String, Vec<u8>)>,
}

fn read(path: &Path) -> Result<Vec<u8>, ManifestError> {
    fs::read(path).map_err(|source| ManifestError::Io { path: path.to_path_buf(), source })
}

/// Reads an RDF file. N-Triples is read through the Turtle parser.
pub fn read_graph(path: &Path) -> Result<Graph, ManifestError> {
    parse_graph(&read(path)?, RdfFormat::Turtle).map_err(|source| ManifestError::Graph { path: path.to_path_buf(), source })
}

pub fn read_catalogue(path: &Path) -> Result<TaskCatalogue, ManifestError> {
    let text = String::from_utf8_lossy(&read(path)?).into_owned();
    TaskCatalogue::from_json(&text).map_err(|source| ManifestError::Catalogue { path: path.to_path_buf(), source })
}

pub fn load_manifest(path: &Path) -> Result<LoadedManifest, ManifestError> {
    let text = read(path)?;
    let manifest: Manifest =
        serde_json::from_slice(&text).map_err(|source| ManifestError::Json { path: path.to_path_buf(), source })?;
    let base = path.parent().unwrap_or(Path::new("."));
    let reference = manifest.reference.as_ref().map(|r| read_graph(&base.join(r))).transpose()?;
    let mut kgs = Vec::new();
    for kg in &manifest.kgs {
        let kg_id = Iri::new(&kg.id).map_err(|source| ManifestError::Graph { path: path.to_path_buf(), source })?;
        kgs.push(KgDescriptor {
            kg_id,
            schema: read_graph(&base.join(&kg.schema))?,
            data: read_graph(&base.join(&kg.data))?,
            metadata: read_graph(&base.join(&kg.metadata))?,
        });
    }
    let mut mediators = Vec::new();
    for m in &manifest.mediators {
        let p = base.join(m);
        let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| m.clone());
        mediators.push((name, read(&p)?));
    }
    Ok(LoadedManifest { catalogue: read_catalogue(&base.join(&manifest.tasks))?, reference, kgs, mediators })
}

/// File name a profile for `kg_id` is stored under.
pub fn profile_file_name(kg_id: &Iri) -> String {
    let stem: String = kg_id
        .local_name()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect();
    let stem = if stem.is_empty() { "kg".to_string() } else { stem };
    format!("{stem}.aap.ttl")
}

/// Profiles every KG of `loaded` in parallel, writes the documents and
/// mediators into `dir` and rebuilds the index.
pub fn populate_registry(dir: &Path, loaded: &LoadedManifest, generated_at: &str) -> Result<Registry, ManifestError> {
    fs::create_dir_all(dir).map_err(|source| ManifestError::Io { path: dir.to_path_buf(), source })?;
    let profiles = build_profiles(&loaded.kgs, &loaded.catalogue, loaded.reference.as_ref(), generated_at);
    for p in &profiles {
        let path = dir.join(profile_file_name(&p.kg_id));
        fs::write(&path, emit_document(p)).map_err(|source| ManifestError::Io { path, source })?;
    }
    for (name, bytes) in &loaded.mediators {
        let path = dir.join(name);
        fs::write(&path, bytes).map_err(|source| ManifestError::Io { path, source })?;
    }
    Ok(rebuild_index(dir)?)
}
