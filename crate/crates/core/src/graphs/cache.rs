//! Content-addressed on-disk snapshot cache.
//!
//! One JSON file per key under the cache root. Files are written to a
//! temporary name and renamed into place, so readers never observe a
//! partial file. Anything unreadable is treated as a miss.

use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use super::builders::BuildStats;
use super::graph::{EdgeKind, LabeledGraph, NodeKey, NodeKind};
use super::snapshot::{GraphKind, Snapshot, SnapshotMode};
use crate::ingest::Venue;

/// Bumping this invalidates every existing cache entry.
pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Deterministic key for one snapshot. Distinct inputs give distinct keys:
/// the components are joined by `.`, which none of them can contain.
pub fn snapshot_cache_key(
    kind: GraphKind,
    venues: &BTreeSet<Venue>,
    year: i32,
    mode: SnapshotMode,
    corpus_digest: &str,
) -> String {
    let venues = if venues.is_empty() {
        "none".to_owned()
    } else {
        venues
            .iter()
            .map(|v| v.as_str())
            .collect::<Vec<_>>()
            .join("+")
    };
    format!(
        "v{CACHE_FORMAT_VERSION}.{}.{}.{venues}.{year}.{corpus_digest}",
        kind.as_str(),
        mode.as_str()
    )
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format_version: u32,
    key: String,
    year: i32,
    directed: bool,
    multigraph: bool,
    nodes: Vec<(NodeKind, String)>,
    edges: Vec<(u32, u32, EdgeKind, u32)>,
    stats: CachedStats,
}

#[derive(Serialize, Deserialize)]
struct CachedStats {
    skipped_references: u64,
    self_references: u64,
    zero_author_records: u64,
    unresolved_authors: u64,
}

impl CacheFile {
    fn from_snapshot(key: &str, snap: &Snapshot) -> Self {
        let g = &snap.graph;
        Self {
            format_version: CACHE_FORMAT_VERSION,
            key: key.to_owned(),
            year: snap.year,
            directed: g.is_directed(),
            multigraph: g.is_multigraph(),
            nodes: g.nodes().map(|k| (k.kind, k.id.clone())).collect(),
            edges: g
                .edges()
                .map(|e| (e.source, e.target, e.kind, e.multiplicity))
                .collect(),
            stats: CachedStats {
                skipped_references: snap.stats.skipped_references,
                self_references: snap.stats.self_references,
                zero_author_records: snap.stats.zero_author_records,
                unresolved_authors: snap.stats.unresolved_authors,
            },
        }
    }

    fn into_snapshot(self, key: &str) -> Result<Snapshot, String> {
        if self.format_version != CACHE_FORMAT_VERSION {
            return Err(format!("format version {}", self.format_version));
        }
        if self.key != key {
            return Err(format!("key mismatch ({})", self.key));
        }
        let mut graph = LabeledGraph::new(self.directed, self.multigraph);
        let n = self.nodes.len();
        for (kind, id) in self.nodes {
            graph.add_node(NodeKey { kind, id });
        }
        if graph.node_count() != n {
            return Err("duplicate node".into());
        }
        for (s, t, kind, mult) in self.edges {
            if mult == 0 || (!self.multigraph && mult > 1) {
                return Err(format!("bad multiplicity {mult}"));
            }
            for _ in 0..mult {
                if !graph.add_edge(s, t, kind).map_err(|e| e.to_string())? {
                    return Err("duplicate edge".into());
                }
            }
        }
        let s = self.stats;
        Ok(Snapshot {
            year: self.year,
            graph,
            stats: BuildStats {
                skipped_references: s.skipped_references,
                self_references: s.self_references,
                zero_author_records: s.zero_author_records,
                unresolved_authors: s.unresolved_authors,
            },
        })
    }
}

#[derive(Debug)]
pub struct SnapshotCache {
    root: PathBuf,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl SnapshotCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.root.join(format!("{key}.json"))
    }

    /// Returns the cached snapshot on a full key match. Unreadable or
    /// inconsistent entries are logged and reported as a miss.
    pub fn load(&self, key: &str) -> Option<Snapshot> {
        let path = self.path_for(key);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return None,
            Err(e) => {
                log::warn!(
                    "cache entry {} unreadable ({e}); recomputing",
                    path.display()
                );
                return None;
            }
        };
        let parsed = serde_json::from_slice::<CacheFile>(&bytes)
            .map_err(|e| e.to_string())
            .and_then(|f| f.into_snapshot(key));
        match parsed {
            Ok(snap) => Some(snap),
            Err(e) => {
                log::warn!(
                    "cache entry {} is corrupt ({e}); recomputing",
                    path.display()
                );
                None
            }
        }
    }

    pub fn store(&self, key: &str, snapshot: &Snapshot) -> io::Result<()> {
        fs::create_dir_all(&self.root)?;
        let body = serde_json::to_vec(&CacheFile::from_snapshot(key, snapshot))
            .map_err(io::Error::other)?;
        let tmp = self.root.join(format!(
            ".{key}.{}.{}.tmp",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, body)?;
        fs::rename(&tmp, self.path_for(key)).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }
}
