//! Per-group artifact cache with stamps in `meta.json`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use log::info;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("corrupt cache file {path}: {reason}")]
    Corrupt { path: PathBuf, reason: String },
    #[error("cache I/O on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stamp {
    pub group_hash: String,
    pub radius: Option<usize>,
    pub k: Option<usize>,
    pub tool_version: String,
    /// Hash of the stamps of the artifacts this one was computed from.
    pub deps: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KRecord {
    pub k: usize,
    pub validation_radius: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub group: String,
    pub group_hash: String,
    pub tool_version: String,
    /// Constant chosen by `--k auto`.
    pub k_auto: Option<KRecord>,
    /// Explicit constants and whether they passed validation.
    pub k_checked: BTreeMap<usize, bool>,
    pub artifacts: BTreeMap<String, Stamp>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CacheError + '_ {
    move |source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes through a temporary file and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CacheError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(io(dir))?;
    }
    let tmp = path.with_extension(format!(
        "{}.tmp",
        path.extension().and_then(|e| e.to_str()).unwrap_or("")
    ));
    fs::write(&tmp, bytes).map_err(io(&tmp))?;
    fs::rename(&tmp, path).map_err(io(path))
}

pub struct WorkspaceCache {
    dir: PathBuf,
    meta: Meta,
}

impl WorkspaceCache {
    /// Opens `<root>/<group name>`, discarding stamps left by another group
    /// definition or tool version.
    pub fn open(root: &Path, group: &str, canonical_text: &str) -> Result<Self, CacheError> {
        let dir = root.join(group);
        fs::create_dir_all(&dir).map_err(io(&dir))?;
        let group_hash = sha256_hex(canonical_text.as_bytes());
        let meta_path = dir.join("meta.json");
        let fresh = Meta {
            group: group.to_string(),
            group_hash: group_hash.clone(),
            tool_version: TOOL_VERSION.to_string(),
            ..Meta::default()
        };
        let meta = if meta_path.exists() {
            let text = fs::read_to_string(&meta_path).map_err(io(&meta_path))?;
            let meta: Meta = serde_json::from_str(&text).map_err(|e| CacheError::Corrupt {
                path: meta_path.clone(),
                reason: e.to_string(),
            })?;
            if meta.group_hash != group_hash || meta.tool_version != TOOL_VERSION {
                info!("stale workspace {}; discarding stamps", dir.display());
                fresh
            } else {
                meta
            }
        } else {
            fresh
        };
        Ok(WorkspaceCache { dir, meta })
    }

    pub fn meta(&self) -> &Meta {
        &self.meta
    }

    pub fn path(&self, rel: &str) -> PathBuf {
        self.dir.join(rel)
    }

    fn save_meta(&self) -> Result<(), CacheError> {
        let text = serde_json::to_string_pretty(&self.meta).unwrap() + "\n";
        write_atomic(&self.dir.join("meta.json"), text.as_bytes())
    }

    pub fn set_k_auto(&mut self, record: KRecord) -> Result<(), CacheError> {
        self.meta.k_auto = Some(record);
        self.save_meta()
    }

    pub fn set_k_checked(&mut self, k: usize, ok: bool) -> Result<(), CacheError> {
        self.meta.k_checked.insert(k, ok);
        self.save_meta()
    }

    /// Combined hash of the current stamps of `deps`.
    pub fn deps_hash(&self, deps: &[&str]) -> String {
        let mut h = Sha256::new();
        for d in deps {
            h.update(d.as_bytes());
            h.update(b"\0");
            if let Some(s) = self.meta.artifacts.get(*d) {
                h.update(s.sha256.as_bytes());
            }
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }

    fn expected(
        &self,
        radius: Option<usize>,
        k: Option<usize>,
        deps: &[&str],
    ) -> (String, Option<usize>, Option<usize>, String) {
        (
            self.meta.group_hash.clone(),
            radius,
            k,
            self.deps_hash(deps),
        )
    }

    /// The stored artifact if its stamp matches; `Corrupt` if the file does not
    /// match its recorded hash.
    pub fn load(
        &self,
        rel: &str,
        radius: Option<usize>,
        k: Option<usize>,
        deps: &[&str],
    ) -> Result<Option<String>, CacheError> {
        let Some(stamp) = self.meta.artifacts.get(rel) else {
            return Ok(None);
        };
        let (g, r, kk, d) = self.expected(radius, k, deps);
        if stamp.group_hash != g
            || stamp.radius != r
            || stamp.k != kk
            || stamp.deps != d
            || stamp.tool_version != TOOL_VERSION
        {
            info!("stale stamp on {rel}; recomputing");
            return Ok(None);
        }
        let path = self.path(rel);
        let Ok(bytes) = fs::read(&path) else {
            info!("missing {rel}; recomputing");
            return Ok(None);
        };
        if sha256_hex(&bytes) != stamp.sha256 {
            return Err(CacheError::Corrupt {
                path,
                reason: "contents do not match the recorded hash".into(),
            });
        }
        String::from_utf8(bytes)
            .map(Some)
            .map_err(|e| CacheError::Corrupt {
                path,
                reason: e.to_string(),
            })
    }

    pub fn store(
        &mut self,
        rel: &str,
        radius: Option<usize>,
        k: Option<usize>,
        deps: &[&str],
        text: &str,
    ) -> Result<(), CacheError> {
        let path = self.path(rel);
        write_atomic(&path, text.as_bytes())?;
        let (group_hash, radius, k, deps) = self.expected(radius, k, deps);
        self.meta.artifacts.insert(
            rel.to_string(),
            Stamp {
                group_hash,
                radius,
                k,
                tool_version: TOOL_VERSION.to_string(),
                deps,
                sha256: sha256_hex(text.as_bytes()),
            },
        );
        self.save_meta()
    }

    pub fn corrupt(&self, rel: &str, reason: impl std::fmt::Display) -> CacheError {
        CacheError::Corrupt {
            path: self.path(rel),
            reason: reason.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_staleness() {
        let tmp = tempfile::tempdir().unwrap();
        let mut c = WorkspaceCache::open(tmp.path(), "g", "text").unwrap();
        assert_eq!(c.load("a.txt", Some(3), None, &[]).unwrap(), None);
        c.store("a.txt", Some(3), None, &[], "hello").unwrap();
        assert_eq!(
            c.load("a.txt", Some(3), None, &[]).unwrap().as_deref(),
            Some("hello")
        );
        assert_eq!(c.load("a.txt", Some(4), None, &[]).unwrap(), None);
        let c2 = WorkspaceCache::open(tmp.path(), "g", "text").unwrap();
        assert_eq!(
            c2.load("a.txt", Some(3), None, &[]).unwrap().as_deref(),
            Some("hello")
        );
        let c3 = WorkspaceCache::open(tmp.path(), "g", "other").unwrap();
        assert_eq!(c3.load("a.txt", Some(3), None, &[]).unwrap(), None);
        fs::write(c.path("a.txt"), "tampered").unwrap();
        assert!(matches!(
            c.load("a.txt", Some(3), None, &[]),
            Err(CacheError::Corrupt { .. })
        ));
    }

    #[test]
    fn dependency_change_invalidates() {
        let tmp = tempfile::tempdir().unwrap();
        let mut c = WorkspaceCache::open(tmp.path(), "g", "text").unwrap();
        c.store("a", None, None, &[], "1").unwrap();
        c.store("b", None, None, &["a"], "2").unwrap();
        assert!(c.load("b", None, None, &["a"]).unwrap().is_some());
        c.store("a", None, None, &[], "3").unwrap();
        assert!(c.load("b", None, None, &["a"]).unwrap().is_none());
    }
}
