//! Content-addressed cache of serialized invariant results.
//!
//! Entries live at `<dir>/<first two hex digits>/<sha256>.json`. Writes go to
//! a temporary file in the target directory and are renamed into place, so
//! concurrent writers never expose a partial entry.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::TOOL_VERSION;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "SURGEON_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub value: String,
    pub tool_version: String,
}

/// Hash of an operation name and its canonical input.
pub fn cache_key(op: &str, canonical_input: &str) -> String {
    let mut h = Sha256::new();
    h.update(op.as_bytes());
    h.update([0u8]);
    h.update(canonical_input.as_bytes());
    hex::encode(h.finalize())
}

/// Cache directory: explicit flag, then [`CACHE_ENV`], then the platform data
/// directory.
pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    if let Some(p) = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()) {
        return Some(PathBuf::from(p));
    }
    dirs::data_dir().map(|d| d.join("surgeon").join("cache"))
}

#[derive(Debug, Clone, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
    pub hits: usize,
    pub misses: usize,
    /// I/O problems met so far; the computation went ahead uncached.
    pub warnings: Vec<String>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir, ..Cache::default() }
    }

    pub fn disabled() -> Self {
        Cache::default()
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(&key[..2]).join(format!("{key}.json")))
    }

    /// Stored value for `key`, unless absent, unreadable or written by
    /// another tool version.
    pub fn get(&mut self, key: &str) -> Option<String> {
        let path = self.path(key)?;
        let found = fs::read(&path)
            .ok()
            .and_then(|bytes| serde_json::from_slice::<CacheEntry>(&bytes).ok())
            .filter(|e| e.key == key && e.tool_version == TOOL_VERSION)
            .map(|e| e.value);
        match found {
            Some(v) => {
                self.hits += 1;
                Some(v)
            }
            None => {
                self.misses += 1;
                None
            }
        }
    }

    pub fn put(&mut self, key: &str, value: &str) {
        let Some(path) = self.path(key) else { return };
        let entry =
            CacheEntry { key: key.to_string(), value: value.to_string(), tool_version: TOOL_VERSION.to_string() };
        if let Err(e) = write_atomic(&path, &serde_json::to_vec(&entry).expect("entry serializes")) {
            self.warnings.push(format!("cache write to {} failed: {e}", path.display()));
        }
    }

    /// Cached `compute()`, serialized as JSON.
    pub fn get_or_compute<T, E>(&mut self, key: &str, compute: impl FnOnce() -> Result<T, E>) -> Result<T, E>
    where
        T: Serialize + for<'de> Deserialize<'de>,
    {
        if let Some(v) = self.get(key) {
            if let Ok(t) = serde_json::from_str(&v) {
                return Ok(t);
            }
        }
        let t = compute()?;
        self.put(key, &serde_json::to_string(&t).expect("value serializes"));
        Ok(t)
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = path.parent().expect("entries live in a subdirectory");
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
