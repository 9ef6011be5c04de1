//! Versioned JSON result cache with atomic replacement on save.

use std::collections::BTreeMap;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::CliError;

/// Bumping this discards every stored entry.
pub const CACHE_VERSION: u32 = 1;

const FILE_NAME: &str = "results.json";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub payload: Value,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    runs: u64,
    entries: BTreeMap<String, CacheEntry>,
}

#[derive(Debug)]
pub struct ResultCache {
    path: PathBuf,
    file: CacheFile,
    dirty: bool,
}

/// Stable key from the computation kind, its exact parameters, the method and the seed.
pub fn cache_key(kind: &str, params: &Value, method: &str, seed: u64) -> String {
    json!({ "kind": kind, "params": params, "method": method, "seed": seed }).to_string()
}

impl ResultCache {
    /// Opens the cache in `dir`; a missing file, or one written by another
    /// version, starts empty.
    pub fn open(dir: &Path) -> Result<Self, CliError> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(FILE_NAME);
        let mut file = match std::fs::read_to_string(&path) {
            Ok(text) => match serde_json::from_str::<CacheFile>(&text) {
                Ok(f) if f.version == CACHE_VERSION => f,
                _ => CacheFile::empty(),
            },
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => CacheFile::empty(),
            Err(e) => return Err(e.into()),
        };
        file.runs += 1;
        Ok(ResultCache {
            path,
            file,
            dirty: true,
        })
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.file.entries.get(key).map(|e| &e.payload)
    }

    pub fn insert(&mut self, key: String, payload: Value) {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        self.file.entries.insert(key, CacheEntry { payload, timestamp });
        self.dirty = true;
    }

    pub fn len(&self) -> usize {
        self.file.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.file.entries.is_empty()
    }

    /// About one key in ten is picked per run, rotating with the run counter.
    pub fn sampled_for_recheck(&self, key: &str) -> bool {
        let mut h = DefaultHasher::new();
        key.hash(&mut h);
        (h.finish().wrapping_add(self.file.runs)) % 10 == 0
    }

    /// Writes to a temporary file in the same directory, then renames it over the old one.
    pub fn save(&mut self) -> Result<(), CliError> {
        if !self.dirty {
            return Ok(());
        }
        let dir = self.path.parent().unwrap_or(Path::new("."));
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(serde_json::to_string(&self.file)?.as_bytes())?;
        tmp.flush()?;
        tmp.persist(&self.path).map_err(|e| CliError::Internal(e.to_string()))?;
        self.dirty = false;
        Ok(())
    }
}

impl CacheFile {
    fn empty() -> Self {
        CacheFile {
            version: CACHE_VERSION,
            runs: 0,
            entries: BTreeMap::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn persists_and_reloads() {
        let dir = tempfile::tempdir().unwrap();
        let key = cache_key("saturation", &json!({"d": 6}), "modular", 1);
        {
            let mut c = ResultCache::open(dir.path()).unwrap();
            assert!(c.get(&key).is_none());
            c.insert(key.clone(), json!([5, 3]));
            c.save().unwrap();
        }
        let c = ResultCache::open(dir.path()).unwrap();
        assert_eq!(c.get(&key), Some(&json!([5, 3])));
        assert_eq!(c.file.runs, 2);
    }

    #[test]
    fn version_bump_invalidates() {
        let dir = tempfile::tempdir().unwrap();
        let stale = json!({"version": CACHE_VERSION + 1, "runs": 3, "entries": {"k": {"payload": 1, "timestamp": 0}}});
        std::fs::write(dir.path().join(FILE_NAME), stale.to_string()).unwrap();
        let c = ResultCache::open(dir.path()).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn keys_separate_methods_and_seeds() {
        let p = json!({"d": 8});
        assert_ne!(cache_key("saturation", &p, "modular", 1), cache_key("saturation", &p, "rational", 1));
        assert_ne!(cache_key("saturation", &p, "modular", 1), cache_key("saturation", &p, "modular", 2));
    }
}
