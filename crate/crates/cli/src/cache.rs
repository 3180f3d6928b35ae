//! File cache for exact payloads.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::Value;

pub const CACHE_ENV: &str = "EQUIMATCH_CACHE_DIR";

#[derive(Debug, Clone)]
pub struct Cache {
    root: PathBuf,
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Cache { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn path(&self, key: &str) -> PathBuf {
        self.root.join(format!("{key}.json"))
    }

    /// Unreadable or corrupt entries count as misses.
    pub fn get(&self, key: &str) -> Option<Value> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Writes to a temporary file in the cache directory, then renames it
    /// into place.
    pub fn put(&self, key: &str, value: &Value) -> std::io::Result<()> {
        std::fs::create_dir_all(&self.root)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.root)?;
        tmp.write_all(crate::encode::to_string(value).as_bytes())?;
        tmp.flush()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }

    /// Cached value for `key`, computing and storing it on a miss.
    pub fn get_or_insert<E>(&self, key: &str, compute: impl FnOnce() -> Result<Value, E>) -> Result<Value, E> {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let v = compute()?;
        // a failed write only loses the cache entry
        let _ = self.put(key, &v);
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip_and_overwrite() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("nested"));
        assert!(cache.get("k").is_none());
        cache.put("k", &json!({"a": 1})).unwrap();
        assert_eq!(cache.get("k"), Some(json!({"a": 1})));
        cache.put("k", &json!({"a": 2})).unwrap();
        assert_eq!(cache.get("k"), Some(json!({"a": 2})));
        let leftovers = std::fs::read_dir(cache.root()).unwrap().count();
        assert_eq!(leftovers, 1);
    }

    #[test]
    fn corrupt_entry_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        std::fs::write(dir.path().join("bad.json"), "{not json").unwrap();
        let v = cache.get_or_insert::<()>("bad", || Ok(json!(3))).unwrap();
        assert_eq!(v, json!(3));
        assert_eq!(cache.get("bad"), Some(json!(3)));
    }
}
