//! Content-addressed on-disk cache for prime counts and censuses.
//!
//! Entries live at `<dir>/<sha256 of the key>.json`. Keys include the crate
//! version and every parameter of the computation.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::finitefield::{torus_count, PrimeCount};
use crate::geometry::MoveSet;

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "RIDER_TYPES_CACHE";

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(Cache {
            dir: dir.as_ref().to_path_buf(),
        })
    }

    pub fn from_env() -> Option<Result<Self>> {
        std::env::var_os(CACHE_ENV).map(Cache::new)
    }

    pub fn key(parts: &[&str]) -> String {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        for p in parts {
            h.update([0u8]);
            h.update(p.as_bytes());
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put<T: Serialize>(&self, key: &str, value: &T) -> Result<()> {
        let tmp = self.dir.join(format!("{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_vec_pretty(value)?)?;
        fs::rename(tmp, self.path(key))?;
        Ok(())
    }

    pub fn get_or_insert_with<T: Serialize + DeserializeOwned>(
        &self,
        key: &str,
        compute: impl FnOnce() -> Result<T>,
    ) -> Result<T> {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let v = compute()?;
        self.put(key, &v)?;
        Ok(v)
    }

    pub fn prime_count(&self, ms: &MoveSet, q: usize, p: u64) -> Result<PrimeCount> {
        let key = Cache::key(&["prime-count", &ms.to_string(), &q.to_string(), &p.to_string()]);
        self.get_or_insert_with(&key, || torus_count(ms, q, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_reuse() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let ms = MoveSet::named("queen").unwrap();
        let a = cache.prime_count(&ms, 2, 11).unwrap();
        assert_eq!(a, torus_count(&ms, 2, 11).unwrap());
        let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(files.len(), 1);
        assert_eq!(cache.prime_count(&ms, 2, 11).unwrap(), a);
    }

    #[test]
    fn keys_separate_parameters() {
        assert_ne!(Cache::key(&["a", "bc"]), Cache::key(&["ab", "c"]));
        assert_eq!(Cache::key(&["x"]), Cache::key(&["x"]));
    }
}
