//! On-disk cache of Murphy transition matrices.
//!
//! One JSON file per key holding the version tag, the key, the payload as a
//! string, and the SHA-256 of that string. Writes go to a temporary file in
//! the same directory which is then renamed over the target.

use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    version: u32,
    key: String,
    checksum: String,
    payload: String,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
    version: u32,
}

pub fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

/// Content fingerprint of everything the cached transition depends on.
pub fn cache_key(n: usize, r: usize, convention: &str, parameters: &str) -> String {
    sha256_hex(format!("n={n}\nr={r}\nconvention={convention}\nparameters={parameters}\n").as_bytes())
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self::with_version(dir, CACHE_VERSION)
    }

    pub fn with_version(dir: impl Into<PathBuf>, version: u32) -> Self {
        Cache {
            dir: dir.into(),
            version,
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// `Ok(None)` on a miss or a stale version; an error if the entry is damaged.
    pub fn get(&self, key: &str) -> Result<Option<String>, CliError> {
        let path = self.path_for(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let entry: CacheEntry = serde_json::from_str(&text)
            .map_err(|e| CliError::Integrity(format!("{}: {e}", path.display())))?;
        if entry.version != self.version {
            return Ok(None);
        }
        if entry.key != key || sha256_hex(entry.payload.as_bytes()) != entry.checksum {
            return Err(CliError::Integrity(format!("{}: checksum mismatch", path.display())));
        }
        Ok(Some(entry.payload))
    }

    pub fn put(&self, key: &str, payload: &str) -> Result<(), CliError> {
        fs::create_dir_all(&self.dir)?;
        let entry = CacheEntry {
            version: self.version,
            key: key.to_string(),
            checksum: sha256_hex(payload.as_bytes()),
            payload: payload.to_string(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &entry).map_err(std::io::Error::from)?;
        tmp.flush()?;
        tmp.persist(self.path_for(key)).map_err(|e| e.error)?;
        Ok(())
    }
}
