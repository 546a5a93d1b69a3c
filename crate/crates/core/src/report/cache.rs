//! Content-addressed cache of report texts.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::config::{Command, Emit, JobConfig};
use crate::error::Result;

/// SHA-256 over the canonical input, the command, the output format, every
/// numeric parameter and the toolkit version.
pub fn cache_key(command: Command, emit: Emit, cfg: &JobConfig, canonical_input: &Value) -> String {
    let body = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": command.name(),
        "emit": emit,
        "config": cfg,
        "input": canonical_input,
    });
    // serde_json objects are key-sorted, so the text is canonical
    hex::encode(Sha256::digest(body.to_string().as_bytes()))
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.out"))
    }

    /// Stored exit code and text for `key`. Entries are `key\nexit code\ntext`;
    /// a mismatched or unreadable entry is reported on stderr and treated as a miss.
    pub fn get(&self, key: &str) -> Option<(i32, String)> {
        let path = self.path(key);
        let raw = std::fs::read_to_string(&path).ok()?;
        let mut parts = raw.splitn(3, '\n');
        match (parts.next(), parts.next().and_then(|c| c.parse().ok()), parts.next()) {
            (Some(k), Some(code), Some(text)) if k == key => Some((code, text.to_string())),
            _ => {
                eprintln!("warning: ignoring corrupt cache entry {}", path.display());
                None
            }
        }
    }

    /// Stores by writing a temporary file and renaming it into place.
    pub fn put(&self, key: &str, exit_code: i32, text: &str) -> Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        write!(tmp, "{key}\n{exit_code}\n{text}")?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_track_parameters() {
        let input = json!({"nvars": 2});
        let cfg = JobConfig::default();
        let a = cache_key(Command::Index, Emit::Json, &cfg, &input);
        assert_eq!(a, cache_key(Command::Index, Emit::Json, &cfg, &input));
        let other = JobConfig { n_range: Some([3, 5]), ..Default::default() };
        assert_ne!(a, cache_key(Command::Index, Emit::Json, &other, &input));
        assert_ne!(a, cache_key(Command::Certify, Emit::Json, &cfg, &input));
    }

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        assert_eq!(cache.get("abc"), None);
        cache.put("abc", 4, "{\"x\": 1}\n").unwrap();
        assert_eq!(cache.get("abc"), Some((4, "{\"x\": 1}\n".to_string())));
        std::fs::write(dir.path().join("abc.out"), "garbage").unwrap();
        assert_eq!(cache.get("abc"), None);
    }
}
