use std::fs;
use std::path::{Path, PathBuf};

use carlitz_core::check::Verdict;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: u32 = 1;
pub const CACHE_ENV: &str = "CARLITZ_CACHE_DIR";

#[derive(Clone, Debug, Serialize)]
pub struct CacheInfo {
    /// `hit`, `miss` or `disabled`.
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub key: Option<String>,
    pub irreducible_hits: u64,
    pub irreducible_misses: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub verdict: Verdict,
    pub cache: CacheInfo,
    pub timing_ms: u64,
}

/// What a command computes; this is what the result cache stores.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Outcome {
    pub results: Value,
    pub verdict: Verdict,
}

pub fn default_cache_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os(CACHE_ENV) {
        return Some(PathBuf::from(dir));
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(dir).join("carlitz"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("carlitz"))
}

pub struct ResultCache {
    dir: Option<PathBuf>,
}

impl ResultCache {
    pub fn new(dir: Option<PathBuf>) -> ResultCache {
        ResultCache { dir }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn key(command: &str, inputs: &Value) -> String {
        let canon = json!({"schema": SCHEMA, "version": env!("CARGO_PKG_VERSION"), "command": command, "inputs": inputs});
        hex::encode(Sha256::digest(canon.to_string().as_bytes()))
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join("results").join(format!("{key}.json")))
    }

    pub fn load(&self, key: &str) -> Option<Outcome> {
        let bytes = fs::read(self.path(key)?).ok()?;
        serde_json::from_slice(&bytes).ok()
    }

    /// Best effort; a cache that cannot be written is skipped.
    pub fn store(&self, key: &str, outcome: &Outcome) {
        let Some(path) = self.path(key) else { return };
        let Some(parent) = path.parent() else { return };
        if fs::create_dir_all(parent).is_err() {
            return;
        }
        let tmp = path.with_extension("json.tmp");
        if let Ok(body) = serde_json::to_vec(outcome) {
            if fs::write(&tmp, body).is_ok() {
                let _ = fs::rename(&tmp, &path);
            }
        }
    }
}
