//! Run manifest: what was produced, from which configuration, with content hashes.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::PipelineConfig;

pub const TOOL_NAME: &str = "conceptmine";

/// One artifact written by a run: its path relative to the output
/// directory and the SHA-256 of its bytes.
#[derive(Debug, Clone, Serialize)]
pub struct ArtifactRecord {
    pub path: String,
    pub sha256: String,
}

/// Summary of a completed `run`, written next to the stage artifacts.
///
/// `created_unix_s` and `timings_ms` describe the run itself and vary
/// between invocations; every other field is a pure function of the
/// inputs and configuration.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub created_unix_s: u64,
    pub config: PipelineConfig,
    pub artifacts: BTreeMap<String, ArtifactRecord>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl RunManifest {
    pub fn new(config: PipelineConfig) -> Self {
        let created_unix_s = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            tool: TOOL_NAME,
            version: env!("CARGO_PKG_VERSION"),
            created_unix_s,
            config,
            artifacts: BTreeMap::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn record(&mut self, stage: &str, file_name: &str, bytes: &[u8], elapsed_ms: f64) {
        self.artifacts.insert(
            stage.to_string(),
            ArtifactRecord {
                path: file_name.to_string(),
                sha256: sha256_hex(bytes),
            },
        );
        self.timings_ms.insert(stage.to_string(), elapsed_ms);
    }

    pub fn write(&self, out_dir: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self).context("serializing run manifest")?;
        text.push('\n');
        crate::run::write_atomic(&out_dir.join("manifest.json"), text.as_bytes())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for byte in digest {
        use std::fmt::Write;
        let _ = write!(out, "{byte:02x}");
    }
    out
}
