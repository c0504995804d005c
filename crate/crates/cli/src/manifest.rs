//! Run manifests: which files went in, which came out, and the exact bytes
//! of both, so any result can be re-verified against its inputs.

use anyhow::Result;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub created_unix_s: u64,
    /// Scenario ids the run covered; empty for `synth`.
    pub scenarios: Vec<String>,
    pub seed: Option<u64>,
    /// Input path → sha256 of its bytes.
    pub inputs: BTreeMap<String, String>,
    /// Output file name → sha256 of its bytes.
    pub outputs: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn new(scenarios: Vec<String>, seed: Option<u64>) -> RunManifest {
        let created_unix_s = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        RunManifest {
            tool: format!("chemdecarb {}", env!("CARGO_PKG_VERSION")),
            created_unix_s,
            scenarios,
            seed,
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
        }
    }

    pub fn record_input(&mut self, path: &Path) -> Result<()> {
        self.inputs
            .insert(path.display().to_string(), sha256_file(path)?);
        Ok(())
    }

    /// Outputs are keyed by file name: they live next to the manifest.
    pub fn record_output(&mut self, path: &Path) -> Result<()> {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        self.outputs.insert(name, sha256_file(path)?);
        Ok(())
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        chemdecarb_core::config::write_json(path, self)?;
        Ok(())
    }
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path)
        .map_err(|e| chemdecarb_core::Error::io(path.display().to_string(), e))?;
    let digest = Sha256::digest(&bytes);
    Ok(format!("{digest:x}"))
}
