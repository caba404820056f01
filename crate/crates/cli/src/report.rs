use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// One input of a run, referenced by the hash of its canonical JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputRef {
    pub role: String,
    pub descriptor: String,
    pub sha256: String,
}

impl InputRef {
    pub fn new(role: &str, descriptor: &str, canonical_json: &str) -> InputRef {
        let digest = Sha256::digest(canonical_json.as_bytes());
        InputRef {
            role: role.into(),
            descriptor: descriptor.into(),
            sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub inputs: Vec<InputRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub exit_code: i32,
    pub outcome: serde_json::Value,
    /// Wall-clock time; the only field that differs between reruns.
    pub elapsed_ms: u64,
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        RunReport {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            inputs: Vec::new(),
            field: None,
            seed: None,
            exit_code: 0,
            outcome: serde_json::Value::Null,
            elapsed_ms: 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Writes `report.json` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join("report.json");
        std::fs::write(&path, self.to_json() + "\n")
            .with_context(|| format!("writing {}", path.display()))
    }
}
