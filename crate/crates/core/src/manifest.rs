//! Machine-readable record of one CLI run.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub config_hash: String,
    pub version: String,
    pub wall_clock_seconds: f64,
    pub checks: BTreeMap<String, bool>,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(config_hash: impl Into<String>) -> Self {
        Self {
            config_hash: config_hash.into(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_clock_seconds: 0.0,
            checks: BTreeMap::new(),
            outputs: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.values().all(|&v| v)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("manifest.json");
        let mut m = RunManifest::new("abc");
        m.checks.insert("energy".into(), true);
        m.outputs.push("trace.csv".into());
        m.write(&p).unwrap();
        assert_eq!(RunManifest::read(&p).unwrap(), m);
        assert!(m.all_pass());
    }
}
