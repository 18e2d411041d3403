//! `manifest.json`: every artifact of a run with its SHA-256.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

pub const FILE_NAME: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub sha256: String,
    pub bytes: u64,
}

/// Paths are relative to the output root, `/`-separated.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub files: BTreeMap<String, Entry>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl Manifest {
    pub fn add(&mut self, root: &Path, file: &Path) -> Result<()> {
        let bytes = fs::read(file).map_err(|e| CliError::io(file, e))?;
        let rel = file.strip_prefix(root).unwrap_or(file);
        let key = rel
            .components()
            .map(|c| c.as_os_str().to_string_lossy())
            .collect::<Vec<_>>()
            .join("/");
        self.files.insert(
            key,
            Entry {
                sha256: sha256_hex(&bytes),
                bytes: bytes.len() as u64,
            },
        );
        Ok(())
    }

    pub fn write(&self, root: &Path) -> Result<PathBuf> {
        let path = root.join(FILE_NAME);
        let mut text = serde_json::to_string_pretty(self).map_err(CliError::from_json)?;
        text.push('\n');
        fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }

    pub fn read(root: &Path) -> Result<Self> {
        let path = root.join(FILE_NAME);
        let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::config(&path, e))
    }

    /// Names of files whose current content no longer matches.
    pub fn verify(&self, root: &Path) -> Vec<String> {
        self.files
            .iter()
            .filter(|(name, e)| match fs::read(root.join(name)) {
                Ok(b) => sha256_hex(&b) != e.sha256,
                Err(_) => true,
            })
            .map(|(name, _)| name.clone())
            .collect()
    }
}
