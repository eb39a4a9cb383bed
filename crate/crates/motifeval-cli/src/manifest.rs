//! Run manifests: enough resolved configuration to replay any command.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::formats::write_json;
use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Written alongside every file-producing command. Re-running the named
/// command with the recorded configuration and seed reproduces the
/// outputs byte for byte.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub config: serde_json::Value,
    pub inputs: Vec<InputDigest>,
}

impl RunManifest {
    pub fn new(
        command: &str,
        seed: Option<u64>,
        config: serde_json::Value,
        input_paths: &[&Path],
    ) -> Result<Self, CliError> {
        let inputs = input_paths
            .iter()
            .map(|path| {
                let bytes = fs::read(path)
                    .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
                Ok(InputDigest {
                    path: path.display().to_string(),
                    sha256: format!("{:x}", Sha256::digest(&bytes)),
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            config,
            inputs,
        })
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        write_json(path, self)
    }
}
