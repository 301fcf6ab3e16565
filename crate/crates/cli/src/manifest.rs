//! Run manifests: every simulation writes one next to its outputs, and a
//! manifest fully determines the run, so re-running it reproduces every
//! output byte for byte.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::scenario::Scenario;

#[derive(Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub subcommand: String,
    pub scenario: Scenario,
    pub outputs: Vec<String>,
}

/// Writes via a temporary file and rename, so partial files never appear
/// under the final name.
pub fn write_atomic(path: &Path, content: &str) -> anyhow::Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(content.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}
