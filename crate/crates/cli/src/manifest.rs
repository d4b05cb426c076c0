use serde::{Deserialize, Serialize};

use crate::args::Command;

/// Record of one run: enough to reproduce every data file byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub params: Command,
    pub seed: u64,
    pub bins: usize,
    pub version: String,
    pub started_at: String,
    pub finished_at: String,
    pub outputs: Vec<String>,
}

pub const MANIFEST_NAME: &str = "manifest.json";
