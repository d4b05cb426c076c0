//! Flat `key = value` configuration files.
//!
//! One assignment per line; `#` starts a comment; blank lines are ignored.
//! Keys are case-insensitive. Lists are comma separated.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{CliError, CliResult};

#[derive(Debug, Default, Clone, PartialEq)]
pub struct FlatConfig {
    entries: BTreeMap<String, String>,
}

impl FlatConfig {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!("config line {}: expected key = value", i + 1)));
            };
            let key = key.trim().to_ascii_lowercase();
            if key.is_empty() {
                return Err(CliError::Usage(format!("config line {}: empty key", i + 1)));
            }
            if entries.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(CliError::Usage(format!("config line {}: duplicate key {key}", i + 1)));
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn check_keys(&self, allowed: &[&str]) -> CliResult<()> {
        match self.entries.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(CliError::Usage(format!("unknown config key {k:?}; allowed: {}", allowed.join(", ")))),
            None => Ok(()),
        }
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        self.entries
            .get(key)
            .map(|v| v.parse().map_err(|_| CliError::Usage(format!("config key {key}: cannot parse {v:?}"))))
            .transpose()
    }

    pub fn get_list(&self, key: &str) -> CliResult<Option<Vec<f64>>> {
        self.entries
            .get(key)
            .map(|v| {
                v.split(',')
                    .map(|x| {
                        x.trim()
                            .parse()
                            .map_err(|_| CliError::Usage(format!("config key {key}: cannot parse {x:?}")))
                    })
                    .collect()
            })
            .transpose()
    }
}
