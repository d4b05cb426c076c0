//! In-memory artifacts and all-or-nothing writing.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, CliResult};

/// A file to be written under the output directory.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
}

impl Artifact {
    pub fn json<T: Serialize>(name: impl Into<String>, value: &T) -> CliResult<Self> {
        let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| CliError::Numeric(e.to_string()))?;
        bytes.push(b'\n');
        Ok(Self { name: name.into(), bytes })
    }
}

/// A CSV table: header names carry units in brackets, e.g. `t[steps]`.
#[derive(Debug, Clone)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.header.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn into_artifact(self, name: impl Into<String>) -> CliResult<Artifact> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let fail = |e: csv::Error| CliError::Numeric(e.to_string());
        w.write_record(&self.header).map_err(fail)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| v.to_string())).map_err(fail)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Numeric(e.to_string()))?;
        Ok(Artifact { name: name.into(), bytes })
    }
}

/// Writes every artifact into `dir` or none of them.
///
/// Each file is staged under a temporary name and renamed once all are
/// staged; on any failure the staged and renamed files are removed.
pub fn write_all(dir: &Path, artifacts: &[Artifact]) -> CliResult<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut staged: Vec<(PathBuf, PathBuf)> = Vec::new();
    let cleanup = |paths: &[PathBuf]| {
        for p in paths {
            let _ = fs::remove_file(p);
        }
    };
    for a in artifacts {
        let tmp = dir.join(format!(".{}.partial", a.name));
        if let Err(e) = fs::write(&tmp, &a.bytes) {
            let _ = fs::remove_file(&tmp);
            cleanup(&staged.iter().map(|(t, _)| t.clone()).collect::<Vec<_>>());
            return Err(CliError::io(&tmp, e));
        }
        staged.push((tmp, dir.join(&a.name)));
    }
    let mut done = Vec::new();
    for (i, (tmp, target)) in staged.iter().enumerate() {
        if let Err(e) = fs::rename(tmp, target) {
            cleanup(&done);
            cleanup(&staged[i..].iter().map(|(t, _)| t.clone()).collect::<Vec<_>>());
            return Err(CliError::io(target, e));
        }
        done.push(target.clone());
    }
    Ok(done)
}
