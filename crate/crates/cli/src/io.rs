use std::fs;
use std::path::{Path, PathBuf};

use pcd_core::Point2;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::Failure;

/// Reads "x,y" rows; `#` starts a comment and a non-numeric first row is
/// taken as a header.
pub fn read_points(path: &Path) -> Result<Vec<Point2>, Failure> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)
        .map_err(|e| Failure::user(format!("Parse: cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Failure::user(format!("Parse: {}: {e}", path.display())))?;
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        let parsed = (rec.len() == 2)
            .then(|| Some((rec[0].parse::<f64>().ok()?, rec[1].parse::<f64>().ok()?)))
            .flatten();
        match parsed {
            Some((x, y)) => out.push(Point2::try_new(x, y).map_err(Failure::from)?),
            None if k == 0 && out.is_empty() => continue,
            None => {
                return Err(Failure::user(format!(
                    "Parse: {}: row {} is not an 'x,y' pair",
                    path.display(),
                    k + 1
                )))
            }
        }
    }
    Ok(out)
}

pub fn write_rows<R: Serialize>(path: &Path, header: &[&str], rows: impl IntoIterator<Item = R>) -> Result<(), Failure> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(path)
        .map_err(|e| Failure::user(format!("cannot write {}: {e}", path.display())))?;
    let io = |e: csv::Error| Failure::user(format!("cannot write {}: {e}", path.display()));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    w.flush().map_err(|e| Failure::user(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::internal(e.to_string()))?;
    s.push('\n');
    fs::write(path, s).map_err(|e| Failure::user(format!("cannot write {}: {e}", path.display())))
}

pub fn sha256_file(path: &Path) -> Result<String, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::user(format!("cannot read {}: {e}", path.display())))?;
    Ok(Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect())
}

pub fn ensure_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::user(format!("cannot create {}: {e}", dir.display())))
}

#[derive(Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Record of one run, written next to its outputs.
#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: serde_json::Value,
    pub inputs: Vec<InputDigest>,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, config: serde_json::Value, seed: Option<u64>) -> RunManifest {
        RunManifest {
            command: command.to_string(),
            config,
            inputs: Vec::new(),
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: Vec::new(),
        }
    }

    pub fn input(&mut self, path: &Path) -> Result<(), Failure> {
        self.inputs.push(InputDigest { path: path.display().to_string(), sha256: sha256_file(path)? });
        Ok(())
    }

    pub fn output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    pub fn write(mut self, path: &Path) -> Result<(), Failure> {
        self.output(path);
        write_json(path, &self)
    }
}

/// `dir/name`, or `stem.suffix` beside a file path.
pub fn beside(file: &Path, suffix: &str) -> PathBuf {
    let stem = file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    file.with_file_name(format!("{stem}.{suffix}"))
}
