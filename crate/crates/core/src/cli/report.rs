//! Report assembly and serialization.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

pub const SCHEMA: &str = "diffgeo-report/1";

/// A float written with 17 significant digits and a lowercase exponent;
/// non-finite values become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(fmt_num(self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

pub fn nums(xs: &[f64]) -> Vec<Num> {
    xs.iter().copied().map(Num).collect()
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Value {
    Scalar(Num),
    Vector(Vec<Num>),
    Vectors(Vec<Vec<Num>>),
    Text(String),
    Flag(bool),
    Map(BTreeMap<String, Value>),
    Null,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Scalar(Num(x))
    }
}

impl From<crate::numerics::Vec3> for Value {
    fn from(v: crate::numerics::Vec3) -> Self {
        Value::Vector(nums(&v.to_array()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub point: Vec<Num>,
    pub quantity: String,
    pub value: Value,
    /// `ok`, `pass`, `fail`, `skipped` or `error: <message>`.
    pub status: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteSummary {
    pub name: String,
    pub tolerance: Num,
    pub samples: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub max_residual: Num,
    pub status: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShapeDescriptor {
    pub source: String,
    pub name: String,
    pub kind: String,
    pub params: BTreeMap<String, Num>,
    pub text_params: BTreeMap<String, String>,
    pub domain: Vec<Num>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorInfo {
    pub exit_code: i32,
    pub message: String,
    pub point: Option<Vec<Num>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: Vec<String>,
    pub shape: Option<ShapeDescriptor>,
    pub records: Vec<Record>,
    pub suites: Vec<SuiteSummary>,
    pub summary: BTreeMap<String, Value>,
    pub status: String,
    pub error: Option<ErrorInfo>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            schema: SCHEMA,
            command,
            shape: None,
            records: Vec::new(),
            suites: Vec::new(),
            summary: BTreeMap::new(),
            status: "ok".into(),
            error: None,
        }
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Comma-separated table with a header row.
#[derive(Debug, Clone, Default)]
pub struct Csv {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| fmt_num(x)).collect();
            s += &cells.join(",");
            s.push('\n');
        }
        s
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed run never leaves a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
