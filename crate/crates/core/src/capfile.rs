//! JSON serialization of caps.
//!
//! ```json
//! {
//!   "schema_version": "1",
//!   "p": 5,
//!   "n_hint": 2,
//!   "d": 2,
//!   "ambient_dim": 5,
//!   "points": [[1, 0, 0, 0, 0, 0], ...],
//!   "rational_spaces": [{"point_ids": [0, 1, 2, 3, 4, 5]}, ...]
//! }
//! ```
//!
//! Rational spaces are stored as point-id lists; their subspaces are
//! recomputed as spans on load. Points are normalized on load.

use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cap::VeroneseanCap;
use crate::gfp::PrimeField;
use crate::projlin::ProjPoint;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapFile {
    pub schema_version: String,
    pub p: u64,
    pub n_hint: Option<usize>,
    pub d: usize,
    pub ambient_dim: usize,
    pub points: Vec<Vec<u64>>,
    pub rational_spaces: Vec<SpaceEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceEntry {
    pub point_ids: Vec<usize>,
}

#[derive(Debug, Error)]
pub enum CapFileError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl CapFileError {
    fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        CapFileError::Field {
            field: field.into(),
            message: message.into(),
        }
    }

    fn io(path: &Path, source: io::Error) -> Self {
        CapFileError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

impl CapFile {
    pub fn from_cap(cap: &VeroneseanCap) -> Self {
        CapFile {
            schema_version: SCHEMA_VERSION.to_string(),
            p: u64::from(cap.field().modulus()),
            n_hint: cap.n_hint(),
            d: cap.degree(),
            ambient_dim: cap.ambient_dim(),
            points: cap
                .points()
                .iter()
                .map(|x| x.coords().iter().map(|&c| u64::from(c)).collect())
                .collect(),
            rational_spaces: cap
                .space_point_ids()
                .into_iter()
                .map(|point_ids| SpaceEntry { point_ids })
                .collect(),
        }
    }

    /// Validates every field and builds the cap.
    pub fn to_cap(&self) -> Result<VeroneseanCap, CapFileError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CapFileError::field(
                "schema_version",
                format!(
                    "unsupported version {:?}, expected {SCHEMA_VERSION:?}",
                    self.schema_version
                ),
            ));
        }
        let field = PrimeField::new(self.p).map_err(|e| CapFileError::field("p", e.to_string()))?;
        if self.d == 0 {
            return Err(CapFileError::field("d", "degree must be positive"));
        }
        let mut points = Vec::with_capacity(self.points.len());
        for (i, coords) in self.points.iter().enumerate() {
            let at = format!("points[{i}]");
            if coords.len() != self.ambient_dim + 1 {
                return Err(CapFileError::field(
                    at,
                    format!(
                        "has {} coordinates, expected {}",
                        coords.len(),
                        self.ambient_dim + 1
                    ),
                ));
            }
            if let Some(j) = coords.iter().position(|&c| c >= self.p) {
                return Err(CapFileError::field(
                    format!("{at}[{j}]"),
                    format!("coordinate {} is not in [0, {})", coords[j], self.p),
                ));
            }
            let v = coords.iter().map(|&c| c as u32).collect();
            points.push(
                ProjPoint::new(field, v).map_err(|e| CapFileError::field(at, e.to_string()))?,
            );
        }
        for (i, s) in self.rational_spaces.iter().enumerate() {
            if let Some(j) = s.point_ids.iter().position(|&id| id >= points.len()) {
                return Err(CapFileError::field(
                    format!("rational_spaces[{i}].point_ids[{j}]"),
                    format!(
                        "point id {} out of range (there are {} points)",
                        s.point_ids[j],
                        points.len()
                    ),
                ));
            }
        }
        let spaces = self
            .rational_spaces
            .iter()
            .map(|s| s.point_ids.clone())
            .collect();
        let cap = VeroneseanCap::new(field, self.ambient_dim, self.d, points, spaces)
            .map_err(|e| CapFileError::field("cap", e.to_string()))?;
        Ok(cap.with_n_hint(self.n_hint))
    }
}

/// Parses a cap file from JSON text.
pub fn parse(text: &str) -> Result<VeroneseanCap, CapFileError> {
    let file: CapFile = serde_json::from_str(text).map_err(|e| CapFileError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.to_cap()
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn json_list<T: Serialize>(items: &[T]) -> String {
    if items.is_empty() {
        return "[]".to_string();
    }
    let lines: Vec<String> = items.iter().map(compact).collect();
    format!("[\n    {}\n  ]", lines.join(",\n    "))
}

/// Serializes a cap as JSON with one point or rational space per line,
/// terminated by a newline.
pub fn to_json(cap: &VeroneseanCap) -> String {
    let file = CapFile::from_cap(cap);
    format!(
        "{{\n  \"schema_version\": {},\n  \"p\": {},\n  \"n_hint\": {},\n  \"d\": {},\n  \"ambient_dim\": {},\n  \"points\": {},\n  \"rational_spaces\": {}\n}}\n",
        compact(&file.schema_version),
        file.p,
        compact(&file.n_hint),
        file.d,
        file.ambient_dim,
        json_list(&file.points),
        json_list(&file.rational_spaces),
    )
}

pub fn load(path: &Path) -> Result<VeroneseanCap, CapFileError> {
    let text = fs::read_to_string(path).map_err(|e| CapFileError::io(path, e))?;
    parse(&text)
}

pub fn save(cap: &VeroneseanCap, path: &Path) -> Result<(), CapFileError> {
    fs::write(path, to_json(cap)).map_err(|e| CapFileError::io(path, e))
}
