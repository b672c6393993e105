//! Reading matrices and matroids from JSON text or files.

use std::path::Path;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subspace::QMatrix;

/// Parses JSON; syntax errors carry their line and column.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

/// A matroid from `{"matrix": ...}`, a bare matrix object, or
/// `{"n": n, "bases": [...]}`.
pub fn matroid_from_str(text: &str) -> Result<Matroid> {
    Matroid::from_json(&parse_json(text)?)
}

pub fn read_matroid(path: &Path) -> Result<Matroid> {
    matroid_from_str(&read_text(path)?)
}

/// A matrix from a bare matrix object or `{"matrix": ...}`.
pub fn matrix_from_str(text: &str) -> Result<QMatrix> {
    let value = parse_json(text)?;
    QMatrix::from_json(value.get("matrix").unwrap_or(&value))
}
