//! File formats.
//!
//! * Body documents (JSON): `{"type": "ellipsoid", "matrix": [[..]]}`,
//!   `{"type": "hpoly", "rows": [[..]]}` or `{"type": "vpoly", "vertices": [[..]]}`.
//! * Matrices: a JSON array of rows, or delimiter-separated text rows.
//! * Sample files: one sample per line, columns separated by commas, tabs,
//!   semicolons or spaces. Lines starting with `#` are comments; a leading
//!   non-numeric line is taken as a header and skipped.

use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::body::{ConvexBody, Ellipsoid, HPolytope, VPolytope};
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BodyDoc {
    Ellipsoid { matrix: Vec<Vec<f64>> },
    Hpoly { rows: Vec<Vec<f64>> },
    Vpoly { vertices: Vec<Vec<f64>> },
}

impl BodyDoc {
    pub fn from_body(body: &ConvexBody) -> Self {
        let vecs = |vs: &[DVector<f64>]| vs.iter().map(|v| v.iter().copied().collect()).collect();
        match body {
            ConvexBody::Ellipsoid(e) => BodyDoc::Ellipsoid {
                matrix: linalg::matrix_to_rows(e.q()),
            },
            ConvexBody::HPolytope(h) => BodyDoc::Hpoly { rows: vecs(h.rows()) },
            ConvexBody::VPolytope(v) => BodyDoc::Vpoly {
                vertices: vecs(v.vertices()),
            },
        }
    }

    pub fn to_body(&self) -> Result<ConvexBody> {
        let vecs = |rows: &[Vec<f64>]| -> Vec<DVector<f64>> {
            rows.iter().map(|r| DVector::from_column_slice(r)).collect()
        };
        Ok(match self {
            BodyDoc::Ellipsoid { matrix } => Ellipsoid::new(linalg::matrix_from_rows(matrix)?)?.into(),
            BodyDoc::Hpoly { rows } => HPolytope::new(vecs(rows))?.into(),
            BodyDoc::Vpoly { vertices } => VPolytope::new(vecs(vertices))?.into(),
        })
    }
}

pub fn body_to_json(body: &ConvexBody) -> Result<String> {
    Ok(serde_json::to_string_pretty(&BodyDoc::from_body(body))?)
}

pub fn body_from_json(text: &str) -> Result<ConvexBody> {
    serde_json::from_str::<BodyDoc>(text)?.to_body()
}

pub fn read_body(path: &Path) -> Result<ConvexBody> {
    body_from_json(&fs::read_to_string(path)?)
}

pub fn write_body(path: &Path, body: &ConvexBody) -> Result<()> {
    fs::write(path, body_to_json(body)? + "\n")?;
    Ok(())
}

fn split_fields(line: &str) -> impl Iterator<Item = &str> {
    line.split(|c: char| c == ',' || c == ';' || c == '\t' || c.is_whitespace())
        .filter(|s| !s.is_empty())
}

/// Parses delimiter-separated numeric rows.
pub fn parse_rows(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    let mut seen_data = false;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> = split_fields(line).map(str::parse).collect();
        match parsed {
            Ok(row) => {
                seen_data = true;
                rows.push(row);
            }
            Err(_) if !seen_data && rows.is_empty() => continue,
            Err(e) => return Err(Error::Parse(format!("line {}: {e}", lineno + 1))),
        }
    }
    if let Some(first) = rows.first() {
        let width = first.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != width) {
            return Err(Error::Parse(format!(
                "row {} has {} columns, expected {width}",
                bad + 1,
                rows[bad].len()
            )));
        }
    }
    if rows.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(rows)
}

pub fn format_rows(rows: &[DVector<f64>], header: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(h) = header {
        out.push_str(h);
        out.push('\n');
    }
    for r in rows {
        let line: Vec<String> = r.iter().map(|v| format!("{v}")).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn read_samples(path: &Path) -> Result<Vec<DVector<f64>>> {
    let rows = parse_rows(&fs::read_to_string(path)?)?;
    if rows.is_empty() {
        return Err(Error::Parse(format!("{}: no samples", path.display())));
    }
    Ok(rows.into_iter().map(DVector::from_vec).collect())
}

/// Reads a matrix from JSON (`[[..], ..]`) or delimiter-separated text.
pub fn matrix_from_str(text: &str) -> Result<DMatrix<f64>> {
    let trimmed = text.trim_start();
    let rows: Vec<Vec<f64>> = if trimmed.starts_with('[') {
        serde_json::from_str(trimmed)?
    } else {
        parse_rows(text)?
    };
    linalg::matrix_from_rows(&rows)
}

pub fn read_matrix(path: &Path) -> Result<DMatrix<f64>> {
    matrix_from_str(&fs::read_to_string(path)?)
}
