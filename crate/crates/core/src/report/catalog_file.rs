//! The group catalog data file.
//!
//! One record per line, fields separated by `|`:
//!
//! ```text
//! name | representation | expected type | generator; generator; ...
//! ```
//!
//! `representation` is `perm` for 1-based cycle notation such as
//! `(1 2 3)(4 5)`, or `matrix-mod-3` for four row-major entries of an
//! invertible 2x2 matrix over F3 such as `1 1 0 1`. Blank lines and lines
//! starting with `#` are ignored.

use std::fmt;

use crate::groups::{Generator, GroupError, Mat3};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepresentationKind {
    Permutation,
    MatrixMod3,
}

impl fmt::Display for RepresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepresentationKind::Permutation => "perm",
            RepresentationKind::MatrixMod3 => "matrix-mod-3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRecord {
    pub name: String,
    pub kind: RepresentationKind,
    pub expected_type: String,
    pub generators: Vec<Generator>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CatalogFileError {
    #[error("catalog line {line}: expected 4 `|`-separated fields")]
    FieldCount { line: usize },
    #[error("catalog line {line}: unknown representation {kind:?}")]
    UnknownKind { line: usize, kind: String },
    #[error("catalog line {line}: {source}")]
    Generator { line: usize, source: GroupError },
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogRecord>, CatalogFileError> {
    let mut records = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split('|').map(str::trim).collect();
        let [name, kind, expected_type, gens] = fields[..] else {
            return Err(CatalogFileError::FieldCount { line });
        };
        let kind = match kind {
            "perm" => RepresentationKind::Permutation,
            "matrix-mod-3" => RepresentationKind::MatrixMod3,
            other => return Err(CatalogFileError::UnknownKind { line, kind: other.to_string() }),
        };
        let generators = gens
            .split(';')
            .map(|g| match kind {
                RepresentationKind::Permutation => Generator::perm(g),
                RepresentationKind::MatrixMod3 => Mat3::parse(g).map(Generator::Matrix),
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|source| CatalogFileError::Generator { line, source })?;
        records.push(CatalogRecord {
            name: name.to_string(),
            kind,
            expected_type: expected_type.to_string(),
            generators,
        });
    }
    Ok(records)
}
