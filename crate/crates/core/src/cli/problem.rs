//! Problem files and the built-in example catalog.
//!
//! ```json
//! {
//!   "name": "c6-z2",
//!   "rank": 2,
//!   "generators": [[[0, 1], [-1, 1]]],
//!   "character_table": null,
//!   "options": {"q_max": 24, "max_order": 100000, "format": "text"}
//! }
//! ```
//!
//! `character_table` follows [`RawCharacterTable`]: `classes` lists one
//! element index per column, where elements are numbered in breadth-first
//! order from the identity with generators applied in input order.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::character::RawCharacterTable;
use crate::linalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid problem: {0}")]
    Validation(String),
    #[error("unknown example '{0}' (try `equichar builtins`)")]
    UnknownExample(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    #[default]
    Text,
    Latex,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_max: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub name: String,
    pub rank: usize,
    pub generators: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character_table: Option<RawCharacterTable>,
    #[serde(default)]
    pub options: ProblemOptions,
}

impl ProblemSpec {
    pub fn new(name: &str, rank: usize, generators: Vec<Vec<Vec<i64>>>) -> Self {
        ProblemSpec { name: name.into(), rank, generators, character_table: None, options: ProblemOptions::default() }
    }

    /// Shape checks that need no group computation.
    pub fn validate(&self) -> Result<(), InputError> {
        if self.rank == 0 {
            return Err(InputError::Validation("rank must be positive".into()));
        }
        for (i, g) in self.generators.iter().enumerate() {
            let cols: Vec<usize> = g.iter().map(Vec::len).collect();
            if g.len() != self.rank || cols.iter().any(|&c| c != self.rank) {
                let width = cols.first().copied().unwrap_or(0);
                return Err(InputError::Validation(format!(
                    "generator {i} is {}x{width}, expected {r}x{r}",
                    g.len(),
                    r = self.rank
                )));
            }
        }
        if let Some(t) = &self.character_table {
            if t.rows.iter().any(|r| r.len() != t.classes.len()) || t.rows.len() != t.classes.len() {
                return Err(InputError::Validation("character table is not square".into()));
            }
            if t.rows.iter().flatten().flatten().any(|&(_, den)| den == 0) {
                return Err(InputError::Validation("character table has a zero denominator".into()));
            }
        }
        if self.options.q_max == Some(0) {
            return Err(InputError::Validation("q_max must be positive".into()));
        }
        Ok(())
    }

    pub fn generator_matrices(&self) -> Vec<IntMatrix> {
        self.generators.iter().map(|g| IntMatrix::from_rows(g).expect("validated shape")).collect()
    }
}

pub fn parse_str(text: &str) -> Result<ProblemSpec, InputError> {
    let spec: ProblemSpec = serde_json::from_str(text)
        .map_err(|e| InputError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    spec.validate()?;
    Ok(spec)
}

pub fn parse_input(path: &Path) -> Result<ProblemSpec, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_str(&text)
}

pub struct BuiltinInfo {
    pub name: &'static str,
    pub description: &'static str,
}

pub const BUILTINS: &[BuiltinInfo] = &[
    BuiltinInfo { name: "c6-z2", description: "cyclic group of order 6 on the hexagonal lattice ℤ²" },
    BuiltinInfo { name: "c6-z3", description: "cyclic group of order 6 on ℤ³, hexagonal rotation times -1" },
    BuiltinInfo { name: "s3-a2", description: "symmetric group S3 on the A2 root lattice" },
    BuiltinInfo { name: "trivial-z2", description: "trivial group on ℤ²" },
    BuiltinInfo { name: "dihedral-z2", description: "dihedral group of order 8 on the square lattice ℤ²" },
];

pub fn builtin(name: &str) -> Result<ProblemSpec, InputError> {
    let generators = match name {
        "c6-z2" => vec![vec![vec![0, 1], vec![-1, 1]]],
        "c6-z3" => vec![vec![vec![-1, -1, 0], vec![1, 0, 0], vec![0, 0, -1]]],
        "s3-a2" => vec![vec![vec![-1, 1], vec![0, 1]], vec![vec![0, -1], vec![1, -1]]],
        "trivial-z2" => vec![],
        "dihedral-z2" => vec![vec![vec![0, -1], vec![1, 0]], vec![vec![1, 0], vec![0, -1]]],
        _ => return Err(InputError::UnknownExample(name.into())),
    };
    let rank = if name == "c6-z3" { 3 } else { 2 };
    Ok(ProblemSpec::new(name, rank, generators))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog() {
        for info in BUILTINS {
            builtin(info.name).unwrap().validate().unwrap();
        }
        assert_eq!(builtin("c6-z2").unwrap().generators, vec![vec![vec![0, 1], vec![-1, 1]]]);
        assert!(builtin("trivial-z2").unwrap().generators.is_empty());
        assert_eq!(builtin("e8").unwrap_err(), InputError::UnknownExample("e8".into()));
    }

    #[test]
    fn rejects_non_square_generator() {
        let text = r#"{"name": "x", "rank": 2, "generators": [[[1, 0, 0], [0, 1, 0]]]}"#;
        assert!(matches!(parse_str(text), Err(InputError::Validation(_))));
    }

    #[test]
    fn parse_error_has_position() {
        let text = "{\n  \"name\": \"x\",\n  \"rank\": 2,\n  \"generators\": [[[1, 0], [0, 1]]],,\n}";
        match parse_str(text) {
            Err(InputError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        let missing = r#"{"name": "x", "generators": []}"#;
        match parse_str(missing) {
            Err(InputError::Parse { message, .. }) => assert!(message.contains("rank")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn options_parse() {
        let text = r#"{"name": "x", "rank": 1, "generators": [[[-1]]], "options": {"q_max": 10, "format": "latex"}}"#;
        let spec = parse_str(text).unwrap();
        assert_eq!(spec.options.q_max, Some(10));
        assert_eq!(spec.options.format, Some(OutputFormat::Latex));
    }
}
