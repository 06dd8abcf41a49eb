//! JSON space files.
//!
//! ```json
//! { "label": "hexagon", "dim": 2,
//!   "vertices": [["1","0"], ["1/2","1"], ...],
//!   "facets":   [["0","1"], ["1","1/2"], ...] }
//! ```
//!
//! `facets` is optional for `dim <= 3`. Loading always validates.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{hrep_to_vrep, validate, vrep_to_hrep, PolySpace};
use crate::certify::{Certificate, Condition, Verdict, Witness};
use crate::error::{Error, Result};
use crate::linalg::{Functional, Vector};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub label: String,
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<String>>>,
}

fn parse_rows(rows: &[Vec<String>], what: &str, dim: usize) -> Result<Vec<Vec<Rational>>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != dim {
                return Err(Error::Parse(format!(
                    "{what}[{i}]: expected {dim} coordinates, found {}",
                    row.len()
                )));
            }
            row.iter()
                .enumerate()
                .map(|(j, s)| {
                    rational::parse(s).map_err(|e| Error::Parse(format!("{what}[{i}][{j}]: {e}")))
                })
                .collect()
        })
        .collect()
}

impl SpaceFile {
    pub fn from_space(space: &PolySpace) -> Self {
        let rows = |xs: Vec<&[Rational]>| -> Vec<Vec<String>> {
            xs.into_iter()
                .map(|r| r.iter().map(rational::format).collect())
                .collect()
        };
        Self {
            label: space.label().to_string(),
            dim: space.dim(),
            vertices: rows(space.vertices().iter().map(|v| v.coords()).collect()),
            facets: Some(rows(space.facets().iter().map(|f| f.coords()).collect())),
        }
    }

    /// Builds and validates the space.
    pub fn into_space(self) -> Result<PolySpace> {
        let vertices: Vec<Vector> = parse_rows(&self.vertices, "vertices", self.dim)?
            .into_iter()
            .map(Vector::new)
            .collect();
        if vertices.is_empty() {
            return Err(Error::Parse("vertices: empty list".into()));
        }
        let space = match self.facets {
            Some(facets) => {
                let facets: Vec<Functional> = parse_rows(&facets, "facets", self.dim)?
                    .into_iter()
                    .map(Functional::new)
                    .collect();
                PolySpace::from_reps_unchecked(self.label, self.dim, vertices, facets)
            }
            None => {
                // Symmetry is reported before hull construction, which would
                // otherwise fail with a less useful degeneracy error.
                let mut sorted = vertices.clone();
                sorted.sort();
                sorted.dedup();
                if let Some(i) = sorted
                    .iter()
                    .position(|v| sorted.binary_search(&-v).is_err())
                {
                    return Err(Error::Invalid(Box::new(Certificate {
                        condition: Condition::Valid,
                        verdict: Verdict::Failed,
                        bound: None,
                        eps: None,
                        witnesses: vec![Witness {
                            facet: None,
                            vertex: Some(i),
                            value: Rational::from_integer(0.into()),
                        }],
                        space_label: self.label,
                        note: Some("symmetry: missing -v".into()),
                    })));
                }
                let facets = vrep_to_hrep(&vertices)?;
                let vertices = hrep_to_vrep(&facets)?;
                PolySpace::from_reps_unchecked(self.label, self.dim, vertices, facets)
            }
        };
        let cert = validate(&space);
        if cert.verdict == Verdict::Certified {
            Ok(space)
        } else {
            Err(Error::Invalid(Box::new(cert)))
        }
    }
}

impl PolySpace {
    pub fn from_json_str(s: &str) -> Result<PolySpace> {
        let file: SpaceFile = serde_json::from_str(s)
            .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
        file.into_space()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<PolySpace> {
        let text = std::fs::read_to_string(path.as_ref())?;
        Self::from_json_str(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SpaceFile::from_space(self)).expect("space file serializes")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn builtins_round_trip() {
        for space in builtin::builtin_spaces() {
            let back = PolySpace::from_json_str(&space.to_json()).unwrap();
            assert_eq!(back, space);
        }
    }

    #[test]
    fn vertex_only_file_builds_facets() {
        let json = r#"{"label":"hex","dim":2,
            "vertices":[["1","0"],["-1","0"],["1/2","1"],["-1/2","-1"],["1/2","-1"],["-1/2","1"]]}"#;
        let space = PolySpace::from_json_str(json).unwrap();
        assert_eq!(space.facets(), builtin::hexagon().facets());
    }

    #[test]
    fn asymmetric_vertices_report_symmetry() {
        let json = r#"{"label":"broken","dim":2,"vertices":[["1","1"],["1","-1"],["-1","1"]]}"#;
        match PolySpace::from_json_str(json) {
            Err(Error::Invalid(cert)) => assert!(cert.note.unwrap().starts_with("symmetry")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_rational_has_position() {
        let json = r#"{"label":"x","dim":2,"vertices":[["1","0"],["1/0","1"]]}"#;
        let err = PolySpace::from_json_str(json).unwrap_err().to_string();
        assert!(err.contains("vertices[1][0]"), "{err}");
    }

    #[test]
    fn malformed_json_has_line_and_column() {
        let err = PolySpace::from_json_str("{\"label\": 3")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 1"), "{err}");
    }
}
