use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Polytope;
use crate::error::{Error, Result};
use crate::exactalg::{format_rational, parse_rational, QVector};

/// JSON layout of a polytope. Coordinates are strings such as `"3/4"`;
/// incidence rows are strings of `0`/`1`, one row per facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incidence: Option<Vec<String>>,
}

fn parse_rows(rows: &[Vec<String>], len: usize) -> Result<Vec<QVector>> {
    rows.iter()
        .map(|row| {
            if row.len() != len {
                return Err(Error::DimensionMismatch {
                    expected: len,
                    found: row.len(),
                });
            }
            row.iter().map(|s| parse_rational(s)).collect()
        })
        .collect()
}

fn format_rows(rows: &[QVector]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(format_rational).collect()).collect()
}

impl PolytopeFile {
    pub fn into_polytope(&self) -> Result<Polytope> {
        let vertices = parse_rows(&self.vertices, self.dim)?;
        let incidence = match &self.incidence {
            None => None,
            Some(rows) => Some(
                rows.iter()
                    .map(|r| {
                        r.chars()
                            .map(|c| match c {
                                '0' => Ok(false),
                                '1' => Ok(true),
                                other => Err(Error::Parse(format!("bad incidence character {other:?}"))),
                            })
                            .collect::<Result<Vec<bool>>>()
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        match &self.facets {
            Some(f) => Polytope::from_parts(vertices, parse_rows(f, self.dim + 1)?, incidence),
            None if incidence.is_some() => Err(Error::Invalid("incidence given without facets".into())),
            None => Polytope::from_vertices(vertices),
        }
    }
}

impl Polytope {
    pub fn to_file(&self, name: Option<&str>) -> PolytopeFile {
        PolytopeFile {
            name: name.map(str::to_owned),
            dim: self.dim,
            vertices: format_rows(&self.vertices),
            facets: Some(format_rows(&self.facets)),
            incidence: Some(
                self.incidence
                    .iter()
                    .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect())
                    .collect(),
            ),
        }
    }

    pub fn from_json_str(text: &str) -> Result<Polytope> {
        let file: PolytopeFile = serde_json::from_str(text)?;
        file.into_polytope()
    }

    pub fn to_json_string(&self, name: Option<&str>) -> String {
        serde_json::to_string_pretty(&self.to_file(name)).expect("serializable")
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Polytope> {
        Polytope::from_json_str(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{ivec, qvec};

    #[test]
    fn roundtrip() {
        let p = Polytope::from_vertices(vec![
            qvec(&[(0, 1), (0, 1)]),
            qvec(&[(3, 2), (0, 1)]),
            qvec(&[(1, 3), (5, 7)]),
        ])
        .unwrap();
        let text = p.to_json_string(Some("tri"));
        let back = Polytope::from_json_str(&text).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn vertices_only() {
        let text = r#"{"dim": 2, "vertices": [["0","0"],["1","0"],["0","1"]]}"#;
        let p = Polytope::from_json_str(text).unwrap();
        assert_eq!(p.facet_count(), 3);
        assert_eq!(p.vertices()[1], ivec(&[1, 0]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Polytope::from_json_str(r#"{"dim": 2, "vertices": [["0"]]}"#).is_err());
        assert!(Polytope::from_json_str(r#"{"dim": 2, "vertices": [["0","x"]]}"#).is_err());
        let wrong_incidence = r#"{"dim": 2, "vertices": [["0","0"],["1","0"],["0","1"]],
            "facets": [["0","1","0"],["0","0","1"],["1","-1","-1"]],
            "incidence": ["111","101","011"]}"#;
        assert!(Polytope::from_json_str(wrong_incidence).is_err());
    }
}
