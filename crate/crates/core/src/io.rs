//! Lattice JSON and facet-list text.
//!
//! Lattice JSON lists the nonempty proper faces with their dimensions and the
//! cover pairs among them:
//!
//! ```json
//! {"dim": 1, "faces": [{"id": "v1", "dim": 0}, ...], "covers": [["v1", "e12"], ...]}
//! ```
//!
//! The empty face and the top are implicit: on load `0^` is placed below every
//! vertex and `1^` above every `dim`-face.
//!
//! Facet-list text has one facet per line as whitespace-separated vertex
//! tokens. Everything after `#` on a line is a comment.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{FaceLattice, LatticeError, BOTTOM_ID, TOP_ID};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed lattice JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("facet lists can only describe simplicial complexes")]
    NotSimplicial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub id: String,
    pub dim: isize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub dim: isize,
    pub faces: Vec<FaceRecord>,
    pub covers: Vec<(String, String)>,
}

impl LatticeJson {
    pub fn from_lattice(lattice: &FaceLattice) -> Self {
        let (bottom, top) = (lattice.bottom(), lattice.top());
        let faces = lattice
            .faces()
            .filter(|&f| f != bottom && f != top)
            .map(|f| FaceRecord {
                id: lattice.id(f).to_string(),
                dim: lattice.dim_of(f),
            })
            .collect();
        let (bottom_id, top_id) = (lattice.id(bottom), lattice.id(top));
        let covers = lattice
            .cover_pairs()
            .into_iter()
            .filter(|(lo, hi)| *lo != bottom_id && *hi != top_id)
            .map(|(lo, hi)| (lo.to_string(), hi.to_string()))
            .collect();
        LatticeJson {
            dim: lattice.dim(),
            faces,
            covers,
        }
    }

    pub fn to_lattice(&self) -> Result<FaceLattice, LatticeError> {
        let top_rank = self.dim + 2;
        let mut elements: Vec<(&str, usize)> = Vec::with_capacity(self.faces.len() + 2);
        elements.push((BOTTOM_ID, 0));
        elements.push((TOP_ID, top_rank.max(0) as usize));
        for face in &self.faces {
            if face.dim < 0 || face.dim > self.dim {
                return Err(LatticeError::RankOutOfBounds {
                    id: face.id.clone(),
                    rank: (face.dim + 1).max(0) as usize,
                    max: top_rank.max(0) as usize,
                });
            }
            elements.push((face.id.as_str(), (face.dim + 1) as usize));
        }
        let mut covers: Vec<(&str, &str)> = self
            .covers
            .iter()
            .map(|(lo, hi)| (lo.as_str(), hi.as_str()))
            .collect();
        for face in &self.faces {
            if face.dim == 0 {
                covers.push((BOTTOM_ID, face.id.as_str()));
            }
            if face.dim == self.dim {
                covers.push((face.id.as_str(), TOP_ID));
            }
        }
        if self.dim == -1 {
            covers.push((BOTTOM_ID, TOP_ID));
        }
        FaceLattice::build(&elements, &covers, self.dim)
    }
}

pub fn lattice_to_json(lattice: &FaceLattice) -> String {
    let mut out = serde_json::to_string_pretty(&LatticeJson::from_lattice(lattice))
        .expect("lattice JSON serializes");
    out.push('\n');
    out
}

pub fn lattice_from_json(text: &str) -> Result<FaceLattice, FormatError> {
    let raw: LatticeJson = serde_json::from_str(text)?;
    Ok(raw.to_lattice()?)
}

/// Parses facet-list text into vertex-token lists.
pub fn parse_facet_list(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .map(|line| line.split_whitespace().map(str::to_string).collect::<Vec<_>>())
        .filter(|tokens| !tokens.is_empty())
        .collect()
}

/// Facet-list text for a simplicial lattice, one facet per line.
pub fn facet_list_text(lattice: &FaceLattice) -> Result<String, FormatError> {
    let d = lattice.dim();
    let mut out = String::new();
    for facet in lattice.facets() {
        let vertices = lattice.vertices_of(facet);
        let simplex = vertices.len() as isize == d + 1
            && lattice.interval_size(lattice.bottom(), facet) == 1usize << (d + 1);
        if !simplex {
            return Err(FormatError::NotSimplicial);
        }
        out.push_str(&vertices.join(" "));
        out.push('\n');
    }
    Ok(out)
}

/// Loads either format, choosing JSON when the first non-blank character
/// is `{`.
pub fn load_lattice(text: &str) -> Result<FaceLattice, FormatError> {
    if text.trim_start().starts_with('{') {
        lattice_from_json(text)
    } else {
        Ok(FaceLattice::from_facets(&parse_facet_list(text))?)
    }
}
