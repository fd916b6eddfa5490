//! Deterministic constructors for boundary complexes of standard polytopes,
//! cyclic polytopes and punctured spheres.
//!
//! Vertices are labelled `1..=n`. Simplicial families go through
//! [`FaceLattice::from_facets`], so their face ids are vertex labels.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::is_simplicial;
use crate::lattice::{FaceLattice, LatticeError, BOTTOM_ID, TOP_ID};
use crate::shelling::{find_shelling_with, SearchOptions, ShellingError};

const MAX_SIMPLEX_DIM: usize = 12;
const MAX_CUBE_DIM: usize = 8;
const MAX_CYCLIC_N: usize = 16;
const MAX_CYCLIC_D: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Shelling(#[from] ShellingError),
    #[error("input is not a sphere (pseudomanifold with empty boundary)")]
    NotSphere,
    #[error("`{0}` is not a facet")]
    InvalidFace(String),
    #[error("facet count {have} is below the cyclic polytope's {need}")]
    HypothesisNotMet { have: u64, need: u64 },
}

/// Boundary of the `(d+1)`-simplex: all `(d+1)`-subsets of `1..=d+2`.
pub fn simplex_boundary(d: usize) -> Result<FaceLattice, GeneratorError> {
    if d > MAX_SIMPLEX_DIM {
        return Err(GeneratorError::Range(format!("simplex dimension {d} > {MAX_SIMPLEX_DIM}")));
    }
    let n = d + 2;
    let facets: Vec<Vec<String>> = (1..=n)
        .rev()
        .map(|skip| (1..=n).filter(|&v| v != skip).map(|v| v.to_string()).collect())
        .collect();
    Ok(FaceLattice::from_facets(&facets)?)
}

/// Boundary of the `(d+1)`-dimensional cross-polytope. Vertex `i` and
/// `i + d + 1` are antipodal.
pub fn cross_polytope(d: usize) -> Result<FaceLattice, GeneratorError> {
    if d == 0 || d > MAX_CUBE_DIM {
        return Err(GeneratorError::Range(format!("cross-polytope needs 1 <= d <= {MAX_CUBE_DIM}, got {d}")));
    }
    let m = d + 1;
    let facets: Vec<Vec<String>> = (0u32..1 << m)
        .map(|mask| {
            (0..m)
                .map(|i| {
                    let v = if mask >> i & 1 == 0 { i + 1 } else { i + 1 + m };
                    v.to_string()
                })
                .collect()
        })
        .collect();
    Ok(FaceLattice::from_facets(&facets)?)
}

/// Boundary of the `(d+1)`-cube. Faces are words over `{0, 1, *}`, one letter
/// per coordinate, with `*` marking a free coordinate.
pub fn hypercube_boundary(d: usize) -> Result<FaceLattice, GeneratorError> {
    if d == 0 || d > MAX_CUBE_DIM {
        return Err(GeneratorError::Range(format!("hypercube needs 1 <= d <= {MAX_CUBE_DIM}, got {d}")));
    }
    let m = d + 1;
    let total = 3usize.pow(m as u32);
    let word = |mut code: usize| -> Vec<u8> {
        let mut w = Vec::with_capacity(m);
        for _ in 0..m {
            w.push(b"01*"[code % 3]);
            code /= 3;
        }
        w
    };
    let mut elements: Vec<(String, usize)> = vec![(BOTTOM_ID.into(), 0), (TOP_ID.into(), m + 1)];
    let mut covers: Vec<(String, String)> = Vec::new();
    for code in 0..total {
        let w = word(code);
        let free = w.iter().filter(|&&c| c == b'*').count();
        if free == m {
            continue;
        }
        let id = String::from_utf8(w.clone()).unwrap();
        elements.push((id.clone(), free + 1));
        if free == 0 {
            covers.push((BOTTOM_ID.into(), id.clone()));
        }
        if free == d {
            covers.push((id.clone(), TOP_ID.into()));
        }
        for (i, &c) in w.iter().enumerate() {
            if c == b'*' {
                for fixed in *b"01" {
                    let mut lo = w.clone();
                    lo[i] = fixed;
                    covers.push((String::from_utf8(lo).unwrap(), id.clone()));
                }
            }
        }
    }
    Ok(FaceLattice::build(&elements, &covers, d as isize)?)
}

/// The `n`-gon: vertices `v1..vn` and edges `e12, e23, ..., en1`.
pub fn ngon(n: usize) -> Result<FaceLattice, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::Range(format!("an n-gon needs n >= 3, got {n}")));
    }
    let mut elements: Vec<(String, usize)> = vec![(BOTTOM_ID.into(), 0), (TOP_ID.into(), 3)];
    let mut covers = Vec::new();
    for i in 1..=n {
        let j = i % n + 1;
        let (v, e) = (format!("v{i}"), format!("e{i}{j}"));
        elements.push((v.clone(), 1));
        elements.push((e.clone(), 2));
        covers.push((BOTTOM_ID.to_string(), v.clone()));
        covers.push((v, e.clone()));
        covers.push((format!("v{j}"), e.clone()));
        covers.push((e, TOP_ID.to_string()));
    }
    Ok(FaceLattice::build(&elements, &covers, 1)?)
}

/// Whether the sorted `d`-subset `set` of `1..=n` passes Gale's evenness
/// condition: between any two labels outside the set there is an even number
/// of labels inside it.
pub fn gale_evenness(set: &[usize], n: usize) -> bool {
    let mut between = 0usize;
    let mut seen_gap = false;
    for label in 1..=n {
        if set.contains(&label) {
            between += 1;
        } else {
            if seen_gap && between % 2 == 1 {
                return false;
            }
            seen_gap = true;
            between = 0;
        }
    }
    true
}

/// Facets of the cyclic `d`-polytope on `n` vertices, as label sets.
pub fn cyclic_facets(d: usize, n: usize) -> Result<Vec<Vec<usize>>, GeneratorError> {
    if d < 2 || n < d + 1 {
        return Err(GeneratorError::Range(format!("cyclic polytope needs n >= d + 1 >= 3, got d={d}, n={n}")));
    }
    if n > MAX_CYCLIC_N || d > MAX_CYCLIC_D {
        return Err(GeneratorError::Range(format!(
            "cyclic polytope limited to n <= {MAX_CYCLIC_N}, d <= {MAX_CYCLIC_D}"
        )));
    }
    let mut out = Vec::new();
    let mut set: Vec<usize> = (1..=d).collect();
    loop {
        if gale_evenness(&set, n) {
            out.push(set.clone());
        }
        // Next d-subset in lexicographic order.
        let mut i = d;
        while i > 0 && set[i - 1] == n - d + i {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        set[i - 1] += 1;
        for k in i..d {
            set[k] = set[k - 1] + 1;
        }
    }
    Ok(out)
}

/// Boundary complex of the cyclic `d`-polytope on `n` vertices; a simplicial
/// `(d-1)`-sphere.
pub fn cyclic_boundary(d: usize, n: usize) -> Result<FaceLattice, GeneratorError> {
    let facets: Vec<Vec<String>> = cyclic_facets(d, n)?
        .into_iter()
        .map(|f| f.into_iter().map(|v| v.to_string()).collect())
        .collect();
    Ok(FaceLattice::from_facets(&facets)?)
}

/// The ball left after deleting one facet of a sphere. Every other face stays.
pub fn punctured(sphere: &FaceLattice, facet_id: &str) -> Result<FaceLattice, GeneratorError> {
    let facet = sphere
        .face(facet_id)
        .filter(|f| sphere.facets().contains(f))
        .ok_or_else(|| GeneratorError::InvalidFace(facet_id.to_string()))?;
    match sphere.boundary_complex() {
        Ok(b) if b.is_void() => {}
        _ => return Err(GeneratorError::NotSphere),
    }
    let elements: Vec<(&str, usize)> = sphere
        .faces()
        .filter(|&f| f != facet)
        .map(|f| (sphere.id(f), sphere.rank_of(f)))
        .collect();
    let covers: Vec<(&str, &str)> = sphere
        .cover_pairs()
        .into_iter()
        .filter(|&(lo, hi)| lo != facet_id && hi != facet_id)
        .collect();
    Ok(FaceLattice::build(&elements, &covers, sphere.dim())?)
}

/// A named member of one of the generator families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorSpec {
    SimplexBoundary { d: usize },
    CrossPolytope { d: usize },
    HypercubeBoundary { d: usize },
    Ngon { n: usize },
    CyclicBoundary { d: usize, n: usize },
    /// `facet` defaults to the least facet id of the base sphere.
    Punctured { base: Box<GeneratorSpec>, facet: Option<String> },
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<FaceLattice, GeneratorError> {
        match self {
            GeneratorSpec::SimplexBoundary { d } => simplex_boundary(*d),
            GeneratorSpec::CrossPolytope { d } => cross_polytope(*d),
            GeneratorSpec::HypercubeBoundary { d } => hypercube_boundary(*d),
            GeneratorSpec::Ngon { n } => ngon(*n),
            GeneratorSpec::CyclicBoundary { d, n } => cyclic_boundary(*d, *n),
            GeneratorSpec::Punctured { base, facet } => {
                let sphere = base.build()?;
                let id = match facet {
                    Some(id) => id.clone(),
                    None => sphere.id(sphere.facets()[0]).to_string(),
                };
                punctured(&sphere, &id)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            GeneratorSpec::SimplexBoundary { d } => format!("simplex-boundary(d={d})"),
            GeneratorSpec::CrossPolytope { d } => format!("cross-polytope(d={d})"),
            GeneratorSpec::HypercubeBoundary { d } => format!("hypercube-boundary(d={d})"),
            GeneratorSpec::Ngon { n } => format!("ngon(n={n})"),
            GeneratorSpec::CyclicBoundary { d, n } => format!("cyclic-boundary(d={d}, n={n})"),
            GeneratorSpec::Punctured { base, facet } => match facet {
                Some(f) => format!("punctured({}, {f})", base.label()),
                None => format!("punctured({})", base.label()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GubtRow {
    pub k: usize,
    pub candidate: u64,
    pub cyclic: u64,
    pub holds: bool,
}

/// Face-number comparison against a cyclic polytope with no more facets.
///
/// `mode` is `"theorem"` for simplicial candidates and `"conjecture"`
/// otherwise. Violations are collected, never asserted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GubtReport {
    pub d: usize,
    pub n: usize,
    pub mode: String,
    pub simplicial: bool,
    pub sphere: bool,
    pub shellable: Option<bool>,
    pub rows: Vec<GubtRow>,
    pub violations: Vec<usize>,
}

pub fn gubt_compare(candidate: &FaceLattice, d: usize, n: usize) -> Result<GubtReport, GeneratorError> {
    gubt_compare_with(candidate, d, n, SearchOptions::default())
}

pub fn gubt_compare_with(
    candidate: &FaceLattice,
    d: usize,
    n: usize,
    options: SearchOptions,
) -> Result<GubtReport, GeneratorError> {
    if candidate.dim() != d as isize - 1 {
        return Err(GeneratorError::Range(format!(
            "candidate has dimension {}, expected {}",
            candidate.dim(),
            d as isize - 1
        )));
    }
    let cyclic = cyclic_boundary(d, n)?;
    let (fp, fc) = (candidate.f_vector(), cyclic.f_vector());
    let top = d as isize - 1;
    if fp.get(top) < fc.get(top) {
        return Err(GeneratorError::HypothesisNotMet {
            have: fp.get(top),
            need: fc.get(top),
        });
    }
    let sphere = matches!(candidate.boundary_complex(), Ok(b) if b.is_void());
    let shellable = match find_shelling_with::<&str>(candidate, &[], options) {
        Ok(found) => Some(found.is_some()),
        Err(ShellingError::BudgetExceeded(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let simplicial = is_simplicial(candidate);
    let rows: Vec<GubtRow> = (0..d)
        .map(|k| {
            let (a, b) = (fp.get(k as isize), fc.get(k as isize));
            GubtRow {
                k,
                candidate: a,
                cyclic: b,
                holds: a >= b,
            }
        })
        .collect();
    let violations = rows.iter().filter(|r| !r.holds).map(|r| r.k).collect();
    Ok(GubtReport {
        d,
        n,
        mode: if simplicial { "theorem" } else { "conjecture" }.to_string(),
        simplicial,
        sphere,
        shellable,
        rows,
        violations,
    })
}
