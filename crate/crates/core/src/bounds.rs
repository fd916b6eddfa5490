//! Exact verification of the face-number lower bounds for shellable spheres
//! and balls.
//!
//! For a shellable, strongly regular `d`-sphere or `d`-ball `X` and
//! `floor((d-1)/2) <= k <= d`,
//!
//! ```text
//! f_k(X) >= rho(d+1, k) * f_d(X) + f_k(∂X) / 2,
//! rho(d+1, k) = ( C(ceil((d+1)/2), d-k) + C(floor((d+1)/2), d-k) ) / 2,
//! ```
//!
//! with equality exactly when `k = d`, or `k = d - 1` and `X` is simplicial.
//!
//! The checks here follow the argument behind that bound rather than just
//! its conclusion. Splitting a shelling of a sphere at `j` gives a beginning
//! complex `C` and an ending complex `D`; [`find_witness_pair`] produces faces
//! in `int C` and `int D` of small total dimension, [`check_split_count`]
//! counts `f_k(int C) + f_k(int D)` against the binomial pair, and
//! [`facet_decomposition`] applies that to every facet boundary of `X` so the
//! per-facet counts can be summed and compared with `2 f_k(X) - f_k(∂X)`.
//!
//! Arithmetic is integer or exact rational throughout.

use fixedbitset::FixedBitSet;
use num_integer::binomial;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{FVector, Face, FaceLattice, FaceSet, LatticeError, Subcomplex};
use crate::shelling::{
    intersection_with_earlier, is_shelling, ShellingError, ShellingFailure, ShellingOrder, ShellingSearch, Verdict,
};

pub type Rational = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("out of range: {0}")]
    Range(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("split {j} is outside the admissible range for {n} facets")]
    InvalidSplit { j: usize, n: usize },
    #[error("order is not a shelling (step {}, {:?})", .0.step, .0.reason)]
    NotAShelling(ShellingFailure),
    #[error("no shelling exists")]
    NotShellable,
    #[error("complex is not simplicial")]
    NotSimplicial,
    #[error("lattice is not a diamond lattice")]
    NotDiamond,
    #[error("complex is not a pseudomanifold")]
    NotPseudomanifold,
    #[error("complex is not a sphere")]
    NotSphere,
    #[error("identity `{identity}` fails at facet {j}")]
    IdentityViolated { j: usize, identity: &'static str },
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error(transparent)]
    Shelling(#[from] ShellingError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `(ceil((d+1)/2), floor((d+1)/2))`.
fn halves(d: usize) -> (usize, usize) {
    (d / 2 + 1, d - d / 2)
}

/// `C(ceil((d+1)/2), m) + C(floor((d+1)/2), m)`.
pub fn binomial_pair(d: usize, m: usize) -> u64 {
    let (hi, lo) = halves(d);
    binomial(hi as u64, m as u64) + binomial(lo as u64, m as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RhoCoefficient {
    pub d_plus_1: usize,
    pub k: usize,
    pub value: Rational,
}

impl RhoCoefficient {
    /// Twice the coefficient, always an integer.
    pub fn doubled(&self) -> u64 {
        (self.value * 2).to_integer() as u64
    }
}

/// The coefficient `rho(d+1, k)` for `0 <= k <= d`.
pub fn rho(d_plus_1: usize, k: usize) -> Result<RhoCoefficient, BoundsError> {
    if d_plus_1 == 0 || k >= d_plus_1 {
        return Err(BoundsError::Range(format!("rho({d_plus_1}, {k}) needs 0 <= k <= d")));
    }
    let d = d_plus_1 - 1;
    let value = Rational::new(binomial_pair(d, d - k) as i64, 2);
    Ok(RhoCoefficient { d_plus_1, k, value })
}

/// `C(a, m) + C(b, m) >= C(ceil((d+1)/2), m) + C(floor((d+1)/2), m)` for
/// `a + b >= d + 1` and `1 <= m <= ceil((d+1)/2)`.
pub fn binomial_split_lb(a: usize, b: usize, d: usize, m: usize) -> Result<bool, BoundsError> {
    if a + b < d + 1 || m == 0 || m > (d + 2) / 2 {
        return Err(BoundsError::PreconditionViolated(format!(
            "need a + b >= d + 1 and 1 <= m <= ceil((d+1)/2); got a={a}, b={b}, d={d}, m={m}"
        )));
    }
    Ok(binomial(a as u64, m as u64) + binomial(b as u64, m as u64) >= binomial_pair(d, m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VandermondeCheck {
    pub identity_holds: bool,
    pub cross_terms: u64,
    pub cross_terms_vanish: bool,
}

/// Expands `C(d+1, d-k)` as the convolution of `C(ceil((d+1)/2), ·)` and
/// `C(floor((d+1)/2), ·)` and reports the terms other than the two ends.
pub fn vandermonde_check(d: usize, k: usize) -> Result<VandermondeCheck, BoundsError> {
    if k > d {
        return Err(BoundsError::Range(format!("k={k} > d={d}")));
    }
    let (hi, lo) = halves(d);
    let (hi, lo) = (hi as u64, lo as u64);
    let m = (d - k) as u64;
    let total: u64 = (0..=m).map(|i| binomial(hi, i) * binomial(lo, m - i)).sum();
    let cross: u64 = (1..m).map(|i| binomial(hi, i) * binomial(lo, m - i)).sum();
    Ok(VandermondeCheck {
        identity_holds: total == binomial(d as u64 + 1, m),
        cross_terms: cross,
        cross_terms_vanish: cross == 0,
    })
}

/// Every facet has exactly `d + 1` faces of dimension `d - 1`.
pub fn is_simplicial(x: &FaceLattice) -> bool {
    let d = x.dim();
    x.facets().into_iter().all(|f| x.lower_covers(f).count() as isize == d + 1)
}

/// Every lower interval `[0^, F]` below a facet is Boolean of size `2^(d+1)`.
pub fn is_simplicial_by_intervals(x: &FaceLattice) -> bool {
    let d = x.dim();
    if d < 0 {
        return true;
    }
    x.facets()
        .into_iter()
        .all(|f| x.interval_size(x.bottom(), f) == 1usize << (d + 1))
}

/// `(d + 1) f_d + f_{d-1}(∂X) = 2 f_{d-1}(X)` for a simplicial pseudomanifold.
pub fn simplicial_equality_identity(x: &FaceLattice) -> Result<bool, BoundsError> {
    if !is_simplicial(x) {
        return Err(BoundsError::NotSimplicial);
    }
    let boundary = x.boundary_complex().map_err(|_| BoundsError::NotPseudomanifold)?;
    let d = x.dim();
    let f = x.f_vector();
    let lhs = (d as u64 + 1) * f.get(d) + boundary.f_vector().get(d - 1);
    Ok(lhs == 2 * f.get(d - 1))
}

fn is_sphere(x: &FaceLattice) -> bool {
    matches!(x.boundary_complex(), Ok(b) if b.is_void())
}

fn verified_faces(x: &FaceLattice, order: &ShellingOrder) -> Result<Vec<Face>, BoundsError> {
    if !x.is_pure() {
        return Err(BoundsError::NotPseudomanifold);
    }
    match is_shelling(x, order)? {
        Verdict::Shelling(_) => Ok(order.resolve(x)?),
        Verdict::Failure(f) => Err(BoundsError::NotAShelling(f)),
    }
}

/// Proper nonempty faces of the sphere below `top`.
fn sphere_faces(lattice: &FaceLattice, top: Face) -> FixedBitSet {
    let mut all = lattice.down_set(top).clone();
    all.set(top.index(), false);
    all.set(lattice.bottom().index(), false);
    all
}

/// Beginning and ending complexes of a split shelling, with interiors.
#[derive(Clone, Debug)]
pub struct SplitPair<'a> {
    pub j: usize,
    pub beginning: Subcomplex<'a>,
    pub ending: Subcomplex<'a>,
    pub int_beginning: FaceSet<'a>,
    pub int_ending: FaceSet<'a>,
}

/// Splits a shelling of the sphere below `top` after `j` facets and checks
/// that each interior is the complement of the other side.
fn split_at<'a>(lattice: &'a FaceLattice, top: Face, faces: &[Face], j: usize) -> Result<SplitPair<'a>, BoundsError> {
    let n = faces.len();
    if j > n {
        return Err(BoundsError::InvalidSplit { j, n });
    }
    let beginning = lattice.closure_of(faces[..j].iter().copied());
    let ending = lattice.closure_of(faces[j..].iter().copied());
    let pm = |_| BoundsError::NotPseudomanifold;
    let int_beginning = beginning.interior().map_err(pm)?;
    let int_ending = ending.interior().map_err(pm)?;

    let all = sphere_faces(lattice, top);
    let mut not_ending = all.clone();
    not_ending.difference_with(ending.bits());
    let mut not_beginning = all;
    not_beginning.difference_with(beginning.bits());
    if &not_ending != int_beginning.bits() || &not_beginning != int_ending.bits() {
        return Err(BoundsError::InternalContradiction(format!(
            "interiors at split {j} are not complements"
        )));
    }
    Ok(SplitPair {
        j,
        beginning,
        ending,
        int_beginning,
        int_ending,
    })
}

/// `C = <F_1..F_j>` and `D = <F_{j+1}..F_n>` for a shelling of a sphere,
/// `0 <= j <= n`.
pub fn split_complexes<'a>(
    sphere: &'a FaceLattice,
    order: &ShellingOrder,
    j: usize,
) -> Result<SplitPair<'a>, BoundsError> {
    if !is_sphere(sphere) {
        return Err(BoundsError::NotSphere);
    }
    let faces = verified_faces(sphere, order)?;
    split_at(sphere, sphere.top(), &faces, j)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPair {
    pub c: String,
    pub d: String,
    pub dim_c: isize,
    pub dim_d: isize,
    pub split: usize,
    pub c_in_interior: bool,
    pub d_in_interior: bool,
}

fn witness_at(
    search: &mut ShellingSearch<'_>,
    top: Face,
    faces: &[Face],
    j: usize,
) -> Result<(Face, Face), BoundsError> {
    let lattice = search.lattice();
    let d = lattice.rank_of(top) as isize - 2;
    let n = faces.len();
    if j == 0 || j >= n {
        return Err(BoundsError::InvalidSplit { j, n });
    }
    if d == 0 {
        if n != 2 {
            return Err(BoundsError::InternalContradiction(format!("0-sphere with {n} points")));
        }
        return Ok((faces[0], faces[1]));
    }
    if j == 1 {
        let split = split_at(lattice, top, faces, 1)?;
        let vertex = split
            .int_ending
            .iter()
            .find(|&f| lattice.rank_of(f) == 1)
            .ok_or_else(|| BoundsError::InternalContradiction("no vertex avoids the first facet".into()))?;
        return Ok((faces[0], vertex));
    }

    let facet = faces[j - 1];
    let mut earlier = FixedBitSet::with_capacity(lattice.len());
    for &f in &faces[..j - 1] {
        earlier.union_with(lattice.down_set(f));
    }
    let mut later = FixedBitSet::with_capacity(lattice.len());
    for &f in &faces[j..] {
        later.union_with(lattice.down_set(f));
    }
    let ridges: Vec<Face> = lattice.lower_covers(facet).collect();
    let begin: Vec<Face> = ridges.iter().copied().filter(|r| earlier.contains(r.index())).collect();
    let end_count = ridges.iter().filter(|r| later.contains(r.index())).count();
    if begin.len() + end_count != ridges.len() || begin.is_empty() || end_count == 0 {
        return Err(BoundsError::InternalContradiction(format!(
            "ridges of `{}` do not split cleanly",
            lattice.id(facet)
        )));
    }
    let sub_order = search
        .search(facet, &begin)?
        .ok_or_else(|| BoundsError::InternalContradiction(format!("∂{} has no prefixed shelling", lattice.id(facet))))?;
    let (c, d_prime) = witness_at(search, facet, &sub_order, begin.len())?;
    let lift = lattice
        .upper_covers(d_prime)
        .find(|&u| lattice.leq(u, top) && !lattice.leq(u, facet))
        .ok_or_else(|| {
            BoundsError::InternalContradiction(format!("no cover of `{}` leaves `{}`", lattice.id(d_prime), lattice.id(facet)))
        })?;
    Ok((c, lift))
}

/// Faces `C ∈ int <F_1..F_j>` and `D ∈ int <F_{j+1}..F_n>` with
/// `dim C + dim D <= d`, for a shelling of a `d`-sphere and `1 <= j < n`.
///
/// Built by induction on dimension: for `j > 1` the facet `F_j`'s boundary is
/// split into the part shared with earlier facets and the rest, a shelling of
/// `∂F_j` starting with the shared part is found, the pair for that smaller
/// sphere is computed, and its second face is lifted to a least-id cover not
/// contained in `F_j`.
pub fn find_witness_pair(sphere: &FaceLattice, order: &ShellingOrder, j: usize) -> Result<WitnessPair, BoundsError> {
    if !is_sphere(sphere) {
        return Err(BoundsError::NotSphere);
    }
    let faces = verified_faces(sphere, order)?;
    let mut search = ShellingSearch::new(sphere);
    let (c, d) = witness_at(&mut search, sphere.top(), &faces, j)?;
    let split = split_at(sphere, sphere.top(), &faces, j)?;
    let pair = WitnessPair {
        c: sphere.id(c).to_string(),
        d: sphere.id(d).to_string(),
        dim_c: sphere.dim_of(c),
        dim_d: sphere.dim_of(d),
        split: j,
        c_in_interior: split.int_beginning.contains(c),
        d_in_interior: split.int_ending.contains(d),
    };
    if !pair.c_in_interior || !pair.d_in_interior || pair.dim_c + pair.dim_d > sphere.dim() {
        return Err(BoundsError::InternalContradiction(format!("witness {pair:?} is invalid")));
    }
    Ok(pair)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCount {
    pub lhs: u64,
    /// `C(ceil((d+1)/2), d-k) + C(floor((d+1)/2), d-k)`, i.e. `2 rho(d+1, k)`.
    pub rhs: u64,
    pub ok: bool,
}

fn check_k_range(d: usize, k: usize, upper: usize) -> Result<(), BoundsError> {
    let low = d.saturating_sub(1) / 2;
    if k < low || k > upper {
        return Err(BoundsError::Range(format!("k={k} outside [{low}, {upper}] for d={d}")));
    }
    Ok(())
}

fn split_count_at(lattice: &FaceLattice, top: Face, faces: &[Face], j: usize, k: usize) -> Result<SplitCount, BoundsError> {
    // The sphere below `top` has dimension d - 1.
    let d = lattice.rank_of(top) - 1;
    check_k_range(d, k, d - 1)?;
    let split = split_at(lattice, top, faces, j)?;
    let lhs = split.int_beginning.count_dim(k as isize) + split.int_ending.count_dim(k as isize);
    let rhs = binomial_pair(d, d - k);
    Ok(SplitCount { lhs, rhs, ok: lhs >= rhs })
}

/// `f_k(int C) + f_k(int D)` against the binomial pair for a shelling of a
/// `(d-1)`-sphere split after `j` facets, `0 <= j <= n` and
/// `floor((d-1)/2) <= k <= d - 1`.
pub fn check_split_count(
    sphere: &FaceLattice,
    order: &ShellingOrder,
    j: usize,
    k: usize,
) -> Result<SplitCount, BoundsError> {
    if sphere.dim() < 0 {
        return Err(BoundsError::Range("sphere dimension must be at least 0".into()));
    }
    let d = (sphere.dim() + 1) as usize;
    check_k_range(d, k, d - 1)?;
    if !is_sphere(sphere) {
        return Err(BoundsError::NotSphere);
    }
    let faces = verified_faces(sphere, order)?;
    split_count_at(sphere, sphere.top(), &faces, j, k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetSplit {
    pub j: usize,
    pub facet: String,
    pub beginning_ridges: Vec<String>,
    pub ending_ridges: Vec<String>,
    pub int_beginning: FVector,
    pub int_ending: FVector,
}

/// Per-facet beginning/ending complexes of `∂F_j` for a shelling of a sphere
/// or ball, with every identity the bound's argument relies on checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDecomposition {
    pub facets: Vec<FacetSplit>,
}

fn without_empty_face(bits: &FixedBitSet) -> FixedBitSet {
    let mut b = bits.clone();
    b.set(0, false);
    b
}

fn decompose(x: &FaceLattice, faces: &[Face]) -> Result<SplitDecomposition, BoundsError> {
    let boundary = x.boundary_complex().map_err(|_| BoundsError::NotPseudomanifold)?;
    let n = faces.len();
    let size = x.len();

    let mut prefix_union = vec![FixedBitSet::with_capacity(size)];
    for &f in faces {
        let mut next = prefix_union.last().unwrap().clone();
        next.union_with(x.down_set(f));
        prefix_union.push(next);
    }
    let mut suffix_union = vec![FixedBitSet::with_capacity(size); n + 1];
    for i in (0..n).rev() {
        let mut next = suffix_union[i + 1].clone();
        next.union_with(x.down_set(faces[i]));
        suffix_union[i] = next;
    }

    let mut int_c_hits = vec![0u32; size];
    let mut int_d_hits = vec![0u32; size];
    for i in boundary.bits().ones() {
        int_c_hits[i] += 1;
    }

    let mut out = Vec::with_capacity(n);
    for (idx, &facet) in faces.iter().enumerate() {
        let j = idx + 1;
        let fail = |identity| BoundsError::IdentityViolated { j, identity };
        let earlier = &prefix_union[idx];
        let mut later_or_boundary = suffix_union[idx + 1].clone();
        later_or_boundary.union_with(boundary.bits());

        let ridges: Vec<Face> = x.lower_covers(facet).collect();
        let begin: Vec<Face> = ridges.iter().copied().filter(|r| earlier.contains(r.index())).collect();
        let end: Vec<Face> = ridges
            .iter()
            .copied()
            .filter(|r| later_or_boundary.contains(r.index()))
            .collect();
        let c = x.closure_of(begin.iter().copied());
        let d = x.closure_of(end.iter().copied());

        let mut facet_boundary = x.down_set(facet).clone();
        facet_boundary.set(facet.index(), false);

        if c.union(&d).bits() != &facet_boundary {
            return Err(fail("C_j ∪ D_j = ∂F_j"));
        }
        if begin.iter().any(|r| end.contains(r)) {
            return Err(fail("ridges of C_j and D_j are disjoint"));
        }
        let pm = |_| BoundsError::NotPseudomanifold;
        let (c_bd, d_bd) = (c.boundary().map_err(pm)?, d.boundary().map_err(pm)?);
        let meet = c.intersection(&d);
        if meet != c_bd || meet != d_bd {
            return Err(fail("C_j ∩ D_j = ∂C_j = ∂D_j"));
        }
        if j == 1 {
            if !c.is_void() {
                return Err(fail("C_1 is empty"));
            }
        } else if c != intersection_with_earlier(x, faces, j)? {
            return Err(fail("C_j = ∂F_j ∩ (∂F_1 ∪ ... ∪ ∂F_{j-1})"));
        }
        let mut expected_d = facet_boundary.clone();
        expected_d.intersect_with(&later_or_boundary);
        if without_empty_face(d.bits()) != without_empty_face(&expected_d) {
            return Err(fail("D_j = ∂F_j ∩ (∂X ∪ ∂F_{j+1} ∪ ... ∪ ∂F_n)"));
        }

        let int_c = c.interior().map_err(pm)?;
        let int_d = d.interior().map_err(pm)?;
        for f in int_c.iter() {
            int_c_hits[f.index()] += 1;
        }
        for f in int_d.iter() {
            int_d_hits[f.index()] += 1;
        }
        out.push(FacetSplit {
            j,
            facet: x.id(facet).to_string(),
            beginning_ridges: begin.iter().map(|&r| x.id(r).to_string()).collect(),
            ending_ridges: end.iter().map(|&r| x.id(r).to_string()).collect(),
            int_beginning: int_c.f_vector(),
            int_ending: int_d.f_vector(),
        });
    }

    for face in x.faces() {
        let i = face.index();
        if face == x.bottom() || face == x.top() {
            continue;
        }
        if int_c_hits[i] > 1 {
            return Err(BoundsError::IdentityViolated {
                j: 0,
                identity: "each face lies in at most one of int C_1, ..., int C_n, ∂X",
            });
        }
        if int_d_hits[i] > 1 {
            return Err(BoundsError::IdentityViolated {
                j: 0,
                identity: "each face lies in at most one of int D_1, ..., int D_n",
            });
        }
    }
    Ok(SplitDecomposition { facets: out })
}

/// Splits every facet boundary of a shelled sphere or ball into the part
/// shared with earlier facets and the part shared with later facets or the
/// boundary.
pub fn facet_decomposition(x: &FaceLattice, order: &ShellingOrder) -> Result<SplitDecomposition, BoundsError> {
    if !x.is_pseudomanifold() {
        return Err(BoundsError::NotPseudomanifold);
    }
    let faces = verified_faces(x, order)?;
    decompose(x, &faces)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerFacetRecord {
    pub j: usize,
    #[serde(rename = "fk_int_C")]
    pub fk_int_c: u64,
    #[serde(rename = "fk_int_D")]
    pub fk_int_d: u64,
    pub bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub d: usize,
    pub k: usize,
    /// `f_k(X)`.
    pub lhs: u64,
    /// `rho(d+1, k) f_d(X) + f_k(∂X) / 2`.
    pub rhs: Rational,
    pub slack: Rational,
    pub equality: bool,
    pub expected_equality: bool,
    pub simplicial: bool,
    pub per_facet: Vec<PerFacetRecord>,
    pub per_facet_ok: bool,
    /// `sum_j f_k(int C_j) + f_k(int D_j)`, for `k < d`.
    pub interior_sum: Option<u64>,
    /// `2 f_k(X) - f_k(∂X)`.
    pub double_count_bound: u64,
    pub double_count_ok: bool,
}

impl BoundsReport {
    /// Every check passed: nonnegative slack, all per-facet bounds, the
    /// double-counting bound, and equality exactly where predicted.
    pub fn holds(&self) -> bool {
        self.slack >= Rational::from_integer(0)
            && self.per_facet_ok
            && self.double_count_ok
            && self.equality == self.expected_equality
    }

    pub fn to_json(&self) -> BoundsReportJson {
        BoundsReportJson {
            k: self.k,
            lhs: self.lhs,
            rhs_num: *self.rhs.numer(),
            rhs_den: *self.rhs.denom(),
            slack_num: *self.slack.numer(),
            slack_den: *self.slack.denom(),
            equality: self.equality,
            expected_equality: self.expected_equality,
            per_facet: self.per_facet.clone(),
            d: self.d,
            simplicial: self.simplicial,
            per_facet_ok: self.per_facet_ok,
            interior_sum: self.interior_sum,
            double_count_bound: self.double_count_bound,
            double_count_ok: self.double_count_ok,
            holds: self.holds(),
        }
    }
}

/// Wire form of a [`BoundsReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReportJson {
    pub k: usize,
    pub lhs: u64,
    pub rhs_num: i64,
    pub rhs_den: i64,
    pub slack_num: i64,
    pub slack_den: i64,
    pub equality: bool,
    pub expected_equality: bool,
    pub per_facet: Vec<PerFacetRecord>,
    pub d: usize,
    pub simplicial: bool,
    pub per_facet_ok: bool,
    pub interior_sum: Option<u64>,
    pub double_count_bound: u64,
    pub double_count_ok: bool,
    pub holds: bool,
}

/// Checks the lower bound on `f_k` for a shelled sphere or ball of dimension
/// `d >= 1`, `floor((d-1)/2) <= k <= d`.
pub fn verify_lower_bound(x: &FaceLattice, order: &ShellingOrder, k: usize) -> Result<BoundsReport, BoundsError> {
    if x.dim() < 1 {
        return Err(BoundsError::Range("dimension must be at least 1".into()));
    }
    let d = x.dim() as usize;
    check_k_range(d, k, d)?;
    if !x.is_pseudomanifold() {
        return Err(BoundsError::NotPseudomanifold);
    }
    let faces = verified_faces(x, order)?;
    let boundary = x.boundary_complex().map_err(|_| BoundsError::NotPseudomanifold)?;

    let f = x.f_vector();
    let fk = f.get(k as isize);
    let fd = f.get(d as isize);
    let fk_boundary = boundary.f_vector().get(k as isize);
    let coefficient = rho(d + 1, k)?;
    let rhs = coefficient.value * Rational::from_integer(fd as i64) + Rational::new(fk_boundary as i64, 2);
    let slack = Rational::from_integer(fk as i64) - rhs;
    let simplicial = is_simplicial(x);
    let double_count_bound = 2 * fk - fk_boundary;

    let mut per_facet = Vec::new();
    let mut per_facet_ok = true;
    let mut interior_sum = None;
    let mut double_count_ok = true;
    if k < d {
        let decomposition = decompose(x, &faces)?;
        let bound = coefficient.doubled();
        let mut search = ShellingSearch::new(x);
        let mut sum = 0;
        for (entry, &facet) in decomposition.facets.iter().zip(&faces) {
            let fk_int_c = entry.int_beginning.get(k as isize);
            let fk_int_d = entry.int_ending.get(k as isize);
            // Same count through a prefixed shelling of ∂F_j split after the
            // shared ridges.
            let prefix: Vec<Face> = entry.beginning_ridges.iter().map(|r| x.face(r).unwrap()).collect();
            let sub_order = search
                .search(facet, &prefix)?
                .ok_or_else(|| BoundsError::InternalContradiction(format!("∂{} has no prefixed shelling", entry.facet)))?;
            let count = split_count_at(x, facet, &sub_order, prefix.len(), k)?;
            if count.lhs != fk_int_c + fk_int_d || count.rhs != bound {
                return Err(BoundsError::InternalContradiction(format!(
                    "split count at facet {} disagrees with the decomposition",
                    entry.j
                )));
            }
            per_facet_ok &= count.ok;
            sum += count.lhs;
            per_facet.push(PerFacetRecord {
                j: entry.j,
                fk_int_c,
                fk_int_d,
                bound,
            });
        }
        double_count_ok = sum <= double_count_bound;
        interior_sum = Some(sum);
    }

    let zero = Rational::from_integer(0);
    Ok(BoundsReport {
        d,
        k,
        lhs: fk,
        rhs,
        slack,
        equality: slack == zero,
        expected_equality: k == d || (k + 1 == d && simplicial),
        simplicial,
        per_facet,
        per_facet_ok,
        interior_sum,
        double_count_bound,
        double_count_ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideCheck {
    pub rhs_num: i64,
    pub rhs_den: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryRow {
    pub k: usize,
    pub fk: u64,
    /// `f_k >= rho(d+1, k) f_d`, present when dual CL-shellable and `k` is in range.
    pub facet_side: Option<SideCheck>,
    /// `f_k >= rho(d+1, d-k) f_0`, present when CL-shellable and `k` is in range.
    pub vertex_side: Option<SideCheck>,
    /// `f_k >= min(f_0, f_d)`, present when both hold.
    pub min_side: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub d: usize,
    pub f0: u64,
    pub fd: u64,
    pub dual_cl_shellable: bool,
    pub cl_shellable: bool,
    pub rows: Vec<CorollaryRow>,
}

impl CorollaryReport {
    /// Every check that applies passed.
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| {
            r.facet_side.as_ref().is_none_or(|s| s.holds)
                && r.vertex_side.as_ref().is_none_or(|s| s.holds)
                && r.min_side.unwrap_or(true)
        })
    }

    pub fn row(&self, k: usize) -> Option<&CorollaryRow> {
        self.rows.iter().find(|r| r.k == k)
    }
}

fn side(fk: u64, coefficient: Rational, base: u64) -> SideCheck {
    let rhs = coefficient * Rational::from_integer(base as i64);
    SideCheck {
        rhs_num: *rhs.numer(),
        rhs_den: *rhs.denom(),
        holds: Rational::from_integer(fk as i64) >= rhs,
    }
}

/// Evaluates both linear corollary bounds and the min-bound on a diamond
/// lattice, for every `k`, according to which shellability directions hold.
pub fn corollaries(lattice: &FaceLattice) -> Result<CorollaryReport, BoundsError> {
    corollaries_with(lattice, crate::shelling::SearchOptions::default())
}

pub fn corollaries_with(
    lattice: &FaceLattice,
    options: crate::shelling::SearchOptions,
) -> Result<CorollaryReport, BoundsError> {
    if lattice.dim() < 0 {
        return Err(BoundsError::Range("dimension must be at least 0".into()));
    }
    if !lattice.is_diamond() {
        return Err(BoundsError::NotDiamond);
    }
    let dual_cl = crate::shelling::is_dual_cl_shellable_with(lattice, options)?;
    let cl = crate::shelling::is_cl_shellable_with(lattice, options)?;
    let d = lattice.dim() as usize;
    let f = lattice.f_vector();
    let (f0, fd) = (f.get(0), f.get(d as isize));
    let low = d.saturating_sub(1) / 2;
    let high = (d + 2) / 2;
    let mut rows = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let fk = f.get(k as isize);
        let facet_side = (dual_cl && k >= low).then(|| side(fk, rho(d + 1, k).unwrap().value, fd));
        let vertex_side = (cl && k <= high).then(|| side(fk, rho(d + 1, d - k).unwrap().value, f0));
        rows.push(CorollaryRow {
            k,
            fk,
            facet_side,
            vertex_side,
            min_side: (dual_cl && cl).then_some(fk >= f0.min(fd)),
        });
    }
    Ok(CorollaryReport {
        d,
        f0,
        fd,
        dual_cl_shellable: dual_cl,
        cl_shellable: cl,
        rows,
    })
}

/// The corollary row for one `k`.
pub fn corollary_bounds(lattice: &FaceLattice, k: usize) -> Result<CorollaryRow, BoundsError> {
    let report = corollaries(lattice)?;
    report
        .row(k)
        .cloned()
        .ok_or_else(|| BoundsError::Range(format!("k={k} > d={}", report.d)))
}

/// `f_k >= min(f_0, f_d)` for all `k`, on a diamond lattice shellable in both
/// directions.
pub fn barany_check(lattice: &FaceLattice) -> Result<bool, BoundsError> {
    let report = corollaries(lattice)?;
    if !(report.dual_cl_shellable && report.cl_shellable) {
        return Err(BoundsError::NotShellable);
    }
    Ok(report.rows.iter().all(|r| r.min_side == Some(true)))
}
