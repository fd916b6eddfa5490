//! Shelling verification and search.
//!
//! An ordering `(F_1, ..., F_n)` of the `d`-faces is a shelling when `d = 0`,
//! or when `∂F_1` is shellable and, for every `j > 1`, the intersection of
//! `∂F_j` with `∂F_1 ∪ ... ∪ ∂F_{j-1}` is a pure `(d-1)`-complex and `∂F_j`
//! has a shelling that starts with exactly that intersection's `(d-1)`-faces.
//!
//! Everything here works inside one root lattice. The complex `∂G` is the
//! interval below `G`, so a recursive search is identified by the element
//! whose boundary is being shelled together with the required prefix set,
//! and that pair is the memo key.
//!
//! The search is a depth-first backtrack over facets in id order. Whether a
//! partial shelling can be completed depends only on the *set* of facets
//! already placed, so dead sets are remembered per level.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Face, FaceLattice, LatticeError, Subcomplex};

/// Backtrack node cap used when none is given.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShellingError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("order is not a permutation of the facets: {0}")]
    NotAPermutation(String),
    #[error("step {j} is outside 1..={n}")]
    IndexOutOfRange { j: usize, n: usize },
    #[error("complex is not pure")]
    NotPure,
    #[error("lattice is not a diamond lattice")]
    NotDiamond,
    #[error("complex is not a pseudomanifold")]
    NotPseudomanifold,
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("certificate does not replay: {0}")]
    InvalidCertificate(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FailureReason {
    EmptyIntersection,
    NotPure,
    NoPrefixShelling,
}

/// Where and why an ordering stops being a shelling. `step` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingFailure {
    pub step: usize,
    pub reason: FailureReason,
}

/// A sequence of facet ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShellingOrder(pub Vec<String>);

impl ShellingOrder {
    pub fn from_ids<S: AsRef<str>>(ids: &[S]) -> Self {
        ShellingOrder(ids.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub(crate) fn from_faces(lattice: &FaceLattice, faces: &[Face]) -> Self {
        ShellingOrder(faces.iter().map(|&f| lattice.id(f).to_string()).collect())
    }

    pub fn ids(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Resolves the ids against the facets of `lattice`, insisting on a
    /// permutation of all of them.
    pub fn resolve(&self, lattice: &FaceLattice) -> Result<Vec<Face>, ShellingError> {
        resolve_at(lattice, lattice.top(), &self.0)
    }
}

fn resolve_at<S: AsRef<str>>(
    lattice: &FaceLattice,
    top: Face,
    ids: &[S],
) -> Result<Vec<Face>, ShellingError> {
    let facets: Vec<Face> = lattice.lower_covers(top).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(ids.len());
    for id in ids {
        let face = lattice.face_or_err(id.as_ref())?;
        if !facets.contains(&face) {
            return Err(ShellingError::NotAPermutation(format!("`{}` is not a facet", id.as_ref())));
        }
        if !seen.insert(face) {
            return Err(ShellingError::NotAPermutation(format!("`{}` repeats", id.as_ref())));
        }
        out.push(face);
    }
    if out.len() != facets.len() {
        return Err(ShellingError::NotAPermutation(format!(
            "{} of {} facets listed",
            out.len(),
            facets.len()
        )));
    }
    Ok(out)
}

/// One step of a certificate: the facet placed, the facets of its
/// intersection with everything earlier, and a certificate for the shelling
/// of its boundary that begins with those facets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateStep {
    pub facet: String,
    pub intersection_facets: Vec<String>,
    pub sub_certificate: Option<Box<ShellingCertificate>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingCertificate {
    pub dim: isize,
    pub order: ShellingOrder,
    pub steps: Vec<CertificateStep>,
}

impl ShellingCertificate {
    /// Re-checks every step without searching: recorded intersections must
    /// match the lattice, be pure and nonempty, and head the recorded
    /// sub-shelling, which must replay in turn.
    pub fn replay(&self, lattice: &FaceLattice) -> Result<(), ShellingError> {
        replay_at(lattice, lattice.top(), self)
    }
}

fn replay_at(lattice: &FaceLattice, top: Face, cert: &ShellingCertificate) -> Result<(), ShellingError> {
    let bad = |msg: String| ShellingError::InvalidCertificate(msg);
    let d = lattice.rank_of(top) as isize - 2;
    if cert.dim != d {
        return Err(bad(format!("dimension {} recorded, {} found", cert.dim, d)));
    }
    let order = resolve_at(lattice, top, cert.order.ids())?;
    if cert.steps.len() != order.len() {
        return Err(bad("step count differs from order length".into()));
    }
    let mut covered = FixedBitSet::with_capacity(lattice.len());
    for (idx, (step, &facet)) in cert.steps.iter().zip(&order).enumerate() {
        if step.facet != lattice.id(facet) {
            return Err(bad(format!("step {} names `{}`", idx + 1, step.facet)));
        }
        if d <= 0 {
            if step.sub_certificate.is_some() || !step.intersection_facets.is_empty() {
                return Err(bad(format!("step {} carries data below dimension 1", idx + 1)));
            }
            continue;
        }
        let ridges: Vec<Face> = lattice
            .lower_covers(facet)
            .filter(|r| covered.contains(r.index()))
            .collect();
        let recorded: HashSet<&str> = step.intersection_facets.iter().map(String::as_str).collect();
        let actual: HashSet<&str> = ridges.iter().map(|&r| lattice.id(r)).collect();
        if recorded != actual || recorded.len() != step.intersection_facets.len() {
            return Err(bad(format!("step {} intersection mismatch", idx + 1)));
        }
        if idx > 0 {
            if ridges.is_empty() {
                return Err(bad(format!("step {} has an empty intersection", idx + 1)));
            }
            if !intersection_is_pure(lattice, facet, &covered, &ridges) {
                return Err(bad(format!("step {} intersection is not pure", idx + 1)));
            }
        }
        let sub = step
            .sub_certificate
            .as_deref()
            .ok_or_else(|| bad(format!("step {} lacks a sub-certificate", idx + 1)))?;
        let head: HashSet<&str> = sub
            .order
            .ids()
            .iter()
            .take(ridges.len())
            .map(String::as_str)
            .collect();
        if head != actual {
            return Err(bad(format!("step {} sub-shelling does not start with the intersection", idx + 1)));
        }
        replay_at(lattice, facet, sub)?;
        covered.union_with(lattice.down_set(facet));
    }
    Ok(())
}

fn intersection_is_pure(lattice: &FaceLattice, facet: Face, covered: &FixedBitSet, ridges: &[Face]) -> bool {
    let mut inter = lattice.down_set(facet).clone();
    inter.intersect_with(covered);
    let mut reach = FixedBitSet::with_capacity(lattice.len());
    for &r in ridges {
        reach.union_with(lattice.down_set(r));
    }
    inter == reach
}

/// Outcome of checking an ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Shelling(ShellingCertificate),
    Failure(ShellingFailure),
}

impl Verdict {
    pub fn certificate(&self) -> Option<&ShellingCertificate> {
        match self {
            Verdict::Shelling(c) => Some(c),
            Verdict::Failure(_) => None,
        }
    }

    pub fn failure(&self) -> Option<ShellingFailure> {
        match self {
            Verdict::Shelling(_) => None,
            Verdict::Failure(f) => Some(*f),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Backtrack nodes allowed before the search gives up.
    pub budget: u64,
    /// Accept an empty intersection at steps after the first. Off by default.
    pub allow_empty_intersection: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            allow_empty_intersection: false,
        }
    }
}

enum StepCheck {
    Accepted { ridges: Vec<Face>, sub_order: Vec<Face> },
    Rejected(FailureReason),
}

struct Level {
    facets: Vec<Face>,
    prefix_len: usize,
    in_prefix: Vec<bool>,
    placed: Vec<usize>,
    placed_mask: FixedBitSet,
    dead: HashSet<FixedBitSet>,
}

/// Memoizing shelling search over one lattice.
///
/// Reusing one instance across calls shares the memo table, which pays off
/// when the same boundaries are shelled repeatedly.
pub struct ShellingSearch<'a> {
    lattice: &'a FaceLattice,
    options: SearchOptions,
    nodes: u64,
    memo: HashMap<(usize, Vec<usize>), Option<Vec<Face>>>,
}

impl<'a> ShellingSearch<'a> {
    pub fn new(lattice: &'a FaceLattice) -> Self {
        Self::with_options(lattice, SearchOptions::default())
    }

    pub fn with_options(lattice: &'a FaceLattice, options: SearchOptions) -> Self {
        ShellingSearch {
            lattice,
            options,
            nodes: 0,
            memo: HashMap::new(),
        }
    }

    pub fn lattice(&self) -> &'a FaceLattice {
        self.lattice
    }

    /// Backtrack nodes spent so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Shelling of the complex below `top` whose first `prefix.len()` facets
    /// are exactly `prefix` (in some order). For the root top this shells the
    /// whole complex; for any other element `G` it shells `∂G`.
    pub fn search(&mut self, top: Face, prefix: &[Face]) -> Result<Option<Vec<Face>>, ShellingError> {
        let mut key_prefix: Vec<usize> = prefix.iter().map(|f| f.index()).collect();
        key_prefix.sort_unstable();
        key_prefix.dedup();
        let key = (top.index(), key_prefix);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }

        let facets: Vec<Face> = self.lattice.lower_covers(top).collect();
        let in_prefix: Vec<bool> = facets.iter().map(|f| prefix.contains(f)).collect();
        let prefix_len = in_prefix.iter().filter(|&&b| b).count();
        if prefix_len != key.1.len() {
            return Err(ShellingError::NotAPermutation(
                "prefix contains faces that are not facets".into(),
            ));
        }

        let d = self.lattice.rank_of(top) as isize - 2;
        let result = if d <= 0 {
            let mut order: Vec<Face> = facets
                .iter()
                .zip(&in_prefix)
                .filter(|(_, &p)| p)
                .map(|(&f, _)| f)
                .collect();
            order.extend(facets.iter().zip(&in_prefix).filter(|(_, &p)| !p).map(|(&f, _)| f));
            Some(order)
        } else {
            let mut level = Level {
                placed_mask: FixedBitSet::with_capacity(facets.len()),
                facets,
                prefix_len,
                in_prefix,
                placed: Vec::new(),
                dead: HashSet::new(),
            };
            let covered = FixedBitSet::with_capacity(self.lattice.len());
            if self.extend(&mut level, &covered)? {
                Some(level.placed.iter().map(|&p| level.facets[p]).collect())
            } else {
                None
            }
        };
        self.memo.insert(key, result.clone());
        Ok(result)
    }

    fn extend(&mut self, level: &mut Level, covered: &FixedBitSet) -> Result<bool, ShellingError> {
        if level.placed.len() == level.facets.len() {
            return Ok(true);
        }
        if level.dead.contains(&level.placed_mask) {
            return Ok(false);
        }
        let want_prefix = level.placed.len() < level.prefix_len;
        for pos in 0..level.facets.len() {
            if level.placed_mask.contains(pos) || level.in_prefix[pos] != want_prefix {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.options.budget {
                return Err(ShellingError::BudgetExceeded(self.options.budget));
            }
            let facet = level.facets[pos];
            let first = level.placed.is_empty();
            if let StepCheck::Rejected(_) = self.check_step(facet, covered, first)? {
                continue;
            }
            let mut next = covered.clone();
            next.union_with(self.lattice.down_set(facet));
            level.placed.push(pos);
            level.placed_mask.insert(pos);
            if self.extend(level, &next)? {
                return Ok(true);
            }
            level.placed.pop();
            level.placed_mask.set(pos, false);
        }
        level.dead.insert(level.placed_mask.clone());
        Ok(false)
    }

    fn check_step(&mut self, facet: Face, covered: &FixedBitSet, first: bool) -> Result<StepCheck, ShellingError> {
        let lattice = self.lattice;
        let ridges: Vec<Face> = lattice
            .lower_covers(facet)
            .filter(|r| covered.contains(r.index()))
            .collect();
        if !first {
            if ridges.is_empty() {
                let mut inter = lattice.down_set(facet).clone();
                inter.intersect_with(covered);
                let only_empty_face = inter.ones().all(|i| i == lattice.bottom().index());
                if !only_empty_face {
                    return Ok(StepCheck::Rejected(FailureReason::NotPure));
                }
                if !self.options.allow_empty_intersection {
                    return Ok(StepCheck::Rejected(FailureReason::EmptyIntersection));
                }
            } else if !intersection_is_pure(lattice, facet, covered, &ridges) {
                return Ok(StepCheck::Rejected(FailureReason::NotPure));
            }
        }
        match self.search(facet, &ridges)? {
            Some(sub_order) => Ok(StepCheck::Accepted { ridges, sub_order }),
            None => Ok(StepCheck::Rejected(FailureReason::NoPrefixShelling)),
        }
    }

    /// Checks `order` (facets of the complex below `top`) and builds a
    /// certificate, or reports the first failing step.
    pub fn verify(&mut self, top: Face, order: &[Face]) -> Result<Verdict, ShellingError> {
        let lattice = self.lattice;
        let d = lattice.rank_of(top) as isize - 2;
        let ids = ShellingOrder::from_faces(lattice, order);
        let mut steps = Vec::with_capacity(order.len());
        let mut covered = FixedBitSet::with_capacity(lattice.len());
        for (idx, &facet) in order.iter().enumerate() {
            if d <= 0 {
                steps.push(CertificateStep {
                    facet: lattice.id(facet).to_string(),
                    intersection_facets: Vec::new(),
                    sub_certificate: None,
                });
                continue;
            }
            match self.check_step(facet, &covered, idx == 0)? {
                StepCheck::Rejected(reason) => {
                    return Ok(Verdict::Failure(ShellingFailure { step: idx + 1, reason }));
                }
                StepCheck::Accepted { ridges, sub_order } => {
                    let sub = match self.verify(facet, &sub_order)? {
                        Verdict::Shelling(c) => c,
                        Verdict::Failure(f) => {
                            return Err(ShellingError::InvalidCertificate(format!(
                                "search returned a non-shelling of `{}` (step {})",
                                lattice.id(facet),
                                f.step
                            )))
                        }
                    };
                    steps.push(CertificateStep {
                        facet: lattice.id(facet).to_string(),
                        intersection_facets: ridges.iter().map(|&r| lattice.id(r).to_string()).collect(),
                        sub_certificate: Some(Box::new(sub)),
                    });
                }
            }
            covered.union_with(lattice.down_set(facet));
        }
        Ok(Verdict::Shelling(ShellingCertificate { dim: d, order: ids, steps }))
    }
}

/// `∂F_j ∩ (∂F_1 ∪ ... ∪ ∂F_{j-1})` for `2 <= j <= n` (1-based).
pub fn boundary_intersection<'a>(
    lattice: &'a FaceLattice,
    order: &ShellingOrder,
    j: usize,
) -> Result<Subcomplex<'a>, ShellingError> {
    let faces = order.resolve(lattice)?;
    intersection_with_earlier(lattice, &faces, j)
}

pub(crate) fn intersection_with_earlier<'a>(
    lattice: &'a FaceLattice,
    faces: &[Face],
    j: usize,
) -> Result<Subcomplex<'a>, ShellingError> {
    let n = faces.len();
    if j < 2 || j > n {
        return Err(ShellingError::IndexOutOfRange { j, n });
    }
    let mut earlier = FixedBitSet::with_capacity(lattice.len());
    for &f in &faces[..j - 1] {
        earlier.union_with(lattice.down_set(f));
    }
    let facet = faces[j - 1];
    let mut members = lattice.down_set(facet).clone();
    members.set(facet.index(), false);
    members.intersect_with(&earlier);
    Ok(lattice.subcomplex_from_bits(members))
}

/// Checks whether `order` is a shelling of `lattice`.
pub fn is_shelling(lattice: &FaceLattice, order: &ShellingOrder) -> Result<Verdict, ShellingError> {
    is_shelling_with(lattice, order, SearchOptions::default())
}

pub fn is_shelling_with(
    lattice: &FaceLattice,
    order: &ShellingOrder,
    options: SearchOptions,
) -> Result<Verdict, ShellingError> {
    if !lattice.is_pure() {
        return Err(ShellingError::NotPure);
    }
    let faces = order.resolve(lattice)?;
    ShellingSearch::with_options(lattice, options).verify(lattice.top(), &faces)
}

/// First shelling in id order whose leading facets are exactly `prefix`,
/// or `None` when there is none.
pub fn find_shelling<S: AsRef<str>>(
    lattice: &FaceLattice,
    prefix: &[S],
) -> Result<Option<ShellingOrder>, ShellingError> {
    find_shelling_with(lattice, prefix, SearchOptions::default())
}

pub fn find_shelling_with<S: AsRef<str>>(
    lattice: &FaceLattice,
    prefix: &[S],
    options: SearchOptions,
) -> Result<Option<ShellingOrder>, ShellingError> {
    if !lattice.is_pure() {
        return Err(ShellingError::NotPure);
    }
    let facets = lattice.facets();
    let mut faces = Vec::with_capacity(prefix.len());
    for id in prefix {
        let face = lattice.face_or_err(id.as_ref())?;
        if !facets.contains(&face) {
            return Err(ShellingError::NotAPermutation(format!("`{}` is not a facet", id.as_ref())));
        }
        faces.push(face);
    }
    let mut search = ShellingSearch::with_options(lattice, options);
    Ok(search
        .search(lattice.top(), &faces)?
        .map(|order| ShellingOrder::from_faces(lattice, &order)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Topology {
    Sphere,
    Ball,
}

/// Sphere when the boundary is empty, ball otherwise. The certificate is
/// replayed first.
pub fn classify(lattice: &FaceLattice, cert: &ShellingCertificate) -> Result<Topology, ShellingError> {
    cert.replay(lattice)?;
    let boundary = lattice
        .boundary_complex()
        .map_err(|_| ShellingError::NotPseudomanifold)?;
    Ok(if boundary.is_void() {
        Topology::Sphere
    } else {
        Topology::Ball
    })
}

/// A diamond lattice is dual CL-shellable exactly when its complex is
/// shellable.
pub fn is_dual_cl_shellable(lattice: &FaceLattice) -> Result<bool, ShellingError> {
    is_dual_cl_shellable_with(lattice, SearchOptions::default())
}

pub fn is_dual_cl_shellable_with(lattice: &FaceLattice, options: SearchOptions) -> Result<bool, ShellingError> {
    if !lattice.is_diamond() {
        return Err(ShellingError::NotDiamond);
    }
    Ok(find_shelling_with::<&str>(lattice, &[], options)?.is_some())
}

pub fn is_cl_shellable(lattice: &FaceLattice) -> Result<bool, ShellingError> {
    is_dual_cl_shellable(&lattice.dualize())
}

pub fn is_cl_shellable_with(lattice: &FaceLattice, options: SearchOptions) -> Result<bool, ShellingError> {
    is_dual_cl_shellable_with(&lattice.dualize(), options)
}

/// For a ball with shelling `(F_1, ..., F_n)`, whether the interior of
/// `∂F_n ∩ (∂F_1 ∪ ... ∪ ∂F_{n-1})` lies in the interior of the ball.
pub fn final_intersection_inside(lattice: &FaceLattice, order: &ShellingOrder) -> Result<bool, ShellingError> {
    let faces = order.resolve(lattice)?;
    let last = intersection_with_earlier(lattice, &faces, faces.len())?;
    let inner = last.interior().map_err(|_| ShellingError::NotPseudomanifold)?;
    let interior = lattice.interior().map_err(|_| ShellingError::NotPseudomanifold)?;
    Ok(inner.is_subset(&interior))
}
