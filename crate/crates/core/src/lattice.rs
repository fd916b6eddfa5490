//! Graded face lattices and the complex-level primitives built on them.
//!
//! A [`FaceLattice`] is the face poset of a regular CW complex with an empty
//! face `0^` at rank 0 and an artificial top `1^` at rank `d + 2`; a face of
//! dimension `k` sits at rank `k + 1`. The lattice *is* the complex: there are
//! no coordinates or attaching maps anywhere in this crate.
//!
//! Elements are frozen in `(rank, id)` order when the lattice is built, so
//! iterating faces in index order is iterating them by rank and then by
//! lexicographic id. Every tie-break in the crate relies on this.
//!
//! Down-sets and up-sets are cached as bitsets at build time. Subcomplexes and
//! face sets are bitsets over the same index space.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use num_integer::binomial;
use thiserror::Error;

/// Id given to the empty face when a lattice is assembled from facets or JSON.
pub const BOTTOM_ID: &str = "0^";
/// Id given to the artificial top element.
pub const TOP_ID: &str = "1^";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("duplicate face id `{0}`")]
    DuplicateId(String),
    #[error("unknown face id `{0}`")]
    UnknownFace(String),
    #[error("face `{id}` has rank {rank}, outside [0, {max}]")]
    RankOutOfBounds { id: String, rank: usize, max: usize },
    #[error("dimension {0} is below -1")]
    BadDimension(isize),
    #[error("cover `{lower}` -> `{upper}` does not raise rank by exactly one")]
    NotGraded { lower: String, upper: String },
    #[error("no unique bottom element")]
    NoBottom,
    #[error("no unique top element")]
    NoTop,
    #[error("cover relation contains a cycle")]
    CyclicCovers,
    #[error("facets have mixed sizes")]
    MixedDimensions,
    #[error("empty facet list")]
    EmptyInput,
    #[error("facet {0:?} is listed twice")]
    DuplicateFacet(Vec<String>),
    #[error("`{0}` is not a valid face for this operation")]
    InvalidFace(String),
    #[error("rank {rank} outside admissible range [{low}, {high}]")]
    RankOutOfRange { rank: usize, low: usize, high: usize },
    #[error("no atom avoids `{0}`; the lattice is not diamond")]
    NoSuchAtom(String),
    #[error("complex is not a pseudomanifold")]
    NotPseudomanifold,
}

/// Handle to an element of a [`FaceLattice`].
///
/// Handles are indices into the frozen element order and are only meaningful
/// for the lattice that produced them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(pub(crate) usize);

impl Face {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Face numbers `f_{-1}, f_0, ..., f_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FVector {
    dim: isize,
    counts: Vec<u64>,
}

impl FVector {
    pub fn new(dim: isize, counts: Vec<u64>) -> Self {
        assert_eq!(counts.len() as isize, dim + 2, "f-vector length must be d + 2");
        FVector { dim, counts }
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    /// `f_k`, with `k = -1` counting the empty face. Out-of-range `k` is 0.
    pub fn get(&self, k: isize) -> u64 {
        if k < -1 || k > self.dim {
            return 0;
        }
        self.counts[(k + 1) as usize]
    }

    /// All entries, starting at `f_{-1}`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `f_0, ..., f_d`.
    pub fn proper(&self) -> &[u64] {
        &self.counts[1..]
    }

    /// `sum_{k=0}^{d} (-1)^k f_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.proper()
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.proper().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Count of rank-`s` elements in an upper interval `[G, 1^]`, next to the
/// binomial floor that diamond lattices must meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalCount {
    pub count: u64,
    pub bound: u64,
    pub meets_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    ids: Vec<String>,
    ranks: Vec<usize>,
    index: HashMap<String, usize>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    by_rank: Vec<Vec<usize>>,
    dim: isize,
}

impl FaceLattice {
    /// Validates a ranked cover relation and freezes it into a lattice.
    ///
    /// `dim` is the dimension `d` of the complex; the top element must sit at
    /// rank `d + 2`.
    pub fn build<S: AsRef<str>>(
        elements: &[(S, usize)],
        covers: &[(S, S)],
        dim: isize,
    ) -> Result<Self, LatticeError> {
        if dim < -1 {
            return Err(LatticeError::BadDimension(dim));
        }
        let top_rank = (dim + 2) as usize;

        let mut order: Vec<(usize, &str)> = Vec::with_capacity(elements.len());
        let mut seen = BTreeSet::new();
        for (id, rank) in elements {
            let id = id.as_ref();
            if !seen.insert(id) {
                return Err(LatticeError::DuplicateId(id.to_string()));
            }
            if *rank > top_rank {
                return Err(LatticeError::RankOutOfBounds {
                    id: id.to_string(),
                    rank: *rank,
                    max: top_rank,
                });
            }
            order.push((*rank, id));
        }
        order.sort();

        let n = order.len();
        let ids: Vec<String> = order.iter().map(|(_, id)| id.to_string()).collect();
        let ranks: Vec<usize> = order.iter().map(|(r, _)| *r).collect();
        let index: HashMap<String, usize> =
            ids.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect();

        let mut edges = BTreeSet::new();
        for (lo, hi) in covers {
            let lo_i = *index
                .get(lo.as_ref())
                .ok_or_else(|| LatticeError::UnknownFace(lo.as_ref().to_string()))?;
            let hi_i = *index
                .get(hi.as_ref())
                .ok_or_else(|| LatticeError::UnknownFace(hi.as_ref().to_string()))?;
            edges.insert((lo_i, hi_i));
        }

        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for &(lo, hi) in &edges {
            upper[lo].push(hi);
            lower[hi].push(lo);
        }

        // Kahn's algorithm; anything left over sits on a cycle.
        let mut indegree: Vec<usize> = lower.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut visited = 0;
        while let Some(v) = queue.pop_front() {
            visited += 1;
            for &w in &upper[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if visited != n {
            return Err(LatticeError::CyclicCovers);
        }

        for &(lo, hi) in &edges {
            if ranks[hi] != ranks[lo] + 1 {
                return Err(LatticeError::NotGraded {
                    lower: ids[lo].clone(),
                    upper: ids[hi].clone(),
                });
            }
        }

        let bottoms = ranks.iter().filter(|&&r| r == 0).count();
        let tops = ranks.iter().filter(|&&r| r == top_rank).count();
        if bottoms != 1 || (0..n).any(|i| ranks[i] > 0 && lower[i].is_empty()) {
            return Err(LatticeError::NoBottom);
        }
        if tops != 1 || (0..n).any(|i| ranks[i] < top_rank && upper[i].is_empty()) {
            return Err(LatticeError::NoTop);
        }

        let mut by_rank = vec![Vec::new(); top_rank + 1];
        for (i, &r) in ranks.iter().enumerate() {
            by_rank[r].push(i);
        }

        // Index order is rank order, so one forward and one backward pass suffice.
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(i);
            for &lo in &lower[i] {
                set.union_with(&below[lo]);
            }
            below[i] = set;
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for i in (0..n).rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(i);
            for &hi in &upper[i] {
                set.union_with(&above[hi]);
            }
            above[i] = set;
        }

        Ok(FaceLattice {
            ids,
            ranks,
            index,
            lower,
            upper,
            below,
            above,
            by_rank,
            dim,
        })
    }

    /// Face lattice of the pure simplicial complex generated by `facets`.
    ///
    /// Every subset of every facet becomes a face. Vertex tokens are sorted
    /// numerically when they all parse as integers and lexicographically
    /// otherwise. A face id is its sorted vertex tokens concatenated when every
    /// token is one character long, and joined with `-` otherwise; the empty
    /// face is [`BOTTOM_ID`].
    pub fn from_facets<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self, LatticeError> {
        if facets.is_empty() {
            return Err(LatticeError::EmptyInput);
        }
        let mut vertex_set: BTreeSet<&str> = BTreeSet::new();
        for facet in facets {
            for v in facet {
                vertex_set.insert(v.as_ref());
            }
        }
        let mut vertices: Vec<&str> = vertex_set.into_iter().collect();
        if vertices.iter().all(|v| v.parse::<i64>().is_ok()) {
            vertices.sort_by_key(|v| v.parse::<i64>().unwrap());
        }
        let position: HashMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let compact = vertices.iter().all(|v| v.chars().count() == 1);

        let mut facet_sets: Vec<Vec<usize>> = Vec::with_capacity(facets.len());
        let mut distinct = BTreeSet::new();
        for facet in facets {
            let set: BTreeSet<usize> = facet.iter().map(|v| position[v.as_ref()]).collect();
            let set: Vec<usize> = set.into_iter().collect();
            if !distinct.insert(set.clone()) {
                return Err(LatticeError::DuplicateFacet(
                    set.iter().map(|&i| vertices[i].to_string()).collect(),
                ));
            }
            facet_sets.push(set);
        }
        let size = facet_sets[0].len();
        if size == 0 {
            return Err(LatticeError::EmptyInput);
        }
        if facet_sets.iter().any(|f| f.len() != size) {
            return Err(LatticeError::MixedDimensions);
        }
        let dim = size as isize - 1;

        let name = |face: &[usize]| -> String {
            if face.is_empty() {
                return BOTTOM_ID.to_string();
            }
            let tokens: Vec<&str> = face.iter().map(|&i| vertices[i]).collect();
            if compact {
                tokens.concat()
            } else {
                tokens.join("-")
            }
        };

        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for facet in &facet_sets {
            for mask in 0u64..(1u64 << facet.len()) {
                let face: Vec<usize> = facet
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                faces.insert(face);
            }
        }

        let mut elements: Vec<(String, usize)> =
            faces.iter().map(|f| (name(f), f.len())).collect();
        elements.push((TOP_ID.to_string(), size + 1));
        let mut covers: Vec<(String, String)> = Vec::new();
        for face in &faces {
            let upper = name(face);
            for skip in 0..face.len() {
                let mut lo = face.clone();
                lo.remove(skip);
                covers.push((name(&lo), upper.clone()));
            }
        }
        for facet in &facet_sets {
            covers.push((name(facet), TOP_ID.to_string()));
        }
        FaceLattice::build(&elements, &covers, dim)
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    /// Rank of the top element, `d + 2`.
    pub fn rank(&self) -> usize {
        (self.dim + 2) as usize
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn bottom(&self) -> Face {
        Face(0)
    }

    pub fn top(&self) -> Face {
        Face(self.ids.len() - 1)
    }

    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.ids.len()).map(Face)
    }

    pub fn face(&self, id: &str) -> Option<Face> {
        self.index.get(id).copied().map(Face)
    }

    pub fn face_or_err(&self, id: &str) -> Result<Face, LatticeError> {
        self.face(id).ok_or_else(|| LatticeError::UnknownFace(id.to_string()))
    }

    pub fn id(&self, face: Face) -> &str {
        &self.ids[face.0]
    }

    pub fn rank_of(&self, face: Face) -> usize {
        self.ranks[face.0]
    }

    /// Dimension of a face: its rank minus one.
    pub fn dim_of(&self, face: Face) -> isize {
        self.ranks[face.0] as isize - 1
    }

    pub fn lower_covers(&self, face: Face) -> impl Iterator<Item = Face> + '_ {
        self.lower[face.0].iter().copied().map(Face)
    }

    pub fn upper_covers(&self, face: Face) -> impl Iterator<Item = Face> + '_ {
        self.upper[face.0].iter().copied().map(Face)
    }

    pub fn of_rank(&self, rank: usize) -> impl Iterator<Item = Face> + '_ {
        self.by_rank
            .get(rank)
            .into_iter()
            .flatten()
            .copied()
            .map(Face)
    }

    /// Faces of dimension `k`.
    pub fn of_dim(&self, k: isize) -> impl Iterator<Item = Face> + '_ {
        let rank = if k < -1 { usize::MAX } else { (k + 1) as usize };
        self.of_rank(rank)
    }

    /// The `d`-faces, in id order.
    pub fn facets(&self) -> Vec<Face> {
        self.lower_covers(self.top()).collect()
    }

    /// Down-set of `face`, including `face` itself.
    pub fn down_set(&self, face: Face) -> &FixedBitSet {
        &self.below[face.0]
    }

    /// Up-set of `face`, including `face` itself.
    pub fn up_set(&self, face: Face) -> &FixedBitSet {
        &self.above[face.0]
    }

    pub fn leq(&self, a: Face, b: Face) -> bool {
        self.below[b.0].contains(a.0)
    }

    /// Vertex ids below `face`.
    pub fn vertices_of(&self, face: Face) -> Vec<&str> {
        self.of_rank(1)
            .filter(|&v| self.leq(v, face))
            .map(|v| self.id(v))
            .collect()
    }

    pub fn meet(&self, a: Face, b: Face) -> Option<Face> {
        let mut common = self.below[a.0].clone();
        common.intersect_with(&self.below[b.0]);
        unique_extreme(&common, |m| &self.below[m], |i| self.ranks[i], true)
    }

    pub fn join(&self, a: Face, b: Face) -> Option<Face> {
        let mut common = self.above[a.0].clone();
        common.intersect_with(&self.above[b.0]);
        unique_extreme(&common, |m| &self.above[m], |i| self.ranks[i], false)
    }

    /// Whether every pair of elements has a unique meet and join.
    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (a + 1..n).all(|b| self.meet(Face(a), Face(b)).is_some() && self.join(Face(a), Face(b)).is_some())
        })
    }

    /// A lattice in which every length-two interval has exactly four elements.
    pub fn is_diamond(&self) -> bool {
        self.has_diamond_intervals() && self.is_lattice()
    }

    fn has_diamond_intervals(&self) -> bool {
        for x in 0..self.len() {
            let mut twos: BTreeSet<usize> = BTreeSet::new();
            for &y in &self.upper[x] {
                twos.extend(self.upper[y].iter().copied());
            }
            for z in twos {
                let middle = self.upper[x]
                    .iter()
                    .filter(|&&y| self.lower[z].contains(&y))
                    .count();
                if middle != 2 {
                    return false;
                }
            }
        }
        true
    }

    /// Number of elements in the closed interval `[x, z]`.
    pub fn interval_size(&self, x: Face, z: Face) -> usize {
        let mut set = self.above[x.0].clone();
        set.intersect_with(&self.below[z.0]);
        set.count_ones(..)
    }

    /// Order dual: covers reversed and ranks complemented. Ids are unchanged.
    pub fn dualize(&self) -> FaceLattice {
        let top = self.rank();
        let elements: Vec<(&str, usize)> = self
            .ids
            .iter()
            .zip(&self.ranks)
            .map(|(id, &r)| (id.as_str(), top - r))
            .collect();
        let covers: Vec<(&str, &str)> = (0..self.len())
            .flat_map(|hi| {
                self.lower[hi]
                    .iter()
                    .map(move |&lo| (self.ids[hi].as_str(), self.ids[lo].as_str()))
            })
            .collect();
        FaceLattice::build(&elements, &covers, self.dim).expect("dual of a valid lattice is valid")
    }

    /// Lattice of `∂face`: the faces strictly below `face` under a fresh top,
    /// which reuses this lattice's top id.
    pub fn sub_lattice(&self, face: Face) -> Result<FaceLattice, LatticeError> {
        let rank = self.rank_of(face);
        if rank == 0 || face == self.top() {
            return Err(LatticeError::InvalidFace(self.id(face).to_string()));
        }
        let top_id = self.id(self.top());
        let mut elements: Vec<(&str, usize)> = self.below[face.0]
            .ones()
            .filter(|&i| i != face.0)
            .map(|i| (self.ids[i].as_str(), self.ranks[i]))
            .collect();
        elements.push((top_id, rank));
        let mut covers: Vec<(&str, &str)> = Vec::new();
        for hi in self.below[face.0].ones().filter(|&i| i != face.0) {
            for &lo in &self.lower[hi] {
                covers.push((self.ids[lo].as_str(), self.ids[hi].as_str()));
            }
        }
        for lo in self.lower_covers(face) {
            covers.push((self.id(lo), top_id));
        }
        FaceLattice::build(&elements, &covers, rank as isize - 2)
    }

    /// Counts the rank-`s` elements of `[g, 1^]`.
    ///
    /// The floor is `C(R - r, R - s)` where `R` is the rank of the top and `r`
    /// the rank of `g`; diamond lattices always meet it.
    pub fn upper_interval_count(&self, g: Face, s: usize) -> Result<IntervalCount, LatticeError> {
        let r = self.rank_of(g);
        let big = self.rank();
        if s < r || s + 1 > big {
            return Err(LatticeError::RankOutOfRange {
                rank: s,
                low: r,
                high: big.saturating_sub(1),
            });
        }
        let count = self.by_rank[s]
            .iter()
            .filter(|&&x| self.above[g.0].contains(x))
            .count() as u64;
        let bound = binomial((big - r) as u64, (big - s) as u64);
        Ok(IntervalCount {
            count,
            bound,
            meets_bound: count >= bound,
        })
    }

    /// Least-id atom not below the coatom `coatom`.
    pub fn atom_avoiding_coatom(&self, coatom: Face) -> Result<Face, LatticeError> {
        self.atom_avoiding_in_interval(self.bottom(), coatom)
    }

    /// Least-id atom of `[base, 1^]` that is not below `coatom`.
    ///
    /// `coatom` must be a coatom of the whole lattice lying above `base`, and
    /// the interval must have rank at least two.
    pub fn atom_avoiding_in_interval(&self, base: Face, coatom: Face) -> Result<Face, LatticeError> {
        let is_coatom = self.upper[coatom.0] == [self.top().0];
        if !is_coatom || !self.leq(base, coatom) || base == coatom {
            return Err(LatticeError::InvalidFace(self.id(coatom).to_string()));
        }
        self.upper_covers(base)
            .find(|&a| !self.leq(a, coatom))
            .ok_or_else(|| LatticeError::NoSuchAtom(self.id(coatom).to_string()))
    }

    /// The whole complex as a subcomplex: every element except the top.
    pub fn full_complex(&self) -> Subcomplex<'_> {
        let mut members = FixedBitSet::with_capacity(self.len());
        members.insert_range(..self.len() - 1);
        Subcomplex { lattice: self, members }
    }

    pub fn f_vector(&self) -> FVector {
        self.full_complex().f_vector()
    }

    pub fn is_pure(&self) -> bool {
        self.full_complex().is_pure()
    }

    pub fn is_pseudomanifold(&self) -> bool {
        self.full_complex().is_pseudomanifold()
    }

    pub fn boundary_complex(&self) -> Result<Subcomplex<'_>, LatticeError> {
        self.full_complex().boundary()
    }

    pub fn interior(&self) -> Result<FaceSet<'_>, LatticeError> {
        self.full_complex().interior()
    }

    /// Builds a face set from ids. `0^` and `1^` are rejected.
    pub fn face_set<S: AsRef<str>>(&self, ids: &[S]) -> Result<FaceSet<'_>, LatticeError> {
        let mut members = FixedBitSet::with_capacity(self.len());
        for id in ids {
            let face = self.face_or_err(id.as_ref())?;
            if face == self.bottom() || face == self.top() {
                return Err(LatticeError::InvalidFace(id.as_ref().to_string()));
            }
            members.insert(face.0);
        }
        Ok(FaceSet { lattice: self, members })
    }

    /// Smallest subcomplex containing every face of `set`.
    pub fn closure(&self, set: &FaceSet<'_>) -> Subcomplex<'_> {
        self.closure_of(set.iter())
    }

    /// Smallest subcomplex containing the given faces (the top is ignored).
    pub fn closure_of<I: IntoIterator<Item = Face>>(&self, faces: I) -> Subcomplex<'_> {
        let mut members = FixedBitSet::with_capacity(self.len());
        for face in faces {
            if face != self.top() {
                members.union_with(&self.below[face.0]);
            }
        }
        Subcomplex { lattice: self, members }
    }

    /// Subcomplex from a raw membership bitset; the caller guarantees it is
    /// downward closed.
    pub(crate) fn subcomplex_from_bits(&self, members: FixedBitSet) -> Subcomplex<'_> {
        debug_assert!(members.ones().all(|i| self.below[i].is_subset(&members)));
        Subcomplex { lattice: self, members }
    }

    /// Isomorphism-invariant fingerprint of the Hasse diagram, computed by
    /// colour refinement over covers. Isomorphic lattices hash equal.
    pub fn invariant_hash(&self) -> u64 {
        let n = self.len();
        let mut colour: Vec<u64> = self.ranks.iter().map(|&r| r as u64).collect();
        for _ in 0..=self.rank() + 1 {
            let next: Vec<u64> = (0..n)
                .map(|i| {
                    let mut lo: Vec<u64> = self.lower[i].iter().map(|&j| colour[j]).collect();
                    let mut hi: Vec<u64> = self.upper[i].iter().map(|&j| colour[j]).collect();
                    lo.sort_unstable();
                    hi.sort_unstable();
                    let mut h = DefaultHasher::new();
                    (colour[i], lo, hi).hash(&mut h);
                    h.finish()
                })
                .collect();
            colour = next;
        }
        colour.sort_unstable();
        let mut h = DefaultHasher::new();
        colour.hash(&mut h);
        h.finish()
    }

    /// Cover pairs as `(lower, upper)` ids, in frozen order.
    pub fn cover_pairs(&self) -> Vec<(&str, &str)> {
        (0..self.len())
            .flat_map(|lo| {
                self.upper[lo]
                    .iter()
                    .map(move |&hi| (self.ids[lo].as_str(), self.ids[hi].as_str()))
            })
            .collect()
    }
}

fn unique_extreme<'b>(
    common: &FixedBitSet,
    cone: impl Fn(usize) -> &'b FixedBitSet,
    rank: impl Fn(usize) -> usize,
    want_max: bool,
) -> Option<Face> {
    let pick = if want_max {
        common.ones().max_by_key(|&i| rank(i))
    } else {
        common.ones().min_by_key(|&i| rank(i))
    }?;
    // `common` is an order ideal (or filter), so it has a unique extreme
    // element exactly when it equals that element's cone.
    (cone(pick) == common).then_some(Face(pick))
}

/// A downward-closed set of faces: a subcomplex of the lattice's complex.
#[derive(Clone, Debug)]
pub struct Subcomplex<'a> {
    lattice: &'a FaceLattice,
    members: FixedBitSet,
}

impl PartialEq for Subcomplex<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.lattice, other.lattice) && self.members == other.members
    }
}

impl Eq for Subcomplex<'_> {}

impl<'a> Subcomplex<'a> {
    pub fn lattice(&self) -> &'a FaceLattice {
        self.lattice
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn contains(&self, face: Face) -> bool {
        self.members.contains(face.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Face> + '_ {
        self.members.ones().map(Face)
    }

    pub fn ids(&self) -> Vec<&'a str> {
        let lattice = self.lattice;
        self.members.ones().map(|i| lattice.ids[i].as_str()).collect()
    }

    /// True when there are no members at all, not even the empty face.
    pub fn is_void(&self) -> bool {
        self.members.is_clear()
    }

    /// True when the subcomplex has no nonempty face.
    pub fn is_empty(&self) -> bool {
        self.members.ones().all(|i| i == 0)
    }

    /// Largest face dimension present, or -1 if there is none.
    pub fn dim(&self) -> isize {
        self.members
            .ones()
            .map(|i| self.lattice.ranks[i] as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    /// Faces of dimension `k` in this subcomplex.
    pub fn of_dim(&self, k: isize) -> Vec<Face> {
        self.lattice.of_dim(k).filter(|&f| self.contains(f)).collect()
    }

    /// Maximal-dimensional faces.
    pub fn facets(&self) -> Vec<Face> {
        self.of_dim(self.dim())
    }

    pub fn is_subset(&self, other: &Subcomplex<'_>) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &Subcomplex<'a>) -> Subcomplex<'a> {
        let mut members = self.members.clone();
        members.union_with(&other.members);
        Subcomplex { lattice: self.lattice, members }
    }

    pub fn intersection(&self, other: &Subcomplex<'a>) -> Subcomplex<'a> {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Subcomplex { lattice: self.lattice, members }
    }

    pub fn f_vector(&self) -> FVector {
        count_by_rank(self.lattice, &self.members)
    }

    /// Every face lies below a face of top dimension.
    pub fn is_pure(&self) -> bool {
        let mut reach = FixedBitSet::with_capacity(self.lattice.len());
        for f in self.facets() {
            reach.union_with(&self.lattice.below[f.0]);
        }
        self.members.is_subset(&reach)
    }

    pub fn is_pseudomanifold(&self) -> bool {
        if !self.is_pure() {
            return false;
        }
        let d = self.dim();
        self.of_dim(d - 1)
            .into_iter()
            .all(|ridge| self.cofacet_count(ridge) <= 2)
    }

    fn cofacet_count(&self, face: Face) -> usize {
        self.lattice.upper[face.0]
            .iter()
            .filter(|&&u| self.members.contains(u))
            .count()
    }

    /// Closure of the codimension-one faces lying in exactly one facet.
    pub fn boundary(&self) -> Result<Subcomplex<'a>, LatticeError> {
        if !self.is_pseudomanifold() {
            return Err(LatticeError::NotPseudomanifold);
        }
        let d = self.dim();
        let free: Vec<Face> = self
            .of_dim(d - 1)
            .into_iter()
            .filter(|&r| self.cofacet_count(r) == 1)
            .collect();
        Ok(self.lattice.closure_of(free))
    }

    /// Nonempty faces not in the boundary.
    pub fn interior(&self) -> Result<FaceSet<'a>, LatticeError> {
        let boundary = self.boundary()?;
        let mut members = self.members.clone();
        members.difference_with(&boundary.members);
        members.set(0, false);
        Ok(FaceSet {
            lattice: self.lattice,
            members,
        })
    }

    /// Members as a face set, dropping the empty face.
    pub fn to_face_set(&self) -> FaceSet<'a> {
        let mut members = self.members.clone();
        members.set(0, false);
        FaceSet {
            lattice: self.lattice,
            members,
        }
    }
}

/// An arbitrary set of nonempty proper faces, such as an interior.
#[derive(Clone, Debug)]
pub struct FaceSet<'a> {
    lattice: &'a FaceLattice,
    members: FixedBitSet,
}

impl PartialEq for FaceSet<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.lattice, other.lattice) && self.members == other.members
    }
}

impl Eq for FaceSet<'_> {}

impl<'a> FaceSet<'a> {
    pub fn empty(lattice: &'a FaceLattice) -> Self {
        FaceSet {
            lattice,
            members: FixedBitSet::with_capacity(lattice.len()),
        }
    }

    pub fn lattice(&self) -> &'a FaceLattice {
        self.lattice
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn contains(&self, face: Face) -> bool {
        self.members.contains(face.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Face> + '_ {
        self.members.ones().map(Face)
    }

    pub fn ids(&self) -> Vec<&'a str> {
        let lattice = self.lattice;
        self.members.ones().map(|i| lattice.ids[i].as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn is_subset(&self, other: &FaceSet<'_>) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_disjoint(&self, other: &FaceSet<'_>) -> bool {
        self.members.is_disjoint(&other.members)
    }

    /// Face counts per dimension; no closure is taken.
    pub fn f_vector(&self) -> FVector {
        count_by_rank(self.lattice, &self.members)
    }

    /// `f_k` of this set.
    pub fn count_dim(&self, k: isize) -> u64 {
        self.f_vector().get(k)
    }
}

fn count_by_rank(lattice: &FaceLattice, members: &FixedBitSet) -> FVector {
    let d = lattice.dim;
    let mut counts = vec![0u64; (d + 2) as usize];
    for i in members.ones() {
        let r = lattice.ranks[i];
        if r < counts.len() {
            counts[r] += 1;
        }
    }
    FVector::new(d, counts)
}
