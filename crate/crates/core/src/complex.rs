//! Simplicial complexes on a labeled ground set, stored by facets.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// A downward-closed family of subsets of `ground`, stored as its facets.
///
/// Facets are kept as a sorted antichain (see [`VertexSet::cmp_graded`]), so two
/// complexes are equal exactly when they have the same ground set and face set.
/// The complex `{∅}` has the single facet `∅`; the empty family is not a complex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    ground: VertexSet,
    facets: Vec<VertexSet>,
}

/// Face counts `f_{-1}, f_0, ..., f_{m-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FVector {
    counts: Vec<u64>,
}

impl FVector {
    /// Number of faces of dimension `i` (`i >= -1`); zero beyond the stored range.
    pub fn get(&self, i: isize) -> u64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|idx| self.counts.get(idx).copied())
            .unwrap_or(0)
    }

    /// The tuple `(f_{-1}, ..., f_{m-1})`.
    pub fn as_slice(&self) -> &[u64] {
        &self.counts
    }

    /// `(f_{-1}, ..., f_{dim})`, without the trailing zeros.
    pub fn trimmed(&self) -> &[u64] {
        &self.counts[..(self.dim() + 2) as usize]
    }

    pub fn dim(&self) -> isize {
        self.counts
            .iter()
            .rposition(|&c| c > 0)
            .map_or(-2, |i| i as isize - 1)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `sum_{i >= 0} (-1)^i f_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .skip(1)
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

fn normalize(mut family: Vec<VertexSet>) -> (Vec<VertexSet>, Vec<VertexSet>) {
    family.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp_lex(b)));
    family.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(family.len());
    let mut dropped = Vec::new();
    for s in family {
        if kept.iter().any(|k| s.is_subset(*k)) {
            dropped.push(s);
        } else {
            kept.push(s);
        }
    }
    kept.sort_by(VertexSet::cmp_graded);
    (kept, dropped)
}

impl SimplicialComplex {
    /// Build from any generating family; dominated sets are dropped.
    pub fn new(ground: VertexSet, generators: Vec<VertexSet>) -> Result<Self> {
        Self::new_reporting(ground, generators).map(|(k, _)| k)
    }

    /// Like [`Self::new`], also returning the generators that were not facets.
    pub fn new_reporting(
        ground: VertexSet,
        generators: Vec<VertexSet>,
    ) -> Result<(Self, Vec<VertexSet>)> {
        if generators.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if let Some(&facet) = generators.iter().find(|f| !f.is_subset(ground)) {
            return Err(Error::FacetOutsideGround { facet, ground });
        }
        let (facets, dropped) = normalize(generators);
        Ok((SimplicialComplex { ground, facets }, dropped))
    }

    /// Complex on `[m]` generated by the given label lists.
    pub fn on_range<I, F>(m: usize, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = usize>,
    {
        if m > crate::vertex_set::MAX_LABEL {
            return Err(Error::BadGroundSize(m));
        }
        let gens: Vec<VertexSet> = generators.into_iter().map(VertexSet::from_labels).collect();
        Self::new(VertexSet::range(m), gens)
    }

    /// The complex `{∅}`: every element of `ground` is a ghost vertex.
    pub fn void(ground: VertexSet) -> Self {
        SimplicialComplex {
            ground,
            facets: vec![VertexSet::EMPTY],
        }
    }

    /// The full simplex on `face`, with ambient ground set `ground`.
    pub fn simplex(ground: VertexSet, face: VertexSet) -> Result<Self> {
        Self::new(ground, vec![face])
    }

    /// The boundary of the simplex on `ground`.
    pub fn simplex_boundary(ground: VertexSet) -> Self {
        if ground.is_empty() {
            // ∂Δ_∅ would be the empty family; the nearest complex is {∅}.
            return Self::void(ground);
        }
        let facets = ground.iter().map(|v| ground.without(v)).collect();
        Self::new(ground, facets).expect("boundary facets lie in the ground set")
    }

    /// The complex whose minimal non-faces are exactly `mnf` (or a subfamily's
    /// minimal elements). The full power set is returned when `mnf` is empty.
    pub fn from_minimal_non_faces(ground: VertexSet, mnf: &[VertexSet]) -> Result<Self> {
        if ground.len() > 20 {
            return Err(Error::Unsupported(format!(
                "from_minimal_non_faces on {} labels",
                ground.len()
            )));
        }
        let faces: Vec<VertexSet> = ground
            .subsets()
            .filter(|s| !mnf.iter().any(|n| n.is_subset(*s)))
            .collect();
        Self::new(ground, faces)
    }

    pub fn ground(&self) -> VertexSet {
        self.ground
    }

    /// Size of the ground set.
    pub fn m(&self) -> usize {
        self.ground.len()
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Geometric vertices: the union of all facets.
    pub fn vertices(&self) -> VertexSet {
        self.facets
            .iter()
            .fold(VertexSet::EMPTY, |acc, f| acc.union(*f))
    }

    pub fn ghosts(&self) -> VertexSet {
        self.ground.difference(self.vertices())
    }

    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(0) as isize - 1
    }

    pub fn is_pure(&self) -> bool {
        let d = self.facets[0].len();
        self.facets.iter().all(|f| f.len() == d)
    }

    pub fn is_void(&self) -> bool {
        self.facets == [VertexSet::EMPTY]
    }

    /// Is this the full simplex on its ground set?
    pub fn is_full_simplex(&self) -> bool {
        self.facets == [self.ground]
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        self.facets.iter().any(|f| s.is_subset(*f))
    }

    pub fn face_set(&self) -> HashSet<VertexSet> {
        let mut out = HashSet::new();
        for f in &self.facets {
            for s in f.subsets() {
                out.insert(s);
            }
        }
        out
    }

    /// All faces, sorted by cardinality then lexicographically; includes `∅`.
    pub fn faces(&self) -> Vec<VertexSet> {
        let mut v: Vec<_> = self.face_set().into_iter().collect();
        v.sort_by(VertexSet::cmp_graded);
        v
    }

    pub fn minimal_non_faces(&self) -> Vec<VertexSet> {
        let faces = self.face_set();
        let mut out = HashSet::new();
        for &f in &faces {
            for v in self.ground.difference(f) {
                let s = f.with(v);
                if !faces.contains(&s) && s.iter().all(|u| faces.contains(&s.without(u))) {
                    out.insert(s);
                }
            }
        }
        let mut v: Vec<_> = out.into_iter().collect();
        v.sort_by(VertexSet::cmp_graded);
        v
    }

    pub fn f_vector(&self) -> FVector {
        let mut counts = vec![0u64; self.ground.len() + 1];
        for s in self.face_set() {
            counts[s.len()] += 1;
        }
        FVector { counts }
    }

    /// Edges of the 1-skeleton.
    pub fn edges(&self) -> Vec<VertexSet> {
        let mut set = HashSet::new();
        for f in &self.facets {
            let labels = f.to_vec();
            for (i, &a) in labels.iter().enumerate() {
                for &b in &labels[i + 1..] {
                    set.insert(VertexSet::from_labels([a, b]));
                }
            }
        }
        let mut v: Vec<_> = set.into_iter().collect();
        v.sort_by(VertexSet::cmp_graded);
        v
    }

    /// `K_I = {J ∈ K : J ⊆ I}`, keeping the ambient ground set.
    pub fn full_subcomplex(&self, subset: VertexSet) -> Self {
        let gens: Vec<_> = self.facets.iter().map(|f| f.intersection(subset)).collect();
        Self::new(self.ground, gens).expect("restriction keeps facets in the ground set")
    }

    pub fn deletion(&self, v: usize) -> Self {
        self.full_subcomplex(self.ground.without(v))
    }

    pub fn link(&self, face: VertexSet) -> Result<Self> {
        let gens: Vec<_> = self
            .facets
            .iter()
            .filter(|f| face.is_subset(**f))
            .map(|f| f.difference(face))
            .collect();
        if gens.is_empty() {
            return Err(Error::LinkOfNonFace { face });
        }
        Self::new(self.ground, gens)
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        if !self.ground.is_disjoint(other.ground) {
            return Err(Error::OverlappingGroundSets(self.ground, other.ground));
        }
        let gens = self
            .facets
            .iter()
            .flat_map(|a| other.facets.iter().map(move |b| a.union(*b)))
            .collect();
        Self::new(self.ground.union(other.ground), gens)
    }

    pub fn cone(&self, apex: usize) -> Result<Self> {
        if self.ground.contains(apex) {
            return Err(Error::LabelNotFresh(apex));
        }
        let point = VertexSet::singleton(apex);
        self.join(&Self::simplex(point, point)?)
    }

    pub fn suspension(&self, v: usize, w: usize) -> Result<Self> {
        for x in [v, w] {
            if self.ground.contains(x) {
                return Err(Error::LabelNotFresh(x));
            }
        }
        if v == w {
            return Err(Error::LabelNotFresh(w));
        }
        let pair = Self::new(
            VertexSet::from_labels([v, w]),
            vec![VertexSet::singleton(v), VertexSet::singleton(w)],
        )?;
        self.join(&pair)
    }

    /// The `n`-skeleton; its ground set is `V(K)`, so it has no ghost vertices.
    pub fn skeleton(&self, n: usize) -> Self {
        let mut gens = HashSet::new();
        for f in &self.facets {
            if f.len() <= n + 1 {
                gens.insert(*f);
            } else {
                for s in f.subsets().filter(|s| s.len() == n + 1) {
                    gens.insert(s);
                }
            }
        }
        Self::new(self.vertices(), gens.into_iter().collect()).expect("skeleton faces lie in V(K)")
    }

    /// Same faces, different ambient ground set (must contain all vertices).
    pub fn with_ground(&self, ground: VertexSet) -> Result<Self> {
        Self::new(ground, self.facets.clone())
    }

    /// Apply an injective label map to the ground set and every facet.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Result<Self> {
        let ground = self.ground.map(&f);
        if ground.len() != self.ground.len() {
            return Err(Error::Unsupported("non-injective relabeling".into()));
        }
        Self::new(ground, self.facets.iter().map(|s| s.map(&f)).collect())
    }

    /// Relabel the ground set order-preservingly onto `{1..m}`.
    ///
    /// Returns the relabeled complex and the old label of each new label
    /// (`old[new - 1]`).
    pub fn compact_labels(&self) -> (Self, Vec<usize>) {
        let old = self.ground.to_vec();
        let index: HashMap<usize, usize> =
            old.iter().enumerate().map(|(i, &v)| (v, i + 1)).collect();
        let k = self
            .relabel(|v| index[&v])
            .expect("order-preserving map is injective");
        (k, old)
    }

    /// Vertices contained in every facet.
    pub fn cone_apexes(&self) -> VertexSet {
        self.facets
            .iter()
            .fold(self.vertices(), |acc, f| acc.intersection(*f))
    }

    pub fn is_cone_with_apex(&self, v: usize) -> bool {
        self.cone_apexes().contains(v)
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(ground={}, facets=[", self.ground)?;
        for (i, s) in self.facets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "])")
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
