//! Chromatic numbers of complexes and the weak-cone / weak-suspension
//! structure of Bier spheres.

mod classify;
pub mod exact;

use std::collections::BTreeMap;

use serde::Serialize;

pub use classify::{
    closure_size, min_colorable_classifier, recognize_min_chromatic_type, replay_witness,
    BuildStep, ChromaticType, MinChromaticKind, MinColorable, MinColorableWitness, Seed,
    CLOSURE_CACHE_MAX_M,
};

use crate::bier::{alexander_dual, BierSphere};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// A proper coloring of `sk¹(K)`, surjective onto `0..colors`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub colors: usize,
    pub assignment: BTreeMap<usize, usize>,
}

impl Coloring {
    /// Renumber colors by first appearance in label order, dropping unused ones.
    pub fn from_assignment(assignment: BTreeMap<usize, usize>) -> Self {
        let mut renumber = BTreeMap::new();
        let assignment: BTreeMap<usize, usize> = assignment
            .into_iter()
            .map(|(v, c)| {
                let next = renumber.len();
                (v, *renumber.entry(c).or_insert(next))
            })
            .collect();
        Coloring {
            colors: renumber.len(),
            assignment,
        }
    }

    /// Surjective, covers exactly `V(g)`, and no edge is monochromatic.
    pub fn is_proper(&self, g: &Graph) -> bool {
        let covered: VertexSet = self.assignment.keys().copied().collect();
        if covered != g.vertices() {
            return false;
        }
        let used: std::collections::BTreeSet<usize> = self.assignment.values().copied().collect();
        if used.len() != self.colors || used.iter().any(|&c| c >= self.colors) {
            return false;
        }
        g.vertices().iter().all(|v| {
            g.neighbors(v)
                .iter()
                .all(|w| self.assignment[&v] != self.assignment[&w])
        })
    }
}

/// `χ(K) = χ(sk¹(K))` with an optimal coloring.
pub fn chromatic_number(k: &SimplicialComplex) -> Result<(usize, Coloring)> {
    if k.vertices().is_empty() {
        return Err(Error::NoVertices);
    }
    Ok(chromatic_number_of_graph(&Graph::skeleton_of(k)))
}

pub fn chromatic_number_of_graph(g: &Graph) -> (usize, Coloring) {
    let (chi, raw) = exact::color_exact(g);
    let assignment = g
        .vertices()
        .iter()
        .map(|v| (v, raw[v].expect("every vertex colored")))
        .collect();
    let coloring = Coloring::from_assignment(assignment);
    debug_assert_eq!(coloring.colors, chi);
    (chi, coloring)
}

/// `χ` with the convention `χ({∅}) = 0`.
fn chi_or_zero(k: &SimplicialComplex) -> usize {
    chromatic_number(k).map_or(0, |(c, _)| c)
}

/// `max(m-1, χ(K), χ(K^∨)) <= χ(Bier(K)) <= m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiBounds {
    pub lower: usize,
    pub upper: usize,
    pub chi_k: usize,
    pub chi_dual: usize,
    /// The coloring `i, i' -> c_i` of `Bier(K)`.
    pub upper_witness: Coloring,
}

pub fn chi_bier_bounds(k: &SimplicialComplex) -> Result<ChiBounds> {
    let m = k.m();
    let b = crate::bier::bier(k)?;
    let chi_k = chi_or_zero(k);
    let chi_dual = chi_or_zero(b.dual());
    let assignment = b
        .complex()
        .vertices()
        .iter()
        .map(|v| (v, b.unprime(v) - 1))
        .collect();
    Ok(ChiBounds {
        lower: (m - 1).max(chi_k).max(chi_dual),
        upper: m,
        chi_k,
        chi_dual,
        upper_witness: Coloring::from_assignment(assignment),
    })
}

/// Geometric vertices adjacent in `sk¹(K)` to every other geometric vertex.
pub fn weak_cone_apexes(k: &SimplicialComplex) -> VertexSet {
    let g = Graph::skeleton_of(k);
    let v = g.vertices();
    v.iter()
        .filter(|&a| g.neighbors(a) == v.without(a))
        .collect()
}

/// Vertices contained in every facet.
pub fn cone_apexes(k: &SimplicialComplex) -> VertexSet {
    k.cone_apexes()
}

/// Pairs `{a, b}` with `link(a) = V ∖ {a, b} = link(b)` in `sk¹(K)`.
pub fn weak_suspension_pairs(k: &SimplicialComplex) -> Vec<(usize, usize)> {
    let g = Graph::skeleton_of(k);
    let v = g.vertices();
    let mut out = Vec::new();
    for a in v {
        for b in v.iter().filter(|&b| b > a) {
            let rest = v.without(a).without(b);
            if g.neighbors(a) == rest && g.neighbors(b) == rest {
                out.push((a, b));
            }
        }
    }
    out
}

/// Is `K = ∂Δ_{a,b} ∗ K_{V∖{a,b}}`? Compares facet sets exactly.
pub fn is_suspension_with_pair(k: &SimplicialComplex, a: usize, b: usize) -> bool {
    let mut with_a = Vec::new();
    let mut with_b = Vec::new();
    for f in k.facets() {
        match (f.contains(a), f.contains(b)) {
            (true, false) => with_a.push(f.without(a)),
            (false, true) => with_b.push(f.without(b)),
            _ => return false,
        }
    }
    with_a.sort_by(VertexSet::cmp_graded);
    with_b.sort_by(VertexSet::cmp_graded);
    with_a == with_b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SuspensionKind {
    NotWeakSuspension,
    WeakSuspensionOnly,
    Suspension,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuspensionStructure {
    pub kind: SuspensionKind,
    /// Every weak-suspension pair of the sphere.
    pub pairs: Vec<(usize, usize)>,
    /// The subset of `pairs` along which the sphere is an honest suspension.
    pub suspension_pairs: Vec<(usize, usize)>,
}

pub fn suspension_structure(b: &BierSphere) -> SuspensionStructure {
    let s = b.complex();
    let pairs = weak_suspension_pairs(s);
    let suspension_pairs: Vec<_> = pairs
        .iter()
        .copied()
        .filter(|&(x, y)| is_suspension_with_pair(s, x, y))
        .collect();
    let kind = if !suspension_pairs.is_empty() {
        SuspensionKind::Suspension
    } else if !pairs.is_empty() {
        SuspensionKind::WeakSuspensionOnly
    } else {
        SuspensionKind::NotWeakSuspension
    };
    SuspensionStructure {
        kind,
        pairs,
        suspension_pairs,
    }
}

/// Discrepancies between the suspension structure of `Bier(K)` and the
/// structure of `K`, `K^∨`: every pair is `{i, i'}`; `{i, i'}` is a pair iff `i`
/// is a weak-cone apex of both `K` and `K^∨`; it is a suspension pair iff `i`
/// is a cone apex of `K`, iff it is one of `K^∨`.
///
/// The `{i, i'}` shape is only enforced when neither `K` nor `K^∨` has ghost
/// vertices. Otherwise it can fail: for `K = {3, 4}` on `[4]` the sphere is an
/// octahedron with `{1', 2'}` among its antipodal pairs, and `K = {3}` on `[3]`
/// gives a square whose diagonal `{1', 2'}` is a pair.
pub fn suspension_cross_check(b: &BierSphere) -> Vec<String> {
    let st = suspension_structure(b);
    let m = b.m();
    let mut problems = Vec::new();
    let ghost_free = b.base().ghosts().is_empty() && b.dual().ghosts().is_empty();
    for &(x, y) in &st.pairs {
        if ghost_free && !(x <= m && y == x + m) {
            problems.push(format!(
                "weak-suspension pair ({x},{y}) is not of the form {{i,i'}}"
            ));
        }
    }
    let wk = weak_cone_apexes(b.base());
    let wd = weak_cone_apexes(b.dual());
    let ck = b.base().cone_apexes();
    let cd = b.dual().cone_apexes();
    for i in 1..=m {
        let pair = (i, i + m);
        let is_pair = st.pairs.contains(&pair);
        let by_cones = wk.contains(i) && wd.contains(i);
        if is_pair != by_cones {
            problems.push(format!(
                "pair {{{i},{i}'}}: weak suspension {is_pair}, weak cone apex in K and K^∨ {by_cones}"
            ));
        }
        let is_susp = st.suspension_pairs.contains(&pair);
        if is_susp != ck.contains(i) || ck.contains(i) != cd.contains(i) {
            problems.push(format!(
                "pair {{{i},{i}'}}: suspension {is_susp}, cone apex of K {}, of K^∨ {}",
                ck.contains(i),
                cd.contains(i)
            ));
        }
    }
    problems
}

/// `χ(K^∨)`, for callers that only hold `K`.
pub fn dual_chromatic_number(k: &SimplicialComplex) -> Result<usize> {
    Ok(chi_or_zero(&alexander_dual(k)?))
}
