//! Chordality of 1-skeleta, the chordal Bier spheres, and their stacked
//! realizations with exact rational coordinates.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::json;

use crate::bier::{bier, BierSphere};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::graph::Graph;
use crate::iso::are_isomorphic;
use crate::vertex_set::{VertexSet, MAX_LABEL};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ChordalWitness {
    /// Perfect elimination ordering: each vertex's later neighbours form a clique.
    EliminationOrder(Vec<usize>),
    /// An induced cycle of length at least 4, in cyclic order.
    InducedCycle(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChordalityReport {
    pub chordal: bool,
    pub witness: ChordalWitness,
}

/// Lexicographic breadth-first search; returns the visit order.
pub fn lex_bfs(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut labels: Vec<Vec<usize>> = vec![Vec::new(); MAX_LABEL + 1];
    let mut left = g.vertices();
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        // Largest label, ties to the smallest vertex.
        let v = left
            .iter()
            .fold(None::<usize>, |best, v| match best {
                Some(b) if labels[b] >= labels[v] => Some(b),
                _ => Some(v),
            })
            .expect("vertices left");
        left = left.without(v);
        order.push(v);
        for w in g.neighbors(v).intersection(left) {
            labels[w].push(n - step);
        }
    }
    order
}

/// Does `order` (first vertex eliminated first) have clique later-neighbourhoods?
pub fn is_perfect_elimination_order(g: &Graph, order: &[usize]) -> bool {
    let mut later = g.vertices();
    order.iter().all(|&v| {
        later = later.without(v);
        g.is_clique(g.neighbors(v).intersection(later))
    })
}

/// Some induced cycle of length `>= 4`, if there is one.
///
/// For a vertex `v` with non-adjacent neighbours `u`, `w`, a shortest `u`-`w`
/// path avoiding the rest of `N[v]` closes an induced cycle through `v`.
pub fn find_induced_cycle(g: &Graph) -> Option<Vec<usize>> {
    for v in g.vertices() {
        let nv = g.neighbors(v);
        for u in nv {
            for w in nv.iter().filter(|&w| w > u && !g.has_edge(u, w)) {
                let allowed = g.vertices().difference(nv.with(v)).with(u).with(w);
                if let Some(path) = g.shortest_path(u, w, allowed) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

pub fn is_chordal_graph(g: &Graph) -> ChordalityReport {
    let mut order = lex_bfs(g);
    order.reverse();
    if is_perfect_elimination_order(g, &order) {
        ChordalityReport {
            chordal: true,
            witness: ChordalWitness::EliminationOrder(order),
        }
    } else {
        let cycle =
            find_induced_cycle(g).expect("a graph without a perfect elimination order has a hole");
        ChordalityReport {
            chordal: false,
            witness: ChordalWitness::InducedCycle(cycle),
        }
    }
}

/// Chordality of `sk¹(K)`.
pub fn is_chordal(k: &SimplicialComplex) -> Result<ChordalityReport> {
    if k.vertices().is_empty() {
        return Err(Error::NoVertices);
    }
    Ok(is_chordal_graph(&Graph::skeleton_of(k)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    K,
    Dual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ChordalBier {
    /// `Bier(K)` is the boundary of `vc^k(Δ^{m-1})`; `side` has no edges.
    Chordal {
        k: usize,
        side: Side,
    },
    NotChordal {
        witness: Vec<usize>,
    },
}

impl ChordalBier {
    pub fn is_chordal(&self) -> bool {
        matches!(self, ChordalBier::Chordal { .. })
    }
}

fn edgeless(k: &SimplicialComplex) -> bool {
    k.facets().iter().all(|f| f.len() <= 1)
}

/// The edgeless side with fewer geometric vertices, ties to `K`.
fn edgeless_side(b: &BierSphere) -> Option<Side> {
    let (ek, ed) = (edgeless(b.base()), edgeless(b.dual()));
    match (ek, ed) {
        (true, true) if b.dual().vertices().len() < b.base().vertices().len() => Some(Side::Dual),
        (true, _) => Some(Side::K),
        (false, true) => Some(Side::Dual),
        (false, false) => None,
    }
}

fn hole(b: &BierSphere) -> Vec<usize> {
    match is_chordal(b.complex())
        .expect("Bier spheres have vertices")
        .witness
    {
        ChordalWitness::InducedCycle(c) => c,
        ChordalWitness::EliminationOrder(_) => Vec::new(),
    }
}

/// Decide whether `Bier(K)` is chordal without looking at its 1-skeleton
/// (the witness for the negative case is taken from it).
pub fn classify_chordal_bier(k: &SimplicialComplex) -> Result<ChordalBier> {
    let b = bier(k)?;
    Ok(classify_sphere(&b))
}

fn classify_sphere(b: &BierSphere) -> ChordalBier {
    let m = b.m();
    let chordal = match m {
        2 => true,
        3 => are_isomorphic(b.complex(), &fixtures::gamma3()).is_some(),
        _ => edgeless(b.base()) || edgeless(b.dual()),
    };
    if !chordal {
        return ChordalBier::NotChordal { witness: hole(b) };
    }
    let side = if m <= 3 {
        edgeless_side(b).unwrap_or(Side::K)
    } else {
        edgeless_side(b).expect("one side is edgeless")
    };
    ChordalBier::Chordal {
        k: b.complex().vertices().len() - m,
        side,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StellarStep {
    pub facet: VertexSet,
    pub apex: usize,
    /// Push-out factor `δ`, printed as `p/q`: the apex sits at
    /// `c_F + δ(c_F - c)`, `c` being the vertex centroid before this step.
    pub delta: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackedRealization {
    pub m: usize,
    pub side: Side,
    /// Coordinates in dimension `m - 1`, keyed by Bier label.
    pub vertices: BTreeMap<usize, Vec<BigRational>>,
    pub facets: Vec<VertexSet>,
    pub steps: Vec<StellarStep>,
}

fn ratio_str(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

impl StackedRealization {
    pub fn dim(&self) -> usize {
        self.m - 1
    }

    pub fn k(&self) -> usize {
        self.steps.len()
    }

    /// Every facet spans a hyperplane with all other vertices strictly on one side.
    pub fn is_convex(&self) -> bool {
        check_convex_position(&self.vertices, &self.facets, self.dim())
    }

    pub fn complex(&self) -> SimplicialComplex {
        let ground = self.vertices.keys().copied().collect();
        SimplicialComplex::new(ground, self.facets.clone()).expect("facets use listed vertices")
    }

    /// `V F`, then `V` coordinate rows, then `F` rows of 0-based vertex indices.
    pub fn to_off(&self) -> String {
        let index: BTreeMap<usize, usize> = self
            .vertices
            .keys()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let mut out = format!("{} {}\n", self.vertices.len(), self.facets.len());
        for coords in self.vertices.values() {
            let row: Vec<String> = coords.iter().map(ratio_str).collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
        for f in &self.facets {
            let row: Vec<String> = f.iter().map(|v| index[&v].to_string()).collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vertices: serde_json::Map<String, serde_json::Value> = self
            .vertices
            .iter()
            .map(|(v, c)| (v.to_string(), c.iter().map(ratio_str).collect()))
            .collect();
        json!({
            "m": self.m,
            "dim": self.dim(),
            "k": self.k(),
            "side": self.side,
            "vertices": vertices,
            "facets": self.facets,
            "steps": self.steps,
        })
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if piv != c {
            a.swap(piv, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let sub = &f * &a[c][k];
                a[r][k] -= sub;
            }
        }
    }
    d
}

/// Sign of `det(v₂ - v₁, …, v_d - v₁, q - v₁)`.
fn orientation(facet: &[&Vec<BigRational>], q: &[BigRational]) -> i8 {
    let base = facet[0];
    let mut rows: Vec<Vec<BigRational>> = facet[1..]
        .iter()
        .map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rows.push(q.iter().zip(base).map(|(a, b)| a - b).collect());
    let d = det(rows);
    if d.is_zero() {
        0
    } else if d.is_positive() {
        1
    } else {
        -1
    }
}

/// Exact test that each listed facet is a supporting hyperplane with every
/// other vertex strictly on one side.
pub fn check_convex_position(
    coords: &BTreeMap<usize, Vec<BigRational>>,
    facets: &[VertexSet],
    dim: usize,
) -> bool {
    facets.iter().all(|f| {
        if f.len() != dim || dim == 0 {
            return false;
        }
        let pts: Vec<&Vec<BigRational>> = f.iter().map(|v| &coords[&v]).collect();
        let mut sign = 0;
        coords
            .iter()
            .filter(|(v, _)| !f.contains(**v))
            .all(|(_, q)| {
                let s = orientation(&pts, q);
                if s == 0 || (sign != 0 && s != sign) {
                    return false;
                }
                sign = s;
                true
            })
    })
}

fn centroid<'a>(pts: impl Iterator<Item = &'a Vec<BigRational>>, dim: usize) -> Vec<BigRational> {
    let mut sum = vec![BigRational::zero(); dim];
    let mut n = 0;
    for p in pts {
        for (s, x) in sum.iter_mut().zip(p) {
            *s += x;
        }
        n += 1;
    }
    sum.into_iter().map(|s| s / rat(n)).collect()
}

/// Halvings tried before giving up on a push-out factor.
const MAX_HALVINGS: usize = 256;

/// Exact realization of a chordal `Bier(K)` as the boundary of a stacked polytope.
///
/// The base simplex sits on the non-edgeless side (standard basis vectors and
/// the origin); each vertex `s` of the edgeless side becomes the apex over the
/// simplex facet opposite the partner of `s`.
pub fn realize_stacked(k: &SimplicialComplex) -> Result<StackedRealization> {
    let b = bier(k)?;
    let ChordalBier::Chordal { side, .. } = classify_sphere(&b) else {
        return Err(Error::NotChordalBier);
    };
    let m = b.m();
    let dim = m - 1;
    let target = b.complex();
    let (base_labels, apexes): (Vec<usize>, Vec<usize>) = if m <= 3 {
        (target.vertices().to_vec(), Vec::new())
    } else {
        match side {
            Side::K => (
                (1..=m).map(|i| b.prime(i)).collect(),
                b.base().vertices().to_vec(),
            ),
            Side::Dual => (
                (1..=m).collect(),
                b.dual().vertices().iter().map(|i| b.prime(i)).collect(),
            ),
        }
    };
    let mut vertices = BTreeMap::new();
    for (i, &v) in base_labels.iter().enumerate() {
        let coords = (0..dim).map(|j| rat(i64::from(i == j))).collect();
        vertices.insert(v, coords);
    }
    let simplex: VertexSet = base_labels.iter().copied().collect();
    let mut facets: Vec<VertexSet> = simplex.iter().map(|v| simplex.without(v)).collect();
    let mut steps = Vec::new();
    for apex in apexes {
        let opposite = if apex > m { apex - m } else { apex + m };
        let facet = simplex.without(opposite);
        let pos = facets
            .iter()
            .position(|f| *f == facet)
            .expect("each simplex facet is subdivided once");
        facets.swap_remove(pos);
        facets.extend(facet.iter().map(|v| facet.without(v).with(apex)));
        let c_facet = centroid(facet.iter().map(|v| &vertices[&v]), dim);
        let c_poly = centroid(vertices.values(), dim);
        let mut delta = rat(1);
        let mut placed = false;
        for _ in 0..MAX_HALVINGS {
            let point = c_facet
                .iter()
                .zip(&c_poly)
                .map(|(cf, cp)| cf + &delta * (cf - cp))
                .collect();
            vertices.insert(apex, point);
            if check_convex_position(&vertices, &facets, dim) {
                placed = true;
                break;
            }
            delta /= rat(2);
        }
        if !placed {
            return Err(Error::RealizationCheck(format!(
                "no push-out factor for apex {apex}"
            )));
        }
        steps.push(StellarStep {
            facet,
            apex,
            delta: ratio_str(&delta),
        });
    }
    facets.sort_by(VertexSet::cmp_graded);
    let real = StackedRealization {
        m,
        side,
        vertices,
        facets,
        steps,
    };
    if !real.is_convex() {
        return Err(Error::RealizationCheck(
            "vertices not in convex position".into(),
        ));
    }
    if real.facets.as_slice() != target.facets() {
        return Err(Error::RealizationCheck("facets differ from Bier(K)".into()));
    }
    Ok(real)
}

/// Boundary of `∂Δ^n` after stellar subdivisions of the scheduled facets.
///
/// The simplex uses labels `1..=n+1`; step `i` (0-based) adds apex `n + 2 + i`.
pub fn truncation_fixture(n: usize, k: usize, schedule: &[VertexSet]) -> Result<SimplicialComplex> {
    if n < 2 || n + 1 + k > MAX_LABEL {
        return Err(Error::BadM(n));
    }
    let simplex = VertexSet::range(n + 1);
    let mut facets: Vec<VertexSet> = simplex.iter().map(|v| simplex.without(v)).collect();
    for step in 0..k {
        let Some(&facet) = schedule.get(step) else {
            return Err(Error::BadSchedule {
                step,
                facet: VertexSet::EMPTY,
            });
        };
        let Some(pos) = facets.iter().position(|f| *f == facet) else {
            return Err(Error::BadSchedule { step, facet });
        };
        let apex = n + 2 + step;
        facets.swap_remove(pos);
        facets.extend(facet.iter().map(|v| facet.without(v).with(apex)));
    }
    SimplicialComplex::new(VertexSet::range(n + 1 + k), facets)
}
