//! Alexander duality and the deleted-join sphere `Bier(K)`.
//!
//! For a complex `K` on `[m]`, primed labels `i'` are stored as `m + i`, so
//! `Bier(K)` lives on the ground set `[2m]`. The dual `K^∨` is returned on the
//! unprimed labels `[m]`; [`BierSphere::dual_primed`] gives the shifted copy.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::complex::{FVector, SimplicialComplex};
use crate::error::{Error, Result};
use crate::iso::IsoCertificate;
use crate::vertex_set::VertexSet;

/// Largest `m` for which `Bier(K)` fits the label range.
pub const MAX_BASE_M: usize = 16;

/// `K^∨`: facets are the complements (in the ground set) of the minimal non-faces of `K`.
pub fn alexander_dual(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    let mnf = k.minimal_non_faces();
    if mnf.is_empty() {
        return Err(Error::DualOfFullSimplex);
    }
    let ground = k.ground();
    SimplicialComplex::new(
        ground,
        mnf.into_iter().map(|s| ground.difference(s)).collect(),
    )
}

/// `Bier(K)` together with the data it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BierSphere {
    m: usize,
    base: SimplicialComplex,
    dual: SimplicialComplex,
    complex: SimplicialComplex,
}

impl BierSphere {
    pub fn m(&self) -> usize {
        self.m
    }

    /// `K` on `[m]`.
    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    /// `K^∨` on unprimed labels `[m]`.
    pub fn dual(&self) -> &SimplicialComplex {
        &self.dual
    }

    /// `K^∨` on primed labels `m+1..=2m`.
    pub fn dual_primed(&self) -> SimplicialComplex {
        self.dual
            .relabel(|v| v + self.m)
            .expect("shift is injective")
    }

    /// The sphere itself, on `[2m]`.
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn prime(&self, i: usize) -> usize {
        i + self.m
    }

    /// `i` for both `i` and `i'`.
    pub fn unprime(&self, v: usize) -> usize {
        if v > self.m {
            v - self.m
        } else {
            v
        }
    }

    /// The pair `{i, i'}`.
    pub fn antipodal_pair(&self, i: usize) -> VertexSet {
        VertexSet::from_labels([i, i + self.m])
    }
}

/// Build `Bier(K)`.
///
/// Every facet of the deleted join has the form `I ⊔ ([m] ∖ (I ∪ {x}))'` with
/// `I ∈ K`, `x ∉ I` and `I ∪ {x} ∉ K`, and each such pair `(I, x)` gives a
/// distinct facet, so no dominance filtering is required.
pub fn bier(k: &SimplicialComplex) -> Result<BierSphere> {
    let m = k.m();
    if !(2..=MAX_BASE_M).contains(&m) {
        return Err(Error::BadGroundSize(m));
    }
    if k.ground() != VertexSet::range(m) {
        return Err(Error::NonStandardGround(k.ground()));
    }
    let dual = alexander_dual(k)?;
    let ground = VertexSet::range(m);
    let faces = k.face_set();
    let mut facets = Vec::new();
    for &face in &faces {
        for x in ground.difference(face) {
            let up = face.with(x);
            if !faces.contains(&up) {
                facets.push(face.union(ground.difference(up).shifted(m)));
            }
        }
    }
    let complex = SimplicialComplex::new(VertexSet::range(2 * m), facets)?;
    Ok(BierSphere {
        m,
        base: k.clone(),
        dual,
        complex,
    })
}

/// Computable sphere invariants of a Bier sphere.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckReport {
    pub m: usize,
    pub dim: isize,
    pub f_vector: Vec<u64>,
    pub euler_characteristic: i64,
    pub vertex_count: usize,
    pub pure: bool,
    pub dimension_ok: bool,
    pub no_antipodal_facet: bool,
    pub pseudomanifold: bool,
    pub euler_ok: bool,
    /// Facet adjacency graph connected (vacuous for `m = 2`).
    pub connected: bool,
    /// `f_0(Bier) = m + f_0(K) - f_{m-2}(K)`.
    pub vertex_count_ok: bool,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn facet_graph_connected(k: &SimplicialComplex) -> bool {
    let facets = k.facets();
    let mut by_ridge: HashMap<VertexSet, Vec<usize>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for v in f.iter() {
            by_ridge.entry(f.without(v)).or_default().push(i);
        }
    }
    let mut adj = vec![Vec::new(); facets.len()];
    for ids in by_ridge.values() {
        for &a in ids {
            for &b in ids {
                if a != b {
                    adj[a].push(b);
                }
            }
        }
    }
    let mut seen = vec![false; facets.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Purity, dimension, pseudomanifold, Euler characteristic, connectivity and
/// vertex count of `Bier(K)`.
pub fn check_sphere(b: &BierSphere) -> CheckReport {
    let m = b.m();
    let s = b.complex();
    let f: FVector = s.f_vector();
    let fk = b.base().f_vector();
    let mut failures = Vec::new();

    let pure = s.is_pure();
    if !pure {
        failures.push("not pure".to_string());
    }
    let dim = s.dim();
    let dimension_ok = dim == m as isize - 2;
    if !dimension_ok {
        failures.push(format!("dimension {dim}, expected {}", m as isize - 2));
    }
    let no_antipodal_facet = s
        .facets()
        .iter()
        .all(|facet| (1..=m).all(|i| !b.antipodal_pair(i).is_subset(*facet)));
    if !no_antipodal_facet {
        failures.push("a facet contains some pair {i, i'}".to_string());
    }
    let mut ridges: HashMap<VertexSet, usize> = HashMap::new();
    for facet in s.facets() {
        for v in facet.iter() {
            *ridges.entry(facet.without(v)).or_default() += 1;
        }
    }
    let pseudomanifold = ridges.values().all(|&c| c == 2);
    if !pseudomanifold {
        failures.push("some ridge is not in exactly two facets".to_string());
    }
    let euler = f.euler_characteristic();
    let expected_euler = if m.is_multiple_of(2) { 2 } else { 0 };
    let euler_ok = euler == expected_euler;
    if !euler_ok {
        failures.push(format!(
            "Euler characteristic {euler}, expected {expected_euler}"
        ));
    }
    let connected = m < 3 || facet_graph_connected(s);
    if !connected {
        failures.push("facet adjacency graph is disconnected".to_string());
    }
    let vertex_count = s.vertices().len();
    let predicted = m as i64 + fk.get(0) as i64 - fk.get(m as isize - 2) as i64;
    let vertex_count_ok = vertex_count as i64 == predicted;
    if !vertex_count_ok {
        failures.push(format!(
            "{vertex_count} vertices, formula gives {predicted}"
        ));
    }
    CheckReport {
        m,
        dim,
        f_vector: f.trimmed().to_vec(),
        euler_characteristic: euler,
        vertex_count,
        pure,
        dimension_ok,
        no_antipodal_facet,
        pseudomanifold,
        euler_ok,
        connected,
        vertex_count_ok,
        failures,
    }
}

/// The swap `i <-> i'` carrying `Bier(K)` onto `Bier(K^∨)`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SymmetryWitness {
    pub certificate: IsoCertificate,
    pub verified: bool,
}

pub fn bier_symmetry_witness(k: &SimplicialComplex) -> Result<SymmetryWitness> {
    let b = bier(k)?;
    let bd = bier(b.dual())?;
    let m = b.m();
    let swap = |v: usize| if v > m { v - m } else { v + m };
    let bijection = b
        .complex()
        .vertices()
        .iter()
        .map(|v| (v, swap(v)))
        .collect();
    let certificate = IsoCertificate { bijection };
    let verified = certificate.verify(b.complex(), bd.complex());
    Ok(SymmetryWitness {
        certificate,
        verified,
    })
}
