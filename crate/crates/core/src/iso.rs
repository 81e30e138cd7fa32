//! Combinatorial isomorphism of complexes.
//!
//! [`are_isomorphic`] compares geometric vertices only (ghosts are ignored) and
//! searches bijections by backtracking over invariant-compatible candidates.
//! [`canonical_form`] is the ground-set variant used to deduplicate complexes
//! on `[m]` up to relabeling, ghosts included.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::complex::{FVector, SimplicialComplex};
use crate::graph::Graph;
use crate::vertex_set::{VertexSet, MAX_LABEL};

/// A bijection between geometric vertices carrying facets onto facets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoCertificate {
    /// `(vertex of A, vertex of B)` pairs, sorted by the first entry.
    pub bijection: Vec<(usize, usize)>,
}

impl IsoCertificate {
    pub fn image(&self, v: usize) -> Option<usize> {
        self.bijection.iter().find(|p| p.0 == v).map(|p| p.1)
    }

    /// Map every facet of `a`; `None` if some vertex is unmapped.
    pub fn map_facets(&self, a: &SimplicialComplex) -> Option<Vec<VertexSet>> {
        let table: BTreeMap<usize, usize> = self.bijection.iter().copied().collect();
        a.facets()
            .iter()
            .map(|f| {
                f.iter()
                    .map(|v| table.get(&v).copied())
                    .collect::<Option<Vec<_>>>()
                    .map(VertexSet::from_labels)
            })
            .collect()
    }

    /// Check the certificate: a bijection `V(a) -> V(b)` whose facet image is `M(b)`.
    pub fn verify(&self, a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
        let dom: VertexSet = self.bijection.iter().map(|p| p.0).collect();
        let cod: VertexSet = self.bijection.iter().map(|p| p.1).collect();
        if dom != a.vertices()
            || cod != b.vertices()
            || dom.len() != self.bijection.len()
            || cod.len() != self.bijection.len()
        {
            return false;
        }
        let Some(image) = self.map_facets(a) else {
            return false;
        };
        let want: HashSet<VertexSet> = b.facets().iter().copied().collect();
        let got: HashSet<VertexSet> = image.into_iter().collect();
        got == want
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct VertexInvariant {
    degree: usize,
    facet_count: usize,
    link_f: Vec<u64>,
}

fn vertex_invariant(k: &SimplicialComplex, g: &Graph, v: usize) -> VertexInvariant {
    let link_f: FVector = k
        .link(VertexSet::singleton(v))
        .expect("geometric vertex is a face")
        .f_vector();
    let mut link_f = link_f.as_slice().to_vec();
    while link_f.last() == Some(&0) {
        link_f.pop();
    }
    VertexInvariant {
        degree: g.degree(v),
        facet_count: k.facets().iter().filter(|f| f.contains(v)).count(),
        link_f,
    }
}

fn facet_sizes(k: &SimplicialComplex) -> Vec<usize> {
    let mut s: Vec<_> = k.facets().iter().map(|f| f.len()).collect();
    s.sort_unstable();
    s
}

fn trimmed_f(k: &SimplicialComplex) -> Vec<u64> {
    let mut f = k.f_vector().as_slice().to_vec();
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

struct Search<'a> {
    a: &'a SimplicialComplex,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    ga: Graph,
    gb: Graph,
    b_facets: HashSet<VertexSet>,
    /// For each position in `order`, the facets of A completed at that position.
    completing: Vec<Vec<VertexSet>>,
    map: Vec<usize>,
    used: VertexSet,
}

impl Search<'_> {
    fn run(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let v = self.order[pos];
        for ci in 0..self.candidates[pos].len() {
            let w = self.candidates[pos][ci];
            if self.used.contains(w) {
                continue;
            }
            let consistent = self.order[..pos]
                .iter()
                .all(|&u| self.ga.has_edge(u, v) == self.gb.has_edge(self.map[u], w));
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.used = self.used.with(w);
            let facets_ok = self.completing[pos]
                .iter()
                .all(|f| self.b_facets.contains(&f.map(|x| self.map[x])));
            if facets_ok && self.run(pos + 1) {
                return true;
            }
            self.used = self.used.without(w);
        }
        false
    }
}

/// Search for a facet-preserving bijection `V(a) -> V(b)`.
pub fn are_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> Option<IsoCertificate> {
    let (va, vb) = (a.vertices(), b.vertices());
    if va.len() != vb.len()
        || a.facets().len() != b.facets().len()
        || facet_sizes(a) != facet_sizes(b)
        || trimmed_f(a) != trimmed_f(b)
    {
        return None;
    }
    let ga = Graph::skeleton_of(a);
    let gb = Graph::skeleton_of(b);
    let inv_a: BTreeMap<usize, VertexInvariant> = va
        .iter()
        .map(|v| (v, vertex_invariant(a, &ga, v)))
        .collect();
    let inv_b: BTreeMap<usize, VertexInvariant> = vb
        .iter()
        .map(|v| (v, vertex_invariant(b, &gb, v)))
        .collect();
    let mut sa: Vec<_> = inv_a.values().cloned().collect();
    let mut sb: Vec<_> = inv_b.values().cloned().collect();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }

    // Order: start from the rarest invariant class, then prefer vertices
    // adjacent to those already placed.
    let class_size = |inv: &VertexInvariant| sa.iter().filter(|x| *x == inv).count();
    let mut order = Vec::with_capacity(va.len());
    let mut placed = VertexSet::EMPTY;
    while placed != va {
        let rest = va.difference(placed);
        let next = rest
            .iter()
            .min_by_key(|&v| {
                let touching = ga.neighbors(v).intersection(placed).len();
                (usize::MAX - touching, class_size(&inv_a[&v]), v)
            })
            .expect("nonempty");
        order.push(next);
        placed = placed.with(next);
    }
    let candidates: Vec<Vec<usize>> = order
        .iter()
        .map(|v| vb.iter().filter(|w| inv_b[w] == inv_a[v]).collect())
        .collect();
    let mut position = vec![0usize; MAX_LABEL + 1];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut completing = vec![Vec::new(); order.len()];
    for f in a.facets() {
        if let Some(last) = f.iter().map(|v| position[v]).max() {
            completing[last].push(*f);
        }
    }
    let mut search = Search {
        a,
        order,
        candidates,
        ga,
        gb,
        b_facets: b.facets().iter().copied().collect(),
        completing,
        map: vec![0; MAX_LABEL + 1],
        used: VertexSet::EMPTY,
    };
    if !search.run(0) {
        return None;
    }
    let bijection = search
        .a
        .vertices()
        .iter()
        .map(|v| (v, search.map[v]))
        .collect();
    let cert = IsoCertificate { bijection };
    debug_assert!(cert.verify(a, b));
    Some(cert)
}

/// Largest ground set [`canonical_form`] accepts (it scans all `m!` relabelings).
pub const CANONICAL_FORM_MAX_M: usize = 9;

/// Canonical representative of `k` (ground set `[m]`) under relabeling of `[m]`.
///
/// Returns the lexicographically least sorted facet-mask list over all
/// permutations, together with one permutation achieving it (`perm[i - 1]` is
/// the image of label `i`).
pub fn canonical_form(k: &SimplicialComplex) -> (Vec<u32>, Vec<usize>) {
    let m = k.m();
    assert_eq!(
        k.ground(),
        VertexSet::range(m),
        "canonical_form needs ground [m]"
    );
    assert!(
        m <= CANONICAL_FORM_MAX_M,
        "canonical_form limited to m <= {CANONICAL_FORM_MAX_M}"
    );
    let facets: Vec<u32> = k.facets().iter().map(|f| f.bits()).collect();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
    let mut buf = Vec::with_capacity(facets.len());
    let mut consider = |perm: &[usize], buf: &mut Vec<u32>| {
        buf.clear();
        for &f in &facets {
            let mut img = 0u32;
            let mut bits = f;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                img |= 1 << perm[i];
                bits &= bits - 1;
            }
            buf.push(img);
        }
        buf.sort_unstable();
        if best
            .as_ref()
            .is_none_or(|(b, _)| buf.as_slice() < b.as_slice())
        {
            best = Some((buf.clone(), perm.iter().map(|p| p + 1).collect()));
        }
    };
    // Heap's algorithm.
    let mut c = vec![0usize; m];
    consider(&perm, &mut buf);
    let mut i = 1;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            consider(&perm, &mut buf);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best.expect("at least the identity was considered")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(labels: &[usize]) -> SimplicialComplex {
        let n = labels.len();
        let facets = (0..n).map(|i| vec![labels[i], labels[(i + 1) % n]]);
        SimplicialComplex::on_range(*labels.iter().max().unwrap(), facets).unwrap()
    }

    #[test]
    fn relabeled_cycles_are_isomorphic() {
        let a = cycle(&[1, 2, 3, 4, 5]);
        let b = cycle(&[3, 1, 5, 2, 4]);
        let cert = are_isomorphic(&a, &b).expect("both are 5-cycles");
        assert!(cert.verify(&a, &b));
    }

    #[test]
    fn different_cycles_are_not() {
        assert!(are_isomorphic(&cycle(&[1, 2, 3, 4]), &cycle(&[1, 2, 3, 4, 5])).is_none());
        // Two triangles vs a hexagon: same f-vector, different structure.
        let two_triangles =
            SimplicialComplex::on_range(6, [[1, 2], [2, 3], [1, 3], [4, 5], [5, 6], [4, 6]])
                .unwrap();
        assert!(are_isomorphic(&two_triangles, &cycle(&[1, 2, 3, 4, 5, 6])).is_none());
    }

    #[test]
    fn ghosts_are_ignored() {
        let a = SimplicialComplex::on_range(3, [[1, 2]]).unwrap();
        let b = SimplicialComplex::on_range(5, [[4, 5]]).unwrap();
        assert!(are_isomorphic(&a, &b).is_some());
    }

    #[test]
    fn canonical_form_identifies_relabelings() {
        let a = SimplicialComplex::on_range(4, [vec![1, 2], vec![3]]).unwrap();
        let b = SimplicialComplex::on_range(4, [vec![3, 4], vec![1]]).unwrap();
        let c = SimplicialComplex::on_range(4, [vec![3, 4]]).unwrap();
        assert_eq!(canonical_form(&a).0, canonical_form(&b).0);
        assert_ne!(canonical_form(&a).0, canonical_form(&c).0);
        let (form, perm) = canonical_form(&a);
        let relabeled = a.relabel(|v| perm[v - 1]).unwrap();
        let mut masks: Vec<u32> = relabeled.facets().iter().map(|f| f.bits()).collect();
        masks.sort_unstable();
        assert_eq!(masks, form);
    }
}
