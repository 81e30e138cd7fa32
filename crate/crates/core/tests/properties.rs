//! Property tests over random complexes on up to seven vertices.

use std::collections::HashSet;

use proptest::prelude::*;

use bier_core::bier::{alexander_dual, bier, check_sphere};
use bier_core::buchstaber::{buchstaber_formula, phi_map, validate_char_map};
use bier_core::chordal::{is_chordal_graph, is_perfect_elimination_order, ChordalWitness};
use bier_core::coloring::{chi_bier_bounds, chromatic_number, chromatic_number_of_graph};
use bier_core::complex::SimplicialComplex;
use bier_core::graph::Graph;
use bier_core::io::{complex_to_json, parse_complex};
use bier_core::iso::are_isomorphic;
use bier_core::vertex_set::VertexSet;

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..=7).prop_flat_map(|m| {
        prop::collection::vec(0u32..(1 << m), 1..7).prop_map(move |gens| {
            SimplicialComplex::new(
                VertexSet::range(m),
                gens.into_iter().map(VertexSet::from_bits).collect(),
            )
            .unwrap()
        })
    })
}

/// Random complexes other than the full simplex.
fn base() -> impl Strategy<Value = SimplicialComplex> {
    complex().prop_filter("full simplex has no dual", |k| !k.is_full_simplex())
}

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..=9).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b)));
            let edges: Vec<_> = pairs
                .zip(bits)
                .filter(|(_, on)| *on)
                .map(|(e, _)| e)
                .collect();
            Graph::from_edges(VertexSet::range(n), &edges)
        })
    })
}

fn permutation(m: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=m).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn faces_are_closed_and_counted(k in complex()) {
        let faces: HashSet<VertexSet> = k.faces().into_iter().collect();
        for &f in &faces {
            for s in f.subsets() {
                prop_assert!(faces.contains(&s));
            }
        }
        for (i, a) in k.facets().iter().enumerate() {
            for (j, b) in k.facets().iter().enumerate() {
                prop_assert!(i == j || !a.is_subset(*b));
            }
        }
        let fv = k.f_vector();
        prop_assert_eq!(fv.get(-1), 1);
        prop_assert_eq!(fv.total(), faces.len() as u64);
        prop_assert_eq!(fv.get(0), k.vertices().len() as u64);
        prop_assert_eq!(fv.get(k.dim() + 1), 0);
    }

    #[test]
    fn cone_and_deletion(k in complex()) {
        let v = k.m() + 1;
        let c = k.cone(v).unwrap();
        prop_assert!(c.facets().iter().all(|f| f.contains(v)));
        prop_assert!(c.is_cone_with_apex(v));
        let del = c.deletion(v);
        prop_assert_eq!(del.facets(), k.facets());
    }

    #[test]
    fn join_is_associative(a in complex(), b in complex(), c in complex()) {
        let b = b.relabel(|x| x + 7).unwrap();
        let c = c.relabel(|x| x + 14).unwrap();
        let left = a.join(&b).unwrap().join(&c).unwrap();
        let right = a.join(&b.join(&c).unwrap()).unwrap();
        prop_assert!(are_isomorphic(&left, &right).is_some());
    }

    #[test]
    fn relabeled_copies_are_isomorphic(
        (k, perm) in complex().prop_flat_map(|k| { let m = k.m(); (Just(k), permutation(m)) })
    ) {
        let l = k.relabel(|v| perm[v - 1]).unwrap();
        let cert = are_isomorphic(&k, &l);
        prop_assert!(cert.is_some());
        let mapped: HashSet<VertexSet> = cert.unwrap().map_facets(&k).unwrap().into_iter().collect();
        let target: HashSet<VertexSet> = l.facets().iter().copied().collect();
        prop_assert_eq!(mapped, target);
        prop_assert!(are_isomorphic(&l, &k).is_some());
    }

    #[test]
    fn dual_is_an_involution(k in base()) {
        let d = alexander_dual(&k).unwrap();
        prop_assert_eq!(alexander_dual(&d).unwrap(), k.clone());
        for i in 1..=k.m() {
            prop_assert_eq!(k.is_cone_with_apex(i), d.is_cone_with_apex(i));
        }
    }

    #[test]
    fn bier_sphere_invariants(k in base()) {
        let m = k.m();
        let b = bier(&k).unwrap();
        prop_assert!(check_sphere(&b).passed());
        let n = b.complex().vertices().len();
        prop_assert!(m <= n && n <= 2 * m);
        let fk = k.f_vector();
        prop_assert_eq!(n as u64, 2 * m as u64 - (m as u64 - fk.get(0) + fk.get(m as isize - 2)));
        for f in b.complex().facets() {
            prop_assert_eq!(f.len(), m - 1);
            for i in 1..=m {
                prop_assert!(!f.contains(i) || !f.contains(i + m));
            }
        }
    }

    #[test]
    fn chromatic_bounds(k in base()) {
        let m = k.m();
        let b = bier(&k).unwrap();
        let g = Graph::skeleton_of(b.complex());
        let (chi, coloring) = chromatic_number(b.complex()).unwrap();
        prop_assert!(coloring.is_proper(&g));
        prop_assert!(chi + 1 >= m && chi <= m);
        let bounds = chi_bier_bounds(&k).unwrap();
        prop_assert!(bounds.lower <= chi && chi <= bounds.upper);
        prop_assert!(bounds.upper_witness.is_proper(&g));
    }

    #[test]
    fn phi_certifies_the_formula(k in base()) {
        let b = bier(&k).unwrap();
        let phi = phi_map(&b);
        prop_assert!(validate_char_map(b.complex(), &phi).unwrap().valid);
        for p in [2, 3, 5] {
            prop_assert!(validate_char_map(b.complex(), &phi.reduce(p).unwrap()).unwrap().valid);
        }
        let n = b.complex().vertices().len();
        let s = buchstaber_formula(&k).unwrap();
        prop_assert_eq!(n - phi.target_rank, s);
        let (chi, _) = chromatic_number(b.complex()).unwrap();
        prop_assert!(n - chi <= s);
    }

    #[test]
    fn chordality_witnesses_check_out(g in graph()) {
        let r = is_chordal_graph(&g);
        match &r.witness {
            ChordalWitness::EliminationOrder(order) => {
                prop_assert!(r.chordal);
                prop_assert!(is_perfect_elimination_order(&g, order));
            }
            ChordalWitness::InducedCycle(c) => {
                prop_assert!(!r.chordal);
                prop_assert!(c.len() >= 4);
                for i in 0..c.len() {
                    for j in i + 1..c.len() {
                        let consecutive = j == i + 1 || (i == 0 && j == c.len() - 1);
                        prop_assert_eq!(g.has_edge(c[i], c[j]), consecutive);
                    }
                }
            }
        }
        let (chi, coloring) = chromatic_number_of_graph(&g);
        prop_assert!(coloring.is_proper(&g));
        prop_assert_eq!(coloring.colors, chi);
    }

    #[test]
    fn json_round_trip(k in complex()) {
        let text = complex_to_json(&k).to_string();
        prop_assert_eq!(parse_complex(&text).unwrap().complex, k);
    }
}
