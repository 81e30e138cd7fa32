//! Characteristic maps and Buchstaber numbers.
//!
//! A characteristic map sends each geometric vertex to a vector of length `d`
//! over `ℤ` (modulus 0) or `ℤ_p`; it is valid when the vectors of every facet
//! are part of a lattice basis, resp. linearly independent. The Buchstaber
//! number `s_p(L)` is `f₀(L) - d` for the least `d` admitting a valid map.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bier::{bier, BierSphere};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Oracle limits: facet size, geometric vertices, target rank.
pub const ORACLE_MAX_FACET: usize = 4;
pub const ORACLE_MAX_VERTICES: usize = 8;

pub fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn check_modulus(p: u64) -> Result<()> {
    if p == 0 || is_prime(p) {
        Ok(())
    } else {
        Err(Error::BadModulus(p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacteristicMap {
    pub target_rank: usize,
    /// 0 for integer vectors, otherwise a prime.
    pub modulus: u64,
    /// Ascending vertex labels; `matrix[i]` is the vector of `vertices[i]`.
    pub vertices: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
}

impl CharacteristicMap {
    pub fn new(
        target_rank: usize,
        modulus: u64,
        assignment: impl IntoIterator<Item = (usize, Vec<i64>)>,
    ) -> Result<Self> {
        check_modulus(modulus)?;
        let mut rows: Vec<(usize, Vec<i64>)> = assignment.into_iter().collect();
        rows.sort_by_key(|(v, _)| *v);
        rows.dedup_by_key(|(v, _)| *v);
        for (v, row) in &rows {
            if row.len() != target_rank {
                return Err(Error::BadVectorLength {
                    vertex: *v,
                    got: row.len(),
                    expected: target_rank,
                });
            }
        }
        let (vertices, mut matrix): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
        if modulus != 0 {
            let p = modulus as i64;
            for row in &mut matrix {
                for x in row.iter_mut() {
                    *x = x.rem_euclid(p);
                }
            }
        }
        Ok(CharacteristicMap {
            target_rank,
            modulus,
            vertices,
            matrix,
        })
    }

    pub fn vector(&self, v: usize) -> Option<&[i64]> {
        self.vertices
            .binary_search(&v)
            .ok()
            .map(|i| self.matrix[i].as_slice())
    }

    /// The same vectors read modulo `p`.
    pub fn reduce(&self, p: u64) -> Result<Self> {
        if p == 0 {
            return Err(Error::BadModulus(0));
        }
        Self::new(
            self.target_rank,
            p,
            self.vertices
                .iter()
                .copied()
                .zip(self.matrix.iter().cloned()),
        )
    }
}

/// Do these integer rows extend to a basis of `ℤ^d`?
///
/// Column operations by extended gcd bring the rows to lower-triangular form;
/// they are unimodular, so the rows extend iff every diagonal entry is `±1`.
pub fn is_part_of_lattice_basis(rows: &[Vec<i64>]) -> bool {
    let Some(d) = rows.first().map(Vec::len) else {
        return true;
    };
    if rows.len() > d {
        return false;
    }
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    for i in 0..a.len() {
        for j in i + 1..d {
            if a[i][j].is_zero() {
                continue;
            }
            let (x, y) = (a[i][i].clone(), a[i][j].clone());
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (xg, yg) = (&x / &g, &y / &g);
            // [col_i, col_j] <- [s col_i + t col_j, -y/g col_i + x/g col_j]
            for row in a.iter_mut().skip(i) {
                let (ci, cj) = (row[i].clone(), row[j].clone());
                row[i] = &s * &ci + &t * &cj;
                row[j] = &xg * &cj - &yg * &ci;
            }
        }
        if !a[i][i].abs().is_one() {
            return false;
        }
    }
    true
}

/// Rank of `rows` over `ℤ_p`.
pub fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let p = p as i64;
    let mut a: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = mod_inverse(a[rank][c], p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for k in 0..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(x: i64, p: i64) -> i64 {
    let eg = x.extended_gcd(&p);
    eg.x.rem_euclid(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub valid: bool,
    pub facets_checked: usize,
    pub failing_facets: Vec<VertexSet>,
}

pub fn validate_char_map(k: &SimplicialComplex, map: &CharacteristicMap) -> Result<ValidityReport> {
    check_modulus(map.modulus)?;
    for v in k.vertices() {
        let row = map.vector(v).ok_or(Error::MissingVertexAssignment(v))?;
        if row.len() != map.target_rank {
            return Err(Error::BadVectorLength {
                vertex: v,
                got: row.len(),
                expected: map.target_rank,
            });
        }
    }
    let mut failing = Vec::new();
    for &f in k.facets() {
        let rows: Vec<Vec<i64>> = f.iter().map(|v| map.vector(v).unwrap().to_vec()).collect();
        let ok = if rows.len() > map.target_rank {
            false
        } else if map.modulus == 0 {
            is_part_of_lattice_basis(&rows)
        } else {
            rank_mod_p(&rows, map.modulus) == rows.len()
        };
        if !ok {
            failing.push(f);
        }
    }
    Ok(ValidityReport {
        valid: failing.is_empty(),
        facets_checked: k.facets().len(),
        failing_facets: failing,
    })
}

/// `i, i' ↦ e_i` for `i < m` and `m, m' ↦ e₁ + … + e_{m-1}`, on geometric vertices.
pub fn phi_map(b: &BierSphere) -> CharacteristicMap {
    let m = b.m();
    let d = m - 1;
    let rows = b.complex().vertices().iter().map(|v| {
        let i = b.unprime(v);
        let row = if i < m {
            (1..=d).map(|j| i64::from(j == i)).collect()
        } else {
            vec![1; d]
        };
        (v, row)
    });
    CharacteristicMap::new(d, 0, rows).expect("rows have length m-1")
}

/// `f₀(K) - f_{m-2}(K) + 1`.
pub fn buchstaber_formula(k: &SimplicialComplex) -> Result<usize> {
    let m = k.m();
    if m < 2 {
        return Err(Error::BadGroundSize(m));
    }
    if k.is_full_simplex() {
        return Err(Error::DualOfFullSimplex);
    }
    let f = k.f_vector();
    Ok((f.get(0) + 1 - f.get(m as isize - 2)) as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BierBuchstaber {
    pub value: usize,
    /// `f₀(Bier(K)) - (m - 1)`: a facet has `m - 1` vertices.
    pub upper_bound: usize,
    pub certificate: CharacteristicMap,
    pub certificate_valid: bool,
}

/// The Buchstaber number of `Bier(K)` over `ℤ` (`p = 0`) or `ℤ_p`, with `φ` as certificate.
pub fn buchstaber_of_bier(k: &SimplicialComplex, p: u64) -> Result<BierBuchstaber> {
    check_modulus(p)?;
    let value = buchstaber_formula(k)?;
    let b = bier(k)?;
    let phi = phi_map(&b);
    let certificate = if p == 0 { phi } else { phi.reduce(p)? };
    let certificate_valid = validate_char_map(b.complex(), &certificate)?.valid;
    let f0 = b.complex().vertices().len();
    Ok(BierBuchstaber {
        value,
        upper_bound: f0 - (b.m() - 1),
        certificate,
        certificate_valid,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum OracleOutcome {
    /// `value = f₀ - target_rank`; no map exists in rank `target_rank - 1`.
    Exact {
        value: usize,
        certificate: CharacteristicMap,
        nodes: u64,
    },
    /// The node budget ran out; `s_p` lies in `lower..=upper`.
    Skipped {
        lower: usize,
        upper: usize,
        certificate: Option<CharacteristicMap>,
        nodes: u64,
    },
}

impl OracleOutcome {
    pub fn exact_value(&self) -> Option<usize> {
        match self {
            OracleOutcome::Exact { value, .. } => Some(*value),
            OracleOutcome::Skipped { .. } => None,
        }
    }
}

struct Search<'a> {
    p: u64,
    order: Vec<usize>,
    /// For each position, the facets through that vertex, as position lists
    /// restricted to earlier positions (plus the position itself).
    checks: Vec<Vec<Vec<usize>>>,
    candidates: Vec<Vec<i64>>,
    nodes: &'a AtomicU64,
    abort: &'a AtomicBool,
    budget: u64,
}

enum Branch {
    Found(Vec<Vec<i64>>),
    Aborted,
}

impl Search<'_> {
    fn consistent(&self, pos: usize, assigned: &[Vec<i64>]) -> bool {
        self.checks[pos].iter().all(|members| {
            let rows: Vec<Vec<i64>> = members.iter().map(|&q| assigned[q].clone()).collect();
            rank_mod_p(&rows, self.p) == rows.len()
        })
    }

    fn dfs(&self, assigned: &mut Vec<Vec<i64>>) -> Option<Branch> {
        if self.abort.load(Ordering::Relaxed) {
            return Some(Branch::Aborted);
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.abort.store(true, Ordering::Relaxed);
            return Some(Branch::Aborted);
        }
        let pos = assigned.len();
        if pos == self.order.len() {
            return Some(Branch::Found(assigned.clone()));
        }
        for c in &self.candidates {
            assigned.push(c.clone());
            if self.consistent(pos, assigned) {
                if let Some(b) = self.dfs(assigned) {
                    assigned.pop();
                    return Some(b);
                }
            }
            assigned.pop();
        }
        None
    }
}

fn all_nonzero_vectors(d: usize, p: u64) -> Vec<Vec<i64>> {
    let total = (p as usize).pow(d as u32);
    (1..total)
        .map(|mut n| {
            (0..d)
                .map(|_| {
                    let digit = n % p as usize;
                    n /= p as usize;
                    digit as i64
                })
                .collect()
        })
        .collect()
}

fn unit(d: usize, i: usize) -> Vec<i64> {
    (0..d).map(|j| i64::from(j == i)).collect()
}

/// Exhaustive search for a mod-`p` characteristic map of `l` in rank `d`.
fn search_rank(
    l: &SimplicialComplex,
    order: &[usize],
    p: u64,
    d: usize,
    nodes: &AtomicU64,
    budget: u64,
) -> Option<Branch> {
    let pos_of = |v: usize| order.iter().position(|&w| w == v).expect("vertex in order");
    let mut checks = vec![Vec::new(); order.len()];
    for &f in l.facets() {
        let mut positions: Vec<usize> = f.iter().map(pos_of).collect();
        positions.sort_unstable();
        for (i, &q) in positions.iter().enumerate() {
            checks[q].push(positions[..=i].to_vec());
        }
    }
    let abort = AtomicBool::new(false);
    let search = Search {
        p,
        order: order.to_vec(),
        checks,
        candidates: all_nonzero_vectors(d, p),
        nodes,
        abort: &abort,
        budget,
    };
    // GL(d, ℤ_p) moves any nonzero vector to e₁, and fixing e₁ it moves any
    // vector outside span(e₁) to e₂.
    let first = unit(d, 0);
    let mut seconds: Vec<Vec<i64>> = (1..p as i64)
        .map(|c| {
            let mut v = vec![0; d];
            v[0] = c;
            v
        })
        .collect();
    if d >= 2 {
        seconds.insert(0, unit(d, 1));
    }
    if order.len() == 1 {
        return Some(Branch::Found(vec![first]));
    }
    let prefixes: Vec<Vec<Vec<i64>>> = seconds
        .into_iter()
        .map(|s| vec![first.clone(), s])
        .filter(|pre| search.consistent(1, pre))
        .collect();
    prefixes
        .into_par_iter()
        .find_map_first(|mut pre| search.dfs(&mut pre))
}

/// Exact `s_p(L)` by exhaustive search over vector assignments.
///
/// Ranks are tried in increasing order starting from the largest facet size;
/// every smaller rank is excluded by dimension, every tried rank below the
/// answer is refuted by exhausting the search tree.
pub fn s_p_oracle(l: &SimplicialComplex, p: u64, budget: u64) -> Result<OracleOutcome> {
    if p != 2 && p != 3 {
        return Err(Error::BadModulus(p));
    }
    let verts = l.vertices();
    let f0 = verts.len();
    if f0 == 0 {
        return Err(Error::NoVertices);
    }
    let n = (l.dim() + 1) as usize;
    if n > ORACLE_MAX_FACET || f0 > ORACLE_MAX_VERTICES {
        return Err(Error::TooLargeForOracle(format!(
            "{f0} vertices, facets of size up to {n}"
        )));
    }
    // Decreasing facet degree, ties by label.
    let mut order = verts.to_vec();
    order.sort_by_key(|&v| {
        let deg = l.facets().iter().filter(|f| f.contains(v)).count();
        (usize::MAX - deg, v)
    });
    let nodes = AtomicU64::new(0);
    for d in n..=f0 {
        match search_rank(l, &order, p, d, &nodes, budget) {
            Some(Branch::Found(rows)) => {
                let certificate = CharacteristicMap::new(d, p, order.iter().copied().zip(rows))?;
                return Ok(OracleOutcome::Exact {
                    value: f0 - d,
                    certificate,
                    nodes: nodes.load(Ordering::Relaxed),
                });
            }
            Some(Branch::Aborted) => {
                // Rank d is undecided; the coordinate map in rank f₀ always works.
                let identity = CharacteristicMap::new(
                    f0,
                    p,
                    order.iter().enumerate().map(|(i, &v)| (v, unit(f0, i))),
                )?;
                return Ok(OracleOutcome::Skipped {
                    lower: 0,
                    upper: f0 - d,
                    certificate: Some(identity),
                    nodes: nodes.load(Ordering::Relaxed),
                });
            }
            None => {}
        }
    }
    unreachable!("the coordinate map in rank f0 is always valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// Independent integer test: gcd of all maximal minors equals 1.
    fn minor_gcd_is_one(rows: &[Vec<i64>]) -> bool {
        let r = rows.len();
        let d = rows[0].len();
        if r > d {
            return false;
        }
        let mut g: i128 = 0;
        for cols in VertexSet::range(d).subsets().filter(|s| s.len() == r) {
            let sub: Vec<Vec<i128>> = rows
                .iter()
                .map(|row| cols.iter().map(|c| row[c - 1] as i128).collect())
                .collect();
            g = g.gcd(&det(&sub));
        }
        g == 1
    }

    fn det(a: &[Vec<i128>]) -> i128 {
        match a.len() {
            0 => 1,
            n => (0..n)
                .map(|j| {
                    let minor: Vec<Vec<i128>> = a[1..]
                        .iter()
                        .map(|row| [&row[..j], &row[j + 1..]].concat())
                        .collect();
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * a[0][j] * det(&minor)
                })
                .sum(),
        }
    }

    fn map(d: usize, p: u64, rows: &[(usize, &[i64])]) -> CharacteristicMap {
        CharacteristicMap::new(d, p, rows.iter().map(|(v, r)| (*v, r.to_vec()))).unwrap()
    }

    #[test]
    fn trivial_maps() {
        let two_points = SimplicialComplex::on_range(2, [[1], [2]]).unwrap();
        let m = map(1, 0, &[(1, &[1]), (2, &[1])]);
        assert!(validate_char_map(&two_points, &m).unwrap().valid);
        let edge = SimplicialComplex::on_range(2, [[1, 2]]).unwrap();
        let r = validate_char_map(&edge, &m).unwrap();
        assert!(!r.valid);
        assert_eq!(r.failing_facets, vec![VertexSet::range(2)]);
        let partial = map(1, 0, &[(1, &[1])]);
        assert_eq!(
            validate_char_map(&two_points, &partial),
            Err(Error::MissingVertexAssignment(2))
        );
        assert_eq!(
            CharacteristicMap::new(2, 0, [(1, vec![1])]),
            Err(Error::BadVectorLength {
                vertex: 1,
                got: 1,
                expected: 2
            })
        );
        assert_eq!(CharacteristicMap::new(1, 4, []), Err(Error::BadModulus(4)));
    }

    #[test]
    fn lattice_basis_examples() {
        assert!(is_part_of_lattice_basis(&[vec![2, 3]]));
        assert!(!is_part_of_lattice_basis(&[vec![2, 4]]));
        assert!(is_part_of_lattice_basis(&[vec![1, 1, 0], vec![0, 1, 1]]));
        assert!(!is_part_of_lattice_basis(&[vec![1, 1], vec![1, -1]]));
        assert!(is_part_of_lattice_basis(&[vec![6, 10, 15]]));
        assert!(!is_part_of_lattice_basis(&[vec![0, 0]]));
        assert_eq!(rank_mod_p(&[vec![1, 1], vec![1, -1]], 2), 1);
        assert_eq!(rank_mod_p(&[vec![1, 1], vec![1, -1]], 3), 2);
    }

    #[test]
    fn phi_on_small_spheres() {
        let z3 = bier(&fixtures::gamma3()).unwrap();
        let phi = phi_map(&z3);
        assert_eq!(phi.target_rank, 2);
        assert_eq!(phi.vertices, vec![1, 2, 3]);
        assert_eq!(phi.matrix, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        for b in [
            z3,
            bier(&fixtures::gamma6()).unwrap(),
            bier(&fixtures::simplex_face(4, 3).unwrap()).unwrap(),
        ] {
            let phi = phi_map(&b);
            assert!(validate_char_map(b.complex(), &phi).unwrap().valid);
            for p in [2, 3, 5] {
                assert!(
                    validate_char_map(b.complex(), &phi.reduce(p).unwrap())
                        .unwrap()
                        .valid
                );
            }
            for i in 1..=b.m() {
                let pair = b.antipodal_pair(i);
                assert!(b.complex().facets().iter().all(|f| !pair.is_subset(*f)));
            }
        }
    }

    #[test]
    fn formula_examples() {
        assert_eq!(buchstaber_formula(&fixtures::gamma6()).unwrap(), 4);
        assert_eq!(buchstaber_formula(&fixtures::gamma3()).unwrap(), 1);
        assert_eq!(buchstaber_formula(&fixtures::gamma4()).unwrap(), 2);
        assert_eq!(
            buchstaber_formula(&fixtures::simplex_face(4, 3).unwrap()).unwrap(),
            3
        );
        let void = SimplicialComplex::void(VertexSet::range(5));
        assert_eq!(buchstaber_formula(&void).unwrap(), 1);
        let point = SimplicialComplex::on_range(2, [[1]]).unwrap();
        let r = buchstaber_of_bier(&point, 0).unwrap();
        assert_eq!((r.value, r.upper_bound), (1, 1));
        assert!(r.certificate_valid);
        assert_eq!(
            buchstaber_formula(&fixtures::simplex_face(3, 3).unwrap()),
            Err(Error::DualOfFullSimplex)
        );
    }

    #[test]
    fn oracle_examples() {
        let z6 = bier(&fixtures::gamma6()).unwrap();
        let z3 = bier(&fixtures::gamma3()).unwrap();
        let z4 = bier(&fixtures::gamma4()).unwrap();
        let tetra = SimplicialComplex::simplex_boundary(VertexSet::range(4));
        let cases = [
            (z6.complex().clone(), 4),
            (z3.complex().clone(), 1),
            (z4.complex().clone(), 2),
            (tetra, 1),
        ];
        for (l, want) in cases {
            for p in [2, 3] {
                let out = s_p_oracle(&l, p, DEFAULT_NODE_BUDGET).unwrap();
                assert_eq!(out.exact_value(), Some(want), "{l} p={p}");
                let OracleOutcome::Exact { certificate, .. } = out else {
                    unreachable!()
                };
                assert!(validate_char_map(&l, &certificate).unwrap().valid);
            }
        }
    }

    #[test]
    fn oracle_limits() {
        let big = bier(&fixtures::km(5).unwrap()).unwrap();
        assert!(matches!(
            s_p_oracle(big.complex(), 2, DEFAULT_NODE_BUDGET),
            Err(Error::TooLargeForOracle(_))
        ));
        let z6 = bier(&fixtures::gamma6()).unwrap();
        assert_eq!(s_p_oracle(z6.complex(), 5, 10), Err(Error::BadModulus(5)));
        let out = s_p_oracle(z6.complex(), 2, 3).unwrap();
        assert!(matches!(out, OracleOutcome::Skipped { .. }));
    }

    #[test]
    fn lattice_test_agrees_with_minor_gcd() {
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 7) as i64 - 3
        };
        for _ in 0..3000 {
            let d = 1 + (next().unsigned_abs() as usize % 4);
            let r = 1 + (next().unsigned_abs() as usize % d);
            let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..d).map(|_| next()).collect()).collect();
            assert_eq!(
                is_part_of_lattice_basis(&rows),
                minor_gcd_is_one(&rows),
                "{rows:?}"
            );
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn integer_valid_implies_mod_p_valid(
                d in 1usize..4,
                entries in proptest::collection::vec(-3i64..=3, 12),
                r in 1usize..4,
            ) {
                let r = r.min(d);
                let rows: Vec<Vec<i64>> = (0..r).map(|i| entries[i * d..(i + 1) * d].to_vec()).collect();
                prop_assert_eq!(is_part_of_lattice_basis(&rows), minor_gcd_is_one(&rows));
                if is_part_of_lattice_basis(&rows) {
                    for p in [2, 3, 5, 7] {
                        prop_assert_eq!(rank_mod_p(&rows, p), r);
                    }
                }
            }
        }
    }
}
