//! Named complexes used throughout the tests and by the CLI.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

fn on3(facets: &[&[usize]]) -> SimplicialComplex {
    SimplicialComplex::on_range(3, facets.iter().map(|f| f.iter().copied()))
        .expect("fixture facets lie in [3]")
}

/// Boundary of a triangle; `Bier(Γ₃) ≅ Z₃`.
pub fn gamma3() -> SimplicialComplex {
    on3(&[&[1, 2], &[1, 3], &[2, 3]])
}

/// Path `1 - 3 - 2`; `Bier(Γ₄) ≅ Z₄`.
pub fn gamma4() -> SimplicialComplex {
    on3(&[&[1, 3], &[2, 3]])
}

/// Edge `{1,2}` with ghost vertex 3; self-dual, `Bier(G₄) ≅ Z₄`.
pub fn g4() -> SimplicialComplex {
    on3(&[&[1, 2]])
}

/// Edge `{1,2}` plus isolated vertex 3; `Bier(Γ₅) ≅ Z₅`.
pub fn gamma5() -> SimplicialComplex {
    on3(&[&[1, 2], &[3]])
}

/// Three isolated points; self-dual, `Bier(Γ₆) ≅ Z₆`.
pub fn gamma6() -> SimplicialComplex {
    on3(&[&[1], &[2], &[3]])
}

/// The cycle `Z_n` on `[n]`, `n >= 3`.
pub fn cycle(n: usize) -> Result<SimplicialComplex> {
    if !(3..=crate::vertex_set::MAX_LABEL).contains(&n) {
        return Err(Error::BadM(n));
    }
    SimplicialComplex::on_range(n, (1..=n).map(|i| [i, i % n + 1]))
}

/// `Δ_{[k]}` as a complex on `[m]` (labels `k+1..=m` are ghosts).
pub fn simplex_face(m: usize, k: usize) -> Result<SimplicialComplex> {
    if m == 0 || m > crate::vertex_set::MAX_LABEL || k > m {
        return Err(Error::BadM(m));
    }
    SimplicialComplex::simplex(VertexSet::range(m), VertexSet::range(k))
}

/// The `k`-skeleton `Δ^{(k)}_{[m]}`: all `(k+1)`-subsets of `[m]`.
pub fn skeleton(m: usize, k: usize) -> Result<SimplicialComplex> {
    if m == 0 || m > 20 || k >= m {
        return Err(Error::BadM(m));
    }
    let ground = VertexSet::range(m);
    SimplicialComplex::new(
        ground,
        ground.subsets().filter(|s| s.len() == k + 1).collect(),
    )
}

/// Minimal non-faces of `K_m`: `[m-2]`, `{2..m-1}` and `{i, m}` for `2 <= i <= m-1`.
pub fn km_minimal_non_faces(m: usize) -> Vec<VertexSet> {
    let mut mnf = vec![VertexSet::interval(1, m - 2), VertexSet::interval(2, m - 1)];
    mnf.extend((2..m).map(|i| VertexSet::from_labels([i, m])));
    mnf
}

/// The complex `K_m` (`m >= 5`) whose Bier sphere is a weak suspension but not a suspension.
pub fn km(m: usize) -> Result<SimplicialComplex> {
    if !(5..=16).contains(&m) {
        return Err(Error::BadM(m));
    }
    let mnf = km_minimal_non_faces(m);
    let k = SimplicialComplex::from_minimal_non_faces(VertexSet::range(m), &mnf)?;
    let mut want = mnf;
    want.sort_by(VertexSet::cmp_graded);
    assert_eq!(k.minimal_non_faces(), want, "K_{m} minimal non-faces");
    Ok(k)
}
