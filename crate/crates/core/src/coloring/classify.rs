//! Which Bier spheres are `(m-1)`-colorable.
//!
//! Two independent deciders:
//! * [`min_colorable_classifier`] tests membership of `K` in the closure of
//!   `{Γ₄, G₄, Γ₆}` under cones and Alexander duals, by generating the closure
//!   level by level and comparing canonical forms;
//! * [`recognize_min_chromatic_type`] strips suspension pairs off `Bier(K)` and
//!   looks at the 1-dimensional residue.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;

use super::is_suspension_with_pair;
use crate::bier::{alexander_dual, BierSphere};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::iso::{are_isomorphic, canonical_form};
use crate::vertex_set::VertexSet;

/// Levels `3..=CLOSURE_CACHE_MAX_M` of the closure are generated explicitly;
/// larger complexes are peeled down to this size through cone apexes.
pub const CLOSURE_CACHE_MAX_M: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Seed {
    Gamma4,
    G4,
    Gamma6,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BuildStep {
    Seed(Seed),
    /// Cone with a fresh apex labeled `m + 1`.
    Cone,
    Dual,
}

/// How a member of the closure is built, and how it maps onto the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinColorableWitness {
    pub steps: Vec<BuildStep>,
    /// `relabel[i - 1]` is the input label of vertex `i` of the built complex.
    pub relabel: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MinColorable {
    MinColorable(MinColorableWitness),
    NotMinColorable,
}

impl MinColorable {
    pub fn is_min_colorable(&self) -> bool {
        matches!(self, MinColorable::MinColorable(_))
    }
}

#[derive(Clone, Debug)]
struct Entry {
    complex: SimplicialComplex,
    steps: Vec<BuildStep>,
}

type Level = BTreeMap<Vec<u32>, Entry>;

struct Closure {
    /// `levels[m - 3]` holds the members on `[m]`, keyed by canonical form.
    levels: Vec<Level>,
}

fn dual_close(level: &mut Level) {
    loop {
        let mut fresh = Vec::new();
        for entry in level.values() {
            let d = alexander_dual(&entry.complex).expect("closure members are not simplices");
            let key = canonical_form(&d).0;
            if !level.contains_key(&key) && !fresh.iter().any(|(k, _)| *k == key) {
                let mut steps = entry.steps.clone();
                steps.push(BuildStep::Dual);
                fresh.push((key, Entry { complex: d, steps }));
            }
        }
        if fresh.is_empty() {
            return;
        }
        level.extend(fresh);
    }
}

impl Closure {
    fn build() -> Self {
        let mut first = Level::new();
        for (seed, k) in [
            (Seed::Gamma4, fixtures::gamma4()),
            (Seed::G4, fixtures::g4()),
            (Seed::Gamma6, fixtures::gamma6()),
        ] {
            first.entry(canonical_form(&k).0).or_insert(Entry {
                complex: k,
                steps: vec![BuildStep::Seed(seed)],
            });
        }
        dual_close(&mut first);
        let mut levels = vec![first];
        for m in 4..=CLOSURE_CACHE_MAX_M {
            let prev = levels.last().expect("level 3 exists");
            let mut next = Level::new();
            for entry in prev.values() {
                let c = entry.complex.cone(m).expect("apex m is fresh");
                let mut steps = entry.steps.clone();
                steps.push(BuildStep::Cone);
                next.entry(canonical_form(&c).0)
                    .or_insert(Entry { complex: c, steps });
            }
            dual_close(&mut next);
            levels.push(next);
        }
        Closure { levels }
    }

    fn get() -> &'static Closure {
        static CLOSURE: OnceLock<Closure> = OnceLock::new();
        CLOSURE.get_or_init(Closure::build)
    }
}

/// Number of closure members (up to relabeling) on `[m]`, for `3 <= m <= CLOSURE_CACHE_MAX_M`.
pub fn closure_size(m: usize) -> Option<usize> {
    (3..=CLOSURE_CACHE_MAX_M)
        .contains(&m)
        .then(|| Closure::get().levels[m - 3].len())
}

/// Decide whether `K` is obtained from `Γ₄`, `G₄` or `Γ₆` by cones and
/// Alexander duals (up to relabeling of `[m]`).
///
/// Above the cached levels, `K` is peeled through a cone apex: a cone over a
/// member is a member, the dual of a cone is a cone over the dual, and
/// deleting different apexes of one cone gives isomorphic complexes.
pub fn min_colorable_classifier(k: &SimplicialComplex) -> Result<MinColorable> {
    let m = k.m();
    if m < 3 {
        return Err(Error::BadM(m));
    }
    if k.ground() != VertexSet::range(m) {
        return Err(Error::NonStandardGround(k.ground()));
    }
    if k.is_full_simplex() {
        return Err(Error::DualOfFullSimplex);
    }
    let mut current = k.clone();
    // old_labels[i - 1]: label in `k` of vertex `i` of `current`.
    let mut old_labels: Vec<usize> = (1..=m).collect();
    let mut peeled = Vec::new();
    while current.m() > CLOSURE_CACHE_MAX_M {
        let Some(apex) = current.cone_apexes().max() else {
            return Ok(MinColorable::NotMinColorable);
        };
        // Move the apex to the last label so that peeling mirrors `Cone`.
        let last = current.m();
        let swapped = current
            .relabel(|v| {
                if v == apex {
                    last
                } else if v == last {
                    apex
                } else {
                    v
                }
            })
            .expect("transposition");
        old_labels.swap(apex - 1, last - 1);
        current = swapped
            .deletion(last)
            .with_ground(VertexSet::range(last - 1))
            .expect("apex removed");
        peeled.push(old_labels.pop().expect("nonempty"));
    }
    let (form, perm) = canonical_form(&current);
    let level = &Closure::get().levels[current.m() - 3];
    let Some(entry) = level.get(&form) else {
        return Ok(MinColorable::NotMinColorable);
    };
    // entry.complex --(perm_e)--> form <--(perm)-- current
    let (_, perm_e) = canonical_form(&entry.complex);
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p - 1] = i + 1;
    }
    let mut relabel: Vec<usize> = (1..=current.m())
        .map(|i| old_labels[inv[perm_e[i - 1] - 1] - 1])
        .collect();
    let mut steps = entry.steps.clone();
    for label in peeled.into_iter().rev() {
        steps.push(BuildStep::Cone);
        relabel.push(label);
    }
    Ok(MinColorable::MinColorable(MinColorableWitness {
        steps,
        relabel,
    }))
}

/// Replay a witness: build the complex from its steps and relabel it.
pub fn replay_witness(w: &MinColorableWitness) -> Result<SimplicialComplex> {
    let mut k: Option<SimplicialComplex> = None;
    for step in &w.steps {
        k = Some(match (step, k) {
            (BuildStep::Seed(Seed::Gamma4), None) => fixtures::gamma4(),
            (BuildStep::Seed(Seed::G4), None) => fixtures::g4(),
            (BuildStep::Seed(Seed::Gamma6), None) => fixtures::gamma6(),
            (BuildStep::Cone, Some(c)) => {
                let apex = c.m() + 1;
                c.cone(apex)?
            }
            (BuildStep::Dual, Some(c)) => alexander_dual(&c)?,
            _ => return Err(Error::Unsupported("malformed build trace".into())),
        });
    }
    let k = k.ok_or_else(|| Error::Unsupported("empty build trace".into()))?;
    k.relabel(|v| w.relabel[v - 1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MinChromaticKind {
    /// `Bier(K)` is the boundary of the cross-polytope, dual to `I^{dim}`.
    Cube {
        dim: usize,
    },
    /// `Bier(K)` is dual to `I^{cube_dim} × P₆`.
    CubeTimesHexagon {
        cube_dim: usize,
    },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChromaticType {
    pub kind: MinChromaticKind,
    /// Suspension pairs removed on the way down, outermost first.
    pub stripped_pairs: Vec<(usize, usize)>,
}

/// Strip suspension pairs until the residue is 1-dimensional, then compare
/// it with `Z₄` and `Z₆`.
pub fn recognize_min_chromatic_type(b: &BierSphere) -> ChromaticType {
    let m = b.m();
    let mut current = b.complex().clone();
    let mut stripped = Vec::new();
    while current.dim() > 1 {
        let v = current.vertices();
        let pair = v.iter().find_map(|x| {
            v.iter()
                .filter(|&y| y > x)
                .find(|&y| is_suspension_with_pair(&current, x, y))
                .map(|y| (x, y))
        });
        let Some((x, y)) = pair else {
            return ChromaticType {
                kind: MinChromaticKind::None,
                stripped_pairs: stripped,
            };
        };
        stripped.push((x, y));
        current = current.full_subcomplex(v.without(x).without(y));
    }
    let kind = match current.dim() {
        0 if current.facets().len() == 2 => MinChromaticKind::Cube { dim: 1 },
        1 => {
            let z4 = fixtures::cycle(4).expect("valid");
            let z6 = fixtures::cycle(6).expect("valid");
            if are_isomorphic(&current, &z4).is_some() {
                MinChromaticKind::Cube { dim: m - 1 }
            } else if are_isomorphic(&current, &z6).is_some() {
                MinChromaticKind::CubeTimesHexagon { cube_dim: m - 3 }
            } else {
                MinChromaticKind::None
            }
        }
        _ => MinChromaticKind::None,
    };
    ChromaticType {
        kind,
        stripped_pairs: stripped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bier::bier;
    use crate::coloring::chromatic_number;

    #[test]
    fn closure_sizes_are_small() {
        // On [3]: Γ₄, its dual (a single vertex), G₄ and Γ₆, up to relabeling.
        assert_eq!(closure_size(3), Some(4));
        for m in 4..=CLOSURE_CACHE_MAX_M {
            assert!(closure_size(m).unwrap() <= 4);
        }
    }

    #[test]
    fn simplex_families_are_min_colorable() {
        for m in 3..=9 {
            let a = fixtures::simplex_face(m, m - 1).unwrap();
            let b = SimplicialComplex::new(
                VertexSet::range(m),
                vec![VertexSet::range(m - 1), VertexSet::range(m - 2).with(m)],
            )
            .unwrap();
            let c = fixtures::simplex_face(m, m - 2).unwrap();
            for k in [a, b, c] {
                let MinColorable::MinColorable(w) = min_colorable_classifier(&k).unwrap() else {
                    panic!("{k} should be min-colorable");
                };
                assert_eq!(replay_witness(&w).unwrap(), k, "trace {w:?}");
            }
        }
    }

    #[test]
    fn km_is_not_min_colorable() {
        for m in 5..=9 {
            let k = fixtures::km(m).unwrap();
            assert_eq!(
                min_colorable_classifier(&k).unwrap(),
                MinColorable::NotMinColorable
            );
            assert_eq!(
                recognize_min_chromatic_type(&bier(&k).unwrap()).kind,
                MinChromaticKind::None
            );
        }
    }

    #[test]
    fn recognized_types() {
        let oct = bier(&fixtures::simplex_face(4, 3).unwrap()).unwrap();
        let t = recognize_min_chromatic_type(&oct);
        assert_eq!(t.kind, MinChromaticKind::Cube { dim: 3 });
        assert_eq!(t.stripped_pairs.len(), 1);

        let cone6 = bier(&fixtures::gamma6().cone(4).unwrap()).unwrap();
        assert_eq!(
            recognize_min_chromatic_type(&cone6).kind,
            MinChromaticKind::CubeTimesHexagon { cube_dim: 1 }
        );
        let z5 = bier(&fixtures::gamma5()).unwrap();
        assert_eq!(
            recognize_min_chromatic_type(&z5).kind,
            MinChromaticKind::None
        );
        assert_eq!(chromatic_number(z5.complex()).unwrap().0, 3);
    }

    #[test]
    fn deep_cones_peel_down() {
        let mut k = fixtures::gamma6();
        for apex in 4..=10 {
            k = k.cone(apex).unwrap();
        }
        let w = match min_colorable_classifier(&k).unwrap() {
            MinColorable::MinColorable(w) => w,
            other => panic!("{other:?}"),
        };
        assert_eq!(replay_witness(&w).unwrap(), k);
        let t = recognize_min_chromatic_type(&bier(&k).unwrap());
        assert_eq!(t.kind, MinChromaticKind::CubeTimesHexagon { cube_dim: 7 });
    }
}
