//! Exhaustive enumeration of complexes on `[m]` and machine checks of the
//! theorems over them.
//!
//! Complexes are generated as down-sets of `2^[m]`: subsets are decided in
//! graded order and a set may only be included when all its codimension-one
//! subsets are. Work is split into the subtrees below a fixed-depth prefix of
//! that decision tree and results are folded back in prefix order, so reports
//! do not depend on the number of workers.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bier::{alexander_dual, bier, bier_symmetry_witness, check_sphere, BierSphere};
use crate::buchstaber::{
    buchstaber_formula, phi_map, s_p_oracle, validate_char_map, OracleOutcome, DEFAULT_NODE_BUDGET,
};
use crate::chordal::{classify_chordal_bier, is_chordal, realize_stacked, ChordalBier};
use crate::coloring::{
    chi_bier_bounds, chromatic_number, min_colorable_classifier, recognize_min_chromatic_type,
    replay_witness, suspension_cross_check, suspension_structure, MinChromaticKind, MinColorable,
    SuspensionKind,
};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::iso::canonical_form;
use crate::vertex_set::VertexSet;

pub const MAX_ENUM_M: usize = 6;

/// Largest `m` each theorem runs on in full by default; above it a run samples
/// [`DEFAULT_SAMPLE`] complexes unless `full` or `sample` is set.
pub const FULL_RUN_MAX_M: usize = 5;
/// Largest `m` for the Buchstaber check with the exhaustive oracle.
pub const ORACLE_MAX_M: usize = 4;

pub const DEFAULT_SAMPLE: usize = 100_000;

/// Down-set enumeration state for one `m`.
#[derive(Clone, Debug)]
struct Space {
    m: usize,
    /// Nonempty subsets of `[m]` (as bit masks) in graded order.
    order: Vec<u32>,
}

impl Space {
    fn new(m: usize) -> Result<Self> {
        if !(2..=MAX_ENUM_M).contains(&m) {
            return Err(Error::MTooLarge(m));
        }
        let mut order: Vec<VertexSet> = VertexSet::range(m)
            .subsets()
            .filter(|s| !s.is_empty())
            .collect();
        order.sort_by(VertexSet::cmp_graded);
        Ok(Space {
            m,
            order: order.into_iter().map(VertexSet::bits).collect(),
        })
    }

    fn full(&self) -> u64 {
        if self.m == 6 {
            u64::MAX
        } else {
            (1u64 << (1 << self.m)) - 1
        }
    }

    fn includable(family: u64, s: u32) -> bool {
        let mut bits = s;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            if family >> (s & !low) & 1 == 0 {
                return false;
            }
            bits &= bits - 1;
        }
        true
    }

    /// Visit every down-set below `family` with decisions from `pos` on; the
    /// visitor returns `false` to stop.
    fn walk(&self, pos: usize, family: u64, visit: &mut dyn FnMut(u64) -> bool) -> bool {
        if pos == self.order.len() {
            return family == self.full() || visit(family);
        }
        let s = self.order[pos];
        if !self.walk(pos + 1, family, visit) {
            return false;
        }
        if Self::includable(family, s) {
            return self.walk(pos + 1, family | 1 << s, visit);
        }
        true
    }

    /// All partial families after deciding the first `depth` sets, in walk order.
    fn prefixes(&self, depth: usize) -> Vec<u64> {
        let depth = depth.min(self.order.len());
        let mut out = Vec::new();
        let mut stack = vec![(0usize, 1u64)];
        while let Some((pos, family)) = stack.pop() {
            if pos == depth {
                out.push(family);
                continue;
            }
            let s = self.order[pos];
            if Self::includable(family, s) {
                stack.push((pos + 1, family | 1 << s));
            }
            stack.push((pos + 1, family));
        }
        out
    }

    fn depth(&self) -> usize {
        (self.m + 4).min(self.order.len())
    }

    fn complex(&self, family: u64) -> SimplicialComplex {
        let mut facets = Vec::new();
        for s in 0u32..1 << self.m {
            if family >> s & 1 == 1
                && (0..self.m).all(|i| s >> i & 1 == 1 || family >> (s | 1 << i) & 1 == 0)
            {
                facets.push(VertexSet::from_bits(s));
            }
        }
        SimplicialComplex::new(VertexSet::range(self.m), facets).expect("down-sets are complexes")
    }
}

/// Every complex `K ≠ Δ_[m]` on `[m]` (including `{∅}`), in a fixed order.
pub fn enumerate_complexes(m: usize) -> Result<Vec<SimplicialComplex>> {
    let space = Space::new(m)?;
    let mut out = Vec::new();
    space.walk(0, 1, &mut |f| {
        out.push(space.complex(f));
        true
    });
    Ok(out)
}

/// Number of complexes `enumerate_complexes(m)` yields, without building them.
pub fn count_complexes(m: usize) -> Result<u64> {
    let space = Space::new(m)?;
    let counts: Vec<u64> = space
        .prefixes(space.depth())
        .into_par_iter()
        .map(|p| {
            let mut n = 0;
            space.walk(space.depth(), p, &mut |_| {
                n += 1;
                true
            });
            n
        })
        .collect();
    Ok(counts.iter().sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremId {
    Sphere,
    Chromatic,
    Buchstaber,
    Chordal,
    Symmetry,
    Suspension,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::Sphere,
        TheoremId::Chromatic,
        TheoremId::Buchstaber,
        TheoremId::Chordal,
        TheoremId::Symmetry,
        TheoremId::Suspension,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Sphere => "sphere",
            TheoremId::Chromatic => "chromatic",
            TheoremId::Buchstaber => "buchstaber",
            TheoremId::Chordal => "chordal",
            TheoremId::Symmetry => "symmetry",
            TheoremId::Suspension => "suspension",
        }
    }
}

impl std::str::FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown theorem '{s}'"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub up_to_iso: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Check a seeded uniform subsample of this size instead of everything.
    pub sample: Option<usize>,
    pub seed: u64,
    /// Check the whole space at `m = 6` instead of the default sample.
    pub full: bool,
    /// Run the exhaustive `s_p` oracle in the Buchstaber check.
    pub oracle: bool,
    pub p: u64,
    pub budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            up_to_iso: false,
            jobs: None,
            sample: None,
            seed: 0,
            full: false,
            oracle: false,
            p: 2,
            budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub facets: Vec<VertexSet>,
    pub diagnostic: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// No failures, but some checks hit the oracle budget.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleInfo {
    pub size: usize,
    pub seed: u64,
    pub population: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub m: usize,
    pub checked: u64,
    pub up_to_iso: bool,
    pub sample: Option<SampleInfo>,
    pub oracle: Option<u64>,
    pub status: Status,
    pub skipped: u64,
    pub failures: Vec<Failure>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

enum Verdict {
    Ok,
    Skipped,
    Fail(String),
}

fn fail_if(problems: Vec<String>) -> Verdict {
    if problems.is_empty() {
        Verdict::Ok
    } else {
        Verdict::Fail(problems.join("; "))
    }
}

fn chi(k: &SimplicialComplex) -> usize {
    chromatic_number(k).map_or(0, |(c, _)| c)
}

fn check_sphere_theorem(b: &BierSphere) -> Verdict {
    fail_if(check_sphere(b).failures)
}

fn check_chromatic(k: &SimplicialComplex, b: &BierSphere) -> Result<Verdict> {
    let m = b.m();
    let mut problems = Vec::new();
    let c = chi(b.complex());
    if c + 1 < m || c > m {
        problems.push(format!("χ(Bier) = {c} outside [m-1, m]"));
    }
    let bounds = chi_bier_bounds(k)?;
    if c < bounds.lower || c > bounds.upper {
        problems.push(format!(
            "χ(Bier) = {c} outside bounds {}..={}",
            bounds.lower, bounds.upper
        ));
    }
    let min = c + 1 == m;
    let kind = recognize_min_chromatic_type(b).kind;
    if min != (kind != MinChromaticKind::None) {
        problems.push(format!("χ = {c} but recognized type {kind:?}"));
    }
    if m >= 3 {
        match min_colorable_classifier(k)? {
            MinColorable::MinColorable(w) => {
                if !min {
                    problems.push(format!("classifier says min-colorable, χ = {c}"));
                }
                if replay_witness(&w)? != *k {
                    problems.push(format!("build trace {:?} does not rebuild K", w.steps));
                }
            }
            MinColorable::NotMinColorable => {
                if min {
                    problems.push(format!("classifier says not min-colorable, χ = {c}"));
                }
            }
        }
    }
    let st = suspension_structure(b);
    if st.kind == SuspensionKind::WeakSuspensionOnly && c != m {
        problems.push(format!("weak suspension but not a suspension, yet χ = {c}"));
    }
    if min
        && m >= 4
        && k.vertices().len() == m
        && b.dual().vertices().len() == m
        && st.kind == SuspensionKind::NotWeakSuspension
    {
        problems.push("χ = m-1 with no ghosts on either side but not a weak suspension".into());
    }
    Ok(fail_if(problems))
}

fn check_suspension(k: &SimplicialComplex, b: &BierSphere) -> Result<Verdict> {
    let m = b.m();
    let mut problems = suspension_cross_check(b);
    let c = chi(b.complex());
    for (x, y) in suspension_structure(b).pairs {
        let rest = b.complex().vertices().without(x).without(y);
        let c_rest = chi(&b.complex().full_subcomplex(rest));
        if c != c_rest + 1 {
            problems.push(format!(
                "weak suspension pair ({x},{y}): χ = {c}, χ(base) = {c_rest}"
            ));
        }
    }
    if m >= 3 {
        for i in k.vertices() {
            let is_cone = k.is_cone_with_apex(i);
            // L = K restricted to [m] ∖ i, on [m - 1].
            let keep = VertexSet::range(m).without(i);
            let squeeze = |v: usize| if v > i { v - 1 } else { v };
            let l = k
                .full_subcomplex(keep)
                .with_ground(keep)?
                .relabel(squeeze)?;
            let matches = if l.is_full_simplex() {
                false
            } else {
                let bl = bier(&l)?;
                let keep2 = keep.union(keep.shifted(m));
                let squeeze2 = |v: usize| {
                    if v > m {
                        squeeze(v - m) + m - 1
                    } else {
                        squeeze(v)
                    }
                };
                let restricted = b
                    .complex()
                    .full_subcomplex(keep2)
                    .with_ground(keep2)?
                    .relabel(squeeze2)?;
                restricted == *bl.complex()
            };
            if is_cone != matches {
                problems.push(format!(
                    "apex {i}: cone {is_cone}, Bier(L) equals the restriction {matches}"
                ));
            }
        }
    }
    Ok(fail_if(problems))
}

fn check_buchstaber(
    k: &SimplicialComplex,
    b: &BierSphere,
    opts: &VerifyOptions,
) -> Result<Verdict> {
    let m = b.m();
    let mut problems = Vec::new();
    let value = buchstaber_formula(k)?;
    let f0 = b.complex().vertices().len();
    if value + m - 1 != f0 {
        problems.push(format!(
            "formula {value} but f₀(Bier) - (m-1) = {}",
            f0 + 1 - m
        ));
    }
    let phi = phi_map(b);
    if !validate_char_map(b.complex(), &phi)?.valid {
        problems.push("φ invalid over ℤ".into());
    }
    for p in [2, 3, 5] {
        if !validate_char_map(b.complex(), &phi.reduce(p)?)?.valid {
            problems.push(format!("φ invalid over ℤ_{p}"));
        }
    }
    let c = chi(b.complex());
    if f0 < c || f0 - c > value {
        problems.push(format!(
            "f₀ - χ = {} exceeds formula {value}",
            f0 as i64 - c as i64
        ));
    }
    if opts.oracle {
        match s_p_oracle(b.complex(), opts.p, opts.budget)? {
            OracleOutcome::Exact { value: s, .. } if s != value => {
                problems.push(format!("oracle s_{} = {s}, formula {value}", opts.p));
            }
            OracleOutcome::Exact { .. } => {}
            OracleOutcome::Skipped { .. } if problems.is_empty() => return Ok(Verdict::Skipped),
            OracleOutcome::Skipped { .. } => {}
        }
    }
    Ok(fail_if(problems))
}

fn check_chordal(k: &SimplicialComplex, b: &BierSphere) -> Result<Verdict> {
    let m = b.m();
    let mut problems = Vec::new();
    let actual = is_chordal(b.complex())?.chordal;
    let class = classify_chordal_bier(k)?;
    if actual != class.is_chordal() {
        problems.push(format!(
            "1-skeleton chordal {actual}, classification {class:?}"
        ));
    }
    if m >= 4 {
        let edgeless = |c: &SimplicialComplex| c.facets().iter().all(|f| f.len() <= 1);
        let predicted = edgeless(k) || edgeless(b.dual());
        if predicted != actual {
            problems.push(format!(
                "1-skeleton chordal {actual}, edgeless side {predicted}"
            ));
        }
    }
    if let ChordalBier::Chordal { k: steps, .. } = class {
        match realize_stacked(k) {
            Ok(r) => {
                if !r.is_convex() || r.facets.as_slice() != b.complex().facets() {
                    problems.push("realization check failed".into());
                }
                if r.vertices.len() != m + steps || r.k() != steps {
                    problems.push(format!(
                        "realization has {} vertices, k = {steps}",
                        r.vertices.len()
                    ));
                }
            }
            Err(e) => problems.push(format!("realization: {e}")),
        }
    }
    Ok(fail_if(problems))
}

fn check_symmetry(k: &SimplicialComplex) -> Result<Verdict> {
    let mut problems = Vec::new();
    if !bier_symmetry_witness(k)?.verified {
        problems.push("i ↔ i' is not an isomorphism Bier(K) → Bier(K^∨)".into());
    }
    if alexander_dual(&alexander_dual(k)?)? != *k {
        problems.push("K^∨∨ ≠ K".into());
    }
    Ok(fail_if(problems))
}

fn check_one(id: TheoremId, k: &SimplicialComplex, opts: &VerifyOptions) -> Verdict {
    let run = || -> Result<Verdict> {
        let b = bier(k)?;
        match id {
            TheoremId::Sphere => Ok(check_sphere_theorem(&b)),
            TheoremId::Chromatic => check_chromatic(k, &b),
            TheoremId::Buchstaber => check_buchstaber(k, &b, opts),
            TheoremId::Chordal => check_chordal(k, &b),
            TheoremId::Symmetry => check_symmetry(k),
            TheoremId::Suspension => check_suspension(k, &b),
        }
    };
    run().unwrap_or_else(|e| Verdict::Fail(format!("error: {e}")))
}

#[derive(Default)]
struct Tally {
    checked: u64,
    skipped: u64,
    failures: Vec<Failure>,
}

impl Tally {
    fn record(&mut self, k: &SimplicialComplex, v: Verdict) {
        self.checked += 1;
        match v {
            Verdict::Ok => {}
            Verdict::Skipped => self.skipped += 1,
            Verdict::Fail(diagnostic) => self.failures.push(Failure {
                facets: k.facets().to_vec(),
                diagnostic,
            }),
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.failures.extend(other.failures);
        self
    }
}

/// Check in range for the theorem and options.
fn admissible(id: TheoremId, m: usize, opts: &VerifyOptions) -> Result<()> {
    if !(2..=MAX_ENUM_M).contains(&m) {
        return Err(Error::MTooLarge(m));
    }
    if id == TheoremId::Buchstaber && opts.oracle {
        if m > ORACLE_MAX_M {
            return Err(Error::Unsupported(format!(
                "buchstaber with the oracle at m = {m} (limit {ORACLE_MAX_M})"
            )));
        }
        if opts.p != 2 && opts.p != 3 {
            return Err(Error::BadModulus(opts.p));
        }
    }
    Ok(())
}

/// Run one theorem over all (or a seeded sample of the) complexes on `[m]`.
pub fn verify_theorem(id: TheoremId, m: usize, opts: &VerifyOptions) -> Result<TheoremReport> {
    admissible(id, m, opts)?;
    let mut opts = opts.clone();
    if m > FULL_RUN_MAX_M && opts.sample.is_none() && !opts.full {
        opts.sample = Some(DEFAULT_SAMPLE);
    }
    let opts = &opts;
    match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?
            .install(|| run_verify(id, m, opts)),
        None => run_verify(id, m, opts),
    }
}

fn run_verify(id: TheoremId, m: usize, opts: &VerifyOptions) -> Result<TheoremReport> {
    let space = Space::new(m)?;
    let depth = space.depth();
    let prefixes = space.prefixes(depth);

    // Per-subtree lists of selected leaf offsets (`None`: every leaf).
    let (selection, sample): (Vec<Option<Vec<u64>>>, Option<SampleInfo>) = match opts.sample {
        None => (vec![None; prefixes.len()], None),
        Some(size) => {
            let counts: Vec<u64> = prefixes
                .par_iter()
                .map(|&p| {
                    let mut n = 0;
                    space.walk(depth, p, &mut |_| {
                        n += 1;
                        true
                    });
                    n
                })
                .collect();
            let total: u64 = counts.iter().sum();
            let size = size.min(total as usize);
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let picked: BTreeSet<u64> = rand::seq::index::sample(&mut rng, total as usize, size)
                .into_iter()
                .map(|i| i as u64)
                .collect();
            let mut start = 0;
            let mut sel = Vec::with_capacity(counts.len());
            for &c in &counts {
                sel.push(Some(
                    picked.range(start..start + c).map(|i| i - start).collect(),
                ));
                start += c;
            }
            (
                sel,
                Some(SampleInfo {
                    size,
                    seed: opts.seed,
                    population: total,
                }),
            )
        }
    };

    // With dedup, representatives are the first complexes of each class in
    // enumeration order, so collect them before checking.
    let tally = if opts.up_to_iso {
        let leaves: Vec<Vec<SimplicialComplex>> = prefixes
            .par_iter()
            .zip(&selection)
            .map(|(&p, sel)| collect_leaves(&space, depth, p, sel.as_deref()))
            .collect();
        let mut seen = std::collections::HashSet::new();
        let reps: Vec<SimplicialComplex> = leaves
            .into_iter()
            .flatten()
            .filter(|k| seen.insert(canonical_form(k).0))
            .collect();
        reps.par_iter()
            .map(|k| {
                let mut t = Tally::default();
                t.record(k, check_one(id, k, opts));
                t
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Tally::default(), Tally::merge)
    } else {
        prefixes
            .par_iter()
            .zip(&selection)
            .map(|(&p, sel)| {
                let mut t = Tally::default();
                for k in collect_leaves(&space, depth, p, sel.as_deref()) {
                    let v = check_one(id, &k, opts);
                    t.record(&k, v);
                }
                t
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Tally::default(), Tally::merge)
    };

    let status = if !tally.failures.is_empty() {
        Status::Fail
    } else if tally.skipped > 0 {
        Status::Skipped
    } else {
        Status::Pass
    };
    Ok(TheoremReport {
        theorem: id,
        m,
        checked: tally.checked,
        up_to_iso: opts.up_to_iso,
        sample,
        oracle: (id == TheoremId::Buchstaber && opts.oracle).then_some(opts.p),
        status,
        skipped: tally.skipped,
        failures: tally.failures,
    })
}

fn collect_leaves(
    space: &Space,
    depth: usize,
    prefix: u64,
    selection: Option<&[u64]>,
) -> Vec<SimplicialComplex> {
    let mut out = Vec::new();
    match selection {
        None => {
            space.walk(depth, prefix, &mut |f| {
                out.push(space.complex(f));
                true
            });
        }
        Some([]) => {}
        Some(sel) => {
            let mut idx = 0u64;
            let mut next = 0usize;
            space.walk(depth, prefix, &mut |f| {
                if sel[next] == idx {
                    out.push(space.complex(f));
                    next += 1;
                }
                idx += 1;
                next < sel.len()
            });
        }
    }
    out
}
