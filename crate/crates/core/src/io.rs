//! JSON, DOT and OFF text formats.
//!
//! A complex is `{"m": M, "facets": [[...], ...]}` with 1-based labels on
//! `[M]`; `[[]]` is `{∅}`. An optional `"ground"` list replaces `[M]`, and
//! Bier spheres carry `"base_m"` so that labels above it print as primes.

use std::fmt::Write as _;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::bier::BierSphere;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::{VertexSet, MAX_LABEL};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexJson {
    m: usize,
    facets: Vec<Vec<usize>>,
    #[serde(default)]
    ground: Option<Vec<usize>>,
    #[serde(default)]
    base_m: Option<usize>,
}

/// A parsed complex plus what the loader noticed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loaded {
    pub complex: SimplicialComplex,
    /// Generators contained in another generator.
    pub dropped: Vec<VertexSet>,
    pub base_m: Option<usize>,
}

fn label_set(labels: &[usize], what: &str, m: usize) -> Result<VertexSet> {
    let mut s = VertexSet::EMPTY;
    for &v in labels {
        if v == 0 || v > m {
            return Err(Error::Input(format!("{what}: label {v} outside 1..={m}")));
        }
        if s.contains(v) {
            return Err(Error::Input(format!("{what}: label {v} repeated")));
        }
        s = s.with(v);
    }
    Ok(s)
}

pub fn parse_complex(text: &str) -> Result<Loaded> {
    let raw: ComplexJson = serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("line {} column {}: {e}", e.line(), e.column())))?;
    if raw.m > MAX_LABEL {
        return Err(Error::Input(format!(
            "field m: {} exceeds {MAX_LABEL}",
            raw.m
        )));
    }
    let ground = match &raw.ground {
        Some(g) => label_set(g, "field ground", MAX_LABEL)?,
        None => VertexSet::range(raw.m),
    };
    if raw.facets.is_empty() {
        return Err(Error::Input(
            "field facets: empty family; write [[]] for the complex {∅}".into(),
        ));
    }
    let limit = ground.max().unwrap_or(0).max(raw.m);
    let gens = raw
        .facets
        .iter()
        .enumerate()
        .map(|(i, f)| label_set(f, &format!("field facets[{i}]"), limit))
        .collect::<Result<Vec<_>>>()?;
    let (complex, dropped) = SimplicialComplex::new_reporting(ground, gens)
        .map_err(|e| Error::Input(format!("field facets: {e}")))?;
    Ok(Loaded {
        complex,
        dropped,
        base_m: raw.base_m,
    })
}

fn facet_lists(k: &SimplicialComplex) -> Vec<Vec<usize>> {
    k.facets().iter().map(|f| f.to_vec()).collect()
}

/// Canonical JSON: facets by (cardinality, lex), labels ascending.
pub fn complex_to_json(k: &SimplicialComplex) -> Value {
    let m = k.ground().max().unwrap_or(0);
    let mut v = json!({ "m": m, "facets": facet_lists(k) });
    if k.ground() != VertexSet::range(m) {
        v["ground"] = json!(k.ground().to_vec());
    }
    v
}

pub fn bier_to_json(b: &BierSphere) -> Value {
    json!({
        "m": 2 * b.m(),
        "base_m": b.m(),
        "facets": facet_lists(b.complex()),
    })
}

/// `i` or `i'` for labels of a Bier sphere over `[base_m]`.
pub fn display_label(v: usize, base_m: Option<usize>) -> String {
    match base_m {
        Some(m) if v > m => format!("{}'", v - m),
        _ => v.to_string(),
    }
}

/// The 1-skeleton in Graphviz format.
pub fn complex_to_dot(k: &SimplicialComplex, base_m: Option<usize>) -> String {
    let g = Graph::skeleton_of(k);
    let name = |v: usize| format!("\"{}\"", display_label(v, base_m));
    let mut out = String::from("graph K {\n");
    for v in g.vertices() {
        writeln!(out, "  {};", name(v)).unwrap();
    }
    for v in g.vertices() {
        for w in g.neighbors(v).iter().filter(|&w| w > v) {
            writeln!(out, "  {} -- {};", name(v), name(w)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
