//! Browser bindings for the demo page in `www/`. Every function takes the
//! defining graph as text in the `.graph` format and returns JSON.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use coxcay::classifier::{classify as classify_graph, find_good_separating_set};
use coxcay::localaction::{coset_keys_in_ball, eligible_coset_keys, synthesize};
use coxcay::{CayleyBall, Configuration, Coxeter, DefiningGraph, Limits, NormalForm};

/// Balls larger than this are refused; the page draws every vertex.
const MAX_DEMO_BALL: usize = 2000;

fn graph(text: &str) -> Result<DefiningGraph, String> {
    DefiningGraph::parse(text).map_err(|e| e.to_string())
}

fn ball_of(g: DefiningGraph, radius: usize) -> Result<Arc<CayleyBall>, String> {
    let limits = Limits {
        max_ball: MAX_DEMO_BALL,
        ..Limits::default()
    };
    let group = Arc::new(Coxeter::with_limits(g, limits));
    CayleyBall::around_identity(group, radius)
        .map(Arc::new)
        .map_err(|e| e.to_string())
}

fn layout(b: &CayleyBall) -> Value {
    let vertices: Vec<Value> = (0..b.len())
        .map(|v| json!({ "name": b.name(v), "distance": b.distance(v) }))
        .collect();
    let g = b.group().graph();
    let edges: Vec<Value> = b
        .edges()
        .iter()
        .map(|&(u, v, x)| json!({ "source": u, "target": v, "label": g.name(x) }))
        .collect();
    json!({ "vertices": vertices, "edges": edges, "radius": b.radius() })
}

/// Verdict for the graph, as the `classify` command prints it.
#[wasm_bindgen]
pub fn classify(text: &str) -> Result<String, String> {
    let g = graph(text)?;
    Ok(classify_graph(&g).to_json(&g).to_string())
}

/// Vertices and labelled edges of `B(e, radius)`.
#[wasm_bindgen]
pub fn ball(text: &str, radius: usize) -> Result<String, String> {
    let b = ball_of(graph(text)?, radius)?;
    Ok(layout(&b).to_string())
}

/// Synthesizes the coset configuration that swaps on the cosets with the
/// given keys (comma-separated words, `ε` for the identity).
///
/// The side is the one of the graph's own good separating set. The result
/// holds the ball, the image of every vertex, the vertices that move, and
/// the coset keys that can be toggled.
#[wasm_bindgen]
pub fn coset_highlight(text: &str, radius: usize, keys: &str) -> Result<String, String> {
    let g = graph(text)?;
    let gs = find_good_separating_set(&g).ok_or("the Cayley graph has a discrete automorphism group: no good separating set")?;
    let b = ball_of(g.clone(), radius)?;
    let group = b.group().clone();
    let chi: BTreeSet<NormalForm> = keys
        .split(',')
        .map(str::trim)
        .filter(|k| !k.is_empty())
        .map(|k| group.parse_element(k))
        .collect::<coxcay::Result<_>>()
        .map_err(|e| e.to_string())?;
    let cfg = Configuration::coset(b.clone(), &gs.side, &gs.alpha, &chi).map_err(|e| e.to_string())?;
    let alpha = synthesize(&cfg).map_err(|e| e.to_string())?;
    let images: Vec<Option<usize>> = alpha.images().to_vec();
    let moved: Vec<usize> = (0..b.len()).filter(|&v| images[v] != Some(v)).collect();
    let fmt = |ks: Vec<NormalForm>| -> Vec<String> { ks.iter().map(|k| group.format(k)).collect() };
    let all_keys = coset_keys_in_ball(&b, &gs.side).map_err(|e| e.to_string())?;
    let eligible = eligible_coset_keys(&b, &gs.side).map_err(|e| e.to_string())?;
    Ok(json!({
        "ball": layout(&b),
        "images": images,
        "moved": moved,
        "gamma1": g.format_set(&gs.side),
        "S": g.format_set(&gs.separating),
        "nu": gs.alpha.to_json(&g),
        "keys": fmt(all_keys),
        "eligible_keys": fmt(eligible),
        "chosen": fmt(chi.into_iter().collect()),
    })
    .to_string())
}
