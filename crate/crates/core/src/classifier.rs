//! Discreteness of the Cayley graph automorphism group.
//!
//! For a finite defining graph the automorphism group of the Cayley graph is
//! non-discrete exactly when some non-trivial symmetry of the defining graph
//! fixes the star of a vertex pointwise. Such a symmetry also yields a good
//! separating set: the link of that vertex.

use serde::Serialize;
use serde_json::{json, Value};

use crate::autgamma::{enumerate_aut, is_weight_preserving, pointwise_stabilizer, GraphAutomorphism};
use crate::defgraph::{DefiningGraph, Vertex, VertexSet};
use crate::error::Result;
use crate::localaction::boundary_of;

/// A good separating set `S`, the side `Γ₁ = S ⊔ (some components of Γ \ S)`
/// and a non-trivial symmetry of `Γ₁` fixing `S`, extended by the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodSeparatingSet {
    pub separating: VertexSet,
    pub side: VertexSet,
    pub alpha: GraphAutomorphism,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub discrete: bool,
    pub witness: Option<(Vertex, GraphAutomorphism)>,
    pub good_separating_set: Option<GoodSeparatingSet>,
    pub aut_order: usize,
}

/// JSON shape of a verdict.
#[derive(Debug, Serialize)]
struct VerdictDocument {
    discrete: bool,
    witness: Value,
    good_separating_set: Value,
    aut_gamma_order: usize,
}

impl Verdict {
    pub fn to_json(&self, g: &DefiningGraph) -> Value {
        let witness = match &self.witness {
            Some((x, alpha)) => json!({ "vertex": g.name(*x), "alpha": alpha.to_json(g) }),
            None => Value::Null,
        };
        let good = match &self.good_separating_set {
            Some(gs) => json!({
                "S": g.format_set(&gs.separating),
                "gamma1": g.format_set(&gs.side),
                "alpha": gs.alpha.to_json(g),
            }),
            None => Value::Null,
        };
        serde_json::to_value(VerdictDocument {
            discrete: self.discrete,
            witness,
            good_separating_set: good,
            aut_gamma_order: self.aut_order,
        })
        .expect("verdict document")
    }
}

/// Least vertex `x` whose star is fixed pointwise by a non-trivial symmetry,
/// together with the least such symmetry.
pub fn star_fixing_witness(g: &DefiningGraph) -> Option<(Vertex, GraphAutomorphism)> {
    g.vertices().find_map(|x| {
        let star = g.star(x).ok()?;
        pointwise_stabilizer(g, &star)
            .into_iter()
            .find(|alpha| !alpha.is_identity())
            .map(|alpha| (x, alpha))
    })
}

/// Good separating set derived from a star-fixing witness `(x, α)`:
/// `S = link(x)` and `Γ₁ = V \ {x}`, the union of `S` with every component of
/// `Γ \ S` other than `{x}`.
pub fn good_separating_set_from_witness(
    g: &DefiningGraph,
    x: Vertex,
    alpha: &GraphAutomorphism,
) -> Result<GoodSeparatingSet> {
    let separating = g.link(x)?;
    let mut side = g.all();
    side.remove(x);
    Ok(GoodSeparatingSet {
        separating,
        side,
        alpha: alpha.clone(),
    })
}

pub fn find_good_separating_set(g: &DefiningGraph) -> Option<GoodSeparatingSet> {
    let (x, alpha) = star_fixing_witness(g)?;
    good_separating_set_from_witness(g, x, &alpha).ok()
}

/// Checks every clause of a good separating set.
///
/// `alpha` is a permutation of all of `V` that must be the identity outside
/// `side`. Besides being a non-trivial weight-preserving permutation of
/// `side` fixing `separating`, its extension by the identity is checked to be
/// weight-preserving on the whole graph.
pub fn verify_good_sep(
    g: &DefiningGraph,
    separating: &VertexSet,
    side: &VertexSet,
    alpha: &GraphAutomorphism,
) -> bool {
    if alpha.len() != g.order() || !separating.is_subset(side) || side.len() >= g.order() {
        return false;
    }
    let Ok(components) = g.connected_components(separating) else {
        return false;
    };
    if components.len() < 2 {
        return false;
    }
    // side \ S must be a non-empty union of components, and not all of them.
    let rest = side.difference(separating);
    let chosen: Vec<&VertexSet> = components.iter().filter(|c| c.is_subset(&rest)).collect();
    let covered: VertexSet = chosen.iter().flat_map(|c| c.iter()).collect();
    if covered != rest || chosen.is_empty() || chosen.len() == components.len() {
        return false;
    }
    let outside = g.all().difference(side);
    if !alpha.fixes_pointwise(&outside) || !alpha.fixes_pointwise(separating) {
        return false;
    }
    if alpha.image_of(side) != *side || alpha.is_identity() {
        return false;
    }
    let on_side = side
        .iter()
        .all(|x| side.iter().all(|y| g.weight(x, y) == g.weight(alpha.apply(x), alpha.apply(y))));
    on_side && is_weight_preserving(g, alpha.images())
}

/// Completes a chosen side `Γ₁` to a good separating set: `S` is the set of
/// vertices of `Γ₁` with a neighbour outside, and `α` the least symmetry
/// passing every clause.
pub fn good_separating_set_for_side(g: &DefiningGraph, side: &VertexSet) -> Option<GoodSeparatingSet> {
    let separating = boundary_of(g, side);
    let fixed = g.all().difference(side).union(&separating);
    let alpha = pointwise_stabilizer(g, &fixed)
        .into_iter()
        .find(|alpha| verify_good_sep(g, &separating, side, alpha))?;
    Some(GoodSeparatingSet {
        separating,
        side: side.clone(),
        alpha,
    })
}

pub fn classify(g: &DefiningGraph) -> Verdict {
    let aut_order = enumerate_aut(g).len();
    let witness = star_fixing_witness(g);
    let good_separating_set = witness
        .as_ref()
        .and_then(|(x, alpha)| good_separating_set_from_witness(g, *x, alpha).ok());
    Verdict {
        discrete: witness.is_none(),
        witness,
        good_separating_set,
        aut_order,
    }
}
