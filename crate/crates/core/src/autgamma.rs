//! Weight-preserving symmetries of the defining graph.

use std::collections::BTreeMap;

use crate::defgraph::{DefiningGraph, Vertex, VertexSet};
use crate::error::{Error, Result};

/// A permutation of the generators, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphAutomorphism(Vec<Vertex>);

impl GraphAutomorphism {
    pub fn identity(n: usize) -> Self {
        GraphAutomorphism((0..n).collect())
    }

    /// Validates `images` as a weight-preserving permutation of `g`.
    pub fn new(g: &DefiningGraph, images: Vec<Vertex>) -> Result<Self> {
        if !is_permutation(g.order(), &images) {
            return Err(Error::InvalidPermutation(format!("{images:?}")));
        }
        if !is_weight_preserving(g, &images) {
            return Err(Error::NotWeightPreserving);
        }
        Ok(GraphAutomorphism(images))
    }

    /// Transposition of two generators; only checked as a permutation.
    pub fn swap(n: usize, x: Vertex, y: Vertex) -> Self {
        let mut images: Vec<Vertex> = (0..n).collect();
        images.swap(x, y);
        GraphAutomorphism(images)
    }

    pub fn images(&self) -> &[Vertex] {
        &self.0
    }

    pub fn apply(&self, x: Vertex) -> Vertex {
        self.0[x]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GraphAutomorphism) -> GraphAutomorphism {
        GraphAutomorphism(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn invert(&self) -> GraphAutomorphism {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        GraphAutomorphism(inv)
    }

    pub fn fixes_pointwise(&self, set: &VertexSet) -> bool {
        set.iter().all(|x| self.0[x] == x)
    }

    /// Whether `self` and `other` agree on every vertex of `set`.
    pub fn agrees_on(&self, other: &GraphAutomorphism, set: &VertexSet) -> bool {
        set.iter().all(|x| self.0[x] == other.0[x])
    }

    pub fn moved(&self) -> VertexSet {
        (0..self.0.len()).filter(|&x| self.0[x] != x).collect()
    }

    pub fn image_of(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|x| self.0[x]).collect()
    }

    /// `{vertex: image}` keyed by vertex name.
    pub fn to_map(&self, g: &DefiningGraph) -> BTreeMap<String, String> {
        self.0
            .iter()
            .enumerate()
            .map(|(x, &y)| (g.name(x).to_string(), g.name(y).to_string()))
            .collect()
    }

    pub fn to_json(&self, g: &DefiningGraph) -> serde_json::Value {
        serde_json::to_value(self.to_map(g)).expect("string map")
    }

    /// Reads `{vertex: image}`; vertices not mentioned are fixed. The result
    /// must be a weight-preserving permutation.
    pub fn from_map(g: &DefiningGraph, map: &BTreeMap<String, String>) -> Result<Self> {
        let mut images: Vec<Vertex> = g.vertices().collect();
        for (x, y) in map {
            images[g.vertex(x)?] = g.vertex(y)?;
        }
        Self::new(g, images)
    }

    pub fn from_json(g: &DefiningGraph, text: &str) -> Result<Self> {
        let map: BTreeMap<String, String> = serde_json::from_str(text)?;
        Self::from_map(g, &map)
    }
}

fn is_permutation(n: usize, images: &[Vertex]) -> bool {
    let mut seen = vec![false; n];
    images.len() == n && images.iter().all(|&y| y < n && !std::mem::replace(&mut seen[y], true))
}

/// Whether `images` is a permutation with `m(x, y) = m(p(x), p(y))` for all pairs.
pub fn is_weight_preserving(g: &DefiningGraph, images: &[Vertex]) -> bool {
    is_permutation(g.order(), images)
        && g.vertices()
            .all(|x| g.vertices().all(|y| g.weight(x, y) == g.weight(images[x], images[y])))
}

/// Isomorphism-invariant signature of a vertex: its sorted incident weights.
fn signature(g: &DefiningGraph, x: Vertex) -> Vec<u32> {
    let mut s: Vec<u32> = g.neighbors(x).filter_map(|y| g.m(x, y)).collect();
    s.sort_unstable();
    s
}

/// All automorphisms of `g` fixing every vertex of `fix`, in lexicographic
/// order of their image arrays (so the identity comes first).
pub fn pointwise_stabilizer(g: &DefiningGraph, fix: &VertexSet) -> Vec<GraphAutomorphism> {
    let n = g.order();
    let signatures: Vec<Vec<u32>> = g.vertices().map(|x| signature(g, x)).collect();
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut out = Vec::new();

    fn extend(
        g: &DefiningGraph,
        fix: &VertexSet,
        signatures: &[Vec<u32>],
        x: Vertex,
        images: &mut Vec<Vertex>,
        used: &mut Vec<bool>,
        out: &mut Vec<GraphAutomorphism>,
    ) {
        let n = g.order();
        if x == n {
            out.push(GraphAutomorphism(images.clone()));
            return;
        }
        for y in 0..n {
            if used[y] || signatures[x] != signatures[y] || (fix.contains(x) && x != y) {
                continue;
            }
            // Weights to the already placed vertices, including the diagonal.
            let consistent = (0..x).all(|z| g.weight(x, z) == g.weight(y, images[z]));
            if !consistent {
                continue;
            }
            images[x] = y;
            used[y] = true;
            extend(g, fix, signatures, x + 1, images, used, out);
            used[y] = false;
        }
        images[x] = usize::MAX;
    }

    extend(g, fix, &signatures, 0, &mut images, &mut used, &mut out);
    out
}

/// The full group `Aut(Γ)`, identity first.
pub fn enumerate_aut(g: &DefiningGraph) -> Vec<GraphAutomorphism> {
    pointwise_stabilizer(g, &VertexSet::new())
}
