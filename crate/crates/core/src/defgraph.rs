//! Finite weighted defining graphs.
//!
//! A defining graph is a simplicial graph whose edges carry integer weights
//! `m(x, y) >= 2`. Non-adjacent pairs have weight infinity and the diagonal
//! has weight one. Only the weight table is stored; the edge set is read off
//! from it.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::DEFAULT_MAX_WEIGHT;

/// Index of a generator in declaration order.
pub type Vertex = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    Finite(u32),
    Infinite,
}

impl Weight {
    pub fn finite(self) -> Option<u32> {
        match self {
            Weight::Finite(m) => Some(m),
            Weight::Infinite => None,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(m) => write!(f, "{m}"),
            Weight::Infinite => f.write_str("∞"),
        }
    }
}

/// A set of generators, always iterated in declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(BTreeSet<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        self.0.remove(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// A finite weighted simplicial graph `(V, E, m)` defining a Coxeter group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    // Row-major `n * n` table.
    weights: Vec<Weight>,
}

/// JSON form of a graph: `{"vertices": [...], "edges": [[u, v, m], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, u32)>,
}

impl DefiningGraph {
    /// Graph with the given vertices and no edges.
    pub fn edgeless<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut index = HashMap::new();
        let mut owned = Vec::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            let name = name.as_ref().to_string();
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name));
            }
            owned.push(name);
        }
        let n = owned.len();
        let mut weights = vec![Weight::Infinite; n * n];
        for i in 0..n {
            weights[i * n + i] = Weight::Finite(1);
        }
        Ok(DefiningGraph {
            names: owned,
            index,
            weights,
        })
    }

    /// Builds a graph from vertex names and weighted edges.
    ///
    /// Repeating an edge with the same weight is allowed; a conflicting weight
    /// is not.
    pub fn from_edges<S: AsRef<str>>(names: &[S], edges: &[(&str, &str, u32)]) -> Result<Self> {
        let mut g = Self::edgeless(names)?;
        for &(x, y, m) in edges {
            let (x, y) = (g.vertex(x)?, g.vertex(y)?);
            g.set_weight(x, y, m, DEFAULT_MAX_WEIGHT)?;
        }
        Ok(g)
    }

    fn set_weight(&mut self, x: Vertex, y: Vertex, m: u32, max_weight: u32) -> Result<()> {
        let bad = || Error::InvalidWeight {
            x: self.names[x].clone(),
            y: self.names[y].clone(),
            weight: m,
        };
        if x == y || m < 2 || m > max_weight {
            return Err(bad());
        }
        let n = self.order();
        match self.weights[x * n + y] {
            Weight::Finite(old) if old != m => return Err(bad()),
            _ => {}
        }
        self.weights[x * n + y] = Weight::Finite(m);
        self.weights[y * n + x] = Weight::Finite(m);
        Ok(())
    }

    /// Parses the line-based graph format with the default weight cap.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_max_weight(text, DEFAULT_MAX_WEIGHT)
    }

    /// Parses the line-based graph format:
    ///
    /// ```text
    /// # comment
    /// vertex a
    /// vertex b
    /// edge a b 3
    /// ```
    ///
    /// Edges may mention vertices declared later in the file. Errors carry the
    /// 1-based line number of the offending line.
    pub fn parse_with_max_weight(text: &str, max_weight: u32) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse { line, message };
        let mut names: Vec<String> = Vec::new();
        let mut seen = HashMap::new();
        let mut edges: Vec<(usize, String, String, u32)> = Vec::new();

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens.as_slice() {
                ["vertex", name] => {
                    if seen.insert(name.to_string(), line).is_some() {
                        return Err(err(line, format!("duplicate vertex `{name}`")));
                    }
                    names.push(name.to_string());
                }
                ["edge", x, y, m] => {
                    let m: u32 = m
                        .parse()
                        .map_err(|_| err(line, format!("weight `{m}` is not a positive integer")))?;
                    if m < 2 {
                        return Err(err(line, format!("edge weight must be at least 2, got {m}")));
                    }
                    if m > max_weight {
                        return Err(err(line, format!("edge weight {m} exceeds the cap {max_weight}")));
                    }
                    if x == y {
                        return Err(err(line, format!("self-loop on `{x}`")));
                    }
                    edges.push((line, x.to_string(), y.to_string(), m));
                }
                ["vertex", ..] => return Err(err(line, "expected `vertex <name>`".into())),
                ["edge", ..] => return Err(err(line, "expected `edge <u> <v> <m>`".into())),
                [other, ..] => return Err(err(line, format!("unknown directive `{other}`"))),
                [] => unreachable!(),
            }
        }

        let mut g = Self::edgeless(&names)?;
        for (line, x, y, m) in edges {
            let xi = g
                .vertex(&x)
                .map_err(|_| err(line, format!("edge references unknown vertex `{x}`")))?;
            let yi = g
                .vertex(&y)
                .map_err(|_| err(line, format!("edge references unknown vertex `{y}`")))?;
            if let Weight::Finite(old) = g.weight(xi, yi) {
                if old != m {
                    return Err(err(
                        line,
                        format!("conflicting weights {old} and {m} for edge `{x}`-`{y}`"),
                    ));
                }
            }
            g.set_weight(xi, yi, m, max_weight).map_err(|e| err(line, e.to_string()))?;
        }
        Ok(g)
    }

    /// Serializes back to the line-based format. `parse(to_text(g)) == g`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            out.push_str("vertex ");
            out.push_str(name);
            out.push('\n');
        }
        for (x, y, m) in self.edges() {
            out.push_str(&format!("edge {} {} {}\n", self.names[x], self.names[y], m));
        }
        out
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.names.clone(),
            edges: self
                .edges()
                .map(|(x, y, m)| (self.names[x].clone(), self.names[y].clone(), m))
                .collect(),
        }
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self> {
        let edges: Vec<(&str, &str, u32)> = doc
            .edges
            .iter()
            .map(|(x, y, m)| (x.as_str(), y.as_str(), *m))
            .collect();
        Self::from_edges(&doc.vertices, &edges)
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.order()
    }

    pub fn all(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<Vertex> {
        if v < self.order() {
            Ok(v)
        } else {
            Err(Error::VertexIndex(v))
        }
    }

    /// Vertex set from names.
    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names.iter().map(|n| self.vertex(n.as_ref())).collect()
    }

    /// Parses a comma-separated list of vertex names; the empty string is the
    /// empty set.
    pub fn parse_vertex_list(&self, list: &str) -> Result<VertexSet> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| self.vertex(s))
            .collect()
    }

    pub fn format_set(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|v| self.names[v].clone()).collect()
    }

    pub fn weight(&self, x: Vertex, y: Vertex) -> Weight {
        self.weights[x * self.order() + y]
    }

    /// `m(x, y)` when finite.
    pub fn m(&self, x: Vertex, y: Vertex) -> Option<u32> {
        self.weight(x, y).finite()
    }

    pub fn is_edge(&self, x: Vertex, y: Vertex) -> bool {
        x != y && self.m(x, y).is_some()
    }

    /// Edges `(x, y, m)` with `x < y`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, u32)> + '_ {
        let n = self.order();
        (0..n).flat_map(move |x| {
            (x + 1..n).filter_map(move |y| self.m(x, y).map(|m| (x, y, m)))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn neighbors(&self, x: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(move |&y| self.is_edge(x, y))
    }

    pub fn degree(&self, x: Vertex) -> usize {
        self.neighbors(x).count()
    }

    /// `x` together with all of its neighbours.
    pub fn star(&self, x: Vertex) -> Result<VertexSet> {
        self.check_vertex(x)?;
        Ok(std::iter::once(x).chain(self.neighbors(x)).collect())
    }

    /// The neighbours of `x`.
    pub fn link(&self, x: Vertex) -> Result<VertexSet> {
        self.check_vertex(x)?;
        Ok(self.neighbors(x).collect())
    }

    fn check_set(&self, set: &VertexSet) -> Result<()> {
        set.iter().try_for_each(|v| self.check_vertex(v).map(|_| ()))
    }

    /// Connected components of the subgraph induced on `V \ omit`, ordered by
    /// their least vertex.
    pub fn connected_components(&self, omit: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_set(omit)?;
        let mut seen = vec![false; self.order()];
        let mut components = Vec::new();
        for start in self.vertices() {
            if seen[start] || omit.contains(start) {
                continue;
            }
            let mut component = VertexSet::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                component.insert(v);
                for w in self.neighbors(v) {
                    if !seen[w] && !omit.contains(w) {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            components.push(component);
        }
        Ok(components)
    }

    /// Induced subgraph on `vs`, keeping declaration order.
    pub fn induced_subgraph(&self, vs: &VertexSet) -> Result<DefiningGraph> {
        self.check_set(vs)?;
        let keep = vs.to_vec();
        let names: Vec<&str> = keep.iter().map(|&v| self.name(v)).collect();
        let mut sub = Self::edgeless(&names)?;
        let n = keep.len();
        for i in 0..n {
            for j in 0..n {
                sub.weights[i * n + j] = self.weight(keep[i], keep[j]);
            }
        }
        Ok(sub)
    }

    pub fn is_right_angled(&self) -> bool {
        self.edges().all(|(_, _, m)| m == 2)
    }

    /// Complement graph of a right-angled graph; every new edge has weight 2.
    pub fn complement(&self) -> Result<DefiningGraph> {
        if let Some((x, y, m)) = self.edges().find(|&(_, _, m)| m != 2) {
            return Err(Error::NotRightAngled {
                x: self.names[x].clone(),
                y: self.names[y].clone(),
                weight: m,
            });
        }
        let mut out = Self::edgeless(&self.names)?;
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                if x != y && !self.is_edge(x, y) {
                    out.weights[x * n + y] = Weight::Finite(2);
                }
            }
        }
        Ok(out)
    }

    /// Whether removing `s` disconnects the graph (the empty set separates a
    /// disconnected graph). `s` must be a proper subset.
    pub fn is_separating(&self, s: &VertexSet) -> Result<bool> {
        self.check_set(s)?;
        if s.len() >= self.order() {
            return Err(Error::NotProperSubset);
        }
        Ok(self.connected_components(s)?.len() >= 2)
    }

    /// The same graph with vertices listed in a new order: vertex `order[i]`
    /// of `self` becomes vertex `i` of the result.
    pub fn reordered(&self, order: &[Vertex]) -> Result<DefiningGraph> {
        let n = self.order();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
            return Err(Error::InvalidPermutation(format!("{order:?}")));
        }
        let names: Vec<&str> = order.iter().map(|&v| self.name(v)).collect();
        let mut out = Self::edgeless(&names)?;
        for i in 0..n {
            for j in 0..n {
                out.weights[i * n + j] = self.weight(order[i], order[j]);
            }
        }
        Ok(out)
    }
}

impl std::str::FromStr for DefiningGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
