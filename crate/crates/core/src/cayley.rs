//! Finite balls of the labelled Cayley graph.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::defgraph::{GraphDocument, Vertex};
use crate::error::{Error, Result};
use crate::words::{Coxeter, NormalForm};

/// The ball `B(center, radius)` of the right Cayley graph, where `v` and `vx`
/// are joined by an edge labelled `x`.
///
/// Vertices are sorted by distance from the center, then shortlex.
#[derive(Debug, Clone)]
pub struct CayleyBall {
    group: Arc<Coxeter>,
    center: NormalForm,
    radius: usize,
    vertices: Vec<NormalForm>,
    index: HashMap<NormalForm, usize>,
    distance: Vec<usize>,
    // adjacency[v][x] is the neighbour of v along label x, if inside the ball.
    adjacency: Vec<Vec<Option<usize>>>,
    edges: Vec<(usize, usize, Vertex)>,
}

/// JSON export of a ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallDocument {
    pub graph: GraphDocument,
    pub center: String,
    pub radius: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize, String)>,
}

impl BallDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
}

impl CayleyBall {
    pub fn build(group: Arc<Coxeter>, radius: usize, center: NormalForm) -> Result<Self> {
        let cap = group.limits().max_ball;
        let rank = group.rank();
        let mut vertices = vec![center.clone()];
        let mut index = HashMap::from([(center.clone(), 0)]);
        let mut distance = vec![0];
        let mut layer_start = 0;
        let center_inv = group.inverse(&center)?;
        for k in 1..=radius {
            let layer_end = vertices.len();
            let mut layer = Vec::new();
            for v in layer_start..layer_end {
                for x in 0..rank {
                    let w = group.right_multiply(&vertices[v], x)?;
                    if !index.contains_key(&w) {
                        index.insert(w.clone(), usize::MAX);
                        layer.push(w);
                    }
                }
            }
            if vertices.len() + layer.len() > cap {
                return Err(Error::BallCap { cap });
            }
            let mut keyed = layer
                .into_iter()
                .map(|w| Ok((group.multiply(&center_inv, &w)?, w)))
                .collect::<Result<Vec<_>>>()?;
            keyed.sort();
            for (_, w) in keyed {
                index.insert(w.clone(), vertices.len());
                vertices.push(w);
                distance.push(k);
            }
            layer_start = layer_end;
        }

        let mut adjacency = vec![vec![None; rank]; vertices.len()];
        let mut edges = Vec::new();
        for v in 0..vertices.len() {
            for x in 0..rank {
                let w = group.right_multiply(&vertices[v], x)?;
                if let Some(&j) = index.get(&w) {
                    adjacency[v][x] = Some(j);
                    if v < j {
                        edges.push((v, j, x));
                    }
                }
            }
        }
        edges.sort_unstable();

        Ok(CayleyBall {
            group,
            center,
            radius,
            vertices,
            index,
            distance,
            adjacency,
            edges,
        })
    }

    /// Ball around the identity.
    pub fn around_identity(group: Arc<Coxeter>, radius: usize) -> Result<Self> {
        Self::build(group, radius, NormalForm::identity())
    }

    pub fn group(&self) -> &Arc<Coxeter> {
        &self.group
    }

    pub fn center(&self) -> &NormalForm {
        &self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[NormalForm] {
        &self.vertices
    }

    pub fn element(&self, v: usize) -> &NormalForm {
        &self.vertices[v]
    }

    pub fn index_of(&self, w: &NormalForm) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn distance(&self, v: usize) -> usize {
        self.distance[v]
    }

    /// Vertices at distance `< radius`; these have their full neighbourhood.
    pub fn is_interior(&self, v: usize) -> bool {
        self.distance[v] < self.radius
    }

    pub fn edges(&self) -> &[(usize, usize, Vertex)] {
        &self.edges
    }

    /// Neighbour of `v` along label `x`, if it lies in the ball.
    pub fn neighbor(&self, v: usize, x: Vertex) -> Option<usize> {
        self.adjacency[v][x]
    }

    /// `(label, neighbour)` pairs sorted by label.
    pub fn neighbors(&self, v: usize) -> Vec<(Vertex, usize)> {
        self.adjacency[v]
            .iter()
            .enumerate()
            .filter_map(|(x, w)| w.map(|w| (x, w)))
            .collect()
    }

    /// Label of the edge `{u, v}`, if there is one.
    pub fn label_between(&self, u: usize, v: usize) -> Option<Vertex> {
        self.adjacency[u].iter().position(|&w| w == Some(v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].iter().flatten().count()
    }

    /// The relation cycle `v, vx, vxy, ...` of length `2 m(x, y)`, or `None`
    /// when part of it lies outside the ball.
    pub fn relation_cycle(&self, v: usize, x: Vertex, y: Vertex) -> Result<Option<Vec<usize>>> {
        let g = self.group.graph();
        g.check_vertex(x)?;
        g.check_vertex(y)?;
        let m = g
            .m(x, y)
            .filter(|_| x != y)
            .ok_or_else(|| Error::NotAnEdge(g.name(x).into(), g.name(y).into()))?;
        let mut cycle = vec![v];
        let mut cur = v;
        for step in 0..2 * m as usize {
            let label = if step % 2 == 0 { x } else { y };
            match self.neighbor(cur, label) {
                Some(next) => cur = next,
                None => return Ok(None),
            }
            if step + 1 < 2 * m as usize {
                cycle.push(cur);
            }
        }
        debug_assert_eq!(cur, v, "relation cycle must close");
        Ok(Some(cycle))
    }

    /// Word-string of a vertex.
    pub fn name(&self, v: usize) -> String {
        self.group.format(&self.vertices[v])
    }

    pub fn to_document(&self) -> BallDocument {
        let g = self.group.graph();
        BallDocument {
            graph: g.to_document(),
            center: self.group.format(&self.center),
            radius: self.radius,
            vertices: (0..self.len()).map(|v| self.name(v)).collect(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v, x)| (u, v, g.name(x).to_string()))
                .collect(),
        }
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Json => {
                serde_json::to_string_pretty(&self.to_document()).expect("ball document")
            }
            ExportFormat::Dot => self.to_dot(),
        }
    }

    fn to_dot(&self) -> String {
        let g = self.group.graph();
        let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
        let mut out = String::from("graph cayley {\n");
        for v in 0..self.len() {
            let name = self.name(v);
            let label = if name.is_empty() { "ε".to_string() } else { name.clone() };
            let _ = writeln!(out, "  {} [label={}];", quote(&name), quote(&label));
        }
        for &(u, v, x) in &self.edges {
            let _ = writeln!(
                out,
                "  {} -- {} [label={}];",
                quote(&self.name(u)),
                quote(&self.name(v)),
                quote(g.name(x))
            );
        }
        out.push_str("}\n");
        out
    }
}
