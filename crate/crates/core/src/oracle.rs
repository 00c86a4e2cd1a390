//! Brute-force ground truth: every automorphism of a finite ball.
//!
//! The search only looks at adjacency. Labels are not invariant under
//! automorphisms of the Cayley graph, so they are never used for pruning.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::cayley::CayleyBall;
use crate::error::{Error, Result};
use crate::localaction::BallAutomorphism;
use crate::words::{Coxeter, NormalForm};

struct Search<'a> {
    ball: &'a CayleyBall,
    fix: &'a BTreeSet<usize>,
    adjacency: Vec<Vec<usize>>,
    degree_signature: Vec<(usize, Vec<usize>)>,
    // distances[k][v]: distance from the k-th fixed vertex to v in the ball graph.
    distances: Vec<Vec<usize>>,
    // Largest earlier vertex with the same open or closed neighbourhood.
    prev_twin: Vec<Option<usize>>,
    images: Vec<usize>,
    preimages: Vec<usize>,
    nodes: u64,
    budget: u64,
}

const UNSET: usize = usize::MAX;

impl Search<'_> {
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(&v)
    }

    fn candidates(&self, v: usize) -> Vec<usize> {
        if self.fix.contains(&v) {
            return vec![v];
        }
        let placed = self.adjacency[v].iter().find(|&&p| self.images[p] != UNSET);
        match placed {
            Some(&p) => self.adjacency[self.images[p]].clone(),
            None => (0..self.ball.len()).collect(),
        }
    }

    fn consistent(&self, v: usize, w: usize) -> bool {
        if self.preimages[w] != UNSET || self.degree_signature[v] != self.degree_signature[w] {
            return false;
        }
        if self.distances.iter().any(|d| d[v] != d[w]) {
            return false;
        }
        // Placed neighbours of v must map to neighbours of w, and placed
        // neighbours of w must come from neighbours of v.
        let forward = self.adjacency[v]
            .iter()
            .all(|&u| self.images[u] == UNSET || self.adjacent(self.images[u], w));
        let backward = self.adjacency[w]
            .iter()
            .all(|&x| self.preimages[x] == UNSET || self.adjacent(self.preimages[x], v));
        forward && backward
    }

    fn place(&mut self, v: usize, w: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::NodeBudget { cap: self.budget });
        }
        self.images[v] = w;
        self.preimages[w] = v;
        Ok(())
    }

    fn unplace(&mut self, v: usize, w: usize) {
        self.images[v] = UNSET;
        self.preimages[w] = UNSET;
    }

    /// Visits the first `prefix` images of every automorphism, once per
    /// distinct prefix. Past the prefix only one completion is looked for.
    fn run(&mut self, v: usize, prefix: usize, visit: &mut dyn FnMut(&[usize])) -> Result<()> {
        if v == prefix {
            if self.completes(v)? {
                visit(&self.images[..prefix]);
            }
            return Ok(());
        }
        for w in self.candidates(v) {
            if !self.consistent(v, w) {
                continue;
            }
            self.place(v, w)?;
            self.run(v + 1, prefix, visit)?;
            self.unplace(v, w);
        }
        Ok(())
    }

    fn completes(&mut self, v: usize) -> Result<bool> {
        if v == self.ball.len() {
            return Ok(true);
        }
        // Swapping two twins is an automorphism fixing everything else, so a
        // completion may be assumed to map twins in increasing order.
        let floor = match self.prev_twin[v] {
            Some(u) if !self.fix.contains(&u) && !self.fix.contains(&v) => self.images[u],
            _ => 0,
        };
        for w in self.candidates(v) {
            if w < floor || !self.consistent(v, w) {
                continue;
            }
            self.place(v, w)?;
            let found = self.completes(v + 1)?;
            self.unplace(v, w);
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn bfs_distances(adjacency: &[Vec<usize>], from: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adjacency.len()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &w in &adjacency[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// For each vertex at or past `from`, the previous vertex past `from` that is
/// a twin of it.
fn twins(adjacency: &[Vec<usize>], from: usize) -> Vec<Option<usize>> {
    let mut last: HashMap<(bool, Vec<usize>), usize> = HashMap::new();
    let mut out = vec![None; adjacency.len()];
    for v in from..adjacency.len() {
        let mut open = adjacency[v].clone();
        open.sort_unstable();
        let mut closed = open.clone();
        closed.push(v);
        closed.sort_unstable();
        let a = last.insert((false, open), v);
        let b = last.insert((true, closed), v);
        out[v] = a.max(b);
    }
    out
}

/// Calls `visit` once for each distinct restriction to the first `prefix`
/// ball vertices of an automorphism of the ball graph fixing `fix` pointwise.
/// With `prefix = ball.len()` every automorphism is visited.
pub fn for_each_restriction(
    ball: &CayleyBall,
    fix: &BTreeSet<usize>,
    prefix: usize,
    mut visit: impl FnMut(&[usize]),
) -> Result<()> {
    let adjacency: Vec<Vec<usize>> = (0..ball.len())
        .map(|v| ball.neighbors(v).into_iter().map(|(_, w)| w).collect())
        .collect();
    let degree_signature = (0..ball.len())
        .map(|v| {
            let mut ds: Vec<usize> = adjacency[v].iter().map(|&w| adjacency[w].len()).collect();
            ds.sort_unstable();
            (adjacency[v].len(), ds)
        })
        .collect();
    let distances = fix.iter().map(|&f| bfs_distances(&adjacency, f)).collect();
    let prev_twin = twins(&adjacency, prefix);
    let mut search = Search {
        ball,
        fix,
        adjacency,
        degree_signature,
        distances,
        prev_twin,
        images: vec![UNSET; ball.len()],
        preimages: vec![UNSET; ball.len()],
        nodes: 0,
        budget: ball.group().limits().max_nodes,
    };
    search.run(0, prefix.min(ball.len()), &mut visit)
}

/// Calls `visit` with the image table of every automorphism of the ball graph
/// fixing `fix` pointwise, without storing them.
pub fn for_each_ball_image(ball: &CayleyBall, fix: &BTreeSet<usize>, visit: impl FnMut(&[usize])) -> Result<()> {
    for_each_restriction(ball, fix, ball.len(), visit)
}

/// Image tables of every automorphism of the ball graph fixing `fix`
/// pointwise, in lexicographic order.
pub fn enumerate_ball_images(ball: &CayleyBall, fix: &BTreeSet<usize>) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_ball_image(ball, fix, |images| out.push(images.to_vec()))?;
    out.sort();
    Ok(out)
}

/// Every automorphism of the finite ball graph fixing `fix` pointwise.
pub fn enumerate_ball_autos(ball: &Arc<CayleyBall>, fix: &BTreeSet<usize>) -> Result<Vec<BallAutomorphism>> {
    Ok(enumerate_ball_images(ball, fix)?
        .into_iter()
        .map(|images| BallAutomorphism::new_unchecked(ball.clone(), ball.clone(), images.into_iter().map(Some).collect()))
        .collect())
}

/// Restrictions to `B(e, n)` of the automorphisms of `B(e, outer)`, optionally
/// fixing `e`. Targets are the outer ball.
pub fn stable_restrictions_with_outer(
    group: &Arc<Coxeter>,
    n: usize,
    outer: usize,
    fix_center: bool,
) -> Result<Vec<BallAutomorphism>> {
    let big = Arc::new(CayleyBall::around_identity(group.clone(), outer.max(n))?);
    let small = Arc::new(CayleyBall::around_identity(group.clone(), n)?);
    let fix = if fix_center { BTreeSet::from([0]) } else { BTreeSet::new() };
    // Concentric balls list their common vertices in the same order.
    let mut restricted = BTreeSet::new();
    for_each_restriction(&big, &fix, small.len(), |images| {
        restricted.insert(images.to_vec());
    })?;
    Ok(restricted
        .into_iter()
        .map(|images| BallAutomorphism::new_unchecked(small.clone(), big.clone(), images.into_iter().map(Some).collect()))
        .collect())
}

/// Finite proxy for the vertex stabilizer: restrictions to `B(e, n)` of the
/// automorphisms of `B(e, n + 1)`.
pub fn stable_restrictions(group: &Arc<Coxeter>, n: usize, fix_center: bool) -> Result<Vec<BallAutomorphism>> {
    stable_restrictions_with_outer(group, n, n + 1, fix_center)
}

/// How a list of constructed maps compares with the oracle's enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossValidation {
    pub oracle_count: usize,
    pub constructed_count: usize,
    pub matched: usize,
    /// Constructed maps absent from the oracle enumeration.
    pub missing: Vec<BTreeMap<String, String>>,
    /// Oracle maps not among the constructed ones.
    pub unmatched_oracle: usize,
}

impl CrossValidation {
    pub fn is_valid(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "oracle_count": self.oracle_count,
            "constructed_count": self.constructed_count,
            "matched": self.matched,
            "missing": self.missing,
            "unmatched_oracle": self.unmatched_oracle,
        })
    }
}

fn align(ball: &CayleyBall, map: &BallAutomorphism) -> Option<Vec<usize>> {
    ball.vertices()
        .iter()
        .map(|w| map.apply(w).and_then(|img| ball.index_of(img)))
        .collect()
}

fn describe(group: &Coxeter, map: &BallAutomorphism) -> BTreeMap<String, String> {
    map.element_map()
        .iter()
        .map(|(k, v)| (group.format(k), group.format(v)))
        .collect()
}

/// Compares constructed maps with an already computed oracle enumeration of
/// `ball`.
pub fn cross_validate_against(ball: &CayleyBall, oracle: &[Vec<usize>], constructed: &[BallAutomorphism]) -> CrossValidation {
    let oracle_set: HashSet<&Vec<usize>> = oracle.iter().collect();
    let mut found = HashSet::new();
    let mut missing = Vec::new();
    for map in constructed {
        match align(ball, map) {
            Some(images) if oracle_set.contains(&images) => {
                found.insert(images);
            }
            _ => missing.push(describe(ball.group(), map)),
        }
    }
    CrossValidation {
        oracle_count: oracle.len(),
        constructed_count: constructed.len(),
        matched: constructed.len() - missing.len(),
        missing,
        unmatched_oracle: oracle.len() - found.len(),
    }
}

/// Checks every constructed map against the oracle enumeration of `ball`.
/// When all constructed maps fix the center the oracle search fixes it too.
pub fn cross_validate(ball: &Arc<CayleyBall>, constructed: &[BallAutomorphism]) -> Result<CrossValidation> {
    let center = NormalForm::identity();
    let center = if ball.center().is_identity() { &center } else { ball.center() };
    let all_fix = constructed.iter().all(|m| m.apply(center) == Some(center));
    let fix = if all_fix { BTreeSet::from([0]) } else { BTreeSet::new() };
    let oracle = enumerate_ball_images(ball, &fix)?;
    Ok(cross_validate_against(ball, &oracle, constructed))
}
