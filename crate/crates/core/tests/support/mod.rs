//! Independent oracles for the integration tests. Nothing here goes through
//! the word engine: group elements are matrices of the geometric
//! representation, which is faithful for every Coxeter group.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::f64::consts::PI;

use coxcay::{DefiningGraph, VertexSet, Weight};

pub type Key = Vec<i64>;

/// The geometric representation: generator `s` acts as the reflection
/// `v ↦ v - 2 B(e_s, v) e_s` with `B(e_s, e_t) = -cos(π / m(s, t))`.
pub struct Tits {
    pub rank: usize,
    reflections: Vec<Vec<f64>>,
}

impl Tits {
    pub fn new(g: &DefiningGraph) -> Self {
        let n = g.order();
        let bilinear = |s: usize, t: usize| -> f64 {
            if s == t {
                return 1.0;
            }
            match g.weight(s, t) {
                Weight::Infinite => -1.0,
                Weight::Finite(m) => -(PI / m as f64).cos(),
            }
        };
        let reflections = (0..n)
            .map(|s| {
                let mut r = identity(n);
                for t in 0..n {
                    r[s * n + t] -= 2.0 * bilinear(s, t);
                }
                r
            })
            .collect();
        Tits { rank: n, reflections }
    }

    pub fn identity(&self) -> Vec<f64> {
        identity(self.rank)
    }

    /// `m · S_x`.
    pub fn times(&self, m: &[f64], x: usize) -> Vec<f64> {
        let n = self.rank;
        let r = &self.reflections[x];
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = m[i * n + k];
                if a != 0.0 {
                    for j in 0..n {
                        out[i * n + j] += a * r[k * n + j];
                    }
                }
            }
        }
        out
    }

    pub fn word(&self, letters: &[usize]) -> Vec<f64> {
        letters.iter().fold(self.identity(), |m, &x| self.times(&m, x))
    }

    pub fn key(m: &[f64]) -> Key {
        m.iter().map(|a| (a * 1e6).round() as i64).collect()
    }
}

fn identity(n: usize) -> Vec<f64> {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    m
}

/// Ball of the Cayley graph found by breadth-first search over matrices.
pub struct NaiveBall {
    pub keys: Vec<Key>,
    pub distance: Vec<usize>,
    /// `neighbor[v][x]`, when inside the ball.
    pub neighbor: Vec<Vec<Option<usize>>>,
    pub index: HashMap<Key, usize>,
}

impl NaiveBall {
    pub fn new(g: &DefiningGraph, radius: usize) -> Self {
        let tits = Tits::new(g);
        let n = g.order();
        let start = tits.identity();
        let mut keys = vec![Tits::key(&start)];
        let mut mats = vec![start];
        let mut distance = vec![0];
        let mut index = HashMap::from([(keys[0].clone(), 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            if distance[u] == radius {
                continue;
            }
            for x in 0..n {
                let m = tits.times(&mats[u], x);
                let k = Tits::key(&m);
                if !index.contains_key(&k) {
                    index.insert(k.clone(), keys.len());
                    queue.push_back(keys.len());
                    keys.push(k);
                    mats.push(m);
                    distance.push(distance[u] + 1);
                }
            }
        }
        let neighbor = mats
            .iter()
            .map(|m| (0..n).map(|x| index.get(&Tits::key(&tits.times(m, x))).copied()).collect())
            .collect();
        NaiveBall {
            keys,
            distance,
            neighbor,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }
}

/// Number of coset keys of `gamma1` within `B(e, radius)` that are at distance
/// at most `radius - 1` and have a `gamma1`-labelled edge leading outward.
///
/// Cosets are the components of `gamma1`-labelled edges. A coset meets the
/// ball in a connected piece, since every member is reached from the key along
/// a path of increasing length; the key is the vertex of least distance.
pub fn eligible_coset_count(g: &DefiningGraph, gamma1: &VertexSet, radius: usize) -> usize {
    let ball = NaiveBall::new(g, radius);
    let mut parent: Vec<usize> = (0..ball.len()).collect();
    fn find(parent: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while parent[r] != r {
            r = parent[r];
        }
        parent[v] = r;
        r
    }
    for v in 0..ball.len() {
        for x in gamma1.iter() {
            if let Some(w) = ball.neighbor[v][x] {
                let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                parent[a] = b;
            }
        }
    }
    let mut least: HashMap<usize, usize> = HashMap::new();
    for v in 0..ball.len() {
        let root = find(&mut parent, v);
        let entry = least.entry(root).or_insert(v);
        if ball.distance[v] < ball.distance[*entry] {
            *entry = v;
        }
    }
    let keys: BTreeSet<usize> = least.values().copied().collect();
    keys.into_iter()
        .filter(|&k| {
            ball.distance[k] < radius
                && gamma1.iter().any(|x| {
                    ball.neighbor[k][x].is_some_and(|w| ball.distance[w] == ball.distance[k] + 1)
                })
        })
        .count()
}

/// All words of length at most `max_len` over `rank` letters.
pub fn all_words(rank: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..rank).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}
