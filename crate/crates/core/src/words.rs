//! Word problem for Coxeter groups.
//!
//! Reduction follows Tits' solution: a word is reduced exactly when no word in
//! its braid orbit has two equal adjacent letters, and two reduced words
//! represent the same element exactly when they lie in the same braid orbit.
//! Orbits are explored exhaustively, so the cost is exponential in the worst
//! case; [`Limits::max_orbit`] bounds it.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Mutex;

use crate::defgraph::{DefiningGraph, Vertex, VertexSet};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A finite sequence of generators. Derived ordering is lexicographic.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Vertex>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Generators are involutions, so the inverse is the reversal.
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Set of letters used.
    pub fn letter_set(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }
}

impl From<Vec<Vertex>> for Word {
    fn from(v: Vec<Vertex>) -> Self {
        Word(v)
    }
}

/// Shortlex-least reduced word of a group element.
///
/// Only [`Coxeter`] constructs these, so equality of normal forms is equality
/// of group elements.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct NormalForm(Word);

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm(Word::empty())
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn letters(&self) -> &[Vertex] {
        &self.0 .0
    }

    /// Word length of the element.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for NormalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for NormalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Applies a single braid move at `i` if one starts there.
fn braid_at(graph: &DefiningGraph, w: &[Vertex], i: usize) -> Option<Vec<Vertex>> {
    let x = *w.get(i)?;
    let y = *w.get(i + 1)?;
    if x == y {
        return None;
    }
    let m = graph.m(x, y)? as usize;
    if i + m > w.len() {
        return None;
    }
    let alternates = (0..m).all(|k| w[i + k] == if k % 2 == 0 { x } else { y });
    if !alternates {
        return None;
    }
    let mut out = w.to_vec();
    for k in 0..m {
        out[i + k] = if k % 2 == 0 { y } else { x };
    }
    Some(out)
}

fn has_square(w: &[Vertex]) -> Option<usize> {
    w.windows(2).position(|p| p[0] == p[1])
}

/// A Coxeter group given by its defining graph, with memoized normal forms.
#[derive(Debug)]
pub struct Coxeter {
    graph: DefiningGraph,
    limits: Limits,
    cache: Mutex<HashMap<Word, NormalForm>>,
}

impl Clone for Coxeter {
    fn clone(&self) -> Self {
        Coxeter::with_limits(self.graph.clone(), self.limits)
    }
}

impl Coxeter {
    pub fn new(graph: DefiningGraph) -> Self {
        Self::with_limits(graph, Limits::default())
    }

    pub fn with_limits(graph: DefiningGraph, limits: Limits) -> Self {
        Coxeter {
            graph,
            limits,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn graph(&self) -> &DefiningGraph {
        &self.graph
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.graph.order()
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        w.0.iter()
            .try_for_each(|&v| self.graph.check_vertex(v).map(|_| ()))
    }

    /// Explores the braid orbit of `w` breadth first. Stops early and returns
    /// `Err(Ok(i, word))` if some member has equal letters at `i, i + 1` and
    /// `stop_on_square` is set.
    fn explore(
        &self,
        w: &[Vertex],
        stop_on_square: bool,
    ) -> Result<std::result::Result<HashSet<Vec<Vertex>>, (usize, Vec<Vertex>)>> {
        let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.to_vec());
        queue.push_back(w.to_vec());
        while let Some(cur) = queue.pop_front() {
            if stop_on_square {
                if let Some(i) = has_square(&cur) {
                    return Ok(Err((i, cur)));
                }
            }
            for i in 0..cur.len().saturating_sub(1) {
                if let Some(next) = braid_at(&self.graph, &cur, i) {
                    if !seen.contains(&next) {
                        if seen.len() >= self.limits.max_orbit {
                            return Err(Error::OrbitCap {
                                cap: self.limits.max_orbit,
                            });
                        }
                        seen.insert(next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(Ok(seen))
    }

    /// Closure of `{w}` under single braid moves, sorted lexicographically.
    pub fn braid_orbit(&self, w: &Word) -> Result<BTreeSet<Word>> {
        self.check_word(w)?;
        match self.explore(&w.0, false)? {
            Ok(orbit) => Ok(orbit.into_iter().map(Word).collect()),
            Err(_) => unreachable!("explore without early exit"),
        }
    }

    /// Reduces `w` by alternating braid-orbit search and cancellation of
    /// adjacent equal letters. Returns the reduced word together with its
    /// full braid orbit.
    fn reduce_with_orbit(&self, w: &Word) -> Result<(Word, HashSet<Vec<Vertex>>)> {
        self.check_word(w)?;
        let mut cur = w.0.clone();
        loop {
            match self.explore(&cur, true)? {
                Ok(orbit) => return Ok((Word(cur), orbit)),
                Err((i, mut member)) => {
                    member.drain(i..i + 2);
                    cur = member;
                }
            }
        }
    }

    /// A reduced word representing the same element as `w`.
    pub fn reduce(&self, w: &Word) -> Result<Word> {
        Ok(self.reduce_with_orbit(w)?.0)
    }

    /// The shortlex-least reduced word for the element represented by `w`.
    pub fn canonical(&self, w: &Word) -> Result<NormalForm> {
        if let Some(nf) = self.cache.lock().unwrap().get(w) {
            return Ok(nf.clone());
        }
        let (_, orbit) = self.reduce_with_orbit(w)?;
        let least = orbit.into_iter().min().unwrap_or_default();
        let nf = NormalForm(Word(least));
        self.cache.lock().unwrap().insert(w.clone(), nf.clone());
        Ok(nf)
    }

    pub fn equal(&self, a: &Word, b: &Word) -> Result<bool> {
        Ok(self.canonical(a)? == self.canonical(b)?)
    }

    /// Word length `‖w‖`.
    pub fn length(&self, w: &Word) -> Result<usize> {
        Ok(self.reduce(w)?.len())
    }

    pub fn multiply(&self, u: &NormalForm, v: &NormalForm) -> Result<NormalForm> {
        self.canonical(&u.0.concat(&v.0))
    }

    /// `u · x` for a single generator.
    pub fn right_multiply(&self, u: &NormalForm, x: Vertex) -> Result<NormalForm> {
        let mut letters = u.letters().to_vec();
        letters.push(x);
        self.canonical(&Word(letters))
    }

    pub fn inverse(&self, u: &NormalForm) -> Result<NormalForm> {
        self.canonical(&u.0.reversed())
    }

    /// Letters of a reduced word; braid moves never change this set.
    pub fn support(&self, w: &NormalForm) -> VertexSet {
        w.0.letter_set()
    }

    /// Whether `w` lies in the parabolic subgroup generated by `sub`.
    pub fn parabolic_member(&self, w: &NormalForm, sub: &VertexSet) -> bool {
        self.support(w).is_subset(sub)
    }

    /// Minimal-length representative of the left coset `w · W_sub`.
    ///
    /// The minimal element of a parabolic coset is unique and is reached by
    /// repeatedly stripping right descents that lie in `sub`.
    pub fn coset_key(&self, w: &NormalForm, sub: &VertexSet) -> Result<NormalForm> {
        let mut cur = w.clone();
        'outer: loop {
            for s in sub {
                let next = self.right_multiply(&cur, s)?;
                if next.len() < cur.len() {
                    cur = next;
                    continue 'outer;
                }
            }
            return Ok(cur);
        }
    }

    /// Space-separated generator names; the identity is the empty string.
    pub fn format_word(&self, w: &Word) -> String {
        w.0.iter()
            .map(|&v| self.graph.name(v))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn format(&self, w: &NormalForm) -> String {
        self.format_word(&w.0)
    }

    /// Inverse of [`Coxeter::format_word`]. `ε` is accepted for the identity.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        s.split_whitespace()
            .filter(|t| *t != "ε")
            .map(|t| self.graph.vertex(t))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn parse_element(&self, s: &str) -> Result<NormalForm> {
        self.canonical(&self.parse_word(s)?)
    }

    /// Wraps an element as a displayable value.
    pub fn display<'a>(&'a self, w: &'a NormalForm) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Coxeter, &'a NormalForm);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.1.is_identity() {
                    f.write_str("ε")
                } else {
                    f.write_str(&self.0.format(self.1))
                }
            }
        }
        D(self, w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn dihedral(m: u32) -> Coxeter {
        Coxeter::new(DefiningGraph::from_edges(&["a", "b"], &[("a", "b", m)]).unwrap())
    }

    fn w(g: &Coxeter, s: &str) -> Word {
        g.parse_word(s).unwrap()
    }

    fn orbit(g: &Coxeter, s: &str) -> Vec<String> {
        g.braid_orbit(&w(g, s))
            .unwrap()
            .iter()
            .map(|x| g.format_word(x))
            .collect()
    }

    #[test]
    fn braid_orbits() {
        assert_eq!(orbit(&dihedral(2), "a b"), ["a b", "b a"]);
        assert_eq!(orbit(&Coxeter::new(fixtures::free2()), "a b"), ["a b"]);
        assert_eq!(orbit(&dihedral(3), "a b a"), ["a b a", "b a b"]);
        assert_eq!(orbit(&dihedral(2), "a b a"), ["a a b", "a b a", "b a a"]);
    }

    #[test]
    fn orbit_cap() {
        let limits = Limits {
            max_orbit: 3,
            ..Limits::default()
        };
        // Four pairwise commuting letters: the orbit of a b c d has 24 words.
        let g = DefiningGraph::from_edges(
            &["a", "b", "c", "d"],
            &[("a", "b", 2), ("a", "c", 2), ("a", "d", 2), ("b", "c", 2), ("b", "d", 2), ("c", "d", 2)],
        )
        .unwrap();
        let cox = Coxeter::with_limits(g, limits);
        assert_eq!(
            cox.braid_orbit(&w(&cox, "a b c d")),
            Err(Error::OrbitCap { cap: 3 })
        );
    }

    #[test]
    fn reduce_examples() {
        let d2 = dihedral(2);
        assert_eq!(d2.reduce(&w(&d2, "a a")).unwrap(), Word::empty());
        assert_eq!(d2.format_word(&d2.reduce(&w(&d2, "a b a")).unwrap()), "b");
        let d3 = dihedral(3);
        assert_eq!(d3.format_word(&d3.reduce(&w(&d3, "a b a b")).unwrap()), "b a");
    }

    #[test]
    fn canonical_examples() {
        let d2 = dihedral(2);
        assert_eq!(d2.canonical(&Word::empty()).unwrap(), NormalForm::identity());
        assert_eq!(d2.format(&d2.canonical(&w(&d2, "b a")).unwrap()), "a b");
        let free = Coxeter::new(fixtures::free2());
        assert_eq!(free.format(&free.canonical(&w(&free, "b a")).unwrap()), "b a");
    }

    #[test]
    fn equality_and_length() {
        let d2 = dihedral(2);
        assert!(d2.equal(&w(&d2, "a b"), &w(&d2, "b a")).unwrap());
        let free = Coxeter::new(fixtures::free2());
        assert!(!free.equal(&w(&free, "a b"), &w(&free, "b a")).unwrap());
        let d3 = dihedral(3);
        assert!(d3.equal(&w(&d3, "a b a"), &w(&d3, "b a b")).unwrap());

        assert_eq!(d3.length(&Word::empty()).unwrap(), 0);
        assert_eq!(d3.length(&w(&d3, "a a a")).unwrap(), 1);
        assert_eq!(d3.length(&w(&d3, "a b a b")).unwrap(), 2);
    }

    #[test]
    fn finite_dihedral_orders() {
        // Enumerate elements through words of length <= m; |D_m| = 2m.
        for m in 2..=6u32 {
            let g = dihedral(m);
            let mut elements = BTreeSet::new();
            let mut frontier = vec![NormalForm::identity()];
            elements.insert(NormalForm::identity());
            while let Some(u) = frontier.pop() {
                for x in 0..2 {
                    let v = g.right_multiply(&u, x).unwrap();
                    if elements.insert(v.clone()) {
                        frontier.push(v);
                    }
                }
            }
            assert_eq!(elements.len(), 2 * m as usize, "m = {m}");
            // The longest element has length m.
            assert_eq!(elements.iter().map(|e| e.len()).max(), Some(m as usize));
        }
    }

    #[test]
    fn multiply_examples() {
        let d2 = dihedral(2);
        let a = d2.parse_element("a").unwrap();
        let b = d2.parse_element("b").unwrap();
        let e = NormalForm::identity();
        assert_eq!(d2.multiply(&a, &e).unwrap(), a);
        assert_eq!(d2.multiply(&a, &a).unwrap(), e);
        assert_eq!(d2.format(&d2.multiply(&a, &b).unwrap()), "a b");
    }

    #[test]
    fn support_and_parabolics() {
        let d3 = dihedral(3);
        assert!(d3.support(&NormalForm::identity()).is_empty());
        assert_eq!(d3.support(&d3.parse_element("a b a").unwrap()).len(), 2);

        let delta = Coxeter::new(fixtures::delta());
        let g = delta.graph();
        let ca = delta.parse_element("c a c a").unwrap();
        assert_eq!(delta.format(&ca), "c a c a");
        assert_eq!(delta.support(&ca), g.vertex_set(&["a", "c"]).unwrap());

        let ab = g.vertex_set(&["a", "b"]).unwrap();
        assert!(delta.parabolic_member(&NormalForm::identity(), &ab));
        assert!(delta.parabolic_member(&delta.parse_element("a b").unwrap(), &ab));
        assert!(!delta.parabolic_member(&delta.parse_element("c a").unwrap(), &ab));
    }

    #[test]
    fn coset_keys() {
        let delta = Coxeter::new(fixtures::delta());
        let ab = delta.graph().vertex_set(&["a", "b"]).unwrap();
        let key = |s: &str| delta.format(&delta.coset_key(&delta.parse_element(s).unwrap(), &ab).unwrap());
        assert_eq!(key("a b"), "");
        assert_eq!(key("c a"), "c");
        assert_eq!(key("c a b"), "c");
        assert_eq!(key("a c"), "a c");
        assert_eq!(key("a c b a"), "a c");
    }

    #[test]
    fn word_strings() {
        let delta = Coxeter::new(fixtures::delta());
        assert_eq!(delta.parse_word("").unwrap(), Word::empty());
        assert_eq!(delta.parse_word("ε").unwrap(), Word::empty());
        assert_eq!(delta.format_word(&delta.parse_word(" c  a ").unwrap()), "c a");
        assert!(delta.parse_word("q").is_err());
        assert_eq!(delta.display(&NormalForm::identity()).to_string(), "ε");
    }

    fn word_strategy(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0..rank, 0..=max_len).prop_map(Word)
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_parity_preserving(word in word_strategy(3, 8)) {
            let g = Coxeter::new(fixtures::triangle_mixed());
            let r = g.reduce(&word).unwrap();
            prop_assert_eq!(g.reduce(&r).unwrap().len(), r.len());
            prop_assert_eq!(r.len() % 2, word.len() % 2);
            prop_assert!(r.len() <= word.len());
        }

        #[test]
        fn inverse_cancels(word in word_strategy(4, 7)) {
            let g = Coxeter::new(fixtures::one_ended());
            let u = g.canonical(&word).unwrap();
            let inv = g.inverse(&u).unwrap();
            prop_assert!(g.multiply(&u, &inv).unwrap().is_identity());
            prop_assert!(g.multiply(&inv, &u).unwrap().is_identity());
        }

        #[test]
        fn length_is_subadditive(a in word_strategy(3, 6), b in word_strategy(3, 6)) {
            let g = Coxeter::new(fixtures::delta());
            let u = g.canonical(&a).unwrap();
            let v = g.canonical(&b).unwrap();
            let uv = g.multiply(&u, &v).unwrap();
            prop_assert!(uv.len() <= u.len() + v.len());
            prop_assert_eq!(uv.len() % 2, (u.len() + v.len()) % 2);
        }

        #[test]
        fn multiplication_is_associative(a in word_strategy(3, 5), b in word_strategy(3, 5), c in word_strategy(3, 5)) {
            let g = Coxeter::new(fixtures::triangle_mixed());
            let (u, v, w) = (g.canonical(&a).unwrap(), g.canonical(&b).unwrap(), g.canonical(&c).unwrap());
            prop_assert_eq!(
                g.multiply(&g.multiply(&u, &v).unwrap(), &w).unwrap(),
                g.multiply(&u, &g.multiply(&v, &w).unwrap()).unwrap()
            );
        }

        #[test]
        fn canonical_is_constant_on_orbits(word in word_strategy(4, 6)) {
            let g = Coxeter::new(fixtures::c4());
            let nf = g.canonical(&word).unwrap();
            for member in g.braid_orbit(nf.word()).unwrap() {
                prop_assert_eq!(g.canonical(&member).unwrap(), nf.clone());
                prop_assert_eq!(member.letter_set(), g.support(&nf));
            }
        }

        #[test]
        fn parabolic_membership_matches_coset_key(word in word_strategy(4, 6), mask in 0u8..16) {
            let g = Coxeter::new(fixtures::p4());
            let sub: VertexSet = (0..4).filter(|i| mask & (1 << i) != 0).collect();
            let u = g.canonical(&word).unwrap();
            prop_assert_eq!(g.parabolic_member(&u, &sub), g.coset_key(&u, &sub).unwrap().is_identity());
        }
    }
}
