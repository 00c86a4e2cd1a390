//! Local actions, legal configurations and the ball automorphisms they
//! produce.
//!
//! An automorphism `α` of the Cayley graph induces at every vertex `v` a
//! bijection of labels `σ(α, v)`: the edge `{v, vx}` is sent to an edge
//! labelled `σ(α, v)(x)`. A configuration assigns a symmetry of the defining
//! graph to every vertex; it is realized by an automorphism exactly when
//! neighbouring values agree on the star of the connecting label (the star
//! condition). [`synthesize`] builds that automorphism sphere by sphere.
//!
//! Everything here lives on finite balls. Vertices on the outer sphere lack
//! part of their neighbourhood, so local actions are only extracted, and the
//! star condition only checked, at interior vertices.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::autgamma::{is_weight_preserving, GraphAutomorphism};
use crate::cayley::CayleyBall;
use crate::classifier::verify_good_sep;
use crate::defgraph::{DefiningGraph, VertexSet};
use crate::error::{Error, Result};
use crate::words::{Coxeter, NormalForm, Word};

/// A partial map from the vertices of one ball into another that is
/// injective and sends edges to edges.
#[derive(Debug, Clone)]
pub struct BallAutomorphism {
    source: Arc<CayleyBall>,
    target: Arc<CayleyBall>,
    images: Vec<Option<usize>>,
}

impl BallAutomorphism {
    /// Validates `images` (indexed by source vertex) as an injective,
    /// edge-preserving partial map.
    pub fn new(source: Arc<CayleyBall>, target: Arc<CayleyBall>, images: Vec<Option<usize>>) -> Result<Self> {
        if images.len() != source.len() || images.iter().flatten().any(|&w| w >= target.len()) {
            return Err(Error::NotComposable("image table does not match the balls".into()));
        }
        let map = BallAutomorphism { source, target, images };
        map.validate()?;
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: Arc<CayleyBall>, target: Arc<CayleyBall>, images: Vec<Option<usize>>) -> Self {
        BallAutomorphism { source, target, images }
    }

    fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        if !self.images.iter().flatten().all(|&w| seen.insert(w)) {
            return Err(Error::NotInjective);
        }
        for &(u, v, _) in self.source.edges() {
            if let (Some(a), Some(b)) = (self.images[u], self.images[v]) {
                if self.target.label_between(a, b).is_none() {
                    return Err(Error::EdgeNotPreserved(self.source.name(u), self.source.name(v)));
                }
            }
        }
        Ok(())
    }

    pub fn identity(ball: Arc<CayleyBall>) -> Self {
        let images = (0..ball.len()).map(Some).collect();
        BallAutomorphism {
            source: ball.clone(),
            target: ball,
            images,
        }
    }

    pub fn source(&self) -> &Arc<CayleyBall> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CayleyBall> {
        &self.target
    }

    pub fn image(&self, v: usize) -> Option<usize> {
        self.images[v]
    }

    pub fn images(&self) -> &[Option<usize>] {
        &self.images
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.images.len()).filter(|&v| self.images[v].is_some())
    }

    /// Image of a group element, if it lies in the domain.
    pub fn apply(&self, w: &NormalForm) -> Option<&NormalForm> {
        let v = self.source.index_of(w)?;
        self.images[v].map(|i| self.target.element(i))
    }

    pub fn element_map(&self) -> BTreeMap<NormalForm, NormalForm> {
        self.domain()
            .map(|v| {
                (
                    self.source.element(v).clone(),
                    self.target.element(self.images[v].unwrap()).clone(),
                )
            })
            .collect()
    }

    /// `{"map": {word: word}}`.
    pub fn to_json(&self) -> Value {
        let group = self.source.group();
        let map: BTreeMap<String, String> = self
            .element_map()
            .iter()
            .map(|(k, v)| (group.format(k), group.format(v)))
            .collect();
        json!({ "map": map })
    }

    /// Whether both maps agree wherever both are defined.
    pub fn agrees_with(&self, other: &BallAutomorphism) -> bool {
        self.domain().all(|v| match other.apply(self.source.element(v)) {
            Some(img) => img == self.target.element(self.images[v].unwrap()),
            None => true,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.domain()
            .all(|v| self.source.element(v) == self.target.element(self.images[v].unwrap()))
    }

    /// `self ∘ first`, defined on the vertices of `first`'s domain whose image
    /// lies in the domain of `self`.
    pub fn compose(&self, first: &BallAutomorphism) -> Result<BallAutomorphism> {
        let images = (0..first.source.len())
            .map(|v| {
                let mid = first.images[v]?;
                let w = first.target.element(mid);
                let j = self.source.index_of(w)?;
                self.images[j]
            })
            .collect();
        BallAutomorphism::new(first.source.clone(), self.target.clone(), images)
    }

    /// Inverse on the image; requires the image to lie in a ball whose
    /// elements are all in the source ball's index (true for maps of a ball to
    /// itself).
    pub fn inverse(&self) -> Result<BallAutomorphism> {
        let mut images = vec![None; self.target.len()];
        for v in self.domain() {
            images[self.images[v].unwrap()] = Some(v);
        }
        BallAutomorphism::new(self.target.clone(), self.source.clone(), images)
    }

    /// Restriction to the concentric ball of the given radius.
    pub fn restrict(&self, radius: usize) -> Result<BallAutomorphism> {
        let group = self.source.group().clone();
        let smaller = Arc::new(CayleyBall::build(group, radius.min(self.source.radius()), self.source.center().clone())?);
        let images = smaller
            .vertices()
            .iter()
            .map(|w| self.source.index_of(w).and_then(|v| self.images[v]))
            .collect();
        Ok(BallAutomorphism::new_unchecked(smaller, self.target.clone(), images))
    }
}

/// Label permutation induced by `alpha` at `v`.
pub fn extract_local_action(alpha: &BallAutomorphism, v: usize) -> Result<GraphAutomorphism> {
    let src = &alpha.source;
    let tgt = &alpha.target;
    let g = src.group().graph();
    let name = || src.name(v);
    let image_v = alpha.images[v].ok_or_else(|| Error::InsufficientDomain(name()))?;
    let mut perm = Vec::with_capacity(g.order());
    for x in g.vertices() {
        let u = src.neighbor(v, x).ok_or_else(|| Error::InsufficientDomain(name()))?;
        let image_u = alpha.images[u].ok_or_else(|| Error::InsufficientDomain(name()))?;
        let label = tgt
            .label_between(image_v, image_u)
            .ok_or_else(|| Error::CorruptLocalAction(name()))?;
        perm.push(label);
    }
    if !is_weight_preserving(g, &perm) {
        return Err(Error::CorruptLocalAction(name()));
    }
    GraphAutomorphism::new(g, perm)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Constant(GraphAutomorphism),
    Coset {
        gamma1: VertexSet,
        nu: GraphAutomorphism,
        chi: BTreeSet<NormalForm>,
    },
    Explicit,
}

/// A symmetry of the defining graph at every vertex of a ball.
#[derive(Debug, Clone)]
pub struct Configuration {
    ball: Arc<CayleyBall>,
    values: Vec<GraphAutomorphism>,
    provenance: Provenance,
}

impl Configuration {
    /// Every vertex gets `sigma`.
    pub fn constant(ball: Arc<CayleyBall>, sigma: GraphAutomorphism) -> Result<Self> {
        let g = ball.group().graph();
        GraphAutomorphism::new(g, sigma.images().to_vec())?;
        let values = vec![sigma.clone(); ball.len()];
        Ok(Configuration {
            ball,
            values,
            provenance: Provenance::Constant(sigma),
        })
    }

    /// Arbitrary table indexed by ball vertex.
    pub fn explicit(ball: Arc<CayleyBall>, values: Vec<GraphAutomorphism>) -> Result<Self> {
        if values.len() != ball.len() {
            return Err(Error::ConfigurationSize);
        }
        let g = ball.group().graph();
        for sigma in &values {
            GraphAutomorphism::new(g, sigma.images().to_vec())?;
        }
        Ok(Configuration {
            ball,
            values,
            provenance: Provenance::Explicit,
        })
    }

    /// `ν′` on every vertex whose `gamma1`-coset key is in `chi`, identity
    /// elsewhere. `nu` must be the identity outside `gamma1` and a good
    /// separating symmetry of `gamma1`.
    pub fn coset(
        ball: Arc<CayleyBall>,
        gamma1: &VertexSet,
        nu: &GraphAutomorphism,
        chi: &BTreeSet<NormalForm>,
    ) -> Result<Self> {
        let group = ball.group().clone();
        let g = group.graph();
        check_coset_data(g, gamma1, nu)?;
        for key in chi {
            if group.coset_key(key, gamma1)? != *key {
                return Err(Error::NotACosetKey(group.format(key)));
            }
        }
        let id = GraphAutomorphism::identity(g.order());
        let values = ball
            .vertices()
            .iter()
            .map(|w| {
                let key = group.coset_key(w, gamma1)?;
                Ok(if chi.contains(&key) { nu.clone() } else { id.clone() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Configuration {
            ball,
            values,
            provenance: Provenance::Coset {
                gamma1: gamma1.clone(),
                nu: nu.clone(),
                chi: chi.clone(),
            },
        })
    }

    pub fn ball(&self) -> &Arc<CayleyBall> {
        &self.ball
    }

    pub fn value(&self, v: usize) -> &GraphAutomorphism {
        &self.values[v]
    }

    pub fn values(&self) -> &[GraphAutomorphism] {
        &self.values
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Replaces the value at one vertex; the result is explicit.
    pub fn with_value(mut self, v: usize, sigma: GraphAutomorphism) -> Result<Self> {
        GraphAutomorphism::new(self.ball.group().graph(), sigma.images().to_vec())?;
        self.values[v] = sigma;
        self.provenance = Provenance::Explicit;
        Ok(self)
    }
}

/// Separating set of a side: its vertices adjacent to something outside.
pub fn boundary_of(g: &DefiningGraph, gamma1: &VertexSet) -> VertexSet {
    gamma1
        .iter()
        .filter(|&s| g.neighbors(s).any(|y| !gamma1.contains(y)))
        .collect()
}

fn check_coset_data(g: &DefiningGraph, gamma1: &VertexSet, nu: &GraphAutomorphism) -> Result<()> {
    if nu.len() != g.order() {
        return Err(Error::InvalidPermutation(format!("{:?}", nu.images())));
    }
    let s = boundary_of(g, gamma1);
    if !verify_good_sep(g, &s, gamma1, nu) {
        return Err(Error::GoodSeparatingSet(format!(
            "{:?} with separating set {:?} does not admit {:?}",
            g.format_set(gamma1),
            g.format_set(&s),
            nu.to_map(g)
        )));
    }
    Ok(())
}

/// Interior edges `(u, v, x)`: both endpoints have their full neighbourhood.
fn interior_edges(ball: &CayleyBall) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
    ball.edges()
        .iter()
        .copied()
        .filter(|&(u, v, _)| ball.is_interior(u) && ball.is_interior(v))
}

/// Interior edges `{v, vx}` where `σ(v)` and `σ(vx)` differ on `star(x)`.
pub fn star_condition_violations(cfg: &Configuration) -> Vec<(usize, usize)> {
    let g = cfg.ball.group().graph();
    interior_edges(&cfg.ball)
        .filter(|&(u, v, x)| {
            let star = g.star(x).expect("label is a vertex");
            !cfg.values[u].agrees_on(&cfg.values[v], &star)
        })
        .map(|(u, v, _)| (u, v))
        .collect()
}

/// The star condition on every interior edge of the ball.
pub fn check_star_condition(cfg: &Configuration) -> bool {
    star_condition_violations(cfg).is_empty()
}

/// Builds the automorphism of the ball fixing its center whose local action at
/// every interior vertex is the configured one.
///
/// A vertex `v` at distance `n` is sent to the neighbour of `α(vx)` along
/// `σ(vx)(x)`, where `x` is the least label leading back towards the center.
/// Every other such label must give the same image; the result is then
/// checked to be an automorphism whose local actions match `cfg`.
pub fn synthesize(cfg: &Configuration) -> Result<BallAutomorphism> {
    let ball = &cfg.ball;
    let mut images: Vec<Option<usize>> = vec![None; ball.len()];
    images[0] = Some(0);
    for v in 1..ball.len() {
        let d = ball.distance(v);
        let mut image = None;
        for (x, u) in ball.neighbors(v) {
            if ball.distance(u) + 1 != d {
                continue;
            }
            let from = images[u].expect("closer vertices are mapped first");
            let label = cfg.values[u].apply(x);
            let candidate = ball
                .neighbor(from, label)
                .ok_or_else(|| Error::ImageEdgeMissing(ball.name(v)))?;
            match image {
                None => image = Some(candidate),
                Some(prev) if prev != candidate => return Err(Error::NotWellDefined(ball.name(v))),
                Some(_) => {}
            }
        }
        images[v] = image;
    }
    let alpha = BallAutomorphism::new(ball.clone(), ball.clone(), images)?;
    for v in 0..ball.len() {
        if ball.is_interior(v) && extract_local_action(&alpha, v)? != cfg.values[v] {
            return Err(Error::LocalActionMismatch(ball.name(v)));
        }
    }
    Ok(alpha)
}

/// `σ` applied letter by letter to a reduced word of `w`.
///
/// Weight-preserving `σ` commutes with braid moves, so the result does not
/// depend on the reduced word; this is checked on the whole braid orbit.
pub fn apply_letterwise(group: &Coxeter, sigma: &GraphAutomorphism, w: &NormalForm) -> Result<NormalForm> {
    let image = |word: &Word| Word(word.letters().iter().map(|&x| sigma.apply(x)).collect());
    let expected = group.canonical(&image(w.word()))?;
    if !sigma.is_identity() {
        for member in group.braid_orbit(w.word())? {
            if group.canonical(&image(&member))? != expected {
                return Err(Error::NotWellDefined(group.format(w)));
            }
        }
    }
    Ok(expected)
}

/// Left multiplication `v ↦ w v`, from `ball` onto the ball of the same radius
/// around `w · center`.
pub fn translation(ball: &Arc<CayleyBall>, w: &NormalForm) -> Result<BallAutomorphism> {
    let id = GraphAutomorphism::identity(ball.group().rank());
    almost_translation(ball, w, &id)
}

/// The almost translation `v ↦ w · σ(v)` on `ball`. Its local action is `σ`
/// at every vertex.
pub fn almost_translation(ball: &Arc<CayleyBall>, w: &NormalForm, sigma: &GraphAutomorphism) -> Result<BallAutomorphism> {
    let group = ball.group().clone();
    GraphAutomorphism::new(group.graph(), sigma.images().to_vec())?;
    let map = |v: &NormalForm| -> Result<NormalForm> { group.multiply(w, &apply_letterwise(&group, sigma, v)?) };
    let target_center = map(ball.center())?;
    let target = Arc::new(CayleyBall::build(group.clone(), ball.radius(), target_center)?);
    let images = ball
        .vertices()
        .iter()
        .map(|v| {
            let img = map(v)?;
            target
                .index_of(&img)
                .map(Some)
                .ok_or_else(|| Error::NotInBall(group.format(&img)))
        })
        .collect::<Result<Vec<_>>>()?;
    BallAutomorphism::new(ball.clone(), target, images)
}

/// The ball automorphism with coordinates `(w, cfg)`: the synthesized map
/// followed by left multiplication by `w`. Its local actions are those of
/// `cfg`, and it sends the center `c` to `w c`.
pub fn realize(w: &NormalForm, cfg: &Configuration) -> Result<BallAutomorphism> {
    let fixing = synthesize(cfg)?;
    let shift = translation(&cfg.ball, w)?;
    let alpha = shift.compose(&fixing)?;
    for v in 0..cfg.ball.len() {
        if cfg.ball.is_interior(v) && extract_local_action(&alpha, v)? != cfg.values[v] {
            return Err(Error::LocalActionMismatch(cfg.ball.name(v)));
        }
    }
    Ok(alpha)
}

/// Vertices reachable from `v` along edges whose labels `σ` fixes.
pub fn fixed_point_component(ball: &CayleyBall, v: usize, sigma: &GraphAutomorphism) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([v]);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for (x, w) in ball.neighbors(u) {
            if sigma.apply(x) == x && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Distinct coset keys of `gamma1` among the ball's vertices, shortlex sorted.
pub fn coset_keys_in_ball(ball: &CayleyBall, gamma1: &VertexSet) -> Result<Vec<NormalForm>> {
    let group = ball.group();
    let keys: BTreeSet<NormalForm> = ball
        .vertices()
        .iter()
        .map(|w| group.coset_key(w, gamma1))
        .collect::<Result<_>>()?;
    Ok(keys.into_iter().collect())
}

/// Coset keys whose choice shows up in the synthesized map on the ball: those
/// at distance at most `radius - 1`, so that a `gamma1`-labelled edge leaves
/// them outward inside the ball.
pub fn eligible_coset_keys(ball: &CayleyBall, gamma1: &VertexSet) -> Result<Vec<NormalForm>> {
    Ok(coset_keys_in_ball(ball, gamma1)?
        .into_iter()
        .filter(|k| {
            !gamma1.is_empty()
                && ball
                    .index_of(k)
                    .is_some_and(|i| ball.distance(i) < ball.radius())
        })
        .collect())
}

/// Outcome of synthesizing every coset configuration over a ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetCount {
    pub keys: Vec<NormalForm>,
    pub eligible: Vec<NormalForm>,
    pub configurations: usize,
    pub distinct: usize,
}

impl CosetCount {
    pub fn expected(&self) -> usize {
        1usize << self.eligible.len()
    }

    pub fn to_json(&self, group: &Coxeter) -> Value {
        let fmt = |ks: &[NormalForm]| ks.iter().map(|k| group.format(k)).collect::<Vec<_>>();
        json!({
            "coset_keys": fmt(&self.keys),
            "eligible_keys": fmt(&self.eligible),
            "k": self.eligible.len(),
            "configurations": self.configurations,
            "distinct_automorphisms": self.distinct,
            "expected": self.expected(),
            "matches": self.distinct == self.expected(),
        })
    }
}

/// Largest number of coset keys whose subsets [`count_coset_configurations`]
/// will enumerate.
pub const MAX_ENUMERATED_KEYS: usize = 20;

/// Synthesizes the coset configuration for every subset of the coset keys in
/// the ball and counts the distinct automorphisms obtained.
pub fn count_coset_configurations(ball: &Arc<CayleyBall>, gamma1: &VertexSet, nu: &GraphAutomorphism) -> Result<CosetCount> {
    let keys = coset_keys_in_ball(ball, gamma1)?;
    let eligible = eligible_coset_keys(ball, gamma1)?;
    if keys.len() > MAX_ENUMERATED_KEYS {
        return Err(Error::CosetCap { cap: 1 << MAX_ENUMERATED_KEYS });
    }
    let mut distinct = HashSet::new();
    let total = 1usize << keys.len();
    for mask in 0..total {
        let chi: BTreeSet<NormalForm> = keys
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, k)| k.clone())
            .collect();
        let cfg = Configuration::coset(ball.clone(), gamma1, nu, &chi)?;
        distinct.insert(synthesize(&cfg)?.images);
    }
    Ok(CosetCount {
        keys,
        eligible,
        configurations: total,
        distinct: distinct.len(),
    })
}

/// Reads a configuration file:
///
/// ```text
/// default {"a": "b", "b": "a"}
/// coset a,b {"a": "b", "b": "a"} c, a c, ε
/// vertex c a {"a": "b", "b": "a"}
/// ```
///
/// `default` sets every vertex; each `coset` line then overrides the vertices
/// whose coset key is listed, and each `vertex` line a single ball vertex.
/// Permutations omit fixed vertices.
pub fn parse_configuration(ball: Arc<CayleyBall>, text: &str) -> Result<Configuration> {
    let group = ball.group().clone();
    let g = group.graph();
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut values = vec![GraphAutomorphism::identity(g.order()); ball.len()];
    let mut defaults = 0;
    let mut cosets = Vec::new();
    let mut singles = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (directive, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim_start();
        match directive {
            "default" => {
                let sigma = GraphAutomorphism::from_json(g, rest).map_err(|e| err(line, e.to_string()))?;
                values.iter_mut().for_each(|v| *v = sigma.clone());
                defaults += 1;
            }
            "coset" => {
                let (list, rest) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| err(line, "expected `coset <vertices> <perm> <keys>`".into()))?;
                let gamma1 = g.parse_vertex_list(list).map_err(|e| err(line, e.to_string()))?;
                let mut stream = serde_json::Deserializer::from_str(rest).into_iter::<BTreeMap<String, String>>();
                let map = match stream.next() {
                    Some(Ok(map)) => map,
                    Some(Err(e)) => return Err(err(line, e.to_string())),
                    None => return Err(err(line, "missing permutation".into())),
                };
                let keys_text = &rest[stream.byte_offset()..];
                let nu = GraphAutomorphism::from_map(g, &map).map_err(|e| err(line, e.to_string()))?;
                let chi = keys_text
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| group.parse_element(s))
                    .collect::<Result<BTreeSet<_>>>()
                    .map_err(|e| err(line, e.to_string()))?;
                let layer = Configuration::coset(ball.clone(), &gamma1, &nu, &chi).map_err(|e| err(line, e.to_string()))?;
                for (v, value) in values.iter_mut().enumerate() {
                    if !layer.values[v].is_identity() {
                        *value = layer.values[v].clone();
                    }
                }
                cosets.push(layer.provenance);
            }
            "vertex" => {
                let brace = rest
                    .find('{')
                    .ok_or_else(|| err(line, "expected `vertex <word> <perm>`".into()))?;
                let w = group.parse_element(&rest[..brace]).map_err(|e| err(line, e.to_string()))?;
                let v = ball
                    .index_of(&w)
                    .ok_or_else(|| err(line, Error::NotInBall(group.format(&w)).to_string()))?;
                values[v] = GraphAutomorphism::from_json(g, &rest[brace..]).map_err(|e| err(line, e.to_string()))?;
                singles += 1;
            }
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        }
    }

    let provenance = match (defaults, cosets.len(), singles) {
        (0, 1, 0) => cosets.pop().unwrap(),
        (_, 0, 0) => Provenance::Constant(values[0].clone()),
        _ => Provenance::Explicit,
    };
    Ok(Configuration {
        ball,
        values,
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ball(g: DefiningGraph, r: usize) -> Arc<CayleyBall> {
        Arc::new(CayleyBall::around_identity(Arc::new(Coxeter::new(g)), r).unwrap())
    }

    fn idx(b: &CayleyBall, s: &str) -> usize {
        b.index_of(&b.group().parse_element(s).unwrap()).unwrap()
    }

    fn names(alpha: &BallAutomorphism) -> BTreeMap<String, String> {
        let g = alpha.source().group();
        alpha
            .element_map()
            .iter()
            .map(|(k, v)| (g.format(k), g.format(v)))
            .collect()
    }

    #[test]
    fn identity_local_actions() {
        let b = ball(fixtures::delta(), 2);
        let id = BallAutomorphism::identity(b.clone());
        for v in 0..b.len() {
            if b.is_interior(v) {
                assert!(extract_local_action(&id, v).unwrap().is_identity());
            } else {
                assert!(matches!(extract_local_action(&id, v), Err(Error::InsufficientDomain(_))));
            }
        }
    }

    #[test]
    fn k2_reflection() {
        let b = ball(fixtures::k2(), 2);
        let swap = GraphAutomorphism::swap(2, 0, 1);
        let cfg = Configuration::constant(b.clone(), swap.clone()).unwrap();
        assert!(check_star_condition(&cfg));
        let alpha = synthesize(&cfg).unwrap();
        let expected: BTreeMap<String, String> = [("", ""), ("a", "b"), ("b", "a"), ("a b", "a b")]
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        assert_eq!(names(&alpha), expected);
        assert_eq!(extract_local_action(&alpha, 0).unwrap(), swap);
    }

    #[test]
    fn star_condition_examples() {
        let delta = fixtures::delta();
        let b = ball(delta.clone(), 2);
        let swap = GraphAutomorphism::swap(3, 0, 1);
        let id = GraphAutomorphism::identity(3);
        assert!(check_star_condition(&Configuration::constant(b.clone(), swap.clone()).unwrap()));

        let broken = Configuration::constant(b.clone(), id).unwrap().with_value(0, swap).unwrap();
        let violations = star_condition_violations(&broken);
        assert!(violations.contains(&(0, idx(&b, "a"))));
        assert!(!check_star_condition(&broken));
        assert!(synthesize(&broken).is_err());
    }

    #[test]
    fn coset_configuration() {
        let delta = fixtures::delta();
        let b = ball(delta.clone(), 2);
        let group = b.group().clone();
        let gamma1 = delta.vertex_set(&["a", "b"]).unwrap();
        let nu = GraphAutomorphism::swap(3, 0, 1);

        let empty = Configuration::coset(b.clone(), &gamma1, &nu, &BTreeSet::new()).unwrap();
        assert!(empty.values().iter().all(|s| s.is_identity()));

        let chi = BTreeSet::from([group.parse_element("c").unwrap()]);
        let cfg = Configuration::coset(b.clone(), &gamma1, &nu, &chi).unwrap();
        for (v, w) in b.vertices().iter().enumerate() {
            let in_coset = ["c", "c a", "c b"].contains(&group.format(w).as_str());
            assert_eq!(!cfg.value(v).is_identity(), in_coset, "{}", group.format(w));
        }
        assert!(check_star_condition(&cfg));
        let alpha = synthesize(&cfg).unwrap();
        let moved: Vec<(String, String)> = names(&alpha).into_iter().filter(|(k, v)| k != v).collect();
        assert_eq!(moved, [("c a".into(), "c b".into()), ("c b".into(), "c a".into())]);

        let bad_key = BTreeSet::from([group.parse_element("c a").unwrap()]);
        assert!(matches!(
            Configuration::coset(b.clone(), &gamma1, &nu, &bad_key),
            Err(Error::NotACosetKey(_))
        ));
        let not_good = delta.vertex_set(&["a", "c"]).unwrap();
        assert!(Configuration::coset(b, &not_good, &nu, &BTreeSet::new()).is_err());
    }

    #[test]
    fn coset_local_action_at_c() {
        let delta = fixtures::delta();
        let b = ball(delta.clone(), 3);
        let group = b.group().clone();
        let gamma1 = delta.vertex_set(&["a", "b"]).unwrap();
        let nu = GraphAutomorphism::swap(3, 0, 1);
        let chi = BTreeSet::from([group.parse_element("c").unwrap()]);
        let alpha = synthesize(&Configuration::coset(b.clone(), &gamma1, &nu, &chi).unwrap()).unwrap();
        assert_eq!(extract_local_action(&alpha, idx(&b, "c")).unwrap(), nu);
        assert!(extract_local_action(&alpha, 0).unwrap().is_identity());
    }

    #[test]
    fn translations() {
        let b = ball(fixtures::k2(), 2);
        let group = b.group().clone();
        let e = NormalForm::identity();
        assert!(translation(&b, &e).unwrap().is_identity());

        let a = group.parse_element("a").unwrap();
        let la = translation(&b, &a).unwrap();
        let map = names(&la);
        assert_eq!(map[""], "a");
        assert_eq!(map["b"], "a b");
        for &(u, v, x) in b.edges() {
            let (iu, iv) = (la.image(u).unwrap(), la.image(v).unwrap());
            assert_eq!(la.target().label_between(iu, iv), Some(x));
        }
    }

    #[test]
    fn almost_translation_matches_constant_synthesis() {
        for (name, g) in [("delta", fixtures::delta()), ("c4", fixtures::c4()), ("k2", fixtures::k2())] {
            let b = ball(g.clone(), 3);
            for sigma in crate::autgamma::enumerate_aut(&g) {
                let at = almost_translation(&b, &NormalForm::identity(), &sigma).unwrap();
                let synth = synthesize(&Configuration::constant(b.clone(), sigma.clone()).unwrap()).unwrap();
                assert_eq!(at.element_map(), synth.element_map(), "{name}");
                for v in 0..b.len() {
                    if b.is_interior(v) {
                        assert_eq!(extract_local_action(&at, v).unwrap(), sigma);
                    }
                }
                // Fixed-point components are fixed pointwise.
                for v in fixed_point_component(&b, 0, &sigma) {
                    assert_eq!(synth.image(v), Some(v), "{name}");
                }
            }
        }
    }

    #[test]
    fn fixed_point_components() {
        let delta = fixtures::delta();
        let b = ball(delta.clone(), 1);
        let all: BTreeSet<usize> = (0..b.len()).collect();
        assert_eq!(fixed_point_component(&b, 0, &GraphAutomorphism::identity(3)), all);
        let comp = fixed_point_component(&b, 0, &GraphAutomorphism::swap(3, 0, 1));
        assert_eq!(comp, BTreeSet::from([0, idx(&b, "c")]));
    }

    #[test]
    fn compose_inverse_and_restrict() {
        let delta = fixtures::delta();
        let b4 = ball(delta.clone(), 4);
        let group = b4.group().clone();
        let gamma1 = delta.vertex_set(&["a", "b"]).unwrap();
        let nu = GraphAutomorphism::swap(3, 0, 1);
        let chi: BTreeSet<NormalForm> = ["", "c", "a c"].iter().map(|s| group.parse_element(s).unwrap()).collect();
        let alpha = synthesize(&Configuration::coset(b4.clone(), &gamma1, &nu, &chi).unwrap()).unwrap();

        assert!(alpha.compose(&alpha.inverse().unwrap()).unwrap().is_identity());

        let b2 = ball(delta, 2);
        let small = synthesize(&Configuration::coset(b2, &gamma1, &nu, &chi).unwrap()).unwrap();
        assert_eq!(alpha.restrict(2).unwrap().element_map(), small.element_map());
    }

    #[test]
    fn cocycle_identity() {
        let delta = fixtures::delta();
        let b = ball(delta.clone(), 3);
        let group = b.group().clone();
        let gamma1 = delta.vertex_set(&["a", "b"]).unwrap();
        let nu = GraphAutomorphism::swap(3, 0, 1);
        let maps: Vec<BallAutomorphism> = [vec![""], vec!["c"], vec!["", "a c"], vec!["c", "b c"]]
            .iter()
            .map(|keys| {
                let chi = keys.iter().map(|s| group.parse_element(s).unwrap()).collect();
                synthesize(&Configuration::coset(b.clone(), &gamma1, &nu, &chi).unwrap()).unwrap()
            })
            .collect();
        for alpha in &maps {
            for beta in &maps {
                let ab = alpha.compose(beta).unwrap();
                for v in 0..b.len() {
                    if !b.is_interior(v) {
                        continue;
                    }
                    let bv = beta.image(v).unwrap();
                    let lhs = extract_local_action(&ab, v).unwrap();
                    let rhs = extract_local_action(alpha, bv).unwrap().compose(&extract_local_action(beta, v).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn realized_coordinates() {
        let delta = fixtures::delta();
        let b = ball(delta.clone(), 2);
        let group = b.group().clone();
        let gamma1 = delta.vertex_set(&["a", "b"]).unwrap();
        let nu = GraphAutomorphism::swap(3, 0, 1);
        let chi = BTreeSet::from([group.parse_element("c").unwrap()]);
        let cfg = Configuration::coset(b.clone(), &gamma1, &nu, &chi).unwrap();
        let w = group.parse_element("c a").unwrap();
        let alpha = realize(&w, &cfg).unwrap();
        assert_eq!(alpha.apply(&NormalForm::identity()), Some(&w));
        let fixing = synthesize(&cfg).unwrap();
        for v in b.vertices() {
            let expected = group.multiply(&w, fixing.apply(v).unwrap()).unwrap();
            assert_eq!(alpha.apply(v), Some(&expected));
        }
        let at = realize(&w, &Configuration::constant(b.clone(), nu.clone()).unwrap()).unwrap();
        assert_eq!(at.element_map(), almost_translation(&b, &w, &nu).unwrap().element_map());
    }

    #[test]
    fn coset_counts_on_delta() {
        let delta = fixtures::delta();
        let gamma1 = delta.vertex_set(&["a", "b"]).unwrap();
        let nu = GraphAutomorphism::swap(3, 0, 1);
        let b = ball(delta, 2);
        let count = count_coset_configurations(&b, &gamma1, &nu).unwrap();
        let group = b.group();
        let eligible: Vec<String> = count.eligible.iter().map(|k| group.format(k)).collect();
        assert_eq!(eligible, ["", "c"]);
        assert_eq!(count.distinct, 4);
    }

    #[test]
    fn configuration_file() {
        let delta = fixtures::delta();
        let b = ball(delta.clone(), 2);
        let text = "# swap on the coset of c\ncoset a,b {\"a\":\"b\",\"b\":\"a\"} c\n";
        let cfg = parse_configuration(b.clone(), text).unwrap();
        assert!(matches!(cfg.provenance(), Provenance::Coset { .. }));
        let alpha = synthesize(&cfg).unwrap();
        assert_eq!(names(&alpha)["c a"], "c b");

        let cfg = parse_configuration(b.clone(), "default {\"a\":\"b\",\"b\":\"a\"}\n").unwrap();
        assert_eq!(cfg.provenance(), &Provenance::Constant(GraphAutomorphism::swap(3, 0, 1)));

        let both = "default {}\ncoset a,b {\"a\":\"b\",\"b\":\"a\"} ε, c\n";
        let cfg = parse_configuration(b.clone(), both).unwrap();
        assert_eq!(cfg.provenance(), &Provenance::Explicit);
        assert!(!cfg.value(0).is_identity());

        let single = "vertex a {\"a\":\"b\",\"b\":\"a\"}\n";
        let cfg = parse_configuration(b.clone(), single).unwrap();
        assert_eq!(cfg.provenance(), &Provenance::Explicit);
        assert_eq!(star_condition_violations(&cfg), [(0, 1)]);

        for (bad, line) in [
            ("\nvertex a c a {}\n", 2),
            ("vertex a\n", 1),
            ("default {\"a\":\"c\"}\n", 1),
            ("\nfrob\n", 2),
            ("coset a,b {\"a\":\"b\",\"b\":\"a\"} c a\n", 1),
            ("coset a,c {} \n", 1),
        ] {
            match parse_configuration(b.clone(), bad) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{bad:?}"),
                other => panic!("{bad:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn ball_automorphism_json() {
        let b = ball(fixtures::k2(), 1);
        let alpha = synthesize(&Configuration::constant(b.clone(), GraphAutomorphism::swap(2, 0, 1)).unwrap()).unwrap();
        assert_eq!(alpha.to_json().to_string(), r#"{"map":{"":"","a":"b","b":"a"}}"#);
    }
}
