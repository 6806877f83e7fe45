//! Synthetic fault-tree benchmarks.
//!
//! Large trees are grown from a pool of small ones by two operations:
//! horizontal combination (a fresh gate over both roots) and vertical
//! combination (one tree replaces a basic event of the other). DAG-shaped
//! instances additionally redirect some basic events to nodes that already
//! exist, which creates shared subtrees.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::analysis::{AnalysisError, FuzzyProbVector};
use crate::fuzzy::{discretize, Shape};
use crate::model::{FaultTree, FaultTreeBuilder, Gate, ModelError, NodeId, NodeKind, ProbVector};

/// Node counts of the default base pool.
pub const POOL_SIZES: [usize; 10] = [10, 11, 17, 22, 31, 35, 39, 42, 45, 50];
const POOL_SEED: u64 = 0x5eed_f7ee;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),
    #[error("node \"{0}\" is not a basic event")]
    NotABasicEvent(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A fault tree with crisp basic-event probabilities.
#[derive(Debug, Clone)]
pub struct Instance {
    pub tree: FaultTree,
    pub probs: ProbVector,
}

fn unique_name(taken: &mut HashSet<String>, name: &str) -> String {
    let mut candidate = name.to_string();
    let mut k = 1;
    while taken.contains(&candidate) {
        candidate = format!("{name}_{k}");
        k += 1;
    }
    taken.insert(candidate.clone());
    candidate
}

/// Copies `t` into `b`, renaming on clashes. `root_slot` receives the root
/// instead of a fresh node; `skip` drops one node, whose references go to `redirect`.
fn copy_into(
    b: &mut FaultTreeBuilder,
    taken: &mut HashSet<String>,
    t: &FaultTree,
    skip: Option<NodeId>,
    redirect: Option<NodeId>,
) -> Vec<Option<NodeId>> {
    let mut map = vec![None; t.node_count()];
    for (i, slot) in map.iter_mut().enumerate() {
        let id = NodeId(i);
        if Some(id) == skip {
            continue;
        }
        let name = unique_name(taken, t.name(id));
        *slot = Some(match t.kind(id) {
            NodeKind::BasicEvent => b.add_basic_event(name),
            NodeKind::Gate(g) => b.add_gate(name, g, Vec::new()),
        });
    }
    for i in 0..t.node_count() {
        if let Some(new) = map[i] {
            let children = t
                .children(NodeId(i))
                .iter()
                .map(|&c| if Some(c) == skip { redirect.unwrap() } else { map[c.index()].unwrap() })
                .collect();
            b.set_children(new, children);
        }
    }
    map
}

/// New root `gate` over the roots of `t1` and `t2`; basic events of `t1` come first.
pub fn horizontal_combine(t1: &FaultTree, t2: &FaultTree, gate: Gate) -> FaultTree {
    let mut b = FaultTreeBuilder::with_capacity(t1.node_count() + t2.node_count() + 1);
    let mut taken = HashSet::new();
    let m1 = copy_into(&mut b, &mut taken, t1, None, None);
    let m2 = copy_into(&mut b, &mut taken, t2, None, None);
    let name = unique_name(&mut taken, "top");
    let root = b.add_gate(name, gate, vec![m1[t1.root().index()].unwrap(), m2[t2.root().index()].unwrap()]);
    b.build(root).expect("combining valid trees yields a valid tree")
}

/// Replaces basic event `at` of `t1` by `t2`. Basic events keep their relative
/// order: those of `t1` (without `at`), then those of `t2`.
pub fn vertical_combine(t1: &FaultTree, t2: &FaultTree, at: NodeId) -> Result<FaultTree, GenError> {
    if at.index() >= t1.node_count() || t1.kind(at) != NodeKind::BasicEvent {
        let name = if at.index() < t1.node_count() { t1.name(at).to_string() } else { format!("#{}", at.index()) };
        return Err(GenError::NotABasicEvent(name));
    }
    let mut b = FaultTreeBuilder::with_capacity(t1.node_count() + t2.node_count());
    let mut taken: HashSet<String> = HashSet::new();
    // t2 goes in first so `at` can be redirected to its root; node order is
    // then restored so t1's events keep their indices.
    let m2 = copy_into(&mut b, &mut taken, t2, None, None);
    let r2 = m2[t2.root().index()].unwrap();
    let m1 = copy_into(&mut b, &mut taken, t1, Some(at), Some(r2));
    let root = if at == t1.root() { r2 } else { m1[t1.root().index()].unwrap() };
    let tree = b.build(root)?;
    Ok(reorder(&tree, t2.node_count()))
}

/// Moves the first `head` nodes behind the rest, preserving structure.
fn reorder(t: &FaultTree, head: usize) -> FaultTree {
    let n = t.node_count();
    let position = |i: usize| if i < head { i + (n - head) } else { i - head };
    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.sort_by_key(|&i| position(i));
    let mut b = FaultTreeBuilder::with_capacity(n);
    for &i in &nodes {
        match t.kind(NodeId(i)) {
            NodeKind::BasicEvent => b.add_basic_event(t.name(NodeId(i))),
            NodeKind::Gate(g) => b.add_gate(t.name(NodeId(i)), g, Vec::new()),
        };
    }
    for &i in &nodes {
        let children = t.children(NodeId(i)).iter().map(|c| NodeId(position(c.index()))).collect();
        b.set_children(NodeId(position(i)), children);
    }
    b.build(NodeId(position(t.root().index()))).expect("reordering preserves validity")
}

/// Fuzzy shape family used to fuzzify crisp probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuzzShape {
    Triangular,
    Trapezoidal,
    TruncGaussian,
    Mixed,
}

impl FromStr for FuzzShape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "triangular" | "tri" => Ok(FuzzShape::Triangular),
            "trapezoidal" | "trap" => Ok(FuzzShape::Trapezoidal),
            "trunc-gaussian" | "gaussian" | "gauss" => Ok(FuzzShape::TruncGaussian),
            "mixed" => Ok(FuzzShape::Mixed),
            other => Err(format!("unknown fuzzy shape `{other}`")),
        }
    }
}

impl fmt::Display for FuzzShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FuzzShape::Triangular => "triangular",
            FuzzShape::Trapezoidal => "trapezoidal",
            FuzzShape::TruncGaussian => "trunc-gaussian",
            FuzzShape::Mixed => "mixed",
        })
    }
}

/// Shape of relative half-width `spread` centred at `p`, clamped to `[0, 1]`.
pub fn fuzz_shape(p: f64, shape: FuzzShape, spread: f64) -> Shape {
    if p == 0.0 || spread == 0.0 {
        return Shape::crisp(p);
    }
    let lo = ((1.0 - spread) * p).max(0.0);
    let hi = ((1.0 + spread) * p).min(1.0);
    match shape {
        FuzzShape::Triangular | FuzzShape::Mixed => Shape::Triangular { a: lo, b: p, d: hi },
        FuzzShape::Trapezoidal => Shape::Trapezoidal {
            a: lo,
            b: (1.0 - spread / 2.0) * p,
            c: ((1.0 + spread / 2.0) * p).min(1.0),
            d: hi,
        },
        // Three standard deviations span the same half-width as the triangle.
        FuzzShape::TruncGaussian => Shape::gaussian(p, spread * p / 3.0),
    }
}

/// Per-event shapes; `Mixed` draws each event's family uniformly from the other three.
pub fn fuzz_shapes(p: &ProbVector, shape: FuzzShape, spread: f64, seed: u64) -> Vec<Shape> {
    const FAMILIES: [FuzzShape; 3] = [FuzzShape::Triangular, FuzzShape::Trapezoidal, FuzzShape::TruncGaussian];
    let mut rng = rng_from_seed(seed);
    p.as_slice()
        .iter()
        .map(|&x| {
            let family = match shape {
                FuzzShape::Mixed => FAMILIES[rng.random_range(0..FAMILIES.len())],
                other => other,
            };
            fuzz_shape(x, family, spread)
        })
        .collect()
}

/// Fuzzified and discretized probabilities.
pub fn fuzzify(
    p: &ProbVector,
    shape: FuzzShape,
    spread: f64,
    n_cuts: usize,
    seed: u64,
) -> Result<FuzzyProbVector, AnalysisError> {
    let entries = fuzz_shapes(p, shape, spread, seed)
        .iter()
        .map(|s| discretize(s, n_cuts))
        .collect::<Result<_, _>>()?;
    FuzzyProbVector::new(entries)
}

fn random_gate<R: Rng>(rng: &mut R) -> Gate {
    if rng.random_bool(0.5) {
        Gate::And
    } else {
        Gate::Or
    }
}

/// Log-uniform in `[1e-4, 1e-1]`.
fn random_probability<R: Rng>(rng: &mut R) -> f64 {
    10f64.powf(rng.random_range(-4.0..=-1.0))
}

/// Random tree with exactly `nodes` nodes and 2–4 children per gate
/// (a unary gate only when `nodes == 2`).
pub fn random_tree<R: Rng>(rng: &mut R, nodes: usize) -> Instance {
    let nodes = nodes.max(1);
    let mut a = Arena::default();
    a.root = a.push_be(random_probability(rng));
    while a.live < nodes {
        let remaining = nodes - a.live;
        let gates: Vec<usize> = (0..a.kind.len()).filter(|&i| a.kind[i] != NodeKind::BasicEvent).collect();
        if remaining >= 2 || gates.is_empty() {
            let i = rng.random_range(0..a.bes.len());
            let leaf = a.bes.swap_remove(i);
            let k = rng.random_range(2..=4usize).min(remaining);
            a.kind[leaf] = NodeKind::Gate(random_gate(rng));
            let children = (0..k).map(|_| a.push_be(random_probability(rng))).collect();
            a.children[leaf] = children;
        } else {
            let g = gates[rng.random_range(0..gates.len())];
            let e = a.push_be(random_probability(rng));
            a.children[g].push(e);
        }
    }
    a.finish()
}

/// Small random fault tree with `1..=max_be` basic events; with `dag`, gates
/// may also adopt an already-used node, creating shared subtrees.
pub fn random_small<R: Rng>(rng: &mut R, max_be: usize, dag: bool) -> FaultTree {
    let n = rng.random_range(1..=max_be.max(1));
    let mut b = FaultTreeBuilder::new();
    let mut open: Vec<NodeId> = (0..n).map(|i| b.add_basic_event(format!("e{i}"))).collect();
    let mut used: Vec<NodeId> = Vec::new();
    let mut gates = 0;
    while open.len() > 1 {
        open.shuffle(rng);
        let k = rng.random_range(2..=open.len().min(3));
        let mut children: Vec<NodeId> = open.split_off(open.len() - k);
        let picked = children.clone();
        if dag && !used.is_empty() && rng.random_bool(0.5) {
            let extra = used[rng.random_range(0..used.len())];
            children.push(extra);
        }
        let g = b.add_gate(format!("g{gates}"), random_gate(rng), children);
        gates += 1;
        used.extend(picked);
        open.push(g);
    }
    b.build(open[0]).expect("random construction is valid")
}

/// The ten seeded pool trees with [`POOL_SIZES`] nodes.
pub fn default_pool() -> Vec<Instance> {
    let mut rng = rng_from_seed(POOL_SEED);
    POOL_SIZES.iter().map(|&n| random_tree(&mut rng, n)).collect()
}

#[derive(Debug, Clone)]
pub struct GenConfig {
    pub seed: u64,
    /// Minimum node count of the result.
    pub target_size: usize,
    pub base_pool: Vec<Instance>,
    /// Probability of a horizontal (vs. vertical) combination step.
    pub combine_bias: f64,
    pub dag: bool,
    /// DAG mode: probability that a basic event is redirected to an existing node.
    pub dag_sharing: f64,
    pub fuzz_shape: FuzzShape,
    pub fuzz_spread: f64,
}

impl GenConfig {
    pub fn new(seed: u64, target_size: usize) -> Self {
        GenConfig {
            seed,
            target_size,
            base_pool: default_pool(),
            combine_bias: 0.5,
            dag: false,
            dag_sharing: 0.0,
            fuzz_shape: FuzzShape::Triangular,
            fuzz_spread: 0.2,
        }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        let unit = |name: &str, x: f64| {
            if (0.0..=1.0).contains(&x) {
                Ok(())
            } else {
                Err(GenError::InvalidConfig(format!("{name} = {x} must lie in [0, 1]")))
            }
        };
        if self.target_size == 0 {
            return Err(GenError::InvalidConfig("target_size must be at least 1".into()));
        }
        if self.base_pool.is_empty() {
            return Err(GenError::InvalidConfig("base pool is empty".into()));
        }
        unit("combine_bias", self.combine_bias)?;
        unit("dag_sharing", self.dag_sharing)?;
        unit("fuzz_spread", self.fuzz_spread)
    }

    /// Fuzzified probabilities of a generated instance according to this configuration.
    pub fn fuzzify(&self, inst: &Instance, n_cuts: usize) -> Result<FuzzyProbVector, AnalysisError> {
        fuzzify(&inst.probs, self.fuzz_shape, self.fuzz_spread, n_cuts, self.seed)
    }
}

/// Grows an instance with at least `target_size` nodes. Deterministic in the seed.
pub fn generate(cfg: &GenConfig) -> Result<Instance, GenError> {
    cfg.validate()?;
    let mut rng = rng_from_seed(cfg.seed);
    let pool = &cfg.base_pool;
    let mut a = Arena::default();
    let first = &pool[rng.random_range(0..pool.len())];
    a.root = a.insert(first, None).0;

    a.grow(&mut rng, cfg);
    if cfg.dag && cfg.dag_sharing > 0.0 {
        a.share(&mut rng, cfg.dag_sharing);
        a.grow(&mut rng, cfg);
    }
    Ok(a.finish())
}

/// Growable node store; replaced nodes are marked dead and dropped by `finish`.
#[derive(Default)]
struct Arena {
    kind: Vec<NodeKind>,
    children: Vec<Vec<usize>>,
    prob: Vec<f64>,
    alive: Vec<bool>,
    root: usize,
    live: usize,
    bes: Vec<usize>,
}

impl Arena {
    fn push(&mut self, kind: NodeKind, children: Vec<usize>, prob: f64) -> usize {
        self.kind.push(kind);
        self.children.push(children);
        self.prob.push(prob);
        self.alive.push(true);
        self.live += 1;
        self.kind.len() - 1
    }

    fn push_be(&mut self, prob: f64) -> usize {
        let id = self.push(NodeKind::BasicEvent, Vec::new(), prob);
        self.bes.push(id);
        id
    }

    /// Copies an instance in; its root overwrites `slot` when given.
    /// Returns the root id and the ids of the copied basic events.
    fn insert(&mut self, inst: &Instance, slot: Option<usize>) -> (usize, Vec<usize>) {
        let t = &inst.tree;
        let mut map = vec![0usize; t.node_count()];
        let mut new_bes = Vec::new();
        for (i, mapped) in map.iter_mut().enumerate() {
            let id = NodeId(i);
            let prob = t.be_index(id).map_or(0.0, |be| inst.probs.as_slice()[be]);
            let target = match slot {
                Some(s) if id == t.root() => {
                    self.kind[s] = t.kind(id);
                    self.prob[s] = prob;
                    s
                }
                _ => self.push(t.kind(id), Vec::new(), prob),
            };
            if t.kind(id) == NodeKind::BasicEvent {
                self.bes.push(target);
                new_bes.push(target);
            }
            *mapped = target;
        }
        for i in 0..t.node_count() {
            self.children[map[i]] = t.children(NodeId(i)).iter().map(|c| map[c.index()]).collect();
        }
        (map[t.root().index()], new_bes)
    }

    fn grow<R: Rng>(&mut self, rng: &mut R, cfg: &GenConfig) {
        let pool = &cfg.base_pool;
        while self.live < cfg.target_size {
            let t2 = &pool[rng.random_range(0..pool.len())];
            if rng.random_bool(cfg.combine_bias) {
                let (r2, _) = self.insert(t2, None);
                let gate = random_gate(rng);
                self.root = self.push(NodeKind::Gate(gate), vec![self.root, r2], 0.0);
            } else if rng.random_bool(0.5) {
                // The current tree is T1: one of its events becomes T2.
                let i = rng.random_range(0..self.bes.len());
                let at = self.bes.swap_remove(i);
                self.insert(t2, Some(at));
            } else {
                // The pool tree is T1: one of its events becomes the current tree.
                let before = self.bes.len();
                let (r1, new_bes) = self.insert(t2, None);
                let j = rng.random_range(0..new_bes.len());
                let slot = new_bes[j];
                self.bes.swap_remove(before + j);
                let old = self.root;
                self.kind[slot] = self.kind[old];
                self.prob[slot] = self.prob[old];
                self.children[slot] = std::mem::take(&mut self.children[old]);
                if self.kind[old] == NodeKind::BasicEvent {
                    let k = self.bes.iter().position(|&b| b == old).unwrap();
                    self.bes[k] = slot;
                }
                self.alive[old] = false;
                self.live -= 1;
                self.root = r1;
            }
        }
    }

    /// Redirects each basic event, with probability `sharing`, to another
    /// existing node that does not create a cycle or a duplicate edge.
    fn share<R: Rng>(&mut self, rng: &mut R, sharing: f64) {
        let n = self.kind.len();
        let mut parents: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in (0..n).filter(|&v| self.alive[v]) {
            for &c in &self.children[v] {
                parents[c].push(v);
            }
        }
        let mut candidates: Vec<usize> = (0..n).filter(|&v| self.alive[v] && v != self.root).collect();
        let snapshot = self.bes.clone();
        for x in snapshot {
            if !rng.random_bool(sharing) || candidates.len() < 2 {
                continue;
            }
            for _ in 0..8 {
                let w = candidates[rng.random_range(0..candidates.len())];
                if w == x || parents[x].iter().any(|&p| self.children[p].contains(&w)) {
                    continue;
                }
                if self.kind[w] != NodeKind::BasicEvent && self.reaches_any(w, &parents[x]) {
                    continue;
                }
                for &p in &parents[x].clone() {
                    for c in self.children[p].iter_mut().filter(|c| **c == x) {
                        *c = w;
                    }
                }
                let moved = std::mem::take(&mut parents[x]);
                parents[w].extend(moved);
                self.alive[x] = false;
                self.live -= 1;
                self.bes.retain(|&b| b != x);
                candidates.retain(|&c| c != x);
                break;
            }
        }
    }

    fn reaches_any(&self, from: usize, targets: &[usize]) -> bool {
        let mut seen = HashSet::new();
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            if targets.contains(&v) {
                return true;
            }
            if seen.insert(v) {
                stack.extend(self.children[v].iter().copied());
            }
        }
        false
    }

    fn finish(self) -> Instance {
        let n = self.kind.len();
        let mut map = vec![usize::MAX; n];
        let mut next = 0;
        for v in (0..n).filter(|&v| self.alive[v]) {
            map[v] = next;
            next += 1;
        }
        let mut b = FaultTreeBuilder::with_capacity(next);
        let mut probs = Vec::new();
        for v in (0..n).filter(|&v| self.alive[v]) {
            match self.kind[v] {
                NodeKind::BasicEvent => {
                    b.add_basic_event(format!("E{}", map[v]));
                    probs.push(self.prob[v]);
                }
                NodeKind::Gate(g) => {
                    let children = self.children[v].iter().map(|&c| NodeId(map[c])).collect();
                    b.add_gate(format!("G{}", map[v]), g, children);
                }
            }
        }
        let tree = b.build(NodeId(map[self.root])).expect("generator keeps the graph valid");
        Instance { tree, probs: ProbVector::new(probs).expect("probabilities lie in [0, 1]") }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::bottom_up_crisp;
    use crate::fuzzy::Interval;

    fn single(name: &str) -> FaultTree {
        let mut b = FaultTreeBuilder::new();
        let e = b.add_basic_event(name);
        b.build(e).unwrap()
    }

    #[test]
    fn horizontal_of_two_events() {
        let t = horizontal_combine(&single("x"), &single("x"), Gate::Or);
        assert_eq!(t.node_count(), 3);
        assert!(t.validate().is_empty());
        assert!(t.is_tree_structured());
    }

    #[test]
    fn combination_sizes() {
        let mut rng = rng_from_seed(1);
        let t1 = random_tree(&mut rng, 10).tree;
        let t2 = random_tree(&mut rng, 11).tree;
        assert_eq!(t1.node_count(), 10);
        assert_eq!(t2.node_count(), 11);
        assert_eq!(horizontal_combine(&t1, &t2, Gate::And).node_count(), 22);
        let at = t1.basic_events()[0];
        let v = vertical_combine(&t1, &t2, at).unwrap();
        assert_eq!(v.node_count(), 20);
        assert!(v.is_tree_structured());
    }

    #[test]
    fn vertical_into_single_event_is_t2() {
        let mut rng = rng_from_seed(2);
        let t2 = random_tree(&mut rng, 17).tree;
        let one = single("solo");
        let v = vertical_combine(&one, &t2, one.root()).unwrap();
        assert_eq!(v.node_count(), t2.node_count());
        for i in 0..v.node_count() {
            assert_eq!(v.kind(NodeId(i)), t2.kind(NodeId(i)));
            assert_eq!(v.children(NodeId(i)), t2.children(NodeId(i)));
        }
    }

    #[test]
    fn vertical_with_fresh_event_keeps_structure() {
        let mut rng = rng_from_seed(3);
        let t1 = random_tree(&mut rng, 22).tree;
        let at = t1.basic_events()[3];
        let v = vertical_combine(&t1, &single("fresh"), at).unwrap();
        assert_eq!(v.node_count(), t1.node_count());
        assert_eq!(v.basic_event_count(), t1.basic_event_count());
        let p = ProbVector::new((0..t1.basic_event_count()).map(|i| 0.05 * (i % 7) as f64).collect()).unwrap();
        // Event order: t1's events without `at`, then the fresh one.
        let mut q = p.as_slice().to_vec();
        let moved = q.remove(3);
        q.push(moved);
        let u1 = bottom_up_crisp(&t1, &p).unwrap();
        let u2 = bottom_up_crisp(&v, &ProbVector::new(q).unwrap()).unwrap();
        assert!((u1 - u2).abs() < 1e-15);
    }

    #[test]
    fn vertical_rejects_gates() {
        let mut rng = rng_from_seed(4);
        let t1 = random_tree(&mut rng, 10).tree;
        assert!(matches!(vertical_combine(&t1, &t1, t1.root()), Err(GenError::NotABasicEvent(_))));
    }

    #[test]
    fn or_combination_probability() {
        let mut rng = rng_from_seed(5);
        let a = random_tree(&mut rng, 31);
        let b = random_tree(&mut rng, 35);
        let t = horizontal_combine(&a.tree, &b.tree, Gate::Or);
        let mut p = a.probs.as_slice().to_vec();
        p.extend_from_slice(b.probs.as_slice());
        let u = bottom_up_crisp(&t, &ProbVector::new(p).unwrap()).unwrap();
        let u1 = bottom_up_crisp(&a.tree, &a.probs).unwrap();
        let u2 = bottom_up_crisp(&b.tree, &b.probs).unwrap();
        assert!((u - (1.0 - (1.0 - u1) * (1.0 - u2))).abs() < 1e-15);
    }

    #[test]
    fn pool_matches_sizes() {
        let pool = default_pool();
        let sizes: Vec<usize> = pool.iter().map(|i| i.tree.node_count()).collect();
        assert_eq!(sizes, POOL_SIZES);
        for inst in &pool {
            assert!(inst.tree.is_tree_structured());
            assert!(inst.probs.as_slice().iter().all(|&p| (1e-4..=1e-1).contains(&p)));
        }
    }

    #[test]
    fn generate_trivial_and_contract() {
        let mut cfg = GenConfig::new(0, 1);
        cfg.base_pool = vec![Instance { tree: single("e"), probs: ProbVector::new(vec![0.3]).unwrap() }];
        let inst = generate(&cfg).unwrap();
        assert_eq!(inst.tree.node_count(), 1);
        assert_eq!(inst.probs.as_slice(), &[0.3]);

        for seed in 0..5 {
            let inst = generate(&GenConfig::new(seed, 500)).unwrap();
            assert!(inst.tree.validate().is_empty());
            assert!(inst.tree.node_count() >= 500);
            assert!(inst.tree.is_tree_structured());
        }
    }

    #[test]
    fn dag_mode() {
        let mut cfg = GenConfig::new(9, 300);
        cfg.dag = true;
        assert!(generate(&cfg).unwrap().tree.is_tree_structured());
        cfg.dag_sharing = 0.3;
        let inst = generate(&cfg).unwrap();
        assert!(inst.tree.node_count() >= 300);
        assert!(!inst.tree.is_tree_structured());
    }

    #[test]
    fn config_validation() {
        let mut cfg = GenConfig::new(0, 0);
        assert!(generate(&cfg).is_err());
        cfg.target_size = 5;
        cfg.combine_bias = 1.5;
        assert!(generate(&cfg).is_err());
    }

    #[test]
    fn fuzzify_shapes() {
        assert_eq!(fuzz_shape(0.5, FuzzShape::Triangular, 0.2), Shape::Triangular { a: 0.4, b: 0.5, d: 0.6 });
        let p = ProbVector::new(vec![0.0, 0.5, 0.9]).unwrap();
        for shape in [FuzzShape::Triangular, FuzzShape::Trapezoidal, FuzzShape::TruncGaussian, FuzzShape::Mixed] {
            let fp = fuzzify(&p, shape, 0.2, 10, 7).unwrap();
            assert_eq!(fp.get(0).support(), Interval::point(0.0));
            for (i, &x) in p.as_slice().iter().enumerate() {
                assert_eq!(fp.get(i).membership_at(x), 1.0);
            }
        }
        let fp = fuzzify(&p, FuzzShape::Triangular, 0.2, 10, 7).unwrap();
        assert_eq!(fp.get(1).core(), Interval::point(0.5));
        assert!(matches!(fuzz_shape(0.9, FuzzShape::Triangular, 0.2), Shape::Triangular { d, .. } if d == 1.0));
    }

    #[test]
    fn random_small_classes() {
        let mut rng = rng_from_seed(11);
        let mut dags = 0;
        for _ in 0..50 {
            let t = random_small(&mut rng, 8, true);
            assert!(t.validate().is_empty());
            assert!(t.basic_event_count() <= 8);
            dags += usize::from(!t.is_tree_structured());
            assert!(random_small(&mut rng, 8, false).is_tree_structured());
        }
        assert!(dags > 10);
    }
}
