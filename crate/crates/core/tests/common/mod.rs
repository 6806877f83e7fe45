#![allow(dead_code)]

use fuzztree::benchgen::{random_small, rng_from_seed};
use fuzztree::fuzzy::{Interval, Shape};
use fuzztree::model::{FaultTree, FaultTreeBuilder, Gate, ProbVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rng_from_seed(seed)
}

/// AND(u, OR(v, w)) with events u, v, w at indices 0, 1, 2.
pub fn and_or3() -> FaultTree {
    let mut b = FaultTreeBuilder::new();
    let u = b.add_basic_event("u");
    let v = b.add_basic_event("v");
    let w = b.add_basic_event("w");
    let g = b.add_gate("g", Gate::Or, vec![v, w]);
    let top = b.add_gate("top", Gate::And, vec![u, g]);
    b.build(top).unwrap()
}

/// OR(AND(a, b), AND(b, c)).
pub fn shared_dag() -> FaultTree {
    let mut b = FaultTreeBuilder::new();
    let a = b.add_basic_event("a");
    let s = b.add_basic_event("b");
    let c = b.add_basic_event("c");
    let g1 = b.add_gate("g1", Gate::And, vec![a, s]);
    let g2 = b.add_gate("g2", Gate::And, vec![s, c]);
    let top = b.add_gate("top", Gate::Or, vec![g1, g2]);
    b.build(top).unwrap()
}

pub fn random_tree(rng: &mut ChaCha8Rng, max_be: usize) -> FaultTree {
    random_small(rng, max_be, false)
}

/// A DAG with at least one shared node.
pub fn random_dag(rng: &mut ChaCha8Rng, max_be: usize) -> FaultTree {
    loop {
        let t = random_small(rng, max_be.max(2), true);
        if !t.is_tree_structured() {
            return t;
        }
    }
}

pub fn random_probs(rng: &mut ChaCha8Rng, n: usize) -> ProbVector {
    ProbVector::new((0..n).map(|_| rng.random_range(0.0..=1.0)).collect()).unwrap()
}

fn sorted_unit<const K: usize>(rng: &mut ChaCha8Rng) -> [f64; K] {
    let mut xs = [0.0; K];
    for x in &mut xs {
        *x = rng.random_range(0.0..=1.0);
    }
    xs.sort_by(f64::total_cmp);
    xs
}

pub fn random_triangular(rng: &mut ChaCha8Rng) -> Shape {
    let [a, b, d] = sorted_unit::<3>(rng);
    Shape::Triangular { a, b, d }
}

pub fn random_tri_or_trap(rng: &mut ChaCha8Rng) -> Shape {
    if rng.random_bool(0.5) {
        random_triangular(rng)
    } else {
        let [a, b, c, d] = sorted_unit::<4>(rng);
        Shape::Trapezoidal { a, b, c, d }
    }
}

/// Membership function written out from the shape definitions.
pub fn membership(shape: &Shape, x: f64) -> f64 {
    let rise = |a: f64, b: f64| if b > a { (x - a) / (b - a) } else { 1.0 };
    let fall = |c: f64, d: f64| if d > c { (d - x) / (d - c) } else { 1.0 };
    match *shape {
        Shape::Triangular { a, b, d } => membership(&Shape::Trapezoidal { a, b, c: b, d }, x),
        Shape::Trapezoidal { a, b, c, d } => {
            if x < a || x > d {
                0.0
            } else if x < b {
                rise(a, b)
            } else if x > c {
                fall(c, d)
            } else {
                1.0
            }
        }
        Shape::Interval { a, b } => f64::from(u8::from(a <= x && x <= b)),
        Shape::TruncGaussian { mean, std_dev, lo, hi } => {
            if x < lo || x > hi {
                0.0
            } else {
                (-(x - mean).powi(2) / (2.0 * std_dev * std_dev)).exp()
            }
        }
    }
}

/// Extremes of `f` over the corners of a box.
pub fn corner_extremes(cuts: &[Interval], f: &mut dyn FnMut(&[f64]) -> f64) -> (f64, f64) {
    let n = cuts.len();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut x = vec![0.0; n];
    for mask in 0..1u64 << n {
        for (i, c) in cuts.iter().enumerate() {
            x[i] = if mask >> i & 1 == 1 { c.hi } else { c.lo };
        }
        let y = f(&x);
        lo = lo.min(y);
        hi = hi.max(y);
    }
    (lo, hi)
}

/// Sup-min extension on a grid: every input ranges over `points` uniform
/// samples of its support plus `extra` points; the α-cut is the hull of the
/// outputs reached with min-membership at least `alpha - 1e-9`.
pub fn grid_cut(
    shapes: &[Shape],
    supports: &[Interval],
    extra: &[Vec<f64>],
    points: usize,
    alpha: f64,
    f: &dyn Fn(&[f64]) -> f64,
) -> Option<Interval> {
    let grids: Vec<Vec<(f64, f64)>> = shapes
        .iter()
        .zip(supports)
        .zip(extra)
        .map(|((s, sup), extra)| {
            let uniform = (0..points).map(|j| sup.lo + (sup.hi - sup.lo) * j as f64 / (points - 1) as f64);
            uniform.chain(extra.iter().copied()).map(|x| (x, membership(s, x))).filter(|&(_, m)| m >= alpha - 1e-9).collect()
        })
        .collect();
    if grids.iter().any(Vec::is_empty) {
        return None;
    }
    let n = shapes.len();
    let mut idx = vec![0usize; n];
    let mut x = vec![0.0; n];
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    loop {
        for i in 0..n {
            x[i] = grids[i][idx[i]].0;
        }
        let y = f(&x);
        lo = lo.min(y);
        hi = hi.max(y);
        let mut i = 0;
        loop {
            if i == n {
                return Some(Interval { lo, hi });
            }
            idx[i] += 1;
            if idx[i] < grids[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}
