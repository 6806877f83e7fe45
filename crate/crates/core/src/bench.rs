//! Runtime experiments over generated fault trees.

use std::fmt::Write as _;
use std::time::Instant;

use rand::Rng;

use crate::analysis::{fuzzy_unreliability_with, AnalysisError, AnalysisOptions};
use crate::benchgen::{fuzzify, generate, rng_from_seed, FuzzShape, GenConfig, GenError};
use crate::engines::{bottom_up_fuzzy, EngineChoice, EngineError, EngineOptions};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("invalid benchmark configuration: {0}")]
    InvalidConfig(String),
}

/// Mean runtime of the instances whose node count falls into one group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupRow {
    pub group: usize,
    pub nodes_mean: f64,
    pub time_mean_s: f64,
    pub time_std_s: f64,
}

/// One timed analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub nodes: usize,
    pub basic_events: usize,
    pub time_s: f64,
}

#[derive(Debug, Clone)]
pub struct TreeBenchConfig {
    /// Target node counts; one instance per size and repetition.
    pub sizes: Vec<usize>,
    pub reps: usize,
    /// Timed runs per instance; the fastest is kept.
    pub runs: usize,
    /// Instances with `|V|` in `((g - 1) * width, g * width]` form group `g`.
    pub group_width: usize,
    pub n_cuts: usize,
    pub seed: u64,
    pub spread: f64,
}

impl Default for TreeBenchConfig {
    fn default() -> Self {
        TreeBenchConfig {
            sizes: (1..=10).map(|k| k * 10_000).collect(),
            reps: 3,
            runs: 5,
            group_width: 80,
            n_cuts: 10,
            seed: 0,
            spread: 0.2,
        }
    }
}

/// Fuzzy bottom-up propagation over generated trees. All instances are timed
/// once per round and each keeps its fastest round.
pub fn tree_bench(cfg: &TreeBenchConfig) -> Result<Vec<Sample>, BenchError> {
    if cfg.reps == 0 || cfg.runs == 0 || cfg.group_width == 0 {
        return Err(BenchError::InvalidConfig("reps, runs and group width must be positive".into()));
    }
    let mut instances = Vec::new();
    for (i, &size) in cfg.sizes.iter().enumerate() {
        for rep in 0..cfg.reps {
            let seed = cfg.seed.wrapping_add((i * cfg.reps + rep) as u64);
            let gen = GenConfig { fuzz_spread: cfg.spread, ..GenConfig::new(seed, size) };
            let inst = generate(&gen)?;
            let fp = fuzzify(&inst.probs, FuzzShape::Triangular, cfg.spread, cfg.n_cuts, seed)?;
            instances.push((inst.tree, fp));
        }
    }
    let mut best = vec![f64::INFINITY; instances.len()];
    for _ in 0..cfg.runs {
        for ((tree, fp), best) in instances.iter().zip(&mut best) {
            let start = Instant::now();
            let out = bottom_up_fuzzy(tree, fp.entries())?;
            *best = best.min(start.elapsed().as_secs_f64());
            debug_assert_eq!(out.n_cuts(), cfg.n_cuts);
        }
    }
    Ok(instances
        .iter()
        .zip(best)
        .map(|((tree, _), time_s)| Sample { nodes: tree.node_count(), basic_events: tree.basic_event_count(), time_s })
        .collect())
}

#[derive(Debug, Clone)]
pub struct DagBenchConfig {
    pub instances: usize,
    /// Target node counts are drawn uniformly from this inclusive range.
    pub size_range: (usize, usize),
    pub sharing: f64,
    pub spread: f64,
    pub n_cuts: usize,
    pub seed: u64,
    pub group_width: usize,
    pub engine: EngineOptions,
    pub jobs: Option<usize>,
}

impl Default for DagBenchConfig {
    fn default() -> Self {
        DagBenchConfig {
            instances: 125,
            size_range: (105, 320),
            sharing: 0.2,
            spread: 0.2,
            n_cuts: 10,
            seed: 0,
            group_width: 20,
            engine: EngineOptions::default(),
            jobs: None,
        }
    }
}

/// Fuzzy unreliability of generated DAGs with the BDD engine; times include
/// BDD construction.
pub fn dag_bench(cfg: &DagBenchConfig) -> Result<Vec<Sample>, BenchError> {
    let (lo, hi) = cfg.size_range;
    if lo == 0 || lo > hi || cfg.group_width == 0 {
        return Err(BenchError::InvalidConfig(format!("bad size range {lo}..={hi} or group width")));
    }
    let mut rng = rng_from_seed(cfg.seed);
    let opts = AnalysisOptions { jobs: cfg.jobs, engine: cfg.engine.clone() };
    let mut samples = Vec::with_capacity(cfg.instances);
    for i in 0..cfg.instances {
        let target = rng.random_range(lo..=hi);
        let seed = cfg.seed.wrapping_add(i as u64);
        let gen = GenConfig { dag: true, dag_sharing: cfg.sharing, fuzz_spread: cfg.spread, ..GenConfig::new(seed, target) };
        let inst = generate(&gen)?;
        let fp = gen.fuzzify(&inst, cfg.n_cuts)?;
        let start = Instant::now();
        fuzzy_unreliability_with(&inst.tree, &fp, EngineChoice::Bdd, &opts)?;
        let time_s = start.elapsed().as_secs_f64();
        samples.push(Sample { nodes: inst.tree.node_count(), basic_events: inst.tree.basic_event_count(), time_s });
    }
    Ok(samples)
}

/// Groups samples by `ceil(nodes / width)`, ascending.
pub fn group_samples(samples: &[Sample], width: usize) -> Vec<GroupRow> {
    let mut groups: std::collections::BTreeMap<usize, Vec<&Sample>> = Default::default();
    for s in samples {
        groups.entry(s.nodes.div_ceil(width)).or_default().push(s);
    }
    groups
        .into_iter()
        .map(|(group, members)| {
            let n = members.len() as f64;
            let nodes_mean = members.iter().map(|s| s.nodes as f64).sum::<f64>() / n;
            let time_mean_s = members.iter().map(|s| s.time_s).sum::<f64>() / n;
            let var = members.iter().map(|s| (s.time_s - time_mean_s).powi(2)).sum::<f64>() / n;
            GroupRow { group, nodes_mean, time_mean_s, time_std_s: var.sqrt() }
        })
        .collect()
}

pub fn groups_csv(rows: &[GroupRow]) -> String {
    let mut out = String::from("group,nodes_mean,time_mean_s,time_std_s\n");
    for r in rows {
        writeln!(out, "{},{},{},{}", r.group, r.nodes_mean, r.time_mean_s, r.time_std_s).unwrap();
    }
    out
}

/// Least-squares line `y = slope * x + intercept` and its R².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<LinearFit> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some(LinearFit { slope, intercept, r_squared })
}
