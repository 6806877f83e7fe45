//! Fuzzy unreliability from any crisp engine.
//!
//! Unreliability is non-decreasing in every basic-event probability, so the
//! α-cut of the fuzzy unreliability at each level is spanned by two crisp
//! evaluations: one on the vector of all lower cut endpoints and one on the
//! vector of all upper endpoints. With `N` cuts that is `2N` engine calls,
//! which are independent and run on a worker pool.
//!
//! [`fuzzy_unreliability_discrete`] is the exhaustive sup-min oracle over
//! finitely supported inputs.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::engines::{EngineChoice, EngineError, EngineOptions, PreparedEngine};
use crate::fuzzy::{self, AlphaFuzzy, DiscreteFuzzy, FuzzyError, Interval};
use crate::model::{FaultTree, ModelError, ProbVector};

/// Round-off allowance when repairing engine output.
pub const SNAP_TOLERANCE: f64 = 1e-12;

/// Basic-event cap for the discrete oracle.
pub const DISCRETE_BE_CAP: usize = 12;
/// Cap on the number of support combinations the discrete oracle enumerates.
pub const DISCRETE_COMBINATION_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("expected {expected} fuzzy probabilities, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("fuzzy probability vector is empty")]
    Empty,
    #[error("engine output at level {level} is inconsistent: {detail}")]
    Inconsistent { level: usize, detail: String },
    #[error("discrete oracle limited to {be_cap} basic events and {combination_cap} combinations (got {basic_events} events, {combinations} combinations)")]
    TooLarge { basic_events: usize, combinations: u64, be_cap: usize, combination_cap: u64 },
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

/// Which end of an α-cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

/// One fuzzy probability per basic event, all on the same α grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyProbVector {
    entries: Vec<AlphaFuzzy>,
}

impl FuzzyProbVector {
    pub fn new(entries: Vec<AlphaFuzzy>) -> Result<Self, AnalysisError> {
        let first = entries.first().ok_or(AnalysisError::Empty)?;
        if let Some(bad) = entries.iter().find(|e| !e.same_grid(first)) {
            return Err(FuzzyError::GridMismatch { left: first.n_cuts(), right: bad.n_cuts() }.into());
        }
        for e in &entries {
            e.check_probability()?;
        }
        Ok(FuzzyProbVector { entries })
    }

    /// Zero-width fuzzy numbers at the given crisp probabilities.
    pub fn crisp(p: &ProbVector, n_cuts: usize) -> Result<Self, AnalysisError> {
        let entries = p.as_slice().iter().map(|&x| AlphaFuzzy::crisp(x, n_cuts)).collect::<Result<_, _>>()?;
        Self::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn n_cuts(&self) -> usize {
        self.entries[0].n_cuts()
    }

    pub fn entries(&self) -> &[AlphaFuzzy] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &AlphaFuzzy {
        &self.entries[i]
    }

    /// The vector of all lower (or all upper) endpoints at the 0-based `level`.
    pub fn endpoints(&self, level: usize, side: Side) -> ProbVector {
        let values = self
            .entries
            .iter()
            .map(|e| {
                let c = e.cut(level);
                match side {
                    Side::Lower => c.lo,
                    Side::Upper => c.hi,
                }
            })
            .collect();
        // Endpoints were range-checked in `new`.
        ProbVector::new(values).expect("fuzzy probabilities lie in [0, 1]")
    }
}

/// Fuzzy unreliability as α-indexed intervals plus provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisResult {
    pub alpha: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub engine: EngineChoice,
    pub n_cuts: usize,
    /// Time of each crisp evaluation, by level.
    pub lower_times: Vec<Duration>,
    pub upper_times: Vec<Duration>,
    /// End-to-end time including engine preparation.
    pub wall_time: Duration,
}

impl AnalysisResult {
    pub fn cut(&self, level: usize) -> Interval {
        Interval::new(self.lower[level], self.upper[level])
    }

    pub fn to_fuzzy(&self) -> Result<AlphaFuzzy, FuzzyError> {
        AlphaFuzzy::from_cuts((0..self.n_cuts).map(|k| self.cut(k)).collect())
    }

    /// The apex value when the α = 1 cut has zero width.
    pub fn crisp_value(&self) -> Option<f64> {
        let k = self.n_cuts.checked_sub(1)?;
        (self.lower[k] == self.upper[k]).then_some(self.lower[k])
    }

    /// Checks array lengths, nestedness and the `[0, 1]` bounds.
    pub fn check(&self) -> Result<(), AnalysisError> {
        check_arrays(self.n_cuts, &self.alpha, &self.lower, &self.upper)
    }
}

/// Invariant check shared with the result-file reader.
pub fn check_arrays(n_cuts: usize, alpha: &[f64], lower: &[f64], upper: &[f64]) -> Result<(), AnalysisError> {
    let bad = |level: usize, detail: String| Err(AnalysisError::Inconsistent { level, detail });
    if n_cuts == 0 {
        return Err(FuzzyError::ZeroCuts.into());
    }
    if alpha.len() != n_cuts || lower.len() != n_cuts || upper.len() != n_cuts {
        return bad(0, format!("array lengths differ from n_cuts = {n_cuts}"));
    }
    for k in 0..n_cuts {
        let (lo, hi) = (lower[k], upper[k]);
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) {
            return bad(k + 1, format!("[{lo}, {hi}] leaves [0, 1]"));
        }
        if lo > hi {
            return bad(k + 1, format!("lower {lo} exceeds upper {hi}"));
        }
        if k > 0 && (lo < lower[k - 1] || hi > upper[k - 1]) {
            return bad(k + 1, "cuts are not nested".into());
        }
        if alpha[k] != fuzzy::level_alpha(k, n_cuts) {
            return bad(k + 1, format!("alpha {} is off the grid", alpha[k]));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Default)]
pub struct AnalysisOptions {
    /// Worker cap for the endpoint fan-out; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub engine: EngineOptions,
}

/// Fuzzy unreliability via `2N` crisp evaluations of `engine`.
pub fn fuzzy_unreliability(
    t: &FaultTree,
    fp: &FuzzyProbVector,
    engine: EngineChoice,
) -> Result<AnalysisResult, AnalysisError> {
    fuzzy_unreliability_with(t, fp, engine, &AnalysisOptions::default())
}

pub fn fuzzy_unreliability_with(
    t: &FaultTree,
    fp: &FuzzyProbVector,
    engine: EngineChoice,
    opts: &AnalysisOptions,
) -> Result<AnalysisResult, AnalysisError> {
    let start = Instant::now();
    if fp.len() != t.basic_event_count() {
        return Err(AnalysisError::LengthMismatch { expected: t.basic_event_count(), got: fp.len() });
    }
    let prepared = PreparedEngine::prepare(t, engine, &opts.engine)?;
    let n = fp.n_cuts();

    let evaluate = |task: usize| -> Result<(f64, Duration), AnalysisError> {
        let side = if task.is_multiple_of(2) { Side::Lower } else { Side::Upper };
        let p = fp.endpoints(task / 2, side);
        let t0 = Instant::now();
        let u = prepared.unreliability(&p)?;
        Ok((u, t0.elapsed()))
    };
    let outputs: Vec<(f64, Duration)> = match opts.jobs {
        Some(1) => (0..2 * n).map(evaluate).collect::<Result<_, _>>()?,
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| AnalysisError::Pool(e.to_string()))?
            .install(|| (0..2 * n).into_par_iter().map(evaluate).collect::<Result<_, _>>())?,
        None => (0..2 * n).into_par_iter().map(evaluate).collect::<Result<_, _>>()?,
    };

    let mut lower: Vec<f64> = outputs.iter().step_by(2).map(|o| o.0).collect();
    let mut upper: Vec<f64> = outputs.iter().skip(1).step_by(2).map(|o| o.0).collect();
    repair(&mut lower, &mut upper)?;

    let result = AnalysisResult {
        alpha: (0..n).map(|k| fuzzy::level_alpha(k, n)).collect(),
        lower,
        upper,
        engine: prepared.choice(),
        n_cuts: n,
        lower_times: outputs.iter().step_by(2).map(|o| o.1).collect(),
        upper_times: outputs.iter().skip(1).step_by(2).map(|o| o.1).collect(),
        wall_time: start.elapsed(),
    };
    result.check()?;
    Ok(result)
}

/// Snaps round-off violations of at most [`SNAP_TOLERANCE`]; anything larger
/// is an error, since a monotone engine cannot invert endpoints.
fn repair(lower: &mut [f64], upper: &mut [f64]) -> Result<(), AnalysisError> {
    let fail = |level: usize, detail: String| Err(AnalysisError::Inconsistent { level, detail });
    for k in 0..lower.len() {
        for v in [&mut lower[k], &mut upper[k]] {
            if *v < 0.0 || *v > 1.0 {
                if *v < -SNAP_TOLERANCE || *v > 1.0 + SNAP_TOLERANCE {
                    return fail(k + 1, format!("value {v} leaves [0, 1]"));
                }
                log::debug!("clamping {v} to [0, 1] at level {}", k + 1);
                *v = v.clamp(0.0, 1.0);
            }
        }
        if lower[k] > upper[k] {
            if lower[k] - upper[k] > SNAP_TOLERANCE {
                return fail(k + 1, format!("lower {} exceeds upper {}", lower[k], upper[k]));
            }
            let mid = 0.5 * (lower[k] + upper[k]);
            log::debug!("snapping inverted cut at level {} to {mid}", k + 1);
            lower[k] = mid;
            upper[k] = mid;
        }
        if k > 0 {
            if lower[k] < lower[k - 1] {
                if lower[k - 1] - lower[k] > SNAP_TOLERANCE {
                    return fail(k + 1, "lower endpoints decrease".into());
                }
                lower[k] = lower[k - 1];
            }
            if upper[k] > upper[k - 1] {
                if upper[k] - upper[k - 1] > SNAP_TOLERANCE {
                    return fail(k + 1, "upper endpoints increase".into());
                }
                upper[k] = upper[k - 1];
            }
            if lower[k] > upper[k] {
                let mid = 0.5 * (lower[k] + upper[k]);
                lower[k] = mid;
                upper[k] = mid;
            }
        }
    }
    Ok(())
}

/// Exact fuzzy unreliability for finitely supported inputs: every combination
/// of support values is enumerated and evaluated by brute force.
pub fn fuzzy_unreliability_discrete(t: &FaultTree, fp: &[DiscreteFuzzy]) -> Result<DiscreteFuzzy, AnalysisError> {
    let basic_events = t.basic_event_count();
    if fp.len() != basic_events {
        return Err(AnalysisError::LengthMismatch { expected: basic_events, got: fp.len() });
    }
    let combinations = fp.iter().try_fold(1u64, |acc, f| acc.checked_mul(f.len() as u64)).unwrap_or(u64::MAX);
    if basic_events > DISCRETE_BE_CAP || combinations > DISCRETE_COMBINATION_CAP {
        return Err(AnalysisError::TooLarge {
            basic_events,
            combinations,
            be_cap: DISCRETE_BE_CAP,
            combination_cap: DISCRETE_COMBINATION_CAP,
        });
    }

    let cut_sets: Vec<u64> = (0..1u64 << basic_events).filter(|&m| t.eval_mask(m)).collect();
    let u = |p: &[f64]| -> f64 {
        cut_sets
            .iter()
            .map(|&mask| {
                p.iter().enumerate().fold(1.0, |w, (i, &pi)| w * if mask >> i & 1 == 1 { pi } else { 1.0 - pi })
            })
            .sum()
    };
    let args: Vec<&DiscreteFuzzy> = fp.iter().collect();
    Ok(fuzzy::discrete_zadeh(basic_events, u, &args)?)
}
