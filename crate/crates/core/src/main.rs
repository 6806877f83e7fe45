use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use fuzztree::analysis::{fuzzy_unreliability_discrete, fuzzy_unreliability_with, AnalysisOptions};
use fuzztree::bench::{dag_bench, group_samples, groups_csv, tree_bench, DagBenchConfig, TreeBenchConfig};
use fuzztree::benchgen::{fuzz_shapes, generate, FuzzShape, GenConfig};
use fuzztree::engines::{EngineChoice, EngineOptions};
use fuzztree::fuzzy::DiscreteFuzzy;
use fuzztree::io::{curve_csv, parse_ft, write_ft, FtModel, Interpolation, ResultFile};
use fuzztree::model::BRUTE_FORCE_CAP;

#[derive(Parser)]
#[command(name = "fuzztree", version, about = "Fuzzy unreliability analysis of fault trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Auto,
    Bottomup,
    Bdd,
    Bruteforce,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchMode {
    Tree,
    Dag,
}

#[derive(Clone, Copy, ValueEnum)]
enum InterpolateArg {
    Step,
    Linear,
}

#[derive(Subcommand)]
enum Command {
    /// Fuzzy unreliability of a fault-tree file.
    Analyze {
        ft: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
        #[arg(long, default_value_t = 10)]
        cuts: usize,
        /// Result file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for the endpoint evaluations.
        #[arg(long, env = "FUZZTREE_JOBS")]
        jobs: Option<usize>,
        /// Solve independent modules separately (BDD engine).
        #[arg(long)]
        modularize: bool,
        /// Abort the BDD engine beyond this many nodes.
        #[arg(long)]
        node_budget: Option<usize>,
    },
    /// Exhaustive reference values for small fault trees.
    Oracle {
        ft: PathBuf,
        /// Cuts per annotated event for the discrete sup-min oracle.
        #[arg(long, default_value_t = 3)]
        cuts: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a benchmark fault tree.
    Gen {
        #[arg(long)]
        seed: u64,
        /// Minimum node count.
        #[arg(long)]
        size: usize,
        #[arg(long)]
        dag: bool,
        /// Fraction of basic events redirected to shared nodes (with --dag).
        #[arg(long, default_value_t = 0.1)]
        sharing: f64,
        /// Attach fuzzy annotations: triangular, trapezoidal, trunc-gaussian or mixed.
        #[arg(long)]
        fuzz: Option<FuzzShape>,
        #[arg(long, default_value_t = 0.2)]
        spread: f64,
        /// Probability of a horizontal combination step.
        #[arg(long, default_value_t = 0.5)]
        bias: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runtime experiments; writes per-group means as CSV.
    Bench {
        #[arg(long, value_enum, default_value = "tree")]
        mode: BenchMode,
        /// Target node counts (tree mode).
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long)]
        group_width: Option<usize>,
        #[arg(long, default_value_t = 10)]
        cuts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of generated DAGs (dag mode).
        #[arg(long, default_value_t = 125)]
        instances: usize,
        #[arg(long, env = "FUZZTREE_JOBS")]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Membership-curve points of a result file as CSV.
    Curve {
        result: PathBuf,
        #[arg(long, value_enum, default_value = "step")]
        interpolate: InterpolateArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<FtModel> {
    let src = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_ft(&src).with_context(|| format!("in {}", path.display()))
}

/// Cut endpoints as a finitely supported fuzzy number.
fn endpoints_as_discrete(model: &FtModel, cuts: usize) -> Result<Vec<DiscreteFuzzy>> {
    let fp = model.fuzzy(cuts)?;
    fp.entries()
        .iter()
        .map(|f| {
            let pairs = (0..f.n_cuts()).flat_map(|k| [(f.cut(k).lo, f.alpha(k)), (f.cut(k).hi, f.alpha(k))]);
            Ok(DiscreteFuzzy::merged(pairs)?)
        })
        .collect()
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze { ft, engine, cuts, out, jobs, modularize, node_budget } => {
            let model = load(&ft)?;
            let choice = match engine {
                EngineArg::Auto => EngineChoice::auto(&model.tree),
                EngineArg::Bottomup => EngineChoice::BottomUp,
                EngineArg::Bdd => EngineChoice::Bdd,
                EngineArg::Bruteforce => EngineChoice::BruteForce,
            };
            if jobs == Some(0) {
                bail!("--jobs must be at least 1");
            }
            let opts = AnalysisOptions {
                jobs,
                engine: EngineOptions { modularize, node_budget, ..Default::default() },
            };
            let fp = model.fuzzy(cuts)?;
            let result = fuzzy_unreliability_with(&model.tree, &fp, choice, &opts)?;
            let file = ResultFile::from(&result);
            emit(out.as_deref(), &file.to_json()?)
        }
        Command::Oracle { ft, cuts, out } => {
            let model = load(&ft)?;
            let unreliability = model.tree.unreliability_bruteforce(&model.probs)?;
            let cut_sets = model.tree.cut_sets()?.len();
            let discrete = if model.is_crisp() {
                None
            } else {
                let inputs = endpoints_as_discrete(&model, cuts)?;
                let f = fuzzy_unreliability_discrete(&model.tree, &inputs)?;
                Some(f.entries().iter().map(|&(value, degree)| json!({ "value": value, "degree": degree })).collect::<Vec<_>>())
            };
            let mut report = json!({
                "basic_events": model.tree.basic_event_count(),
                "cap": BRUTE_FORCE_CAP,
                "unreliability": unreliability,
                "cut_sets": cut_sets,
            });
            if let Some(d) = discrete {
                report["discrete"] = json!(d);
            }
            emit(out.as_deref(), &(serde_json::to_string_pretty(&report)? + "\n"))
        }
        Command::Gen { seed, size, dag, sharing, fuzz, spread, bias, out } => {
            let cfg = GenConfig {
                combine_bias: bias,
                dag,
                dag_sharing: if dag { sharing } else { 0.0 },
                fuzz_shape: fuzz.unwrap_or(FuzzShape::Triangular),
                fuzz_spread: spread,
                ..GenConfig::new(seed, size)
            };
            let inst = generate(&cfg)?;
            let shapes: Option<Vec<_>> =
                fuzz.map(|shape| fuzz_shapes(&inst.probs, shape, spread, seed).into_iter().map(Some).collect());
            emit(out.as_deref(), &write_ft(&inst.tree, &inst.probs, shapes.as_deref()))
        }
        Command::Bench { mode, sizes, reps, group_width, cuts, seed, instances, jobs, out } => {
            let (samples, width) = match mode {
                BenchMode::Tree => {
                    let defaults = TreeBenchConfig::default();
                    let cfg = TreeBenchConfig {
                        sizes: sizes.unwrap_or(defaults.sizes),
                        reps,
                        group_width: group_width.unwrap_or(defaults.group_width),
                        n_cuts: cuts,
                        seed,
                        ..defaults
                    };
                    (tree_bench(&cfg)?, cfg.group_width)
                }
                BenchMode::Dag => {
                    let defaults = DagBenchConfig::default();
                    let cfg = DagBenchConfig {
                        instances,
                        n_cuts: cuts,
                        seed,
                        jobs,
                        group_width: group_width.unwrap_or(defaults.group_width),
                        ..defaults
                    };
                    (dag_bench(&cfg)?, cfg.group_width)
                }
            };
            emit(out.as_deref(), &groups_csv(&group_samples(&samples, width)))
        }
        Command::Curve { result, interpolate, out } => {
            let file = ResultFile::read(&result).with_context(|| format!("in {}", result.display()))?;
            let mode = match interpolate {
                InterpolateArg::Step => Interpolation::Step,
                InterpolateArg::Linear => Interpolation::Linear,
            };
            emit(out.as_deref(), &curve_csv(&file.to_fuzzy()?, mode))
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
