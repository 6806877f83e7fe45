//! Crisp unreliability engines and the direct fuzzy bottom-up algorithm.

mod bdd;
mod bottom_up;
mod modular;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fuzzy::FuzzyError;
use crate::model::{FaultTree, ModelError, ProbVector};

pub use bdd::{bdd_build, bdd_build_with_budget, bdd_unreliability, default_order, Bdd, BddNode, BddRef, FALSE, TRUE};
pub use bottom_up::{bottom_up_crisp, bottom_up_fuzzy};
pub use modular::{find_modules, ModularBdd};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("the bottom-up algorithm requires a tree-structured fault tree (some node has several parents)")]
    NotTreeStructured,
    #[error("expected {expected} basic events, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("BDD over {variables} variables cannot be evaluated on {got} values")]
    IndexOutOfRange { variables: usize, got: usize },
    #[error("variable order is not a permutation of the basic events")]
    InvalidOrder,
    #[error("BDD exceeds the node budget of {budget}")]
    BddTooLarge { budget: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
}

/// Which crisp algorithm computes unreliability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EngineChoice {
    BottomUp,
    Bdd,
    BruteForce,
}

impl EngineChoice {
    pub fn as_str(&self) -> &'static str {
        match self {
            EngineChoice::BottomUp => "bottomup",
            EngineChoice::Bdd => "bdd",
            EngineChoice::BruteForce => "bruteforce",
        }
    }

    /// Bottom-up for trees, BDD otherwise.
    pub fn auto(t: &FaultTree) -> Self {
        if t.is_tree_structured() {
            EngineChoice::BottomUp
        } else {
            EngineChoice::Bdd
        }
    }
}

impl fmt::Display for EngineChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EngineChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bottomup" | "bottom-up" => Ok(EngineChoice::BottomUp),
            "bdd" => Ok(EngineChoice::Bdd),
            "bruteforce" | "brute-force" => Ok(EngineChoice::BruteForce),
            other => Err(format!("unknown engine `{other}` (expected bottomup, bdd or bruteforce)")),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct EngineOptions {
    /// Solve independent modules separately (BDD engine only).
    pub modularize: bool,
    /// Variable order for the BDD; defaults to [`default_order`].
    pub order: Option<Vec<usize>>,
    pub node_budget: Option<usize>,
    /// Basic-event cap for brute force; defaults to [`crate::model::BRUTE_FORCE_CAP`].
    pub brute_force_cap: Option<usize>,
}

/// An engine set up for one fault tree. Evaluation is pure, so one prepared
/// engine may serve many probability vectors concurrently.
#[derive(Debug)]
pub enum PreparedEngine<'t> {
    BottomUp(&'t FaultTree),
    Bdd(Bdd),
    ModularBdd(ModularBdd),
    BruteForce(&'t FaultTree, usize),
}

impl<'t> PreparedEngine<'t> {
    pub fn prepare(t: &'t FaultTree, choice: EngineChoice, opts: &EngineOptions) -> Result<Self, EngineError> {
        match choice {
            EngineChoice::BottomUp => {
                if !t.is_tree_structured() {
                    return Err(EngineError::NotTreeStructured);
                }
                Ok(PreparedEngine::BottomUp(t))
            }
            EngineChoice::Bdd if opts.modularize => Ok(PreparedEngine::ModularBdd(ModularBdd::build(t, opts.node_budget)?)),
            EngineChoice::Bdd => {
                let order = opts.order.clone().unwrap_or_else(|| default_order(t));
                Ok(PreparedEngine::Bdd(bdd_build_with_budget(t, &order, opts.node_budget)?))
            }
            EngineChoice::BruteForce => {
                let cap = opts.brute_force_cap.unwrap_or(crate::model::BRUTE_FORCE_CAP);
                let basic_events = t.basic_event_count();
                if basic_events > cap {
                    return Err(ModelError::TooLarge { basic_events, cap }.into());
                }
                Ok(PreparedEngine::BruteForce(t, cap))
            }
        }
    }

    pub fn choice(&self) -> EngineChoice {
        match self {
            PreparedEngine::BottomUp(_) => EngineChoice::BottomUp,
            PreparedEngine::Bdd(_) | PreparedEngine::ModularBdd(_) => EngineChoice::Bdd,
            PreparedEngine::BruteForce(..) => EngineChoice::BruteForce,
        }
    }

    pub fn unreliability(&self, p: &ProbVector) -> Result<f64, EngineError> {
        match self {
            PreparedEngine::BottomUp(t) => bottom_up_crisp(t, p),
            PreparedEngine::Bdd(b) => bdd_unreliability(b, p),
            PreparedEngine::ModularBdd(m) => m.unreliability(p),
            PreparedEngine::BruteForce(t, cap) => Ok(t.unreliability_bruteforce_capped(p, *cap)?),
        }
    }
}

/// Crisp unreliability with a one-off engine.
pub fn unreliability(t: &FaultTree, p: &ProbVector, choice: EngineChoice) -> Result<f64, EngineError> {
    PreparedEngine::prepare(t, choice, &EngineOptions::default())?.unreliability(p)
}
