//! Fuzzy unreliability of fault trees.
//!
//! Basic-event probabilities are fuzzy numbers stored as α-cuts. Because
//! unreliability is monotone in every probability, each output cut is found
//! by two crisp evaluations, so any crisp engine (bottom-up, BDD or brute
//! force) lifts to fuzzy inputs. Tree-structured inputs also support direct
//! bottom-up propagation of the fuzzy numbers themselves.

pub mod analysis;
pub mod bench;
pub mod benchgen;
pub mod engines;
pub mod fuzzy;
pub mod io;
pub mod model;

pub use analysis::{fuzzy_unreliability, fuzzy_unreliability_discrete, AnalysisError, AnalysisResult, FuzzyProbVector};
pub use engines::{EngineChoice, EngineError};
pub use fuzzy::{AlphaFuzzy, DiscreteFuzzy, FuzzyError, Interval, Shape};
pub use model::{FaultTree, FaultTreeBuilder, Gate, ModelError, NodeId, ProbVector, StatusVector};
