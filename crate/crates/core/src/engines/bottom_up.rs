//! Linear-time bottom-up propagation for tree-structured fault trees.

use crate::fuzzy::{zadeh_endpoint_map, AlphaFuzzy, Direction, FuzzyError};
use crate::model::{FaultTree, Gate, NodeId, NodeKind, ProbVector};

use super::EngineError;

pub(crate) fn and_prob(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(1.0, |acc, p| acc * p)
}

pub(crate) fn or_prob(values: impl Iterator<Item = f64>) -> f64 {
    1.0 - values.fold(1.0, |acc, p| acc * (1.0 - p))
}

fn require_tree(t: &FaultTree) -> Result<(), EngineError> {
    if t.is_tree_structured() {
        Ok(())
    } else {
        Err(EngineError::NotTreeStructured)
    }
}

fn check_len(t: &FaultTree, got: usize) -> Result<(), EngineError> {
    let expected = t.basic_event_count();
    if got != expected {
        return Err(EngineError::LengthMismatch { expected, got });
    }
    Ok(())
}

/// Gate probabilities from the leaves up, assuming independent children.
///
/// Only correct for tree-structured inputs; callers must check. Products run
/// left to right over the stored child order.
pub(crate) fn propagate(t: &FaultTree, p: &[f64]) -> f64 {
    let mut value = vec![0.0; t.node_count()];
    for &v in t.bottom_up_order() {
        let children = t.children(v).iter().map(|c| value[c.index()]);
        let x = match t.kind(v) {
            NodeKind::BasicEvent => p[t.be_index(v).unwrap()],
            NodeKind::Gate(Gate::And) => and_prob(children),
            NodeKind::Gate(Gate::Or) => or_prob(children),
        };
        value[v.index()] = x;
    }
    value[t.root().index()]
}

/// Crisp unreliability of a tree-structured fault tree.
pub fn bottom_up_crisp(t: &FaultTree, p: &ProbVector) -> Result<f64, EngineError> {
    require_tree(t)?;
    check_len(t, p.len())?;
    Ok(propagate(t, p.as_slice()))
}

/// Fuzzy unreliability of a tree-structured fault tree by propagating α-cuts
/// through the Zadeh-extended gate functions.
pub fn bottom_up_fuzzy(t: &FaultTree, fp: &[AlphaFuzzy]) -> Result<AlphaFuzzy, EngineError> {
    require_tree(t)?;
    check_len(t, fp.len())?;
    if let Some(first) = fp.first() {
        if let Some(bad) = fp.iter().find(|x| !x.same_grid(first)) {
            return Err(FuzzyError::GridMismatch { left: first.n_cuts(), right: bad.n_cuts() }.into());
        }
    }

    let mut value: Vec<Option<AlphaFuzzy>> = vec![None; t.node_count()];
    let mut directions = Vec::new();
    for &v in t.bottom_up_order() {
        let result = match t.kind(v) {
            NodeKind::BasicEvent => fp[t.be_index(v).unwrap()].clone(),
            NodeKind::Gate(gate) => {
                let args = child_values(t, v, &mut value);
                directions.clear();
                directions.resize(args.len(), Direction::NonDecreasing);
                let refs: Vec<&AlphaFuzzy> = args.iter().collect();
                match gate {
                    Gate::And => zadeh_endpoint_map(|x| and_prob(x.iter().copied()), &directions, &refs)?,
                    Gate::Or => zadeh_endpoint_map(|x| or_prob(x.iter().copied()), &directions, &refs)?,
                }
            }
        };
        value[v.index()] = Some(result);
    }
    Ok(value[t.root().index()].take().unwrap())
}

// Each node has one parent in a tree, so child values can be moved out.
fn child_values(t: &FaultTree, v: NodeId, value: &mut [Option<AlphaFuzzy>]) -> Vec<AlphaFuzzy> {
    t.children(v).iter().map(|c| value[c.index()].take().unwrap()).collect()
}
