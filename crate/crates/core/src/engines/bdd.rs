//! Reduced ordered binary decision diagrams for fault-tree structure functions.
//!
//! A [`BddManager`] owns the node table (hash-consed through a unique table)
//! and an apply cache for one build. The finished diagram is compacted into a
//! [`Bdd`], in which every node's children precede it, so probabilities can be
//! computed in a single forward pass.

use std::collections::HashMap;

use crate::model::{FaultTree, Gate, NodeId, NodeKind, ProbVector, StatusVector};

use super::EngineError;

/// Reference to a BDD node; `0` and `1` are the terminals.
pub type BddRef = u32;

pub const FALSE: BddRef = 0;
pub const TRUE: BddRef = 1;

const TERMINAL_LEVEL: u32 = u32::MAX;

/// An internal node deciding on the variable at `level` of the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BddNode {
    pub level: u32,
    pub low: BddRef,
    pub high: BddRef,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Op {
    And,
    Or,
}

impl From<Gate> for Op {
    fn from(g: Gate) -> Self {
        match g {
            Gate::And => Op::And,
            Gate::Or => Op::Or,
        }
    }
}

pub(crate) struct BddManager {
    nodes: Vec<BddNode>,
    unique: HashMap<BddNode, BddRef>,
    cache: HashMap<(Op, BddRef, BddRef), BddRef>,
    budget: Option<usize>,
}

impl BddManager {
    pub(crate) fn new(budget: Option<usize>) -> Self {
        let terminal = BddNode { level: TERMINAL_LEVEL, low: FALSE, high: FALSE };
        BddManager { nodes: vec![terminal, terminal], unique: HashMap::new(), cache: HashMap::new(), budget }
    }

    fn level(&self, f: BddRef) -> u32 {
        self.nodes[f as usize].level
    }

    pub(crate) fn mk(&mut self, level: u32, low: BddRef, high: BddRef) -> Result<BddRef, EngineError> {
        if low == high {
            return Ok(low);
        }
        let node = BddNode { level, low, high };
        if let Some(&r) = self.unique.get(&node) {
            return Ok(r);
        }
        if let Some(budget) = self.budget {
            if self.nodes.len() - 2 >= budget {
                return Err(EngineError::BddTooLarge { budget });
            }
        }
        let r = self.nodes.len() as BddRef;
        self.nodes.push(node);
        self.unique.insert(node, r);
        Ok(r)
    }

    pub(crate) fn var(&mut self, level: u32) -> Result<BddRef, EngineError> {
        self.mk(level, FALSE, TRUE)
    }

    fn apply(&mut self, op: Op, f: BddRef, g: BddRef) -> Result<BddRef, EngineError> {
        match op {
            Op::And => {
                if f == FALSE || g == FALSE {
                    return Ok(FALSE);
                }
                if f == TRUE {
                    return Ok(g);
                }
                if g == TRUE || f == g {
                    return Ok(f);
                }
            }
            Op::Or => {
                if f == TRUE || g == TRUE {
                    return Ok(TRUE);
                }
                if f == FALSE {
                    return Ok(g);
                }
                if g == FALSE || f == g {
                    return Ok(f);
                }
            }
        }
        let key = (op, f.min(g), f.max(g));
        if let Some(&r) = self.cache.get(&key) {
            return Ok(r);
        }
        let (lf, lg) = (self.level(f), self.level(g));
        let top = lf.min(lg);
        let (f0, f1) = self.cofactors(f, top);
        let (g0, g1) = self.cofactors(g, top);
        let low = self.apply(op, f0, g0)?;
        let high = self.apply(op, f1, g1)?;
        let r = self.mk(top, low, high)?;
        self.cache.insert(key, r);
        Ok(r)
    }

    fn cofactors(&self, f: BddRef, level: u32) -> (BddRef, BddRef) {
        let n = self.nodes[f as usize];
        if n.level == level {
            (n.low, n.high)
        } else {
            (f, f)
        }
    }

    /// Builds the function of the sub-DAG below `root`, treating every node
    /// for which `leaf_level` returns a level as a variable.
    pub(crate) fn build_subdag(
        &mut self,
        t: &FaultTree,
        root: NodeId,
        leaf_level: &dyn Fn(NodeId) -> Option<u32>,
    ) -> Result<BddRef, EngineError> {
        let mut done: HashMap<NodeId, BddRef> = HashMap::new();
        let mut stack: Vec<(NodeId, bool)> = vec![(root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if done.contains_key(&v) {
                continue;
            }
            if let Some(level) = leaf_level(v) {
                let r = self.var(level)?;
                done.insert(v, r);
                continue;
            }
            let NodeKind::Gate(gate) = t.kind(v) else {
                unreachable!("basic events are always leaves");
            };
            if expanded {
                let op = Op::from(gate);
                let mut acc = match op {
                    Op::And => TRUE,
                    Op::Or => FALSE,
                };
                for c in t.children(v) {
                    acc = self.apply(op, acc, done[c])?;
                }
                done.insert(v, acc);
            } else {
                stack.push((v, true));
                for &c in t.children(v).iter().rev() {
                    if !done.contains_key(&c) {
                        stack.push((c, false));
                    }
                }
            }
        }
        Ok(done[&root])
    }

    /// Copies the nodes reachable from `root` into a standalone diagram.
    pub(crate) fn finish(&self, root: BddRef, order: Vec<usize>) -> Bdd {
        let mut remap: HashMap<BddRef, BddRef> = HashMap::from([(FALSE, FALSE), (TRUE, TRUE)]);
        let mut nodes = self.nodes[..2].to_vec();
        let mut stack = vec![(root, false)];
        while let Some((f, expanded)) = stack.pop() {
            if remap.contains_key(&f) {
                continue;
            }
            let n = self.nodes[f as usize];
            if expanded {
                let r = nodes.len() as BddRef;
                nodes.push(BddNode { level: n.level, low: remap[&n.low], high: remap[&n.high] });
                remap.insert(f, r);
            } else {
                stack.push((f, true));
                stack.push((n.high, false));
                stack.push((n.low, false));
            }
        }
        Bdd { nodes, root: remap[&root], order }
    }
}

/// A compacted ROBDD over basic-event variables.
#[derive(Debug, Clone)]
pub struct Bdd {
    nodes: Vec<BddNode>,
    root: BddRef,
    // Variable (basic-event index) tested at each level.
    order: Vec<usize>,
}

impl Bdd {
    pub fn root(&self) -> BddRef {
        self.root
    }

    pub fn node(&self, r: BddRef) -> BddNode {
        self.nodes[r as usize]
    }

    pub fn is_terminal(r: BddRef) -> bool {
        r == FALSE || r == TRUE
    }

    /// Basic-event index tested by an internal node.
    pub fn variable(&self, r: BddRef) -> usize {
        self.order[self.nodes[r as usize].level as usize]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn internal_node_count(&self) -> usize {
        self.nodes.len() - 2
    }

    pub fn evaluate(&self, status: &StatusVector) -> Result<bool, EngineError> {
        self.check_len(status.len())?;
        let mut f = self.root;
        while !Self::is_terminal(f) {
            let n = self.nodes[f as usize];
            f = if status.0[self.order[n.level as usize]] { n.high } else { n.low };
        }
        Ok(f == TRUE)
    }

    fn check_len(&self, got: usize) -> Result<(), EngineError> {
        if got != self.order.len() {
            return Err(EngineError::IndexOutOfRange { variables: self.order.len(), got });
        }
        Ok(())
    }

    /// Probability that the function is true under independent variables.
    pub fn probability(&self, p: &[f64]) -> Result<f64, EngineError> {
        self.check_len(p.len())?;
        let mut prob = vec![0.0; self.nodes.len()];
        prob[TRUE as usize] = 1.0;
        for (i, n) in self.nodes.iter().enumerate().skip(2) {
            let pv = p[self.order[n.level as usize]];
            prob[i] = pv * prob[n.high as usize] + (1.0 - pv) * prob[n.low as usize];
        }
        Ok(prob[self.root as usize])
    }
}

/// Basic events in first-visit order of a depth-first walk from the root.
pub fn default_order(t: &FaultTree) -> Vec<usize> {
    let mut seen = vec![false; t.node_count()];
    let mut order = Vec::with_capacity(t.basic_event_count());
    let mut stack = vec![t.root()];
    while let Some(v) = stack.pop() {
        if std::mem::replace(&mut seen[v.index()], true) {
            continue;
        }
        if let Some(be) = t.be_index(v) {
            order.push(be);
        }
        stack.extend(t.children(v).iter().rev().filter(|c| !seen[c.index()]));
    }
    order
}

fn check_order(t: &FaultTree, order: &[usize]) -> Result<(), EngineError> {
    let n = t.basic_event_count();
    let mut seen = vec![false; n];
    let ok = order.len() == n && order.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true));
    if ok {
        Ok(())
    } else {
        Err(EngineError::InvalidOrder)
    }
}

/// ROBDD of the structure function under `order` (basic-event indices from
/// the top level down).
pub fn bdd_build(t: &FaultTree, order: &[usize]) -> Result<Bdd, EngineError> {
    bdd_build_with_budget(t, order, None)
}

/// As [`bdd_build`], aborting once more than `budget` internal nodes exist.
pub fn bdd_build_with_budget(t: &FaultTree, order: &[usize], budget: Option<usize>) -> Result<Bdd, EngineError> {
    check_order(t, order)?;
    let mut level_of = vec![0u32; t.basic_event_count()];
    for (level, &be) in order.iter().enumerate() {
        level_of[be] = level as u32;
    }
    let mut m = BddManager::new(budget);
    let root = m.build_subdag(t, t.root(), &|v| t.be_index(v).map(|be| level_of[be]))?;
    Ok(m.finish(root, order.to_vec()))
}

/// Unreliability from a BDD.
pub fn bdd_unreliability(bdd: &Bdd, p: &ProbVector) -> Result<f64, EngineError> {
    bdd.probability(p.as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::and_or3;
    use crate::model::FaultTreeBuilder;

    fn shared_dag() -> FaultTree {
        let mut b = FaultTreeBuilder::new();
        let a = b.add_basic_event("a");
        let s = b.add_basic_event("b");
        let c = b.add_basic_event("c");
        let g1 = b.add_gate("g1", Gate::And, vec![a, s]);
        let g2 = b.add_gate("g2", Gate::And, vec![s, c]);
        let top = b.add_gate("top", Gate::Or, vec![g1, g2]);
        b.build(top).unwrap()
    }

    #[test]
    fn fig1_has_three_nodes() {
        let t = and_or3();
        let bdd = bdd_build(&t, &[0, 1, 2]).unwrap();
        assert_eq!(bdd.internal_node_count(), 3);
        let root = bdd.node(bdd.root());
        assert_eq!(bdd.variable(bdd.root()), 0);
        assert_eq!(root.low, FALSE);
        let u = bdd_unreliability(&bdd, &ProbVector::new(vec![0.8, 0.1, 0.4]).unwrap()).unwrap();
        assert!((u - 0.368).abs() < 1e-12);
    }

    #[test]
    fn single_be_is_one_node() {
        let mut b = FaultTreeBuilder::new();
        let e = b.add_basic_event("e");
        let t = b.build(e).unwrap();
        let bdd = bdd_build(&t, &[0]).unwrap();
        assert_eq!(bdd.internal_node_count(), 1);
        assert_eq!(bdd.node(bdd.root()), BddNode { level: 0, low: FALSE, high: TRUE });
    }

    #[test]
    fn idempotent_references_collapse() {
        let mut b = FaultTreeBuilder::new();
        let e = b.add_basic_event("e");
        let gates: Vec<NodeId> = (0..4).map(|i| b.add_gate(format!("g{i}"), Gate::And, vec![e])).collect();
        let top = b.add_gate("top", Gate::Or, gates);
        let t = b.build(top).unwrap();
        assert_eq!(bdd_build(&t, &[0]).unwrap().internal_node_count(), 1);
    }

    #[test]
    fn shared_event_dag() {
        let t = shared_dag();
        let bdd = bdd_build(&t, &default_order(&t)).unwrap();
        let u = bdd_unreliability(&bdd, &ProbVector::uniform(0.5, 3).unwrap()).unwrap();
        assert!((u - 0.375).abs() < 1e-12);
    }

    #[test]
    fn evaluation_matches_structure_function() {
        for t in [and_or3(), shared_dag()] {
            let n = t.basic_event_count();
            let bdd = bdd_build(&t, &default_order(&t)).unwrap();
            for mask in 0..1u64 << n {
                let s = StatusVector::from_mask(mask, n);
                assert_eq!(bdd.evaluate(&s).unwrap(), t.structure_eval(&s).unwrap());
            }
        }
    }

    #[test]
    fn order_validation_and_budget() {
        let t = and_or3();
        assert_eq!(bdd_build(&t, &[0, 1]).unwrap_err(), EngineError::InvalidOrder);
        assert_eq!(bdd_build(&t, &[0, 1, 1]).unwrap_err(), EngineError::InvalidOrder);
        assert_eq!(bdd_build_with_budget(&t, &[0, 1, 2], Some(2)).unwrap_err(), EngineError::BddTooLarge { budget: 2 });
        let bdd = bdd_build(&t, &[0, 1, 2]).unwrap();
        assert!(matches!(bdd.probability(&[0.5]), Err(EngineError::IndexOutOfRange { variables: 3, got: 1 })));
    }

    #[test]
    fn default_order_is_dfs_first_visit() {
        let t = shared_dag();
        assert_eq!(default_order(&t), vec![0, 1, 2]);
        assert_eq!(default_order(&and_or3()), vec![0, 1, 2]);
    }

    #[test]
    fn nodes_are_ordered_and_reduced() {
        let t = shared_dag();
        for order in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
            let bdd = bdd_build(&t, &order).unwrap();
            let mut seen = std::collections::HashSet::new();
            for i in 2..bdd.nodes.len() as BddRef {
                let n = bdd.node(i);
                assert_ne!(n.low, n.high);
                assert!(seen.insert(n));
                for c in [n.low, n.high] {
                    assert!(c < i);
                    assert!(Bdd::is_terminal(c) || bdd.node(c).level > n.level);
                }
            }
        }
    }
}
