//! BDD evaluation with modularization.
//!
//! A module is a gate whose descendants are reached only through it. Modules
//! are found with the linear-time visit-date criterion of Dutuit and Rauzy;
//! each one gets its own BDD in which child modules appear as pseudo basic
//! events carrying their computed probability.

use crate::model::{FaultTree, NodeId, NodeKind, ProbVector};

use super::bdd::{Bdd, BddManager};
use super::EngineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Input {
    Event(usize),
    Module(usize),
}

#[derive(Debug, Clone)]
struct Module {
    gate: NodeId,
    inputs: Vec<Input>,
    bdd: Bdd,
}

/// One BDD per module, evaluated bottom-up.
#[derive(Debug, Clone)]
pub struct ModularBdd {
    modules: Vec<Module>,
    basic_events: usize,
    root_event: Option<usize>,
}

/// Marks every gate that is a module (the root always is).
pub fn find_modules(t: &FaultTree) -> Vec<bool> {
    let n = t.node_count();
    let (mut first, mut second, mut last) = (vec![0u64; n], vec![0u64; n], vec![0u64; n]);
    let mut date = 0u64;
    let mut stack: Vec<(NodeId, usize)> = Vec::new();

    date += 1;
    first[t.root().index()] = date;
    stack.push((t.root(), 0));
    while let Some(top) = stack.last_mut() {
        let (v, next) = *top;
        if let Some(&c) = t.children(v).get(next) {
            top.1 += 1;
            date += 1;
            if first[c.index()] == 0 {
                first[c.index()] = date;
                stack.push((c, 0));
            } else {
                last[c.index()] = date;
            }
        } else {
            date += 1;
            second[v.index()] = date;
            last[v.index()] = last[v.index()].max(date);
            stack.pop();
        }
    }

    let mut lo = vec![u64::MAX; n];
    let mut hi = vec![0u64; n];
    let mut module = vec![false; n];
    for &v in t.bottom_up_order() {
        let i = v.index();
        for c in t.children(v) {
            let j = c.index();
            lo[i] = lo[i].min(first[j]).min(lo[j]);
            hi[i] = hi[i].max(last[j]).max(hi[j]);
        }
        module[i] = matches!(t.kind(v), NodeKind::Gate(_)) && first[i] < lo[i] && hi[i] < second[i];
    }
    module
}

impl ModularBdd {
    pub fn build(t: &FaultTree, budget: Option<usize>) -> Result<Self, EngineError> {
        let is_module = find_modules(t);
        let mut module_index = vec![usize::MAX; t.node_count()];
        let mut modules = Vec::new();

        for &gate in t.bottom_up_order().iter().filter(|v| is_module[v.index()]) {
            let inputs = module_inputs(t, gate, &is_module, &module_index);
            let mut level = std::collections::HashMap::new();
            for (l, input) in inputs.iter().enumerate() {
                let node = match *input {
                    Input::Event(be) => t.basic_events()[be],
                    Input::Module(m) => modules_gate(&modules, m),
                };
                level.insert(node, l as u32);
            }
            let mut manager = BddManager::new(budget);
            let root = manager.build_subdag(t, gate, &|v| if v == gate { None } else { level.get(&v).copied() })?;
            let bdd = manager.finish(root, (0..inputs.len()).collect());
            module_index[gate.index()] = modules.len();
            modules.push(Module { gate, inputs, bdd });
        }

        let root_event = t.be_index(t.root());
        Ok(ModularBdd { modules, basic_events: t.basic_event_count(), root_event })
    }

    pub fn module_count(&self) -> usize {
        self.modules.len()
    }

    /// Total internal nodes across all module BDDs.
    pub fn internal_node_count(&self) -> usize {
        self.modules.iter().map(|m| m.bdd.internal_node_count()).sum()
    }

    pub fn unreliability(&self, p: &ProbVector) -> Result<f64, EngineError> {
        self.probability(p.as_slice())
    }

    pub fn probability(&self, p: &[f64]) -> Result<f64, EngineError> {
        if p.len() != self.basic_events {
            return Err(EngineError::LengthMismatch { expected: self.basic_events, got: p.len() });
        }
        if let Some(be) = self.root_event {
            return Ok(p[be]);
        }
        let mut value = vec![0.0; self.modules.len()];
        let mut local = Vec::new();
        for (i, m) in self.modules.iter().enumerate() {
            local.clear();
            local.extend(m.inputs.iter().map(|input| match *input {
                Input::Event(be) => p[be],
                Input::Module(j) => value[j],
            }));
            value[i] = m.bdd.probability(&local)?;
        }
        Ok(*value.last().unwrap())
    }
}

fn modules_gate(modules: &[Module], m: usize) -> NodeId {
    modules[m].gate
}

/// Leaves of a module's BDD in depth-first first-visit order: basic events
/// and the roots of nested modules.
fn module_inputs(t: &FaultTree, gate: NodeId, is_module: &[bool], module_index: &[usize]) -> Vec<Input> {
    let mut seen = std::collections::HashSet::new();
    let mut inputs = Vec::new();
    let mut stack = vec![gate];
    while let Some(v) = stack.pop() {
        if !seen.insert(v) {
            continue;
        }
        if v != gate && is_module[v.index()] {
            inputs.push(Input::Module(module_index[v.index()]));
            continue;
        }
        if let Some(be) = t.be_index(v) {
            inputs.push(Input::Event(be));
            continue;
        }
        stack.extend(t.children(v).iter().rev().filter(|c| !seen.contains(*c)));
    }
    inputs
}
