//! Fault-tree DAGs, their structure function, and brute-force unreliability.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Default cap on basic events for exhaustive enumeration.
pub const BRUTE_FORCE_CAP: usize = 20;

/// Dense node index into a [`FaultTree`] or [`FaultTreeBuilder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    And,
    Or,
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gate::And => "and",
            Gate::Or => "or",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    BasicEvent,
    Gate(Gate),
}

/// Structural rule violated by a fault-tree graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Cycle,
    Unreachable,
    MultipleRoots,
    EmptyGate,
    BasicEventWithChildren,
    DuplicateEdge,
    DuplicateName,
    DanglingChild,
    BadRoot,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Cycle => "cycle detected",
            Rule::Unreachable => "unreachable from the root",
            Rule::MultipleRoots => "additional root (node without parents)",
            Rule::EmptyGate => "gate without children",
            Rule::BasicEventWithChildren => "basic event with children",
            Rule::DuplicateEdge => "child listed more than once",
            Rule::DuplicateName => "name used by more than one node",
            Rule::DanglingChild => "child does not exist",
            Rule::BadRoot => "root does not exist",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub node: NodeId,
    pub name: String,
    pub rule: Rule,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node \"{}\": {}", self.name, self.rule)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("invalid fault tree: {}", join_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("expected {expected} basic events, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{basic_events} basic events exceed the enumeration cap of {cap}")]
    TooLarge { basic_events: usize, cap: usize },
    #[error("probability {value} of basic event {index} lies outside [0, 1]")]
    NotProbability { index: usize, value: f64 },
}

fn join_diagnostics(diags: &[Diagnostic]) -> String {
    diags.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone)]
struct RawNode {
    name: String,
    kind: NodeKind,
    children: Vec<NodeId>,
}

/// Mutable fault-tree graph, not yet validated.
#[derive(Debug, Clone, Default)]
pub struct FaultTreeBuilder {
    nodes: Vec<RawNode>,
}

impl FaultTreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        FaultTreeBuilder { nodes: Vec::with_capacity(n) }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn add_basic_event(&mut self, name: impl Into<String>) -> NodeId {
        self.push(name.into(), NodeKind::BasicEvent, Vec::new())
    }

    pub fn add_gate(&mut self, name: impl Into<String>, gate: Gate, children: Vec<NodeId>) -> NodeId {
        self.push(name.into(), NodeKind::Gate(gate), children)
    }

    fn push(&mut self, name: String, kind: NodeKind, children: Vec<NodeId>) -> NodeId {
        let id = NodeId(self.nodes.len());
        self.nodes.push(RawNode { name, kind, children });
        id
    }

    pub fn add_child(&mut self, parent: NodeId, child: NodeId) {
        self.nodes[parent.0].children.push(child);
    }

    pub fn set_children(&mut self, parent: NodeId, children: Vec<NodeId>) {
        self.nodes[parent.0].children = children;
    }

    /// Checks every structural rule, returning all violations found.
    pub fn validate(&self, root: NodeId) -> Vec<Diagnostic> {
        let n = self.nodes.len();
        let mut diags = Vec::new();
        let diag = |id: usize, rule| Diagnostic { node: NodeId(id), name: self.nodes[id].name.clone(), rule };

        if root.0 >= n {
            return vec![Diagnostic { node: root, name: format!("#{}", root.0), rule: Rule::BadRoot }];
        }

        let mut names: HashMap<&str, usize> = HashMap::new();
        let mut parents = vec![0usize; n];
        for (id, node) in self.nodes.iter().enumerate() {
            if names.insert(node.name.as_str(), id).is_some() {
                diags.push(diag(id, Rule::DuplicateName));
            }
            match node.kind {
                NodeKind::BasicEvent if !node.children.is_empty() => {
                    diags.push(diag(id, Rule::BasicEventWithChildren))
                }
                NodeKind::Gate(_) if node.children.is_empty() => diags.push(diag(id, Rule::EmptyGate)),
                _ => {}
            }
            let mut seen = HashSet::new();
            for &c in &node.children {
                if c.0 >= n {
                    diags.push(diag(id, Rule::DanglingChild));
                } else if !seen.insert(c) {
                    diags.push(diag(id, Rule::DuplicateEdge));
                } else {
                    parents[c.0] += 1;
                }
            }
        }

        for id in self.cycle_nodes() {
            diags.push(diag(id, Rule::Cycle));
        }

        let reachable = self.reachable_from(root);
        for id in 0..n {
            if id == root.0 {
                continue;
            }
            if parents[id] == 0 {
                diags.push(diag(id, Rule::MultipleRoots));
            } else if !reachable[id] {
                diags.push(diag(id, Rule::Unreachable));
            }
        }
        diags
    }

    /// Nodes that close a cycle (targets of back edges), found by iterative DFS.
    fn cycle_nodes(&self) -> Vec<usize> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.nodes.len();
        let mut mark = vec![Mark::New; n];
        let mut flagged = vec![false; n];
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for start in 0..n {
            if mark[start] != Mark::New {
                continue;
            }
            mark[start] = Mark::Active;
            stack.push((start, 0));
            while let Some(top) = stack.last_mut() {
                let (v, next) = *top;
                let children = &self.nodes[v].children;
                if next < children.len() {
                    let c = children[next].0;
                    top.1 += 1;
                    if c >= n {
                        continue;
                    }
                    match mark[c] {
                        Mark::New => {
                            mark[c] = Mark::Active;
                            stack.push((c, 0));
                        }
                        Mark::Active => flagged[c] = true,
                        Mark::Done => {}
                    }
                } else {
                    mark[v] = Mark::Done;
                    stack.pop();
                }
            }
        }
        (0..n).filter(|&i| flagged[i]).collect()
    }

    fn reachable_from(&self, root: NodeId) -> Vec<bool> {
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut stack = vec![root.0];
        seen[root.0] = true;
        while let Some(v) = stack.pop() {
            for &c in &self.nodes[v].children {
                if c.0 < n && !seen[c.0] {
                    seen[c.0] = true;
                    stack.push(c.0);
                }
            }
        }
        seen
    }

    /// Validates and freezes the graph.
    pub fn build(self, root: NodeId) -> Result<FaultTree, ModelError> {
        let diags = self.validate(root);
        if !diags.is_empty() {
            return Err(ModelError::Invalid(diags));
        }
        Ok(FaultTree::from_valid(self.nodes, root))
    }
}

/// A validated fault tree: a rooted DAG of AND/OR gates over basic events.
///
/// Basic events are indexed `0..basic_event_count()` in node order; status and
/// probability vectors use this indexing.
#[derive(Debug, Clone, PartialEq)]
pub struct FaultTree {
    names: Vec<String>,
    kinds: Vec<NodeKind>,
    children: Vec<Vec<NodeId>>,
    root: NodeId,
    basic_events: Vec<NodeId>,
    be_index: Vec<usize>,
    // Children before parents.
    order: Vec<NodeId>,
    parent_count: Vec<u32>,
}

const NOT_A_BE: usize = usize::MAX;

impl FaultTree {
    fn from_valid(nodes: Vec<RawNode>, root: NodeId) -> Self {
        let n = nodes.len();
        let mut names = Vec::with_capacity(n);
        let mut kinds = Vec::with_capacity(n);
        let mut children = Vec::with_capacity(n);
        for node in nodes {
            names.push(node.name);
            kinds.push(node.kind);
            children.push(node.children);
        }

        let mut basic_events = Vec::new();
        let mut be_index = vec![NOT_A_BE; n];
        for (i, kind) in kinds.iter().enumerate() {
            if *kind == NodeKind::BasicEvent {
                be_index[i] = basic_events.len();
                basic_events.push(NodeId(i));
            }
        }

        let mut parent_count = vec![0u32; n];
        for cs in &children {
            for c in cs {
                parent_count[c.0] += 1;
            }
        }

        // Kahn's algorithm from the root yields parents before children.
        let mut pending = parent_count.clone();
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &c in &children[v.0] {
                pending[c.0] -= 1;
                if pending[c.0] == 0 {
                    queue.push_back(c);
                }
            }
        }
        order.reverse();

        FaultTree { names, kinds, children, root, basic_events, be_index, order, parent_count }
    }

    /// Always empty for a constructed tree; kept for symmetry with the builder.
    pub fn validate(&self) -> Vec<Diagnostic> {
        self.to_builder().validate(self.root)
    }

    pub fn to_builder(&self) -> FaultTreeBuilder {
        FaultTreeBuilder {
            nodes: (0..self.node_count())
                .map(|i| RawNode {
                    name: self.names[i].clone(),
                    kind: self.kinds[i],
                    children: self.children[i].clone(),
                })
                .collect(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn basic_event_count(&self) -> usize {
        self.basic_events.len()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn kind(&self, id: NodeId) -> NodeKind {
        self.kinds[id.0]
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.children[id.0]
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.names[id.0]
    }

    pub fn parent_count(&self, id: NodeId) -> usize {
        self.parent_count[id.0] as usize
    }

    pub fn find(&self, name: &str) -> Option<NodeId> {
        self.names.iter().position(|n| n == name).map(NodeId)
    }

    /// Basic-event nodes in index order.
    pub fn basic_events(&self) -> &[NodeId] {
        &self.basic_events
    }

    pub fn be_index(&self, id: NodeId) -> Option<usize> {
        match self.be_index[id.0] {
            NOT_A_BE => None,
            i => Some(i),
        }
    }

    /// All nodes, every child before each of its parents; the root is last.
    pub fn bottom_up_order(&self) -> &[NodeId] {
        &self.order
    }

    /// True iff every non-root node has exactly one parent.
    pub fn is_tree_structured(&self) -> bool {
        (0..self.node_count()).all(|i| i == self.root.0 || self.parent_count[i] == 1)
    }

    /// Evaluates the structure function on a status vector.
    pub fn structure_eval(&self, status: &StatusVector) -> Result<bool, ModelError> {
        self.check_len(status.len())?;
        Ok(self.eval_with(|be| status.0[be]))
    }

    fn eval_with(&self, failed: impl Fn(usize) -> bool) -> bool {
        let mut value = vec![false; self.node_count()];
        for &v in &self.order {
            value[v.0] = match self.kinds[v.0] {
                NodeKind::BasicEvent => failed(self.be_index[v.0]),
                NodeKind::Gate(Gate::And) => self.children[v.0].iter().all(|c| value[c.0]),
                NodeKind::Gate(Gate::Or) => self.children[v.0].iter().any(|c| value[c.0]),
            };
        }
        value[self.root.0]
    }

    pub(crate) fn eval_mask(&self, mask: u64) -> bool {
        self.eval_with(|be| mask >> be & 1 == 1)
    }

    fn check_len(&self, got: usize) -> Result<(), ModelError> {
        let expected = self.basic_event_count();
        if got == expected {
            Ok(())
        } else {
            Err(ModelError::LengthMismatch { expected, got })
        }
    }

    fn check_cap(&self, cap: usize) -> Result<(), ModelError> {
        let basic_events = self.basic_event_count();
        // Masks are u64; 63 keeps the shift well defined.
        if basic_events > cap.min(63) {
            Err(ModelError::TooLarge { basic_events, cap })
        } else {
            Ok(())
        }
    }

    /// All status vectors that fail the root, with the default cap.
    pub fn cut_sets(&self) -> Result<Vec<StatusVector>, ModelError> {
        self.cut_sets_capped(BRUTE_FORCE_CAP)
    }

    pub fn cut_sets_capped(&self, cap: usize) -> Result<Vec<StatusVector>, ModelError> {
        self.check_cap(cap)?;
        let n = self.basic_event_count();
        Ok((0..1u64 << n)
            .filter(|&m| self.eval_mask(m))
            .map(|m| StatusVector::from_mask(m, n))
            .collect())
    }

    /// Exact unreliability by summing the probability of every cut set.
    pub fn unreliability_bruteforce(&self, p: &ProbVector) -> Result<f64, ModelError> {
        self.unreliability_bruteforce_capped(p, BRUTE_FORCE_CAP)
    }

    pub fn unreliability_bruteforce_capped(&self, p: &ProbVector, cap: usize) -> Result<f64, ModelError> {
        self.check_cap(cap)?;
        self.check_len(p.len())?;
        let n = self.basic_event_count();
        let p = p.as_slice();
        let mut total = 0.0;
        for mask in 0..1u64 << n {
            if self.eval_mask(mask) {
                let mut w = 1.0;
                for (i, &pi) in p.iter().enumerate() {
                    w *= if mask >> i & 1 == 1 { pi } else { 1.0 - pi };
                }
                total += w;
            }
        }
        Ok(total)
    }
}

/// Failure bit per basic event; `true` means failed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StatusVector(pub Vec<bool>);

impl StatusVector {
    pub fn from_mask(mask: u64, n: usize) -> Self {
        StatusVector((0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Failure probability per basic event, each in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    pub fn new(values: Vec<f64>) -> Result<Self, ModelError> {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !(0.0..=1.0).contains(*v)) {
            return Err(ModelError::NotProbability { index, value });
        }
        Ok(ProbVector(values))
    }

    pub fn uniform(value: f64, n: usize) -> Result<Self, ModelError> {
        Self::new(vec![value; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}
