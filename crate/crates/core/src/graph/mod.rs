//! Decision graphs: validation of the weak test-once property,
//! classification, class-formula compilation, and the closed-form
//! general-reason circuit.
//!
//! A decision graph is a rooted DAG whose internal nodes test a variable
//! and route on disjoint state sets, and whose leaves carry class labels.
//! The class formula of class `c` is compiled recursively as
//! `⋀_j (Δc[Tj] ∨ ℓj)` with `ℓj` the complement of edge `j`'s state set;
//! the general-reason circuit replaces `ℓj` by `⊥` on edges consistent
//! with the instance.

mod json;

pub use json::{graph_from_json, graph_to_json};

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{Literal, NnfArena, NodeId, StateSet, VarId, VarTable, World};
use crate::quantify;

/// An edge of a test node: a set of states routed to a child.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub states: StateSet,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DgNode {
    Leaf { class: usize },
    Test { var: VarId, edges: Vec<Edge> },
}

/// A decision graph over a variable table and a class-label set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionGraph {
    table: VarTable,
    classes: Vec<String>,
    nodes: Vec<DgNode>,
    /// External node ids as written in the JSON file, kept so that a
    /// loaded graph saves back with the same ids.
    node_ids: Vec<u64>,
    root: usize,
}

/// One weak-test-once (or structural) violation found by the validator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Internal index of the offending node.
    pub node: usize,
    /// External id of the offending node.
    pub node_id: u64,
    pub var: Option<String>,
    /// Root-to-node path (external ids) along which the violation holds.
    pub path: Vec<u64>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {}", self.node_id)?;
        if let Some(var) = &self.var {
            write!(f, " (testing {var})")?;
        }
        write!(f, ": {}", self.message)?;
        if !self.path.is_empty() {
            let path: Vec<String> = self.path.iter().map(u64::to_string).collect();
            write!(f, " [path {}]", path.join(" → "))?;
        }
        Ok(())
    }
}

/// Result of validating a decision graph; empty means valid.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl DecisionGraph {
    /// Builds a graph from parts; node ids default to the node indices.
    pub fn new(
        table: VarTable,
        classes: Vec<String>,
        nodes: Vec<DgNode>,
        root: usize,
    ) -> Result<DecisionGraph> {
        let node_ids = (0..nodes.len() as u64).collect();
        DecisionGraph::with_ids(table, classes, nodes, node_ids, root)
    }

    pub(crate) fn with_ids(
        table: VarTable,
        classes: Vec<String>,
        nodes: Vec<DgNode>,
        node_ids: Vec<u64>,
        root: usize,
    ) -> Result<DecisionGraph> {
        for (i, node) in nodes.iter().enumerate() {
            match node {
                DgNode::Leaf { class } => {
                    if *class >= classes.len() {
                        return Err(Error::BadGraph {
                            node: i,
                            reason: "leaf class out of range".into(),
                        });
                    }
                }
                DgNode::Test { var, edges } => {
                    if var.0 >= table.len() {
                        return Err(Error::BadGraph {
                            node: i,
                            reason: "test variable out of range".into(),
                        });
                    }
                    if edges.iter().any(|e| e.to >= nodes.len()) {
                        return Err(Error::BadGraph {
                            node: i,
                            reason: "edge target out of range".into(),
                        });
                    }
                }
            }
        }
        if root >= nodes.len() {
            return Err(Error::BadGraph {
                node: root,
                reason: "root out of range".into(),
            });
        }
        Ok(DecisionGraph {
            table,
            classes,
            nodes,
            node_ids,
            root,
        })
    }

    pub fn table(&self) -> &VarTable {
        &self.table
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn class_index(&self, name: &str) -> Result<usize> {
        self.classes
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::UnknownClass(name.to_string()))
    }

    pub fn nodes(&self) -> &[DgNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub(crate) fn node_ids(&self) -> &[u64] {
        &self.node_ids
    }

    /// Checks the weak test-once property on every root-to-leaf path:
    /// the first test of a variable partitions all of its states and any
    /// re-test partitions exactly the state set inherited from the
    /// previous test. Also rejects cycles, overlapping or empty edges
    /// and single-edge tests.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut on_path = vec![false; self.nodes.len()];
        let mut path = Vec::new();
        let mut inherited: HashMap<VarId, StateSet> = HashMap::new();
        self.walk(
            self.root,
            &mut on_path,
            &mut path,
            &mut inherited,
            &mut report,
        );
        report
    }

    fn violation(
        &self,
        node: usize,
        var: Option<VarId>,
        path: &[usize],
        message: String,
    ) -> Violation {
        Violation {
            node,
            node_id: self.node_ids[node],
            var: var.map(|v| self.table.name(v).to_string()),
            path: path.iter().map(|&n| self.node_ids[n]).collect(),
            message,
        }
    }

    fn walk(
        &self,
        node: usize,
        on_path: &mut [bool],
        path: &mut Vec<usize>,
        inherited: &mut HashMap<VarId, StateSet>,
        report: &mut ValidationReport,
    ) {
        if on_path[node] {
            report.violations.push(self.violation(
                node,
                None,
                path,
                "cycle detected; decision graphs must be DAGs".into(),
            ));
            return;
        }
        let DgNode::Test { var, edges } = &self.nodes[node] else {
            return;
        };
        on_path[node] = true;
        path.push(node);

        let var = *var;
        let expected = inherited
            .get(&var)
            .copied()
            .unwrap_or_else(|| StateSet::full(self.table.arity(var)));
        let scope = if inherited.contains_key(&var) {
            "the state set inherited from the previous test"
        } else {
            "all states (first test on the path)"
        };

        let mut ok = true;
        if edges.len() < 2 {
            report.violations.push(self.violation(
                node,
                Some(var),
                path,
                "test node needs at least two outgoing edges".into(),
            ));
            ok = false;
        }
        let mut union = StateSet::EMPTY;
        for e in edges {
            if e.states.is_empty() {
                report.violations.push(self.violation(
                    node,
                    Some(var),
                    path,
                    "edge with an empty state set".into(),
                ));
                ok = false;
            }
            if !union.inter(e.states).is_empty() {
                report.violations.push(self.violation(
                    node,
                    Some(var),
                    path,
                    "edge state sets overlap".into(),
                ));
                ok = false;
            }
            union = union.union(e.states);
        }
        if ok && union != expected {
            report.violations.push(self.violation(
                node,
                Some(var),
                path,
                format!(
                    "edges partition {{{}}} but must partition {scope} {{{}}}",
                    self.render_states(var, union),
                    self.render_states(var, expected)
                ),
            ));
        }

        for e in edges {
            let previous = inherited.insert(var, e.states);
            self.walk(e.to, on_path, path, inherited, report);
            match previous {
                Some(p) => inherited.insert(var, p),
                None => inherited.remove(&var),
            };
        }

        path.pop();
        on_path[node] = false;
    }

    fn render_states(&self, var: VarId, states: StateSet) -> String {
        states
            .iter()
            .map(|s| self.table.state_name(var, s))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Follows the instance from the root to its unique leaf.
    pub fn classify(&self, instance: &World) -> Result<usize> {
        instance.check(&self.table)?;
        let mut node = self.root;
        let mut steps = 0;
        loop {
            match &self.nodes[node] {
                DgNode::Leaf { class } => return Ok(*class),
                DgNode::Test { var, edges } => {
                    let state = instance.state(*var);
                    let edge = edges.iter().find(|e| e.states.contains(state));
                    match edge {
                        Some(e) => node = e.to,
                        None => {
                            return Err(Error::BadGraph {
                                node,
                                reason: format!(
                                    "no edge for {} = {}",
                                    self.table.name(*var),
                                    self.table.state_name(*var, state)
                                ),
                            })
                        }
                    }
                }
            }
            steps += 1;
            if steps > self.nodes.len() {
                return Err(Error::BadGraph {
                    node,
                    reason: "classification did not terminate; graph has a cycle".into(),
                });
            }
        }
    }

    pub fn classify_label(&self, instance: &World) -> Result<&str> {
        Ok(&self.classes[self.classify(instance)?])
    }

    /// Compiles the class formula `Δc[T]`: `⊤`/`⊥` at leaves and
    /// `⋀_j (Δc[Tj] ∨ ℓj)` at tests, `ℓj` being the literal over the
    /// states missing from edge `j`. Shared subgraphs are compiled once.
    pub fn class_formula(&self, class: usize, arena: &mut NnfArena) -> Result<NodeId> {
        self.check_class(class)?;
        self.check_table(arena)?;
        let mut memo = HashMap::new();
        self.formula_rec(self.root, class, None, arena, &mut memo)
    }

    /// The closed-form general-reason circuit `Γc[T]` for `instance`:
    /// as [`DecisionGraph::class_formula`], except that `ℓj = ⊥` on edges
    /// whose state set contains the instance's state.
    pub fn general_reason_circuit(
        &self,
        class: usize,
        instance: &World,
        arena: &mut NnfArena,
    ) -> Result<NodeId> {
        self.check_in_class(class, instance)?;
        self.check_table(arena)?;
        let mut memo = HashMap::new();
        self.formula_rec(self.root, class, Some(instance), arena, &mut memo)
    }

    /// [`DecisionGraph::general_reason_circuit`] without constant folding:
    /// the literal-for-literal closed form, kept for inspection.
    pub fn general_reason_circuit_raw(
        &self,
        class: usize,
        instance: &World,
        arena: &mut NnfArena,
    ) -> Result<NodeId> {
        self.check_in_class(class, instance)?;
        self.check_table(arena)?;
        let mut memo = HashMap::new();
        self.raw_rec(self.root, class, instance, arena, &mut memo)
    }

    /// The complete reason `∀I·Δc[T]` for the decision on `instance`.
    pub fn complete_reason(
        &self,
        class: usize,
        instance: &World,
        arena: &mut NnfArena,
    ) -> Result<NodeId> {
        self.check_in_class(class, instance)?;
        self.check_table(arena)?;
        let delta = self.class_formula(class, arena)?;
        quantify::forall_term(arena, delta, &crate::logic::instance_term(instance))
    }

    fn formula_rec(
        &self,
        node: usize,
        class: usize,
        instance: Option<&World>,
        arena: &mut NnfArena,
        memo: &mut HashMap<usize, NodeId>,
    ) -> Result<NodeId> {
        if let Some(&id) = memo.get(&node) {
            return Ok(id);
        }
        let id = match &self.nodes[node] {
            DgNode::Leaf { class: c } => {
                if *c == class {
                    arena.tru()
                } else {
                    arena.fls()
                }
            }
            DgNode::Test { var, edges } => {
                let mut conjuncts = Vec::with_capacity(edges.len());
                for e in edges {
                    let child = self.formula_rec(e.to, class, instance, arena, memo)?;
                    let lit = self.edge_literal(*var, e, instance, arena)?;
                    conjuncts.push(arena.or([child, lit]));
                }
                arena.and(conjuncts)
            }
        };
        memo.insert(node, id);
        Ok(id)
    }

    fn raw_rec(
        &self,
        node: usize,
        class: usize,
        instance: &World,
        arena: &mut NnfArena,
        memo: &mut HashMap<usize, NodeId>,
    ) -> Result<NodeId> {
        if let Some(&id) = memo.get(&node) {
            return Ok(id);
        }
        let id = match &self.nodes[node] {
            DgNode::Leaf { class: c } => {
                if *c == class {
                    arena.tru()
                } else {
                    arena.fls()
                }
            }
            DgNode::Test { var, edges } => {
                let mut conjuncts = Vec::with_capacity(edges.len());
                for e in edges {
                    let child = self.raw_rec(e.to, class, instance, arena, memo)?;
                    let lit = self.edge_literal(*var, e, Some(instance), arena)?;
                    conjuncts.push(arena.or_raw(vec![child, lit]));
                }
                arena.and_raw(conjuncts)
            }
        };
        memo.insert(node, id);
        Ok(id)
    }

    fn edge_literal(
        &self,
        var: VarId,
        edge: &Edge,
        instance: Option<&World>,
        arena: &mut NnfArena,
    ) -> Result<NodeId> {
        if let Some(i) = instance {
            if edge.states.contains(i.state(var)) {
                return Ok(arena.fls());
            }
        }
        let complement = edge.states.complement(self.table.arity(var));
        debug_assert!(!complement.is_empty(), "edges never cover a full domain");
        arena.lit(Literal {
            var,
            states: complement,
        })
    }

    fn check_class(&self, class: usize) -> Result<()> {
        if class >= self.classes.len() {
            return Err(Error::UnknownClass(format!("index {class}")));
        }
        Ok(())
    }

    fn check_in_class(&self, class: usize, instance: &World) -> Result<()> {
        self.check_class(class)?;
        if self.classify(instance)? != class {
            return Err(Error::NotInClass(self.classes[class].clone()));
        }
        Ok(())
    }

    fn check_table(&self, arena: &NnfArena) -> Result<()> {
        if arena.table() != &self.table {
            return Err(Error::Schema(
                "arena was built over a different variable table".into(),
            ));
        }
        Ok(())
    }

    /// A fresh arena over this graph's variable table.
    pub fn arena(&self) -> NnfArena {
        NnfArena::new(self.table.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::instance_term;

    /// The three-class ternary decision graph of the running example:
    /// Δ¹ = x12 ∨ x3∧y1∧z13, Δ² = x3∧z2, Δ³ = x3∧y23∧z13.
    fn three_class_graph() -> DecisionGraph {
        let mut t = VarTable::new();
        t.add_var("X", ["x1", "x2", "x3"]).unwrap();
        t.add_var("Y", ["y1", "y2", "y3"]).unwrap();
        t.add_var("Z", ["z1", "z2", "z3"]).unwrap();
        let classes = vec!["c1".to_string(), "c2".to_string(), "c3".to_string()];
        let nodes = vec![
            // 0: root X
            DgNode::Test {
                var: VarId(0),
                edges: vec![
                    Edge {
                        states: StateSet::from_states([0, 1]),
                        to: 5,
                    },
                    Edge {
                        states: StateSet::singleton(2),
                        to: 1,
                    },
                ],
            },
            // 1: Y
            DgNode::Test {
                var: VarId(1),
                edges: vec![
                    Edge {
                        states: StateSet::singleton(0),
                        to: 2,
                    },
                    Edge {
                        states: StateSet::from_states([1, 2]),
                        to: 3,
                    },
                ],
            },
            // 2: Z (left)
            DgNode::Test {
                var: VarId(2),
                edges: vec![
                    Edge {
                        states: StateSet::from_states([0, 2]),
                        to: 6,
                    },
                    Edge {
                        states: StateSet::singleton(1),
                        to: 4,
                    },
                ],
            },
            // 3: Z (right); shares the c2 leaf with node 2
            DgNode::Test {
                var: VarId(2),
                edges: vec![
                    Edge {
                        states: StateSet::singleton(1),
                        to: 4,
                    },
                    Edge {
                        states: StateSet::from_states([0, 2]),
                        to: 7,
                    },
                ],
            },
            DgNode::Leaf { class: 1 }, // 4: c2 (shared)
            DgNode::Leaf { class: 0 }, // 5: c1
            DgNode::Leaf { class: 0 }, // 6: c1
            DgNode::Leaf { class: 2 }, // 7: c3
        ];
        DecisionGraph::new(t, classes, nodes, 0).unwrap()
    }

    #[test]
    fn three_class_graph_validates_and_counts() {
        let g = three_class_graph();
        assert!(g.validate().is_valid());
        let mut arena = g.arena();
        let d1 = g.class_formula(0, &mut arena).unwrap();
        let d2 = g.class_formula(1, &mut arena).unwrap();
        let d3 = g.class_formula(2, &mut arena).unwrap();
        assert_eq!(arena.count_models(d1).unwrap(), 20);
        assert_eq!(arena.count_models(d2).unwrap(), 3);
        assert_eq!(arena.count_models(d3).unwrap(), 4);
    }

    #[test]
    fn classify_agrees_with_class_formulas_exhaustively() {
        let g = three_class_graph();
        let mut arena = g.arena();
        let formulas: Vec<NodeId> = (0..3)
            .map(|c| g.class_formula(c, &mut arena).unwrap())
            .collect();
        for w in g.table().worlds().collect::<Vec<_>>() {
            let c = g.classify(&w).unwrap();
            for (i, &f) in formulas.iter().enumerate() {
                assert_eq!(arena.evaluate(f, &w).unwrap(), i == c);
            }
        }
    }

    #[test]
    fn classify_example_instance() {
        let g = three_class_graph();
        // I = x3 ∧ y2 ∧ z2 belongs to class c2
        let i = World(vec![2, 1, 1]);
        assert_eq!(g.classify_label(&i).unwrap(), "c2");
    }

    #[test]
    fn general_reason_closed_form_matches_select() {
        let g = three_class_graph();
        let mut arena = g.arena();
        for w in g.table().worlds().collect::<Vec<_>>() {
            let c = g.classify(&w).unwrap();
            let gamma = g.general_reason_circuit(c, &w, &mut arena).unwrap();
            let delta = g.class_formula(c, &mut arena).unwrap();
            let selected =
                quantify::select_term(&mut arena, delta, &instance_term(&w)).unwrap();
            assert!(arena.equivalent(gamma, selected).unwrap());
            assert!(quantify::is_locally_fixated(&arena, gamma, &w));
        }
    }

    #[test]
    fn raw_closed_form_is_equivalent_to_folded() {
        let g = three_class_graph();
        let mut arena = g.arena();
        let i = World(vec![2, 1, 1]);
        let c = g.classify(&i).unwrap();
        let folded = g.general_reason_circuit(c, &i, &mut arena).unwrap();
        let raw = g.general_reason_circuit_raw(c, &i, &mut arena).unwrap();
        assert!(arena.equivalent(folded, raw).unwrap());
    }

    #[test]
    fn wrong_class_is_rejected() {
        let g = three_class_graph();
        let mut arena = g.arena();
        let i = World(vec![2, 1, 1]); // class c2
        assert!(matches!(
            g.general_reason_circuit(0, &i, &mut arena),
            Err(Error::NotInClass(_))
        ));
    }

    #[test]
    fn validator_flags_broken_partitions() {
        let mut t = VarTable::new();
        t.add_var("X", ["a", "b", "c"]).unwrap();
        let classes = vec!["yes".to_string(), "no".to_string()];
        // first test of X skips state c entirely
        let nodes = vec![
            DgNode::Test {
                var: VarId(0),
                edges: vec![
                    Edge {
                        states: StateSet::singleton(0),
                        to: 1,
                    },
                    Edge {
                        states: StateSet::singleton(1),
                        to: 2,
                    },
                ],
            },
            DgNode::Leaf { class: 0 },
            DgNode::Leaf { class: 1 },
        ];
        let g = DecisionGraph::new(t, classes, nodes, 0).unwrap();
        let report = g.validate();
        assert!(!report.is_valid());
        assert_eq!(report.violations[0].node, 0);
        assert!(report.violations[0].message.contains("must partition"));
    }

    #[test]
    fn validator_flags_retest_outside_inherited_set() {
        let mut t = VarTable::new();
        t.add_var("X", ["a", "b", "c"]).unwrap();
        t.add_var("Y", ["u", "v"]).unwrap();
        let classes = vec!["yes".to_string(), "no".to_string()];
        // root tests X into {a} / {b,c}; the re-test below {b,c} reuses {a}
        let nodes = vec![
            DgNode::Test {
                var: VarId(0),
                edges: vec![
                    Edge {
                        states: StateSet::singleton(0),
                        to: 3,
                    },
                    Edge {
                        states: StateSet::from_states([1, 2]),
                        to: 1,
                    },
                ],
            },
            DgNode::Test {
                var: VarId(0),
                edges: vec![
                    Edge {
                        states: StateSet::singleton(0),
                        to: 3,
                    },
                    Edge {
                        states: StateSet::from_states([1, 2]),
                        to: 4,
                    },
                ],
            },
            DgNode::Leaf { class: 0 },
            DgNode::Leaf { class: 0 },
            DgNode::Leaf { class: 1 },
        ];
        let g = DecisionGraph::new(t, classes, nodes, 0).unwrap();
        let report = g.validate();
        assert!(!report.is_valid());
        let v = &report.violations[0];
        assert_eq!(v.node, 1);
        assert_eq!(v.path, vec![0, 1]);
        assert_eq!(v.var.as_deref(), Some("X"));
    }

    #[test]
    fn validator_flags_cycles() {
        let mut t = VarTable::new();
        t.add_var("X", ["a", "b"]).unwrap();
        let classes = vec!["yes".to_string()];
        let nodes = vec![
            DgNode::Test {
                var: VarId(0),
                edges: vec![
                    Edge {
                        states: StateSet::singleton(0),
                        to: 0,
                    },
                    Edge {
                        states: StateSet::singleton(1),
                        to: 1,
                    },
                ],
            },
            DgNode::Leaf { class: 0 },
        ];
        let g = DecisionGraph::new(t, classes, nodes, 0).unwrap();
        let report = g.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| v.message.contains("cycle")));
    }
}
