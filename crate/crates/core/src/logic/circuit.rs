use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::logic::literal::{Literal, StateSet};
use crate::logic::table::{VarId, VarTable, World};
use crate::logic::term::{Clause, Term};

/// Identifier of a node in an [`NnfArena`].
///
/// Ids are stable and structural: two structurally identical subcircuits
/// interned in the same arena receive the same id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An NNF circuit node. Negation does not occur; it is pushed to the
/// literals when a formula is built (see [`NnfArena::negate`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    True,
    False,
    Lit(Literal),
    And(Box<[NodeId]>),
    Or(Box<[NodeId]>),
}

/// A hash-consing arena of NNF circuit nodes over one variable table.
///
/// All formulas of a problem live in one arena so that structurally equal
/// subcircuits share a node id; the algorithm caches are keyed by those
/// ids. Nodes are immutable once interned and children always have
/// smaller ids than their parents, so a single ascending pass visits any
/// sub-DAG bottom-up.
#[derive(Debug, Clone)]
pub struct NnfArena {
    table: VarTable,
    nodes: Vec<Node>,
    index: HashMap<Node, NodeId>,
    world_budget: u128,
}

/// Default bound on the number of worlds an enumeration-backed operation
/// will accept.
pub const DEFAULT_WORLD_BUDGET: u128 = 1_000_000;

impl NnfArena {
    pub fn new(table: VarTable) -> Self {
        let mut arena = NnfArena {
            table,
            nodes: Vec::new(),
            index: HashMap::new(),
            world_budget: DEFAULT_WORLD_BUDGET,
        };
        arena.intern(Node::True);
        arena.intern(Node::False);
        arena
    }

    pub fn table(&self) -> &VarTable {
        &self.table
    }

    pub fn world_budget(&self) -> u128 {
        self.world_budget
    }

    pub fn set_world_budget(&mut self, budget: u128) {
        self.world_budget = budget;
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn intern(&mut self, node: Node) -> NodeId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(node.clone());
        self.index.insert(node, id);
        id
    }

    pub fn tru(&self) -> NodeId {
        NodeId(0)
    }

    pub fn fls(&self) -> NodeId {
        NodeId(1)
    }

    pub fn lit(&mut self, lit: Literal) -> Result<NodeId> {
        Literal::new(&self.table, lit.var, lit.states)?;
        Ok(self.intern(Node::Lit(lit)))
    }

    pub fn lit_names(&mut self, var: &str, states: &[&str]) -> Result<NodeId> {
        let l = Literal::from_names(&self.table, var, states)?;
        self.lit(l)
    }

    /// Conjunction with eager folding: `⊥` absorbs, `⊤` children drop,
    /// duplicates collapse, singletons unwrap.
    pub fn and(&mut self, children: impl IntoIterator<Item = NodeId>) -> NodeId {
        let mut kept: Vec<NodeId> = Vec::new();
        for c in children {
            match self.node(c) {
                Node::True => {}
                Node::False => return self.fls(),
                _ => kept.push(c),
            }
        }
        kept.sort_unstable();
        kept.dedup();
        match kept.len() {
            0 => self.tru(),
            1 => kept[0],
            _ => self.intern(Node::And(kept.into_boxed_slice())),
        }
    }

    /// Disjunction with eager folding, dual to [`NnfArena::and`].
    pub fn or(&mut self, children: impl IntoIterator<Item = NodeId>) -> NodeId {
        let mut kept: Vec<NodeId> = Vec::new();
        for c in children {
            match self.node(c) {
                Node::False => {}
                Node::True => return self.tru(),
                _ => kept.push(c),
            }
        }
        kept.sort_unstable();
        kept.dedup();
        match kept.len() {
            0 => self.fls(),
            1 => kept[0],
            _ => self.intern(Node::Or(kept.into_boxed_slice())),
        }
    }

    /// Conjunction without folding; keeps the children exactly as given.
    pub fn and_raw(&mut self, children: Vec<NodeId>) -> NodeId {
        self.intern(Node::And(children.into_boxed_slice()))
    }

    /// Disjunction without folding; keeps the children exactly as given.
    pub fn or_raw(&mut self, children: Vec<NodeId>) -> NodeId {
        self.intern(Node::Or(children.into_boxed_slice()))
    }

    pub fn term(&mut self, term: &Term) -> Result<NodeId> {
        let lits: Vec<NodeId> = term
            .literals()
            .map(|l| self.lit(l))
            .collect::<Result<_>>()?;
        Ok(self.and(lits))
    }

    pub fn clause(&mut self, clause: &Clause) -> Result<NodeId> {
        let lits: Vec<NodeId> = clause
            .literals()
            .map(|l| self.lit(l))
            .collect::<Result<_>>()?;
        Ok(self.or(lits))
    }

    /// The sub-DAG reachable from `root`, in ascending (bottom-up) id order.
    pub fn reachable(&self, root: NodeId) -> Vec<NodeId> {
        self.reachable_many(&[root])
    }

    pub fn reachable_many(&self, roots: &[NodeId]) -> Vec<NodeId> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack: Vec<NodeId> = roots.to_vec();
        while let Some(id) = stack.pop() {
            if seen[id.index()] {
                continue;
            }
            seen[id.index()] = true;
            match self.node(id) {
                Node::And(cs) | Node::Or(cs) => stack.extend(cs.iter().copied()),
                _ => {}
            }
        }
        (0..self.nodes.len())
            .filter(|&i| seen[i])
            .map(|i| NodeId(i as u32))
            .collect()
    }

    /// Variables mentioned in the sub-circuit rooted at `root`.
    pub fn vars_of(&self, root: NodeId) -> BTreeSet<VarId> {
        let mut vars = BTreeSet::new();
        for id in self.reachable(root) {
            if let Node::Lit(l) = self.node(id) {
                vars.insert(l.var);
            }
        }
        vars
    }

    /// All literal leaves reachable from `root` (each shared leaf once).
    pub fn literals_of(&self, root: NodeId) -> Vec<Literal> {
        self.reachable(root)
            .into_iter()
            .filter_map(|id| match self.node(id) {
                Node::Lit(l) => Some(*l),
                _ => None,
            })
            .collect()
    }

    /// Evaluates `root` at world `w` with one memoized bottom-up pass.
    pub fn evaluate(&self, root: NodeId, w: &World) -> Result<bool> {
        w.check(&self.table)?;
        let order = self.reachable(root);
        let mut values = vec![false; self.nodes.len()];
        self.eval_order(&order, w, &mut values);
        Ok(values[root.index()])
    }

    fn eval_order(&self, order: &[NodeId], w: &World, values: &mut [bool]) {
        for &id in order {
            values[id.index()] = match self.node(id) {
                Node::True => true,
                Node::False => false,
                Node::Lit(l) => l.holds_in(w.state(l.var)),
                Node::And(cs) => cs.iter().all(|c| values[c.index()]),
                Node::Or(cs) => cs.iter().any(|c| values[c.index()]),
            };
        }
    }

    /// Conditions `root` on a simple term: every literal of a conditioned
    /// variable becomes a constant and constants are folded away. The
    /// result mentions no variable of `term`.
    pub fn condition(&mut self, root: NodeId, term: &Term) -> Result<NodeId> {
        if !term.is_simple() {
            return Err(Error::NotSimple);
        }
        let order = self.reachable(root);
        let mut map: HashMap<NodeId, NodeId> = HashMap::new();
        for id in order {
            let new = match self.node(id).clone() {
                Node::True => self.tru(),
                Node::False => self.fls(),
                Node::Lit(l) => match term.get(l.var) {
                    Some(s) => {
                        let state = s.iter().next().unwrap();
                        if l.holds_in(state) {
                            self.tru()
                        } else {
                            self.fls()
                        }
                    }
                    None => self.intern(Node::Lit(l)),
                },
                Node::And(cs) => {
                    let children: Vec<NodeId> = cs.iter().map(|c| map[c]).collect();
                    self.and(children)
                }
                Node::Or(cs) => {
                    let children: Vec<NodeId> = cs.iter().map(|c| map[c]).collect();
                    self.or(children)
                }
            };
            map.insert(id, new);
        }
        Ok(map[&root])
    }

    /// Conditions on a single state of one variable.
    pub fn condition_state(&mut self, root: NodeId, var: VarId, state: usize) -> Result<NodeId> {
        let mut term = Term::top();
        term = term
            .and_literal(Literal {
                var,
                states: StateSet::singleton(state),
            })
            .expect("singleton literal is consistent");
        self.condition(root, &term)
    }

    /// The NNF of `¬root`: De Morgan push-down with literal complement.
    pub fn negate(&mut self, root: NodeId) -> NodeId {
        let order = self.reachable(root);
        let mut map: HashMap<NodeId, NodeId> = HashMap::new();
        for id in order {
            let new = match self.node(id).clone() {
                Node::True => self.fls(),
                Node::False => self.tru(),
                Node::Lit(l) => {
                    let neg = l.negated(&self.table);
                    self.intern(Node::Lit(neg))
                }
                Node::And(cs) => {
                    let children: Vec<NodeId> = cs.iter().map(|c| map[c]).collect();
                    self.or(children)
                }
                Node::Or(cs) => {
                    let children: Vec<NodeId> = cs.iter().map(|c| map[c]).collect();
                    self.and(children)
                }
            };
            map.insert(id, new);
        }
        map[&root]
    }

    fn ensure_world_budget(&self, what: &'static str) -> Result<u128> {
        let count = self.table.world_count().unwrap_or(u128::MAX);
        if count > self.world_budget {
            return Err(Error::Capacity {
                what,
                need: count,
                limit: self.world_budget,
            });
        }
        Ok(count)
    }

    /// `a ⊨ b`, decided by exhaustive world enumeration within the
    /// configured budget. Desk-scale infrastructure, not a prover.
    pub fn entails(&self, a: NodeId, b: NodeId) -> Result<bool> {
        self.ensure_world_budget("entailment check")?;
        let order = self.reachable_many(&[a, b]);
        let mut values = vec![false; self.nodes.len()];
        for w in self.table.worlds() {
            self.eval_order(&order, &w, &mut values);
            if values[a.index()] && !values[b.index()] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Semantic equivalence by enumeration.
    pub fn equivalent(&self, a: NodeId, b: NodeId) -> Result<bool> {
        self.ensure_world_budget("equivalence check")?;
        let order = self.reachable_many(&[a, b]);
        let mut values = vec![false; self.nodes.len()];
        for w in self.table.worlds() {
            self.eval_order(&order, &w, &mut values);
            if values[a.index()] != values[b.index()] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn count_models(&self, root: NodeId) -> Result<u128> {
        self.ensure_world_budget("model counting")?;
        let order = self.reachable(root);
        let mut values = vec![false; self.nodes.len()];
        let mut n = 0;
        for w in self.table.worlds() {
            self.eval_order(&order, &w, &mut values);
            if values[root.index()] {
                n += 1;
            }
        }
        Ok(n)
    }

    /// Renders the circuit as a formula string, for reports and debugging.
    pub fn render(&self, root: NodeId) -> String {
        match self.node(root) {
            Node::True => "⊤".to_string(),
            Node::False => "⊥".to_string(),
            Node::Lit(l) => l.render(&self.table),
            Node::And(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| self.render_child(*c, true)).collect();
                parts.join(" ∧ ")
            }
            Node::Or(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| self.render_child(*c, false)).collect();
                parts.join(" ∨ ")
            }
        }
    }

    fn render_child(&self, id: NodeId, under_and: bool) -> String {
        let needs_parens = match self.node(id) {
            Node::And(_) => !under_and,
            Node::Or(_) => under_and,
            _ => false,
        };
        if needs_parens {
            format!("({})", self.render(id))
        } else {
            self.render(id)
        }
    }
}
