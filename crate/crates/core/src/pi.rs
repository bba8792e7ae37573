//! Prime implicants of circuits with the disjunction discipline of
//! general-reason circuits, and their variable-minimal subset (GSRs).
//!
//! The recursion is the NNF→DNF conversion with subsumption removal
//! after every combine: on such circuits the resulting DNF is already in
//! prime-implicant form, no consensus needed. The GSR variant
//! additionally prunes terms that cannot take part in a variable-minimal
//! prime implicant, which is sound because the inputs are locally
//! fixated; the pruning tests against the variables confined to the
//! sub-circuit below the current node.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{NnfArena, Node, NodeId, Term, VarId, VarTable};
use crate::quantify::is_locally_fixated_on_some;

/// A deduplicated, canonically ordered set of terms, read as a DNF.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermSet {
    terms: BTreeSet<Term>,
}

impl TermSet {
    pub fn new() -> TermSet {
        TermSet::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> TermSet {
        TermSet {
            terms: terms.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, term: Term) {
        self.terms.insert(term);
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, term: &Term) -> bool {
        self.terms.contains(term)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter()
    }

    pub fn union(&self, other: &TermSet) -> TermSet {
        TermSet {
            terms: self.terms.union(&other.terms).cloned().collect(),
        }
    }

    /// `Sub[S]`: drops every term subsumed by a distinct remaining term.
    pub fn remove_subsumed(&self) -> TermSet {
        let mut kept: Vec<&Term> = Vec::new();
        for t in &self.terms {
            if !self
                .terms
                .iter()
                .any(|other| other != t && other.subsumes(t))
            {
                kept.push(t);
            }
        }
        TermSet {
            terms: kept.into_iter().cloned().collect(),
        }
    }

    /// `S1 × S2`: pairwise conjunctions, inconsistent pairs dropped.
    pub fn cross_product(&self, other: &TermSet) -> TermSet {
        let mut out = BTreeSet::new();
        for a in &self.terms {
            for b in &other.terms {
                if let Some(c) = a.conjoin(b) {
                    out.insert(c);
                }
            }
        }
        TermSet { terms: out }
    }

    pub fn render(&self, table: &VarTable) -> String {
        let parts: Vec<String> = self.terms.iter().map(|t| t.render(table)).collect();
        format!("{{{}}}", parts.join("; "))
    }
}

impl fmt::Display for TermSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "{{{}}}", parts.join("; "))
    }
}

impl FromIterator<Term> for TermSet {
    fn from_iter<I: IntoIterator<Item = Term>>(iter: I) -> Self {
        TermSet::from_terms(iter)
    }
}

/// Checks the disjunction discipline required by the prime-implicant
/// recursion: every disjunction must be readable as `ℓ ∨ Δ` where `ℓ` is
/// a literal and every literal of `ℓ`'s variable inside `Δ` is strictly
/// weaker than `ℓ`. General circuits fail this check and must go through
/// the oracle instead.
pub fn validate_pi_shape(arena: &NnfArena, root: NodeId) -> Result<()> {
    let order = arena.reachable(root);
    // literal leaves reachable from each node, to look up same-variable
    // literals inside sibling subcircuits
    let mut lits: HashMap<NodeId, BTreeSet<NodeId>> = HashMap::new();
    for &id in &order {
        let set: BTreeSet<NodeId> = match arena.node(id) {
            Node::True | Node::False => BTreeSet::new(),
            Node::Lit(_) => [id].into_iter().collect(),
            Node::And(cs) | Node::Or(cs) => {
                let mut s = BTreeSet::new();
                for c in cs.iter() {
                    s.extend(lits[c].iter().copied());
                }
                s
            }
        };
        lits.insert(id, set);
    }
    let literal_of = |id: NodeId| match arena.node(id) {
        Node::Lit(l) => Some(*l),
        _ => None,
    };

    for &id in &order {
        let Node::Or(cs) = arena.node(id) else {
            continue;
        };
        let mut non_literals = Vec::new();
        let mut literal_children = Vec::new();
        for &c in cs.iter() {
            match literal_of(c) {
                Some(l) => literal_children.push(l),
                None => non_literals.push(c),
            }
        }
        if non_literals.len() > 1 {
            return Err(Error::BadShape(
                "a disjunction has more than one non-literal child".into(),
            ));
        }
        // same-variable literal children must strictly entail each other
        // in some order (a chain), so a fold order with a fresh literal
        // at each step exists
        for (i, a) in literal_children.iter().enumerate() {
            for b in literal_children.iter().skip(i + 1) {
                if a.var == b.var && !a.entails(b) && !b.entails(a) {
                    return Err(Error::BadShape(format!(
                        "sibling literals of variable `{}` are incomparable",
                        arena.table().name(a.var)
                    )));
                }
            }
        }
        // every literal child must strictly entail all same-variable
        // literals inside the non-literal child
        if let Some(&rest) = non_literals.first() {
            for l in &literal_children {
                for &leaf in &lits[&rest] {
                    let other = literal_of(leaf).expect("leaf set holds literals");
                    if other.var == l.var && !(l.entails(&other) && *l != other) {
                        return Err(Error::BadShape(format!(
                            "literal on `{}` does not strictly entail a sibling occurrence",
                            arena.table().name(l.var)
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `ivars(node)`: variables that appear only in the sub-circuit rooted at
/// `node`.
pub fn inner_vars(arena: &NnfArena, root: NodeId, node: NodeId) -> BTreeSet<VarId> {
    let map = compute_inner_vars(arena, root);
    map.get(&node).cloned().unwrap_or_default()
}

/// Inner variables for every node reachable from `root`.
///
/// Under hash-consed sharing a literal leaf can sit below several
/// unrelated parents at once, so "appears only below this node" is read
/// as domination: a variable is inner to a node iff every root-to-leaf
/// path reaching one of its literals passes through that node. On tree
/// circuits this degenerates to plain containment, and the root always
/// gets all circuit variables.
fn compute_inner_vars(arena: &NnfArena, root: NodeId) -> HashMap<NodeId, BTreeSet<VarId>> {
    let order = arena.reachable(root);
    let pos: HashMap<NodeId, usize> = order.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let n = order.len();
    let words = n.div_ceil(64);
    let full = vec![u64::MAX; words];

    // parents within the reachable sub-DAG
    let mut parents: HashMap<NodeId, Vec<NodeId>> = HashMap::new();
    for &id in &order {
        if let Node::And(cs) | Node::Or(cs) = arena.node(id) {
            for c in cs.iter() {
                parents.entry(*c).or_default().push(id);
            }
        }
    }

    // dominator sets; children have smaller ids than parents, so a
    // descending pass sees every parent before its children
    let mut dom: HashMap<NodeId, Vec<u64>> = HashMap::new();
    for &id in order.iter().rev() {
        let mut set = if id == root {
            vec![0u64; words]
        } else {
            let mut acc = full.clone();
            for p in parents.get(&id).into_iter().flatten() {
                for (a, b) in acc.iter_mut().zip(&dom[p]) {
                    *a &= b;
                }
            }
            acc
        };
        let i = pos[&id];
        set[i / 64] |= 1 << (i % 64);
        dom.insert(id, set);
    }

    // per variable, the nodes dominating all of its literal leaves
    let mut per_var: HashMap<VarId, Vec<u64>> = HashMap::new();
    for &id in &order {
        if let Node::Lit(l) = arena.node(id) {
            let entry = per_var.entry(l.var).or_insert_with(|| full.clone());
            for (a, b) in entry.iter_mut().zip(&dom[&id]) {
                *a &= b;
            }
        }
    }

    let mut inner: HashMap<NodeId, BTreeSet<VarId>> =
        order.iter().map(|&id| (id, BTreeSet::new())).collect();
    for (var, nodes) in &per_var {
        for (i, &id) in order.iter().enumerate() {
            if nodes[i / 64] & (1 << (i % 64)) != 0 {
                inner.get_mut(&id).expect("node is reachable").insert(*var);
            }
        }
    }
    inner
}

/// `PIIVM(S, V)`: drops every term whose variable set strictly contains
/// another term's variable set with at least one extra variable in `V`.
pub fn vmin_prune(set: &TermSet, inner: &BTreeSet<VarId>) -> TermSet {
    let terms: Vec<&Term> = set.iter().collect();
    let mut kept = BTreeSet::new();
    'outer: for t in &terms {
        let tv = t.var_set();
        for other in &terms {
            if std::ptr::eq(*t, *other) {
                continue;
            }
            let ov = other.var_set();
            if ov.is_subset(&tv)
                && ov != tv
                && tv.difference(&ov).any(|v| inner.contains(v))
            {
                continue 'outer;
            }
        }
        kept.insert((*t).clone());
    }
    TermSet { terms: kept }
}

/// All prime implicants of a circuit satisfying [`validate_pi_shape`].
pub fn pi(arena: &NnfArena, root: NodeId) -> Result<TermSet> {
    validate_pi_shape(arena, root)?;
    Ok(run(arena, root, false, true))
}

/// The variable-minimal prime implicants (the GSRs when the circuit is a
/// general reason). Requires [`validate_pi_shape`] plus local fixation
/// on some instance, which licenses the incremental pruning.
pub fn gsr_terms(arena: &NnfArena, root: NodeId) -> Result<TermSet> {
    validate_pi_shape(arena, root)?;
    if !is_locally_fixated_on_some(arena, root) {
        return Err(Error::NotFixated);
    }
    Ok(run(arena, root, true, true))
}

/// Diagnostic variant of [`pi`] that recomputes shared nodes instead of
/// consulting the per-node cache; the results must coincide.
pub fn pi_uncached(arena: &NnfArena, root: NodeId) -> Result<TermSet> {
    validate_pi_shape(arena, root)?;
    Ok(run(arena, root, false, false))
}

fn run(arena: &NnfArena, root: NodeId, vmin: bool, use_cache: bool) -> TermSet {
    let inner = if vmin {
        compute_inner_vars(arena, root)
    } else {
        HashMap::new()
    };
    let mut cache: HashMap<NodeId, TermSet> = HashMap::new();
    run_rec(arena, root, vmin, use_cache, &inner, &mut cache)
}

fn run_rec(
    arena: &NnfArena,
    node: NodeId,
    vmin: bool,
    use_cache: bool,
    inner: &HashMap<NodeId, BTreeSet<VarId>>,
    cache: &mut HashMap<NodeId, TermSet>,
) -> TermSet {
    if use_cache {
        if let Some(hit) = cache.get(&node) {
            return hit.clone();
        }
    }
    let mut set = match arena.node(node) {
        Node::True => TermSet::from_terms([Term::top()]),
        Node::False => TermSet::new(),
        Node::Lit(l) => {
            let term = Term::top().and_literal(*l).expect("literal is consistent");
            TermSet::from_terms([term])
        }
        Node::And(cs) => {
            let children = cs.clone();
            let mut acc: Option<TermSet> = None;
            for c in children.iter() {
                let s = run_rec(arena, *c, vmin, use_cache, inner, cache);
                acc = Some(match acc {
                    None => s,
                    Some(prev) => prev.cross_product(&s).remove_subsumed(),
                });
            }
            acc.expect("interned AND nodes have children")
        }
        Node::Or(cs) => {
            let children = cs.clone();
            let mut acc: Option<TermSet> = None;
            for c in children.iter() {
                let s = run_rec(arena, *c, vmin, use_cache, inner, cache);
                acc = Some(match acc {
                    None => s,
                    Some(prev) => prev.union(&s).remove_subsumed(),
                });
            }
            acc.expect("interned OR nodes have children")
        }
    };
    if vmin {
        set = vmin_prune(&set, inner.get(&node).unwrap_or(&BTreeSet::new()));
    }
    if use_cache {
        cache.insert(node, set.clone());
    }
    set
}
