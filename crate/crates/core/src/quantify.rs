//! The two literal-quantification operators and their relatives.
//!
//! `forall` (written `∀x·Δ`) is universal literal quantification; applied
//! to a full instance it yields the complete reason for the decision.
//! `select` (written `⫰x·Δ`) is the selection operator `Δ|x ∧ Δ`; applied
//! to a full instance it yields the general reason. `forget` is the dual
//! `⫯x·Δ = Δ ∨ Δ|x`. A linear-time fast path exists for ∨-decomposable
//! circuits, and fixation tests classify circuits the pruning rules of
//! the explanation algorithms apply to.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::logic::{Literal, NnfArena, Node, NodeId, StateSet, Term, VarId, World};

/// `∀x·Δ = Δ|x ∧ ⋀_{j≠i}(x ∨ Δ|xj)` for the states `xj` of `x`'s variable.
pub fn forall_state(arena: &mut NnfArena, delta: NodeId, var: VarId, state: usize) -> Result<NodeId> {
    check_state(arena, var, state)?;
    let mut conjuncts = vec![arena.condition_state(delta, var, state)?];
    let x = arena.lit(Literal {
        var,
        states: StateSet::singleton(state),
    })?;
    for j in 0..arena.table().arity(var) {
        if j == state {
            continue;
        }
        let cond = arena.condition_state(delta, var, j)?;
        let disjunct = arena.or([x, cond]);
        conjuncts.push(disjunct);
    }
    Ok(arena.and(conjuncts))
}

/// `⫰x·Δ = Δ|x ∧ Δ`.
pub fn select_state(arena: &mut NnfArena, delta: NodeId, var: VarId, state: usize) -> Result<NodeId> {
    check_state(arena, var, state)?;
    let cond = arena.condition_state(delta, var, state)?;
    Ok(arena.and([cond, delta]))
}

/// `⫯x·Δ = Δ ∨ Δ|x`, the dual of `⫰`; forgets the information about
/// state `x` (the result is expressible without mentioning it).
pub fn forget_state(arena: &mut NnfArena, delta: NodeId, var: VarId, state: usize) -> Result<NodeId> {
    check_state(arena, var, state)?;
    let cond = arena.condition_state(delta, var, state)?;
    Ok(arena.or([delta, cond]))
}

/// Iterated `∀` over the states of a simple term, in variable-table order.
/// With `term` a full instance and `delta` its class formula this is the
/// complete reason for the decision.
pub fn forall_term(arena: &mut NnfArena, delta: NodeId, term: &Term) -> Result<NodeId> {
    quantify_term(arena, delta, term, forall_state)
}

/// Iterated `⫰` over the states of a simple term, in variable-table order.
/// With `term` a full instance and `delta` its class formula this is the
/// general reason for the decision. Any application order yields an
/// equivalent circuit; the fixed order gives reproducible shapes.
pub fn select_term(arena: &mut NnfArena, delta: NodeId, term: &Term) -> Result<NodeId> {
    quantify_term(arena, delta, term, select_state)
}

fn quantify_term(
    arena: &mut NnfArena,
    delta: NodeId,
    term: &Term,
    op: fn(&mut NnfArena, NodeId, VarId, usize) -> Result<NodeId>,
) -> Result<NodeId> {
    if !term.is_simple() {
        return Err(Error::NotSimple);
    }
    let mut acc = delta;
    for lit in term.literals() {
        let state = lit.states.iter().next().unwrap();
        acc = op(arena, acc, lit.var, state)?;
    }
    Ok(acc)
}

/// Applies `⫰τ` to an ∨-decomposable circuit in one traversal by
/// rewriting each literal: a literal of a quantified variable survives
/// iff it contains the term's state, otherwise it becomes `⊥`.
///
/// Errors with [`Error::NotDecomposable`] when some disjunction's
/// children share a variable; callers fall back to [`select_term`].
pub fn select_decomposable(arena: &mut NnfArena, delta: NodeId, term: &Term) -> Result<NodeId> {
    if !term.is_simple() {
        return Err(Error::NotSimple);
    }
    ensure_or_decomposable(arena, delta)?;
    let order = arena.reachable(delta);
    let mut map: HashMap<NodeId, NodeId> = HashMap::new();
    for id in order {
        let new = match arena.node(id).clone() {
            Node::True => arena.tru(),
            Node::False => arena.fls(),
            Node::Lit(l) => match term.get(l.var) {
                Some(s) => {
                    let state = s.iter().next().unwrap();
                    if l.holds_in(state) {
                        arena.lit(l)?
                    } else {
                        arena.fls()
                    }
                }
                None => arena.lit(l)?,
            },
            Node::And(cs) => {
                let children: Vec<NodeId> = cs.iter().map(|c| map[c]).collect();
                arena.and(children)
            }
            Node::Or(cs) => {
                let children: Vec<NodeId> = cs.iter().map(|c| map[c]).collect();
                arena.or(children)
            }
        };
        map.insert(id, new);
    }
    Ok(map[&delta])
}

fn ensure_or_decomposable(arena: &NnfArena, root: NodeId) -> Result<()> {
    // vars per node, bottom-up
    let order = arena.reachable(root);
    let mut vars: HashMap<NodeId, HashSet<VarId>> = HashMap::new();
    for &id in &order {
        let set: HashSet<VarId> = match arena.node(id) {
            Node::True | Node::False => HashSet::new(),
            Node::Lit(l) => [l.var].into_iter().collect(),
            Node::And(cs) | Node::Or(cs) => {
                let mut s = HashSet::new();
                for c in cs.iter() {
                    s.extend(vars[c].iter().copied());
                }
                s
            }
        };
        if let Node::Or(cs) = arena.node(id) {
            let mut seen: HashSet<VarId> = HashSet::new();
            for c in cs.iter() {
                for v in &vars[c] {
                    if !seen.insert(*v) {
                        return Err(Error::NotDecomposable(
                            arena.table().name(*v).to_string(),
                        ));
                    }
                }
            }
        }
        vars.insert(id, set);
    }
    Ok(())
}

/// An NNF is locally fixated on instance `I` iff every literal in it
/// contains `I`'s state for its variable.
pub fn is_locally_fixated(arena: &NnfArena, root: NodeId, instance: &World) -> bool {
    arena
        .literals_of(root)
        .iter()
        .all(|l| l.holds_in(instance.state(l.var)))
}

/// Whether some instance exists on which the circuit is locally fixated,
/// i.e. for each variable all its literals share at least one state.
pub fn is_locally_fixated_on_some(arena: &NnfArena, root: NodeId) -> bool {
    let mut common: HashMap<VarId, StateSet> = HashMap::new();
    for l in arena.literals_of(root) {
        let entry = common
            .entry(l.var)
            .or_insert_with(|| StateSet::full(arena.table().arity(l.var)));
        *entry = entry.inter(l.states);
        if entry.is_empty() {
            return false;
        }
    }
    true
}

fn check_state(arena: &NnfArena, var: VarId, state: usize) -> Result<()> {
    if var.0 >= arena.table().len() || state >= arena.table().arity(var) {
        return Err(Error::UnknownState {
            var: if var.0 < arena.table().len() {
                arena.table().name(var).to_string()
            } else {
                var.to_string()
            },
            state: format!("index {state}"),
        });
    }
    Ok(())
}
