//! CNF conversion, the discrete resolution rule, closure under
//! resolution, and the incremental variable-minimal pruning that yields
//! GNRs.
//!
//! Resolving `ℓ1 ∨ σ1` with `ℓ2 ∨ σ2` on `X` produces the clause
//! equivalent to `(ℓ1 ∧ ℓ2) ∨ σ1 ∨ σ2`: the `X`-part is the
//! intersection of the two literals (omitted when empty) and the rest is
//! a per-variable union; the resolvent is suppressed when some union
//! covers a full domain. Closing a CNF under this rule and removing
//! subsumed clauses yields exactly its prime implicates. On locally
//! fixated inputs every resolvent's variable set is the union of its
//! parents', which licenses dropping non-variable-minimal clauses after
//! each step.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{Clause, Literal, NnfArena, Node, NodeId, VarId, VarTable, World};

/// A deduplicated, canonically ordered set of clauses, read as a CNF.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClauseSet {
    clauses: BTreeSet<Clause>,
}

impl ClauseSet {
    pub fn new() -> ClauseSet {
        ClauseSet::default()
    }

    pub fn from_clauses(clauses: impl IntoIterator<Item = Clause>) -> ClauseSet {
        ClauseSet {
            clauses: clauses.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, clause: Clause) {
        self.clauses.insert(clause);
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.clauses.contains(clause)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter()
    }

    pub fn union(&self, other: &ClauseSet) -> ClauseSet {
        ClauseSet {
            clauses: self.clauses.union(&other.clauses).cloned().collect(),
        }
    }

    /// `Sub[S]`: drops every clause subsumed by a distinct remaining one.
    pub fn remove_subsumed(&self) -> ClauseSet {
        let mut kept: Vec<&Clause> = Vec::new();
        for c in &self.clauses {
            if !self
                .clauses
                .iter()
                .any(|other| other != c && other.subsumes(c))
            {
                kept.push(c);
            }
        }
        ClauseSet {
            clauses: kept.into_iter().cloned().collect(),
        }
    }

    /// Pairwise clause disjunction with per-variable unions; `⊤` results
    /// are dropped.
    pub fn pairwise_disjoin(&self, other: &ClauseSet, table: &VarTable) -> ClauseSet {
        let mut out = BTreeSet::new();
        for a in &self.clauses {
            for b in &other.clauses {
                if let Some(c) = a.disjoin(table, b) {
                    out.insert(c);
                }
            }
        }
        ClauseSet { clauses: out }
    }

    /// Whether every literal of every clause contains the instance state.
    pub fn locally_fixated_on(&self, instance: &World) -> bool {
        self.clauses
            .iter()
            .all(|c| c.literals().all(|l| l.holds_in(instance.state(l.var))))
    }

    pub fn render(&self, table: &VarTable) -> String {
        let parts: Vec<String> = self.clauses.iter().map(|c| c.render(table)).collect();
        format!("{{{}}}", parts.join("; "))
    }
}

impl fmt::Display for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.clauses.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join("; "))
    }
}

impl FromIterator<Clause> for ClauseSet {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        ClauseSet::from_clauses(iter)
    }
}

/// Converts any NNF circuit to an equivalent CNF: union at conjunctions,
/// pairwise clause disjunction at disjunctions, subsumption removal after
/// every combine, results cached per node. The output is generally not
/// in prime-implicate form.
pub fn nnf_to_cnf(arena: &NnfArena, root: NodeId) -> ClauseSet {
    let mut cache: HashMap<NodeId, ClauseSet> = HashMap::new();
    cnf_rec(arena, root, &mut cache)
}

fn cnf_rec(arena: &NnfArena, node: NodeId, cache: &mut HashMap<NodeId, ClauseSet>) -> ClauseSet {
    if let Some(hit) = cache.get(&node) {
        return hit.clone();
    }
    let set = match arena.node(node) {
        Node::True => ClauseSet::new(),
        Node::False => ClauseSet::from_clauses([Clause::bottom()]),
        Node::Lit(l) => {
            let clause = Clause::bottom()
                .or_literal(arena.table(), *l)
                .expect("single literal is never valid");
            ClauseSet::from_clauses([clause])
        }
        Node::And(cs) => {
            let children = cs.clone();
            let mut acc = ClauseSet::new();
            for c in children.iter() {
                let s = cnf_rec(arena, *c, cache);
                acc = acc.union(&s).remove_subsumed();
            }
            acc
        }
        Node::Or(cs) => {
            let children = cs.clone();
            let mut acc: Option<ClauseSet> = None;
            for c in children.iter() {
                let s = cnf_rec(arena, *c, cache);
                acc = Some(match acc {
                    None => s,
                    Some(prev) => prev.pairwise_disjoin(&s, arena.table()).remove_subsumed(),
                });
            }
            acc.expect("interned OR nodes have children")
        }
    };
    cache.insert(node, set.clone());
    set
}

/// Outcome of resolving two clauses on a variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolveOutcome {
    Resolvent(Clause),
    /// `(ℓ1 ∧ ℓ2) ∨ σ1 ∨ σ2` was valid; no clause exists.
    Tautology,
}

/// The `X`-resolvent of two clauses.
///
/// Errors when a side lacks an `X`-literal or when one literal entails
/// the other (the excluded cases, under which the resolvent would be
/// subsumed by its parents); this is distinct from the `⊤` outcome.
pub fn resolve(
    table: &VarTable,
    alpha: &Clause,
    beta: &Clause,
    var: VarId,
) -> Result<ResolveOutcome> {
    let (Some(l1), Some(l2)) = (alpha.get(var), beta.get(var)) else {
        return Err(Error::NotResolvable(
            alpha.to_string(),
            beta.to_string(),
            table.name(var).to_string(),
        ));
    };
    if l1.is_subset(l2) || l2.is_subset(l1) {
        return Err(Error::NotResolvable(
            alpha.to_string(),
            beta.to_string(),
            table.name(var).to_string(),
        ));
    }
    Ok(resolve_unchecked(table, alpha, beta, var))
}

fn resolve_unchecked(
    table: &VarTable,
    alpha: &Clause,
    beta: &Clause,
    var: VarId,
) -> ResolveOutcome {
    let l1 = alpha.get(var).expect("checked by caller");
    let l2 = beta.get(var).expect("checked by caller");
    let mut clause = Clause::bottom();
    let meet = l1.inter(l2);
    if !meet.is_empty() {
        clause = clause
            .or_literal(table, Literal { var, states: meet })
            .expect("intersection of proper literals is proper");
    }
    for side in [alpha, beta] {
        for l in side.literals() {
            if l.var == var {
                continue;
            }
            match clause.or_literal(table, l) {
                Some(c) => clause = c,
                None => return ResolveOutcome::Tautology,
            }
        }
    }
    ResolveOutcome::Resolvent(clause)
}

/// Default bound on the number of clauses a closure run may hold.
pub const DEFAULT_CLAUSE_BUDGET: usize = 100_000;

/// Closes a CNF under discrete resolution, removing subsumed clauses as
/// it goes. The fixpoint is exactly the set of prime implicates.
pub fn close_resolution(
    table: &VarTable,
    input: &ClauseSet,
    budget: usize,
) -> Result<ClauseSet> {
    saturate(table, input, budget, None)
}

/// The variable-minimal prime implicates of a locally fixated CNF (the
/// GNRs when the CNF is a general reason). Clauses that are not
/// variable-minimal are additionally dropped after every resolution
/// step; local fixation on `instance` is required and checked.
pub fn gnr_clauses(
    table: &VarTable,
    input: &ClauseSet,
    instance: &World,
    budget: usize,
) -> Result<ClauseSet> {
    if !input.locally_fixated_on(instance) {
        return Err(Error::NotFixated);
    }
    saturate(table, input, budget, Some(instance))
}

/// Worklist saturation. With `fixated_on` set, variable-minimal pruning
/// runs after every inserted resolvent and the variable-growth law
/// `vars(resolvent) = vars(α) ∪ vars(β)` is asserted.
fn saturate(
    table: &VarTable,
    input: &ClauseSet,
    budget: usize,
    fixated_on: Option<&World>,
) -> Result<ClauseSet> {
    let mut set: Vec<Clause> = input.remove_subsumed().iter().cloned().collect();
    if let Some(instance) = fixated_on {
        set = vmin_filter(&set);
        debug_assert!(ClauseSet::from_clauses(set.clone()).locally_fixated_on(instance));
    }
    let mut queue: VecDeque<Clause> = set.iter().cloned().collect();

    while let Some(alpha) = queue.pop_front() {
        // the clause may have been dropped by subsumption or pruning
        // after it was queued
        if !set.contains(&alpha) {
            continue;
        }
        let partners: Vec<Clause> = set.clone();
        for beta in partners {
            if !set.contains(&alpha) {
                break;
            }
            for var in alpha.vars().collect::<Vec<_>>() {
                let (Some(l1), Some(l2)) = (alpha.get(var), beta.get(var)) else {
                    continue;
                };
                if l1.is_subset(l2) || l2.is_subset(l1) {
                    continue;
                }
                let ResolveOutcome::Resolvent(resolvent) =
                    resolve_unchecked(table, &alpha, &beta, var)
                else {
                    continue;
                };
                if fixated_on.is_some() {
                    let expect: BTreeSet<VarId> =
                        alpha.vars().chain(beta.vars()).collect();
                    assert_eq!(
                        resolvent.var_set(),
                        expect,
                        "fixated resolution must grow variable sets monotonically"
                    );
                }
                if set.iter().any(|c| c.subsumes(&resolvent)) {
                    continue;
                }
                set.retain(|c| !resolvent.subsumes(c));
                set.push(resolvent.clone());
                queue.push_back(resolvent);
                if fixated_on.is_some() {
                    set = vmin_filter(&set);
                }
                if set.len() > budget {
                    return Err(Error::Capacity {
                        what: "resolution closure",
                        need: set.len() as u128,
                        limit: budget as u128,
                    });
                }
            }
        }
    }
    Ok(ClauseSet::from_clauses(set))
}

/// Keeps only clauses whose variable set does not strictly contain
/// another clause's variable set.
fn vmin_filter(set: &[Clause]) -> Vec<Clause> {
    set.iter()
        .filter(|c| {
            let cv = c.var_set();
            !set.iter().any(|other| {
                let ov = other.var_set();
                ov.is_subset(&cv) && ov != cv
            })
        })
        .cloned()
        .collect()
}
