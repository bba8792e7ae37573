//! Independent brute-force ground truth.
//!
//! Everything here works by exhaustive enumeration over worlds, terms or
//! clauses, straight from the definitions, and shares nothing with the
//! algorithmic paths beyond the core types: the selection semantics are
//! computed world by world, prime implicants/implicates by scanning all
//! candidate terms/clauses, and the explanation sets by checking the
//! weakest/strongest/variable-minimal conditions verbatim. Consensus
//! closure is a second, independently implemented oracle for prime
//! implicants of DNFs.

use crate::error::{Error, Result};
use crate::ip::ClauseSet;
use crate::logic::{
    Clause, Literal, NnfArena, NodeId, StateSet, Term, VarId, VarTable, World,
};
use crate::pi::TermSet;

/// World-indexed bitsets over a fixed table.
struct Worlds<'a> {
    table: &'a VarTable,
    count: usize,
    /// `rows[v][s]` is the bitset of worlds where variable `v` has state `s`.
    rows: Vec<Vec<Bits>>,
    all: Vec<World>,
}

type Bits = Vec<u64>;

fn bits_new(len: usize) -> Bits {
    vec![0u64; len.div_ceil(64)]
}

fn bits_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn bits_get(b: &Bits, i: usize) -> bool {
    b[i / 64] & (1 << (i % 64)) != 0
}

fn bits_subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn bits_and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bits_or(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x | y).collect()
}

impl<'a> Worlds<'a> {
    fn new(arena: &'a NnfArena, what: &'static str) -> Result<Worlds<'a>> {
        let table = arena.table();
        let count = table.world_count().unwrap_or(u128::MAX);
        if count > arena.world_budget() {
            return Err(Error::Capacity {
                what,
                need: count,
                limit: arena.world_budget(),
            });
        }
        let count = count as usize;
        let all: Vec<World> = table.worlds().collect();
        let mut rows: Vec<Vec<Bits>> = table
            .var_ids()
            .map(|v| vec![bits_new(count); table.arity(v)])
            .collect();
        for (i, w) in all.iter().enumerate() {
            for v in table.var_ids() {
                bits_set(&mut rows[v.0][w.state(v)], i);
            }
        }
        Ok(Worlds {
            table,
            count,
            rows,
            all,
        })
    }

    /// Position of a world in enumeration order (mixed-radix rank).
    fn rank(&self, w: &World) -> usize {
        let mut rank = 0;
        for v in self.table.var_ids() {
            rank = rank * self.table.arity(v) + w.state(v);
        }
        rank
    }

    fn models(&self, arena: &NnfArena, root: NodeId) -> Bits {
        let mut bits = bits_new(self.count);
        for (i, w) in self.all.iter().enumerate() {
            if arena.evaluate(root, w).expect("world is total") {
                bits_set(&mut bits, i);
            }
        }
        bits
    }

    /// Bitset of worlds whose state of `v` lies in `mask`.
    fn row_union(&self, v: VarId, mask: StateSet) -> Bits {
        let mut bits = bits_new(self.count);
        for s in mask.iter() {
            bits = bits_or(&bits, &self.rows[v.0][s]);
        }
        bits
    }

    fn full(&self) -> Bits {
        let mut bits = bits_new(self.count);
        for i in 0..self.count {
            bits_set(&mut bits, i);
        }
        bits
    }
}

/// The exact model set of a circuit, in world order.
pub fn enumerate_models(arena: &NnfArena, root: NodeId) -> Result<Vec<World>> {
    let worlds = Worlds::new(arena, "model enumeration")?;
    let models = worlds.models(arena, root);
    Ok(worlds
        .all
        .iter()
        .enumerate()
        .filter(|(i, _)| bits_get(&models, *i))
        .map(|(_, w)| w.clone())
        .collect())
}

/// Which of the two quantification semantics to compute directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Worlds that stay models when variables set differently in the term
    /// are changed arbitrarily.
    Forall,
    /// Worlds that stay models when variables are set to the term states.
    Select,
}

/// The model set of `∀τ·Δ` or `⫰τ·Δ` computed straight from the stated
/// selection semantics, without the algebraic operators.
pub fn select_semantics(
    arena: &NnfArena,
    root: NodeId,
    term: &Term,
    mode: Mode,
) -> Result<Vec<World>> {
    if !term.is_simple() {
        return Err(Error::NotSimple);
    }
    let worlds = Worlds::new(arena, "selection semantics")?;
    let models = worlds.models(arena, root);
    let term_states: Vec<(VarId, usize)> = term
        .literals()
        .map(|l| (l.var, l.states.iter().next().unwrap()))
        .collect();

    let mut out = Vec::new();
    'world: for (i, w) in worlds.all.iter().enumerate() {
        if !bits_get(&models, i) {
            continue;
        }
        match mode {
            Mode::Select => {
                // every way of setting a subset of the term's variables to
                // their term states must stay a model
                let vars: Vec<(VarId, usize)> = term_states.clone();
                let combos = 1usize << vars.len();
                for c in 0..combos {
                    let mut w2 = w.clone();
                    for (bit, (v, s)) in vars.iter().enumerate() {
                        if c & (1 << bit) != 0 {
                            w2.0[v.0] = *s;
                        }
                    }
                    if !arena.evaluate(root, &w2).expect("total world") {
                        continue 'world;
                    }
                }
            }
            Mode::Forall => {
                // every way of changing variables that are set differently
                // in the term must stay a model
                let differing: Vec<VarId> = term_states
                    .iter()
                    .filter(|(v, s)| w.state(*v) != *s)
                    .map(|(v, _)| *v)
                    .collect();
                let mut stack = vec![w.clone()];
                let mut idx = 0;
                // enumerate all assignments of the differing variables
                while idx < differing.len() {
                    let v = differing[idx];
                    let mut next = Vec::new();
                    for w2 in &stack {
                        for s in 0..worlds.table.arity(v) {
                            next.push(w2.with_state(v, s));
                        }
                    }
                    stack = next;
                    idx += 1;
                }
                for w2 in &stack {
                    if !arena.evaluate(root, w2).expect("total world") {
                        continue 'world;
                    }
                }
            }
        }
        out.push(w.clone());
    }
    Ok(out)
}

fn candidate_budget_check(
    arena: &NnfArena,
    per_var: impl Fn(usize) -> u128,
    what: &'static str,
) -> Result<()> {
    let table = arena.table();
    let mut count: u128 = 1;
    for v in table.var_ids() {
        count = count.saturating_mul(per_var(table.arity(v)));
    }
    if count > arena.world_budget() {
        return Err(Error::Capacity {
            what,
            need: count,
            limit: arena.world_budget(),
        });
    }
    Ok(())
}

/// All candidate state masks for one variable of a term: the full set
/// (variable absent) or any non-empty proper subset.
fn term_masks(arity: usize) -> Vec<StateSet> {
    let full = StateSet::full(arity);
    let mut masks = vec![full];
    for bits in 1..(1u64 << arity) - 1 {
        masks.push(StateSet::from_states(
            (0..arity).filter(|s| bits & (1 << s) != 0),
        ));
    }
    masks
}

/// All candidate masks for one variable of a clause: empty (absent) or
/// any non-empty proper subset.
fn clause_masks(arity: usize) -> Vec<StateSet> {
    let mut masks = vec![StateSet::EMPTY];
    for bits in 1..(1u64 << arity) - 1 {
        masks.push(StateSet::from_states(
            (0..arity).filter(|s| bits & (1 << s) != 0),
        ));
    }
    masks
}

fn masks_to_term(table: &VarTable, masks: &[StateSet]) -> Term {
    let mut term = Term::top();
    for (v, &m) in masks.iter().enumerate() {
        let var = VarId(v);
        if m != StateSet::full(table.arity(var)) {
            term = term
                .and_literal(Literal { var, states: m })
                .expect("masks are non-empty");
        }
    }
    term
}

fn masks_to_clause(table: &VarTable, masks: &[StateSet]) -> Clause {
    let mut clause = Clause::bottom();
    for (v, &m) in masks.iter().enumerate() {
        let var = VarId(v);
        if !m.is_empty() {
            clause = clause
                .or_literal(table, Literal { var, states: m })
                .expect("masks are proper");
        }
    }
    clause
}

/// Exhaustive prime implicants: every candidate term over the table is
/// tested for implication, and an implicant is prime iff no single-step
/// weakening (adding one state to a literal, or dropping a literal) is
/// still an implicant. Stepwise weakening suffices because the masks
/// between two nested implicants are implicants themselves.
pub fn brute_prime_implicants(arena: &NnfArena, root: NodeId) -> Result<TermSet> {
    candidate_budget_check(arena, |a| (1u128 << a) - 1, "prime implicant scan")?;
    let worlds = Worlds::new(arena, "prime implicant scan")?;
    let table = arena.table();
    let delta = worlds.models(arena, root);

    let mut out = TermSet::new();
    let nvars = table.len();
    let mut masks: Vec<StateSet> = (0..nvars)
        .map(|v| StateSet::full(table.arity(VarId(v))))
        .collect();

    // term models under the running mask choice, built per level
    fn rec(
        worlds: &Worlds,
        delta: &Bits,
        table: &VarTable,
        masks: &mut Vec<StateSet>,
        level: usize,
        current: &Bits,
        out: &mut TermSet,
    ) {
        if level == table.len() {
            if !bits_subset(current, delta) {
                return;
            }
            // prime iff no single-step weakening stays an implicant
            for v in table.var_ids() {
                let full = StateSet::full(table.arity(v));
                let m = masks[v.0];
                if m == full {
                    continue;
                }
                let others = term_models_except(worlds, table, masks, v);
                // dropping the literal
                if bits_subset(&others, delta) {
                    return;
                }
                // adding one state
                for s in 0..table.arity(v) {
                    if m.contains(s) {
                        continue;
                    }
                    let weakened = bits_and(&others, &worlds.row_union(v, m.union(StateSet::singleton(s))));
                    if bits_subset(&weakened, delta) {
                        return;
                    }
                }
            }
            out.insert(masks_to_term(table, masks));
            return;
        }
        let v = VarId(level);
        for m in term_masks(table.arity(v)) {
            masks[level] = m;
            let next = bits_and(current, &worlds.row_union(v, m));
            rec(worlds, delta, table, masks, level + 1, &next, out);
        }
        masks[level] = StateSet::full(table.arity(v));
    }

    fn term_models_except(
        worlds: &Worlds,
        table: &VarTable,
        masks: &[StateSet],
        skip: VarId,
    ) -> Bits {
        let mut bits = worlds.full();
        for v in table.var_ids() {
            if v == skip {
                continue;
            }
            if masks[v.0] != StateSet::full(table.arity(v)) {
                bits = bits_and(&bits, &worlds.row_union(v, masks[v.0]));
            }
        }
        bits
    }

    let full = worlds.full();
    rec(&worlds, &delta, table, &mut masks, 0, &full, &mut out);
    Ok(out)
}

/// Exhaustive prime implicates, dual to [`brute_prime_implicants`]: an
/// implicate is prime iff no single-step strengthening (removing one
/// state, or removing a whole literal) is still an implicate.
pub fn brute_prime_implicates(arena: &NnfArena, root: NodeId) -> Result<ClauseSet> {
    candidate_budget_check(arena, |a| (1u128 << a) - 1, "prime implicate scan")?;
    let worlds = Worlds::new(arena, "prime implicate scan")?;
    let table = arena.table();
    let delta = worlds.models(arena, root);

    let mut out = ClauseSet::new();
    let nvars = table.len();
    let mut masks: Vec<StateSet> = vec![StateSet::EMPTY; nvars];

    fn clause_models_except(
        worlds: &Worlds,
        table: &VarTable,
        masks: &[StateSet],
        skip: Option<(VarId, StateSet)>,
    ) -> Bits {
        let mut bits = bits_new(worlds.count);
        for v in table.var_ids() {
            let mask = match skip {
                Some((sv, m)) if sv == v => m,
                _ => masks[v.0],
            };
            if !mask.is_empty() {
                bits = bits_or(&bits, &worlds.row_union(v, mask));
            }
        }
        bits
    }

    fn rec(
        worlds: &Worlds,
        delta: &Bits,
        table: &VarTable,
        masks: &mut Vec<StateSet>,
        level: usize,
        out: &mut ClauseSet,
    ) {
        if level == table.len() {
            let current = clause_models_except(worlds, table, masks, None);
            if !bits_subset(delta, &current) {
                return;
            }
            // prime iff no single-step strengthening stays an implicate
            for v in table.var_ids() {
                let m = masks[v.0];
                for s in m.iter() {
                    let stronger = m.minus(StateSet::singleton(s));
                    let models =
                        clause_models_except(worlds, table, masks, Some((v, stronger)));
                    if bits_subset(delta, &models) {
                        return;
                    }
                }
            }
            out.insert(masks_to_clause(table, masks));
            return;
        }
        let v = VarId(level);
        for m in clause_masks(table.arity(v)) {
            masks[level] = m;
            rec(worlds, delta, table, masks, level + 1, out);
        }
        masks[level] = StateSet::EMPTY;
    }

    rec(&worlds, &delta, table, &mut masks, 0, &mut out);
    Ok(out)
}

/// Closes a DNF under pairwise consensus and removes subsumed terms; the
/// result is the set of prime implicants of the DNF. This is a second
/// oracle, cross-checked against [`brute_prime_implicants`].
pub fn consensus_closure(table: &VarTable, input: &TermSet, budget: usize) -> Result<TermSet> {
    let mut set: Vec<Term> = input.remove_subsumed().iter().cloned().collect();
    let mut queue: Vec<Term> = set.clone();

    while let Some(alpha) = queue.pop() {
        if !set.contains(&alpha) {
            continue;
        }
        let partners: Vec<Term> = set.clone();
        for beta in partners {
            for var in alpha.vars().collect::<Vec<_>>() {
                let Some(gamma) = consensus(table, &alpha, &beta, var) else {
                    continue;
                };
                if set.iter().any(|t| t.subsumes(&gamma)) {
                    continue;
                }
                set.retain(|t| !gamma.subsumes(t));
                set.push(gamma.clone());
                queue.push(gamma);
                if set.len() > budget {
                    return Err(Error::Capacity {
                        what: "consensus closure",
                        need: set.len() as u128,
                        limit: budget as u128,
                    });
                }
            }
        }
    }
    Ok(TermSet::from_terms(set))
}

/// The `X`-consensus of two terms: literal union on `X` (dropped when it
/// covers the domain), per-variable intersection elsewhere; `None` when
/// the literals are comparable or the result is inconsistent.
pub fn consensus(table: &VarTable, alpha: &Term, beta: &Term, var: VarId) -> Option<Term> {
    let (l1, l2) = (alpha.get(var)?, beta.get(var)?);
    if l1.is_subset(l2) || l2.is_subset(l1) {
        return None;
    }
    let mut gamma = Term::top();
    let joined = l1.union(l2);
    if joined != StateSet::full(table.arity(var)) {
        gamma = gamma.and_literal(Literal {
            var,
            states: joined,
        })?;
    }
    for side in [alpha, beta] {
        for l in side.literals() {
            if l.var == var {
                continue;
            }
            gamma = gamma.and_literal(l)?;
        }
    }
    Some(gamma)
}

/// The four explanation sets found by scanning all candidates against
/// the definitions verbatim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteExplanations {
    pub srs: Vec<Term>,
    pub nrs: Vec<Clause>,
    pub gsrs: TermSet,
    pub gnrs: ClauseSet,
}

/// Direct search for SRs, NRs, GSRs and GNRs of the decision on
/// `instance` under class formula `root`.
pub fn brute_explanations(
    arena: &NnfArena,
    root: NodeId,
    instance: &World,
) -> Result<BruteExplanations> {
    candidate_budget_check(arena, |a| 1 << (a - 1), "explanation scan")?;
    let worlds = Worlds::new(arena, "explanation scan")?;
    let table = arena.table();
    if !arena.evaluate(root, instance)? {
        return Err(Error::NotInClass("the class formula".into()));
    }
    let delta = worlds.models(arena, root);

    // --- SRs: minimal subsets of the instance that imply Δ ---
    let nvars = table.len();
    let mut sr_sets: Vec<u32> = Vec::new();
    for subset in 0..(1u32 << nvars) {
        let mut models = worlds.full();
        for v in 0..nvars {
            if subset & (1 << v) != 0 {
                models = bits_and(
                    &models,
                    &worlds.rows[v][instance.state(VarId(v))],
                );
            }
        }
        if bits_subset(&models, &delta) {
            sr_sets.push(subset);
        }
    }
    let srs: Vec<Term> = sr_sets
        .iter()
        .filter(|&&s| !sr_sets.iter().any(|&o| o != s && o & s == o))
        .map(|&s| {
            let lits = (0..nvars).filter(|v| s & (1 << v) != 0).map(|v| Literal {
                var: VarId(v),
                states: StateSet::singleton(instance.state(VarId(v))),
            });
            Term::from_literals(table, lits).expect("instance literals are consistent")
        })
        .collect();

    // --- NRs: minimal variable sets whose joint violation can leave Δ ---
    let mut nr_sets: Vec<u32> = Vec::new();
    for subset in 1..(1u32 << nvars) {
        // worlds agreeing with I off the subset and differing inside it
        let vars: Vec<usize> = (0..nvars).filter(|v| subset & (1 << v) != 0).collect();
        let mut stack = vec![instance.clone()];
        for &v in &vars {
            let mut next = Vec::new();
            for w in &stack {
                for s in 0..table.arity(VarId(v)) {
                    if s != instance.state(VarId(v)) {
                        next.push(w.with_state(VarId(v), s));
                    }
                }
            }
            stack = next;
        }
        if stack.iter().any(|w| !bits_get(&delta, worlds.rank(w))) {
            nr_sets.push(subset);
        }
    }
    let nrs: Vec<Clause> = nr_sets
        .iter()
        .filter(|&&s| !nr_sets.iter().any(|&o| o != s && o & s == o))
        .map(|&s| {
            let lits = (0..nvars).filter(|v| s & (1 << v) != 0).map(|v| Literal {
                var: VarId(v),
                states: StateSet::singleton(instance.state(VarId(v))),
            });
            Clause::from_literals(table, lits).expect("simple clauses are proper")
        })
        .collect();

    // --- GSRs: weakest terms between the instance and Δ, then
    //     variable-minimal among those ---
    let mut qualifying: Vec<Vec<StateSet>> = Vec::new();
    let mut masks: Vec<StateSet> = (0..nvars)
        .map(|v| StateSet::full(table.arity(VarId(v))))
        .collect();
    gsr_scan(
        &worlds,
        &delta,
        table,
        instance,
        &mut masks,
        0,
        &worlds.full(),
        &mut qualifying,
    );
    // weakest = maximal masks among qualifying; larger total popcount
    // cannot be dominated by smaller, so one descending pass suffices
    qualifying.sort_by_key(|m| std::cmp::Reverse(total_popcount(m)));
    let mut weakest: Vec<Vec<StateSet>> = Vec::new();
    for cand in &qualifying {
        if !weakest
            .iter()
            .any(|k| pointwise_superset(k, cand) && k != cand)
        {
            weakest.push(cand.clone());
        }
    }
    let weakest_terms: Vec<Term> = weakest.iter().map(|m| masks_to_term(table, m)).collect();
    let gsrs: TermSet = var_min_terms(&weakest_terms).into_iter().collect();

    // --- GNRs: strongest fixated clauses all of whose violations flip,
    //     then variable-minimal among those ---
    let mut cmasks: Vec<StateSet> = vec![StateSet::EMPTY; nvars];
    let mut cqualifying: Vec<Vec<StateSet>> = Vec::new();
    gnr_scan(
        &worlds,
        &delta,
        table,
        instance,
        &mut cmasks,
        0,
        &mut cqualifying,
    );
    cqualifying.sort_by_key(|m| total_popcount(m));
    let mut strongest: Vec<Vec<StateSet>> = Vec::new();
    for cand in &cqualifying {
        if !strongest
            .iter()
            .any(|k| pointwise_superset(cand, k) && k != cand)
        {
            strongest.push(cand.clone());
        }
    }
    let strongest_clauses: Vec<Clause> = strongest
        .iter()
        .map(|m| masks_to_clause(table, m))
        .collect();
    let gnrs: ClauseSet = var_min_clauses(&strongest_clauses).into_iter().collect();

    Ok(BruteExplanations {
        srs,
        nrs,
        gsrs,
        gnrs,
    })
}

fn total_popcount(masks: &[StateSet]) -> usize {
    masks.iter().map(|m| m.len()).sum()
}

fn pointwise_superset(a: &[StateSet], b: &[StateSet]) -> bool {
    a.iter().zip(b).all(|(x, y)| y.is_subset(*x))
}

#[allow(clippy::too_many_arguments)]
fn gsr_scan(
    worlds: &Worlds,
    delta: &Bits,
    table: &VarTable,
    instance: &World,
    masks: &mut Vec<StateSet>,
    level: usize,
    current: &Bits,
    qualifying: &mut Vec<Vec<StateSet>>,
) {
    if level == table.len() {
        if bits_subset(current, delta) {
            qualifying.push(masks.clone());
        }
        return;
    }
    let v = VarId(level);
    let arity = table.arity(v);
    let istate = instance.state(v);
    for m in term_masks(arity) {
        if !m.contains(istate) {
            continue;
        }
        masks[level] = m;
        let next = bits_and(current, &worlds.row_union(v, m));
        gsr_scan(worlds, delta, table, instance, masks, level + 1, &next, qualifying);
    }
    masks[level] = StateSet::full(arity);
}

fn gnr_scan(
    worlds: &Worlds,
    delta: &Bits,
    table: &VarTable,
    instance: &World,
    masks: &mut Vec<StateSet>,
    level: usize,
    qualifying: &mut Vec<Vec<StateSet>>,
) {
    if level == table.len() {
        if masks.iter().all(|m| m.is_empty()) {
            return;
        }
        // every world that agrees with I off the clause and violates
        // every literal must fall outside Δ
        let mut stack = vec![instance.clone()];
        for v in table.var_ids() {
            let m = masks[v.0];
            if m.is_empty() {
                continue;
            }
            let complement = m.complement(table.arity(v));
            let mut next = Vec::new();
            for w in &stack {
                for s in complement.iter() {
                    next.push(w.with_state(v, s));
                }
            }
            stack = next;
        }
        for w in &stack {
            if bits_get(delta, worlds.rank(w)) {
                return;
            }
        }
        qualifying.push(masks.clone());
        return;
    }
    let v = VarId(level);
    let istate = instance.state(v);
    for m in clause_masks(table.arity(v)) {
        if !m.is_empty() && !m.contains(istate) {
            continue;
        }
        masks[level] = m;
        gnr_scan(worlds, delta, table, instance, masks, level + 1, qualifying);
    }
    masks[level] = StateSet::EMPTY;
}

fn var_min_terms(terms: &[Term]) -> Vec<Term> {
    terms
        .iter()
        .filter(|t| {
            let tv = t.var_set();
            !terms.iter().any(|o| {
                let ov = o.var_set();
                ov.is_subset(&tv) && ov != tv
            })
        })
        .cloned()
        .collect()
}

fn var_min_clauses(clauses: &[Clause]) -> Vec<Clause> {
    clauses
        .iter()
        .filter(|c| {
            let cv = c.var_set();
            !clauses.iter().any(|o| {
                let ov = o.var_set();
                ov.is_subset(&cv) && ov != cv
            })
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz_arena() -> NnfArena {
        let mut t = VarTable::new();
        t.add_var("X", ["x1", "x2", "x3"]).unwrap();
        t.add_var("Y", ["y1", "y2", "y3"]).unwrap();
        t.add_var("Z", ["z1", "z2", "z3"]).unwrap();
        NnfArena::new(t)
    }

    fn term(t: &VarTable, parts: &[(&str, &[&str])]) -> Term {
        let lits: Vec<Literal> = parts
            .iter()
            .map(|(v, ss)| Literal::from_names(t, v, ss).unwrap())
            .collect();
        Term::from_literals(t, lits).unwrap()
    }

    fn clause(t: &VarTable, parts: &[(&str, &[&str])]) -> Clause {
        let lits: Vec<Literal> = parts
            .iter()
            .map(|(v, ss)| Literal::from_names(t, v, ss).unwrap())
            .collect();
        Clause::from_literals(t, lits).unwrap()
    }

    #[test]
    fn model_enumeration_counts() {
        let mut a = xyz_arena();
        let x12 = a.lit_names("X", &["x1", "x2"]).unwrap();
        let x3 = a.lit_names("X", &["x3"]).unwrap();
        let y1 = a.lit_names("Y", &["y1"]).unwrap();
        let z13 = a.lit_names("Z", &["z1", "z3"]).unwrap();
        let inner = a.and([x3, y1, z13]);
        let d1 = a.or([x12, inner]);
        assert_eq!(enumerate_models(&a, d1).unwrap().len(), 20);
        assert!(enumerate_models(&a, a.fls()).unwrap().is_empty());
        let x3b = a.lit_names("X", &["x3"]).unwrap();
        let y23 = a.lit_names("Y", &["y2", "y3"]).unwrap();
        let d3 = a.and([x3b, y23, z13]);
        assert_eq!(enumerate_models(&a, d3).unwrap().len(), 4);
    }

    #[test]
    fn prime_sets_of_a_simple_conjunction() {
        let mut a = xyz_arena();
        let x1 = a.lit_names("X", &["x1"]).unwrap();
        let y1 = a.lit_names("Y", &["y1"]).unwrap();
        let conj = a.and([x1, y1]);
        let pis = brute_prime_implicants(&a, conj).unwrap();
        assert_eq!(
            pis,
            TermSet::from_terms([term(a.table(), &[("X", &["x1"]), ("Y", &["y1"])])])
        );
        let ips = brute_prime_implicates(&a, conj).unwrap();
        assert_eq!(
            ips,
            ClauseSet::from_clauses([
                clause(a.table(), &[("X", &["x1"])]),
                clause(a.table(), &[("Y", &["y1"])]),
            ])
        );
    }

    #[test]
    fn constants_have_degenerate_prime_sets() {
        let a = xyz_arena();
        assert_eq!(
            brute_prime_implicants(&a, a.tru()).unwrap(),
            TermSet::from_terms([Term::top()])
        );
        assert!(brute_prime_implicants(&a, a.fls()).unwrap().is_empty());
        assert!(brute_prime_implicates(&a, a.tru()).unwrap().is_empty());
        assert_eq!(
            brute_prime_implicates(&a, a.fls()).unwrap(),
            ClauseSet::from_clauses([Clause::bottom()])
        );
    }

    #[test]
    fn consensus_adds_the_merged_term() {
        let t = xyz_arena().table().clone();
        // {x1 ∧ y1, x2 ∧ y1} over ternary X: closure adds x12 ∧ y1,
        // which subsumes both inputs
        let dnf = TermSet::from_terms([
            term(&t, &[("X", &["x1"]), ("Y", &["y1"])]),
            term(&t, &[("X", &["x2"]), ("Y", &["y1"])]),
        ]);
        let closed = consensus_closure(&t, &dnf, 10_000).unwrap();
        assert!(closed.contains(&term(&t, &[("X", &["x1", "x2"]), ("Y", &["y1"])])));
        // single-term DNF is a fixpoint
        let single = TermSet::from_terms([term(&t, &[("X", &["x1"])])]);
        assert_eq!(consensus_closure(&t, &single, 10_000).unwrap(), single);
    }

    #[test]
    fn consensus_closure_matches_brute_primes() {
        let mut a = xyz_arena();
        let t = a.table().clone();
        let dnf = TermSet::from_terms([
            term(&t, &[("X", &["x1"]), ("Y", &["y1"])]),
            term(&t, &[("X", &["x2"]), ("Y", &["y1"])]),
            term(&t, &[("Y", &["y2"]), ("Z", &["z1", "z2"])]),
        ]);
        let closed = consensus_closure(&t, &dnf, 10_000).unwrap();
        let nodes: Vec<NodeId> = dnf.iter().map(|x| a.term(x).unwrap()).collect();
        let formula = a.or(nodes);
        let brute = brute_prime_implicants(&a, formula).unwrap();
        assert_eq!(closed, brute);
    }

    #[test]
    fn consensus_resolution_duality() {
        use crate::ip::{resolve, ResolveOutcome};
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};

        let mut arena = xyz_arena();
        let t = arena.table().clone();
        let neg = |tm: &Term| -> Clause {
            Clause::from_literals(&t, tm.literals().map(|l| l.negated(&t)))
                .expect("negated proper literals stay proper")
        };
        // sample random term pairs; whenever a consensus exists, its
        // negation must equal the resolvent of the negated clauses
        let mut rng = StdRng::seed_from_u64(3);
        let mut checked = 0;
        while checked < 30 {
            let masks = |rng: &mut StdRng| -> Term {
                let mut tm = Term::top();
                for v in t.var_ids() {
                    if rng.gen_bool(0.7) {
                        let m = rng.gen_range(1..7u64);
                        tm = tm
                            .and_literal(Literal {
                                var: v,
                                states: StateSet::from_states(
                                    (0..3).filter(|s| m & (1 << s) != 0),
                                ),
                            })
                            .unwrap();
                    }
                }
                tm
            };
            let alpha = masks(&mut rng);
            let beta = masks(&mut rng);
            let var = VarId(rng.gen_range(0..t.len()));
            let Some(gamma) = consensus(&t, &alpha, &beta, var) else {
                continue;
            };
            let resolvent = match resolve(&t, &neg(&alpha), &neg(&beta), var).unwrap() {
                ResolveOutcome::Resolvent(c) => c,
                ResolveOutcome::Tautology => panic!("dual of a consistent consensus"),
            };
            let g = arena.term(&gamma).unwrap();
            let neg_g = arena.negate(g);
            let r = arena.clause(&resolvent).unwrap();
            assert!(arena.equivalent(neg_g, r).unwrap());
            checked += 1;
        }
    }

    #[test]
    fn gapped_fixture_explanations() {
        // Δ = x1 ∧ y1 ∨ x12 ∧ y12 ∧ z1, I = (x1, y1, z1):
        // the only GSR is x1 ∧ y1 and the GNRs are x12 and y12
        let mut a = xyz_arena();
        let x1 = a.lit_names("X", &["x1"]).unwrap();
        let y1 = a.lit_names("Y", &["y1"]).unwrap();
        let x12 = a.lit_names("X", &["x1", "x2"]).unwrap();
        let y12 = a.lit_names("Y", &["y1", "y2"]).unwrap();
        let z1 = a.lit_names("Z", &["z1"]).unwrap();
        let t1 = a.and([x1, y1]);
        let t2 = a.and([x12, y12, z1]);
        let delta = a.or([t1, t2]);
        let i = World(vec![0, 0, 0]);
        let table = a.table().clone();
        let b = brute_explanations(&a, delta, &i).unwrap();
        assert_eq!(
            b.gsrs,
            TermSet::from_terms([term(&table, &[("X", &["x1"]), ("Y", &["y1"])])])
        );
        assert_eq!(
            b.gnrs,
            ClauseSet::from_clauses([
                clause(&table, &[("X", &["x1", "x2"])]),
                clause(&table, &[("Y", &["y1", "y2"])]),
            ])
        );
        assert_eq!(
            b.srs,
            vec![term(&table, &[("X", &["x1"]), ("Y", &["y1"])])]
        );
        assert_eq!(
            b.nrs,
            vec![
                clause(&table, &[("X", &["x1"])]),
                clause(&table, &[("Y", &["y1"])])
            ]
        );
    }

    #[test]
    fn selection_semantics_nest() {
        let mut a = xyz_arena();
        let x1 = a.lit_names("X", &["x1"]).unwrap();
        let y1 = a.lit_names("Y", &["y1"]).unwrap();
        let x12 = a.lit_names("X", &["x1", "x2"]).unwrap();
        let y12 = a.lit_names("Y", &["y1", "y2"]).unwrap();
        let z1 = a.lit_names("Z", &["z1"]).unwrap();
        let t1 = a.and([x1, y1]);
        let t2 = a.and([x12, y12, z1]);
        let delta = a.or([t1, t2]);
        let i = crate::logic::instance_term(&World(vec![0, 0, 0]));
        let forall = select_semantics(&a, delta, &i, Mode::Forall).unwrap();
        let select = select_semantics(&a, delta, &i, Mode::Select).unwrap();
        let models = enumerate_models(&a, delta).unwrap();
        assert!(forall.iter().all(|w| select.contains(w)));
        assert!(select.iter().all(|w| models.contains(w)));
        assert_eq!(
            forall,
            vec![
                World(vec![0, 0, 0]),
                World(vec![0, 0, 1]),
                World(vec![0, 0, 2])
            ]
        );
        // on this fixture ⫰I·Δ ≡ Δ
        assert_eq!(select, models);
    }

    #[test]
    fn budget_is_enforced() {
        let mut t = VarTable::new();
        for i in 0..8 {
            t.add_var(format!("V{i}"), vec!["a".into(), "b".into(), "c".into(), "d".into()])
                .unwrap();
        }
        let mut a = NnfArena::new(t);
        a.set_world_budget(1000);
        let v = a.lit_names("V0", &["a"]).unwrap();
        assert!(matches!(
            enumerate_models(&a, v),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            brute_prime_implicants(&a, v),
            Err(Error::Capacity { .. })
        ));
    }
}
