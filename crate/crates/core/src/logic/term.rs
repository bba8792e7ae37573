use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::logic::literal::{Literal, StateSet};
use crate::logic::table::{VarId, VarTable, World};

/// A conjunction of literals over distinct variables.
///
/// The empty term is `⊤`. Terms are never inconsistent: conjoining
/// literals with a disjoint intersection has no `Term` result.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    literals: BTreeMap<VarId, StateSet>,
}

/// A disjunction of literals over distinct variables.
///
/// The empty clause is `⊥`. Clauses are never valid: a disjunction whose
/// union covers a full domain has no `Clause` result.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    literals: BTreeMap<VarId, StateSet>,
}

impl Term {
    /// The empty term `⊤`.
    pub fn top() -> Term {
        Term::default()
    }

    pub fn from_literals(
        table: &VarTable,
        lits: impl IntoIterator<Item = Literal>,
    ) -> Option<Term> {
        let mut t = Term::top();
        for l in lits {
            debug_assert!(Literal::new(table, l.var, l.states).is_ok());
            t = t.and_literal(l)?;
        }
        Some(t)
    }

    /// Conjoins one literal, intersecting with any existing literal on the
    /// same variable. `None` when the result is inconsistent.
    pub fn and_literal(&self, lit: Literal) -> Option<Term> {
        let mut t = self.clone();
        let states = match t.literals.get(&lit.var) {
            Some(prev) => prev.inter(lit.states),
            None => lit.states,
        };
        if states.is_empty() {
            return None;
        }
        t.literals.insert(lit.var, states);
        Some(t)
    }

    /// The conjunction of two terms, `None` when inconsistent.
    pub fn conjoin(&self, other: &Term) -> Option<Term> {
        let mut t = self.clone();
        for (&var, &states) in &other.literals {
            t = t.and_literal(Literal { var, states })?;
        }
        Some(t)
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_simple(&self) -> bool {
        self.literals.values().all(|s| s.is_singleton())
    }

    pub fn get(&self, var: VarId) -> Option<StateSet> {
        self.literals.get(&var).copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.literals.keys().copied()
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.literals
            .iter()
            .map(|(&var, &states)| Literal { var, states })
    }

    pub fn var_set(&self) -> std::collections::BTreeSet<VarId> {
        self.literals.keys().copied().collect()
    }

    /// `w ⊨ self`.
    pub fn satisfied_by(&self, w: &World) -> bool {
        self.literals.iter().all(|(var, s)| s.contains(w.state(*var)))
    }

    /// `self ⊨ other` for terms: per-variable containment.
    pub fn entails(&self, other: &Term) -> bool {
        other.literals.iter().all(|(var, s_o)| {
            self.literals
                .get(var)
                .map(|s| s.is_subset(*s_o))
                .unwrap_or(false)
        })
    }

    /// `self` subsumes `other` iff `other ⊨ self`.
    pub fn subsumes(&self, other: &Term) -> bool {
        other.entails(self)
    }

    pub fn render(&self, table: &VarTable) -> String {
        if self.is_empty() {
            return "⊤".to_string();
        }
        self.literals()
            .map(|l| l.render(table))
            .collect::<Vec<_>>()
            .join(" ∧ ")
    }
}

impl Clause {
    /// The empty clause `⊥`.
    pub fn bottom() -> Clause {
        Clause::default()
    }

    pub fn from_literals(
        table: &VarTable,
        lits: impl IntoIterator<Item = Literal>,
    ) -> Option<Clause> {
        let mut c = Clause::bottom();
        for l in lits {
            debug_assert!(Literal::new(table, l.var, l.states).is_ok());
            c = c.or_literal(table, l)?;
        }
        Some(c)
    }

    /// Disjoins one literal, unioning with any existing literal on the same
    /// variable. `None` when the union covers the variable's full domain
    /// (the clause would be valid).
    pub fn or_literal(&self, table: &VarTable, lit: Literal) -> Option<Clause> {
        let mut c = self.clone();
        let states = match c.literals.get(&lit.var) {
            Some(prev) => prev.union(lit.states),
            None => lit.states,
        };
        if states == StateSet::full(table.arity(lit.var)) {
            return None;
        }
        c.literals.insert(lit.var, states);
        Some(c)
    }

    /// The disjunction of two clauses, `None` when valid (`⊤`).
    pub fn disjoin(&self, table: &VarTable, other: &Clause) -> Option<Clause> {
        let mut c = self.clone();
        for (&var, &states) in &other.literals {
            c = c.or_literal(table, Literal { var, states })?;
        }
        Some(c)
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_simple(&self) -> bool {
        self.literals.values().all(|s| s.is_singleton())
    }

    pub fn get(&self, var: VarId) -> Option<StateSet> {
        self.literals.get(&var).copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.literals.keys().copied()
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.literals
            .iter()
            .map(|(&var, &states)| Literal { var, states })
    }

    pub fn var_set(&self) -> std::collections::BTreeSet<VarId> {
        self.literals.keys().copied().collect()
    }

    /// `w ⊨ self`.
    pub fn satisfied_by(&self, w: &World) -> bool {
        self.literals.iter().any(|(var, s)| s.contains(w.state(*var)))
    }

    /// `self ⊨ other` for clauses: per-variable containment.
    pub fn entails(&self, other: &Clause) -> bool {
        self.literals.iter().all(|(var, s)| {
            other
                .literals
                .get(var)
                .map(|s_o| s.is_subset(*s_o))
                .unwrap_or(false)
        })
    }

    /// `self` subsumes `other` iff `self ⊨ other`.
    pub fn subsumes(&self, other: &Clause) -> bool {
        self.entails(other)
    }

    pub fn render(&self, table: &VarTable) -> String {
        if self.is_empty() {
            return "⊥".to_string();
        }
        self.literals()
            .map(|l| l.render(table))
            .collect::<Vec<_>>()
            .join(" ∨ ")
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "⊤");
        }
        let parts: Vec<String> = self.literals().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join("∧"))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "⊥");
        }
        let parts: Vec<String> = self.literals().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join("∨"))
    }
}

/// Converts an instance (total world) into the corresponding simple term.
pub fn instance_term(w: &World) -> Term {
    let mut literals = BTreeMap::new();
    for (i, &s) in w.0.iter().enumerate() {
        literals.insert(VarId(i), StateSet::singleton(s));
    }
    Term { literals }
}

/// `I ⊓ τ`: the smallest subterm of instance `I` that implies term `τ`,
/// i.e. `I`'s literals restricted to the variables of `τ`.
pub fn instance_cap_term(w: &World, term: &Term) -> Result<Term> {
    if !term.satisfied_by(w) {
        return Err(Error::DoesNotSatisfy("term"));
    }
    let mut literals = BTreeMap::new();
    for var in term.vars() {
        literals.insert(var, StateSet::singleton(w.state(var)));
    }
    Ok(Term { literals })
}

/// `I ⊓ σ`: the disjunction of the states that appear in both instance `I`
/// and clause `σ`.
pub fn instance_cap_clause(w: &World, clause: &Clause) -> Result<Clause> {
    let mut literals = BTreeMap::new();
    for lit in clause.literals() {
        if lit.holds_in(w.state(lit.var)) {
            literals.insert(lit.var, StateSet::singleton(w.state(lit.var)));
        }
    }
    if literals.is_empty() {
        return Err(Error::DoesNotSatisfy("clause"));
    }
    Ok(Clause { literals })
}

/// `I ∖ σ`: the largest subterm of instance `I` that does not imply
/// clause `σ`, i.e. `I`'s literals on variables not mentioned by `σ`.
pub fn instance_minus_clause(w: &World, clause: &Clause) -> Term {
    let mut literals = BTreeMap::new();
    for (i, &s) in w.0.iter().enumerate() {
        let var = VarId(i);
        if clause.get(var).is_none() {
            literals.insert(var, StateSet::singleton(s));
        }
    }
    Term { literals }
}

/// `I ⫦ σ`: instance `I` implies every literal in clause `σ`.
pub fn strongly_implies(w: &World, clause: &Clause) -> bool {
    clause.literals().all(|l| l.holds_in(w.state(l.var)))
}
