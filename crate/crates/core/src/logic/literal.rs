use std::fmt;

use crate::error::{Error, Result};
use crate::logic::table::{VarId, VarTable};

/// A set of states of one variable, packed into a 64-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateSet(u64);

impl StateSet {
    pub const EMPTY: StateSet = StateSet(0);

    pub fn singleton(state: usize) -> StateSet {
        StateSet(1 << state)
    }

    pub fn full(arity: usize) -> StateSet {
        if arity == 64 {
            StateSet(u64::MAX)
        } else {
            StateSet((1 << arity) - 1)
        }
    }

    pub fn from_states(states: impl IntoIterator<Item = usize>) -> StateSet {
        StateSet(states.into_iter().fold(0, |m, s| m | (1 << s)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, state: usize) -> bool {
        self.0 & (1 << state) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_singleton(self) -> bool {
        self.0.count_ones() == 1
    }

    pub fn union(self, other: StateSet) -> StateSet {
        StateSet(self.0 | other.0)
    }

    pub fn inter(self, other: StateSet) -> StateSet {
        StateSet(self.0 & other.0)
    }

    pub fn minus(self, other: StateSet) -> StateSet {
        StateSet(self.0 & !other.0)
    }

    pub fn complement(self, arity: usize) -> StateSet {
        StateSet::full(arity).minus(self)
    }

    pub fn is_subset(self, other: StateSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |s| self.contains(*s))
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        StateSet::from_states(iter)
    }
}

/// A literal: the assertion that one variable's state lies in a set.
///
/// The set is a non-empty proper subset of the variable's states; a
/// literal is simple when the set is a singleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: VarId,
    pub states: StateSet,
}

impl Literal {
    /// Builds a literal, rejecting empty or full state sets.
    pub fn new(table: &VarTable, var: VarId, states: StateSet) -> Result<Literal> {
        let full = StateSet::full(table.arity(var));
        if states.is_empty() || states == full || !states.is_subset(full) {
            return Err(Error::InvalidLiteral {
                var: table.name(var).to_string(),
            });
        }
        Ok(Literal { var, states })
    }

    pub fn from_names(table: &VarTable, var: &str, states: &[&str]) -> Result<Literal> {
        let var = table.find_var(var)?;
        let mut set = StateSet::EMPTY;
        for s in states {
            set = set.union(StateSet::singleton(table.find_state(var, s)?));
        }
        Literal::new(table, var, set)
    }

    pub fn is_simple(&self) -> bool {
        self.states.is_singleton()
    }

    /// The literal asserting the complementary state set.
    pub fn negated(&self, table: &VarTable) -> Literal {
        Literal {
            var: self.var,
            states: self.states.complement(table.arity(self.var)),
        }
    }

    /// `self ⊨ other`: same variable and state containment.
    pub fn entails(&self, other: &Literal) -> bool {
        self.var == other.var && self.states.is_subset(other.states)
    }

    pub fn holds_in(&self, state: usize) -> bool {
        self.states.contains(state)
    }

    pub fn render(&self, table: &VarTable) -> String {
        let name = table.name(self.var);
        let v = table.variable(self.var);
        let label = |s: usize| -> &str {
            match &v.intervals {
                Some(ints) => &ints[s],
                None => &v.states[s],
            }
        };
        if self.is_simple() {
            let s = self.states.iter().next().unwrap();
            format!("{name} = {}", label(s))
        } else {
            let states: Vec<&str> = self.states.iter().map(label).collect();
            format!("{name} ∈ {{{}}}", states.join(", "))
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}{{", self.var.0)?;
        for (i, s) in self.states.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ternary() -> (VarTable, VarId) {
        let mut t = VarTable::new();
        let x = t.add_var("X", ["x1", "x2", "x3"]).unwrap();
        (t, x)
    }

    #[test]
    fn literal_must_be_proper_and_nonempty() {
        let (t, x) = ternary();
        assert!(Literal::new(&t, x, StateSet::EMPTY).is_err());
        assert!(Literal::new(&t, x, StateSet::full(3)).is_err());
        assert!(Literal::new(&t, x, StateSet::from_states([0, 2])).is_ok());
    }

    #[test]
    fn complement_and_entailment() {
        let (t, x) = ternary();
        let l = Literal::new(&t, x, StateSet::singleton(0)).unwrap();
        let n = l.negated(&t);
        assert_eq!(n.states, StateSet::from_states([1, 2]));
        assert!(l.entails(&Literal::new(&t, x, StateSet::from_states([0, 1])).unwrap()));
        assert!(!n.entails(&l));
    }

    #[test]
    fn full_set_at_64_states() {
        assert_eq!(StateSet::full(64).len(), 64);
        assert_eq!(StateSet::full(64).complement(64), StateSet::EMPTY);
    }
}
