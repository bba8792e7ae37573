use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a variable in its [`VarTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VarId(pub usize);

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// One discrete variable: a name and an ordered list of state names.
///
/// `intervals`, when present, carries one display string per state for
/// discretized numeric features. It has no semantic effect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub states: Vec<String>,
    pub intervals: Option<Vec<String>>,
}

/// The ordered set of discrete variables a problem is stated over.
///
/// Every variable has at least two and at most 64 states, so a set of
/// states fits in one [`StateSet`](crate::logic::StateSet) word.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VarTable {
    vars: Vec<Variable>,
}

impl VarTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a variable with the given state names.
    pub fn add_var<S: Into<String>>(
        &mut self,
        name: S,
        states: impl IntoIterator<Item = S>,
    ) -> Result<VarId> {
        let name = name.into();
        let states: Vec<String> = states.into_iter().map(Into::into).collect();
        if self.vars.iter().any(|v| v.name == name) {
            return Err(Error::DuplicateName(name));
        }
        if states.len() < 2 {
            return Err(Error::ArityTooSmall { var: name });
        }
        if states.len() > 64 {
            return Err(Error::ArityTooLarge {
                var: name,
                arity: states.len(),
            });
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(Error::DuplicateName(s.clone()));
            }
        }
        self.vars.push(Variable {
            name,
            states,
            intervals: None,
        });
        Ok(VarId(self.vars.len() - 1))
    }

    /// Attaches interval display strings to a variable (one per state).
    pub fn set_intervals(&mut self, var: VarId, intervals: Vec<String>) -> Result<()> {
        let v = &mut self.vars[var.0];
        if intervals.len() != v.states.len() {
            return Err(Error::Schema(format!(
                "variable `{}` has {} states but {} intervals",
                v.name,
                v.states.len(),
                intervals.len()
            )));
        }
        v.intervals = Some(intervals);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn var_ids(&self) -> impl Iterator<Item = VarId> {
        (0..self.vars.len()).map(VarId)
    }

    pub fn variable(&self, var: VarId) -> &Variable {
        &self.vars[var.0]
    }

    pub fn arity(&self, var: VarId) -> usize {
        self.vars[var.0].states.len()
    }

    pub fn name(&self, var: VarId) -> &str {
        &self.vars[var.0].name
    }

    pub fn state_name(&self, var: VarId, state: usize) -> &str {
        &self.vars[var.0].states[state]
    }

    pub fn find_var(&self, name: &str) -> Result<VarId> {
        self.vars
            .iter()
            .position(|v| v.name == name)
            .map(VarId)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn find_state(&self, var: VarId, state: &str) -> Result<usize> {
        let v = &self.vars[var.0];
        v.states
            .iter()
            .position(|s| s == state)
            .ok_or_else(|| Error::UnknownState {
                var: v.name.clone(),
                state: state.to_string(),
            })
    }

    /// Number of worlds over this table, `None` on overflow.
    pub fn world_count(&self) -> Option<u128> {
        self.vars
            .iter()
            .try_fold(1u128, |acc, v| acc.checked_mul(v.states.len() as u128))
    }

    /// Iterates all worlds in lexicographic state-index order.
    pub fn worlds(&self) -> WorldIter<'_> {
        WorldIter {
            table: self,
            next: Some(vec![0; self.vars.len()]),
        }
    }
}

/// A total assignment of one state (by index) per variable.
///
/// Doubles as an instance: the simple term carrying exactly one literal
/// per variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct World(pub Vec<usize>);

impl World {
    pub fn state(&self, var: VarId) -> usize {
        self.0[var.0]
    }

    pub fn with_state(&self, var: VarId, state: usize) -> World {
        let mut w = self.clone();
        w.0[var.0] = state;
        w
    }

    /// Builds a world from `name=state` pairs; every variable must
    /// appear, and a later pair overrides an earlier one (so callers can
    /// layer overrides on top of a base instance).
    pub fn from_pairs<'a>(
        table: &VarTable,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<World> {
        let mut assignment = vec![None; table.len()];
        for (name, state) in pairs {
            let var = table.find_var(name)?;
            let idx = table.find_state(var, state)?;
            assignment[var.0] = Some(idx);
        }
        let missing = assignment.iter().filter(|a| a.is_none()).count();
        if missing > 0 {
            return Err(Error::BadWorld {
                got: table.len() - missing,
                want: table.len(),
            });
        }
        Ok(World(assignment.into_iter().map(|a| a.unwrap()).collect()))
    }

    pub fn check(&self, table: &VarTable) -> Result<()> {
        if self.0.len() != table.len() {
            return Err(Error::BadWorld {
                got: self.0.len(),
                want: table.len(),
            });
        }
        for (i, &s) in self.0.iter().enumerate() {
            if s >= table.arity(VarId(i)) {
                return Err(Error::UnknownState {
                    var: table.name(VarId(i)).to_string(),
                    state: format!("index {s}"),
                });
            }
        }
        Ok(())
    }

    pub fn render(&self, table: &VarTable) -> String {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &s)| format!("{}={}", table.name(VarId(i)), table.state_name(VarId(i), s)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

pub struct WorldIter<'a> {
    table: &'a VarTable,
    next: Option<Vec<usize>>,
}

impl Iterator for WorldIter<'_> {
    type Item = World;

    fn next(&mut self) -> Option<World> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // increment like a mixed-radix counter, most significant first
        let mut i = succ.len();
        loop {
            if i == 0 {
                self.next = None;
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.table.arity(VarId(i)) {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        if self.table.is_empty() {
            self.next = None;
        }
        Some(World(current))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_bounds_enforced() {
        let mut t = VarTable::new();
        assert!(matches!(
            t.add_var("X", ["only"]),
            Err(Error::ArityTooSmall { .. })
        ));
        let many: Vec<String> = (0..65).map(|i| format!("s{i}")).collect();
        assert!(matches!(
            t.add_var("Y".to_string(), many),
            Err(Error::ArityTooLarge { .. })
        ));
    }

    #[test]
    fn names_unique() {
        let mut t = VarTable::new();
        t.add_var("X", ["a", "b"]).unwrap();
        assert!(matches!(
            t.add_var("X", ["c", "d"]),
            Err(Error::DuplicateName(_))
        ));
        assert!(matches!(
            t.add_var("Y", ["a", "a"]),
            Err(Error::DuplicateName(_))
        ));
    }

    #[test]
    fn world_enumeration_is_exhaustive_and_ordered() {
        let mut t = VarTable::new();
        t.add_var("X", ["x1", "x2", "x3"]).unwrap();
        t.add_var("Y", ["y1", "y2"]).unwrap();
        let worlds: Vec<World> = t.worlds().collect();
        assert_eq!(worlds.len(), 6);
        assert_eq!(worlds[0], World(vec![0, 0]));
        assert_eq!(worlds[1], World(vec![0, 1]));
        assert_eq!(worlds[5], World(vec![2, 1]));
        assert_eq!(t.world_count(), Some(6));
    }
}
