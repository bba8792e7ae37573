//! Multi-valued discrete logic kernel: variables, literals, terms,
//! clauses, NNF circuits, conditioning, evaluation, entailment,
//! subsumption and the instance operators `⊓`, `∖`, `⫦`.

mod circuit;
pub mod json;
mod literal;
mod table;
mod term;

pub use circuit::{NnfArena, Node, NodeId, DEFAULT_WORLD_BUDGET};
pub use literal::{Literal, StateSet};
pub use table::{VarId, VarTable, Variable, World, WorldIter};
pub use term::{
    instance_cap_clause, instance_cap_term, instance_minus_clause, instance_term,
    strongly_implies, Clause, Term,
};
