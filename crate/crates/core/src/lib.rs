//! Classical and general explanations for classifiers with non-binary
//! discrete features.
//!
//! A classifier is represented either as a decision graph or directly by
//! a multi-valued NNF class formula. For a decision on an instance the
//! library computes:
//!
//! - sufficient reasons (SRs) and necessary reasons (NRs) — the classical
//!   explanations built from the instance's own feature settings;
//! - general sufficient/necessary reasons (GSRs/GNRs) — explanations
//!   whose literals may be any state set implied by the instance, which
//!   carry strictly more information when features are non-binary;
//! - the complete reason (`∀I·Δ`) and the general reason (`⫰I·Δ`), the
//!   circuits whose prime implicants/implicates the reasons are.
//!
//! Every algorithmic path is paired with an independent brute-force
//! oracle ([`oracle`]) so that small instances can be verified
//! exhaustively.
//!
//! ```
//! use mvreasons::{explain, graph::graph_from_json, World};
//!
//! let graph = graph_from_json(r#"{
//!     "variables": [
//!         {"name": "Age",    "states": ["<55", ">=55"]},
//!         {"name": "Weight", "states": ["Underweight", "Normal", "Overweight"]}
//!     ],
//!     "classes": ["yes", "no"],
//!     "nodes": [
//!         {"id": 0, "var": "Age", "edges": [
//!             {"states": [">=55"], "to": 1}, {"states": ["<55"], "to": 3}]},
//!         {"id": 1, "var": "Weight", "edges": [
//!             {"states": ["Normal", "Overweight"], "to": 2},
//!             {"states": ["Underweight"], "to": 3}]},
//!         {"id": 2, "class": "yes"},
//!         {"id": 3, "class": "no"}
//!     ],
//!     "root": 0
//! }"#)?;
//!
//! let patient = World::from_pairs(graph.table(), [("Age", ">=55"), ("Weight", "Overweight")])?;
//! let report = explain(&graph, &patient)?;
//! assert_eq!(report.decision.as_deref(), Some("yes"));
//! // the general sufficient reason weakens Weight = Overweight to a state set
//! let gsr = report.gsrs.iter().next().unwrap();
//! assert_eq!(gsr.render(graph.table()), "Age = >=55 ∧ Weight ∈ {Normal, Overweight}");
//! # Ok::<(), mvreasons::Error>(())
//! ```

pub mod error;
pub mod explain;
pub mod graph;
pub mod logic;
pub mod oracle;
pub mod pi;
pub mod ip;
pub mod quantify;

pub use error::{Error, Result};
pub use explain::{explain, explain_formula, explain_with, Budgets, ExplanationReport, GapSummary};
pub use graph::DecisionGraph;
pub use logic::{Clause, Literal, NnfArena, NodeId, StateSet, Term, VarId, VarTable, World};
