//! The decision-graph JSON schema.
//!
//! ```json
//! {
//!   "variables": [{"name": "Age", "states": ["<55", ">=55"]}],
//!   "classes": ["yes", "no"],
//!   "nodes": [
//!     {"id": 0, "var": "Age", "edges": [{"states": [">=55"], "to": 1},
//!                                       {"states": ["<55"],  "to": 2}]},
//!     {"id": 1, "class": "yes"},
//!     {"id": 2, "class": "no"}
//!   ],
//!   "root": 0
//! }
//! ```
//!
//! `variables[i].intervals` is an optional list of display strings, one
//! per state. Saving a loaded graph reproduces the node ids and ordering
//! of the input, so load → save → load is the identity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DecisionGraph, DgNode, Edge};
use crate::logic::json::{table_from_schema, table_to_schema, TableSchema, VariableSchema};
use crate::logic::StateSet;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EdgeSchema {
    states: Vec<String>,
    to: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum NodeSchema {
    Test {
        id: u64,
        var: String,
        edges: Vec<EdgeSchema>,
    },
    Leaf {
        id: u64,
        class: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphSchema {
    variables: Vec<VariableSchema>,
    classes: Vec<String>,
    nodes: Vec<NodeSchema>,
    root: u64,
}

/// Parses a decision graph from its JSON text.
pub fn graph_from_json(text: &str) -> Result<DecisionGraph> {
    let schema: GraphSchema = serde_json::from_str(text)?;
    let table = table_from_schema(&TableSchema {
        variables: schema.variables.clone(),
    })?;

    let ids: Vec<u64> = schema
        .nodes
        .iter()
        .map(|n| match n {
            NodeSchema::Test { id, .. } | NodeSchema::Leaf { id, .. } => *id,
        })
        .collect();
    let index_of = |id: u64| -> Result<usize> {
        ids.iter()
            .position(|&i| i == id)
            .ok_or_else(|| Error::Schema(format!("node id {id} is not defined")))
    };
    for (i, id) in ids.iter().enumerate() {
        if ids[..i].contains(id) {
            return Err(Error::Schema(format!("duplicate node id {id}")));
        }
    }

    let mut nodes = Vec::with_capacity(schema.nodes.len());
    for n in &schema.nodes {
        match n {
            NodeSchema::Leaf { class, .. } => {
                let class = schema
                    .classes
                    .iter()
                    .position(|c| c == class)
                    .ok_or_else(|| Error::UnknownClass(class.clone()))?;
                nodes.push(DgNode::Leaf { class });
            }
            NodeSchema::Test { var, edges, .. } => {
                let var_id = table.find_var(var)?;
                let mut parsed = Vec::with_capacity(edges.len());
                for e in edges {
                    let mut states = StateSet::EMPTY;
                    for s in &e.states {
                        states =
                            states.union(StateSet::singleton(table.find_state(var_id, s)?));
                    }
                    parsed.push(Edge {
                        states,
                        to: index_of(e.to)?,
                    });
                }
                nodes.push(DgNode::Test {
                    var: var_id,
                    edges: parsed,
                });
            }
        }
    }

    let root = index_of(schema.root)?;
    DecisionGraph::with_ids(table, schema.classes, nodes, ids, root)
}

/// Serializes a decision graph back to JSON text (pretty-printed, with a
/// trailing newline). Ids and ordering match what was loaded.
pub fn graph_to_json(graph: &DecisionGraph) -> String {
    let table = graph.table();
    let ids = graph.node_ids();
    let nodes = graph
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, n)| match n {
            DgNode::Leaf { class } => NodeSchema::Leaf {
                id: ids[i],
                class: graph.classes()[*class].clone(),
            },
            DgNode::Test { var, edges } => NodeSchema::Test {
                id: ids[i],
                var: table.name(*var).to_string(),
                edges: edges
                    .iter()
                    .map(|e| EdgeSchema {
                        states: e
                            .states
                            .iter()
                            .map(|s| table.state_name(*var, s).to_string())
                            .collect(),
                        to: ids[e.to],
                    })
                    .collect(),
            },
        })
        .collect();
    let schema = GraphSchema {
        variables: table_to_schema(table).variables,
        classes: graph.classes().to_vec(),
        nodes,
        root: ids[graph.root()],
    };
    let mut text = serde_json::to_string_pretty(&schema).expect("schema serializes");
    text.push('\n');
    text
}
