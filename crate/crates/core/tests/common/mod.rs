//! Shared fixtures and generators for the integration suites.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use mvreasons::graph::{graph_from_json, DgNode, Edge};
use mvreasons::logic::{Literal, NnfArena, NodeId, StateSet, Term, VarId, VarTable, World};
use mvreasons::DecisionGraph;

pub fn fixture_path(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn load_graph(name: &str) -> DecisionGraph {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    graph_from_json(&text).expect("fixture parses")
}

pub fn instance(graph: &DecisionGraph, pairs: &[(&str, &str)]) -> World {
    World::from_pairs(graph.table(), pairs.iter().copied()).expect("instance is total")
}

/// The running patient example: Age ≥ 55, BType = A, Weight = Overweight.
pub fn sample_patient(graph: &DecisionGraph) -> World {
    instance(
        graph,
        &[("Age", ">=55"), ("BType", "A"), ("Weight", "Overweight")],
    )
}

pub fn term(table: &VarTable, parts: &[(&str, &[&str])]) -> Term {
    let lits: Vec<Literal> = parts
        .iter()
        .map(|(v, ss)| Literal::from_names(table, v, ss).unwrap())
        .collect();
    Term::from_literals(table, lits).expect("consistent term")
}

pub fn clause(table: &VarTable, parts: &[(&str, &[&str])]) -> mvreasons::Clause {
    let lits: Vec<Literal> = parts
        .iter()
        .map(|(v, ss)| Literal::from_names(table, v, ss).unwrap())
        .collect();
    mvreasons::Clause::from_literals(table, lits).expect("proper clause")
}

/// Three ternary variables X, Y, Z.
pub fn xyz_table() -> VarTable {
    let mut t = VarTable::new();
    t.add_var("X", ["x1", "x2", "x3"]).unwrap();
    t.add_var("Y", ["y1", "y2", "y3"]).unwrap();
    t.add_var("Z", ["z1", "z2", "z3"]).unwrap();
    t
}

/// Δ = x1 ∧ y1 ∨ x12 ∧ y12 ∧ z1 with instance I = (x1, y1, z1); the
/// general reason equals Δ, the only GSR is x1 ∧ y1 and the GNRs are
/// x12 and y12.
pub fn gapped_fixture(arena: &mut NnfArena) -> (NodeId, World) {
    let x1 = arena.lit_names("X", &["x1"]).unwrap();
    let y1 = arena.lit_names("Y", &["y1"]).unwrap();
    let x12 = arena.lit_names("X", &["x1", "x2"]).unwrap();
    let y12 = arena.lit_names("Y", &["y1", "y2"]).unwrap();
    let z1 = arena.lit_names("Z", &["z1"]).unwrap();
    let t1 = arena.and([x1, y1]);
    let t2 = arena.and([x12, y12, z1]);
    (arena.or([t1, t2]), World(vec![0, 0, 0]))
}

/// Δ = ¬Δn for the nine-term DNF Δn, with instance I = (x1, y1, z1).
/// Δ has 18 models; the general reason has x1 ∨ y1 ∨ z1 as a prime
/// implicate that is not variable-minimal.
pub fn negated_dnf_fixture(arena: &mut NnfArena) -> (NodeId, World) {
    let dnf: [[usize; 3]; 9] = [
        [0, 1, 2],
        [0, 2, 1],
        [0, 2, 2],
        [1, 0, 1],
        [2, 0, 1],
        [2, 0, 2],
        [1, 1, 0],
        [1, 2, 0],
        [2, 1, 0],
    ];
    let mut terms = Vec::new();
    for [x, y, z] in dnf {
        let lx = arena
            .lit(Literal {
                var: VarId(0),
                states: StateSet::singleton(x),
            })
            .unwrap();
        let ly = arena
            .lit(Literal {
                var: VarId(1),
                states: StateSet::singleton(y),
            })
            .unwrap();
        let lz = arena
            .lit(Literal {
                var: VarId(2),
                states: StateSet::singleton(z),
            })
            .unwrap();
        terms.push(arena.and([lx, ly, lz]));
    }
    let delta_n = arena.or(terms);
    (arena.negate(delta_n), World(vec![0, 0, 0]))
}

/// A random table with 2–4 variables of arity 2–4.
pub fn rand_table(rng: &mut StdRng) -> VarTable {
    let mut t = VarTable::new();
    let nvars = rng.gen_range(2..=4);
    for v in 0..nvars {
        let arity = rng.gen_range(2..=4);
        let states: Vec<String> = (0..arity).map(|s| format!("s{s}")).collect();
        t.add_var(format!("V{v}"), states).unwrap();
    }
    t
}

/// A random NNF circuit over the arena's table.
pub fn rand_circuit(arena: &mut NnfArena, rng: &mut StdRng, depth: usize) -> NodeId {
    if depth == 0 || rng.gen_bool(0.4) {
        return rand_literal(arena, rng);
    }
    let width = rng.gen_range(2..=3);
    let children: Vec<NodeId> = (0..width)
        .map(|_| rand_circuit(arena, rng, depth - 1))
        .collect();
    if rng.gen_bool(0.5) {
        arena.and(children)
    } else {
        arena.or(children)
    }
}

pub fn rand_literal(arena: &mut NnfArena, rng: &mut StdRng) -> NodeId {
    let table = arena.table().clone();
    let var = VarId(rng.gen_range(0..table.len()));
    let arity = table.arity(var);
    let mut states = StateSet::EMPTY;
    loop {
        for s in 0..arity {
            if rng.gen_bool(0.5) {
                states = states.union(StateSet::singleton(s));
            }
        }
        if !states.is_empty() && states != StateSet::full(arity) {
            break;
        }
        states = StateSet::EMPTY;
    }
    arena.lit(Literal { var, states }).unwrap()
}

/// A random model of the circuit, if it has one.
pub fn rand_model(arena: &NnfArena, root: NodeId, rng: &mut StdRng) -> Option<World> {
    let models: Vec<World> = arena
        .table()
        .worlds()
        .filter(|w| arena.evaluate(root, w).unwrap())
        .collect();
    models.choose(rng).cloned()
}

/// A random valid decision graph over `table` (valid by construction:
/// every test partitions exactly the inherited state set).
pub fn rand_graph(table: &VarTable, rng: &mut StdRng) -> DecisionGraph {
    let nclasses = rng.gen_range(2..=3);
    let classes: Vec<String> = (0..nclasses).map(|c| format!("c{c}")).collect();
    let mut nodes: Vec<DgNode> = Vec::new();
    let mut allowed: Vec<StateSet> = table
        .var_ids()
        .map(|v| StateSet::full(table.arity(v)))
        .collect();
    let root = build_node(table, rng, &mut nodes, &mut allowed, 3, nclasses);
    DecisionGraph::new(table.clone(), classes, nodes, root).expect("construction is valid")
}

fn build_node(
    table: &VarTable,
    rng: &mut StdRng,
    nodes: &mut Vec<DgNode>,
    allowed: &mut Vec<StateSet>,
    depth: usize,
    nclasses: usize,
) -> usize {
    let splittable: Vec<VarId> = table
        .var_ids()
        .filter(|v| allowed[v.0].len() >= 2)
        .collect();
    if depth == 0 || splittable.is_empty() || rng.gen_bool(0.25) {
        nodes.push(DgNode::Leaf {
            class: rng.gen_range(0..nclasses),
        });
        return nodes.len() - 1;
    }
    let var = *splittable.choose(rng).unwrap();
    let mut states: Vec<usize> = allowed[var.0].iter().collect();
    states.shuffle(rng);
    let parts = rng.gen_range(2..=states.len().min(3));
    // split the shuffled states into `parts` non-empty groups
    let mut cuts: Vec<usize> = (1..states.len()).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    cuts.push(states.len());
    let mut edges = Vec::new();
    let mut start = 0;
    let saved = allowed[var.0];
    for cut in cuts {
        let cell = StateSet::from_states(states[start..cut].iter().copied());
        start = cut;
        allowed[var.0] = cell;
        let child = build_node(table, rng, nodes, allowed, depth - 1, nclasses);
        edges.push(Edge {
            states: cell,
            to: child,
        });
    }
    allowed[var.0] = saved;
    nodes.push(DgNode::Test { var, edges });
    nodes.len() - 1
}
