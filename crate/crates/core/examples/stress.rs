//! Ad-hoc scale probe: explains decisions of larger random graphs
//! through the algebraic pipeline (no oracle) and reports timings.

use std::time::Instant;

use mvreasons::explain::explain;
use mvreasons::graph::{DgNode, Edge};
use mvreasons::logic::{StateSet, VarId, VarTable};
use mvreasons::{DecisionGraph, World};

fn build(table: &VarTable, nodes: &mut Vec<DgNode>, allowed: &mut Vec<StateSet>, depth: usize, seed: &mut u64) -> usize {
    let mut next = || {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (*seed >> 33) as usize
    };
    let splittable: Vec<VarId> = table.var_ids().filter(|v| allowed[v.0].len() >= 2).collect();
    if depth == 0 || splittable.is_empty() {
        nodes.push(DgNode::Leaf { class: next() % 2 });
        return nodes.len() - 1;
    }
    let var = splittable[next() % splittable.len()];
    let states: Vec<usize> = allowed[var.0].iter().collect();
    let cut = 1 + next() % (states.len() - 1);
    let cells = [
        StateSet::from_states(states[..cut].iter().copied()),
        StateSet::from_states(states[cut..].iter().copied()),
    ];
    let saved = allowed[var.0];
    let mut edges = Vec::new();
    for cell in cells {
        allowed[var.0] = cell;
        let child = build(table, nodes, allowed, depth - 1, seed);
        edges.push(Edge { states: cell, to: child });
    }
    allowed[var.0] = saved;
    nodes.push(DgNode::Test { var, edges });
    nodes.len() - 1
}

fn main() {
    for (nvars, arity, depth) in [(6, 3, 6), (8, 4, 8), (10, 4, 10)] {
        let mut table = VarTable::new();
        for v in 0..nvars {
            let states: Vec<String> = (0..arity).map(|s| format!("s{s}")).collect();
            table.add_var(format!("V{v}"), states).unwrap();
        }
        let mut nodes = Vec::new();
        let mut allowed: Vec<StateSet> = table.var_ids().map(|v| StateSet::full(table.arity(v))).collect();
        let mut seed = 99u64;
        let root = build(&table, &mut nodes, &mut allowed, depth, &mut seed);
        let g = DecisionGraph::new(table.clone(), vec!["a".into(), "b".into()], nodes, root).unwrap();
        assert!(g.validate().is_valid());
        let start = Instant::now();
        let mut total_gsrs = 0;
        let mut total_gnrs = 0;
        for k in 0..20 {
            let w = World((0..nvars).map(|v| (k + v) % arity).collect());
            let report = explain(&g, &w).unwrap();
            total_gsrs += report.gsrs.len();
            total_gnrs += report.gnrs.len();
        }
        println!(
            "{nvars} vars arity {arity} depth {depth}: {} graph nodes, 20 instances in {:?} ({} gsrs, {} gnrs)",
            g.nodes().len(),
            start.elapsed(),
            total_gsrs,
            total_gnrs
        );
    }
}
