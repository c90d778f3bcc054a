//! 2-SAT over level variables via strongly connected components of the
//! implication graph.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::Result;
use crate::instance::Sm2Instance;
use crate::oracle::MultiSetVector;
use crate::reduce::{binarize_system, decode_levels, Binarization, BinarizedSystem};

/// Literal node ids: `2v` is `v`, `2v + 1` is `¬v`.
fn lit(var: usize, value: bool) -> u32 {
    (2 * var + usize::from(!value)) as u32
}

/// Satisfying assignment of the clauses of `system`, if any.
pub fn solve_binarized(system: &BinarizedSystem) -> Option<Vec<bool>> {
    if !system.conflicts.is_empty() {
        return None;
    }
    let n = system.layout.len();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    // a ∨ b  ⇒  ¬a → b, ¬b → a
    let mut clause = |a: (usize, bool), b: (usize, bool)| {
        edges.push((lit(a.0, !a.1), lit(b.0, b.1)));
        edges.push((lit(b.0, !b.1), lit(a.0, a.1)));
    };
    for &(u, v) in &system.closure_arcs {
        clause((u, false), (v, true));
    }
    for &(u, v) in &system.cover_clauses {
        clause((u, true), (v, true));
    }
    for &(u, v) in &system.exclusion_clauses {
        clause((u, false), (v, false));
    }
    for (&v, &b) in &system.fixed {
        clause((v, b), (v, b));
    }
    let graph: DiGraph<(), ()> = DiGraph::from_edges(edges);
    let mut comp = vec![usize::MAX; 2 * n];
    // Components come out in reverse topological order.
    for (k, scc) in tarjan_scc(&graph).into_iter().enumerate() {
        for node in scc {
            if node.index() < 2 * n {
                comp[node.index()] = k;
            }
        }
    }
    // Literals untouched by any clause never enter the graph.
    let first = comp
        .iter()
        .filter(|&&c| c != usize::MAX)
        .max()
        .map_or(0, |&c| c + 1);
    for (next, c) in (first..).zip(comp.iter_mut().filter(|c| **c == usize::MAX)) {
        *c = next;
    }
    let mut assignment = Vec::with_capacity(n);
    for v in 0..n {
        let (pos, neg) = (comp[2 * v], comp[2 * v + 1]);
        if pos == neg {
            return None;
        }
        assignment.push(pos < neg);
    }
    Some(assignment)
}

/// Decide feasibility of the constraint system and return an integer
/// witness when one exists.
pub fn check_feasibility_2sat(inst: &Sm2Instance) -> Result<Option<MultiSetVector>> {
    check_feasibility_2sat_with_budget(inst, crate::reduce::DEFAULT_LEVEL_BUDGET)
}

pub fn check_feasibility_2sat_with_budget(
    inst: &Sm2Instance,
    budget: u64,
) -> Result<Option<MultiSetVector>> {
    let system = match binarize_system(&inst.constraints, &inst.ground, budget)? {
        Binarization::System(s) => s,
        Binarization::BoxInfeasible { .. } => return Ok(None),
    };
    match solve_binarized(&system) {
        Some(levels) => Ok(Some(decode_levels(&system.layout, &levels)?)),
        None => Ok(None),
    }
}
