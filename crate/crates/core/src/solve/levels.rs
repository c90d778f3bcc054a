//! Minimization of a lattice-submodular function over a monotone system via
//! its level graph.

use std::collections::VecDeque;
use std::sync::Arc;

use log::debug;

use crate::error::{Error, Result};
use crate::instance::TwoVarConstraint;
use crate::oracle::GroundSet;
use crate::reduce::{
    binarize_monotone_system, decode_levels, Binarization, BinarizedSystem, LevelLayout,
};
use crate::sfm::{sfm_over_ring, RingFamily, SetFunctionOracle, SfmOptions};

pub(crate) type LatticeFn = Arc<dyn Fn(&[u32]) -> f64 + Send + Sync>;

/// Minimizer of a monotone system, or `None` when the system is infeasible.
#[derive(Debug, Clone)]
pub(crate) struct LevelSolution {
    pub x: Vec<u32>,
    pub value: f64,
    pub iterations: usize,
    pub level_variables: usize,
    pub free_variables: usize,
    pub closure_arcs: usize,
}

/// Slope needed on the chain-violation count so that the level objective
/// is submodular on all subsets of level variables.
///
/// Each marginal `f(x + e_i) - f(x)` is smallest when every other coordinate
/// is at its bound, so scanning the faces through `u` gives the minimum.
fn chain_slope(ground: &GroundSet, f: &LatticeFn) -> f64 {
    let mut x = ground.full().into_inner();
    let mut worst = 0.0f64;
    for i in 0..ground.len() {
        let u = ground.bound(i);
        x[i] = 0;
        let mut prev = f(&x);
        for p in 1..=u {
            x[i] = p;
            let cur = f(&x);
            worst = worst.min(cur - prev);
            prev = cur;
        }
    }
    (1.0 - worst).ceil()
}

/// Close the fixings under the arcs: ones propagate to successors, zeros to
/// predecessors. Returns `None` on a contradiction.
fn propagate(system: &BinarizedSystem) -> Option<Vec<Option<bool>>> {
    let n = system.layout.len();
    let mut succ = vec![Vec::new(); n];
    let mut pred = vec![Vec::new(); n];
    for &(u, v) in &system.closure_arcs {
        succ[u].push(v);
        pred[v].push(u);
    }
    let mut value: Vec<Option<bool>> = vec![None; n];
    let mut queue: VecDeque<(usize, bool)> = system.fixed.iter().map(|(&v, &b)| (v, b)).collect();
    while let Some((v, b)) = queue.pop_front() {
        match value[v] {
            Some(prev) if prev == b => continue,
            Some(_) => return None,
            None => value[v] = Some(b),
        }
        let next = if b { &succ[v] } else { &pred[v] };
        queue.extend(next.iter().map(|&w| (w, b)));
    }
    Some(value)
}

/// `min f(x)` over the integer points of `ground` satisfying `constraints`,
/// all of which must be monotone or singletons.
pub(crate) fn minimize_monotone(
    ground: &GroundSet,
    constraints: &[TwoVarConstraint],
    f: LatticeFn,
    integer_valued: bool,
    budget: u64,
    opts: &SfmOptions,
) -> Result<Option<LevelSolution>> {
    let system = match binarize_monotone_system(constraints, ground, budget)? {
        Binarization::System(s) => s,
        Binarization::BoxInfeasible { index, reason } => {
            debug!("constraint {index} infeasible over the box: {reason}");
            return Ok(None);
        }
    };
    if !system.conflicts.is_empty() {
        return Ok(None);
    }
    let Some(assigned) = propagate(&system) else {
        return Ok(None);
    };
    let layout = system.layout.clone();
    let free: Vec<usize> = (0..layout.len())
        .filter(|&v| assigned[v].is_none())
        .collect();
    let mut slot = vec![usize::MAX; layout.len()];
    for (k, &v) in free.iter().enumerate() {
        slot[v] = k;
    }
    let arcs: Vec<(usize, usize)> = system
        .closure_arcs
        .iter()
        .filter(|&&(u, v)| slot[u] != usize::MAX && slot[v] != usize::MAX)
        .map(|&(u, v)| (slot[u], slot[v]))
        .collect();
    let base: Vec<bool> = assigned.iter().map(|a| a.unwrap_or(false)).collect();

    let slope = chain_slope(ground, &f);
    let objective = {
        let layout = layout.clone();
        let free = free.clone();
        let base = base.clone();
        let f = f.clone();
        SetFunctionOracle::new(free.len(), integer_valued, move |s| {
            let mut levels = base.clone();
            for (k, &v) in free.iter().enumerate() {
                levels[v] = s[k];
            }
            let (x, broken) = prefix_counts(&layout, &levels);
            f(&x) + slope * broken as f64
        })
    };
    let out = sfm_over_ring(&objective, &RingFamily::new(arcs.clone()), opts)?;
    let mut levels = base;
    for (k, &v) in free.iter().enumerate() {
        levels[v] = out.set[k];
    }
    let x = decode_levels(&layout, &levels)?.into_inner();
    if let Some(k) = constraints.iter().position(|c| !c.satisfied_by(&x)) {
        return Err(Error::InvalidConstraint(format!(
            "level solution violates constraint {k}; reduction is inconsistent"
        )));
    }
    let value = f(&x);
    Ok(Some(LevelSolution {
        x,
        value,
        iterations: out.iterations,
        level_variables: layout.len(),
        free_variables: free.len(),
        closure_arcs: system.closure_arcs.len(),
    }))
}

/// Per-element length of the leading run of ones, and the number of ones
/// outside those runs.
fn prefix_counts(layout: &LevelLayout, levels: &[bool]) -> (Vec<u32>, usize) {
    let mut x = Vec::with_capacity(layout.elements());
    let mut broken = 0;
    for i in 0..layout.elements() {
        let u = layout.bound(i);
        let run = (1..=u).take_while(|&p| levels[layout.var(i, p)]).count() as u32;
        broken += (run + 1..=u).filter(|&p| levels[layout.var(i, p)]).count();
        x.push(run);
    }
    (x, broken)
}
