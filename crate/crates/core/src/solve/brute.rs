//! Exhaustive reference solver.

use crate::error::Result;
use crate::instance::Sm2Instance;
use crate::oracle::{MultiSetVector, DEFAULT_ENUMERATION_CAP};

use super::{Diagnostics, SolveMode, SolveResult};

/// Enumerate the box, keep feasible points and return the first minimizer
/// in lexicographic order. An infeasible system yields `feasible = false`.
pub fn brute_force_solve(inst: &Sm2Instance) -> Result<SolveResult> {
    brute_force_solve_with_cap(inst, DEFAULT_ENUMERATION_CAP)
}

pub fn brute_force_solve_with_cap(inst: &Sm2Instance, cap: u64) -> Result<SolveResult> {
    inst.ground.check_enumerable(cap)?;
    let mut best: Option<(Vec<u32>, f64)> = None;
    for x in inst.ground.points() {
        if !inst.constraints.iter().all(|c| c.satisfied_by(&x)) {
            continue;
        }
        let v = inst.objective.eval(&x);
        if best.as_ref().is_none_or(|(_, b)| v < *b) {
            best = Some((x, v));
        }
    }
    let diagnostics = Diagnostics::for_instance(inst);
    Ok(match best {
        Some((x, value)) => SolveResult {
            x: MultiSetVector::new(x),
            value,
            lower_bound: value,
            mode: SolveMode::BruteForce,
            ratio_bound: Some(1.0),
            feasible: true,
            certified: true,
            warnings: Vec::new(),
            diagnostics,
        },
        None => SolveResult::infeasible(inst, SolveMode::BruteForce, diagnostics),
    })
}
