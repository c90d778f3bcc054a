//! Solvers: exact minimization for monotone systems, the certified
//! 2-approximation for general systems, 2-SAT feasibility and a brute-force
//! reference.

mod brute;
mod levels;
mod twosat;

use std::sync::Arc;

use log::{debug, warn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{ConstraintClass, Sm2Instance};
use crate::oracle::{MultiSetVector, DEFAULT_ENUMERATION_CAP, VALUE_TOL};
use crate::reduce::{monotonize, DEFAULT_LEVEL_BUDGET};
use crate::sfm::SfmOptions;

pub use brute::{brute_force_solve, brute_force_solve_with_cap};
pub use twosat::{check_feasibility_2sat, check_feasibility_2sat_with_budget, solve_binarized};

use levels::{minimize_monotone, LatticeFn};

/// Absolute slack on certificate inequalities.
pub const CERTIFICATE_TOL: f64 = 1e-9;

/// Number of random points sampled for the nonnegativity check.
pub const NONNEGATIVITY_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub sfm: SfmOptions,
    /// Box-size cap for exhaustive enumeration.
    pub cap: u64,
    /// Cap on the number of level variables.
    pub budget: u64,
    /// Seed for the nonnegativity sampling behind the certificate.
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            sfm: SfmOptions::default(),
            cap: DEFAULT_ENUMERATION_CAP,
            budget: DEFAULT_LEVEL_BUDGET,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SolveMode {
    ExactMonotone,
    Approx2,
    BruteForce,
}

/// Sizes and counters collected during a solve.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    pub constraints: usize,
    pub monotone_constraints: usize,
    pub non_monotone_constraints: usize,
    pub singleton_constraints: usize,
    pub level_variables: usize,
    pub free_level_variables: usize,
    pub closure_arcs: usize,
    pub sfm_iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounding: Option<String>,
}

impl Diagnostics {
    pub fn for_instance(inst: &Sm2Instance) -> Self {
        let count = |k: ConstraintClass| {
            inst.constraints
                .iter()
                .filter(|c| c.classify() == k)
                .count()
        };
        Diagnostics {
            constraints: inst.constraints.len(),
            monotone_constraints: count(ConstraintClass::Monotone),
            non_monotone_constraints: count(ConstraintClass::NonMonotone),
            singleton_constraints: count(ConstraintClass::Singleton),
            ..Diagnostics::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult {
    pub x: MultiSetVector,
    pub value: f64,
    /// Proven lower bound on the constrained optimum.
    pub lower_bound: f64,
    pub mode: SolveMode,
    /// `value / lower_bound`; `None` when no certificate could be issued.
    pub ratio_bound: Option<f64>,
    pub feasible: bool,
    /// False when the ratio certificate was voided (negative samples of `f`).
    pub certified: bool,
    pub warnings: Vec<String>,
    pub diagnostics: Diagnostics,
}

impl SolveResult {
    pub(crate) fn infeasible(
        inst: &Sm2Instance,
        mode: SolveMode,
        diagnostics: Diagnostics,
    ) -> Self {
        SolveResult {
            x: inst.ground.zero(),
            value: f64::INFINITY,
            lower_bound: f64::INFINITY,
            mode,
            ratio_bound: None,
            feasible: false,
            certified: false,
            warnings: Vec::new(),
            diagnostics,
        }
    }
}

fn objective_fn(inst: &Sm2Instance) -> LatticeFn {
    let f = inst.objective.clone();
    Arc::new(move |x: &[u32]| f.eval(x))
}

/// Exact minimization when every constraint is monotone or a singleton.
///
/// Errors with [`Error::NotMonotone`] on a non-monotone constraint and with
/// [`Error::Infeasible`] when the system has no solution.
pub fn solve_exact_monotone(inst: &Sm2Instance, opts: &SolveOptions) -> Result<SolveResult> {
    if let Some(k) = inst
        .constraints
        .iter()
        .position(|c| c.classify() == ConstraintClass::NonMonotone)
    {
        return Err(Error::NotMonotone(k));
    }
    let integer = inst.objective.flags().integer_valued;
    let sol = minimize_monotone(
        &inst.ground,
        &inst.constraints,
        objective_fn(inst),
        integer,
        opts.budget,
        &opts.sfm,
    )?
    .ok_or(Error::Infeasible)?;
    let mut diagnostics = Diagnostics::for_instance(inst);
    diagnostics.level_variables = sol.level_variables;
    diagnostics.free_level_variables = sol.free_variables;
    diagnostics.closure_arcs = sol.closure_arcs;
    diagnostics.sfm_iterations = sol.iterations;
    Ok(SolveResult {
        x: MultiSetVector::new(sol.x),
        value: sol.value,
        lower_bound: sol.value,
        mode: SolveMode::ExactMonotone,
        ratio_bound: Some(1.0),
        feasible: true,
        certified: true,
        warnings: Vec::new(),
        diagnostics,
    })
}

/// Optimum of the relaxed problem on the duplicated variables.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelaxationOutcome {
    pub m_plus: Vec<u32>,
    /// Nonpositive; `-m_minus` is the level count on the minus copy.
    pub m_minus: Vec<i64>,
    /// `f(m_plus) + f(-m_minus)`, re-evaluated.
    pub g_value: f64,
    /// `(m_plus - m_minus) / 2`, reported for inspection only.
    pub half_integral: Vec<f64>,
    pub iterations: usize,
    pub level_variables: usize,
    pub free_level_variables: usize,
    pub closure_arcs: usize,
}

impl RelaxationOutcome {
    /// `-m_minus` as an unsigned vector.
    pub fn minus_levels(&self) -> Vec<u32> {
        self.m_minus.iter().map(|&v| (-v) as u32).collect()
    }

    pub fn lower(&self) -> Vec<u32> {
        self.m_plus
            .iter()
            .zip(self.minus_levels())
            .map(|(&a, b)| a.min(b))
            .collect()
    }

    pub fn upper(&self) -> Vec<u32> {
        self.m_plus
            .iter()
            .zip(self.minus_levels())
            .map(|(&a, b)| a.max(b))
            .collect()
    }

    pub fn lower_bound(&self) -> f64 {
        self.g_value / 2.0
    }
}

/// Minimize `g(x⁺, x⁻) = f(x⁺) + f(-x⁻)` over the monotonized system.
///
/// Errors with [`Error::Infeasible`] when the duplicated system has no
/// solution, which implies the original one has none either.
pub fn solve_relaxation(inst: &Sm2Instance, opts: &SolveOptions) -> Result<RelaxationOutcome> {
    let n = inst.n();
    let dup = monotonize(inst);
    let (ground, constraints) = dup.shifted()?;
    let u: Vec<u32> = inst.ground.bounds().to_vec();
    let f = inst.objective.clone();
    let g: LatticeFn = {
        let u = u.clone();
        Arc::new(move |v: &[u32]| {
            let minus: Vec<u32> = v[n..].iter().zip(&u).map(|(&y, &b)| b - y).collect();
            f.eval(&v[..n]) + f.eval(&minus)
        })
    };
    let integer = inst.objective.flags().integer_valued;
    let sol = minimize_monotone(&ground, &constraints, g, integer, opts.budget, &opts.sfm)?
        .ok_or(Error::Infeasible)?;
    let m_plus = sol.x[..n].to_vec();
    let m_minus: Vec<i64> = sol.x[n..]
        .iter()
        .zip(&u)
        .map(|(&y, &b)| y as i64 - b as i64)
        .collect();
    let minus_levels: Vec<u32> = m_minus.iter().map(|&v| (-v) as u32).collect();
    let g_value = inst.objective.eval(&m_plus) + inst.objective.eval(&minus_levels);
    let half_integral = m_plus
        .iter()
        .zip(&m_minus)
        .map(|(&p, &m)| (p as f64 - m as f64) / 2.0)
        .collect();
    debug!("relaxation: m+ = {m_plus:?}, m- = {m_minus:?}, g = {g_value}");
    Ok(RelaxationOutcome {
        m_plus,
        m_minus,
        g_value,
        half_integral,
        iterations: sol.iterations,
        level_variables: sol.level_variables,
        free_level_variables: sol.free_variables,
        closure_arcs: sol.closure_arcs,
    })
}

/// Componentwise `max(m⁺, -m⁻)`, checked against every constraint.
pub fn round_up(out: &RelaxationOutcome, inst: &Sm2Instance) -> Result<MultiSetVector> {
    let x = out.upper();
    if let Some(index) = inst.first_violation(&x) {
        return Err(Error::RoundingInfeasible {
            index,
            reason: "rounded-up point violates it; the round-up declaration does not hold for this instance".into(),
        });
    }
    Ok(MultiSetVector::new(x))
}

/// Clamp the feasible witness `z` into `[min(m⁺, -m⁻), max(m⁺, -m⁻)]`.
pub fn round_ell(out: &RelaxationOutcome, z: &[u32], inst: &Sm2Instance) -> Result<MultiSetVector> {
    if z.len() != inst.n() {
        return Err(Error::dims("witness", inst.n(), z.len()));
    }
    let x: Vec<u32> = out
        .lower()
        .into_iter()
        .zip(out.upper())
        .zip(z)
        .map(|((lo, hi), &zi)| zi.clamp(lo, hi))
        .collect();
    if let Some(index) = inst.first_violation(&x) {
        return Err(Error::RoundingInfeasible {
            index,
            reason: "clamped witness violates it".into(),
        });
    }
    Ok(MultiSetVector::new(x))
}

/// First sampled point where `f` is negative. Samples the corners, the given
/// points and `NONNEGATIVITY_SAMPLES` seeded random points of the box.
pub fn find_negative_sample(inst: &Sm2Instance, seed: u64, extra: &[&[u32]]) -> Option<Vec<u32>> {
    let g = &inst.ground;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let corners = [g.zero().into_inner(), g.full().into_inner()];
    let random = (0..NONNEGATIVITY_SAMPLES).map(|_| {
        g.bounds()
            .iter()
            .map(|&u| rng.random_range(0..=u))
            .collect()
    });
    corners
        .into_iter()
        .chain(extra.iter().map(|p| p.to_vec()))
        .chain(random)
        .find(|x: &Vec<u32>| inst.objective.eval(x) < -VALUE_TOL)
}

/// The 2-approximation.
///
/// Uses round-up when the instance declares the round-up property, the
/// 2-SAT witness with [`round_ell`] when the objective claims monotonicity,
/// and refuses otherwise.
pub fn solve_approx(inst: &Sm2Instance, opts: &SolveOptions) -> Result<SolveResult> {
    let monotone_f = inst.objective.flags().claims_monotone;
    if !inst.roundup_declared && !monotone_f {
        return Err(Error::Refused(
            "no approximation guarantee: the instance does not declare round-up and the objective is not monotone"
                .into(),
        ));
    }
    let relaxation = solve_relaxation(inst, opts)?;
    let mut diagnostics = Diagnostics::for_instance(inst);
    diagnostics.level_variables = relaxation.level_variables;
    diagnostics.free_level_variables = relaxation.free_level_variables;
    diagnostics.closure_arcs = relaxation.closure_arcs;
    diagnostics.sfm_iterations = relaxation.iterations;
    let x = if inst.roundup_declared {
        diagnostics.rounding = Some("round_up".into());
        round_up(&relaxation, inst)?
    } else {
        diagnostics.rounding = Some("round_ell".into());
        let z = check_feasibility_2sat_with_budget(inst, opts.budget)?.ok_or(Error::Infeasible)?;
        round_ell(&relaxation, &z, inst)?
    };
    let value = inst.objective.eval(&x);
    let lower_bound = relaxation.lower_bound();
    let mut warnings = Vec::new();
    let negative = find_negative_sample(
        inst,
        opts.seed,
        &[&x, &relaxation.m_plus, &relaxation.minus_levels()],
    );
    let mut certified = true;
    if let Some(p) = negative {
        let msg = format!("objective is negative at {p:?}; the ratio certificate does not apply");
        warn!("{msg}");
        warnings.push(msg);
        certified = false;
    } else if value > 2.0 * lower_bound + CERTIFICATE_TOL {
        let msg = format!("value {value} exceeds twice the lower bound {lower_bound}");
        warn!("{msg}");
        warnings.push(msg);
        certified = false;
    }
    let ratio_bound = certified.then(|| {
        if lower_bound.abs() <= CERTIFICATE_TOL {
            1.0
        } else {
            value / lower_bound
        }
    });
    Ok(SolveResult {
        x,
        value,
        lower_bound,
        mode: SolveMode::Approx2,
        ratio_bound,
        feasible: true,
        certified,
        warnings,
        diagnostics,
    })
}

/// Exact solve for monotone systems, 2-approximation otherwise.
pub fn solve_auto(inst: &Sm2Instance, opts: &SolveOptions) -> Result<SolveResult> {
    if inst.is_monotone_system() {
        solve_exact_monotone(inst, opts)
    } else {
        solve_approx(inst, opts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{make_family, FunctionFamily};
    use crate::instance::TwoVarConstraint;
    use crate::oracle::{GroundSet, OracleFlags, SubmodularOracle};

    fn vc(n: usize, edges: &[(usize, usize)], family: FunctionFamily) -> Sm2Instance {
        let g = GroundSet::binary(n).unwrap();
        let f = make_family(&family, &g).unwrap();
        let cs = edges
            .iter()
            .map(|&(a, b)| TwoVarConstraint::new(a, 1, b, 1, 1).unwrap())
            .collect();
        Sm2Instance::new(g, cs, f, true).unwrap()
    }

    #[test]
    fn exact_monotone_example() {
        let g = GroundSet::new(vec![2, 2]).unwrap();
        let f = make_family(&FunctionFamily::Modular { w: vec![1.0, -2.0] }, &g).unwrap();
        let cs = vec![TwoVarConstraint::new(0, 1, 1, -1, 0).unwrap()];
        let inst = Sm2Instance::new(g, cs, f, false).unwrap();
        let r = solve_exact_monotone(&inst, &SolveOptions::default()).unwrap();
        assert_eq!((r.x.to_vec(), r.value), (vec![2, 2], -2.0));
        assert_eq!(r.mode, SolveMode::ExactMonotone);
    }

    #[test]
    fn exact_monotone_unconstrained_monotone_f() {
        let inst = vc(3, &[], FunctionFamily::cardinality(3));
        let r = solve_exact_monotone(&inst, &SolveOptions::default()).unwrap();
        assert_eq!((r.x.to_vec(), r.value), (vec![0, 0, 0], 0.0));
    }

    #[test]
    fn triangle_vertex_cover() {
        let inst = vc(3, &[(0, 1), (1, 2), (0, 2)], FunctionFamily::cardinality(3));
        let r = solve_approx(&inst, &SolveOptions::default()).unwrap();
        assert!(inst.is_feasible(&r.x));
        assert!(r.value <= 4.0);
        assert!(r.ratio_bound.unwrap() <= 2.0 + 1e-9);
        let b = brute_force_solve(&inst).unwrap();
        assert_eq!(b.value, 2.0);
        assert!(r.lower_bound <= b.value + 1e-9);
    }

    #[test]
    fn relaxation_of_unconstrained_problem_agrees() {
        let g = GroundSet::new(vec![3, 2]).unwrap();
        let f = make_family(&FunctionFamily::Modular { w: vec![-1.0, 2.0] }, &g).unwrap();
        let inst = Sm2Instance::new(g, vec![], f, true).unwrap();
        let r = solve_relaxation(&inst, &SolveOptions::default()).unwrap();
        assert_eq!(r.m_plus, vec![3, 0]);
        assert_eq!(r.minus_levels(), vec![3, 0]);
        assert_eq!(r.g_value, -6.0);
    }

    #[test]
    fn rounding_examples() {
        let out = RelaxationOutcome {
            m_plus: vec![1, 1, 0],
            m_minus: vec![-1, 0, 0],
            g_value: 0.0,
            half_integral: vec![1.0, 0.5, 0.0],
            iterations: 0,
            level_variables: 0,
            free_level_variables: 0,
            closure_arcs: 0,
        };
        let inst = vc(3, &[(0, 1)], FunctionFamily::cardinality(3));
        assert_eq!(round_up(&out, &inst).unwrap().to_vec(), vec![1, 1, 0]);
        assert_eq!(
            round_ell(&out, &[0, 1, 0], &inst).unwrap().to_vec(),
            vec![1, 1, 0]
        );
        assert_eq!(
            round_ell(&out, &[1, 0, 1], &inst).unwrap().to_vec(),
            vec![1, 0, 0]
        );
    }

    #[test]
    fn refuses_without_guarantee() {
        let g = GroundSet::binary(2).unwrap();
        let f = make_family(&FunctionFamily::Modular { w: vec![1.0, -1.0] }, &g).unwrap();
        let cs = vec![TwoVarConstraint::new(0, 1, 1, 1, 1).unwrap()];
        let inst = Sm2Instance::new(g, cs, f, false).unwrap();
        assert!(matches!(
            solve_approx(&inst, &SolveOptions::default()),
            Err(Error::Refused(_))
        ));
    }

    #[test]
    fn negative_objective_voids_certificate() {
        let g = GroundSet::binary(2).unwrap();
        let flags = OracleFlags {
            claims_submodular: true,
            claims_monotone: false,
            integer_valued: true,
        };
        let f = SubmodularOracle::from_fn(g.clone(), flags, |x| x[0] as f64 + x[1] as f64 - 1.0);
        let cs = vec![TwoVarConstraint::new(0, 1, 1, 1, 1).unwrap()];
        let inst = Sm2Instance::new(g, cs, f, true).unwrap();
        let r = solve_approx(&inst, &SolveOptions::default()).unwrap();
        assert!(!r.certified);
        assert!(r.ratio_bound.is_none());
        assert!(!r.warnings.is_empty());
    }

    #[test]
    fn brute_force_examples() {
        let g = GroundSet::binary(2).unwrap();
        let f = make_family(&FunctionFamily::Modular { w: vec![-1.0, 2.0] }, &g).unwrap();
        let inst = Sm2Instance::new(g.clone(), vec![], f.clone(), false).unwrap();
        let r = brute_force_solve(&inst).unwrap();
        assert_eq!((r.x.to_vec(), r.value), (vec![1, 0], -1.0));
        let cs = vec![
            TwoVarConstraint::single(0, 1, 1).unwrap(),
            TwoVarConstraint::single(0, -1, 0).unwrap(),
        ];
        let inst = Sm2Instance::new(g, cs, f, false).unwrap();
        assert!(!brute_force_solve(&inst).unwrap().feasible);
    }

    #[test]
    fn approx_on_monotone_system_matches_exact() {
        let g = GroundSet::new(vec![2, 3, 2]).unwrap();
        let f = make_family(
            &FunctionFamily::ConcaveCardinality {
                g: vec![0.0, 3.0, 5.0, 6.0, 6.5, 6.75, 6.8, 6.8],
            },
            &g,
        )
        .unwrap();
        let cs = vec![
            TwoVarConstraint::new(0, 1, 1, -1, 0).unwrap(),
            TwoVarConstraint::new(2, 2, 1, -1, 1).unwrap(),
        ];
        let inst = Sm2Instance::new(g, cs, f, false).unwrap();
        let a = solve_approx(&inst, &SolveOptions::default()).unwrap();
        let e = solve_exact_monotone(&inst, &SolveOptions::default()).unwrap();
        assert_eq!(a.value, e.value);
    }
}
