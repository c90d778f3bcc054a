//! Submodular minimization under constraints with at most two variables per
//! inequality, over binary or bounded-integer (multi-set) variables.
//!
//! Monotone systems (`a·x_i − b·x_j ≥ c` with `a, b > 0`) are solved exactly
//! by reduction to minimization over a ring family. General systems get a
//! 2-approximation with a lower-bound certificate when the constraints have
//! the round-up property or the objective is monotone.
//!
//! ```
//! use sm2::{make_family, solve_approx, FunctionFamily, GroundSet, Sm2Instance, SolveOptions, TwoVarConstraint};
//!
//! let ground = GroundSet::binary(3).unwrap();
//! let f = make_family(&FunctionFamily::cardinality(3), &ground).unwrap();
//! let edges = [(0, 1), (1, 2), (0, 2)];
//! let cs = edges.iter().map(|&(a, b)| TwoVarConstraint::new(a, 1, b, 1, 1).unwrap()).collect();
//! let inst = Sm2Instance::new(ground, cs, f, true).unwrap();
//! let r = solve_approx(&inst, &SolveOptions::default()).unwrap();
//! assert!(inst.is_feasible(&r.x));
//! assert!(r.value <= 2.0 * r.lower_bound + 1e-9);
//! ```

pub mod closure;
pub mod error;
pub mod family;
pub mod format;
pub mod instance;
pub mod oracle;
pub mod problems;
pub mod reduce;
pub mod sfm;
pub mod solve;

pub use closure::{
    bisubmodular_vc_bipartite, sm_cut_to_closure, solve_linear_closure_mincut, solve_sm_closure,
    BipartiteCover, Capacity, ClosureInstance, ClosureSolution, Sense, StCutInstance,
};
pub use error::{Error, Result};
pub use family::{make_family, FunctionFamily};
pub use format::{emit_instance, parse_instance, InstanceFile, ProblemSpec};
pub use instance::{classify, parse_rational, ConstraintClass, Sm2Instance, TwoVarConstraint};
pub use oracle::{
    verify_monotone, verify_monotone_with_cap, verify_submodular, verify_submodular_with_cap,
    GroundSet, MultiSetVector, OracleFlags, SubmodularOracle,
};
pub use problems::{
    build_biclique_node_delete, build_clique_edge_delete, build_min2sat, build_minsat,
    build_vertex_cover, CnfSpec, GraphSpec, Literal,
};
pub use reduce::{
    binarize_general, binarize_monotone, binarize_system, decode_levels, monotonize,
    BinarizedSystem, LevelLayout,
};
pub use sfm::{
    sfm_bruteforce, sfm_minnorm, sfm_over_ring, RingFamily, SetFunctionOracle, SfmOptions,
    SfmOutcome,
};
pub use solve::{
    brute_force_solve, check_feasibility_2sat, round_ell, round_up, solve_approx, solve_auto,
    solve_exact_monotone, solve_relaxation, RelaxationOutcome, SolveMode, SolveOptions,
    SolveResult,
};
