//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any failed.
//!
//! Reference answers come from plain enumeration written out here, not from
//! the library's own brute-force solver.

use std::process::ExitCode;
use std::time::Instant;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sm2::reduce::{binarize_singleton, Fragment};
use sm2::{
    binarize_general, binarize_monotone, bisubmodular_vc_bipartite, build_biclique_node_delete,
    build_clique_edge_delete, build_min2sat, build_minsat, build_vertex_cover,
    check_feasibility_2sat, decode_levels, make_family, round_ell, sfm_bruteforce, sfm_minnorm,
    solve_approx, solve_exact_monotone, solve_linear_closure_mincut, solve_relaxation,
    solve_sm_closure, verify_submodular_with_cap, BinarizedSystem, ClosureInstance, CnfSpec,
    ConstraintClass, Error, FunctionFamily, GraphSpec, GroundSet, LevelLayout, Literal,
    OracleFlags, Sense, SetFunctionOracle, SfmOptions, Sm2Instance, SolveOptions, SubmodularOracle,
    TwoVarConstraint,
};

const TOL: f64 = 1e-9;

struct Outcome {
    checked: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.checked += 1;
        if self.failures.len() < 20 {
            self.failures.push(what);
        }
    }
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + tag)
}

// ---------------------------------------------------------------------------
// Random objectives

/// Concave table on `0..=len-1`: non-increasing integer increments. With
/// `monotone`, increments are nonnegative; with `nonneg`, the table is
/// shifted to be nonnegative at both ends (hence everywhere).
fn concave_table(rng: &mut ChaCha8Rng, len: usize, monotone: bool, nonneg: bool) -> Vec<f64> {
    let mut incs: Vec<i64> = (1..len)
        .map(|_| {
            if monotone {
                rng.random_range(0..=5)
            } else {
                rng.random_range(-4..=5)
            }
        })
        .collect();
    incs.sort_unstable_by(|a, b| b.cmp(a));
    let mut g = vec![rng.random_range(0..=3) as f64];
    for d in incs {
        let last = *g.last().unwrap();
        g.push(last + d as f64);
    }
    if nonneg {
        let low = g[0].min(*g.last().unwrap());
        if low < 0.0 {
            g.iter_mut().for_each(|v| *v -= low);
        }
    }
    g
}

/// Random integer-valued submodular family on a binary ground of size `n`.
fn binary_objective(
    rng: &mut ChaCha8Rng,
    n: usize,
    monotone: bool,
    nonneg: bool,
) -> FunctionFamily {
    let mut parts = Vec::new();
    let sign_ok = monotone || nonneg;
    let w: Vec<f64> = (0..n)
        .map(|_| if sign_ok { rng.random_range(0..=4) } else { rng.random_range(-4..=4) } as f64)
        .collect();
    parts.push(FunctionFamily::Modular { w });
    if rng.random_bool(0.6) {
        parts.push(FunctionFamily::ConcaveCardinality {
            g: concave_table(rng, n + 1, monotone, nonneg),
        });
    }
    if !monotone && n >= 2 && rng.random_bool(0.5) {
        let edges = (0..rng.random_range(1..=n))
            .filter_map(|_| {
                let a = rng.random_range(0..n);
                let b = rng.random_range(0..n);
                (a != b).then(|| (a, b, rng.random_range(1..=3) as f64))
            })
            .collect();
        parts.push(FunctionFamily::GraphCut { edges });
    }
    if rng.random_bool(0.4) {
        let items = rng.random_range(1..=5);
        let sets = (0..n)
            .map(|_| (0..items).filter(|_| rng.random_bool(0.4)).collect())
            .collect();
        let weights = (0..items).map(|_| rng.random_range(1..=3) as f64).collect();
        parts.push(FunctionFamily::Coverage { sets, weights });
    }
    FunctionFamily::Sum { parts }
}

/// Random integer-valued submodular family on a multi-set ground.
fn multiset_objective(rng: &mut ChaCha8Rng, bounds: &[u32], nonneg: bool) -> FunctionFamily {
    let n = bounds.len();
    let total: usize = bounds.iter().map(|&u| u as usize).sum();
    let w: Vec<f64> = (0..n)
        .map(|_| if nonneg { rng.random_range(0..=4) } else { rng.random_range(-4..=4) } as f64)
        .collect();
    let mut parts = vec![FunctionFamily::Modular { w }];
    if rng.random_bool(0.7) {
        parts.push(FunctionFamily::ConcaveCardinality {
            g: concave_table(rng, total + 1, false, nonneg),
        });
    }
    if n >= 2 && rng.random_bool(0.5) {
        let k = rng.random_range(1..=n);
        let mut support: Vec<usize> = (0..n).collect();
        support.shuffle(rng);
        support.truncate(k);
        let sub: usize = support.iter().map(|&i| bounds[i] as usize).sum();
        let inner = FunctionFamily::ConcaveCardinality {
            g: concave_table(rng, sub + 1, false, nonneg),
        };
        let inner = if rng.random_bool(0.5) {
            FunctionFamily::Complement {
                inner: Box::new(inner),
            }
        } else {
            inner
        };
        parts.push(FunctionFamily::Lift {
            support,
            inner: Box::new(inner),
        });
    }
    FunctionFamily::Sum { parts }
}

fn oracle(family: &FunctionFamily, ground: &GroundSet) -> SubmodularOracle {
    make_family(family, ground).expect("generated family is valid")
}

// ---------------------------------------------------------------------------
// Independent references

/// `(min value, argmin)` over feasible points, `None` if infeasible.
fn enumerate_optimum(inst: &Sm2Instance) -> Option<(f64, Vec<u32>)> {
    let mut best: Option<(f64, Vec<u32>)> = None;
    let bounds = inst.ground.bounds();
    let mut x = vec![0u32; bounds.len()];
    loop {
        let feasible = inst.constraints.iter().all(|c| {
            let mut lhs = c.a as i128 * x[c.i] as i128;
            if let Some(j) = c.j {
                lhs += c.b as i128 * x[j] as i128;
            }
            lhs >= c.c as i128
        });
        if feasible {
            let v = inst.objective.eval(&x);
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, x.clone()));
            }
        }
        let mut k = bounds.len();
        loop {
            if k == 0 {
                return best;
            }
            k -= 1;
            if x[k] < bounds[k] {
                x[k] += 1;
                break;
            }
            x[k] = 0;
        }
    }
}

fn set_min(f: &SetFunctionOracle) -> f64 {
    let m = f.len();
    (0u64..1 << m)
        .map(|mask| f.eval(&(0..m).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>()))
        .fold(f64::INFINITY, f64::min)
}

// ---------------------------------------------------------------------------
// Criterion 1 and 2: end-to-end ratio and certificate soundness

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    edges
}

fn random_clause(rng: &mut ChaCha8Rng, vars: usize, width: usize) -> Vec<Literal> {
    (0..width)
        .map(|_| {
            let v = rng.random_range(0..vars);
            if rng.random_bool(0.5) {
                Literal::neg(v)
            } else {
                Literal::pos(v)
            }
        })
        .collect()
}

fn family_instance(rng: &mut ChaCha8Rng, family: &str) -> Sm2Instance {
    match family {
        "vertex cover" => {
            let n = rng.random_range(2..=10);
            let p = rng.random_range(0.2..0.7);
            let edges = random_graph(rng, n, p);
            let f = oracle(
                &binary_objective(rng, n, false, true),
                &GroundSet::binary(n).unwrap(),
            );
            build_vertex_cover(&GraphSpec::new(n, edges).unwrap(), &f).unwrap()
        }
        "min-2sat" => {
            let n = rng.random_range(2..=8);
            let m = rng.random_range(1..=2 * n);
            let clauses = (0..m).map(|_| {
                let w = rng.random_range(1..=2);
                random_clause(rng, n, w)
            });
            let cnf = CnfSpec::new(n, clauses.collect()).unwrap();
            let f = oracle(
                &binary_objective(rng, n, true, true),
                &GroundSet::binary(n).unwrap(),
            );
            build_min2sat(&cnf, &f).unwrap()
        }
        "minsat" => {
            let m = rng.random_range(1..=6);
            let vars = rng.random_range(1..=4);
            let clauses = (0..m).map(|_| {
                let w = rng.random_range(1..=3);
                random_clause(rng, vars, w)
            });
            let cnf = CnfSpec::new(vars, clauses.collect()).unwrap();
            let f = oracle(
                &binary_objective(rng, m, false, true),
                &GroundSet::binary(m).unwrap(),
            );
            build_minsat(&cnf, &f).unwrap()
        }
        "clique edge deletion" => {
            let n = rng.random_range(2..=6);
            let p = rng.random_range(0.3..0.7);
            let edges = random_graph(rng, n, p);
            let m = edges.len().max(1);
            let edges = if edges.is_empty() {
                vec![(0, 1)]
            } else {
                edges
            };
            let f = oracle(
                &binary_objective(rng, m, false, true),
                &GroundSet::binary(m).unwrap(),
            );
            build_clique_edge_delete(&GraphSpec::new(n, edges).unwrap(), &f).unwrap()
        }
        "biclique node deletion" => {
            let edges: Vec<(usize, usize)> = (0..3)
                .flat_map(|a| (3..6).map(move |b| (a, b)))
                .filter(|_| rng.random_bool(0.6))
                .collect();
            let g = GraphSpec::bipartite(vec![0, 1, 2], vec![3, 4, 5], edges).unwrap();
            let f = oracle(
                &binary_objective(rng, 6, false, true),
                &GroundSet::binary(6).unwrap(),
            );
            build_biclique_node_delete(&g, &f).unwrap()
        }
        "multi-set covering" => {
            let n = rng.random_range(2..=5);
            let bounds: Vec<u32> = (0..n).map(|_| rng.random_range(1..=3)).collect();
            let ground = GroundSet::new(bounds.clone()).unwrap();
            let mut cs = Vec::new();
            for _ in 0..rng.random_range(1..=2 * n) {
                let i = rng.random_range(0..n);
                let j = (i + rng.random_range(1..n)) % n;
                let a = rng.random_range(1..=4);
                let c = if rng.random_bool(0.75) {
                    let b = rng.random_range(1..=4);
                    TwoVarConstraint::new(i, a, j, b, rng.random_range(1..=8)).unwrap()
                } else {
                    let b = -rng.random_range(1..=4);
                    TwoVarConstraint::new(i, a, j, b, rng.random_range(-4..=4)).unwrap()
                };
                cs.push(c);
            }
            let f = oracle(&multiset_objective(rng, &bounds, true), &ground);
            Sm2Instance::new(ground, cs, f, true).unwrap()
        }
        other => unreachable!("{other}"),
    }
}

const FAMILIES: [&str; 6] = [
    "vertex cover",
    "min-2sat",
    "minsat",
    "clique edge deletion",
    "biclique node deletion",
    "multi-set covering",
];

const PER_FAMILY: usize = 500;

fn criteria_1_and_2() -> (Outcome, Outcome, String) {
    let mut ratio = Outcome::new();
    let mut cert = Outcome::new();
    let opts = SolveOptions::default();
    let mut counts = Vec::new();
    for (k, family) in FAMILIES.iter().enumerate() {
        let mut rng = rng(100 + k as u64);
        let mut solved = 0;
        let mut infeasible = 0;
        while solved < PER_FAMILY {
            let inst = family_instance(&mut rng, family);
            let reference = enumerate_optimum(&inst);
            match (solve_approx(&inst, &opts), reference) {
                (Err(Error::Infeasible), None) => infeasible += 1,
                (Ok(r), Some((opt, _))) => {
                    solved += 1;
                    let feasible = inst.is_feasible(&r.x);
                    ratio.check(feasible && r.value <= 2.0 * opt + TOL, || {
                        format!(
                            "{family}: value {} vs opt {opt} (feasible {feasible}) on {inst:?}",
                            r.value
                        )
                    });
                    cert.check(r.lower_bound <= opt + TOL, || {
                        format!("{family}: lower bound {} > opt {opt}", r.lower_bound)
                    });
                }
                (got, reference) => {
                    ratio.fail(format!(
                        "{family}: solver {:?} vs reference {reference:?}",
                        got.map(|r| r.value)
                    ));
                    solved += 1;
                }
            }
        }
        counts.push(format!("{family} {solved} (+{infeasible} infeasible)"));
    }
    (ratio, cert, counts.join(", "))
}

// ---------------------------------------------------------------------------
// Criterion 3: exactness on monotone systems

fn random_monotone_instance(rng: &mut ChaCha8Rng) -> Sm2Instance {
    let n = rng.random_range(1..=6);
    let bounds: Vec<u32> = (0..n).map(|_| rng.random_range(1..=3)).collect();
    let ground = GroundSet::new(bounds.clone()).unwrap();
    let mut cs = Vec::new();
    for _ in 0..rng.random_range(0..=2 * n) {
        let i = rng.random_range(0..n);
        if n == 1 || rng.random_bool(0.2) {
            let a = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
            cs.push(TwoVarConstraint::single(i, a, rng.random_range(-6..=6)).unwrap());
        } else {
            let j = (i + rng.random_range(1..n)) % n;
            let a = rng.random_range(1..=4);
            let b = -rng.random_range(1..=4);
            let (a, b) = if rng.random_bool(0.5) {
                (a, b)
            } else {
                (-a, -b)
            };
            cs.push(TwoVarConstraint::new(i, a, j, b, rng.random_range(-6..=4)).unwrap());
        }
    }
    let f = oracle(&multiset_objective(rng, &bounds, false), &ground);
    Sm2Instance::new(ground, cs, f, false).unwrap()
}

fn criterion_3() -> (Outcome, String) {
    let mut out = Outcome::new();
    let mut rng = rng(3);
    let opts = SolveOptions::default();
    let (mut feasible, mut infeasible) = (0, 0);
    while feasible < 500 {
        let inst = random_monotone_instance(&mut rng);
        assert!(inst
            .constraints
            .iter()
            .all(|c| c.classify() != ConstraintClass::NonMonotone));
        match (solve_exact_monotone(&inst, &opts), enumerate_optimum(&inst)) {
            (Ok(r), Some((opt, _))) => {
                feasible += 1;
                out.check(r.value == opt && inst.is_feasible(&r.x), || {
                    format!("exact {} vs brute {opt} on {inst:?}", r.value)
                });
            }
            (Err(Error::Infeasible), None) => infeasible += 1,
            (got, reference) => {
                feasible += 1;
                out.fail(format!(
                    "solver {:?} vs reference {reference:?} on {inst:?}",
                    got.map(|r| r.value)
                ));
            }
        }
    }
    (
        out,
        format!("{feasible} feasible + {infeasible} infeasible instances"),
    )
}

// ---------------------------------------------------------------------------
// Criterion 4: binarization round trip

fn fragment_solutions(fragment: Fragment, ground: &GroundSet) -> Vec<(u32, u32)> {
    let layout = LevelLayout::new(ground);
    let mut system = BinarizedSystem::new(layout.clone());
    system.add(fragment);
    let bits = layout.len();
    let mut out = Vec::new();
    for mask in 0u32..1 << bits {
        let levels: Vec<bool> = (0..bits).map(|k| mask >> k & 1 == 1).collect();
        if system.satisfied_by(&levels) {
            let x = decode_levels(&layout, &levels).expect("chain arcs force prefixes");
            out.push((x[0], x[1]));
        }
    }
    out.sort_unstable();
    out
}

fn criterion_4() -> (Outcome, String) {
    let mut out = Outcome::new();
    let mut cases = 0;
    for ui in 1..=4u32 {
        for uj in 1..=4u32 {
            let ground = GroundSet::new(vec![ui, uj]).unwrap();
            for a in -4i64..=4 {
                for b in -4i64..=4 {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    for c in -8i64..=8 {
                        cases += 1;
                        let con = TwoVarConstraint::new(0, a, 1, b, c).unwrap();
                        let mut expected = Vec::new();
                        for xi in 0..=ui {
                            for xj in 0..=uj {
                                if a * xi as i64 + b * xj as i64 >= c {
                                    expected.push((xi, xj));
                                }
                            }
                        }
                        let mut check = |label: &str, fragment: sm2::Result<Fragment>| {
                            let got = match fragment {
                                Ok(f) => fragment_solutions(f, &ground),
                                Err(Error::BoxInfeasible { .. }) => Vec::new(),
                                Err(e) => {
                                    out.fail(format!("{label} {a}x+{b}y>={c} u=({ui},{uj}): {e}"));
                                    return;
                                }
                            };
                            out.check(got == expected, || {
                                format!("{label} {a}x+{b}y>={c} u=({ui},{uj}): got {got:?}, want {expected:?}")
                            });
                        };
                        match con.classify() {
                            ConstraintClass::Singleton => {
                                check("singleton", binarize_singleton(&con, &ground, 0))
                            }
                            ConstraintClass::Monotone => {
                                check("monotone", binarize_monotone(&con, &ground));
                                check("general", binarize_general(&con, &ground));
                            }
                            ConstraintClass::NonMonotone => {
                                check("general", binarize_general(&con, &ground))
                            }
                        }
                    }
                }
            }
        }
    }
    (out, format!("{cases} (a, b, c, u_i, u_j) cases"))
}

// ---------------------------------------------------------------------------
// Criterion 5: clamped witness feasibility

fn random_mixed_instance(
    rng: &mut ChaCha8Rng,
    max_u: u32,
    max_n: usize,
    nonneg: bool,
) -> Sm2Instance {
    let n = rng.random_range(1..=max_n);
    let bounds: Vec<u32> = (0..n).map(|_| rng.random_range(1..=max_u)).collect();
    let ground = GroundSet::new(bounds.clone()).unwrap();
    let mut cs = Vec::new();
    for _ in 0..rng.random_range(1..=2 * n) {
        let i = rng.random_range(0..n);
        if n == 1 || rng.random_bool(0.15) {
            let a = *[-2i64, -1, 1, 2].choose(rng).unwrap();
            cs.push(TwoVarConstraint::single(i, a, rng.random_range(-4..=4)).unwrap());
        } else {
            let j = (i + rng.random_range(1..n)) % n;
            let a = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
            let b = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
            cs.push(TwoVarConstraint::new(i, a, j, b, rng.random_range(-6..=6)).unwrap());
        }
    }
    let f = oracle(&multiset_objective(rng, &bounds, nonneg), &ground);
    Sm2Instance::new(ground, cs, f, false).unwrap()
}

fn criterion_5() -> (Outcome, String) {
    let mut out = Outcome::new();
    let mut rng = rng(5);
    let opts = SolveOptions::default();
    let mut patterns = [0usize; 3];
    let mut done = 0;
    while done < 1000 {
        let inst = random_mixed_instance(&mut rng, 3, 6, false);
        if enumerate_optimum(&inst).is_none() {
            continue;
        }
        done += 1;
        for c in &inst.constraints {
            let k = match (c.a.signum() * c.b.signum(), c.a > 0) {
                (-1, _) => 1,
                (_, true) => 0,
                _ => 2,
            };
            patterns[k] += 1;
        }
        let relax = match solve_relaxation(&inst, &opts) {
            Ok(r) => r,
            Err(e) => {
                out.fail(format!("relaxation failed on feasible instance: {e}"));
                continue;
            }
        };
        let z = match check_feasibility_2sat(&inst) {
            Ok(Some(z)) => z,
            other => {
                out.fail(format!("no witness for a feasible instance: {other:?}"));
                continue;
            }
        };
        match round_ell(&relax, &z, &inst) {
            Ok(l) => {
                let (lo, hi) = (relax.lower(), relax.upper());
                let bounded = (0..inst.n()).all(|i| lo[i] <= l[i] && l[i] <= hi[i]);
                out.check(inst.is_feasible(&l) && bounded, || {
                    format!("ell {l:?} on {inst:?}")
                });
            }
            Err(e) => out.fail(format!("round_ell: {e} on {inst:?}")),
        }
    }
    (
        out,
        format!(
            "{done} feasible instances; constraint sign patterns (+,+) {} mixed {} (-,-) {}",
            patterns[0], patterns[1], patterns[2]
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 6: min-norm-point against enumeration

fn criterion_6() -> (Outcome, String) {
    let mut out = Outcome::new();
    let mut rng = rng(6);
    let opts = SfmOptions::default();
    for _ in 0..300 {
        let m = rng.random_range(1..=12);
        let family = binary_objective(&mut rng, m, false, false);
        let f = SetFunctionOracle::from_oracle(&oracle(&family, &GroundSet::binary(m).unwrap()))
            .unwrap();
        match (sfm_minnorm(&f, &opts), sfm_bruteforce(&f)) {
            (Ok(a), Ok(b)) => {
                let snapped = a.value.round();
                out.check(snapped == b.value && set_min(&f) == b.value, || {
                    format!("minnorm {} vs brute {} on {family:?}", a.value, b.value)
                });
            }
            (a, b) => out.fail(format!("{a:?} / {b:?}")),
        }
    }
    (out, "300 oracles".into())
}

// ---------------------------------------------------------------------------
// Criterion 7: closure cross-validation

fn criterion_7() -> (Outcome, String) {
    let mut out = Outcome::new();
    let mut rng = rng(7);
    let opts = SfmOptions::default();
    for _ in 0..200 {
        let m = rng.random_range(1..=14);
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(&mut rng);
        let p = rng.random_range(0.05..0.4);
        let mut arcs = Vec::new();
        for x in 0..m {
            for y in x + 1..m {
                if rng.random_bool(p) {
                    arcs.push((order[x], order[y]));
                }
            }
        }
        let weights: Vec<f64> = (0..m).map(|_| rng.random_range(-9..=9) as f64).collect();
        let closed = |mask: u32| {
            arcs.iter()
                .all(|&(i, j)| mask >> i & 1 == 0 || mask >> j & 1 == 1)
        };
        let weight = |mask: u32| {
            (0..m)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| weights[i])
                .sum::<f64>()
        };
        let (mut best_min, mut best_max) = (f64::INFINITY, f64::NEG_INFINITY);
        for mask in 0u32..1 << m {
            if closed(mask) {
                best_min = best_min.min(weight(mask));
                best_max = best_max.max(weight(mask));
            }
        }
        let min = solve_linear_closure_mincut(&weights, &arcs, Sense::Min).unwrap();
        let max = solve_linear_closure_mincut(&weights, &arcs, Sense::Max).unwrap();
        let inst = ClosureInstance::new(arcs.clone(), SetFunctionOracle::modular(weights.clone()))
            .unwrap();
        let sm = solve_sm_closure(&inst, &opts);
        let is_closed = |s: &[bool]| arcs.iter().all(|&(i, j)| !s[i] || s[j]);
        match sm {
            Ok(sm) => out.check(
                min.value == best_min
                    && max.value == best_max
                    && sm.value == best_min
                    && is_closed(&min.set)
                    && is_closed(&max.set)
                    && is_closed(&sm.set),
                || {
                    format!(
                        "min {} max {} sm {} vs {best_min}/{best_max}",
                        min.value, max.value, sm.value
                    )
                },
            ),
            Err(e) => out.fail(format!("sm closure: {e}")),
        }
    }
    (out, "200 DAGs".into())
}

// ---------------------------------------------------------------------------
// Criterion 8: bi-submodular bipartite vertex cover

fn criterion_8() -> (Outcome, String) {
    let mut out = Outcome::new();
    let mut rng = rng(8);
    let opts = SfmOptions::default();
    for _ in 0..200 {
        let n1 = rng.random_range(1..=6);
        let n2 = rng.random_range(1..=12 - n1);
        let v1: Vec<usize> = (0..n1).collect();
        let v2: Vec<usize> = (n1..n1 + n2).collect();
        let p = rng.random_range(0.1..0.6);
        let edges: Vec<(usize, usize)> = v1
            .iter()
            .flat_map(|&a| v2.iter().map(move |&b| (a, b)))
            .filter(|_| rng.random_bool(p))
            .collect();
        let fam1 = binary_objective(&mut rng, n1, false, false);
        let fam2 = binary_objective(&mut rng, n2, false, false);
        let f1 = SetFunctionOracle::from_oracle(&oracle(&fam1, &GroundSet::binary(n1).unwrap()))
            .unwrap();
        let f2 = SetFunctionOracle::from_oracle(&oracle(&fam2, &GroundSet::binary(n2).unwrap()))
            .unwrap();
        let mut best = f64::INFINITY;
        for mask in 0u32..1 << (n1 + n2) {
            let inside = |v: usize| mask >> v & 1 == 1;
            if edges.iter().all(|&(a, b)| inside(a) || inside(b)) {
                let s1: Vec<bool> = v1.iter().map(|&v| inside(v)).collect();
                let s2: Vec<bool> = v2.iter().map(|&v| inside(v)).collect();
                best = best.min(f1.eval(&s1) + f2.eval(&s2));
            }
        }
        match bisubmodular_vc_bipartite((&v1, &v2), &edges, &f1, &f2, &opts) {
            Ok(r) => {
                let covers = edges
                    .iter()
                    .all(|&(a, b)| r.cover.contains(&a) || r.cover.contains(&b));
                out.check(r.value == best && covers, || {
                    format!("{} vs {best}", r.value)
                });
            }
            Err(e) => out.fail(e.to_string()),
        }
    }
    (out, "200 bipartite graphs".into())
}

// ---------------------------------------------------------------------------
// Criterion 9: 2-SAT feasibility

fn criterion_9() -> (Outcome, String) {
    let mut out = Outcome::new();
    let mut rng = rng(9);
    let (mut yes, mut no) = (0, 0);
    for k in 0..1000 {
        let max_u = if k % 2 == 0 { 1 } else { 3 };
        let inst = random_mixed_instance(&mut rng, max_u, 6, false);
        let reference = enumerate_optimum(&inst).is_some();
        match check_feasibility_2sat(&inst) {
            Ok(Some(z)) => {
                yes += 1;
                out.check(reference && inst.is_feasible(&z), || {
                    format!("witness {z:?} on {inst:?}")
                });
            }
            Ok(None) => {
                no += 1;
                out.check(!reference, || format!("reported infeasible: {inst:?}"));
            }
            Err(e) => out.fail(e.to_string()),
        }
    }
    (
        out,
        format!("1000 systems ({yes} feasible, {no} infeasible)"),
    )
}

// ---------------------------------------------------------------------------
// Criterion 10: submodularity verifiers

fn criterion_10() -> (Outcome, String) {
    let mut out = Outcome::new();
    let mut rng = rng(10);
    let cap = 1 << 12;
    for _ in 0..50 {
        let n = rng.random_range(1..=12);
        let g = GroundSet::binary(n).unwrap();
        let fam = binary_objective(&mut rng, n, false, false);
        out.check(
            verify_submodular_with_cap(&oracle(&fam, &g), cap) == Ok(true),
            || format!("{fam:?}"),
        );
        let bounds: Vec<u32> = (0..rng.random_range(1..=4))
            .map(|_| rng.random_range(1..=3))
            .collect();
        let g = GroundSet::new(bounds.clone()).unwrap();
        let fam = multiset_objective(&mut rng, &bounds, false);
        out.check(
            verify_submodular_with_cap(&oracle(&fam, &g), cap) == Ok(true),
            || format!("{fam:?}"),
        );
    }
    for n in 2..=12usize {
        let g = GroundSet::binary(n).unwrap();
        let flags = OracleFlags {
            claims_submodular: true,
            claims_monotone: false,
            integer_valued: true,
        };
        let square = SubmodularOracle::from_fn(g.clone(), flags, |x| {
            let s: u32 = x.iter().sum();
            (s * s) as f64
        });
        out.check(
            verify_submodular_with_cap(&square, cap) == Ok(false),
            || format!("|S|^2 on {n} accepted"),
        );
        let edges: Vec<(usize, usize, f64)> = (0..n - 1).map(|i| (i, i + 1, 1.0)).collect();
        let cut = make_family(&FunctionFamily::GraphCut { edges }, &g).unwrap();
        let negated = SubmodularOracle::from_fn(g.clone(), flags, move |x| -cut.eval(x));
        out.check(
            verify_submodular_with_cap(&negated, cap) == Ok(false),
            || format!("-cut on {n} accepted"),
        );
    }
    let g = GroundSet::new(vec![3, 3, 3]).unwrap();
    let flags = OracleFlags::default();
    let square = SubmodularOracle::from_fn(g, flags, |x| {
        let s: u32 = x.iter().sum();
        (s * s) as f64
    });
    out.check(
        verify_submodular_with_cap(&square, cap) == Ok(false),
        || "|x|^2 on a multi-set box accepted".into(),
    );
    (
        out,
        "100 built-in families, 23 planted counterexamples".into(),
    )
}

// ---------------------------------------------------------------------------

fn report(id: &str, title: &str, started: Instant, outcome: &Outcome, detail: &str) -> bool {
    let ok = outcome.failures.is_empty() && outcome.checked > 0;
    println!(
        "criterion {id:>2} {}: {title} [{} checks, {detail}, {:.1}s]",
        if ok { "PASS" } else { "FAIL" },
        outcome.checked,
        started.elapsed().as_secs_f64()
    );
    for f in &outcome.failures {
        println!("    {f}");
    }
    ok
}

fn main() -> ExitCode {
    let mut all = true;

    let t = Instant::now();
    let (ratio, cert, detail) = criteria_1_and_2();
    all &= report("1", "approximate value <= 2 x optimum", t, &ratio, &detail);
    all &= report(
        "2",
        "lower bound g/2 <= optimum",
        t,
        &cert,
        "same instances",
    );

    let t = Instant::now();
    let (o, d) = criterion_3();
    all &= report(
        "3",
        "exact solver on monotone systems equals enumeration",
        t,
        &o,
        &d,
    );

    let t = Instant::now();
    let (o, d) = criterion_4();
    all &= report(
        "4",
        "binarized feasible sets equal original feasible sets",
        t,
        &o,
        &d,
    );

    let t = Instant::now();
    let (o, d) = criterion_5();
    all &= report("5", "clamped witness is feasible", t, &o, &d);

    let t = Instant::now();
    let (o, d) = criterion_6();
    all &= report("6", "min-norm-point equals enumeration", t, &o, &d);

    let t = Instant::now();
    let (o, d) = criterion_7();
    all &= report(
        "7",
        "linear closure min-cut, enumeration and ring SFM agree",
        t,
        &o,
        &d,
    );

    let t = Instant::now();
    let (o, d) = criterion_8();
    all &= report(
        "8",
        "bipartite bi-submodular vertex cover equals enumeration",
        t,
        &o,
        &d,
    );

    let t = Instant::now();
    let (o, d) = criterion_9();
    all &= report("9", "2-SAT feasibility equals enumeration", t, &o, &d);

    let t = Instant::now();
    let (o, d) = criterion_10();
    all &= report(
        "10",
        "submodularity verifier accepts families, rejects counterexamples",
        t,
        &o,
        &d,
    );

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
