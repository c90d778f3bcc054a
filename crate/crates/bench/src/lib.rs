//! Seeded instance generators shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sm2::{
    build_vertex_cover, make_family, FunctionFamily, GraphSpec, GroundSet, SetFunctionOracle,
    Sm2Instance, TwoVarConstraint,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Graph cut plus a concave cardinality term on `m` elements.
pub fn cut_plus_concave(m: usize, seed: u64) -> SetFunctionOracle {
    let mut rng = rng(seed);
    let edges = (0..2 * m)
        .filter_map(|_| {
            let a = rng.random_range(0..m);
            let b = rng.random_range(0..m);
            (a != b).then(|| (a, b, rng.random_range(1..=5) as f64))
        })
        .collect();
    let g = (0..=m).map(|k| ((k * (2 * m - k)) as f64).sqrt()).collect();
    let w = (0..m).map(|_| rng.random_range(-9..=3) as f64).collect();
    let family = FunctionFamily::Sum {
        parts: vec![
            FunctionFamily::GraphCut { edges },
            FunctionFamily::ConcaveCardinality { g },
            FunctionFamily::Modular { w },
        ],
    };
    let oracle = make_family(&family, &GroundSet::binary(m).expect("m > 0")).expect("valid family");
    SetFunctionOracle::from_oracle(&oracle).expect("binary ground")
}

/// Random DAG on `m` nodes (arcs follow the index order) with integer
/// weights in `-9..=9`.
pub fn weighted_dag(m: usize, p: f64, seed: u64) -> (Vec<f64>, Vec<(usize, usize)>) {
    let mut rng = rng(seed);
    let mut arcs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if rng.random_bool(p) {
                arcs.push((i, j));
            }
        }
    }
    let weights = (0..m).map(|_| rng.random_range(-9..=9) as f64).collect();
    (weights, arcs)
}

/// Vertex cover on a random graph with a square-root cardinality objective.
pub fn vertex_cover(n: usize, p: f64, seed: u64) -> Sm2Instance {
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    let g = (0..=n).map(|k| (k as f64).sqrt()).collect();
    let f = make_family(
        &FunctionFamily::ConcaveCardinality { g },
        &GroundSet::binary(n).expect("n > 0"),
    )
    .expect("valid family");
    build_vertex_cover(&GraphSpec::new(n, edges).expect("valid graph"), &f).expect("valid instance")
}

/// Chain of monotone constraints `x_{i+1} >= x_i - 1` on bounds `u`.
pub fn monotone_chain(n: usize, u: u32) -> Sm2Instance {
    let ground = GroundSet::new(vec![u; n]).expect("n > 0");
    let w = (0..n)
        .map(|i| if i % 2 == 0 { -1.0 } else { 2.0 })
        .collect();
    let f = make_family(&FunctionFamily::Modular { w }, &ground).expect("valid family");
    let cs = (0..n - 1)
        .map(|i| TwoVarConstraint::new(i + 1, 1, i, -1, -1).expect("distinct variables"))
        .collect();
    Sm2Instance::new(ground, cs, f, false).expect("valid instance")
}
