//! Closure problems: submodular closure, the linear max-closure min-cut
//! construction, submodular cuts on closure s,t-graphs and the bi-submodular
//! bipartite vertex cover.
//!
//! Arc `(i, j)` means `x_i <= x_j`: a set is closed when it contains the
//! successors of its members.

mod maxflow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sfm::{sfm_over_ring, RingFamily, SetFunctionOracle, SfmOptions, SfmOutcome};

pub use maxflow::FlowNetwork;

/// `min f(S)` over the closed sets of a digraph on `m` nodes.
#[derive(Debug, Clone)]
pub struct ClosureInstance {
    pub m: usize,
    pub arcs: Vec<(usize, usize)>,
    pub objective: SetFunctionOracle,
}

impl ClosureInstance {
    pub fn new(arcs: Vec<(usize, usize)>, objective: SetFunctionOracle) -> Result<Self> {
        let m = objective.len();
        let ring = RingFamily::new(arcs);
        ring.validate(m)?;
        Ok(ClosureInstance {
            m,
            arcs: ring.arcs().to_vec(),
            objective,
        })
    }

    pub fn is_closed(&self, set: &[bool]) -> bool {
        self.arcs.iter().all(|&(i, j)| !set[i] || set[j])
    }
}

/// Minimize the (submodular) objective over closed sets.
pub fn solve_sm_closure(inst: &ClosureInstance, opts: &SfmOptions) -> Result<SfmOutcome> {
    let ring = RingFamily::new(inst.arcs.clone());
    let out = sfm_over_ring(&inst.objective, &ring, opts)?;
    debug_assert!(inst.is_closed(&out.set));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    Max,
    Min,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosureSolution {
    pub set: Vec<bool>,
    pub value: f64,
}

fn weight_of(weights: &[f64], set: &[bool]) -> f64 {
    weights
        .iter()
        .zip(set)
        .filter(|(_, &b)| b)
        .map(|(w, _)| w)
        .sum()
}

/// Source side of the minimum cut of the closure s,t-graph: source arcs of
/// capacity `w_j` into positive nodes, sink arcs of capacity `-w_j` out of
/// the others, and uncuttable arcs for the precedences.
fn max_closure_source_set(weights: &[f64], arcs: &[(usize, usize)]) -> Vec<bool> {
    let m = weights.len();
    let (s, t) = (m, m + 1);
    let positive: f64 = weights.iter().filter(|&&w| w > 0.0).sum();
    let infinite = 1.0 + positive;
    let scale = 1.0 + weights.iter().map(|w| w.abs()).sum::<f64>();
    let mut net = FlowNetwork::new(m + 2);
    net.set_eps(1e-12 * scale);
    for (j, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            net.add_edge(s, j, w);
        } else if w < 0.0 {
            net.add_edge(j, t, -w);
        }
    }
    for &(i, j) in arcs {
        if i != j {
            net.add_edge(i, j, infinite);
        }
    }
    net.max_flow(s, t);
    let mut side = net.source_side(s);
    side.truncate(m);
    side
}

/// Linear closure by minimum cut.
///
/// `Max` returns the closed set of maximum weight (the source set of a
/// minimum cut). `Min` returns the closed set of minimum weight as the sink
/// set of the minimum cut built on the reversed arcs, which is closed with
/// respect to the original successors.
pub fn solve_linear_closure_mincut(
    weights: &[f64],
    arcs: &[(usize, usize)],
    sense: Sense,
) -> Result<ClosureSolution> {
    let m = weights.len();
    let ring = RingFamily::new(arcs.to_vec());
    ring.validate(m)?;
    if weights.iter().any(|w| !w.is_finite()) {
        return Err(Error::InvalidFamily(
            "closure weights must be finite".into(),
        ));
    }
    let set = match sense {
        Sense::Max if weights.iter().all(|&w| w > 0.0) => vec![true; m],
        Sense::Max if weights.iter().all(|&w| w <= 0.0) => vec![false; m],
        Sense::Max => max_closure_source_set(weights, ring.arcs()),
        Sense::Min => {
            let reversed: Vec<(usize, usize)> = ring.arcs().iter().map(|&(i, j)| (j, i)).collect();
            max_closure_source_set(weights, &reversed)
                .into_iter()
                .map(|b| !b)
                .collect()
        }
    };
    let value = weight_of(weights, &set);
    Ok(ClosureSolution { set, value })
}

/// Capacity of an internal arc of an s,t-graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Capacity {
    Infinite,
    Finite(f64),
}

/// An s,t-graph with a submodular cost on its cut arcs.
///
/// The cost oracle is indexed over `source_arcs` followed by `sink_arcs`:
/// element `k < |A_s|` is arc `(s, source_arcs[k])`, element `|A_s| + k` is
/// arc `(sink_arcs[k], t)`.
#[derive(Debug, Clone)]
pub struct StCutInstance {
    pub nodes: usize,
    pub source_arcs: Vec<usize>,
    pub sink_arcs: Vec<usize>,
    pub internal: Vec<(usize, usize, Capacity)>,
    pub cost: SetFunctionOracle,
}

/// Rewrite a submodular cut problem on a closure s,t-graph as a closure
/// instance over the source set `S`: the cut consists of the source arcs
/// into `V \ S` and the sink arcs leaving `S`.
pub fn sm_cut_to_closure(graph: &StCutInstance) -> Result<ClosureInstance> {
    let n = graph.nodes;
    let arity = graph.source_arcs.len() + graph.sink_arcs.len();
    if graph.cost.len() != arity {
        return Err(Error::dims("cut cost oracle", arity, graph.cost.len()));
    }
    for &v in graph.source_arcs.iter().chain(&graph.sink_arcs) {
        if v >= n {
            return Err(Error::IndexOutOfRange {
                what: "terminal arc endpoint",
                index: v,
                len: n,
            });
        }
    }
    let mut arcs = Vec::with_capacity(graph.internal.len());
    for &(i, j, cap) in &graph.internal {
        if let Capacity::Finite(c) = cap {
            return Err(Error::NotClosureGraph(format!(
                "internal arc ({i}, {j}) has finite capacity {c}"
            )));
        }
        arcs.push((i, j));
    }
    let sources = graph.source_arcs.clone();
    let sinks = graph.sink_arcs.clone();
    let cost = graph.cost.clone();
    let objective = SetFunctionOracle::new(n, cost.integer_valued(), move |s| {
        let cut: Vec<bool> = sources
            .iter()
            .map(|&j| !s[j])
            .chain(sinks.iter().map(|&i| s[i]))
            .collect();
        cost.eval(&cut)
    });
    ClosureInstance::new(arcs, objective)
}

/// Result of the bipartite bi-submodular vertex cover.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteCover {
    /// Node ids in the cover, ascending.
    pub cover: Vec<usize>,
    pub value: f64,
}

/// Exact minimum of `f1(D ∩ V1) + f2(D ∩ V2)` over vertex covers `D` of a
/// bipartite graph.
///
/// Edges are directed `V1 → V2`; `D ↦ (V1 \ D) ∪ (V2 ∩ D)` is a bijection
/// between vertex covers and closed sets, and the objective becomes
/// `f1(V1 \ S) + f2(V2 ∩ S)`, which is submodular. `f1` and `f2` are indexed
/// by position within `parts.0` and `parts.1`.
pub fn bisubmodular_vc_bipartite(
    parts: (&[usize], &[usize]),
    edges: &[(usize, usize)],
    f1: &SetFunctionOracle,
    f2: &SetFunctionOracle,
    opts: &SfmOptions,
) -> Result<BipartiteCover> {
    let (v1, v2) = parts;
    let (n1, n2) = (v1.len(), v2.len());
    if f1.len() != n1 {
        return Err(Error::dims("f1", n1, f1.len()));
    }
    if f2.len() != n2 {
        return Err(Error::dims("f2", n2, f2.len()));
    }
    let max_id = v1.iter().chain(v2).copied().max().map_or(0, |m| m + 1);
    let mut side: Vec<Option<(bool, usize)>> = vec![None; max_id];
    for (k, &v) in v1.iter().enumerate() {
        side[v] = Some((true, k));
    }
    for (k, &v) in v2.iter().enumerate() {
        if side[v].is_some() {
            return Err(Error::InvalidProblem(format!("node {v} is in both parts")));
        }
        side[v] = Some((false, n1 + k));
    }
    let lookup = |v: usize| side.get(v).copied().flatten();
    let mut arcs = Vec::with_capacity(edges.len());
    for &(a, b) in edges {
        let arc = match (lookup(a), lookup(b)) {
            (Some((true, pa)), Some((false, pb))) => (pa, pb),
            (Some((false, pa)), Some((true, pb))) => (pb, pa),
            _ => return Err(Error::NotBipartite(a, b)),
        };
        arcs.push(arc);
    }
    let (g1, g2) = (f1.clone(), f2.clone());
    let objective = SetFunctionOracle::new(
        n1 + n2,
        f1.integer_valued() && f2.integer_valued(),
        move |s| {
            let left: Vec<bool> = s[..n1].iter().map(|&b| !b).collect();
            g1.eval(&left) + g2.eval(&s[n1..])
        },
    );
    let inst = ClosureInstance::new(arcs, objective)?;
    let out = solve_sm_closure(&inst, opts)?;
    let mut cover: Vec<usize> = v1
        .iter()
        .enumerate()
        .filter(|&(k, _)| !out.set[k])
        .map(|(_, &v)| v)
        .chain(
            v2.iter()
                .enumerate()
                .filter(|&(k, _)| out.set[n1 + k])
                .map(|(_, &v)| v),
        )
        .collect();
    cover.sort_unstable();
    let in_left: Vec<bool> = (0..n1).map(|k| !out.set[k]).collect();
    let value = f1.eval(&in_left) + f2.eval(&out.set[n1..]);
    Ok(BipartiteCover { cover, value })
}
