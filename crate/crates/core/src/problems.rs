//! Builders for the standard problem families.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::FunctionFamily;
use crate::instance::{Sm2Instance, TwoVarConstraint};
use crate::oracle::{GroundSet, SubmodularOracle};

/// An undirected graph, optionally with a bipartition of its nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
}

impl GraphSpec {
    pub fn new(nodes: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = GraphSpec {
            nodes,
            edges,
            bipartition: None,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn bipartite(
        left: Vec<usize>,
        right: Vec<usize>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let nodes = left
            .iter()
            .chain(&right)
            .copied()
            .max()
            .map_or(0, |m| m + 1);
        let g = GraphSpec {
            nodes,
            edges,
            bipartition: Some((left, right)),
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        for &(a, b) in &self.edges {
            for v in [a, b] {
                if v >= self.nodes {
                    return Err(Error::IndexOutOfRange {
                        what: "edge endpoint",
                        index: v,
                        len: self.nodes,
                    });
                }
            }
            if a == b {
                return Err(Error::InvalidProblem(format!("self-loop at node {a}")));
            }
        }
        if let Some((left, right)) = &self.bipartition {
            let mut seen = vec![false; self.nodes];
            for &v in left.iter().chain(right) {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidProblem(format!(
                        "node {v} listed twice in the bipartition"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges
            .iter()
            .any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            negated: false,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    /// Signed 1-based encoding: `3` is `x_2`, `-1` is `¬x_0`.
    pub fn from_signed(v: i64) -> Result<Self> {
        if v == 0 {
            return Err(Error::InvalidProblem("literal 0 is not allowed".into()));
        }
        Ok(Literal {
            var: (v.unsigned_abs() - 1) as usize,
            negated: v < 0,
        })
    }

    pub fn to_signed(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }
}

/// A CNF formula over `vars` Boolean variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfSpec {
    pub vars: usize,
    pub clauses: Vec<Vec<Literal>>,
}

impl CnfSpec {
    pub fn new(vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (k, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::InvalidProblem(format!("clause {k} is empty")));
            }
            if let Some(l) = clause.iter().find(|l| l.var >= vars) {
                return Err(Error::IndexOutOfRange {
                    what: "literal variable",
                    index: l.var,
                    len: vars,
                });
            }
        }
        Ok(CnfSpec { vars, clauses })
    }

    pub fn from_signed(vars: usize, clauses: &[Vec<i64>]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&v| Literal::from_signed(v))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        CnfSpec::new(vars, clauses)
    }

    pub fn satisfied_by(&self, x: &[bool]) -> usize {
        self.clauses
            .iter()
            .filter(|c| c.iter().any(|l| x[l.var] != l.negated))
            .count()
    }
}

fn check_ground(f: &SubmodularOracle, expected: usize, what: &str) -> Result<()> {
    let g = f.ground();
    if g.len() != expected {
        return Err(Error::dims(what, expected, g.len()));
    }
    if !g.is_binary() {
        return Err(Error::InvalidProblem(format!(
            "{what} must be defined on a binary ground set"
        )));
    }
    Ok(())
}

/// Extend `f` to `total` binary elements, reading it on `support` and
/// ignoring the rest.
pub fn lift_oracle(
    f: &SubmodularOracle,
    total: usize,
    support: Vec<usize>,
) -> Result<SubmodularOracle> {
    if support.len() != f.ground().len() {
        return Err(Error::dims("lift support", f.ground().len(), support.len()));
    }
    if let Some(&bad) = support.iter().find(|&&s| s >= total) {
        return Err(Error::IndexOutOfRange {
            what: "lift support",
            index: bad,
            len: total,
        });
    }
    let ground = GroundSet::new(
        (0..total)
            .map(|k| {
                support
                    .iter()
                    .position(|&s| s == k)
                    .map_or(1, |p| f.ground().bound(p))
            })
            .collect(),
    )?;
    let inner = f.clone();
    let family = f.family().map(|fam| FunctionFamily::Lift {
        support: support.clone(),
        inner: Box::new(fam.clone()),
    });
    let lifted = SubmodularOracle::from_fn(ground, f.flags(), move |x| {
        let sub: Vec<u32> = support.iter().map(|&s| x[s]).collect();
        inner.eval(&sub)
    });
    Ok(match family {
        Some(fam) => lifted.with_family(fam),
        None => lifted,
    })
}

/// `x_i + x_j >= 1` for every edge.
pub fn build_vertex_cover(g: &GraphSpec, f: &SubmodularOracle) -> Result<Sm2Instance> {
    check_ground(f, g.nodes, "vertex cover objective")?;
    let constraints = g
        .edges
        .iter()
        .map(|&(a, b)| TwoVarConstraint::new(a, 1, b, 1, 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(
        Sm2Instance::new(f.ground().clone(), constraints, f.clone(), true)?
            .with_name("vertex_cover"),
    )
}

/// Translate one clause of width at most two. `None` for tautologies.
fn two_sat_constraint(clause: &[Literal]) -> Result<Option<TwoVarConstraint>> {
    let unit = |l: Literal| {
        if l.negated {
            TwoVarConstraint::single(l.var, -1, 0)
        } else {
            TwoVarConstraint::single(l.var, 1, 1)
        }
    };
    match *clause {
        [l] => unit(l).map(Some),
        [p, q] if p.var == q.var => {
            if p.negated == q.negated {
                unit(p).map(Some)
            } else {
                Ok(None)
            }
        }
        [p, q] => {
            let (a, b, c) = match (p.negated, q.negated) {
                (false, false) => (1, 1, 1),
                (false, true) => (1, -1, 0),
                (true, false) => (-1, 1, 0),
                (true, true) => (-1, -1, -1),
            };
            TwoVarConstraint::new(p.var, a, q.var, b, c).map(Some)
        }
        _ => Err(Error::InvalidProblem(format!(
            "clause of width {} in a 2-SAT formula",
            clause.len()
        ))),
    }
}

/// One constraint per clause. The objective must claim monotonicity, since
/// this system lacks the round-up property.
pub fn build_min2sat(cnf: &CnfSpec, f: &SubmodularOracle) -> Result<Sm2Instance> {
    check_ground(f, cnf.vars, "MIN-2SAT objective")?;
    if !f.flags().claims_monotone {
        return Err(Error::InvalidProblem(
            "MIN-2SAT needs a monotone objective (the system has no round-up property); use a monotone family"
                .into(),
        ));
    }
    let mut constraints = Vec::new();
    for clause in &cnf.clauses {
        constraints.extend(two_sat_constraint(clause)?);
    }
    Ok(Sm2Instance::new(f.ground().clone(), constraints, f.clone(), false)?.with_name("min2sat"))
}

/// Clause variables `y_0..y_{m-1}` followed by the formula variables; `f`
/// is over the clause variables. `y_j >= x_i` for each positive literal and
/// `y_j >= 1 - x_i` for each negative one.
pub fn build_minsat(cnf: &CnfSpec, f: &SubmodularOracle) -> Result<Sm2Instance> {
    let m = cnf.clauses.len();
    check_ground(f, m, "MINSAT objective")?;
    let total = m + cnf.vars;
    let objective = lift_oracle(f, total, (0..m).collect())?;
    let mut constraints = Vec::new();
    for (j, clause) in cnf.clauses.iter().enumerate() {
        for l in clause {
            let x = m + l.var;
            constraints.push(if l.negated {
                TwoVarConstraint::new(j, 1, x, 1, 1)?
            } else {
                TwoVarConstraint::new(j, 1, x, -1, 0)?
            });
        }
    }
    Ok(
        Sm2Instance::new(objective.ground().clone(), constraints, objective, true)?
            .with_name("minsat"),
    )
}

/// Node variables first, then one variable per edge (in `g.edges` order);
/// `f` is over the edge variables.
///
/// Node variable `v_i = 1` means node `i` is left out of the clique, so the
/// system is of covering type: `z_ij >= v_i`, `z_ij >= v_j` per edge and
/// `v_i + v_j >= 1` per non-adjacent pair.
pub fn build_clique_edge_delete(g: &GraphSpec, f: &SubmodularOracle) -> Result<Sm2Instance> {
    let n = g.nodes;
    check_ground(f, g.edges.len(), "clique edge-deletion objective")?;
    let objective = lift_oracle(f, n + g.edges.len(), (n..n + g.edges.len()).collect())?;
    let mut constraints = Vec::new();
    for (k, &(a, b)) in g.edges.iter().enumerate() {
        constraints.push(TwoVarConstraint::new(n + k, 1, a, -1, 0)?);
        constraints.push(TwoVarConstraint::new(n + k, 1, b, -1, 0)?);
    }
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                constraints.push(TwoVarConstraint::new(a, 1, b, 1, 1)?);
            }
        }
    }
    Ok(
        Sm2Instance::new(objective.ground().clone(), constraints, objective, true)?
            .with_name("clique_edge_delete"),
    )
}

/// `x_i + x_j >= 1` for every missing cross pair; `f` is over all nodes.
pub fn build_biclique_node_delete(g: &GraphSpec, f: &SubmodularOracle) -> Result<Sm2Instance> {
    let Some((left, right)) = &g.bipartition else {
        return Err(Error::InvalidProblem(
            "biclique node deletion needs a bipartition".into(),
        ));
    };
    check_ground(f, g.nodes, "biclique node-deletion objective")?;
    let mut constraints = Vec::new();
    for &a in left {
        for &b in right {
            if !g.has_edge(a, b) {
                constraints.push(TwoVarConstraint::new(a, 1, b, 1, 1)?);
            }
        }
    }
    Ok(
        Sm2Instance::new(f.ground().clone(), constraints, f.clone(), true)?
            .with_name("biclique_node_delete"),
    )
}
