//! JSON instance files.
//!
//! ```json
//! {"n": 2, "bounds": [1, 1],
//!  "objective": {"kind": "modular", "w": [1, 1]},
//!  "constraints": [{"i": 0, "a": 1, "j": 1, "b": 1, "c": 1}],
//!  "roundup": true, "name": "edge"}
//! ```
//!
//! Instead of `constraints`, a `problem` object can name one of the
//! builders in [`crate::problems`]. Coefficients are integers, decimal or
//! `"p/q"` strings; rational coefficients are scaled to integers.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{make_family, FunctionFamily};
use crate::instance::{parse_rational, Sm2Instance, TwoVarConstraint};
use crate::oracle::GroundSet;
use crate::problems::{
    build_biclique_node_delete, build_clique_edge_delete, build_min2sat, build_minsat,
    build_vertex_cover, CnfSpec, GraphSpec,
};

/// A coefficient as written in the file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Number {
    pub fn to_ratio(&self) -> Result<Ratio<i64>> {
        match self {
            Number::Int(v) => Ok(Ratio::from_integer(*v)),
            Number::Float(v) if v.is_finite() => parse_rational(&v.to_string()),
            Number::Float(v) => Err(Error::Parse {
                context: "coefficient".into(),
                message: format!("{v} is not finite"),
            }),
            Number::Text(s) => parse_rational(s),
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Int(v) => write!(f, "{v}"),
            Number::Float(v) => write!(f, "{v}"),
            Number::Text(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSpec {
    pub i: usize,
    pub a: Number,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Number>,
    pub c: Number,
}

impl ConstraintSpec {
    fn to_constraint(&self, k: usize) -> Result<TwoVarConstraint> {
        let ctx = |e: Error| match e {
            Error::Parse { message, .. } => Error::Parse {
                context: format!("constraints[{k}]"),
                message,
            },
            Error::InvalidConstraint(m) => Error::Parse {
                context: format!("constraints[{k}]"),
                message: m,
            },
            other => other,
        };
        let a = self.a.to_ratio().map_err(ctx)?;
        let c = self.c.to_ratio().map_err(ctx)?;
        let j = match (self.j, &self.b) {
            (Some(j), Some(b)) => Some((j, b.to_ratio().map_err(ctx)?)),
            (Some(j), None) => {
                return Err(Error::Parse {
                    context: format!("constraints[{k}]"),
                    message: format!("j = {j} given without b"),
                })
            }
            (None, Some(_)) => {
                return Err(Error::Parse {
                    context: format!("constraints[{k}]"),
                    message: "b given without j".into(),
                })
            }
            (None, None) => None,
        };
        TwoVarConstraint::from_ratios(self.i, a, j, c).map_err(ctx)
    }
}

/// Builder shorthand. Clauses use signed 1-based literals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProblemSpec {
    /// Objective over the nodes.
    VertexCover { edges: Vec<(usize, usize)> },
    /// Objective over the variables; must be monotone.
    Min2sat { clauses: Vec<Vec<i64>> },
    /// Objective over the clauses.
    Minsat { clauses: Vec<Vec<i64>> },
    /// Objective over the edges.
    CliqueEdgeDelete { edges: Vec<(usize, usize)> },
    /// Objective over the nodes.
    BicliqueNodeDelete {
        left: Vec<usize>,
        right: Vec<usize>,
        edges: Vec<(usize, usize)>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    /// Number of variables, or of nodes / formula variables with `problem`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Vec<u32>>,
    pub objective: FunctionFamily,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraints: Option<Vec<ConstraintSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub problem: Option<ProblemSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roundup: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

fn schema(context: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        context: context.into(),
        message: message.into(),
    }
}

fn max_node(edges: &[(usize, usize)]) -> usize {
    edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0)
}

fn max_var(clauses: &[Vec<i64>]) -> usize {
    clauses
        .iter()
        .flatten()
        .map(|v| v.unsigned_abs() as usize)
        .max()
        .unwrap_or(0)
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            context: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files always serialize")
    }

    /// Validate and build the instance.
    pub fn build(&self) -> Result<Sm2Instance> {
        let inst = match (&self.constraints, &self.problem) {
            (Some(_), Some(_)) => {
                return Err(schema(
                    "instance",
                    "give either `constraints` or `problem`, not both",
                ))
            }
            (None, None) => {
                return Err(schema(
                    "instance",
                    "one of `constraints` or `problem` is required",
                ))
            }
            (Some(cs), None) => self.build_constraints(cs)?,
            (None, Some(p)) => self.build_problem(p)?,
        };
        Ok(match &self.name {
            Some(name) => inst.with_name(name.clone()),
            None => inst,
        })
    }

    fn build_constraints(&self, specs: &[ConstraintSpec]) -> Result<Sm2Instance> {
        let bounds = match (self.n, &self.bounds) {
            (Some(n), Some(b)) if b.len() != n => {
                return Err(schema(
                    "bounds",
                    format!("has {} entries but n = {n}", b.len()),
                ))
            }
            (_, Some(b)) => b.clone(),
            (Some(n), None) => vec![1; n],
            (None, None) => return Err(schema("n", "required when `bounds` is absent")),
        };
        let ground = GroundSet::new(bounds)?;
        let objective = make_family(&self.objective, &ground)?;
        let constraints = specs
            .iter()
            .enumerate()
            .map(|(k, s)| s.to_constraint(k))
            .collect::<Result<Vec<_>>>()?;
        Sm2Instance::new(
            ground,
            constraints,
            objective,
            self.roundup.unwrap_or(false),
        )
    }

    fn build_problem(&self, problem: &ProblemSpec) -> Result<Sm2Instance> {
        if self.bounds.is_some() {
            return Err(schema(
                "bounds",
                "not allowed with `problem` (problem instances are binary)",
            ));
        }
        if self.roundup.is_some() {
            return Err(schema(
                "roundup",
                "not allowed with `problem` (the builder sets it)",
            ));
        }
        let size = |inferred: usize| -> Result<usize> {
            match self.n {
                Some(n) if n < inferred => Err(schema(
                    "n",
                    format!("{n} is smaller than the largest index used"),
                )),
                Some(n) => Ok(n),
                None => Ok(inferred),
            }
        };
        let objective_on = |m: usize| make_family(&self.objective, &GroundSet::binary(m)?);
        match problem {
            ProblemSpec::VertexCover { edges } => {
                let g = GraphSpec::new(size(max_node(edges))?, edges.clone())?;
                build_vertex_cover(&g, &objective_on(g.nodes)?)
            }
            ProblemSpec::Min2sat { clauses } => {
                let cnf = CnfSpec::from_signed(size(max_var(clauses))?, clauses)?;
                build_min2sat(&cnf, &objective_on(cnf.vars)?)
            }
            ProblemSpec::Minsat { clauses } => {
                let cnf = CnfSpec::from_signed(size(max_var(clauses))?, clauses)?;
                build_minsat(&cnf, &objective_on(cnf.clauses.len())?)
            }
            ProblemSpec::CliqueEdgeDelete { edges } => {
                let g = GraphSpec::new(size(max_node(edges))?, edges.clone())?;
                build_clique_edge_delete(&g, &objective_on(edges.len())?)
            }
            ProblemSpec::BicliqueNodeDelete { left, right, edges } => {
                let mut g = GraphSpec::bipartite(left.clone(), right.clone(), edges.clone())?;
                g.nodes = size(g.nodes)?;
                build_biclique_node_delete(&g, &objective_on(g.nodes)?)
            }
        }
    }
}

/// Parse and validate an instance document.
pub fn parse_instance(text: &str) -> Result<Sm2Instance> {
    InstanceFile::from_json(text)?.build()
}

/// Write an instance in the explicit constraint form. The objective must
/// come from a built-in family.
pub fn emit_instance(inst: &Sm2Instance) -> Result<InstanceFile> {
    let objective = inst.objective.family().cloned().ok_or_else(|| {
        Error::InvalidFamily("objective is not a built-in family and cannot be written out".into())
    })?;
    let constraints = inst
        .constraints
        .iter()
        .map(|c| ConstraintSpec {
            i: c.i,
            a: Number::Int(c.a),
            j: c.j,
            b: c.j.map(|_| Number::Int(c.b)),
            c: Number::Int(c.c),
        })
        .collect();
    Ok(InstanceFile {
        n: Some(inst.n()),
        bounds: Some(inst.ground.bounds().to_vec()),
        objective,
        constraints: Some(constraints),
        problem: None,
        roundup: Some(inst.roundup_declared),
        name: inst.name.clone(),
    })
}
