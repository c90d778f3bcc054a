//! Built-in submodular function families.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{reflect_complement, GroundSet, OracleFlags, SubmodularOracle};

/// Concrete submodular functions understood by [`make_family`] and by the
/// instance file format (`"kind"` selects the variant).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionFamily {
    /// `Σ w_i x_i`.
    Modular {
        w: Vec<f64>,
    },
    /// `g(Σ x_i)` for a concave table `g`.
    ConcaveCardinality {
        g: Vec<f64>,
    },
    /// Undirected weighted cut `Σ_{(i,j) : x_i ≠ x_j} w_ij`. Binary only.
    GraphCut {
        edges: Vec<(usize, usize, f64)>,
    },
    /// Weighted coverage: `sets[i]` lists the items element `i` covers.
    /// Binary only.
    Coverage {
        sets: Vec<Vec<usize>>,
        weights: Vec<f64>,
    },
    Sum {
        parts: Vec<FunctionFamily>,
    },
    /// `inner(u - x)`.
    Complement {
        inner: Box<FunctionFamily>,
    },
    /// `inner` applied to the sub-vector `x[support]`; the other elements
    /// have zero marginal contribution.
    Lift {
        support: Vec<usize>,
        inner: Box<FunctionFamily>,
    },
}

impl FunctionFamily {
    pub fn name(&self) -> &'static str {
        match self {
            FunctionFamily::Modular { .. } => "modular",
            FunctionFamily::ConcaveCardinality { .. } => "concave_cardinality",
            FunctionFamily::GraphCut { .. } => "graph_cut",
            FunctionFamily::Coverage { .. } => "coverage",
            FunctionFamily::Sum { .. } => "sum",
            FunctionFamily::Complement { .. } => "complement",
            FunctionFamily::Lift { .. } => "lift",
        }
    }

    /// Unit-weight modular function on `n` elements.
    pub fn cardinality(n: usize) -> Self {
        FunctionFamily::Modular { w: vec![1.0; n] }
    }
}

fn is_integral(v: f64) -> bool {
    v.is_finite() && v.fract() == 0.0
}

fn require_binary(family: &'static str, ground: &GroundSet) -> Result<()> {
    match ground.bounds().iter().position(|&u| u != 1) {
        Some(i) => Err(Error::BinaryOnly {
            family,
            element: i,
            bound: ground.bound(i),
        }),
        None => Ok(()),
    }
}

fn require_finite(what: &str, values: &[f64]) -> Result<()> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidFamily(format!(
            "{what} contains a non-finite value"
        )));
    }
    Ok(())
}

/// Build an oracle for `spec` on `ground`, with flags derived from the
/// parameters.
pub fn make_family(spec: &FunctionFamily, ground: &GroundSet) -> Result<SubmodularOracle> {
    let n = ground.len();
    let oracle = match spec {
        FunctionFamily::Modular { w } => {
            if w.len() != n {
                return Err(Error::dims("modular weights", n, w.len()));
            }
            require_finite("modular weights", w)?;
            let flags = OracleFlags {
                claims_submodular: true,
                claims_monotone: w.iter().all(|&v| v >= 0.0),
                integer_valued: w.iter().copied().all(is_integral),
            };
            let w = w.clone();
            SubmodularOracle::from_fn(ground.clone(), flags, move |x| {
                x.iter().zip(&w).map(|(&xi, &wi)| xi as f64 * wi).sum()
            })
        }
        FunctionFamily::ConcaveCardinality { g } => {
            let total: usize = ground.bounds().iter().map(|&u| u as usize).sum();
            if g.len() < total + 1 {
                return Err(Error::dims("concave table", total + 1, g.len()));
            }
            let g = g[..=total].to_vec();
            require_finite("concave table", &g)?;
            let scale = g.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            for k in 1..total {
                let d0 = g[k] - g[k - 1];
                let d1 = g[k + 1] - g[k];
                if d1 > d0 + 1e-12 * scale {
                    return Err(Error::NotConcave(k));
                }
            }
            let flags = OracleFlags {
                claims_submodular: true,
                claims_monotone: g.windows(2).all(|p| p[1] >= p[0]),
                integer_valued: g.iter().copied().all(is_integral),
            };
            SubmodularOracle::from_fn(ground.clone(), flags, move |x| {
                g[x.iter().map(|&v| v as usize).sum::<usize>()]
            })
        }
        FunctionFamily::GraphCut { edges } => {
            require_binary("graph_cut", ground)?;
            for &(i, j, w) in edges {
                for v in [i, j] {
                    if v >= n {
                        return Err(Error::IndexOutOfRange {
                            what: "graph_cut edge",
                            index: v,
                            len: n,
                        });
                    }
                }
                if i == j {
                    return Err(Error::InvalidFamily(format!("graph_cut self-loop on {i}")));
                }
                if !(w >= 0.0 && w.is_finite()) {
                    return Err(Error::InvalidFamily(format!(
                        "graph_cut edge ({i}, {j}) has weight {w}; weights must be finite and non-negative"
                    )));
                }
            }
            let flags = OracleFlags {
                claims_submodular: true,
                claims_monotone: edges.iter().all(|e| e.2 == 0.0),
                integer_valued: edges.iter().all(|e| is_integral(e.2)),
            };
            let edges = edges.clone();
            SubmodularOracle::from_fn(ground.clone(), flags, move |x| {
                edges
                    .iter()
                    .filter(|&&(i, j, _)| x[i] != x[j])
                    .map(|e| e.2)
                    .sum()
            })
        }
        FunctionFamily::Coverage { sets, weights } => {
            require_binary("coverage", ground)?;
            if sets.len() != n {
                return Err(Error::dims("coverage sets", n, sets.len()));
            }
            require_finite("coverage weights", weights)?;
            if let Some(k) = weights.iter().position(|&w| w < 0.0) {
                return Err(Error::InvalidFamily(format!(
                    "coverage item {k} has negative weight"
                )));
            }
            for items in sets {
                if let Some(&k) = items.iter().find(|&&k| k >= weights.len()) {
                    return Err(Error::IndexOutOfRange {
                        what: "coverage items",
                        index: k,
                        len: weights.len(),
                    });
                }
            }
            let flags = OracleFlags {
                claims_submodular: true,
                claims_monotone: true,
                integer_valued: weights.iter().copied().all(is_integral),
            };
            let sets = sets.clone();
            let weights = weights.clone();
            SubmodularOracle::from_fn(ground.clone(), flags, move |x| {
                let mut covered = vec![false; weights.len()];
                for (i, items) in sets.iter().enumerate() {
                    if x[i] > 0 {
                        for &k in items {
                            covered[k] = true;
                        }
                    }
                }
                covered
                    .iter()
                    .zip(&weights)
                    .filter(|(&c, _)| c)
                    .map(|(_, &w)| w)
                    .sum()
            })
        }
        FunctionFamily::Sum { parts } => {
            let built = parts
                .iter()
                .map(|p| make_family(p, ground))
                .collect::<Result<Vec<_>>>()?;
            let flags = OracleFlags {
                claims_submodular: built.iter().all(|o| o.flags().claims_submodular),
                claims_monotone: built.iter().all(|o| o.flags().claims_monotone),
                integer_valued: built.iter().all(|o| o.flags().integer_valued),
            };
            SubmodularOracle::from_fn(ground.clone(), flags, move |x| {
                built.iter().map(|o| o.eval(x)).sum()
            })
        }
        FunctionFamily::Complement { inner } => {
            let inner = make_family(inner, ground)?;
            // reflect_complement wraps the family itself
            return Ok(reflect_complement(&inner));
        }
        FunctionFamily::Lift { support, inner } => {
            let mut seen = vec![false; n];
            for &i in support {
                if i >= n {
                    return Err(Error::IndexOutOfRange {
                        what: "lift support",
                        index: i,
                        len: n,
                    });
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidFamily(format!(
                        "lift support repeats element {i}"
                    )));
                }
            }
            let sub = ground.restrict(support)?;
            let inner = make_family(inner, &sub)?;
            let support = support.clone();
            SubmodularOracle::from_fn(ground.clone(), inner.flags(), move |x| {
                let y: Vec<u32> = support.iter().map(|&i| x[i]).collect();
                inner.eval(&y)
            })
        }
    };
    Ok(oracle.with_family(spec.clone()))
}
