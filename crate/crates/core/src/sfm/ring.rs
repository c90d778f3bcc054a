//! Minimization over the ring family of closed sets of a digraph.

use log::debug;

use super::{greedy_base_vertex, sfm_minnorm, SetFunctionOracle, SfmOptions, SfmOutcome};
use crate::error::{Error, Result};

const MAX_DOUBLINGS: usize = 10;

/// The sets `S` with `i ∈ S ⟹ j ∈ S` for every arc `(i, j)`.
///
/// Such sets are closed under union and intersection.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RingFamily {
    arcs: Vec<(usize, usize)>,
}

impl RingFamily {
    /// Self-loops and duplicate arcs are dropped.
    pub fn new(mut arcs: Vec<(usize, usize)>) -> Self {
        arcs.retain(|&(i, j)| i != j);
        arcs.sort_unstable();
        arcs.dedup();
        RingFamily { arcs }
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn first_violation(&self, set: &[bool]) -> Option<(usize, usize)> {
        self.arcs.iter().copied().find(|&(i, j)| set[i] && !set[j])
    }

    pub fn contains(&self, set: &[bool]) -> bool {
        self.first_violation(set).is_none()
    }

    pub fn violations(&self, set: &[bool]) -> usize {
        self.arcs
            .iter()
            .filter(|&&(i, j)| set[i] && !set[j])
            .count()
    }

    pub(crate) fn validate(&self, m: usize) -> Result<()> {
        for &(i, j) in &self.arcs {
            for v in [i, j] {
                if v >= m {
                    return Err(Error::IndexOutOfRange {
                        what: "ring arc",
                        index: v,
                        len: m,
                    });
                }
            }
        }
        Ok(())
    }
}

/// `f(S) + penalty · |{(i, j) : i ∈ S, j ∉ S}|`. The penalty term is a
/// directed cut function, so the sum stays submodular.
pub fn penalized(f: &SetFunctionOracle, ring: &RingFamily, penalty: f64) -> SetFunctionOracle {
    let inner = f.clone();
    let ring = ring.clone();
    let integer = f.integer_valued() && penalty.fract() == 0.0;
    SetFunctionOracle::new(f.len(), integer, move |s| {
        inner.eval(s) + penalty * ring.violations(s) as f64
    })
}

/// Minimize `f` over the closed sets of `ring` by penalized minimization.
///
/// The penalty starts at `1 + Σ|y_k| + |f(∅)|` for the identity-order greedy
/// vertex `y`, and doubles (at most 10 times) while the minimizer of the
/// penalized function violates an arc. A closed minimizer of the penalized
/// function is a minimizer over the ring, since the two functions agree on
/// closed sets and the penalized one is never smaller.
pub fn sfm_over_ring(
    f: &SetFunctionOracle,
    ring: &RingFamily,
    opts: &SfmOptions,
) -> Result<SfmOutcome> {
    ring.validate(f.len())?;
    if ring.is_empty() {
        return sfm_minnorm(f, opts);
    }
    let identity: Vec<usize> = (0..f.len()).collect();
    let y = greedy_base_vertex(f, &identity);
    let f_empty = f.eval(&vec![false; f.len()]);
    let mut penalty = (1.0 + y.iter().map(|v| v.abs()).sum::<f64>() + f_empty.abs()).ceil();
    let mut iterations = 0;
    let mut last = (0, 0);
    for attempt in 0..=MAX_DOUBLINGS {
        let g = penalized(f, ring, penalty);
        let out = sfm_minnorm(&g, opts)?;
        iterations += out.iterations;
        match ring.first_violation(&out.set) {
            None => {
                let value = f.eval(&out.set);
                return Ok(SfmOutcome {
                    value,
                    lower_bound: out.lower_bound.min(value),
                    iterations,
                    ..out
                });
            }
            Some(arc) => {
                debug!("penalty {penalty} too small (attempt {attempt}), arc {arc:?} violated");
                last = arc;
                penalty *= 2.0;
            }
        }
    }
    Err(Error::PenaltyExhausted(last.0, last.1, MAX_DOUBLINGS))
}
