//! Submodular set-function minimization.
//!
//! Two engines: exhaustive search ([`sfm_bruteforce`]) for small ground sets
//! and the Fujishige–Wolfe minimum-norm-point algorithm ([`sfm_minnorm`]).
//! [`sfm_over_ring`] restricts minimization to the closed sets of a digraph.

mod minnorm;
mod ring;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::oracle::SubmodularOracle;

pub use minnorm::sfm_minnorm;
pub use ring::{sfm_over_ring, RingFamily};

/// Default element cap for [`sfm_bruteforce`].
pub const DEFAULT_BRUTE_CAP: usize = 22;

type SetEval = dyn Fn(&[bool]) -> f64 + Send + Sync;

/// A set function on `{0, .., m-1}`; subsets are passed as characteristic
/// vectors.
#[derive(Clone)]
pub struct SetFunctionOracle {
    m: usize,
    eval: Arc<SetEval>,
    integer_valued: bool,
}

impl fmt::Debug for SetFunctionOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetFunctionOracle")
            .field("m", &self.m)
            .field("integer_valued", &self.integer_valued)
            .finish_non_exhaustive()
    }
}

impl SetFunctionOracle {
    pub fn new<F>(m: usize, integer_valued: bool, f: F) -> Self
    where
        F: Fn(&[bool]) -> f64 + Send + Sync + 'static,
    {
        SetFunctionOracle {
            m,
            eval: Arc::new(f),
            integer_valued,
        }
    }

    /// View a binary [`SubmodularOracle`] as a set function.
    pub fn from_oracle(oracle: &SubmodularOracle) -> Result<Self> {
        if let Some(i) = oracle.ground().bounds().iter().position(|&u| u != 1) {
            return Err(Error::BinaryOnly {
                family: "set function",
                element: i,
                bound: oracle.ground().bound(i),
            });
        }
        let inner = oracle.clone();
        Ok(SetFunctionOracle::new(
            oracle.ground().len(),
            oracle.flags().integer_valued,
            move |s| {
                let x: Vec<u32> = s.iter().map(|&b| b as u32).collect();
                inner.eval(&x)
            },
        ))
    }

    /// Modular function `S ↦ Σ_{i∈S} w_i`.
    pub fn modular(w: Vec<f64>) -> Self {
        let integer = w.iter().all(|v| v.fract() == 0.0);
        SetFunctionOracle::new(w.len(), integer, move |s| {
            s.iter().zip(&w).filter(|(&b, _)| b).map(|(_, &v)| v).sum()
        })
    }

    /// The constant zero function.
    pub fn zero(m: usize) -> Self {
        SetFunctionOracle::new(m, true, |_| 0.0)
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn integer_valued(&self) -> bool {
        self.integer_valued
    }

    pub fn eval(&self, set: &[bool]) -> f64 {
        debug_assert_eq!(set.len(), self.m);
        (self.eval)(set)
    }

    pub fn eval_indices(&self, members: &[usize]) -> f64 {
        let mut s = vec![false; self.m];
        for &i in members {
            s[i] = true;
        }
        self.eval(&s)
    }
}

/// Tuning knobs for the min-norm-point engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SfmOptions {
    /// Relative tolerance on Wolfe's optimality test `|x|² - <x, q>`.
    pub tol: f64,
    /// Overrides the default major+minor iteration cap `10 m² + 1000`.
    pub max_iterations: Option<usize>,
}

impl Default for SfmOptions {
    fn default() -> Self {
        SfmOptions {
            tol: 1e-9,
            max_iterations: None,
        }
    }
}

/// Result of a minimization.
#[derive(Debug, Clone, PartialEq)]
pub struct SfmOutcome {
    pub set: Vec<bool>,
    /// `f(set)`, always re-evaluated.
    pub value: f64,
    /// A proven lower bound on `min f` (brute force: equal to `value`).
    pub lower_bound: f64,
    pub iterations: usize,
    /// True when the minimizer is certified: brute force, or an
    /// integer-valued oracle with duality gap below 1.
    pub exact: bool,
}

impl SfmOutcome {
    pub fn members(&self) -> Vec<usize> {
        self.set
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Exhaustive minimization. Ties go to the lexicographically smallest
/// characteristic vector `(x_0, .., x_{m-1})`.
pub fn sfm_bruteforce(f: &SetFunctionOracle) -> Result<SfmOutcome> {
    sfm_bruteforce_with_cap(f, DEFAULT_BRUTE_CAP)
}

pub fn sfm_bruteforce_with_cap(f: &SetFunctionOracle, cap: usize) -> Result<SfmOutcome> {
    let m = f.len();
    if m > cap || m >= 63 {
        return Err(Error::GroundTooLarge { m, cap });
    }
    let mut set = vec![false; m];
    let mut best_set = set.clone();
    let mut best = f.eval(&set);
    // element 0 is the most significant bit, so counting up is lexicographic
    for code in 1u64..(1u64 << m) {
        for (k, s) in set.iter_mut().enumerate() {
            *s = (code >> (m - 1 - k)) & 1 == 1;
        }
        let v = f.eval(&set);
        if v < best {
            best = v;
            best_set.copy_from_slice(&set);
        }
    }
    Ok(SfmOutcome {
        set: best_set,
        value: best,
        lower_bound: best,
        iterations: 1usize << m,
        exact: true,
    })
}

/// Edmonds' greedy vertex of the base polytope of `f - f(∅)` for the
/// permutation `order`: `y[order[k]] = f(order[..=k]) - f(order[..k])`.
pub fn greedy_base_vertex(f: &SetFunctionOracle, order: &[usize]) -> Vec<f64> {
    greedy_with_prefixes(f, order).0
}

/// Greedy vertex plus the values of every prefix set `f(order[..k])`,
/// `k = 0..=m`.
pub(crate) fn greedy_with_prefixes(f: &SetFunctionOracle, order: &[usize]) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(
        order.len(),
        f.len(),
        "order must be a permutation of the ground set"
    );
    let mut set = vec![false; f.len()];
    let mut y = vec![0.0; f.len()];
    let mut prefix = Vec::with_capacity(f.len() + 1);
    let mut prev = f.eval(&set);
    prefix.push(prev);
    for &e in order {
        set[e] = true;
        let cur = f.eval(&set);
        y[e] = cur - prev;
        prefix.push(cur);
        prev = cur;
    }
    (y, prefix)
}
