//! Submodular oracles over integer boxes `0 <= x <= u`.
//!
//! A [`SubmodularOracle`] evaluates a function on multi-set characteristic
//! vectors. Submodularity is the lattice version: for any two vectors in the
//! box, `f(x) + f(y) >= f(x ∧ y) + f(x ∨ y)` with componentwise min and max.
//! The exhaustive verifiers in this module check the declared flags on small
//! boxes.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::FunctionFamily;

/// Default cap on the number of box points enumerated by verifiers and the
/// brute-force solver.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;

/// Slack used when comparing oracle values.
pub const VALUE_TOL: f64 = 1e-9;

/// The element universe together with per-element multiplicity bounds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    bounds: Vec<u32>,
}

impl GroundSet {
    pub fn new(bounds: Vec<u32>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::InvalidGround(
                "ground set must have at least one element".into(),
            ));
        }
        if let Some(i) = bounds.iter().position(|&u| u == 0) {
            return Err(Error::InvalidGround(format!("element {i} has bound 0")));
        }
        Ok(GroundSet { bounds })
    }

    /// `n` elements each with bound 1.
    pub fn binary(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn bound(&self, i: usize) -> u32 {
        self.bounds[i]
    }

    /// `U = max_i u_i`.
    pub fn max_bound(&self) -> u32 {
        self.bounds.iter().copied().max().unwrap_or(0)
    }

    pub fn is_binary(&self) -> bool {
        self.bounds.iter().all(|&u| u == 1)
    }

    /// `Π (u_i + 1)`, saturating.
    pub fn box_size(&self) -> u128 {
        self.bounds
            .iter()
            .fold(1u128, |acc, &u| acc.saturating_mul(u as u128 + 1))
    }

    pub fn check_enumerable(&self, cap: u64) -> Result<usize> {
        let size = self.box_size();
        if size > cap as u128 {
            return Err(Error::BoxTooLarge { size, cap });
        }
        Ok(size as usize)
    }

    pub fn contains(&self, x: &[u32]) -> bool {
        x.len() == self.len() && x.iter().zip(&self.bounds).all(|(&v, &u)| v <= u)
    }

    pub fn zero(&self) -> MultiSetVector {
        MultiSetVector(vec![0; self.len()])
    }

    pub fn full(&self) -> MultiSetVector {
        MultiSetVector(self.bounds.clone())
    }

    /// Iterate over every point of the box in lexicographic order.
    pub fn points(&self) -> BoxPoints<'_> {
        BoxPoints {
            bounds: &self.bounds,
            next: Some(vec![0; self.len()]),
        }
    }

    /// Mixed-radix index of a point, consistent with [`GroundSet::points`].
    pub fn index_of(&self, x: &[u32]) -> usize {
        x.iter()
            .zip(&self.bounds)
            .fold(0usize, |acc, (&v, &u)| acc * (u as usize + 1) + v as usize)
    }

    /// Restrict to a subset of elements (in the given order).
    pub fn restrict(&self, support: &[usize]) -> Result<GroundSet> {
        let mut bounds = Vec::with_capacity(support.len());
        for &i in support {
            if i >= self.len() {
                return Err(Error::IndexOutOfRange {
                    what: "ground set",
                    index: i,
                    len: self.len(),
                });
            }
            bounds.push(self.bounds[i]);
        }
        GroundSet::new(bounds)
    }
}

/// Lexicographic iterator over a box.
pub struct BoxPoints<'a> {
    bounds: &'a [u32],
    next: Option<Vec<u32>>,
}

impl Iterator for BoxPoints<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut k = succ.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if succ[k] < self.bounds[k] {
                succ[k] += 1;
                self.next = Some(succ);
                break;
            }
            succ[k] = 0;
        }
        Some(current)
    }
}

/// Characteristic vector of a multi-set: `x_i` copies of element `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiSetVector(Vec<u32>);

impl MultiSetVector {
    pub fn new(x: Vec<u32>) -> Self {
        MultiSetVector(x)
    }

    /// Validates `0 <= x <= u` against `ground`.
    pub fn checked(x: Vec<u32>, ground: &GroundSet) -> Result<Self> {
        if x.len() != ground.len() {
            return Err(Error::dims("multi-set vector", ground.len(), x.len()));
        }
        if let Some(i) = (0..x.len()).find(|&i| x[i] > ground.bound(i)) {
            return Err(Error::InvalidGround(format!(
                "x[{i}] = {} exceeds bound {}",
                x[i],
                ground.bound(i)
            )));
        }
        Ok(MultiSetVector(x))
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    pub fn meet(&self, other: &[u32]) -> MultiSetVector {
        MultiSetVector(self.0.iter().zip(other).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn join(&self, other: &[u32]) -> MultiSetVector {
        MultiSetVector(self.0.iter().zip(other).map(|(&a, &b)| a.max(b)).collect())
    }
}

impl Deref for MultiSetVector {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for MultiSetVector {
    fn from(x: Vec<u32>) -> Self {
        MultiSetVector(x)
    }
}

/// Structural properties an oracle declares about itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OracleFlags {
    pub claims_submodular: bool,
    pub claims_monotone: bool,
    pub integer_valued: bool,
}

type EvalFn = dyn Fn(&[u32]) -> f64 + Send + Sync;

/// A deterministic function on the integer box of a [`GroundSet`].
///
/// Cloning is cheap; the evaluation closure is shared.
#[derive(Clone)]
pub struct SubmodularOracle {
    ground: GroundSet,
    flags: OracleFlags,
    eval: Arc<EvalFn>,
    family: Option<FunctionFamily>,
}

impl fmt::Debug for SubmodularOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubmodularOracle")
            .field("ground", &self.ground)
            .field("flags", &self.flags)
            .field("family", &self.family)
            .finish_non_exhaustive()
    }
}

impl SubmodularOracle {
    /// Wrap an arbitrary function. The flags are taken on trust; use
    /// [`verify_submodular`] / [`verify_monotone`] to check them.
    pub fn from_fn<F>(ground: GroundSet, flags: OracleFlags, f: F) -> Self
    where
        F: Fn(&[u32]) -> f64 + Send + Sync + 'static,
    {
        SubmodularOracle {
            ground,
            flags,
            eval: Arc::new(f),
            family: None,
        }
    }

    pub(crate) fn with_family(mut self, family: FunctionFamily) -> Self {
        self.family = Some(family);
        self
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn flags(&self) -> OracleFlags {
        self.flags
    }

    /// The family this oracle was built from, when it came from
    /// [`crate::make_family`].
    pub fn family(&self) -> Option<&FunctionFamily> {
        self.family.as_ref()
    }

    /// Evaluate at `x`.
    ///
    /// Panics when `x` is outside the box; queries are restricted to the
    /// integer box.
    pub fn eval(&self, x: &[u32]) -> f64 {
        assert!(
            self.ground.contains(x),
            "oracle queried outside its box: {x:?} vs bounds {:?}",
            self.ground.bounds()
        );
        (self.eval)(x)
    }

    pub fn try_eval(&self, x: &[u32]) -> Result<f64> {
        if x.len() != self.ground.len() {
            return Err(Error::dims("query", self.ground.len(), x.len()));
        }
        if !self.ground.contains(x) {
            return Err(Error::InvalidGround(format!(
                "query {x:?} is outside the box"
            )));
        }
        Ok((self.eval)(x))
    }

    /// `x ↦ f(u - x)`.
    pub fn reflect(&self) -> SubmodularOracle {
        reflect_complement(self)
    }
}

/// Evaluate every point of the box into a table indexed by
/// [`GroundSet::index_of`].
fn tabulate(oracle: &SubmodularOracle, cap: u64) -> Result<Vec<f64>> {
    oracle.ground.check_enumerable(cap)?;
    Ok(oracle.ground.points().map(|x| oracle.eval(&x)).collect())
}

fn tol_for(values: &[f64]) -> f64 {
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    VALUE_TOL * scale
}

/// Limit on the number of (x, y) pairs for the direct pairwise check. Larger
/// boxes fall back to the local exchange test, which is equivalent on
/// integer lattices.
const PAIRWISE_LIMIT: u128 = 1 << 26;

/// Exhaustive lattice-submodularity check, up to a value-scaled 1e-9 slack.
pub fn verify_submodular(oracle: &SubmodularOracle) -> Result<bool> {
    verify_submodular_with_cap(oracle, DEFAULT_ENUMERATION_CAP)
}

pub fn verify_submodular_with_cap(oracle: &SubmodularOracle, cap: u64) -> Result<bool> {
    let table = tabulate(oracle, cap)?;
    let n = table.len() as u128;
    if n * n <= PAIRWISE_LIMIT {
        Ok(submodular_pairwise(&oracle.ground, &table))
    } else {
        Ok(submodular_local(&oracle.ground, &table))
    }
}

/// All pairs `(x, y)` of the box.
pub(crate) fn submodular_pairwise(ground: &GroundSet, table: &[f64]) -> bool {
    let tol = tol_for(table);
    let points: Vec<Vec<u32>> = ground.points().collect();
    let mut meet = vec![0u32; ground.len()];
    let mut join = vec![0u32; ground.len()];
    for (ix, x) in points.iter().enumerate() {
        for (iy, y) in points.iter().enumerate().skip(ix + 1) {
            for k in 0..x.len() {
                meet[k] = x[k].min(y[k]);
                join[k] = x[k].max(y[k]);
            }
            let lhs = table[ix] + table[iy];
            let rhs = table[ground.index_of(&meet)] + table[ground.index_of(&join)];
            if lhs < rhs - tol {
                return false;
            }
        }
    }
    true
}

/// Local exchange test: `f(x + e_i) + f(x + e_j) >= f(x) + f(x + e_i + e_j)`
/// for all `x` and `i != j`.
pub(crate) fn submodular_local(ground: &GroundSet, table: &[f64]) -> bool {
    let tol = tol_for(table);
    let u = ground.bounds();
    for mut x in ground.points() {
        let base = table[ground.index_of(&x)];
        for i in 0..x.len() {
            if x[i] == u[i] {
                continue;
            }
            for j in (i + 1)..x.len() {
                if x[j] == u[j] {
                    continue;
                }
                x[i] += 1;
                let fi = table[ground.index_of(&x)];
                x[j] += 1;
                let fij = table[ground.index_of(&x)];
                x[i] -= 1;
                let fj = table[ground.index_of(&x)];
                x[j] -= 1;
                if fi + fj < base + fij - tol {
                    return false;
                }
            }
        }
    }
    true
}

/// Exhaustive monotonicity (non-decreasing) check.
pub fn verify_monotone(oracle: &SubmodularOracle) -> Result<bool> {
    verify_monotone_with_cap(oracle, DEFAULT_ENUMERATION_CAP)
}

pub fn verify_monotone_with_cap(oracle: &SubmodularOracle, cap: u64) -> Result<bool> {
    let table = tabulate(oracle, cap)?;
    let tol = tol_for(&table);
    let ground = &oracle.ground;
    let u = ground.bounds();
    for mut x in ground.points() {
        let here = table[ground.index_of(&x)];
        for i in 0..x.len() {
            if x[i] < u[i] {
                x[i] += 1;
                let up = table[ground.index_of(&x)];
                x[i] -= 1;
                if up < here - tol {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The reflected oracle `x ↦ f(u - x)`. Submodularity is preserved and the
/// direction of monotonicity flips, so the result never claims monotone.
pub fn reflect_complement(oracle: &SubmodularOracle) -> SubmodularOracle {
    let inner = oracle.clone();
    let bounds = oracle.ground.bounds().to_vec();
    let flags = OracleFlags {
        claims_monotone: false,
        ..oracle.flags
    };
    let family = oracle
        .family
        .clone()
        .map(|f| FunctionFamily::Complement { inner: Box::new(f) });
    let reflected = SubmodularOracle::from_fn(oracle.ground.clone(), flags, move |x| {
        let y: Vec<u32> = x.iter().zip(&bounds).map(|(&v, &u)| u - v).collect();
        inner.eval(&y)
    });
    match family {
        Some(f) => reflected.with_family(f),
        None => reflected,
    }
}
