//! Constraint classification, binarization of bounded integer variables and
//! the monotonizing duplication.

mod binarize;
mod monotonize;

use std::collections::BTreeMap;

use log::debug;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{ConstraintClass, TwoVarConstraint};
use crate::oracle::{GroundSet, MultiSetVector};

pub use crate::instance::classify;
pub use binarize::{binarize_general, binarize_monotone, binarize_singleton, Fragment};
pub use monotonize::{monotonize, DupVar, MonotonizedSystem};

/// Default cap on the number of level variables `Σ u_i`.
pub const DEFAULT_LEVEL_BUDGET: u64 = 100_000;

/// Numbering of level variables: `(i, p)` with `1 <= p <= u_i` is variable
/// `offset[i] + p - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelLayout {
    offsets: Vec<usize>,
    bounds: Vec<u32>,
}

impl LevelLayout {
    pub fn new(ground: &GroundSet) -> Self {
        let mut offsets = Vec::with_capacity(ground.len());
        let mut next = 0usize;
        for &u in ground.bounds() {
            offsets.push(next);
            next += u as usize;
        }
        LevelLayout {
            offsets,
            bounds: ground.bounds().to_vec(),
        }
    }

    pub fn var(&self, element: usize, level: u32) -> usize {
        debug_assert!(level >= 1 && level <= self.bounds[element]);
        self.offsets[element] + level as usize - 1
    }

    pub fn len(&self) -> usize {
        self.offsets.last().map_or(0, |&o| o) + self.bounds.last().map_or(0, |&u| u as usize)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn elements(&self) -> usize {
        self.bounds.len()
    }

    pub fn bound(&self, element: usize) -> u32 {
        self.bounds[element]
    }

    /// `(element, level)` of a level variable.
    pub fn level_of(&self, var: usize) -> (usize, u32) {
        let element = self.offsets.partition_point(|&o| o <= var) - 1;
        (element, (var - self.offsets[element]) as u32 + 1)
    }

    /// Chain arcs `(i, p) <= (i, p-1)` for every element and `p >= 2`.
    pub fn chain_arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs = Vec::new();
        for (i, &u) in self.bounds.iter().enumerate() {
            for p in 2..=u {
                arcs.push((self.var(i, p), self.var(i, p - 1)));
            }
        }
        arcs
    }

    /// Level assignment of an integer point.
    pub fn encode(&self, x: &[u32]) -> Vec<bool> {
        let mut levels = vec![false; self.len()];
        for (i, &v) in x.iter().enumerate() {
            for p in 1..=v {
                levels[self.var(i, p)] = true;
            }
        }
        levels
    }
}

/// `x_i = Σ_p x_i^(p)`, rejecting assignments that are not a prefix of ones
/// for some element.
pub fn decode_levels(layout: &LevelLayout, assignment: &[bool]) -> Result<MultiSetVector> {
    if assignment.len() != layout.len() {
        return Err(Error::dims(
            "level assignment",
            layout.len(),
            assignment.len(),
        ));
    }
    let mut x = Vec::with_capacity(layout.elements());
    for i in 0..layout.elements() {
        let u = layout.bound(i);
        let count = (1..=u)
            .take_while(|&p| assignment[layout.var(i, p)])
            .count() as u32;
        if (count + 1..=u).any(|p| assignment[layout.var(i, p)]) {
            return Err(Error::ChainViolation { element: i });
        }
        x.push(count);
    }
    Ok(MultiSetVector::new(x))
}

/// A whole constraint system rewritten on binary level variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinarizedSystem {
    pub layout: LevelLayout,
    /// `(u, v)`: `u <= v`; includes the chain arcs.
    pub closure_arcs: Vec<(usize, usize)>,
    /// `(u, v)`: `u + v >= 1`.
    pub cover_clauses: Vec<(usize, usize)>,
    /// `(u, v)`: `u + v <= 1`.
    pub exclusion_clauses: Vec<(usize, usize)>,
    pub fixed: BTreeMap<usize, bool>,
    /// Variables fixed both ways; a non-empty list means the system is
    /// infeasible.
    pub conflicts: Vec<usize>,
}

impl BinarizedSystem {
    pub fn new(layout: LevelLayout) -> Self {
        let closure_arcs = layout.chain_arcs();
        BinarizedSystem {
            layout,
            closure_arcs,
            cover_clauses: Vec::new(),
            exclusion_clauses: Vec::new(),
            fixed: BTreeMap::new(),
            conflicts: Vec::new(),
        }
    }

    pub fn add(&mut self, fragment: Fragment) {
        self.closure_arcs.extend(fragment.closure_arcs);
        self.cover_clauses.extend(fragment.cover_clauses);
        self.exclusion_clauses.extend(fragment.exclusion_clauses);
        for (var, value) in fragment.fixed {
            if let Some(prev) = self.fixed.insert(var, value) {
                if prev != value && !self.conflicts.contains(&var) {
                    self.conflicts.push(var);
                }
            }
        }
    }

    pub fn is_monotone(&self) -> bool {
        self.cover_clauses.is_empty() && self.exclusion_clauses.is_empty()
    }

    /// Checks every clause and fixing against a full level assignment.
    pub fn satisfied_by(&self, levels: &[bool]) -> bool {
        self.conflicts.is_empty()
            && self
                .closure_arcs
                .iter()
                .all(|&(u, v)| !levels[u] || levels[v])
            && self
                .cover_clauses
                .iter()
                .all(|&(u, v)| levels[u] || levels[v])
            && self
                .exclusion_clauses
                .iter()
                .all(|&(u, v)| !(levels[u] && levels[v]))
            && self.fixed.iter().all(|(&var, &val)| levels[var] == val)
    }
}

/// Outcome of binarizing a whole system.
#[derive(Debug, Clone)]
pub enum Binarization {
    System(BinarizedSystem),
    /// Some constraint has no solution in the box.
    BoxInfeasible {
        index: usize,
        reason: String,
    },
}

fn check_budget(ground: &GroundSet, budget: u64) -> Result<()> {
    let needed: u64 = ground.bounds().iter().map(|&u| u as u64).sum();
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

fn binarize_with<F>(
    constraints: &[TwoVarConstraint],
    ground: &GroundSet,
    budget: u64,
    mut pair: F,
) -> Result<Binarization>
where
    F: FnMut(&TwoVarConstraint, usize) -> Result<Fragment>,
{
    check_budget(ground, budget)?;
    let mut system = BinarizedSystem::new(LevelLayout::new(ground));
    for (k, c) in constraints.iter().enumerate() {
        let fragment = match c.classify() {
            ConstraintClass::Singleton => binarize::binarize_singleton(c, ground, k),
            _ => pair(c, k),
        };
        match fragment {
            Ok(f) => {
                if f.is_empty() {
                    debug!("constraint {k} is vacuous over the box; dropped");
                }
                system.add(f)
            }
            Err(Error::BoxInfeasible { index, reason }) => {
                return Ok(Binarization::BoxInfeasible { index, reason })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Binarization::System(system))
}

/// Binarize every constraint (2-SAT form: arcs, cover and exclusion
/// clauses, fixings).
pub fn binarize_system(
    constraints: &[TwoVarConstraint],
    ground: &GroundSet,
    budget: u64,
) -> Result<Binarization> {
    binarize_with(constraints, ground, budget, |c, k| {
        binarize::binarize_general_at(c, ground, k)
    })
}

/// Binarize a monotone system into closure arcs and fixings only.
pub fn binarize_monotone_system(
    constraints: &[TwoVarConstraint],
    ground: &GroundSet,
    budget: u64,
) -> Result<Binarization> {
    if let Some(k) = constraints
        .iter()
        .position(|c| c.classify() == ConstraintClass::NonMonotone)
    {
        return Err(Error::NotMonotone(k));
    }
    binarize_with(constraints, ground, budget, |c, k| {
        binarize::binarize_monotone_at(c, ground, k)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_numbering() {
        let g = GroundSet::new(vec![2, 1, 3]).unwrap();
        let l = LevelLayout::new(&g);
        assert_eq!(l.len(), 6);
        assert_eq!(l.var(0, 1), 0);
        assert_eq!(l.var(1, 1), 2);
        assert_eq!(l.var(2, 3), 5);
        for v in 0..l.len() {
            let (i, p) = l.level_of(v);
            assert_eq!(l.var(i, p), v);
        }
        assert_eq!(l.chain_arcs(), vec![(1, 0), (4, 3), (5, 4)]);
    }

    #[test]
    fn decode_examples() {
        let g = GroundSet::new(vec![3]).unwrap();
        let l = LevelLayout::new(&g);
        assert_eq!(&*decode_levels(&l, &[true, true, false]).unwrap(), &[2]);
        assert_eq!(&*decode_levels(&l, &[false, false, false]).unwrap(), &[0]);
        assert!(matches!(
            decode_levels(&l, &[true, false, true]),
            Err(Error::ChainViolation { element: 0 })
        ));
        let b = LevelLayout::new(&GroundSet::binary(2).unwrap());
        assert_eq!(&*decode_levels(&b, &[true, false]).unwrap(), &[1, 0]);
    }

    #[test]
    fn encode_decode_roundtrip() {
        let g = GroundSet::new(vec![2, 3, 1]).unwrap();
        let l = LevelLayout::new(&g);
        for x in g.points() {
            assert_eq!(&*decode_levels(&l, &l.encode(&x)).unwrap(), x.as_slice());
        }
    }

    #[test]
    fn monotone_system_rejects_cover() {
        let g = GroundSet::binary(2).unwrap();
        let cs = vec![TwoVarConstraint::new(0, 1, 1, 1, 1).unwrap()];
        assert!(matches!(
            binarize_monotone_system(&cs, &g, 100),
            Err(Error::NotMonotone(0))
        ));
    }

    #[test]
    fn conflicting_fixings_are_recorded() {
        let g = GroundSet::binary(1).unwrap();
        let cs = vec![
            TwoVarConstraint::single(0, 1, 1).unwrap(),
            TwoVarConstraint::single(0, -1, 0).unwrap(),
        ];
        match binarize_system(&cs, &g, 100).unwrap() {
            Binarization::System(s) => assert_eq!(s.conflicts, vec![0]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = GroundSet::new(vec![60, 60]).unwrap();
        assert!(matches!(
            binarize_system(&[], &g, 100),
            Err(Error::BudgetExceeded { needed: 120, .. })
        ));
    }
}
