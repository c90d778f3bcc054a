//! Monotonizing duplication.
//!
//! Every element `j` gets two copies: `x_j⁺ ∈ [0, u_j]` and
//! `x_j⁻ ∈ [−u_j, 0]`. A non-monotone inequality `a·x_i + b·x_j >= c` becomes
//! `a·x_i⁺ − b·x_j⁻ >= c` and `−a·x_i⁻ + b·x_j⁺ >= c`; a monotone one becomes
//! `a·x_i⁺ + b·x_j⁺ >= c` and `−a·x_i⁻ − b·x_j⁻ >= c`. Every resulting
//! inequality is monotone (or a singleton) in the duplicated variables.

use serde::Serialize;

use crate::error::Result;
use crate::instance::{ConstraintClass, Sm2Instance, TwoVarConstraint};
use crate::oracle::GroundSet;

/// A variable of the duplicated system. Index `i` is `Plus(i)`, index
/// `n + i` is `Minus(i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DupVar {
    Plus(usize),
    Minus(usize),
}

impl DupVar {
    pub fn index(self, n: usize) -> usize {
        match self {
            DupVar::Plus(i) => i,
            DupVar::Minus(i) => n + i,
        }
    }

    pub fn from_index(index: usize, n: usize) -> Self {
        if index < n {
            DupVar::Plus(index)
        } else {
            DupVar::Minus(index - n)
        }
    }
}

/// The duplicated system over `2n` variables, in signed coordinates
/// (minus copies take values in `[−u, 0]`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonizedSystem {
    pub n: usize,
    pub bounds: Vec<u32>,
    pub constraints: Vec<TwoVarConstraint>,
    /// Index of the original constraint each duplicate came from.
    pub origin: Vec<usize>,
}

impl MonotonizedSystem {
    /// Check a signed point `(x⁺, x⁻)` of length `2n`.
    pub fn is_feasible(&self, point: &[i64]) -> bool {
        point.len() == 2 * self.n
            && (0..self.n).all(|i| {
                let u = self.bounds[i] as i64;
                (0..=u).contains(&point[i]) && (-u..=0).contains(&point[self.n + i])
            })
            && self
                .constraints
                .iter()
                .all(|c| c.satisfied_by_signed(point))
    }

    /// The same system on nonnegative coordinates: the minus copy `x_i⁻` is
    /// replaced by `y_i = x_i⁻ + u_i ∈ [0, u_i]`. Coefficients are unchanged
    /// and only right-hand sides move, so every constraint stays monotone.
    pub fn shifted(&self) -> Result<(GroundSet, Vec<TwoVarConstraint>)> {
        let mut bounds = self.bounds.clone();
        bounds.extend_from_slice(&self.bounds);
        let ground = GroundSet::new(bounds)?;
        let shift = |idx: usize, coef: i64| -> i64 {
            if idx >= self.n {
                coef * self.bounds[idx - self.n] as i64
            } else {
                0
            }
        };
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                let mut d = *c;
                d.c += shift(c.i, c.a);
                if let Some(j) = c.j {
                    d.c += shift(j, c.b);
                }
                d
            })
            .collect();
        Ok((ground, constraints))
    }
}

/// Duplicate every constraint of `inst` into a purely monotone pair.
pub fn monotonize(inst: &Sm2Instance) -> MonotonizedSystem {
    let n = inst.n();
    let plus = |i: usize| DupVar::Plus(i).index(n);
    let minus = |i: usize| DupVar::Minus(i).index(n);
    let mut constraints = Vec::with_capacity(2 * inst.constraints.len());
    let mut origin = Vec::with_capacity(2 * inst.constraints.len());
    let mut push = |c: TwoVarConstraint, k: usize| {
        constraints.push(c);
        origin.push(k);
    };
    for (k, c) in inst.constraints.iter().enumerate() {
        let make = |i: usize, a: i64, j: usize, b: i64| TwoVarConstraint {
            i,
            j: Some(j),
            a,
            b,
            c: c.c,
        };
        match c.classify() {
            ConstraintClass::Singleton => {
                let (v, a) = c.active_single().expect("singleton");
                push(
                    TwoVarConstraint {
                        i: plus(v),
                        j: None,
                        a,
                        b: 0,
                        c: c.c,
                    },
                    k,
                );
                push(
                    TwoVarConstraint {
                        i: minus(v),
                        j: None,
                        a: -a,
                        b: 0,
                        c: c.c,
                    },
                    k,
                );
            }
            ConstraintClass::NonMonotone => {
                let j = c.j.expect("pair");
                push(make(plus(c.i), c.a, minus(j), -c.b), k);
                push(make(minus(c.i), -c.a, plus(j), c.b), k);
            }
            ConstraintClass::Monotone => {
                let j = c.j.expect("pair");
                push(make(plus(c.i), c.a, plus(j), c.b), k);
                push(make(minus(c.i), -c.a, minus(j), -c.b), k);
            }
        }
    }
    MonotonizedSystem {
        n,
        bounds: inst.ground.bounds().to_vec(),
        constraints,
        origin,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{make_family, FunctionFamily};

    fn instance(bounds: Vec<u32>, constraints: Vec<TwoVarConstraint>) -> Sm2Instance {
        let g = GroundSet::new(bounds).unwrap();
        let f = make_family(&FunctionFamily::cardinality(g.len()), &g).unwrap();
        Sm2Instance::new(g, constraints, f, true).unwrap()
    }

    #[test]
    fn cover_constraint_splits_into_two() {
        let inst = instance(
            vec![1, 1],
            vec![TwoVarConstraint::new(0, 1, 1, 1, 1).unwrap()],
        );
        let m = monotonize(&inst);
        // x_0⁺ − x_1⁻ >= 1 and −x_0⁻ + x_1⁺ >= 1
        assert_eq!(
            m.constraints[0],
            TwoVarConstraint {
                i: 0,
                j: Some(3),
                a: 1,
                b: -1,
                c: 1
            }
        );
        assert_eq!(
            m.constraints[1],
            TwoVarConstraint {
                i: 2,
                j: Some(1),
                a: -1,
                b: 1,
                c: 1
            }
        );
        assert!(m
            .constraints
            .iter()
            .all(|c| c.classify() == ConstraintClass::Monotone));
    }

    #[test]
    fn monotone_constraint_stays_on_each_copy() {
        let inst = instance(
            vec![1, 1],
            vec![TwoVarConstraint::new(0, 1, 1, -1, 0).unwrap()],
        );
        let m = monotonize(&inst);
        assert_eq!(
            m.constraints[0],
            TwoVarConstraint {
                i: 0,
                j: Some(1),
                a: 1,
                b: -1,
                c: 0
            }
        );
        assert_eq!(
            m.constraints[1],
            TwoVarConstraint {
                i: 2,
                j: Some(3),
                a: -1,
                b: 1,
                c: 0
            }
        );
    }

    #[test]
    fn identity_embedding_is_feasible() {
        let inst = instance(
            vec![1, 1],
            vec![TwoVarConstraint::new(0, 1, 1, 1, 1).unwrap()],
        );
        let m = monotonize(&inst);
        assert!(m.is_feasible(&[1, 0, -1, 0]));
        assert!(!m.is_feasible(&[0, 0, 0, 0]));
    }

    #[test]
    fn shift_keeps_feasible_sets_aligned() {
        let inst = instance(
            vec![2, 3],
            vec![
                TwoVarConstraint::new(0, 2, 1, 1, 3).unwrap(),
                TwoVarConstraint::new(0, -1, 1, -2, -5).unwrap(),
                TwoVarConstraint::single(1, 1, 1).unwrap(),
            ],
        );
        let m = monotonize(&inst);
        let (g, shifted) = m.shifted().unwrap();
        for y in g.points() {
            let signed: Vec<i64> = (0..4)
                .map(|k| {
                    if k < 2 {
                        y[k] as i64
                    } else {
                        y[k] as i64 - m.bounds[k - 2] as i64
                    }
                })
                .collect();
            let a = m.is_feasible(&signed);
            let b = shifted.iter().all(|c| c.satisfied_by(&y));
            assert_eq!(a, b, "{y:?}");
        }
        assert!(shifted
            .iter()
            .all(|c| c.classify() != ConstraintClass::NonMonotone));
    }
}
