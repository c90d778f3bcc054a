//! Per-constraint binarization into level-variable clauses.
//!
//! Level variable `(i, p)` for `p = 1..=u_i` stands for `x_i >= p`. A
//! constraint on `(x_i, x_j)` becomes a set of two-literal clauses on level
//! variables whose feasible chain-respecting assignments decode to exactly
//! the feasible integer pairs of the constraint.

use num_integer::Integer;
use serde::Serialize;

use super::LevelLayout;
use crate::error::{Error, Result};
use crate::instance::{ConstraintClass, TwoVarConstraint};
use crate::oracle::GroundSet;

/// Clauses emitted for one constraint (chain arcs are added once per element
/// by the system builder).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Fragment {
    /// `(u, v)`: `u <= v`.
    pub closure_arcs: Vec<(usize, usize)>,
    /// `(u, v)`: `u + v >= 1`.
    pub cover_clauses: Vec<(usize, usize)>,
    /// `(u, v)`: `u + v <= 1`.
    pub exclusion_clauses: Vec<(usize, usize)>,
    pub fixed: Vec<(usize, bool)>,
}

impl Fragment {
    pub fn is_empty(&self) -> bool {
        self.closure_arcs.is_empty()
            && self.cover_clauses.is_empty()
            && self.exclusion_clauses.is_empty()
            && self.fixed.is_empty()
    }
}

fn ceil_div(num: i128, den: i128) -> i128 {
    Integer::div_ceil(&num, &den)
}

fn floor_div(num: i128, den: i128) -> i128 {
    Integer::div_floor(&num, &den)
}

/// Range of `a·x_i + b·x_j` over the box.
fn lhs_range(a: i128, ui: i128, b: i128, uj: i128) -> (i128, i128) {
    let (lo_i, hi_i) = if a >= 0 { (0, a * ui) } else { (a * ui, 0) };
    let (lo_j, hi_j) = if b >= 0 { (0, b * uj) } else { (b * uj, 0) };
    (lo_i + lo_j, hi_i + hi_j)
}

/// `Ok(true)` if the constraint holds on the whole box, an error if it holds
/// nowhere.
fn box_status(c: &TwoVarConstraint, ground: &GroundSet, index: usize) -> Result<bool> {
    let ui = ground.bound(c.i) as i128;
    let uj = c.j.map_or(0, |j| ground.bound(j) as i128);
    let (lo, hi) = lhs_range(c.a as i128, ui, c.b as i128, uj);
    let rhs = c.c as i128;
    if hi < rhs {
        return Err(Error::BoxInfeasible {
            index,
            reason: format!("left-hand side is at most {hi} < {rhs}"),
        });
    }
    Ok(lo >= rhs)
}

fn check_indices(c: &TwoVarConstraint, ground: &GroundSet) -> Result<()> {
    if c.max_index() >= ground.len() {
        return Err(Error::IndexOutOfRange {
            what: "constraint variable",
            index: c.max_index(),
            len: ground.len(),
        });
    }
    Ok(())
}

/// Bound tightening for a single-variable constraint `a·x_k >= c`, expressed
/// as a fixing of one level variable.
pub fn binarize_singleton(
    c: &TwoVarConstraint,
    ground: &GroundSet,
    index: usize,
) -> Result<Fragment> {
    check_indices(c, ground)?;
    let (k, a) = c
        .active_single()
        .ok_or_else(|| Error::InvalidConstraint("not a singleton".into()))?;
    let mut out = Fragment::default();
    let uk = ground.bound(k) as i128;
    let layout = LevelLayout::new(ground);
    let (a, rhs) = (a as i128, c.c as i128);
    if a > 0 {
        let lower = ceil_div(rhs, a);
        if lower > uk {
            return Err(Error::BoxInfeasible {
                index,
                reason: format!("x_{k} >= {lower} exceeds bound {uk}"),
            });
        }
        if lower >= 1 {
            out.fixed.push((layout.var(k, lower as u32), true));
        }
    } else {
        let upper = floor_div(rhs, a);
        if upper < 0 {
            return Err(Error::BoxInfeasible {
                index,
                reason: format!("x_{k} <= {upper} is negative"),
            });
        }
        if upper < uk {
            out.fixed.push((layout.var(k, upper as u32 + 1), false));
        }
    }
    Ok(out)
}

/// Closure arcs for a monotone constraint.
///
/// Written as `α·x_P − β·x_N >= c` with `α, β > 0`: for every level
/// `p = 0..=u_N`, `x_N >= p` forces `x_P >= q(p) = ⌈(c + β p)/α⌉`. For
/// `p >= 1` this is the arc `N^(p) <= P^(q(p))`, or the fixing `N^(p) = 0`
/// when `q(p) > u_P`; `q(p) < 1` is vacuous. Level `p = 0` is unconditional
/// and fixes `P^(q(0)) = 1` when `q(0) >= 1`.
pub fn binarize_monotone(c: &TwoVarConstraint, ground: &GroundSet) -> Result<Fragment> {
    binarize_monotone_at(c, ground, 0)
}

pub(crate) fn binarize_monotone_at(
    c: &TwoVarConstraint,
    ground: &GroundSet,
    index: usize,
) -> Result<Fragment> {
    check_indices(c, ground)?;
    if c.classify() != ConstraintClass::Monotone {
        return Err(Error::InvalidConstraint(format!(
            "expected a monotone constraint, got {:?}",
            c.classify()
        )));
    }
    let j = c.j.expect("monotone constraints have two variables");
    let (pos, alpha, neg, beta) = if c.a > 0 {
        (c.i, c.a as i128, j, -(c.b as i128))
    } else {
        (j, c.b as i128, c.i, -(c.a as i128))
    };
    let mut out = Fragment::default();
    if box_status(c, ground, index)? {
        return Ok(out);
    }
    let layout = LevelLayout::new(ground);
    let u_pos = ground.bound(pos) as i128;
    let u_neg = ground.bound(neg);
    for p in 0..=u_neg {
        let q = ceil_div(c.c as i128 + beta * p as i128, alpha);
        if q < 1 {
            continue;
        }
        match (p, q <= u_pos) {
            (0, true) => out.fixed.push((layout.var(pos, q as u32), true)),
            (0, false) => unreachable!("box check rules out an infeasible base level"),
            (_, true) => out
                .closure_arcs
                .push((layout.var(neg, p), layout.var(pos, q as u32))),
            (_, false) => out.fixed.push((layout.var(neg, p), false)),
        }
    }
    Ok(out)
}

/// Cover clauses for `a·x_i + b·x_j >= c` with `a, b > 0`, emitted through
/// `emit`, which maps level literals of the (possibly complemented)
/// variables into the fragment.
///
/// For `ℓ = 0..=u_i`: `x_i <= ℓ` forces `x_j >= r(ℓ) = ⌈(c − aℓ)/b⌉`. For
/// `ℓ < u_i` this is the clause `x_{i,ℓ+1} ∨ x_{j,r}` (or the fixing
/// `x_{i,ℓ+1} = 1` when `r > u_j`); `ℓ = u_i` is unconditional.
fn cover_levels(a: i128, ui: u32, b: i128, uj: u32, rhs: i128, mut emit: impl FnMut(CoverItem)) {
    for l in 0..=ui {
        let r = ceil_div(rhs - a * l as i128, b);
        if r < 1 {
            continue;
        }
        let fits = r <= uj as i128;
        match (l < ui, fits) {
            (true, true) => emit(CoverItem::Clause(l + 1, r as u32)),
            (true, false) => emit(CoverItem::FixI(l + 1)),
            (false, true) => emit(CoverItem::FixJ(r as u32)),
            (false, false) => unreachable!("box check rules out an infeasible corner"),
        }
    }
}

enum CoverItem {
    Clause(u32, u32),
    FixI(u32),
    FixJ(u32),
}

/// Binarize any two-variable constraint with both coefficients nonzero.
///
/// Positive-positive constraints give cover clauses, monotone ones route to
/// [`binarize_monotone`], and negative-negative ones are rewritten on the
/// complemented variables `u − x` and give exclusion clauses. Vacuous
/// constraints give an empty fragment; box-infeasible ones are an error.
pub fn binarize_general(c: &TwoVarConstraint, ground: &GroundSet) -> Result<Fragment> {
    binarize_general_at(c, ground, 0)
}

pub(crate) fn binarize_general_at(
    c: &TwoVarConstraint,
    ground: &GroundSet,
    index: usize,
) -> Result<Fragment> {
    check_indices(c, ground)?;
    match c.classify() {
        ConstraintClass::Singleton => {
            return Err(Error::InvalidConstraint(
                "singleton constraints are resolved by bound tightening".into(),
            ))
        }
        ConstraintClass::Monotone => return binarize_monotone_at(c, ground, index),
        ConstraintClass::NonMonotone => {}
    }
    let mut out = Fragment::default();
    if box_status(c, ground, index)? {
        return Ok(out);
    }
    let j = c.j.expect("two-variable constraint");
    let layout = LevelLayout::new(ground);
    let (ui, uj) = (ground.bound(c.i), ground.bound(j));
    let (a, b, rhs) = (c.a as i128, c.b as i128, c.c as i128);
    if a > 0 {
        cover_levels(a, ui, b, uj, rhs, |item| match item {
            CoverItem::Clause(p, q) => out
                .cover_clauses
                .push((layout.var(c.i, p), layout.var(j, q))),
            CoverItem::FixI(p) => out.fixed.push((layout.var(c.i, p), true)),
            CoverItem::FixJ(q) => out.fixed.push((layout.var(j, q), true)),
        });
    } else {
        // x̄ = u − x turns a·x_i + b·x_j >= c into |a|·x̄_i + |b|·x̄_j >= c + |a|u_i + |b|u_j,
        // and x̄_k >= p is the negation of x_k >= u_k − p + 1
        let rhs_bar = rhs - a * ui as i128 - b * uj as i128;
        let flip_i = |p: u32| layout.var(c.i, ui - p + 1);
        let flip_j = |q: u32| layout.var(j, uj - q + 1);
        cover_levels(-a, ui, -b, uj, rhs_bar, |item| match item {
            CoverItem::Clause(p, q) => out.exclusion_clauses.push((flip_i(p), flip_j(q))),
            CoverItem::FixI(p) => out.fixed.push((flip_i(p), false)),
            CoverItem::FixJ(q) => out.fixed.push((flip_j(q), false)),
        });
    }
    Ok(out)
}
