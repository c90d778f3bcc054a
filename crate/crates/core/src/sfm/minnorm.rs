//! Fujishige–Wolfe minimum-norm-point algorithm.
//!
//! Wolfe's method finds the point of minimum Euclidean norm in the base
//! polytope `B(f - f(∅))`; linear optimization over the polytope is Edmonds'
//! greedy algorithm. Each greedy call also evaluates `f` on all prefix sets
//! of the sorted order, which provides an upper bound, while
//! `f(∅) + Σ_i min(0, x_i)` is a lower bound for any `x` in the polytope.

use nalgebra::{DMatrix, DVector};

use super::{greedy_with_prefixes, SetFunctionOracle, SfmOptions, SfmOutcome};
use crate::error::{Error, Result};

const WEIGHT_EPS: f64 = 1e-12;

struct Incumbent {
    set: Vec<bool>,
    value: f64,
}

impl Incumbent {
    fn offer(&mut self, set: &[bool], value: f64) {
        if value < self.value || (value == self.value && set < self.set.as_slice()) {
            self.value = value;
            self.set.clear();
            self.set.extend_from_slice(set);
        }
    }

    fn offer_prefixes(&mut self, order: &[usize], prefix: &[f64]) {
        let best_k = (0..prefix.len())
            .min_by(|&a, &b| prefix[a].total_cmp(&prefix[b]))
            .unwrap_or(0);
        if prefix[best_k] <= self.value {
            let mut set = vec![false; order.len()];
            for &e in &order[..best_k] {
                set[e] = true;
            }
            self.offer(&set, prefix[best_k]);
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Coefficients `α` (summing to 1) of the minimum-norm point in the affine
/// hull of `points`, from the KKT system `[G 1; 1ᵀ 0]`.
fn affine_minimizer(points: &[Vec<f64>]) -> Option<Vec<f64>> {
    let k = points.len();
    let mut kkt = DMatrix::<f64>::zeros(k + 1, k + 1);
    for i in 0..k {
        for j in i..k {
            let g = dot(&points[i], &points[j]);
            kkt[(i, j)] = g;
            kkt[(j, i)] = g;
        }
        kkt[(i, k)] = 1.0;
        kkt[(k, i)] = 1.0;
    }
    let mut rhs = DVector::<f64>::zeros(k + 1);
    rhs[k] = 1.0;
    let sol = kkt.full_piv_lu().solve(&rhs)?;
    let alpha: Vec<f64> = sol.iter().take(k).copied().collect();
    alpha.iter().all(|a| a.is_finite()).then_some(alpha)
}

fn combine(points: &[Vec<f64>], weights: &[f64], m: usize) -> Vec<f64> {
    let mut x = vec![0.0; m];
    for (p, &w) in points.iter().zip(weights) {
        for (xi, pi) in x.iter_mut().zip(p) {
            *xi += w * pi;
        }
    }
    x
}

fn ascending_order(x: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then(a.cmp(&b)));
    order
}

/// Minimize a submodular set function with the min-norm-point algorithm.
///
/// The returned value is `f(set)` re-evaluated. For integer-valued oracles
/// the search continues until the duality gap is below 1, which certifies the
/// minimizer (`exact = true`).
pub fn sfm_minnorm(f: &SetFunctionOracle, opts: &SfmOptions) -> Result<SfmOutcome> {
    let m = f.len();
    let empty = vec![false; m];
    let f_empty = f.eval(&empty);
    let mut best = Incumbent {
        set: empty,
        value: f_empty,
    };
    if m == 0 {
        return Ok(SfmOutcome {
            set: best.set,
            value: f_empty,
            lower_bound: f_empty,
            iterations: 0,
            exact: true,
        });
    }
    let cap = opts.max_iterations.unwrap_or(10 * m * m + 1000);
    let tol = opts.tol.max(f64::EPSILON);

    let identity: Vec<usize> = (0..m).collect();
    let (q0, prefix0) = greedy_with_prefixes(f, &identity);
    best.offer_prefixes(&identity, &prefix0);

    let mut points = vec![q0];
    let mut weights = vec![1.0];
    let mut x = points[0].clone();
    let mut iterations = 0usize;
    let mut lower = f64::NEG_INFINITY;
    let mut exact = false;

    loop {
        iterations += 1;
        if iterations > cap {
            return Err(Error::NonConvergence { iterations: cap });
        }

        let order = ascending_order(&x);
        let (q, prefix) = greedy_with_prefixes(f, &order);
        best.offer_prefixes(&order, &prefix);

        lower = lower.max(f_empty + x.iter().map(|&v| v.min(0.0)).sum::<f64>());
        let gap = best.value - lower;
        if f.integer_valued() && gap < 1.0 - 1e-6 {
            exact = true;
            break;
        }
        let scale = 1.0 + best.value.abs().max(lower.abs());
        if gap <= tol * scale {
            break;
        }

        let xx = dot(&x, &x);
        let max_sq = points.iter().map(|p| dot(p, p)).fold(dot(&q, &q), f64::max);
        if xx - dot(&x, &q) <= tol * max_sq.max(1.0) {
            break;
        }
        if points.iter().any(|p| {
            p.iter()
                .zip(&q)
                .all(|(a, b)| (a - b).abs() <= 1e-12 * (1.0 + a.abs()))
        }) {
            break;
        }
        points.push(q);
        weights.push(0.0);

        // minor cycles
        let mut stalled = false;
        loop {
            iterations += 1;
            if iterations > cap {
                return Err(Error::NonConvergence { iterations: cap });
            }
            let Some(alpha) = affine_minimizer(&points) else {
                stalled = true;
                break;
            };
            if alpha.iter().all(|&a| a > WEIGHT_EPS) {
                weights = alpha;
                break;
            }
            let mut theta = f64::INFINITY;
            let mut leaving = 0;
            for (i, (&a, &l)) in alpha.iter().zip(&weights).enumerate() {
                if a <= WEIGHT_EPS {
                    let t = if l - a > 0.0 { l / (l - a) } else { 0.0 };
                    if t < theta {
                        theta = t;
                        leaving = i;
                    }
                }
            }
            let theta = theta.clamp(0.0, 1.0);
            for (l, &a) in weights.iter_mut().zip(&alpha) {
                *l = (1.0 - theta) * *l + theta * a;
            }
            weights[leaving] = 0.0;
            let mut k = 0;
            while k < points.len() {
                if weights[k] <= WEIGHT_EPS {
                    points.swap_remove(k);
                    weights.swap_remove(k);
                } else {
                    k += 1;
                }
            }
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
        }
        x = combine(&points, &weights, m);
        if stalled {
            break;
        }
    }

    if !exact && f.integer_valued() {
        exact = best.value - lower < 1.0 - 1e-6;
    }
    let value = f.eval(&best.set);
    Ok(SfmOutcome {
        set: best.set,
        value,
        lower_bound: lower.min(value),
        iterations,
        exact,
    })
}
