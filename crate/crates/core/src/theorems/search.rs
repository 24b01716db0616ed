//! Multi-start searches for representations `u = y + z` with `y ∈ E`, `z ∈ F`.
//!
//! These are falsifiers: two distinct solutions disprove uniqueness, while a
//! single solution proves nothing about sets the search did not explore.

use crate::linalg::Vector;

use super::sampling::{gaussian_vector, rng_from_seed};
use super::PointSet;

/// Budget for the multi-start searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub starts: usize,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            starts: 32,
            iterations: 200,
            seed: 0,
        }
    }
}

/// Two solutions closer than this are the same solution.
pub const DEDUP_RADIUS: f64 = 1e-4;
/// Acceptance tolerance for orthogonality and membership of `z`.
pub const ORTHO_ACCEPT_TOL: f64 = 1e-7;
/// Iteration cap for alternating projections.
pub const AP_MAX_ITER: usize = 20_000;

/// Starting points spread around `u/2`, generated from the budget seed.
fn spread_starts(u: &Vector, budget: &SearchBudget) -> Vec<Vector> {
    let dim = u.dim();
    let mut rng = rng_from_seed(budget.seed);
    let half = u.scaled(0.5);
    let scale = 1.0 + u.norm();
    let mut starts = vec![u.clone(), Vector::zeros(dim), half.clone()];
    while starts.len() < budget.starts {
        starts.push(&half + &gaussian_vector(&mut rng, dim, scale));
    }
    starts.truncate(budget.starts);
    starts
}

fn push_unique(out: &mut Vec<(Vector, Vector)>, y: Vector, z: Vector) {
    if !out.iter().any(|(y0, _)| y0.distance(&y) <= DEDUP_RADIUS) {
        out.push((y, z));
    }
}

/// Result of alternating projections between `E` and `u − F`.
#[derive(Debug, Clone)]
pub struct ApResult {
    /// Last iterate in `E`.
    pub y: Vector,
    /// Distance between the last iterates in `E` and in `u − F`.
    pub gap: f64,
    pub iterations: usize,
}

/// Alternating projections between `E` and `u − F` starting from `start`.
pub fn alternating_projections<E, F>(
    e: &E,
    f: &F,
    u: &Vector,
    start: &Vector,
    max_iter: usize,
) -> ApResult
where
    E: PointSet + ?Sized,
    F: PointSet + ?Sized,
{
    let scale = 1.0 + u.norm();
    let gap_at = |a: &Vector| {
        let b = u - &f.nearest(&(u - a));
        (a.distance(&b), b)
    };
    let mut a = e.nearest(start);
    let mut gap = f64::INFINITY;
    let mut last_move: Option<Vector> = None;
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        let (g, b) = gap_at(&a);
        gap = g;
        if gap <= 1e-13 * scale {
            break;
        }
        let next = e.nearest(&b);
        let step = &next - &a;
        a = next;
        if step.norm() <= 1e-16 * scale {
            gap = gap_at(&a).0;
            break;
        }
        // Near a solution of locally affine sets the error shrinks by a
        // fixed ratio per sweep; estimate it from two moves and jump ahead.
        // The jump is kept only when it lowers the gap.
        if let Some(prev) = last_move.take() {
            let ratio = step.dot(&prev) / prev.norm_sq();
            if ratio > 0.0 && ratio < 1.0 {
                let jumped = e.nearest(&a.axpy(ratio / (1.0 - ratio), &step));
                if gap_at(&jumped).0 < gap_at(&a).0 {
                    a = jumped;
                    continue;
                }
            }
        }
        last_move = Some(step);
    }
    ApResult {
        y: a,
        gap,
        iterations,
    }
}

/// Whether `u ∈ E + F`, decided by alternating projections.
///
/// Returns the final gap; `u` counts as representable when the gap is at most
/// `1e-6·(1 + ‖u‖)`.
pub fn sum_gap<E, F>(e: &E, f: &F, u: &Vector) -> f64
where
    E: PointSet + ?Sized,
    F: PointSet + ?Sized,
{
    alternating_projections(e, f, u, u, AP_MAX_ITER).gap
}

pub const SUM_GAP_TOL: f64 = 1e-6;

pub fn in_sum<E, F>(e: &E, f: &F, u: &Vector) -> bool
where
    E: PointSet + ?Sized,
    F: PointSet + ?Sized,
{
    sum_gap(e, f, u) <= SUM_GAP_TOL * (1.0 + u.norm())
}

/// All representations `u = y + z` found from spread starting points,
/// deduplicated at [`DEDUP_RADIUS`].
pub fn find_sum_representations<E, F>(
    e: &E,
    f: &F,
    u: &Vector,
    budget: &SearchBudget,
) -> Vec<(Vector, Vector)>
where
    E: PointSet + ?Sized,
    F: PointSet + ?Sized,
{
    let tol = 1e-8 * (1.0 + u.norm());
    let mut out = Vec::new();
    for start in spread_starts(u, budget) {
        let r = alternating_projections(e, f, u, &start, AP_MAX_ITER);
        if r.gap <= tol {
            let z = f.nearest(&(u - &r.y));
            push_unique(&mut out, r.y, z);
        }
    }
    out
}

struct OrthoObjective<'a, F: ?Sized> {
    f: &'a F,
    u: &'a Vector,
}

impl<F: PointSet + ?Sized> OrthoObjective<'_, F> {
    /// `½ dist²(u − y, F) + ½ (y·(u − y))²` and its gradient in `y`.
    fn eval(&self, y: &Vector) -> (f64, Vector) {
        let w = self.u - y;
        let pw = self.f.nearest(&w);
        let off = &w - &pw;
        let h = y.dot(&w);
        let value = 0.5 * off.norm_sq() + 0.5 * h * h;
        let grad = (-&off).axpy(h, &(self.u - &y.scaled(2.0)));
        (value, grad)
    }

    fn value(&self, y: &Vector) -> f64 {
        self.eval(y).0
    }
}

/// Orthogonal decompositions `u = y + z`, `y ∈ E`, `z ∈ F`, `y ⊥ z`.
///
/// Each start runs projected gradient descent with Armijo backtracking on
/// `½ dist²(u − y, F) + ½ (y·(u − y))²` over `y ∈ E`. Solutions with
/// `|y·z| ≤ 1e-7` and `‖z − p_F(z)‖ ≤ 1e-7` are kept. Two solutions count
/// as one when they are within [`DEDUP_RADIUS`] or their midpoint is also
/// accepted.
pub fn find_orthogonal_decompositions<E, F>(
    e: &E,
    f: &F,
    u: &Vector,
    budget: &SearchBudget,
) -> Vec<(Vector, Vector)>
where
    E: PointSet + ?Sized,
    F: PointSet + ?Sized,
{
    let obj = OrthoObjective { f, u };
    let mut out: Vec<(Vector, Vector)> = Vec::new();
    for start in spread_starts(u, budget) {
        let mut y = e.nearest(&start);
        let mut step: f64 = 1.0;
        for _ in 0..budget.iterations {
            let (g, grad) = obj.eval(&y);
            if g <= 1e-30 {
                break;
            }
            let mut accepted = None;
            step = (step * 2.0).min(1e3);
            for _ in 0..60 {
                let cand = e.nearest(&y.axpy(-step, &grad));
                let d = cand.distance(&y);
                if obj.value(&cand) <= g - 1e-4 / step * d * d {
                    accepted = Some(cand);
                    break;
                }
                step *= 0.5;
            }
            match accepted {
                Some(next) if next.distance(&y) > 1e-17 => y = next,
                _ => break,
            }
        }
        if accepts_orthogonal(f, u, &y) {
            // Orthogonal solutions lie on the sphere y·(u − y) = 0, so the
            // midpoint of two distinct ones is off it by d²/4. A midpoint
            // that still passes means the two points are one solution seen
            // through the tolerance.
            let same = out.iter().any(|(y0, _)| {
                y0.distance(&y) <= DEDUP_RADIUS
                    || accepts_orthogonal(f, u, &e.nearest(&(&y + y0).scaled(0.5)))
            });
            if !same {
                let z = u - &y;
                out.push((y, z));
            }
        }
    }
    out
}

fn accepts_orthogonal<F: PointSet + ?Sized>(f: &F, u: &Vector, y: &Vector) -> bool {
    let z = u - y;
    y.dot(&z).abs() <= ORTHO_ACCEPT_TOL && z.distance(&f.nearest(&z)) <= ORTHO_ACCEPT_TOL
}
