//! Metric projection onto every [`ConvexSet`] variant, a slow independent
//! oracle, and the Moreau decomposition of a vector against a cone and its
//! polar.

use crate::cone::{PolyhedralCone, MEMBER_TOL};
use crate::error::{check_dim, Result};
use crate::linalg::{orthogonal_complement, Subspace, Vector};
use crate::nnls::ActiveSet;
use crate::set::ConvexSet;

/// Nearest point of `s` to `u`.
pub fn project(s: &ConvexSet, u: &Vector) -> Result<Vector> {
    u.check_dim(s.ambient_dim())?;
    Ok(match s {
        ConvexSet::Cone(c) => project_cone(c, u),
        ConvexSet::Plane { point, directions } => {
            point + &directions.project_unchecked(&(u - point))
        }
        ConvexSet::Halfspace { normal, offset } => {
            let excess = u.dot(normal) - offset;
            if excess <= 0.0 {
                u.clone()
            } else {
                u.axpy(-excess / normal.norm_sq(), normal)
            }
        }
        ConvexSet::Ball { center, radius } => {
            let d = u - center;
            let n = d.norm();
            if n <= *radius {
                u.clone()
            } else {
                center.axpy(radius / n, &d)
            }
        }
        ConvexSet::Polytope { vertices } => ActiveSet::hull(vertices).point(u),
        ConvexSet::Segment { a, b } => {
            let ab = b - a;
            let t = ((u - a).dot(&ab) / ab.norm_sq()).clamp(0.0, 1.0);
            a.axpy(t, &ab)
        }
        ConvexSet::ShiftedCone { cone, translation } => {
            translation + &project_cone(cone, &(u - translation))
        }
    })
}

/// Projection onto a polyhedral cone: nonnegative ray weights, free weights on
/// the lineality basis.
pub fn project_cone(c: &PolyhedralCone, u: &Vector) -> Vector {
    if c.is_full() {
        return u.clone();
    }
    let mut cols: Vec<Vector> = c.lineality().basis().to_vec();
    let n_free = cols.len();
    cols.extend(c.rays().iter().cloned());
    ActiveSet::cone(&cols, n_free).point(u)
}

/// Outcome of the projected-gradient oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleProjection {
    pub point: Vector,
    pub iterations: usize,
    /// Set when successive iterates still moved more than
    /// [`ORACLE_MOVE_TOL`] at the end of the budget.
    pub not_converged: bool,
}

pub const ORACLE_BUDGET: usize = 100_000;
pub const ORACLE_MOVE_TOL: f64 = 1e-7;
const ORACLE_STOP: f64 = 1e-15;

/// Slow projection by projected-gradient descent on `½‖x − u‖²`, written in
/// the natural parameters of each variant (cone coefficients, convex weights,
/// segment parameter) so that it shares no code with [`project`].
pub fn project_oracle(s: &ConvexSet, u: &Vector) -> Result<OracleProjection> {
    u.check_dim(s.ambient_dim())?;
    Ok(match s {
        ConvexSet::Cone(c) => cone_oracle(c, u),
        ConvexSet::ShiftedCone { cone, translation } => {
            let mut r = cone_oracle(cone, &(u - translation));
            r.point = translation + &r.point;
            r
        }
        ConvexSet::Halfspace { normal, offset } => {
            // halfspace = foot + {x·n ≤ 0}
            let unit = normal.scaled(1.0 / normal.norm());
            let foot = unit.scaled(offset / normal.norm());
            let tangent = orthogonal_complement(
                &Subspace::span(normal.dim(), std::slice::from_ref(&unit)).expect("same dim"),
            );
            let mut cols = tangent.basis().to_vec();
            let n_free = cols.len();
            cols.push(-&unit);
            let mut r = coefficient_pgd(&cols, n_free, &(u - &foot), Feasible::Orthant);
            r.point = &foot + &r.point;
            r
        }
        ConvexSet::Plane { point, directions } => {
            let cols = directions.basis().to_vec();
            let n_free = cols.len();
            let mut r = coefficient_pgd(&cols, n_free, &(u - point), Feasible::Orthant);
            r.point = point + &r.point;
            r
        }
        ConvexSet::Polytope { vertices } => coefficient_pgd(vertices, 0, u, Feasible::Simplex),
        ConvexSet::Segment { a, b } => {
            let cols = [a.clone(), b.clone()];
            coefficient_pgd(&cols, 0, u, Feasible::Simplex)
        }
        ConvexSet::Ball { center, radius } => ball_oracle(center, *radius, u),
    })
}

fn cone_oracle(c: &PolyhedralCone, u: &Vector) -> OracleProjection {
    let mut cols: Vec<Vector> = c.lineality().basis().to_vec();
    let n_free = cols.len();
    cols.extend(c.rays().iter().cloned());
    coefficient_pgd(&cols, n_free, u, Feasible::Orthant)
}

#[derive(Clone, Copy)]
enum Feasible {
    /// weights past the free prefix are clamped at zero
    Orthant,
    /// all weights on the probability simplex
    Simplex,
}

/// Euclidean projection onto the probability simplex (sort-based).
fn simplex_clamp(w: &mut [f64]) {
    let mut sorted = w.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (k, &s) in sorted.iter().enumerate() {
        cum += s;
        let t = (cum - 1.0) / (k + 1) as f64;
        if s - t > 0.0 {
            theta = t;
        }
    }
    w.iter_mut().for_each(|x| *x = (*x - theta).max(0.0));
}

/// Largest eigenvalue of AᵀA by power iteration, capped by the trace.
fn lipschitz(cols: &[Vector]) -> f64 {
    let m = cols.len();
    let trace: f64 = cols.iter().map(|a| a.norm_sq()).sum();
    // uneven start weights: a uniform start can sit in the null space
    let mut w: Vec<f64> = (0..m).map(|i| 1.0 + 0.37 * i as f64).collect();
    let mut lambda = 0.0;
    for _ in 0..200 {
        let n = w.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n == 0.0 {
            return trace.max(1e-12);
        }
        w.iter_mut().for_each(|v| *v /= n);
        let x = cols
            .iter()
            .zip(&w)
            .fold(Vector::zeros(cols[0].dim()), |acc, (a, &wi)| {
                acc.axpy(wi, a)
            });
        w = cols.iter().map(|a| a.dot(&x)).collect();
        lambda = w.iter().map(|v| v * v).sum::<f64>().sqrt();
    }
    (lambda * 1.05).min(trace).max(1e-12)
}

fn coefficient_pgd(
    cols: &[Vector],
    n_free: usize,
    u: &Vector,
    feasible: Feasible,
) -> OracleProjection {
    let dim = u.dim();
    if cols.is_empty() {
        return OracleProjection {
            point: Vector::zeros(dim),
            iterations: 0,
            not_converged: false,
        };
    }
    let step = 1.0 / lipschitz(cols);
    let m = cols.len();
    let mut w = vec![0.0; m];
    if let Feasible::Simplex = feasible {
        w.iter_mut().for_each(|x| *x = 1.0 / m as f64);
    }
    let combine = |w: &[f64]| {
        cols.iter()
            .zip(w)
            .fold(Vector::zeros(dim), |acc, (a, &wi)| acc.axpy(wi, a))
    };
    let clamp = |w: &mut Vec<f64>| match feasible {
        Feasible::Orthant => w[n_free..].iter_mut().for_each(|x| *x = x.max(0.0)),
        Feasible::Simplex => simplex_clamp(w),
    };
    // accelerated projected gradient, momentum dropped whenever it points
    // uphill
    let mut x = combine(&w);
    let mut look = w.clone();
    let mut t = 1.0f64;
    let mut last_move = f64::INFINITY;
    let mut iterations = 0;
    while iterations < ORACLE_BUDGET {
        iterations += 1;
        let r = &combine(&look) - u;
        let mut next_w: Vec<f64> = look
            .iter()
            .zip(cols)
            .map(|(wi, a)| wi - step * a.dot(&r))
            .collect();
        clamp(&mut next_w);
        let uphill: f64 = look
            .iter()
            .zip(&next_w)
            .zip(&w)
            .map(|((y, n), o)| (y - n) * (n - o))
            .sum();
        let next_t = (1.0 + (1.0 + 4.0 * t * t).sqrt()) / 2.0;
        let beta = if uphill > 0.0 {
            0.0
        } else {
            (t - 1.0) / next_t
        };
        t = if uphill > 0.0 { 1.0 } else { next_t };
        look = next_w
            .iter()
            .zip(&w)
            .map(|(n, o)| n + beta * (n - o))
            .collect();
        w = next_w;
        let next = combine(&w);
        last_move = next.distance(&x);
        x = next;
        if last_move <= ORACLE_STOP * (1.0 + u.norm()) {
            break;
        }
    }
    OracleProjection {
        point: x,
        iterations,
        not_converged: last_move > ORACLE_MOVE_TOL,
    }
}

fn ball_oracle(center: &Vector, radius: f64, u: &Vector) -> OracleProjection {
    let mut x = center.clone();
    let mut last_move = f64::INFINITY;
    let mut iterations = 0;
    while iterations < ORACLE_BUDGET {
        iterations += 1;
        // half step on ½‖x − u‖², then pull back radially
        let y = x.axpy(-0.5, &(&x - u));
        let d = &y - center;
        let n = d.norm();
        let next = if n <= radius {
            y
        } else {
            center.axpy(radius / n, &d)
        };
        last_move = next.distance(&x);
        x = next;
        if last_move <= ORACLE_STOP * (1.0 + u.norm()) {
            break;
        }
    }
    OracleProjection {
        point: x,
        iterations,
        not_converged: last_move > ORACLE_MOVE_TOL,
    }
}

/// Split of `u` into its projections on a cone and on the polar cone.
#[derive(Debug, Clone, PartialEq)]
pub struct MoreauDecomposition {
    pub u: Vector,
    /// Component in the cone.
    pub y: Vector,
    /// Component in the polar cone.
    pub z: Vector,
    /// `‖u − y − z‖`
    pub residual_sum: f64,
    /// `|y·z|`
    pub residual_orth: f64,
}

impl MoreauDecomposition {
    /// Checks the decomposition invariants against `c`.
    pub fn is_valid(&self, c: &PolyhedralCone, tol: f64) -> bool {
        let scale = 1.0 + self.u.norm();
        c.contains_unchecked(&self.y, MEMBER_TOL.max(tol))
            && c.polar().contains_unchecked(&self.z, MEMBER_TOL.max(tol))
            && self.residual_sum <= tol * scale
            && self.residual_orth <= tol * (1.0 + self.u.norm_sq())
    }
}

/// Projects `u` onto `c` and onto its polar.
pub fn moreau_decompose(c: &PolyhedralCone, u: &Vector) -> Result<MoreauDecomposition> {
    check_dim(c.ambient_dim(), u.dim())?;
    let y = project_cone(c, u);
    let z = project_cone(&c.polar(), u);
    let residual_sum = (&(u - &y) - &z).norm();
    let residual_orth = y.dot(&z).abs();
    Ok(MoreauDecomposition {
        u: u.clone(),
        y,
        z,
        residual_sum,
        residual_orth,
    })
}
