//! Executable checks of the polar-pair characterizations, the cone/face
//! separation construction, counterexample fixtures, and seeded generators.
//!
//! The pair checkers sample vectors `u` and evaluate the universally
//! quantified assertion at each one. Sampling can only refute, so whenever
//! both sets are cones (or both are planes) the verdict also carries the exact
//! algebraic classification, and callers compare the two.

mod fixtures;
mod pairs;
mod sampling;
mod search;
mod separation;

pub use fixtures::{
    fixture, fixtures, Expectation, FaceReading, Fixture, FixtureCheck, FixtureSet, FIXTURE_NAMES,
};
pub use pairs::{
    check_decomposition_pair, check_orthogonal_projection_pair, check_pair,
    check_unique_orthogonal_pair, check_unique_sum_pair, classify_complementary_planes,
    classify_polar_pair, evaluate_at, PairVerdict, Theorem, WitnessCode, DECOMPOSITION_TOL,
    ORTHOGONALITY_TOL,
};
pub use sampling::{
    gaussian_vector, random_cone, random_cone_with, random_unit, rng_from_seed, ConeRng,
    RandomConeSpec, Sampler, MAX_RANDOM_DIM, MAX_RANDOM_RAYS, SAMPLE_RADIUS,
};
pub use search::{
    alternating_projections, find_orthogonal_decompositions, find_sum_representations, in_sum,
    sum_gap, ApResult, SearchBudget, DEDUP_RADIUS, ORTHO_ACCEPT_TOL, SUM_GAP_TOL,
};
pub use separation::{
    check_face_hypothesis, hyperplane_separates, orthogonal_face_complement, separate_face,
    SeparationResult, STRICT_MARGIN,
};

use crate::linalg::Vector;
use crate::set::ConvexSet;

/// A closed set with a (possibly non-unique) nearest-point map.
///
/// Every [`ConvexSet`] is one. The trait exists so that the sum-uniqueness
/// checks can also run on the non-convex parabola of the fixtures.
pub trait PointSet {
    fn ambient_dim(&self) -> usize;
    /// A nearest point of the set to `u`; `u` has the ambient dimension.
    fn nearest(&self, u: &Vector) -> Vector;
    /// Points that probe the set's shape, used to seed structured samples.
    fn reference_points(&self) -> Vec<Vector>;
    fn as_convex(&self) -> Option<&ConvexSet> {
        None
    }
}

impl PointSet for ConvexSet {
    fn ambient_dim(&self) -> usize {
        ConvexSet::ambient_dim(self)
    }

    fn nearest(&self, u: &Vector) -> Vector {
        crate::project::project(self, u).expect("dimension checked by caller")
    }

    fn reference_points(&self) -> Vec<Vector> {
        ConvexSet::reference_points(self)
    }

    fn as_convex(&self) -> Option<&ConvexSet> {
        Some(self)
    }
}

/// The parabola `{(x, x²)}` in ℝ². Closed but not convex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Parabola;

impl Parabola {
    /// Real roots of `2x³ + (1 − 2q)x − p = 0`, the stationarity condition of
    /// `(x − p)² + (x² − q)²`.
    fn stationary_points(p: f64, q: f64) -> Vec<f64> {
        // depressed cubic x³ + a x + b = 0
        let a = (1.0 - 2.0 * q) / 2.0;
        let b = -p / 2.0;
        let disc = (b / 2.0).powi(2) + (a / 3.0).powi(3);
        let mut roots = if disc > 0.0 {
            let s = disc.sqrt();
            vec![(-b / 2.0 + s).cbrt() + (-b / 2.0 - s).cbrt()]
        } else if a == 0.0 {
            vec![0.0]
        } else {
            let r = 2.0 * (-a / 3.0).sqrt();
            let arg = ((3.0 * b) / (a * r)).clamp(-1.0, 1.0);
            let phi = arg.acos() / 3.0;
            (0..3)
                .map(|k| r * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos())
                .collect()
        };
        // Newton polish on 2x³ + (1 − 2q)x − p
        for x in &mut roots {
            for _ in 0..3 {
                let f = 2.0 * *x * *x * *x + (1.0 - 2.0 * q) * *x - p;
                let df = 6.0 * *x * *x + 1.0 - 2.0 * q;
                if df.abs() > 1e-12 {
                    *x -= f / df;
                }
            }
        }
        roots
    }
}

impl PointSet for Parabola {
    fn ambient_dim(&self) -> usize {
        2
    }

    fn nearest(&self, u: &Vector) -> Vector {
        let (p, q) = (u[0], u[1]);
        let dist = |x: f64| (x - p).powi(2) + (x * x - q).powi(2);
        let x = Self::stationary_points(p, q)
            .into_iter()
            .min_by(|a, b| dist(*a).total_cmp(&dist(*b)))
            .expect("a cubic has a real root");
        Vector::from_slice(&[x, x * x])
    }

    fn reference_points(&self) -> Vec<Vector> {
        [0.0, 1.0, -1.0, 2.0, -2.0]
            .iter()
            .map(|&x| Vector::from_slice(&[x, x * x]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola_nearest_points() {
        let p = Parabola;
        let v = |c: &[f64]| Vector::from_slice(c);
        assert!(p.nearest(&v(&[2.0, 4.0])).distance(&v(&[2.0, 4.0])) < 1e-12);
        assert!(p.nearest(&v(&[0.0, -1.0])).distance(&v(&[0.0, 0.0])) < 1e-12);
        // above the focus the nearest points are off-axis: x² = q − 1/2
        let n = p.nearest(&v(&[1e-9, 2.0]));
        assert!((n[0] - 1.5f64.sqrt()).abs() < 1e-6, "{n}");
        // brute-force comparison on a grid
        for &(a, b) in &[(0.3, 0.7), (-1.2, 3.0), (2.5, -0.5), (0.0, 0.4)] {
            let u = v(&[a, b]);
            let best = (-4000..=4000)
                .map(|i| i as f64 * 1e-3)
                .map(|x| u.distance(&v(&[x, x * x])))
                .fold(f64::INFINITY, f64::min);
            assert!((u.distance(&p.nearest(&u)) - best).abs() < 1e-5);
        }
    }
}
