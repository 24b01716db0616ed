use std::fmt;

use crate::error::{check_dim, Result};
use crate::linalg::{Subspace, Vector};
use crate::set::ConvexSet;

use super::sampling::Sampler;
use super::search::{
    find_orthogonal_decompositions, find_sum_representations, in_sum, SearchBudget,
};
use super::PointSet;

/// Tolerance on `‖u − p_E(u) − p_F(u)‖`, relative to `1 + ‖u‖`.
pub const DECOMPOSITION_TOL: f64 = 1e-7;
/// Tolerance on `|p_E(u)·p_F(u)|`, relative to `1 + ‖u‖²`.
pub const ORTHOGONALITY_TOL: f64 = 1e-7;
const CONE_EQ_TOL: f64 = 1e-8;

/// Which characterization a verdict refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// `u = p_E(u) + p_F(u)` for every `u`.
    ProjectionSum,
    /// `E + F = ℝⁿ` and `p_E(u) ⊥ p_F(u)` for every `u`.
    OrthogonalProjections,
    /// Every `u` is uniquely `y + z` with `y ∈ E`, `z ∈ F`, `y ⊥ z`.
    UniqueOrthogonalSum,
    /// Every `u` is uniquely `y + z` with `y ∈ E`, `z ∈ F`.
    UniqueSum,
}

impl Theorem {
    pub fn number(self) -> u8 {
        match self {
            Theorem::ProjectionSum => 2,
            Theorem::OrthogonalProjections => 3,
            Theorem::UniqueOrthogonalSum => 4,
            Theorem::UniqueSum => 5,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            2 => Some(Theorem::ProjectionSum),
            3 => Some(Theorem::OrthogonalProjections),
            4 => Some(Theorem::UniqueOrthogonalSum),
            5 => Some(Theorem::UniqueSum),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessCode {
    SumMismatch,
    NotOrthogonal,
    NonUnique,
    NoRepresentation,
}

impl WitnessCode {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessCode::SumMismatch => "SUM_MISMATCH",
            WitnessCode::NotOrthogonal => "NOT_ORTHOGONAL",
            WitnessCode::NonUnique => "NON_UNIQUE",
            WitnessCode::NoRepresentation => "NO_REPRESENTATION",
        }
    }
}

impl fmt::Display for WitnessCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of a sampled pair check.
#[derive(Debug, Clone, PartialEq)]
pub struct PairVerdict {
    pub theorem: Theorem,
    pub property_holds: bool,
    /// A `u` at which the assertion fails; present iff the property fails.
    pub witness: Option<Vector>,
    pub witness_detail: Option<WitnessCode>,
    pub samples_tested: usize,
    /// Exact polar-pair classification when both sets are cones.
    pub classified_polar_pair: Option<bool>,
    /// Exact complementary-plane classification when both sets are planes.
    pub classified_complementary_planes: Option<bool>,
    /// Representations found at the witness (uniqueness checks only).
    pub evidence: Vec<(Vector, Vector)>,
}

impl PairVerdict {
    fn holds(theorem: Theorem, samples_tested: usize) -> Self {
        PairVerdict {
            theorem,
            property_holds: true,
            witness: None,
            witness_detail: None,
            samples_tested,
            classified_polar_pair: None,
            classified_complementary_planes: None,
            evidence: Vec::new(),
        }
    }

    fn fails(
        theorem: Theorem,
        samples_tested: usize,
        u: Vector,
        code: WitnessCode,
        evidence: Vec<(Vector, Vector)>,
    ) -> Self {
        PairVerdict {
            property_holds: false,
            witness: Some(u),
            witness_detail: Some(code),
            evidence,
            ..Self::holds(theorem, samples_tested)
        }
    }
}

/// Exact test whether two sets are polar cones of each other. `None` unless
/// both are cones.
pub fn classify_polar_pair<E, F>(e: &E, f: &F) -> Option<bool>
where
    E: PointSet + ?Sized,
    F: PointSet + ?Sized,
{
    let a = e.as_convex()?.as_cone()?;
    let b = f.as_convex()?.as_cone()?;
    let ok = a.cones_equal(&b.polar(), CONE_EQ_TOL).ok()?
        && b.cones_equal(&a.polar(), CONE_EQ_TOL).ok()?;
    Some(ok)
}

/// Exact complementary-plane test. `None` unless both sets are planes.
pub fn classify_complementary_planes<E, F>(e: &E, f: &F) -> Option<bool>
where
    E: PointSet + ?Sized,
    F: PointSet + ?Sized,
{
    let directions = |s: &ConvexSet| -> Option<Subspace> {
        match s {
            ConvexSet::Plane { directions, .. } => Some(directions.clone()),
            _ => None,
        }
    };
    let a = directions(e.as_convex()?)?;
    let b = directions(f.as_convex()?)?;
    let n = a.ambient_dim();
    let joined = a.join(&b).ok()?;
    Some(a.rank() + b.rank() == n && joined.is_full())
}

/// Evaluates the assertion of `theorem` at a single `u`, returning the
/// violation code and any representations found.
///
/// `sum_is_full` skips the feasibility test for `u ∈ E + F` when that is
/// already known for every `u`.
pub fn evaluate_at<E, F>(
    theorem: Theorem,
    e: &E,
    f: &F,
    u: &Vector,
    budget: &SearchBudget,
    sum_is_full: bool,
) -> Option<(WitnessCode, Vec<(Vector, Vector)>)>
where
    E: PointSet + ?Sized,
    F: PointSet + ?Sized,
{
    match theorem {
        Theorem::ProjectionSum => {
            let r = (&(u - &e.nearest(u)) - &f.nearest(u)).norm();
            (r > DECOMPOSITION_TOL * (1.0 + u.norm()))
                .then(|| (WitnessCode::SumMismatch, Vec::new()))
        }
        Theorem::OrthogonalProjections => {
            if !sum_is_full && !in_sum(e, f, u) {
                return Some((WitnessCode::SumMismatch, Vec::new()));
            }
            let d = e.nearest(u).dot(&f.nearest(u)).abs();
            (d > ORTHOGONALITY_TOL * (1.0 + u.norm_sq()))
                .then(|| (WitnessCode::NotOrthogonal, Vec::new()))
        }
        Theorem::UniqueOrthogonalSum => {
            let found = find_orthogonal_decompositions(e, f, u, budget);
            match found.len() {
                0 => Some((WitnessCode::NoRepresentation, found)),
                1 => None,
                _ => Some((WitnessCode::NonUnique, found)),
            }
        }
        Theorem::UniqueSum => {
            let found = find_sum_representations(e, f, u, budget);
            match found.len() {
                0 => Some((WitnessCode::NoRepresentation, found)),
                1 => None,
                _ => Some((WitnessCode::NonUnique, found)),
            }
        }
    }
}

fn run<E, F>(
    theorem: Theorem,
    e: &E,
    f: &F,
    sampler: &Sampler,
    n_samples: usize,
    budget: &SearchBudget,
    sum_is_full: bool,
) -> PairVerdict
where
    E: PointSet + ?Sized,
    F: PointSet + ?Sized,
{
    let samples = sampler.points(e, f, n_samples);
    for (i, u) in samples.into_iter().enumerate() {
        if let Some((code, evidence)) = evaluate_at(theorem, e, f, &u, budget, sum_is_full) {
            return PairVerdict::fails(theorem, i + 1, u, code, evidence);
        }
    }
    PairVerdict::holds(theorem, n_samples)
}

fn finish<E, F>(mut v: PairVerdict, e: &E, f: &F) -> PairVerdict
where
    E: PointSet + ?Sized,
    F: PointSet + ?Sized,
{
    v.classified_polar_pair = classify_polar_pair(e, f);
    v.classified_complementary_planes = classify_complementary_planes(e, f);
    v
}

/// Samples `u = p_E(u) + p_F(u)`.
pub fn check_decomposition_pair<E, F>(
    e: &E,
    f: &F,
    sampler: &Sampler,
    n_samples: usize,
) -> Result<PairVerdict>
where
    E: PointSet + ?Sized,
    F: PointSet + ?Sized,
{
    check_dim(e.ambient_dim(), f.ambient_dim())?;
    let v = run(
        Theorem::ProjectionSum,
        e,
        f,
        sampler,
        n_samples,
        &SearchBudget::default(),
        true,
    );
    Ok(finish(v, e, f))
}

/// Checks `E + F = ℝⁿ` (exactly through the polars when both are cones) and
/// samples orthogonality of the two projections.
pub fn check_orthogonal_projection_pair<E, F>(
    e: &E,
    f: &F,
    sampler: &Sampler,
    n_samples: usize,
) -> Result<PairVerdict>
where
    E: PointSet + ?Sized,
    F: PointSet + ?Sized,
{
    check_dim(e.ambient_dim(), f.ambient_dim())?;
    let theorem = Theorem::OrthogonalProjections;
    let cones = e
        .as_convex()
        .and_then(ConvexSet::as_cone)
        .zip(f.as_convex().and_then(ConvexSet::as_cone));
    if let Some((a, b)) = cones {
        // Cl(A + B) = ℝⁿ iff A° ∩ B° = {o}, and a convex sum with full closure is full
        let common = a.polar().intersect(&b.polar())?;
        if let Some(x) = common.generators().into_iter().next() {
            return Ok(finish(
                PairVerdict::fails(theorem, 0, x, WitnessCode::SumMismatch, Vec::new()),
                e,
                f,
            ));
        }
        let v = run(
            theorem,
            e,
            f,
            sampler,
            n_samples,
            &SearchBudget::default(),
            true,
        );
        return Ok(finish(v, e, f));
    }
    let v = run(
        theorem,
        e,
        f,
        sampler,
        n_samples,
        &SearchBudget::default(),
        false,
    );
    Ok(finish(v, e, f))
}

/// Searches for a second orthogonal decomposition at each sampled `u`.
pub fn check_unique_orthogonal_pair<E, F>(
    e: &E,
    f: &F,
    sampler: &Sampler,
    n_samples: usize,
    budget: &SearchBudget,
) -> Result<PairVerdict>
where
    E: PointSet + ?Sized,
    F: PointSet + ?Sized,
{
    check_dim(e.ambient_dim(), f.ambient_dim())?;
    let v = run(
        Theorem::UniqueOrthogonalSum,
        e,
        f,
        sampler,
        n_samples,
        budget,
        true,
    );
    Ok(finish(v, e, f))
}

/// Checks existence and searches for a second representation `u = y + z` at
/// each sampled `u`.
pub fn check_unique_sum_pair<E, F>(
    e: &E,
    f: &F,
    sampler: &Sampler,
    n_samples: usize,
    budget: &SearchBudget,
) -> Result<PairVerdict>
where
    E: PointSet + ?Sized,
    F: PointSet + ?Sized,
{
    check_dim(e.ambient_dim(), f.ambient_dim())?;
    let v = run(Theorem::UniqueSum, e, f, sampler, n_samples, budget, true);
    Ok(finish(v, e, f))
}

/// Dispatches on the theorem.
pub fn check_pair<E, F>(
    theorem: Theorem,
    e: &E,
    f: &F,
    sampler: &Sampler,
    n_samples: usize,
    budget: &SearchBudget,
) -> Result<PairVerdict>
where
    E: PointSet + ?Sized,
    F: PointSet + ?Sized,
{
    match theorem {
        Theorem::ProjectionSum => check_decomposition_pair(e, f, sampler, n_samples),
        Theorem::OrthogonalProjections => {
            check_orthogonal_projection_pair(e, f, sampler, n_samples)
        }
        Theorem::UniqueOrthogonalSum => {
            check_unique_orthogonal_pair(e, f, sampler, n_samples, budget)
        }
        Theorem::UniqueSum => check_unique_sum_pair(e, f, sampler, n_samples, budget),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::PolyhedralCone;
    use crate::theorems::Parabola;

    fn v(c: &[f64]) -> Vector {
        Vector::from_slice(c)
    }

    fn orthant() -> ConvexSet {
        ConvexSet::cone(PolyhedralCone::nonnegative_orthant(2))
    }

    #[test]
    fn orthant_and_polar_decompose() {
        let q = PolyhedralCone::nonnegative_orthant(2);
        let verdict = check_decomposition_pair(
            &ConvexSet::cone(q.clone()),
            &ConvexSet::cone(q.polar()),
            &Sampler::new(0),
            200,
        )
        .unwrap();
        assert!(verdict.property_holds);
        assert_eq!(verdict.witness, None);
        assert_eq!(verdict.classified_polar_pair, Some(true));
    }

    #[test]
    fn origin_and_whole_line() {
        let e = ConvexSet::cone(PolyhedralCone::zero(1));
        let f = ConvexSet::cone(PolyhedralCone::full(1));
        let verdict = check_decomposition_pair(&e, &f, &Sampler::new(3), 50).unwrap();
        assert!(verdict.property_holds);
        assert_eq!(verdict.classified_polar_pair, Some(true));
    }

    #[test]
    fn orthant_with_itself_fails() {
        let verdict =
            check_decomposition_pair(&orthant(), &orthant(), &Sampler::new(0), 100).unwrap();
        assert!(!verdict.property_holds);
        assert_eq!(verdict.witness_detail, Some(WitnessCode::SumMismatch));
        assert_eq!(verdict.classified_polar_pair, Some(false));
        // (1, 1) splits into (2, 2), not (1, 1)
        assert_eq!(
            evaluate_at(
                Theorem::ProjectionSum,
                &orthant(),
                &orthant(),
                &v(&[1.0, 1.0]),
                &SearchBudget::default(),
                true
            )
            .map(|w| w.0),
            Some(WitnessCode::SumMismatch)
        );
    }

    #[test]
    fn polar_pair_has_orthogonal_projections() {
        let q = PolyhedralCone::nonnegative_orthant(3);
        let verdict = check_orthogonal_projection_pair(
            &ConvexSet::cone(q.clone()),
            &ConvexSet::cone(q.polar()),
            &Sampler::new(1),
            200,
        )
        .unwrap();
        assert!(verdict.property_holds);
    }

    #[test]
    fn cone_sum_shortfall_gives_certificate() {
        let verdict =
            check_orthogonal_projection_pair(&orthant(), &orthant(), &Sampler::new(1), 10).unwrap();
        assert_eq!(verdict.witness_detail, Some(WitnessCode::SumMismatch));
        let w = verdict.witness.unwrap();
        assert!(!in_sum(&orthant(), &orthant(), &w));
    }

    #[test]
    fn complementary_axes() {
        let x = ConvexSet::plane(
            v(&[0.0, 0.0]),
            Subspace::span(2, &[v(&[1.0, 0.0])]).unwrap(),
        )
        .unwrap();
        let y = ConvexSet::plane(
            v(&[0.0, 0.0]),
            Subspace::span(2, &[v(&[0.0, 1.0])]).unwrap(),
        )
        .unwrap();
        let verdict =
            check_unique_sum_pair(&x, &y, &Sampler::new(2), 20, &SearchBudget::default()).unwrap();
        assert!(verdict.property_holds, "{verdict:?}");
        assert_eq!(verdict.classified_complementary_planes, Some(true));
    }

    #[test]
    fn overlapping_lines_are_not_unique() {
        let line = ConvexSet::plane(v(&[0.0]), Subspace::full(1)).unwrap();
        let verdict =
            check_unique_sum_pair(&line, &line, &Sampler::new(2), 5, &SearchBudget::default())
                .unwrap();
        assert!(!verdict.property_holds);
        assert_eq!(verdict.witness_detail, Some(WitnessCode::NonUnique));
        assert!(verdict.evidence.len() >= 2);
        assert_eq!(verdict.classified_complementary_planes, Some(false));
    }

    #[test]
    fn parabola_sums_are_unique() {
        let axis = ConvexSet::plane(
            v(&[0.0, 0.0]),
            Subspace::span(2, &[v(&[0.0, 1.0])]).unwrap(),
        )
        .unwrap();
        let verdict = check_unique_sum_pair(
            &axis,
            &Parabola,
            &Sampler::new(4),
            20,
            &SearchBudget::default(),
        )
        .unwrap();
        assert!(verdict.property_holds, "{verdict:?}");
        assert_eq!(verdict.classified_complementary_planes, None);
    }

    #[test]
    fn degenerate_orthogonal_split() {
        let e = ConvexSet::cone(PolyhedralCone::zero(3));
        let f = ConvexSet::cone(PolyhedralCone::full(3));
        let u = v(&[1.0, -2.0, 0.5]);
        let found = find_orthogonal_decompositions(&e, &f, &u, &SearchBudget::default());
        assert_eq!(found.len(), 1);
        assert!(found[0].0.norm() < 1e-12 && found[0].1.distance(&u) < 1e-12);
    }

    #[test]
    fn dimension_mismatch() {
        let e = ConvexSet::cone(PolyhedralCone::zero(3));
        assert!(check_decomposition_pair(&e, &orthant(), &Sampler::new(0), 1).is_err());
    }
}
