//! Named set pairs: the counterexamples that show each hypothesis is needed,
//! the planar-cone example for the face separation, and a few genuine polar
//! pairs.

use crate::cone::PolyhedralCone;
use crate::error::Result;
use crate::linalg::{Subspace, Vector};
use crate::set::ConvexSet;

use super::pairs::{
    check_pair, classify_complementary_planes, classify_polar_pair, PairVerdict, Theorem,
    WitnessCode,
};
use super::sampling::Sampler;
use super::search::SearchBudget;
use super::separation::{hyperplane_separates, separate_face};
use super::{Parabola, PointSet};

/// One side of a fixture pair.
#[derive(Debug, Clone, PartialEq)]
pub enum FixtureSet {
    Convex(ConvexSet),
    Parabola,
}

impl FixtureSet {
    pub fn describe(&self) -> String {
        match self {
            FixtureSet::Convex(s) => s.kind().to_string(),
            FixtureSet::Parabola => "parabola y = x^2".to_string(),
        }
    }
}

impl PointSet for FixtureSet {
    fn ambient_dim(&self) -> usize {
        match self {
            FixtureSet::Convex(s) => PointSet::ambient_dim(s),
            FixtureSet::Parabola => PointSet::ambient_dim(&Parabola),
        }
    }

    fn nearest(&self, u: &Vector) -> Vector {
        match self {
            FixtureSet::Convex(s) => s.nearest(u),
            FixtureSet::Parabola => Parabola.nearest(u),
        }
    }

    fn reference_points(&self) -> Vec<Vector> {
        match self {
            FixtureSet::Convex(s) => PointSet::reference_points(s),
            FixtureSet::Parabola => Parabola.reference_points(),
        }
    }

    fn as_convex(&self) -> Option<&ConvexSet> {
        match self {
            FixtureSet::Convex(s) => Some(s),
            FixtureSet::Parabola => None,
        }
    }
}

/// An expected outcome recorded with a fixture.
#[derive(Debug, Clone, PartialEq)]
pub enum Expectation {
    /// The sampled check of `theorem` holds (`None`) or fails with the code.
    Verdict(Theorem, Option<WitnessCode>),
    /// Exact polar-pair classification of the sets as described (an open
    /// set stored through its closure is never part of a polar pair).
    PolarPair(bool),
    /// Exact complementary-plane classification.
    ComplementaryPlanes(bool),
    /// The face separation succeeds; `separates_polar` records whether the
    /// same hyperplane also separates the cone from its polar.
    FaceSeparation { separates_polar: bool },
}

impl Expectation {
    pub fn label(&self) -> String {
        match self {
            Expectation::Verdict(t, None) => format!("theorem {} holds", t.number()),
            Expectation::Verdict(t, Some(code)) => {
                format!("theorem {} fails with {code}", t.number())
            }
            Expectation::PolarPair(b) => format!("polar pair: {b}"),
            Expectation::ComplementaryPlanes(b) => format!("complementary planes: {b}"),
            Expectation::FaceSeparation { separates_polar } => {
                format!("face separation succeeds, separates cone and polar: {separates_polar}")
            }
        }
    }
}

/// Alternative reading of a face ray, kept next to the canonical one.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceReading {
    pub ray: Vector,
    pub canonical: bool,
    pub note: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub e: FixtureSet,
    pub f: FixtureSet,
    /// Boundary face of `e` for the separation construction.
    pub face: Option<PolyhedralCone>,
    pub face_readings: Vec<FaceReading>,
    /// False when the sets of the remark are open and `e`, `f` hold their
    /// closures.
    pub sets_closed: bool,
    pub expectations: Vec<Expectation>,
}

/// Observed outcome for one expectation.
#[derive(Debug, Clone, PartialEq)]
pub struct FixtureCheck {
    pub expectation: Expectation,
    pub passed: bool,
    pub observed: String,
    pub verdict: Option<PairVerdict>,
}

impl Fixture {
    /// Polar classification of the described sets, accounting for openness.
    pub fn polar_classification(&self) -> Option<bool> {
        classify_polar_pair(&self.e, &self.f).map(|p| p && self.sets_closed)
    }

    /// Complementary-plane classification; a parabola is never a plane.
    pub fn plane_classification(&self) -> Option<bool> {
        match (&self.e, &self.f) {
            (FixtureSet::Parabola, _) | (_, FixtureSet::Parabola) => Some(false),
            _ => classify_complementary_planes(&self.e, &self.f),
        }
    }

    /// Evaluates every expectation.
    pub fn run(
        &self,
        sampler: &Sampler,
        n_samples: usize,
        budget: &SearchBudget,
    ) -> Result<Vec<FixtureCheck>> {
        let mut out = Vec::new();
        for exp in &self.expectations {
            let check = match exp {
                Expectation::Verdict(theorem, code) => {
                    let v = check_pair(*theorem, &self.e, &self.f, sampler, n_samples, budget)?;
                    let passed = v.property_holds == code.is_none() && v.witness_detail == *code;
                    let observed = match v.witness_detail {
                        None => "holds".to_string(),
                        Some(c) => c.to_string(),
                    };
                    FixtureCheck {
                        expectation: exp.clone(),
                        passed,
                        observed,
                        verdict: Some(v),
                    }
                }
                Expectation::PolarPair(want) => {
                    let got = self.polar_classification();
                    FixtureCheck {
                        expectation: exp.clone(),
                        passed: got == Some(*want),
                        observed: got.map_or_else(|| "n/a".to_string(), |b| b.to_string()),
                        verdict: None,
                    }
                }
                Expectation::ComplementaryPlanes(want) => {
                    let got = self.plane_classification();
                    FixtureCheck {
                        expectation: exp.clone(),
                        passed: got == Some(*want),
                        observed: got.map_or_else(|| "n/a".to_string(), |b| b.to_string()),
                        verdict: None,
                    }
                }
                Expectation::FaceSeparation { separates_polar } => {
                    let c = self.e.as_convex().and_then(ConvexSet::as_cone);
                    let (passed, observed) = match (c, &self.face) {
                        (Some(c), Some(b)) => match separate_face(c, b) {
                            Ok(s) => {
                                let polar = hyperplane_separates(&s.normal, c, &c.polar(), 1e-9);
                                let ok =
                                    s.contains_b && s.strict_sides && polar == *separates_polar;
                                (ok, format!("separates cone and polar: {polar}"))
                            }
                            Err(err) => (false, err.to_string()),
                        },
                        _ => (false, "fixture has no cone and face".to_string()),
                    };
                    FixtureCheck {
                        expectation: exp.clone(),
                        passed,
                        observed,
                        verdict: None,
                    }
                }
            };
            out.push(check);
        }
        Ok(out)
    }
}

pub const FIXTURE_NAMES: [&str; 8] = [
    "remark2_open_quadrants",
    "remark3_axis_intervals",
    "remark4_halfplanes",
    "remark5_parabola_line",
    "example_s3_planar_cone",
    "polar_orthant",
    "polar_halfplane_ray",
    "polar_s3_example",
];

fn v(c: &[f64]) -> Vector {
    Vector::from_slice(c)
}

fn cone(dim: usize, rays: &[Vector], lineality: &[Vector]) -> PolyhedralCone {
    PolyhedralCone::from_generators(dim, rays, lineality).expect("fixture data is valid")
}

fn set(c: PolyhedralCone) -> FixtureSet {
    FixtureSet::Convex(ConvexSet::cone(c))
}

/// The planar cone `{(x, y, 0) : x ≥ 3|y|}` of ℝ³.
fn planar_cone() -> PolyhedralCone {
    cone(3, &[v(&[3.0, 1.0, 0.0]), v(&[3.0, -1.0, 0.0])], &[])
}

fn base(name: &'static str, description: &'static str, e: FixtureSet, f: FixtureSet) -> Fixture {
    Fixture {
        name,
        description,
        e,
        f,
        face: None,
        face_readings: Vec::new(),
        sets_closed: true,
        expectations: Vec::new(),
    }
}

fn polar_pair(name: &'static str, description: &'static str, c: PolyhedralCone) -> Fixture {
    let polar = c.polar();
    Fixture {
        expectations: vec![
            Expectation::Verdict(Theorem::ProjectionSum, None),
            Expectation::Verdict(Theorem::OrthogonalProjections, None),
            Expectation::Verdict(Theorem::UniqueOrthogonalSum, None),
            Expectation::PolarPair(true),
        ],
        ..base(name, description, set(c), set(polar))
    }
}

/// Builds the named fixture.
pub fn fixture(name: &str) -> Option<Fixture> {
    let name: &'static str = FIXTURE_NAMES.iter().find(|n| **n == name)?;
    let fx = match name {
        "remark2_open_quadrants" => {
            let q1 = PolyhedralCone::nonnegative_orthant(2);
            let q3 = q1.polar();
            Fixture {
                sets_closed: false,
                expectations: vec![
                    Expectation::Verdict(Theorem::OrthogonalProjections, None),
                    Expectation::PolarPair(false),
                ],
                ..base(
                    name,
                    "open first and third quadrants, stored through their closures; the sum is the plane and \
                     the projections of the closures are orthogonal, yet the open sets are not polar cones",
                    set(q1),
                    set(q3),
                )
            }
        }
        "remark3_axis_intervals" => {
            let e = ConvexSet::segment(v(&[-1.0, 0.0]), v(&[2.0, 0.0])).expect("valid segment");
            let f = ConvexSet::segment(v(&[0.0, -1.0]), v(&[0.0, 1.0])).expect("valid segment");
            Fixture {
                expectations: vec![
                    Expectation::Verdict(Theorem::OrthogonalProjections, Some(WitnessCode::SumMismatch)),
                    Expectation::Verdict(Theorem::ProjectionSum, Some(WitnessCode::SumMismatch)),
                ],
                ..base(
                    name,
                    "closed intervals on the two axes; projections are always orthogonal but the sum is a \
                     rectangle",
                    FixtureSet::Convex(e),
                    FixtureSet::Convex(f),
                )
            }
        }
        "remark4_halfplanes" => {
            let upper = cone(2, &[v(&[0.0, 1.0])], &[v(&[1.0, 0.0])]);
            let lower = cone(2, &[v(&[0.0, -1.0])], &[v(&[1.0, 0.0])]);
            Fixture {
                expectations: vec![
                    Expectation::Verdict(Theorem::UniqueOrthogonalSum, Some(WitnessCode::NonUnique)),
                    Expectation::PolarPair(false),
                ],
                ..base(
                    name,
                    "upper and lower closed halfplanes; orthogonal decompositions exist but are not unique",
                    set(upper),
                    set(lower),
                )
            }
        }
        "remark5_parabola_line" => {
            let axis = ConvexSet::plane(
                v(&[0.0, 0.0]),
                Subspace::span(2, &[v(&[0.0, 1.0])]).expect("unit"),
            )
            .expect("valid plane");
            Fixture {
                expectations: vec![
                    Expectation::Verdict(Theorem::UniqueSum, None),
                    Expectation::ComplementaryPlanes(false),
                ],
                ..base(
                    name,
                    "the y-axis and the parabola y = x^2; every vector is uniquely a sum, yet the parabola is \
                     not convex and the pair is not a pair of complementary planes",
                    FixtureSet::Convex(axis),
                    FixtureSet::Parabola,
                )
            }
        }
        "example_s3_planar_cone" => {
            let c = planar_cone();
            let polar = c.polar();
            Fixture {
                face: Some(cone(3, &[v(&[3.0, 1.0, 0.0])], &[])),
                face_readings: vec![
                    FaceReading {
                        ray: v(&[3.0, 1.0, 0.0]),
                        canonical: true,
                        note: "boundary ray of the cone; gives D = {(-y/3, y, z) : y >= 0} and S = (1,-3,0)^perp",
                    },
                    FaceReading {
                        ray: v(&[1.0, 3.0, 0.0]),
                        canonical: false,
                        note: "printed reading {(y, 3y, 0)}; not contained in the cone",
                    },
                ],
                expectations: vec![Expectation::FaceSeparation { separates_polar: false }],
                ..base(
                    name,
                    "planar cone x >= 3|y| in the plane z = 0 with a boundary ray as face; the separating \
                     plane does not separate the cone from its polar",
                    set(c),
                    set(polar),
                )
            }
        }
        "polar_orthant" => polar_pair(
            name,
            "nonnegative orthant of R^3 and the nonpositive orthant",
            PolyhedralCone::nonnegative_orthant(3),
        ),
        "polar_halfplane_ray" => polar_pair(
            name,
            "halfplane x <= 0 of R^2 and the ray through (1, 0)",
            cone(2, &[v(&[-1.0, 0.0])], &[v(&[0.0, 1.0])]),
        ),
        "polar_s3_example" => polar_pair(
            name,
            "planar cone x >= 3|y|, z = 0 and its polar x <= -|y|/3",
            planar_cone(),
        ),
        _ => return None,
    };
    Some(fx)
}

/// The whole catalog in [`FIXTURE_NAMES`] order.
pub fn fixtures() -> Vec<Fixture> {
    FIXTURE_NAMES
        .iter()
        .map(|n| fixture(n).expect("every listed name has a fixture"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_complete() {
        let all = fixtures();
        assert_eq!(all.len(), FIXTURE_NAMES.len());
        for (f, n) in all.iter().zip(FIXTURE_NAMES) {
            assert_eq!(f.name, n);
        }
        assert!(fixture("no_such_fixture").is_none());
    }

    #[test]
    fn printed_face_reading_is_not_a_face() {
        let fx = fixture("example_s3_planar_cone").unwrap();
        let c =
            fx.e.as_convex()
                .and_then(ConvexSet::as_cone)
                .unwrap()
                .clone();
        for r in &fx.face_readings {
            assert_eq!(c.contains(&r.ray, 1e-9).unwrap(), r.canonical);
        }
    }

    #[test]
    fn polar_fixture_of_planar_cone() {
        let fx = fixture("polar_s3_example").unwrap();
        let polar = fx.f.as_convex().and_then(ConvexSet::as_cone).unwrap();
        // x ≤ −|y|/3 with z free
        let expected =
            PolyhedralCone::from_constraints(3, &[v(&[3.0, 1.0, 0.0]), v(&[3.0, -1.0, 0.0])], &[])
                .unwrap();
        assert!(polar.cones_equal(&expected, 1e-12).unwrap());
        assert!(polar.contains(&v(&[-1.0, 3.0, 7.0]), 1e-9).unwrap());
        assert!(!polar.contains(&v(&[-1.0, 3.1, 0.0]), 1e-9).unwrap());
    }

    #[test]
    fn every_fixture_meets_its_expectations() {
        let sampler = Sampler::new(0);
        let budget = SearchBudget::default();
        for fx in fixtures() {
            for check in fx.run(&sampler, 60, &budget).unwrap() {
                assert!(
                    check.passed,
                    "{}: {:?} observed {}",
                    fx.name, check.expectation, check.observed
                );
            }
        }
    }
}
