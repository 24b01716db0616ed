//! Polyhedral closed convex cones held in both representations.
//!
//! A [`PolyhedralCone`] always stores a synced pair:
//!
//! * generators: unit extreme rays plus an orthonormal lineality basis, and
//! * constraints: unit facet normals `n` (meaning `x·n ≤ 0`) plus an
//!   orthonormal basis of the equality normals (`x·m = 0`).
//!
//! The constraint side of a cone is exactly the generator side of its polar,
//! so polarity is a swap of the two representations. Both sides are produced
//! by the double-description routine in [`crate::dd`], which also makes them
//! irredundant.

use crate::dd::h_to_v;
use crate::error::{check_dim, GeomError, Result};
use crate::linalg::{orthogonal_complement, orthonormal_basis, Subspace, Vector};

/// Strictness margin for relative-interior tests.
pub const STRICT_TOL: f64 = 1e-9;

/// Default membership tolerance.
pub const MEMBER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralCone {
    ambient_dim: usize,
    rays: Vec<Vector>,
    lineality: Subspace,
    facet_normals: Vec<Vector>,
    equalities: Subspace,
}

impl PolyhedralCone {
    /// `Cl Pos(rays) + span(lineality)`.
    pub fn from_generators(
        ambient_dim: usize,
        rays: &[Vector],
        lineality: &[Vector],
    ) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(GeomError::ZeroDimension);
        }
        for r in rays.iter().chain(lineality) {
            r.check_dim(ambient_dim)?;
        }
        let lin = orthonormal_basis(ambient_dim, lineality)?;
        let (facets, eq) = h_to_v(ambient_dim, rays, &lin);
        let (rays, lineality) = h_to_v(ambient_dim, &facets, &eq);
        Ok(PolyhedralCone {
            ambient_dim,
            rays,
            lineality,
            facet_normals: facets,
            equalities: eq,
        })
    }

    /// `{x : x·n ≤ 0 for every n in normals, x·m = 0 for every m in equalities}`.
    pub fn from_constraints(
        ambient_dim: usize,
        normals: &[Vector],
        equalities: &[Vector],
    ) -> Result<Self> {
        Ok(Self::from_generators(ambient_dim, normals, equalities)?.polar())
    }

    /// The cone `{o}`.
    pub fn zero(ambient_dim: usize) -> Self {
        Self::from_generators(ambient_dim, &[], &[]).expect("positive dimension")
    }

    /// The whole space ℝⁿ.
    pub fn full(ambient_dim: usize) -> Self {
        Self::zero(ambient_dim).polar()
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        Self::from_generators(s.ambient_dim(), &[], s.basis()).expect("consistent dimensions")
    }

    /// The nonnegative orthant of ℝⁿ.
    pub fn nonnegative_orthant(ambient_dim: usize) -> Self {
        let axes: Vec<Vector> = (0..ambient_dim)
            .map(|i| Vector::unit(ambient_dim, i))
            .collect();
        Self::from_generators(ambient_dim, &axes, &[]).expect("consistent dimensions")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Unit extreme rays, orthogonal to the lineality space.
    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn lineality(&self) -> &Subspace {
        &self.lineality
    }

    /// Unit facet normals `n`, each describing the inequality `x·n ≤ 0`.
    pub fn facet_normals(&self) -> &[Vector] {
        &self.facet_normals
    }

    /// Orthonormal basis of the equality normals.
    pub fn equalities(&self) -> &Subspace {
        &self.equalities
    }

    /// All generators: rays followed by both signs of each lineality vector.
    pub fn generators(&self) -> Vec<Vector> {
        let mut out = self.rays.clone();
        for b in self.lineality.basis() {
            out.push(b.clone());
            out.push(-b);
        }
        out
    }

    /// Sum of the rays: a point of the relative interior (the origin when the
    /// cone is a subspace).
    pub fn interior_direction(&self) -> Vector {
        self.rays
            .iter()
            .fold(Vector::zeros(self.ambient_dim), |acc, r| &acc + r)
    }

    /// `C°`. The representations swap roles.
    pub fn polar(&self) -> PolyhedralCone {
        PolyhedralCone {
            ambient_dim: self.ambient_dim,
            rays: self.facet_normals.clone(),
            lineality: self.equalities.clone(),
            facet_normals: self.rays.clone(),
            equalities: self.lineality.clone(),
        }
    }

    /// `Lin C = C ∩ (−C)`.
    pub fn lineality_space(&self) -> Subspace {
        self.lineality.clone()
    }

    /// Linear span of the cone.
    pub fn span_of(&self) -> Subspace {
        let gens: Vec<Vector> = self
            .rays
            .iter()
            .chain(self.lineality.basis())
            .cloned()
            .collect();
        orthonormal_basis(self.ambient_dim, &gens).expect("consistent dimensions")
    }

    pub fn contains(&self, u: &Vector, tol: f64) -> Result<bool> {
        u.check_dim(self.ambient_dim)?;
        Ok(self.contains_unchecked(u, tol))
    }

    pub(crate) fn contains_unchecked(&self, u: &Vector, tol: f64) -> bool {
        self.facet_normals.iter().all(|n| u.dot(n) <= tol)
            && self
                .equalities
                .basis()
                .iter()
                .all(|m| u.dot(m).abs() <= tol)
    }

    /// Largest constraint violation of `u` (zero for members).
    pub fn violation(&self, u: &Vector) -> f64 {
        let ineq = self
            .facet_normals
            .iter()
            .map(|n| u.dot(n))
            .fold(0.0, f64::max);
        let eq = self
            .equalities
            .basis()
            .iter()
            .map(|m| u.dot(m).abs())
            .fold(0.0, f64::max);
        ineq.max(eq)
    }

    /// Subspace test: the cone has no rays outside its lineality space.
    pub fn is_subspace(&self) -> bool {
        let by_lineality = self.rays.is_empty();
        // o ∈ Rint C through the strict-inequality route
        let by_interior = self.facet_normals.is_empty();
        debug_assert_eq!(by_lineality, by_interior);
        by_lineality
    }

    /// Relative-interior membership.
    ///
    /// For a subspace this is plain membership. Otherwise `u` must lie in the
    /// span and satisfy `u·v < 0` strictly for every ray `v` of the polar
    /// outside its lineality space; those rays are the facet normals.
    pub fn in_relative_interior(&self, u: &Vector) -> Result<bool> {
        u.check_dim(self.ambient_dim)?;
        if self.is_subspace() {
            return Ok(self.contains_unchecked(u, MEMBER_TOL));
        }
        let in_span = self
            .equalities
            .basis()
            .iter()
            .all(|m| u.dot(m).abs() <= MEMBER_TOL);
        Ok(in_span && self.facet_normals.iter().all(|v| u.dot(v) < -STRICT_TOL))
    }

    /// Closure of the Minkowski sum.
    pub fn cone_sum(&self, other: &PolyhedralCone) -> Result<PolyhedralCone> {
        check_dim(self.ambient_dim, other.ambient_dim)?;
        let rays: Vec<Vector> = self.rays.iter().chain(&other.rays).cloned().collect();
        let lin: Vec<Vector> = self
            .lineality
            .basis()
            .iter()
            .chain(other.lineality.basis())
            .cloned()
            .collect();
        PolyhedralCone::from_generators(self.ambient_dim, &rays, &lin)
    }

    /// Intersection by concatenating constraint systems.
    pub fn intersect(&self, other: &PolyhedralCone) -> Result<PolyhedralCone> {
        check_dim(self.ambient_dim, other.ambient_dim)?;
        let normals: Vec<Vector> = self
            .facet_normals
            .iter()
            .chain(&other.facet_normals)
            .cloned()
            .collect();
        let eq: Vec<Vector> = self
            .equalities
            .basis()
            .iter()
            .chain(other.equalities.basis())
            .cloned()
            .collect();
        PolyhedralCone::from_constraints(self.ambient_dim, &normals, &eq)
    }

    /// Mutual containment of generators at tolerance `tol`.
    pub fn cones_equal(&self, other: &PolyhedralCone, tol: f64) -> Result<bool> {
        check_dim(self.ambient_dim, other.ambient_dim)?;
        let within = |a: &PolyhedralCone, b: &PolyhedralCone| {
            a.generators().iter().all(|g| b.contains_unchecked(g, tol))
        };
        Ok(within(self, other) && within(other, self))
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_trivial()
    }

    pub fn is_full(&self) -> bool {
        self.lineality.is_full()
    }

    /// Rebuilds the generators from the constraint side alone.
    pub fn rebuilt_from_constraints(&self) -> PolyhedralCone {
        PolyhedralCone::from_constraints(
            self.ambient_dim,
            &self.facet_normals,
            self.equalities.basis(),
        )
        .expect("consistent dimensions")
    }

    /// Orthogonal complement of the span, as used by subspace criteria.
    pub fn span_complement(&self) -> Subspace {
        orthogonal_complement(&self.span_of())
    }
}

/// `Cl Pos(points)`; the empty set yields `{o}`.
pub fn positive_hull(points: &[Vector], ambient_dim: usize) -> Result<PolyhedralCone> {
    PolyhedralCone::from_generators(ambient_dim, points, &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::from_slice(c)
    }

    fn planar_example() -> PolyhedralCone {
        positive_hull(&[v(&[3.0, 1.0, 0.0]), v(&[3.0, -1.0, 0.0])], 3).unwrap()
    }

    #[test]
    fn orthant_hull() {
        let c = positive_hull(&[v(&[1.0, 0.0]), v(&[0.0, 1.0])], 2).unwrap();
        assert!(c
            .cones_equal(&PolyhedralCone::nonnegative_orthant(2), 1e-12)
            .unwrap());
        assert_eq!(c.facet_normals().len(), 2);
        assert!(c.lineality().is_trivial());
    }

    #[test]
    fn empty_hull_is_origin() {
        let c = positive_hull(&[], 3).unwrap();
        assert!(c.rays().is_empty());
        assert!(c.lineality().is_trivial());
        assert!(c.equalities().is_full());
        assert!(c.contains(&Vector::zeros(3), 0.0).unwrap());
        assert!(!c.contains(&v(&[0.0, 0.0, 1e-3]), 1e-9).unwrap());
    }

    #[test]
    fn planar_cone_membership() {
        let c = planar_example();
        assert!(c.contains(&v(&[3.0, 0.0, 0.0]), 1e-9).unwrap());
        assert!(!c.contains(&v(&[0.0, 0.0, 1.0]), 1e-9).unwrap());
        assert!(c.contains(&v(&[3.0, 1.0, 0.0]), 1e-9).unwrap());
        assert!(!c.contains(&v(&[3.0, 1.1, 0.0]), 1e-9).unwrap());
    }

    #[test]
    fn hull_rejects_dimension_mismatch() {
        assert!(matches!(
            positive_hull(&[v(&[1.0, 0.0])], 3),
            Err(GeomError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn orthant_polar_is_negative_orthant() {
        let p = PolyhedralCone::nonnegative_orthant(2).polar();
        let neg = positive_hull(&[v(&[-1.0, 0.0]), v(&[0.0, -1.0])], 2).unwrap();
        assert!(p.cones_equal(&neg, 1e-12).unwrap());
    }

    #[test]
    fn planar_cone_polar() {
        // C° = {x ≤ −|y|/3}, z free
        let p = planar_example().polar();
        let expect = PolyhedralCone::from_constraints(
            3,
            &[v(&[1.0, 1.0 / 3.0, 0.0]), v(&[1.0, -1.0 / 3.0, 0.0])],
            &[],
        )
        .unwrap();
        assert!(p.cones_equal(&expect, 1e-12).unwrap());
        assert!(p.contains(&v(&[-1.0, 3.0, 42.0]), 1e-9).unwrap());
        assert!(!p.contains(&v(&[-1.0, 3.1, 0.0]), 1e-9).unwrap());
    }

    #[test]
    fn extreme_polars() {
        let full = PolyhedralCone::full(4);
        assert!(full.polar().is_zero());
        assert!(PolyhedralCone::zero(4).polar().is_full());
    }

    #[test]
    fn lineality_examples() {
        let half = PolyhedralCone::from_constraints(2, &[v(&[1.0, 0.0])], &[]).unwrap();
        let lin = half.lineality_space();
        assert_eq!(lin.rank(), 1);
        assert!(lin.contains(&v(&[0.0, 1.0]), 1e-12));
        for b in lin.basis() {
            assert!(half.contains(b, 1e-12).unwrap() && half.contains(&-b, 1e-12).unwrap());
        }
        assert!(PolyhedralCone::nonnegative_orthant(3)
            .lineality_space()
            .is_trivial());
        // x ≤ −|y|/3 leaves only the z-axis inside both C° and −C°
        let lin = planar_example().polar().lineality_space();
        assert_eq!(lin.rank(), 1);
        assert!(lin.contains(&v(&[0.0, 0.0, 1.0]), 1e-12));
    }

    #[test]
    fn span_examples() {
        let s = planar_example().span_of();
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&v(&[0.0, 1.0, 0.0]), 1e-12));
        assert!(PolyhedralCone::zero(3).span_of().is_trivial());
        let ray = positive_hull(&[v(&[1.0, 1.0])], 2).unwrap();
        let s = ray.span_of();
        assert_eq!(s.rank(), 1);
        assert!(s.contains(&v(&[-2.0, -2.0]), 1e-12));
    }

    #[test]
    fn membership_examples() {
        let q = PolyhedralCone::nonnegative_orthant(2);
        assert!(q.contains(&v(&[1.0, 2.0]), 1e-9).unwrap());
        assert!(!q.contains(&v(&[-1.0, 2.0]), 1e-9).unwrap());
        assert!(q.contains(&v(&[1.0, 2.0, 3.0]), 1e-9).is_err());
    }

    #[test]
    fn relative_interior_examples() {
        let q = PolyhedralCone::nonnegative_orthant(2);
        assert!(q.in_relative_interior(&v(&[1.0, 1.0])).unwrap());
        assert!(!q.in_relative_interior(&v(&[1.0, 0.0])).unwrap());

        let c = planar_example();
        assert!(c.in_relative_interior(&v(&[1.0, 0.0, 0.0])).unwrap());
        assert!(!c.in_relative_interior(&v(&[3.0, 1.0, 0.0])).unwrap());
        // inside the wedge but off its plane
        assert!(!c.in_relative_interior(&v(&[1.0, 0.0, 0.1])).unwrap());

        let plane =
            PolyhedralCone::from_generators(3, &[], &[v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])])
                .unwrap();
        assert!(plane.in_relative_interior(&Vector::zeros(3)).unwrap());
        assert!(PolyhedralCone::zero(2)
            .in_relative_interior(&Vector::zeros(2))
            .unwrap());
    }

    #[test]
    fn subspace_examples() {
        let plane =
            PolyhedralCone::from_generators(3, &[], &[v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])])
                .unwrap();
        assert!(plane.is_subspace());
        let half = PolyhedralCone::from_constraints(2, &[v(&[1.0, 0.0])], &[]).unwrap();
        assert!(!half.is_subspace());
        assert!(!planar_example().is_subspace());
        // a line given by two opposite rays is a subspace
        let line = positive_hull(&[v(&[1.0, 2.0]), v(&[-1.0, -2.0])], 2).unwrap();
        assert!(line.is_subspace());
        assert_eq!(line.lineality_space().rank(), 1);
    }

    #[test]
    fn sum_examples() {
        let q = PolyhedralCone::nonnegative_orthant(2);
        let s = q.cone_sum(&q.polar()).unwrap();
        assert!(s.is_full());

        let upper = PolyhedralCone::from_constraints(2, &[v(&[0.0, -1.0])], &[]).unwrap();
        let down = upper.polar();
        assert!(down
            .cones_equal(&positive_hull(&[v(&[0.0, -1.0])], 2).unwrap(), 1e-12)
            .unwrap());
        assert!(upper.cone_sum(&down).unwrap().is_full());

        let c = planar_example();
        assert!(PolyhedralCone::zero(3)
            .cone_sum(&c)
            .unwrap()
            .cones_equal(&c, 1e-12)
            .unwrap());
    }

    #[test]
    fn sum_polar_is_intersection_of_polars() {
        let a = positive_hull(&[v(&[1.0, 0.0, 0.0]), v(&[1.0, 1.0, 0.0])], 3).unwrap();
        let b = positive_hull(&[v(&[0.0, 0.0, 1.0]), v(&[-1.0, 2.0, 0.5])], 3).unwrap();
        let lhs = a.cone_sum(&b).unwrap().polar();
        let rhs = a.polar().intersect(&b.polar()).unwrap();
        assert!(lhs.cones_equal(&rhs, 1e-9).unwrap());
    }

    #[test]
    fn equality_examples() {
        let q = PolyhedralCone::nonnegative_orthant(2);
        let redundant =
            positive_hull(&[v(&[1.0, 0.0]), v(&[0.0, 1.0]), v(&[1.0, 1.0])], 2).unwrap();
        assert!(q.cones_equal(&redundant, 1e-12).unwrap());
        assert_eq!(redundant.rays().len(), 2);
        assert!(!q.cones_equal(&q.polar(), 1e-9).unwrap());
        let c = planar_example();
        assert!(c.polar().polar().cones_equal(&c, 1e-12).unwrap());
    }

    #[test]
    fn rebuild_round_trip() {
        let c = planar_example();
        assert!(c.rebuilt_from_constraints().cones_equal(&c, 1e-9).unwrap());
    }
}
