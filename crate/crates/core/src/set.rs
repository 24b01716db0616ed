//! Closed convex sets that admit a metric projection.

use crate::cone::PolyhedralCone;
use crate::error::{check_dim, GeomError, Result};
use crate::linalg::{Subspace, Vector};

/// A nonempty closed convex subset of ℝⁿ.
///
/// Only closed sets can be expressed. An open ball, for instance, has no
/// nearest point to an outside vector, and there is deliberately no variant
/// for it: [`ConvexSet::ball`] insists on a positive radius and describes
/// the closed ball.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexSet {
    Cone(PolyhedralCone),
    /// `point + directions`
    Plane {
        point: Vector,
        directions: Subspace,
    },
    /// `{x : x·normal ≤ offset}`
    Halfspace {
        normal: Vector,
        offset: f64,
    },
    Ball {
        center: Vector,
        radius: f64,
    },
    /// Convex hull of the vertices.
    Polytope {
        vertices: Vec<Vector>,
    },
    Segment {
        a: Vector,
        b: Vector,
    },
    /// `translation + cone`
    ShiftedCone {
        cone: PolyhedralCone,
        translation: Vector,
    },
}

impl ConvexSet {
    pub fn cone(c: PolyhedralCone) -> Self {
        ConvexSet::Cone(c)
    }

    pub fn plane(point: Vector, directions: Subspace) -> Result<Self> {
        check_dim(directions.ambient_dim(), point.dim())?;
        Ok(ConvexSet::Plane { point, directions })
    }

    pub fn halfspace(normal: Vector, offset: f64) -> Result<Self> {
        if normal.is_zero(0.0) {
            return Err(GeomError::InvalidSet(
                "halfspace normal must be nonzero".into(),
            ));
        }
        if !offset.is_finite() {
            return Err(GeomError::InvalidSet(
                "halfspace offset must be finite".into(),
            ));
        }
        Ok(ConvexSet::Halfspace { normal, offset })
    }

    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(GeomError::InvalidSet(format!(
                "ball radius must be positive and finite, got {radius}"
            )));
        }
        Ok(ConvexSet::Ball { center, radius })
    }

    pub fn polytope(vertices: Vec<Vector>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(GeomError::InvalidSet(
                "polytope needs at least one vertex".into(),
            ));
        };
        let dim = first.dim();
        for v in &vertices {
            v.check_dim(dim)?;
        }
        Ok(ConvexSet::Polytope { vertices })
    }

    pub fn segment(a: Vector, b: Vector) -> Result<Self> {
        check_dim(a.dim(), b.dim())?;
        if a == b {
            return Err(GeomError::InvalidSet(
                "segment endpoints must differ".into(),
            ));
        }
        Ok(ConvexSet::Segment { a, b })
    }

    pub fn shifted_cone(cone: PolyhedralCone, translation: Vector) -> Result<Self> {
        check_dim(cone.ambient_dim(), translation.dim())?;
        Ok(ConvexSet::ShiftedCone { cone, translation })
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            ConvexSet::Cone(c) => c.ambient_dim(),
            ConvexSet::Plane { point, .. } => point.dim(),
            ConvexSet::Halfspace { normal, .. } => normal.dim(),
            ConvexSet::Ball { center, .. } => center.dim(),
            ConvexSet::Polytope { vertices } => vertices[0].dim(),
            ConvexSet::Segment { a, .. } => a.dim(),
            ConvexSet::ShiftedCone { translation, .. } => translation.dim(),
        }
    }

    pub fn as_cone(&self) -> Option<&PolyhedralCone> {
        match self {
            ConvexSet::Cone(c) => Some(c),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ConvexSet::Cone(_) => "cone",
            ConvexSet::Plane { .. } => "plane",
            ConvexSet::Halfspace { .. } => "halfspace",
            ConvexSet::Ball { .. } => "ball",
            ConvexSet::Polytope { .. } => "polytope",
            ConvexSet::Segment { .. } => "segment",
            ConvexSet::ShiftedCone { .. } => "shifted_cone",
        }
    }

    /// Distance-free membership test at absolute tolerance `tol`.
    pub fn contains(&self, u: &Vector, tol: f64) -> Result<bool> {
        u.check_dim(self.ambient_dim())?;
        Ok(match self {
            ConvexSet::Cone(c) => c.contains_unchecked(u, tol),
            ConvexSet::Plane { point, directions } => directions.residual(&(u - point)) <= tol,
            ConvexSet::Halfspace { normal, offset } => {
                (u.dot(normal) - offset) / normal.norm() <= tol
            }
            ConvexSet::Ball { center, radius } => u.distance(center) <= radius + tol,
            ConvexSet::ShiftedCone { cone, translation } => {
                cone.contains_unchecked(&(u - translation), tol)
            }
            ConvexSet::Polytope { .. } | ConvexSet::Segment { .. } => {
                crate::project::project(self, u)?.distance(u) <= tol
            }
        })
    }

    /// Points that characterize the set: cone generators (both signs of the
    /// lineality basis), plane basis directions around the base point,
    /// vertices, endpoints, or axis extremes of a ball.
    pub fn reference_points(&self) -> Vec<Vector> {
        match self {
            ConvexSet::Cone(c) => {
                let mut pts = vec![Vector::zeros(c.ambient_dim())];
                pts.extend(c.generators());
                pts
            }
            ConvexSet::Plane { point, directions } => {
                let mut pts = vec![point.clone()];
                for d in directions.basis() {
                    pts.push(point + d);
                    pts.push(point - d);
                }
                pts
            }
            ConvexSet::Halfspace { normal, offset } => {
                let unit = normal.scaled(1.0 / normal.norm());
                let foot = unit.scaled(offset / normal.norm());
                let mut pts = vec![foot.clone(), &foot - &unit];
                let tangent = crate::linalg::orthogonal_complement(
                    &Subspace::span(normal.dim(), std::slice::from_ref(normal))
                        .expect("consistent dimensions"),
                );
                for d in tangent.basis() {
                    pts.push(&foot + d);
                    pts.push(&foot - d);
                }
                pts
            }
            ConvexSet::Ball { center, radius } => {
                let n = center.dim();
                let mut pts = vec![center.clone()];
                for i in 0..n {
                    let e = Vector::unit(n, i).scaled(*radius);
                    pts.push(center + &e);
                    pts.push(center - &e);
                }
                pts
            }
            ConvexSet::Polytope { vertices } => vertices.clone(),
            ConvexSet::Segment { a, b } => vec![a.clone(), b.clone()],
            ConvexSet::ShiftedCone { cone, translation } => {
                let mut pts = vec![translation.clone()];
                pts.extend(cone.generators().iter().map(|g| translation + g));
                pts
            }
        }
    }
}
