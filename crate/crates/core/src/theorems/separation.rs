//! A hyperplane through a boundary face of a cone that separates the cone
//! from the part of its polar orthogonal to the face.

use rand::Rng;

use crate::cone::PolyhedralCone;
use crate::error::{check_dim, GeomError, Result};
use crate::linalg::{orthogonal_complement, Subspace, Vector};
use crate::lp::{LinearProgram, LpOutcome};

use super::sampling::rng_from_seed;

/// Smallest accepted value of `min(−e·s_C, e·s_D) / ‖e‖` for unit
/// relative-interior directions `s_C`, `s_D`.
pub const STRICT_MARGIN: f64 = 1e-7;
const FACE_TOL: f64 = 1e-9;
const SIDE_TOL: f64 = 1e-9;
const SIDE_SAMPLES: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationResult {
    /// Unit normal `e` of `S`, oriented so that `C` lies in `x·e ≤ 0`.
    pub normal: Vector,
    /// `S = e⊥`.
    pub subspace: Subspace,
    /// `D = C° ∩ B⊥`.
    pub d: PolyhedralCone,
    pub contains_b: bool,
    /// Sampled relative-interior points of `C` and `D` lie in opposite open
    /// halfspaces.
    pub strict_sides: bool,
    pub margin: f64,
}

/// Checks that `c` is not a subspace and that `b ⊆ c` lies in the relative
/// boundary of `c`.
pub fn check_face_hypothesis(c: &PolyhedralCone, b: &PolyhedralCone) -> Result<()> {
    check_dim(c.ambient_dim(), b.ambient_dim())?;
    if c.is_subspace() {
        return Err(GeomError::HypothesisViolated(
            "the cone is a subspace".into(),
        ));
    }
    if let Some(g) = b
        .generators()
        .iter()
        .find(|g| !c.contains_unchecked(g, FACE_TOL))
    {
        return Err(GeomError::HypothesisViolated(format!(
            "face generator {g} is not in the cone"
        )));
    }
    // a relative-interior point of b meets Rint c iff b ⊄ Rbd c
    if c.in_relative_interior(&b.interior_direction())? {
        return Err(GeomError::HypothesisViolated(
            "the face meets the relative interior of the cone".into(),
        ));
    }
    Ok(())
}

/// `D = C° ∩ B⊥`: the constraints of `C°` plus `x·g = 0` for every generator
/// `g` of `b`.
pub fn orthogonal_face_complement(
    c: &PolyhedralCone,
    b: &PolyhedralCone,
) -> Result<PolyhedralCone> {
    check_face_hypothesis(c, b)?;
    Ok(face_complement_unchecked(c, b))
}

fn face_complement_unchecked(c: &PolyhedralCone, b: &PolyhedralCone) -> PolyhedralCone {
    let mut eq: Vec<Vector> = c.lineality().basis().to_vec();
    eq.extend(b.rays().iter().cloned());
    eq.extend(b.lineality().basis().iter().cloned());
    PolyhedralCone::from_constraints(c.ambient_dim(), c.rays(), &eq).expect("consistent dimensions")
}

/// Whether `e⊥` separates `a` and `b`: all generators of one cone satisfy
/// `x·e ≤ tol` and all of the other `x·e ≥ −tol`, in either orientation.
pub fn hyperplane_separates(
    normal: &Vector,
    a: &PolyhedralCone,
    b: &PolyhedralCone,
    tol: f64,
) -> bool {
    let side =
        |c: &PolyhedralCone, sign: f64| c.generators().iter().all(|g| sign * g.dot(normal) <= tol);
    (side(a, 1.0) && side(b, -1.0)) || (side(a, -1.0) && side(b, 1.0))
}

/// Finds a hyperplane `S` containing `b` that separates `c` from
/// `D = C° ∩ B⊥`, with the relative interiors strictly apart.
///
/// The normal comes from a linear program over the box `‖e‖∞ ≤ 1`:
/// maximize `t` subject to `e·r ≤ 0` on `C`, `e·d ≥ 0` on `D`, `e ⊥ B`,
/// `e ⊥ Lin C`, `e ⊥ Lin D`, and `−e·s_C ≥ t`, `e·s_D ≥ t` for the unit
/// relative-interior directions `s_C`, `s_D`.
pub fn separate_face(c: &PolyhedralCone, b: &PolyhedralCone) -> Result<SeparationResult> {
    check_face_hypothesis(c, b)?;
    let n = c.ambient_dim();
    let d = face_complement_unchecked(c, b);
    let (Some(s_c), Some(s_d)) = (
        c.interior_direction().normalized(),
        d.interior_direction().normalized(),
    ) else {
        return Err(GeomError::SeparationNotFound(
            "one of the cones has no relative-interior direction".into(),
        ));
    };

    let row = |x: &Vector, sign: f64, t: f64| {
        let mut r: Vec<f64> = x.coords().iter().map(|v| sign * v).collect();
        r.push(t);
        r
    };
    let mut lp = LinearProgram {
        objective: [vec![0.0; n], vec![1.0]].concat(),
        lower: [vec![-1.0; n], vec![0.0]].concat(),
        upper: [vec![1.0; n], vec![1e3]].concat(),
        ..Default::default()
    };
    for r in c.rays() {
        lp.a_ub.push(row(r, 1.0, 0.0));
        lp.b_ub.push(0.0);
    }
    for r in d.rays() {
        lp.a_ub.push(row(r, -1.0, 0.0));
        lp.b_ub.push(0.0);
    }
    lp.a_ub.push(row(&s_c, 1.0, 1.0));
    lp.a_ub.push(row(&s_d, -1.0, 1.0));
    lp.b_ub.extend([0.0, 0.0]);
    let orthogonal_to = c
        .lineality()
        .basis()
        .iter()
        .chain(d.lineality().basis())
        .chain(b.rays())
        .chain(b.lineality().basis());
    for l in orthogonal_to {
        lp.a_eq.push(row(l, 1.0, 0.0));
        lp.b_eq.push(0.0);
    }

    let LpOutcome::Optimal { x, .. } = lp.solve() else {
        return Err(GeomError::SeparationNotFound(
            "separation program is infeasible".into(),
        ));
    };
    let e = Vector::new(x[..n].to_vec())?;
    let Some(normal) = e.normalized() else {
        return Err(GeomError::SeparationNotFound(
            "separation program returned a zero normal".into(),
        ));
    };
    let margin = (-normal.dot(&s_c)).min(normal.dot(&s_d));
    if margin < STRICT_MARGIN {
        return Err(GeomError::SeparationNotFound(format!(
            "best margin {margin:e} is below {STRICT_MARGIN:e}"
        )));
    }

    let subspace = orthogonal_complement(&Subspace::span(n, std::slice::from_ref(&normal))?);
    let contains_b = b
        .generators()
        .iter()
        .all(|g| g.dot(&normal).abs() <= FACE_TOL);
    let strict_sides = strictly_on_side(c, &normal, -1.0) && strictly_on_side(&d, &normal, 1.0);
    Ok(SeparationResult {
        normal,
        subspace,
        d,
        contains_b,
        strict_sides,
        margin,
    })
}

/// Samples relative-interior points `Σ wᵢ rᵢ + l` (all `wᵢ > 0`) and checks
/// `sign·x·e > 1e-9·‖x‖`.
fn strictly_on_side(c: &PolyhedralCone, normal: &Vector, sign: f64) -> bool {
    let mut rng = rng_from_seed(0);
    let n = c.ambient_dim();
    (0..SIDE_SAMPLES).all(|_| {
        let mut x = Vector::zeros(n);
        for r in c.rays() {
            x = x.axpy(0.05 + rng.random::<f64>(), r);
        }
        for l in c.lineality().basis() {
            x = x.axpy(rng.random_range(-2.0..2.0), l);
        }
        sign * x.dot(normal) > SIDE_TOL * x.norm()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::from_slice(c)
    }

    fn planar_example() -> PolyhedralCone {
        PolyhedralCone::from_generators(3, &[v(&[3.0, 1.0, 0.0]), v(&[3.0, -1.0, 0.0])], &[])
            .unwrap()
    }

    #[test]
    fn planar_example_complement_and_plane() {
        let c = planar_example();
        let b = PolyhedralCone::from_generators(3, &[v(&[3.0, 1.0, 0.0])], &[]).unwrap();
        let d = orthogonal_face_complement(&c, &b).unwrap();
        // D = {(−y/3, y, z) : y ≥ 0}
        let expected =
            PolyhedralCone::from_generators(3, &[v(&[-1.0, 3.0, 0.0])], &[v(&[0.0, 0.0, 1.0])])
                .unwrap();
        assert!(d.cones_equal(&expected, 1e-9).unwrap());

        let s = separate_face(&c, &b).unwrap();
        assert!(s.contains_b && s.strict_sides);
        assert_eq!(s.subspace.rank(), 2);
        // normal ∝ (1, −3, 0)
        let m = v(&[1.0, -3.0, 0.0]).normalized().unwrap();
        assert!((s.normal.dot(&m).abs() - 1.0).abs() < 1e-9, "{}", s.normal);
        assert!(!hyperplane_separates(&s.normal, &c, &c.polar(), 1e-9));
        assert!(hyperplane_separates(&s.normal, &c, &s.d, 1e-9));
    }

    #[test]
    fn face_in_lineality_gives_whole_polar() {
        // c = {x ≤ 0}, b = the y-axis
        let c = PolyhedralCone::from_constraints(2, &[v(&[1.0, 0.0])], &[]).unwrap();
        let b = PolyhedralCone::from_generators(2, &[], &[v(&[0.0, 1.0])]).unwrap();
        let d = orthogonal_face_complement(&c, &b).unwrap();
        assert!(d.cones_equal(&c.polar(), 1e-12).unwrap());
        let s = separate_face(&c, &b).unwrap();
        assert!((s.normal.dot(&v(&[1.0, 0.0])) - 1.0).abs() < 1e-12);
        assert!(s.strict_sides && s.contains_b);

        let origin = PolyhedralCone::zero(2);
        assert!(orthogonal_face_complement(&c, &origin)
            .unwrap()
            .cones_equal(&c.polar(), 1e-12)
            .unwrap());
    }

    #[test]
    fn orthant_with_axis_face() {
        let c = PolyhedralCone::nonnegative_orthant(2);
        let b = PolyhedralCone::from_generators(2, &[v(&[1.0, 0.0])], &[]).unwrap();
        let d = orthogonal_face_complement(&c, &b).unwrap();
        let expected = PolyhedralCone::from_generators(2, &[v(&[0.0, -1.0])], &[]).unwrap();
        assert!(d.cones_equal(&expected, 1e-12).unwrap());
        let s = separate_face(&c, &b).unwrap();
        // c on the side y ≥ 0 means e = (0, −1) in our orientation
        assert!(
            (s.normal.dot(&v(&[0.0, -1.0])) - 1.0).abs() < 1e-12,
            "{}",
            s.normal
        );
        assert!(s.strict_sides && s.contains_b);
    }

    #[test]
    fn hypothesis_violations() {
        let plane = PolyhedralCone::from_generators(2, &[], &[v(&[1.0, 0.0])]).unwrap();
        let ray = PolyhedralCone::from_generators(2, &[v(&[1.0, 0.0])], &[]).unwrap();
        assert!(matches!(
            separate_face(&plane, &ray),
            Err(GeomError::HypothesisViolated(_))
        ));
        let c = PolyhedralCone::nonnegative_orthant(2);
        let inner = PolyhedralCone::from_generators(2, &[v(&[1.0, 1.0])], &[]).unwrap();
        assert!(matches!(
            separate_face(&c, &inner),
            Err(GeomError::HypothesisViolated(_))
        ));
        let outside = PolyhedralCone::from_generators(2, &[v(&[-1.0, 0.0])], &[]).unwrap();
        assert!(matches!(
            orthogonal_face_complement(&c, &outside),
            Err(GeomError::HypothesisViolated(_))
        ));
        let wrong_dim = PolyhedralCone::zero(3);
        assert!(matches!(
            separate_face(&c, &wrong_dim),
            Err(GeomError::DimensionMismatch { .. })
        ));
    }
}
