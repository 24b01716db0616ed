//! Small dense real linear algebra: vectors, orthonormal subspaces, and the
//! few direct solvers the geometric code needs.
//!
//! Everything here is sized for ambient dimensions up to about eight, so the
//! routines favour clarity and stability over asymptotic speed.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::{check_dim, GeomError, Result};

/// Absolute tolerance used for rank decisions on normalized columns.
pub const RANK_TOL: f64 = 1e-10;

/// A point or direction in ℝⁿ. Coordinates are always finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(GeomError::ZeroDimension);
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(GeomError::NonFinite(i));
        }
        Ok(Vector(coords))
    }

    /// Builds a vector from a slice that is already known to be valid.
    ///
    /// Panics on empty or non-finite input; meant for literals in code and tests.
    pub fn from_slice(coords: &[f64]) -> Self {
        Self::new(coords.to_vec()).expect("valid vector literal")
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "vector dimension must be positive");
        Vector(vec![0.0; dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    pub fn scaled(&self, s: f64) -> Vector {
        Vector(self.0.iter().map(|c| c * s).collect())
    }

    /// `self + s * other`
    pub fn axpy(&self, s: f64, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + s * b)
                .collect(),
        )
    }

    /// Unit vector in the same direction, or `None` for (numerically) zero input.
    pub fn normalized(&self) -> Option<Vector> {
        let n = self.norm();
        (n > RANK_TOL).then(|| self.scaled(1.0 / n))
    }

    pub fn distance(&self, other: &Vector) -> f64 {
        (self - other).norm()
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        check_dim(expected, self.dim())
    }

    /// Lexicographic comparison of coordinates, used for deterministic orderings.
    pub(crate) fn lex_cmp(&self, other: &Vector) -> std::cmp::Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.total_cmp(b) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.dim().cmp(&other.dim())
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        self.axpy(1.0, rhs)
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        self.axpy(-1.0, rhs)
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(self, rhs: Vector) -> Vector {
        &self + &rhs
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(self, rhs: Vector) -> Vector {
        &self - &rhs
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scaled(-1.0)
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scaled(-1.0)
    }
}

impl Mul<f64> for &Vector {
    type Output = Vector;
    fn mul(self, s: f64) -> Vector {
        self.scaled(s)
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    fn mul(self, s: f64) -> Vector {
        self.scaled(s)
    }
}

/// A linear subspace of ℝⁿ stored by an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    /// The trivial subspace `{o}`.
    pub fn trivial(ambient_dim: usize) -> Self {
        assert!(ambient_dim > 0);
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: (0..ambient_dim)
                .map(|i| Vector::unit(ambient_dim, i))
                .collect(),
        }
    }

    /// Span of arbitrary vectors; see [`orthonormal_basis`].
    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Result<Self> {
        orthonormal_basis(ambient_dim, vectors)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    /// Distance from `u` to the subspace.
    pub fn residual(&self, u: &Vector) -> f64 {
        (u - &self.project_unchecked(u)).norm()
    }

    pub fn contains(&self, u: &Vector, tol: f64) -> bool {
        self.residual(u) <= tol
    }

    /// Largest residual of `other`'s basis vectors against `self`.
    pub fn containment_residual(&self, other: &Subspace) -> f64 {
        other
            .basis
            .iter()
            .map(|b| self.residual(b))
            .fold(0.0, f64::max)
    }

    /// Mutual reconstruction: both subspaces contain each other's basis.
    pub fn same_as(&self, other: &Subspace, tol: f64) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.rank() == other.rank()
            && self.containment_residual(other) <= tol
            && other.containment_residual(self) <= tol
    }

    /// Smallest subspace containing both.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        check_dim(self.ambient_dim, other.ambient_dim)?;
        let all: Vec<Vector> = self.basis.iter().chain(&other.basis).cloned().collect();
        orthonormal_basis(self.ambient_dim, &all)
    }

    pub fn project(&self, u: &Vector) -> Result<Vector> {
        project_subspace(self, u)
    }

    pub(crate) fn project_unchecked(&self, u: &Vector) -> Vector {
        self.basis
            .iter()
            .fold(Vector::zeros(self.ambient_dim), |acc, b| {
                acc.axpy(b.dot(u), b)
            })
    }
}

fn orthogonalize(v: &Vector, basis: &[Vector]) -> Vector {
    let mut r = v.clone();
    // two passes of modified Gram–Schmidt
    for _ in 0..2 {
        for b in basis {
            r = r.axpy(-b.dot(&r), b);
        }
    }
    r
}

/// Orthonormal basis of `span(vectors)` by modified Gram–Schmidt with one
/// re-orthogonalization pass. Inputs are normalized before the rank test.
pub fn orthonormal_basis(ambient_dim: usize, vectors: &[Vector]) -> Result<Subspace> {
    if ambient_dim == 0 {
        return Err(GeomError::ZeroDimension);
    }
    let mut basis: Vec<Vector> = Vec::new();
    for v in vectors {
        v.check_dim(ambient_dim)?;
        if basis.len() == ambient_dim {
            continue;
        }
        let Some(unit) = v.normalized() else { continue };
        let r = orthogonalize(&unit, &basis);
        let n = r.norm();
        if n > RANK_TOL {
            basis.push(r.scaled(1.0 / n));
        }
    }
    Ok(Subspace { ambient_dim, basis })
}

/// Orthogonal complement `s⊥`.
///
/// Coordinate axes are added greedily in order of largest residual against the
/// current basis, which keeps every accepted pivot well away from the rank
/// tolerance.
pub fn orthogonal_complement(s: &Subspace) -> Subspace {
    let n = s.ambient_dim;
    let mut work: Vec<Vector> = s.basis.clone();
    let mut out = Vec::with_capacity(n - s.rank());
    while out.len() < n - s.rank() {
        let (r, norm) = (0..n)
            .map(|i| {
                let r = orthogonalize(&Vector::unit(n, i), &work);
                let norm = r.norm();
                (r, norm)
            })
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("ambient dimension is positive");
        debug_assert!(norm > RANK_TOL);
        let unit = r.scaled(1.0 / norm);
        work.push(unit.clone());
        out.push(unit);
    }
    Subspace {
        ambient_dim: n,
        basis: out,
    }
}

/// Orthogonal projection of `u` onto `s`.
pub fn project_subspace(s: &Subspace, u: &Vector) -> Result<Vector> {
    u.check_dim(s.ambient_dim)?;
    Ok(s.project_unchecked(u))
}

/// Least-squares solution of `min ‖Σ x_j cols[j] − rhs‖` by Householder QR.
///
/// Returns `None` when the columns are numerically rank deficient.
pub(crate) fn least_squares(cols: &[&[f64]], rhs: &[f64]) -> Option<Vec<f64>> {
    let m = rhs.len();
    let p = cols.len();
    if p == 0 {
        return Some(Vec::new());
    }
    if p > m {
        return None;
    }
    // a is column major, p columns of length m
    let mut a: Vec<Vec<f64>> = cols.iter().map(|c| c.to_vec()).collect();
    let mut b = rhs.to_vec();
    let scale: Vec<f64> = a
        .iter()
        .map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect();
    if scale.iter().any(|&s| s <= RANK_TOL) {
        return None;
    }
    for k in 0..p {
        let norm: f64 = a[k][k..].iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm <= RANK_TOL * scale[k] {
            return None;
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = a[k][k..].to_vec();
        v[0] -= alpha;
        let vnorm_sq: f64 = v.iter().map(|x| x * x).sum();
        if vnorm_sq > 0.0 {
            for col in a.iter_mut().skip(k) {
                let d: f64 = v.iter().zip(&col[k..]).map(|(x, y)| x * y).sum();
                let f = 2.0 * d / vnorm_sq;
                for (c, vi) in col[k..].iter_mut().zip(&v) {
                    *c -= f * vi;
                }
            }
            let d: f64 = v.iter().zip(&b[k..]).map(|(x, y)| x * y).sum();
            let f = 2.0 * d / vnorm_sq;
            for (c, vi) in b[k..].iter_mut().zip(&v) {
                *c -= f * vi;
            }
        }
    }
    let mut x = vec![0.0; p];
    for k in (0..p).rev() {
        let s: f64 = ((k + 1)..p).map(|j| a[j][k] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    Some(x)
}

/// Solves the square system `rows · x = rhs` by Gaussian elimination with
/// partial pivoting. Returns `None` for a numerically singular matrix.
pub fn solve_square(mut rows: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Option<Vec<f64>> {
    let n = rhs.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    for k in 0..n {
        let piv = (k..n).max_by(|&i, &j| rows[i][k].abs().total_cmp(&rows[j][k].abs()))?;
        let row_scale = rows[piv].iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        if rows[piv][k].abs() <= RANK_TOL * row_scale.max(1.0) {
            return None;
        }
        rows.swap(k, piv);
        rhs.swap(k, piv);
        for i in (k + 1)..n {
            let f = rows[i][k] / rows[k][k];
            if f != 0.0 {
                for j in k..n {
                    rows[i][j] -= f * rows[k][j];
                }
                rhs[i] -= f * rhs[k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = ((k + 1)..n).map(|j| rows[k][j] * x[j]).sum();
        x[k] = (rhs[k] - s) / rows[k][k];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::from_slice(c)
    }

    #[test]
    fn vector_rejects_bad_coordinates() {
        assert_eq!(Vector::new(vec![]), Err(GeomError::ZeroDimension));
        assert_eq!(
            Vector::new(vec![1.0, f64::NAN]),
            Err(GeomError::NonFinite(1))
        );
        assert_eq!(
            Vector::new(vec![f64::INFINITY]),
            Err(GeomError::NonFinite(0))
        );
    }

    #[test]
    fn collinear_input_has_rank_one() {
        let s = orthonormal_basis(2, &[v(&[1.0, 0.0]), v(&[2.0, 0.0])]).unwrap();
        assert_eq!(s.rank(), 1);
        assert!((s.basis()[0].dot(&v(&[1.0, 0.0])).abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_input_is_trivial() {
        let s = orthonormal_basis(3, &[]).unwrap();
        assert_eq!(s.rank(), 0);
        assert_eq!(s.ambient_dim(), 3);
    }

    #[test]
    fn diagonal_pair_spans_xy_plane() {
        let s = orthonormal_basis(3, &[v(&[1.0, 1.0, 0.0]), v(&[1.0, -1.0, 0.0])]).unwrap();
        assert_eq!(s.rank(), 2);
        for axis in [v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])] {
            assert!(s.residual(&axis) < 1e-10);
        }
        assert!(s.residual(&v(&[0.0, 0.0, 1.0])) > 0.99);
    }

    #[test]
    fn basis_rejects_dimension_mismatch() {
        let err = orthonormal_basis(2, &[v(&[1.0, 0.0, 0.0])]).unwrap_err();
        assert_eq!(
            err,
            GeomError::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn complement_of_axis() {
        let s = orthonormal_basis(3, &[v(&[1.0, 0.0, 0.0])]).unwrap();
        let c = orthogonal_complement(&s);
        assert_eq!(c.rank(), 2);
        let expect = orthonormal_basis(3, &[v(&[0.0, 1.0, 0.0]), v(&[0.0, 0.0, 1.0])]).unwrap();
        assert!(c.same_as(&expect, 1e-12));
    }

    #[test]
    fn complement_of_trivial_is_full() {
        let c = orthogonal_complement(&Subspace::trivial(2));
        assert!(c.is_full());
        assert!(orthogonal_complement(&Subspace::full(2)).is_trivial());
    }

    #[test]
    fn complement_of_diagonal() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = orthonormal_basis(2, &[v(&[h, h])]).unwrap();
        let c = orthogonal_complement(&s);
        assert_eq!(c.rank(), 1);
        assert!(c.contains(&v(&[h, -h]), 1e-12));
        assert!(c.basis()[0].dot(&s.basis()[0]).abs() < 1e-10);
    }

    #[test]
    fn projection_examples() {
        let x = orthonormal_basis(2, &[v(&[1.0, 0.0])]).unwrap();
        assert_eq!(
            project_subspace(&x, &v(&[3.0, 4.0])).unwrap(),
            v(&[3.0, 0.0])
        );

        let u = v(&[0.3, -2.0, 7.0]);
        let p = project_subspace(&Subspace::full(3), &u).unwrap();
        assert!(p.distance(&u) < 1e-15);

        let d = orthonormal_basis(3, &[v(&[1.0, 1.0, 0.0])]).unwrap();
        let p = project_subspace(&d, &v(&[1.0, 2.0, 3.0])).unwrap();
        assert!(p.distance(&v(&[1.5, 1.5, 0.0])) < 1e-12);

        assert!(project_subspace(&d, &v(&[1.0, 2.0])).is_err());
    }

    #[test]
    fn least_squares_and_square_solve() {
        let c0 = [1.0, 0.0, 0.0];
        let c1 = [1.0, 1.0, 0.0];
        let x = least_squares(&[&c0, &c1], &[3.0, 2.0, 5.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 2.0).abs() < 1e-12);
        assert!(least_squares(&[&c0, &c0], &[1.0, 0.0, 0.0]).is_none());

        let x = solve_square(vec![vec![2.0, 1.0], vec![1.0, 3.0]], vec![3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-12 && (x[1] - 1.4).abs() < 1e-12);
        assert!(solve_square(vec![vec![1.0, 2.0], vec![2.0, 4.0]], vec![1.0, 2.0]).is_none());
    }
}
