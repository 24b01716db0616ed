//! Double-description conversion from an H-representation
//! `{x : a_i·x ≤ 0, m_j·x = 0}` to generators (extreme rays + lineality).
//!
//! Constraints are inserted one at a time in lexicographic order of their unit
//! normals. Lineality directions are pivoted away first; once the current cone
//! is pointed in the direction of a constraint, the classic split into
//! positive / zero / negative rays is done and new rays are formed from
//! combinatorially adjacent pairs.

use crate::linalg::{orthogonal_complement, orthonormal_basis, Subspace, Vector};

/// Zero-set tolerance for unit-normalized rays against unit normals.
pub(crate) const DD_TOL: f64 = 1e-9;

#[derive(Clone)]
struct Ray {
    dir: Vector,
    zero: Vec<u64>,
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn intersect(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

/// Unit-normalizes the inputs, drops zeros and near-duplicates, and sorts them
/// lexicographically.
pub(crate) fn canonical_directions(dirs: &[Vector]) -> Vec<Vector> {
    let mut units: Vec<Vector> = dirs.iter().filter_map(Vector::normalized).collect();
    units.sort_by(|a, b| a.lex_cmp(b));
    let mut out: Vec<Vector> = Vec::with_capacity(units.len());
    for u in units {
        if !out.iter().any(|w| w.distance(&u) <= DD_TOL) {
            out.push(u);
        }
    }
    out
}

/// Converts `{x : a·x ≤ 0 ∀a ∈ inequalities} ∩ equalities⊥` into its extreme
/// rays and an orthonormal lineality basis.
///
/// Returned rays are orthogonal to the lineality space, unit length, and sorted.
pub(crate) fn h_to_v(
    ambient_dim: usize,
    inequalities: &[Vector],
    equalities: &Subspace,
) -> (Vec<Vector>, Subspace) {
    let constraints = canonical_directions(inequalities);
    let words = constraints.len().div_ceil(64).max(1);

    let mut lineality: Vec<Vector> = orthogonal_complement(equalities).basis().to_vec();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in constraints.iter().enumerate() {
        let pivot = lineality
            .iter()
            .enumerate()
            .map(|(i, l)| (i, a.dot(l)))
            .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()));

        if let Some((pi, s)) = pivot.filter(|p| p.1.abs() > DD_TOL) {
            let l0 = lineality.remove(pi);
            let adjusted: Vec<Vector> = lineality
                .iter()
                .map(|l| l.axpy(-a.dot(l) / s, &l0))
                .collect();
            lineality = orthonormal_basis(ambient_dim, &adjusted)
                .expect("dimensions agree")
                .basis()
                .to_vec();
            let mut next = Vec::with_capacity(rays.len() + 1);
            for r in rays.drain(..) {
                let moved = r.dir.axpy(-a.dot(&r.dir) / s, &l0);
                if let Some(dir) = moved.normalized() {
                    let mut zero = r.zero;
                    bit_set(&mut zero, k);
                    next.push(Ray { dir, zero });
                }
            }
            // l0 is orthogonal to every earlier constraint
            let mut zero = vec![0u64; words];
            for j in 0..k {
                bit_set(&mut zero, j);
            }
            next.push(Ray {
                dir: l0.scaled(-s.signum()),
                zero,
            });
            rays = next;
            continue;
        }

        let values: Vec<f64> = rays.iter().map(|r| a.dot(&r.dir)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i] > DD_TOL).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i] < -DD_TOL).collect();

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        for &p in &pos {
            for &n in &neg {
                let common = intersect(&rays[p].zero, &rays[n].zero);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == n || !is_subset(&common, &r.zero));
                if !adjacent {
                    continue;
                }
                let combo = rays[n].dir.scaled(values[p]).axpy(-values[n], &rays[p].dir);
                if let Some(dir) = combo.normalized() {
                    let mut zero = common;
                    bit_set(&mut zero, k);
                    next.push(Ray { dir, zero });
                }
            }
        }
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i] > DD_TOL {
                continue;
            }
            if values[i] >= -DD_TOL {
                bit_set(&mut r.zero, k);
            }
            next.push(r);
        }
        rays = next;
    }

    let lin = orthonormal_basis(ambient_dim, &lineality).expect("dimensions agree");
    let reduced: Vec<Vector> = rays
        .iter()
        .map(|r| &r.dir - &lin.project_unchecked(&r.dir))
        .collect();
    (canonical_directions(&reduced), lin)
}
