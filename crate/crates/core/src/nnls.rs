//! Active-set least squares in the Lawson–Hanson style.
//!
//! Solves `min ‖target − Σ w_j a_j‖` where the first `n_free` weights are
//! unconstrained and the remaining ones are nonnegative. With `simplex` set,
//! all weights are nonnegative and must sum to one, which is the convex-hull
//! (polytope) case.

use crate::linalg::{least_squares, Vector};

/// Dual-feasibility threshold, scaled by the size of the target.
pub(crate) const DUAL_TOL: f64 = 1e-10;

pub(crate) struct ActiveSet<'a> {
    columns: &'a [Vector],
    n_free: usize,
    simplex: bool,
}

impl<'a> ActiveSet<'a> {
    pub(crate) fn cone(columns: &'a [Vector], n_free: usize) -> Self {
        ActiveSet {
            columns,
            n_free,
            simplex: false,
        }
    }

    pub(crate) fn hull(columns: &'a [Vector]) -> Self {
        ActiveSet {
            columns,
            n_free: 0,
            simplex: true,
        }
    }

    fn combine(&self, w: &[f64], dim: usize) -> Vector {
        self.columns
            .iter()
            .zip(w)
            .fold(Vector::zeros(dim), |acc, (a, &wi)| acc.axpy(wi, a))
    }

    /// Unconstrained least squares restricted to the passive set.
    fn subproblem(&self, passive: &[usize], target: &Vector) -> Option<Vec<f64>> {
        if self.simplex {
            let (&k, rest) = passive.split_first()?;
            let base = &self.columns[k];
            let diffs: Vec<Vector> = rest.iter().map(|&i| &self.columns[i] - base).collect();
            let cols: Vec<&[f64]> = diffs.iter().map(Vector::coords).collect();
            let rhs = target - base;
            let x = least_squares(&cols, rhs.coords())?;
            let mut out = Vec::with_capacity(passive.len());
            out.push(1.0 - x.iter().sum::<f64>());
            out.extend(x);
            Some(out)
        } else {
            let cols: Vec<&[f64]> = passive.iter().map(|&i| self.columns[i].coords()).collect();
            least_squares(&cols, target.coords())
        }
    }

    /// Returns the weights of the optimal combination.
    pub(crate) fn solve(&self, target: &Vector) -> Vec<f64> {
        let dim = target.dim();
        let m = self.columns.len();
        let mut w = vec![0.0; m];
        if m == 0 {
            return w;
        }
        let mut passive: Vec<usize> = Vec::new();
        if self.simplex {
            let nearest = (0..m)
                .min_by(|&i, &j| {
                    target
                        .distance(&self.columns[i])
                        .total_cmp(&target.distance(&self.columns[j]))
                })
                .expect("nonempty");
            passive.push(nearest);
            w[nearest] = 1.0;
        } else if self.n_free > 0 {
            passive.extend(0..self.n_free);
            if let Some(z) = self.subproblem(&passive, target) {
                for (&i, zi) in passive.iter().zip(z) {
                    w[i] = zi;
                }
            }
        }

        let col_scale = self.columns.iter().map(Vector::norm).fold(0.0, f64::max);
        let tol = DUAL_TOL * (1.0 + target.norm()) * col_scale.max(1.0);
        let mut excluded = vec![false; m];
        let max_outer = 10 * (m + 1);

        for _ in 0..max_outer {
            let residual = target - &self.combine(&w, dim);
            let grad: Vec<f64> = self.columns.iter().map(|a| a.dot(&residual)).collect();
            let shift = if self.simplex {
                passive.iter().map(|&i| grad[i]).sum::<f64>() / passive.len() as f64
            } else {
                0.0
            };
            // largest dual violation, lowest index on ties
            let mut enter: Option<(usize, f64)> = None;
            for j in self.n_free..m {
                if passive.contains(&j) || excluded[j] {
                    continue;
                }
                let d = grad[j] - shift;
                if d > tol && enter.is_none_or(|(_, best)| d > best) {
                    enter = Some((j, d));
                }
            }
            let Some((j, _)) = enter else { break };

            passive.push(j);
            let mut first = true;
            loop {
                let Some(z) = self.subproblem(&passive, target) else {
                    // dependent column: undo and try another candidate
                    passive.retain(|&i| i != j);
                    excluded[j] = true;
                    break;
                };
                let constrained_ok = passive
                    .iter()
                    .zip(&z)
                    .all(|(&i, &zi)| i < self.n_free || zi > 0.0);
                if constrained_ok {
                    for (&i, &zi) in passive.iter().zip(&z) {
                        w[i] = zi;
                    }
                    excluded.iter_mut().for_each(|e| *e = false);
                    break;
                }
                let jpos = passive.iter().position(|&i| i == j);
                if first && jpos.is_some_and(|p| z[p] <= 0.0) {
                    passive.retain(|&i| i != j);
                    excluded[j] = true;
                    break;
                }
                first = false;
                // step back toward the current feasible point
                let mut alpha = 1.0_f64;
                for (&i, &zi) in passive.iter().zip(&z) {
                    if i >= self.n_free && zi <= 0.0 {
                        let denom = w[i] - zi;
                        if denom > 0.0 {
                            alpha = alpha.min(w[i] / denom);
                        }
                    }
                }
                for (&i, &zi) in passive.iter().zip(&z) {
                    w[i] += alpha * (zi - w[i]);
                }
                let before = passive.len();
                passive.retain(|&i| i < self.n_free || w[i] > 1e-15);
                for i in self.n_free..m {
                    if !passive.contains(&i) {
                        w[i] = 0.0;
                    }
                }
                if passive.len() == before {
                    // numerical stall: drop the most negative candidate
                    if let Some((p, _)) = passive
                        .iter()
                        .zip(&z)
                        .enumerate()
                        .filter(|(_, (&i, _))| i >= self.n_free)
                        .min_by(|a, b| a.1 .1.total_cmp(b.1 .1))
                    {
                        let i = passive.remove(p);
                        w[i] = 0.0;
                    }
                }
                if self.simplex {
                    let s: f64 = w.iter().sum();
                    if s > 0.0 {
                        w.iter_mut().for_each(|x| *x /= s);
                    }
                }
                if passive.is_empty() {
                    break;
                }
            }
        }
        w
    }

    pub(crate) fn point(&self, target: &Vector) -> Vector {
        let w = self.solve(target);
        self.combine(&w, target.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::from_slice(c)
    }

    #[test]
    fn orthant_clamp() {
        let cols = [v(&[1.0, 0.0]), v(&[0.0, 1.0])];
        let p = ActiveSet::cone(&cols, 0).point(&v(&[-1.0, 2.0]));
        assert!(p.distance(&v(&[0.0, 2.0])) < 1e-14);
    }

    #[test]
    fn free_columns_are_unconstrained() {
        let cols = [v(&[0.0, 1.0]), v(&[1.0, 0.0])];
        let p = ActiveSet::cone(&cols, 1).point(&v(&[-3.0, -4.0]));
        assert!(p.distance(&v(&[0.0, -4.0])) < 1e-14);
    }

    #[test]
    fn simplex_weights_sum_to_one() {
        let cols = [v(&[0.0, 0.0]), v(&[2.0, 0.0]), v(&[0.0, 2.0])];
        let solver = ActiveSet::hull(&cols);
        let w = solver.solve(&v(&[2.0, 2.0]));
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(w.iter().all(|&x| x >= 0.0));
        let p = solver.point(&v(&[2.0, 2.0]));
        assert!(p.distance(&v(&[1.0, 1.0])) < 1e-12);
        assert!(solver.point(&v(&[0.5, 0.5])).distance(&v(&[0.5, 0.5])) < 1e-12);
    }

    #[test]
    fn repeated_vertices_do_not_stall() {
        let cols = [
            v(&[1.0, 0.0]),
            v(&[1.0, 0.0]),
            v(&[0.0, 1.0]),
            v(&[0.5, 0.5]),
        ];
        let p = ActiveSet::hull(&cols).point(&v(&[3.0, 3.0]));
        assert!(p.distance(&v(&[0.5, 0.5])) < 1e-12);
    }
}
