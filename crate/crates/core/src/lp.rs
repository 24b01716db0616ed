//! Dense two-phase simplex for the tiny linear programs behind separation
//! certificates. Bland's rule throughout, so it cannot cycle.

const PIVOT_TOL: f64 = 1e-11;

/// `maximize c·x` subject to `a_ub x ≤ b_ub`, `a_eq x = b_eq`,
/// `lower ≤ x ≤ upper` (all bounds finite).
#[derive(Debug, Clone, Default)]
pub(crate) struct LinearProgram {
    pub objective: Vec<f64>,
    pub a_ub: Vec<Vec<f64>>,
    pub b_ub: Vec<f64>,
    pub a_eq: Vec<Vec<f64>>,
    pub b_eq: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        self.rows[r].iter_mut().for_each(|x| *x /= p);
        self.rhs[r] /= p;
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][c];
            if f != 0.0 {
                for j in 0..self.rows[i].len() {
                    self.rows[i][j] -= f * self.rows[r][j];
                }
                self.rhs[i] -= f * self.rhs[r];
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost·x` over the current tableau, only letting columns
    /// `< allowed` enter. Returns false when unbounded.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> bool {
        let limit = 50 * (self.rows.len() + allowed + 1);
        for _ in 0..limit {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced = cost[j]
                    - self
                        .basis
                        .iter()
                        .zip(&self.rows)
                        .map(|(&b, row)| cost[b] * row[j])
                        .sum::<f64>();
                reduced > 1e-10
            });
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, f64)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c] > PIVOT_TOL {
                    let ratio = self.rhs[i] / row[c];
                    let better = match best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < br - 1e-14
                                || (ratio <= br + 1e-14 && self.basis[i] < self.basis[bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, c);
        }
        true
    }
}

impl LinearProgram {
    pub(crate) fn solve(&self) -> LpOutcome {
        let n = self.objective.len();
        // shift x = lower + y, 0 ≤ y ≤ upper − lower
        let mut rows: Vec<(Vec<f64>, f64, bool)> = Vec::new();
        for (a, &b) in self.a_ub.iter().zip(&self.b_ub) {
            let shift: f64 = a.iter().zip(&self.lower).map(|(x, l)| x * l).sum();
            rows.push((a.clone(), b - shift, false));
        }
        for i in 0..n {
            let mut a = vec![0.0; n];
            a[i] = 1.0;
            rows.push((a, self.upper[i] - self.lower[i], false));
        }
        for (a, &b) in self.a_eq.iter().zip(&self.b_eq) {
            let shift: f64 = a.iter().zip(&self.lower).map(|(x, l)| x * l).sum();
            rows.push((a.clone(), b - shift, true));
        }

        let m = rows.len();
        let n_slack = rows.iter().filter(|r| !r.2).count();
        let mut needs_art: Vec<usize> = Vec::new();
        let mut t_rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut slack_idx = 0;
        let mut slack_of_row = vec![None; m];
        for (i, (a, b, eq)) in rows.iter().enumerate() {
            let mut row = vec![0.0; n + n_slack];
            row[..n].copy_from_slice(a);
            if !eq {
                row[n + slack_idx] = 1.0;
                slack_of_row[i] = Some(n + slack_idx);
                slack_idx += 1;
            }
            let mut b = *b;
            if b < 0.0 {
                row.iter_mut().for_each(|x| *x = -*x);
                b = -b;
            }
            let needs_artificial = match slack_of_row[i] {
                None => true,
                Some(s) => row[s] < 0.0,
            };
            if needs_artificial {
                needs_art.push(i);
            }
            t_rows.push(row);
            rhs.push(b);
        }
        let n_art = needs_art.len();
        let total = n + n_slack + n_art;
        let mut basis = vec![0; m];
        for (i, row) in t_rows.iter_mut().enumerate() {
            row.resize(total, 0.0);
            if let Some(k) = needs_art.iter().position(|&r| r == i) {
                row[n + n_slack + k] = 1.0;
                basis[i] = n + n_slack + k;
            } else {
                basis[i] = slack_of_row[i].expect("slack present");
            }
        }
        let mut tab = Tableau {
            rows: t_rows,
            rhs,
            basis,
        };

        if n_art > 0 {
            let mut cost = vec![0.0; total];
            cost[n + n_slack..].iter_mut().for_each(|c| *c = -1.0);
            tab.optimize(&cost, total);
            let infeas: f64 = tab
                .basis
                .iter()
                .zip(&tab.rhs)
                .filter(|(&b, _)| b >= n + n_slack)
                .map(|(_, &v)| v)
                .sum();
            if infeas > 1e-9 {
                return LpOutcome::Infeasible;
            }
            // drive zero-level artificials out of the basis
            let mut r = 0;
            while r < tab.rows.len() {
                if tab.basis[r] >= n + n_slack {
                    if let Some(c) = (0..n + n_slack).find(|&j| tab.rows[r][j].abs() > 1e-9) {
                        tab.pivot(r, c);
                    } else {
                        tab.rows.remove(r);
                        tab.rhs.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
                r += 1;
            }
        }

        let mut cost = vec![0.0; total];
        cost[..n].copy_from_slice(&self.objective);
        if !tab.optimize(&cost, n + n_slack) {
            // every variable is boxed, so this only happens numerically
            return LpOutcome::Infeasible;
        }
        let mut x = self.lower.clone();
        for (&b, &v) in tab.basis.iter().zip(&tab.rhs) {
            if b < n {
                x[b] += v;
            }
        }
        let value = x.iter().zip(&self.objective).map(|(a, c)| a * c).sum();
        LpOutcome::Optimal { x, value }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_maximum() {
        let lp = LinearProgram {
            objective: vec![1.0, 2.0],
            a_ub: vec![vec![1.0, 1.0]],
            b_ub: vec![1.5],
            lower: vec![-1.0, -1.0],
            upper: vec![1.0, 1.0],
            ..Default::default()
        };
        let LpOutcome::Optimal { x, value } = lp.solve() else {
            panic!()
        };
        assert!((value - 2.5).abs() < 1e-12, "{x:?}");
        assert!((x[0] - 0.5).abs() < 1e-12 && (x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn equality_and_negative_rhs() {
        // max x0 s.t. x0 + x1 = 1, −x0 ≤ −0.25 (x0 ≥ 0.25), x1 ≥ 0.5 via bound
        let lp = LinearProgram {
            objective: vec![1.0, 0.0],
            a_ub: vec![vec![-1.0, 0.0]],
            b_ub: vec![-0.25],
            a_eq: vec![vec![1.0, 1.0]],
            b_eq: vec![1.0],
            lower: vec![-2.0, 0.5],
            upper: vec![2.0, 2.0],
        };
        let LpOutcome::Optimal { x, .. } = lp.solve() else {
            panic!()
        };
        assert!((x[0] - 0.5).abs() < 1e-12 && (x[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn detects_infeasibility() {
        let lp = LinearProgram {
            objective: vec![0.0],
            a_ub: vec![vec![1.0], vec![-1.0]],
            b_ub: vec![-1.0, -1.0],
            lower: vec![-5.0],
            upper: vec![5.0],
            ..Default::default()
        };
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
    }
}
