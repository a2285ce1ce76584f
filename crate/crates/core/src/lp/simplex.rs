//! Two-phase primal simplex on a dense tableau with bounded variables.
//!
//! Structural variables are shifted to `0 <= x' <= u - l`. Each row gets a
//! slack (for inequalities) and, when the slack cannot start basic, an
//! artificial. Nonbasic variables sit at either bound.

use super::{LpProblem, LpSolution, LpStatus, Sense};
use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-9;
const PRICE_TOL: f64 = 1e-9;
const PHASE1_TOL: f64 = 1e-8;

/// Solves the LP relaxation, ignoring the integrality mask.
pub fn solve_lp(p: &LpProblem) -> Result<LpSolution> {
    p.validate()?;
    let r = solve_bounded(p, &p.lower, &p.upper)?;
    Ok(r.into_solution())
}

pub(crate) struct LpResult {
    pub status: LpStatus,
    pub x: Vec<f64>,
    /// Objective in the problem's own direction.
    pub objective: f64,
    pub iterations: usize,
    /// Reduced costs of the structural variables for the minimization form
    /// (objective negated when maximizing).
    pub reduced_costs: Vec<f64>,
    /// Whether each structural variable ended nonbasic at its upper bound.
    pub at_upper: Vec<bool>,
    pub basic: Vec<bool>,
}

impl LpResult {
    pub fn into_solution(self) -> LpSolution {
        match self.status {
            LpStatus::Optimal => LpSolution {
                status: LpStatus::Optimal,
                objective: self.objective,
                x: self.x,
                iterations: self.iterations,
                nodes: 1,
            },
            s => LpSolution::without_point(s, self.iterations, 1),
        }
    }
}

/// Solves `p` with its bounds replaced by `lower`/`upper`.
pub(crate) fn solve_bounded(p: &LpProblem, lower: &[f64], upper: &[f64]) -> Result<LpResult> {
    let n = p.num_vars();
    if lower.iter().zip(upper).any(|(l, u)| l > u) {
        return Ok(LpResult::bare(LpStatus::Infeasible, n, 0));
    }
    let mut t = Tableau::new(p, lower, upper);
    let limit = 200 * (t.rows + t.cols) + 10_000;

    t.set_phase1_costs();
    t.run(limit)?;
    let infeas: f64 = (0..t.rows)
        .filter(|&i| t.is_artificial(t.basis[i]))
        .map(|i| t.xb[i])
        .sum();
    if infeas > PHASE1_TOL * (1.0 + t.rhs_scale) {
        return Ok(LpResult::bare(LpStatus::Infeasible, n, t.iterations));
    }
    t.drive_out_artificials();

    let sign = match p.direction {
        super::Direction::Minimize => 1.0,
        super::Direction::Maximize => -1.0,
    };
    let costs: Vec<f64> = p.objective.iter().map(|c| sign * c).collect();
    t.set_phase2_costs(&costs);
    if t.run(limit)? == RunEnd::Unbounded {
        return Ok(LpResult::bare(LpStatus::Unbounded, n, t.iterations));
    }

    let mut x = vec![0.0; n];
    let mut basic = vec![false; n];
    for (j, xj) in x.iter_mut().enumerate() {
        *xj = lower[j] + t.value_of(j);
    }
    for &b in &t.basis {
        if b < n {
            basic[b] = true;
        }
    }
    // Snap values that drifted just outside their bounds.
    for j in 0..n {
        x[j] = x[j].max(lower[j]).min(upper[j]);
    }
    let objective = p.objective_value(&x);
    Ok(LpResult {
        status: LpStatus::Optimal,
        x,
        objective,
        iterations: t.iterations,
        reduced_costs: t.d[..n].to_vec(),
        at_upper: t.at_upper[..n].to_vec(),
        basic,
    })
}

impl LpResult {
    fn bare(status: LpStatus, n: usize, iterations: usize) -> Self {
        LpResult {
            status,
            x: Vec::new(),
            objective: f64::NAN,
            iterations,
            reduced_costs: vec![0.0; n],
            at_upper: vec![false; n],
            basic: vec![false; n],
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
enum RunEnd {
    Optimal,
    Unbounded,
}

struct Tableau {
    rows: usize,
    cols: usize,
    /// First artificial column; columns `art_start..cols` are artificials.
    art_start: usize,
    /// Row-major `rows × cols` coefficients of `B^-1 A`.
    a: Vec<f64>,
    /// Values of the basic variables.
    xb: Vec<f64>,
    basis: Vec<usize>,
    /// Reduced costs.
    d: Vec<f64>,
    cost: Vec<f64>,
    ub: Vec<f64>,
    at_upper: Vec<bool>,
    is_basic: Vec<bool>,
    banned: Vec<bool>,
    iterations: usize,
    rhs_scale: f64,
}

impl Tableau {
    fn new(p: &LpProblem, lower: &[f64], upper: &[f64]) -> Self {
        let n = p.num_vars();
        let m = p.num_constraints();
        let n_slack = p.constraints.iter().filter(|c| c.sense != Sense::Eq).count();

        // Shifted rhs and orientation of each row.
        let mut rhs = Vec::with_capacity(m);
        let mut flip = Vec::with_capacity(m);
        for c in &p.constraints {
            let shift: f64 = c.coeffs.iter().zip(lower).map(|(a, l)| a * l).sum();
            let b = c.rhs - shift;
            flip.push(b < 0.0);
            rhs.push(b.abs());
        }
        // A row needs an artificial unless its slack enters with +1.
        let mut slack_col = vec![None; m];
        let mut next_slack = n;
        for (i, c) in p.constraints.iter().enumerate() {
            if c.sense != Sense::Eq {
                slack_col[i] = Some(next_slack);
                next_slack += 1;
            }
        }
        let needs_art: Vec<bool> = p
            .constraints
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let slack_sign = match c.sense {
                    Sense::Le => 1.0,
                    Sense::Ge => -1.0,
                    Sense::Eq => return true,
                };
                let s = if flip[i] { -slack_sign } else { slack_sign };
                s < 0.0
            })
            .collect();
        let n_art = needs_art.iter().filter(|&&b| b).count();
        let art_start = n + n_slack;
        let cols = art_start + n_art;

        let mut a = vec![0.0; m * cols];
        let mut basis = vec![0; m];
        let mut next_art = art_start;
        for (i, c) in p.constraints.iter().enumerate() {
            let s = if flip[i] { -1.0 } else { 1.0 };
            let row = &mut a[i * cols..(i + 1) * cols];
            for (j, &coef) in c.coeffs.iter().enumerate() {
                row[j] = s * coef;
            }
            if let Some(sc) = slack_col[i] {
                let base = if c.sense == Sense::Le { 1.0 } else { -1.0 };
                row[sc] = s * base;
                if !needs_art[i] {
                    basis[i] = sc;
                }
            }
            if needs_art[i] {
                row[next_art] = 1.0;
                basis[i] = next_art;
                next_art += 1;
            }
        }

        let mut ub = vec![f64::INFINITY; cols];
        for j in 0..n {
            ub[j] = upper[j] - lower[j];
        }
        let mut is_basic = vec![false; cols];
        for &b in &basis {
            is_basic[b] = true;
        }
        // Structural variables at their upper bound would change the rhs; all
        // start at the lower bound (shifted zero), so xb = rhs.
        let rhs_scale = rhs.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        Tableau {
            rows: m,
            cols,
            art_start,
            a,
            xb: rhs,
            basis,
            d: vec![0.0; cols],
            cost: vec![0.0; cols],
            ub,
            at_upper: vec![false; cols],
            is_basic,
            banned: vec![false; cols],
            iterations: 0,
            rhs_scale,
        }
    }

    fn is_artificial(&self, j: usize) -> bool {
        j >= self.art_start
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.cols + j]
    }

    fn value_of(&self, j: usize) -> f64 {
        if self.is_basic[j] {
            let i = self.basis.iter().position(|&b| b == j).unwrap();
            self.xb[i]
        } else if self.at_upper[j] {
            self.ub[j]
        } else {
            0.0
        }
    }

    fn set_phase1_costs(&mut self) {
        let cost: Vec<f64> = (0..self.cols)
            .map(|j| if self.is_artificial(j) { 1.0 } else { 0.0 })
            .collect();
        self.install_costs(cost);
    }

    fn set_phase2_costs(&mut self, structural: &[f64]) {
        let mut cost = vec![0.0; self.cols];
        cost[..structural.len()].copy_from_slice(structural);
        for j in self.art_start..self.cols {
            self.banned[j] = true;
            self.ub[j] = 0.0;
        }
        self.install_costs(cost);
    }

    fn install_costs(&mut self, cost: Vec<f64>) {
        let mut d = cost.clone();
        for i in 0..self.rows {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                let row = &self.a[i * self.cols..(i + 1) * self.cols];
                for (dj, &aij) in d.iter_mut().zip(row) {
                    *dj -= cb * aij;
                }
            }
        }
        for i in 0..self.rows {
            d[self.basis[i]] = 0.0;
        }
        self.cost = cost;
        self.d = d;
    }

    /// Returns the entering column and its direction (+1 increase, -1 decrease).
    fn price(&self, bland: bool) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        let mut best_score = 0.0;
        for j in 0..self.cols {
            if self.is_basic[j] || self.banned[j] || self.ub[j] <= 0.0 {
                continue;
            }
            let dj = self.d[j];
            let dir = if !self.at_upper[j] && dj < -PRICE_TOL {
                1.0
            } else if self.at_upper[j] && dj > PRICE_TOL {
                -1.0
            } else {
                continue;
            };
            if bland {
                return Some((j, dir));
            }
            if dj.abs() > best_score {
                best_score = dj.abs();
                best = Some((j, dir));
            }
        }
        best
    }

    fn run(&mut self, limit: usize) -> Result<RunEnd> {
        let degenerate_limit = 5 * (self.rows + self.cols);
        let mut degenerate = 0usize;
        loop {
            if self.iterations >= limit {
                return Err(Error::IterationLimit(limit));
            }
            let bland = degenerate >= degenerate_limit;
            let Some((enter, dir)) = self.price(bland) else {
                return Ok(RunEnd::Optimal);
            };

            // Ratio test; ties go to the larger pivot (or lowest basic index under Bland).
            let mut best = f64::INFINITY;
            let mut leave: Option<(usize, bool)> = None;
            let mut leave_piv = 0.0f64;
            for i in 0..self.rows {
                let alpha = dir * self.at(i, enter);
                if alpha.abs() <= PIVOT_TOL {
                    continue;
                }
                let b = self.basis[i];
                let (ratio, to_upper) = if alpha > 0.0 {
                    (self.xb[i].max(0.0) / alpha, false)
                } else if self.ub[b].is_finite() {
                    ((self.ub[b] - self.xb[i]).max(0.0) / -alpha, true)
                } else {
                    continue;
                };
                let take = match leave {
                    None => ratio < best,
                    Some(_) if ratio < best - 1e-12 => true,
                    Some((li, _)) if ratio <= best + 1e-12 => {
                        if bland {
                            b < self.basis[li]
                        } else {
                            alpha.abs() > leave_piv
                        }
                    }
                    Some(_) => false,
                };
                if take {
                    best = best.min(ratio);
                    leave = Some((i, to_upper));
                    leave_piv = alpha.abs();
                }
            }
            let theta = if leave.is_some() && best <= self.ub[enter] {
                best
            } else if self.ub[enter].is_finite() {
                leave = None;
                self.ub[enter]
            } else {
                return Ok(RunEnd::Unbounded);
            };
            self.iterations += 1;
            if theta <= 1e-12 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }

            // Move the basic variables.
            if theta > 0.0 {
                for i in 0..self.rows {
                    let aij = self.at(i, enter);
                    if aij != 0.0 {
                        self.xb[i] -= dir * theta * aij;
                    }
                }
            }
            let entering_value = if self.at_upper[enter] {
                self.ub[enter] + dir * theta
            } else {
                dir * theta
            };

            match leave {
                None => {
                    // Bound flip.
                    self.at_upper[enter] = !self.at_upper[enter];
                }
                Some((r, to_upper)) => {
                    let out = self.basis[r];
                    self.is_basic[out] = false;
                    self.at_upper[out] = to_upper;
                    self.pivot(r, enter);
                    self.xb[r] = entering_value;
                    self.at_upper[enter] = false;
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, enter: usize) {
        let cols = self.cols;
        let piv = self.a[r * cols + enter];
        {
            let row = &mut self.a[r * cols..(r + 1) * cols];
            for v in row.iter_mut() {
                *v /= piv;
            }
            row[enter] = 1.0;
        }
        let pivot_row: Vec<f64> = self.a[r * cols..(r + 1) * cols].to_vec();
        let nz: Vec<usize> = (0..cols).filter(|&j| pivot_row[j] != 0.0).collect();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.a[i * cols + enter];
            if f == 0.0 {
                continue;
            }
            let row = &mut self.a[i * cols..(i + 1) * cols];
            for &j in &nz {
                row[j] -= f * pivot_row[j];
            }
            row[enter] = 0.0;
        }
        let f = self.d[enter];
        if f != 0.0 {
            for &j in &nz {
                self.d[j] -= f * pivot_row[j];
            }
            self.d[enter] = 0.0;
        }
        self.basis[r] = enter;
        self.is_basic[enter] = true;
    }

    /// Pivots basic artificials (all at zero after a feasible phase 1) out of
    /// the basis where some non-artificial column has a usable entry.
    fn drive_out_artificials(&mut self) {
        for r in 0..self.rows {
            let b = self.basis[r];
            if !self.is_artificial(b) {
                continue;
            }
            let candidate = (0..self.art_start)
                .filter(|&j| !self.is_basic[j] && self.at(r, j).abs() > 1e-7)
                .max_by(|&x, &y| self.at(r, x).abs().total_cmp(&self.at(r, y).abs()));
            if let Some(j) = candidate {
                let value = if self.at_upper[j] { self.ub[j] } else { 0.0 };
                self.is_basic[b] = false;
                self.at_upper[b] = false;
                self.pivot(r, j);
                self.xb[r] = value;
                self.at_upper[j] = false;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::Direction;

    fn lp(obj: Vec<f64>) -> LpProblem {
        LpProblem::minimize(obj)
    }

    #[test]
    fn single_lower_bound_row() {
        let mut p = lp(vec![1.0]);
        p.add_constraint(vec![1.0], Sense::Ge, 3.0).unwrap();
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective - 3.0).abs() < 1e-9);
    }

    #[test]
    fn contradictory_rows_are_infeasible() {
        let mut p = lp(vec![1.0]);
        p.add_constraint(vec![1.0], Sense::Ge, 1.0).unwrap();
        p.add_constraint(vec![1.0], Sense::Le, 0.0).unwrap();
        assert_eq!(solve_lp(&p).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_ray() {
        let mut p = LpProblem::new(Direction::Maximize, vec![1.0, 1.0]);
        p.add_constraint(vec![1.0, -1.0], Sense::Le, 1.0).unwrap();
        assert_eq!(solve_lp(&p).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn textbook_maximization() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  -> 36 at (2, 6)
        let mut p = LpProblem::new(Direction::Maximize, vec![3.0, 5.0]);
        p.add_constraint(vec![1.0, 0.0], Sense::Le, 4.0).unwrap();
        p.add_constraint(vec![0.0, 2.0], Sense::Le, 12.0).unwrap();
        p.add_constraint(vec![3.0, 2.0], Sense::Le, 18.0).unwrap();
        let s = solve_lp(&p).unwrap();
        assert!((s.objective - 36.0).abs() < 1e-9);
        assert!((s.x[0] - 2.0).abs() < 1e-9 && (s.x[1] - 6.0).abs() < 1e-9);
    }

    #[test]
    fn bounds_and_equalities() {
        // min -x - y, x + y = 3, 0 <= x <= 1, 1 <= y <= 5 -> -3
        let mut p = lp(vec![-1.0, -1.0]);
        p.add_constraint(vec![1.0, 1.0], Sense::Eq, 3.0).unwrap();
        p.set_bounds(0, 0.0, 1.0).unwrap();
        p.set_bounds(1, 1.0, 5.0).unwrap();
        let s = solve_lp(&p).unwrap();
        assert!((s.objective + 3.0).abs() < 1e-9);
        assert!(p.max_residual(&s.x) < 1e-9);

        // upper bounds alone bind: max x + 2y with x,y in [0,1], x + y <= 10
        let mut q = LpProblem::new(Direction::Maximize, vec![1.0, 2.0]);
        q.add_constraint(vec![1.0, 1.0], Sense::Le, 10.0).unwrap();
        q.set_bounds(0, 0.0, 1.0).unwrap();
        q.set_bounds(1, 0.0, 1.0).unwrap();
        let s = solve_lp(&q).unwrap();
        assert!((s.objective - 3.0).abs() < 1e-9);
    }

    #[test]
    fn fixed_variable_and_negative_rhs() {
        // min x + y, x fixed to 2, -x - y <= -5 -> y = 3
        let mut p = lp(vec![1.0, 1.0]);
        p.set_bounds(0, 2.0, 2.0).unwrap();
        p.add_constraint(vec![-1.0, -1.0], Sense::Le, -5.0).unwrap();
        let s = solve_lp(&p).unwrap();
        assert!((s.objective - 5.0).abs() < 1e-9);
        assert!((s.x[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn redundant_equalities() {
        let mut p = lp(vec![1.0, 2.0]);
        p.add_constraint(vec![1.0, 1.0], Sense::Eq, 2.0).unwrap();
        p.add_constraint(vec![2.0, 2.0], Sense::Eq, 4.0).unwrap();
        let s = solve_lp(&p).unwrap();
        assert!((s.objective - 2.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example, cycles under naive Dantzig pricing without a guard.
        let mut p = lp(vec![-0.75, 150.0, -0.02, 6.0]);
        p.add_constraint(vec![0.25, -60.0, -0.04, 9.0], Sense::Le, 0.0).unwrap();
        p.add_constraint(vec![0.5, -90.0, -0.02, 3.0], Sense::Le, 0.0).unwrap();
        p.add_constraint(vec![0.0, 0.0, 1.0, 0.0], Sense::Le, 1.0).unwrap();
        let s = solve_lp(&p).unwrap();
        assert!((s.objective + 0.05).abs() < 1e-9);
    }
}
