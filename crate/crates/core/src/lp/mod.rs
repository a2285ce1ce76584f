//! Dense bounded-variable simplex, best-first branch-and-bound, and an
//! exhaustive enumeration oracle for small integer programs.

mod branch;
mod enumerate;
mod simplex;

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};

pub use branch::{solve_milp, solve_milp_with, MilpOptions};
pub use enumerate::{enumerate_oracle, enumerate_oracle_with, DEFAULT_ENUMERATION_BUDGET};
pub use simplex::solve_lp;
pub(crate) use simplex::solve_bounded;

/// Maximum constraint/bound violation tolerated in an optimal solution.
pub const FEASIBILITY_TOL: f64 = 1e-7;
/// Distance from an integer below which a value counts as integral.
pub const INTEGRALITY_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sense {
    Ge,
    Le,
    Eq,
}

impl Sense {
    fn symbol(self) -> &'static str {
        match self {
            Sense::Ge => ">=",
            Sense::Le => "<=",
            Sense::Eq => "=",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub sense: Sense,
    pub rhs: f64,
}

/// A linear program over bounded variables with an optional integrality mask.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LpProblem {
    pub direction: Direction,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub integer: Vec<bool>,
}

impl LpProblem {
    /// A problem with `x >= 0`, no upper bounds and no integrality.
    pub fn new(direction: Direction, objective: Vec<f64>) -> Self {
        let n = objective.len();
        LpProblem {
            direction,
            objective,
            constraints: Vec::new(),
            lower: vec![0.0; n],
            upper: vec![f64::INFINITY; n],
            integer: vec![false; n],
        }
    }

    pub fn minimize(objective: Vec<f64>) -> Self {
        Self::new(Direction::Minimize, objective)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn add_constraint(&mut self, coeffs: Vec<f64>, sense: Sense, rhs: f64) -> Result<()> {
        if coeffs.len() != self.num_vars() {
            return Err(Error::MalformedLp(format!(
                "row has {} coefficients, expected {}",
                coeffs.len(),
                self.num_vars()
            )));
        }
        self.constraints.push(Constraint { coeffs, sense, rhs });
        Ok(())
    }

    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: f64) -> Result<()> {
        if var >= self.num_vars() {
            return Err(Error::MalformedLp(format!("variable {var} out of range")));
        }
        self.lower[var] = lower;
        self.upper[var] = upper;
        Ok(())
    }

    pub fn set_integer(&mut self, var: usize) -> Result<()> {
        if var >= self.num_vars() {
            return Err(Error::MalformedLp(format!("variable {var} out of range")));
        }
        self.integer[var] = true;
        Ok(())
    }

    pub fn is_integer(&self, var: usize) -> bool {
        self.integer[var]
    }

    pub fn integer_vars(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_vars()).filter(|&j| self.integer[j])
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.lower.len() != n || self.upper.len() != n || self.integer.len() != n {
            return Err(Error::MalformedLp("bound/integrality vectors have wrong length".into()));
        }
        for (i, row) in self.constraints.iter().enumerate() {
            if row.coeffs.len() != n {
                return Err(Error::MalformedLp(format!("row {i} has wrong length")));
            }
            if !row.rhs.is_finite() || row.coeffs.iter().any(|a| !a.is_finite()) {
                return Err(Error::MalformedLp(format!("row {i} has non-finite entries")));
            }
        }
        for j in 0..n {
            if !self.lower[j].is_finite() {
                return Err(Error::MalformedLp(format!("variable {j} needs a finite lower bound")));
            }
            if self.upper[j].is_nan() || self.lower[j] > self.upper[j] {
                return Err(Error::MalformedLp(format!(
                    "variable {j} has bounds [{}, {}]",
                    self.lower[j], self.upper[j]
                )));
            }
            if !self.objective[j].is_finite() {
                return Err(Error::MalformedLp(format!("objective coefficient {j} is not finite")));
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    pub fn row_activity(&self, row: usize, x: &[f64]) -> f64 {
        self.constraints[row].coeffs.iter().zip(x).map(|(a, v)| a * v).sum()
    }

    /// Largest violation of any row or bound, in the max norm.
    pub fn max_residual(&self, x: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for (i, row) in self.constraints.iter().enumerate() {
            let act = self.row_activity(i, x);
            let viol = match row.sense {
                Sense::Ge => row.rhs - act,
                Sense::Le => act - row.rhs,
                Sense::Eq => (act - row.rhs).abs(),
            };
            worst = worst.max(viol);
        }
        for (j, &v) in x.iter().enumerate() {
            worst = worst.max(self.lower[j] - v).max(v - self.upper[j]);
        }
        worst
    }

    /// Largest distance of an integer variable from the nearest integer.
    pub fn max_fractionality(&self, x: &[f64]) -> f64 {
        self.integer_vars()
            .map(|j| (x[j] - x[j].round()).abs())
            .fold(0.0, f64::max)
    }

    /// Fixed-format plain-text listing for external cross-checking.
    ///
    /// ```text
    /// SENSE MIN
    /// VARS 2
    /// ROWS 1
    /// OBJ 1 1
    /// ROW 0 >= 1.5 : 1 1
    /// BND 0 0 inf
    /// BND 1 0 inf
    /// INT 0 1
    /// END
    /// ```
    pub fn to_listing(&self) -> String {
        let mut out = String::new();
        let sense = match self.direction {
            Direction::Minimize => "MIN",
            Direction::Maximize => "MAX",
        };
        let _ = writeln!(out, "SENSE {sense}");
        let _ = writeln!(out, "VARS {}", self.num_vars());
        let _ = writeln!(out, "ROWS {}", self.num_constraints());
        let _ = writeln!(out, "OBJ {}", join(&self.objective));
        for (i, row) in self.constraints.iter().enumerate() {
            let _ = writeln!(
                out,
                "ROW {i} {} {} : {}",
                row.sense.symbol(),
                row.rhs,
                join(&row.coeffs)
            );
        }
        for j in 0..self.num_vars() {
            let _ = writeln!(out, "BND {j} {} {}", self.lower[j], self.upper[j]);
        }
        let ints: Vec<String> = self.integer_vars().map(|j| j.to_string()).collect();
        let _ = writeln!(out, "INT {}", ints.join(" "));
        out.push_str("END\n");
        out
    }

    pub fn from_listing(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("listing: {msg}"));
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let mut take = |key: &str| -> Result<String> {
            let line = lines.next().ok_or_else(|| bad("unexpected end"))?;
            line.strip_prefix(key)
                .map(|rest| rest.trim().to_string())
                .ok_or_else(|| bad(&format!("expected {key}, got '{line}'")))
        };
        let direction = match take("SENSE")?.as_str() {
            "MIN" => Direction::Minimize,
            "MAX" => Direction::Maximize,
            other => return Err(bad(&format!("unknown sense '{other}'"))),
        };
        let nvars: usize = take("VARS")?.parse().map_err(|_| bad("VARS"))?;
        let nrows: usize = take("ROWS")?.parse().map_err(|_| bad("ROWS"))?;
        let objective = parse_floats(&take("OBJ")?)?;
        if objective.len() != nvars {
            return Err(bad("objective length"));
        }
        let mut p = LpProblem::new(direction, objective);
        for i in 0..nrows {
            let body = take("ROW")?;
            let (head, coeffs) = body.split_once(':').ok_or_else(|| bad("row without ':'"))?;
            let head: Vec<&str> = head.split_whitespace().collect();
            if head.len() != 3 || head[0].parse::<usize>().ok() != Some(i) {
                return Err(bad(&format!("row header '{}'", head.join(" "))));
            }
            let sense = match head[1] {
                ">=" => Sense::Ge,
                "<=" => Sense::Le,
                "=" => Sense::Eq,
                s => return Err(bad(&format!("sense '{s}'"))),
            };
            let rhs = parse_float(head[2])?;
            p.add_constraint(parse_floats(coeffs)?, sense, rhs)?;
        }
        for j in 0..nvars {
            let vals = parse_floats(&take("BND")?)?;
            if vals.len() != 3 || vals[0] != j as f64 {
                return Err(bad("bound line"));
            }
            p.set_bounds(j, vals[1], vals[2])?;
        }
        for tok in take("INT")?.split_whitespace() {
            p.set_integer(tok.parse().map_err(|_| bad("INT"))?)?;
        }
        take("END")?;
        Ok(p)
    }
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_float(s: &str) -> Result<f64> {
    f64::from_str(s).map_err(|_| Error::Parse(format!("bad number '{s}'")))
}

fn parse_floats(s: &str) -> Result<Vec<f64>> {
    s.split_whitespace().map(parse_float).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    /// A budget ran out; the assignment is the best feasible one found but
    /// optimality is not proven.
    Incumbent,
    /// A budget ran out before any feasible assignment was found.
    BudgetExhausted,
}

impl fmt::Display for LpStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Objective in the problem's own direction; NaN unless a point is present.
    pub objective: f64,
    pub x: Vec<f64>,
    /// Simplex pivots (summed over all nodes for branch-and-bound).
    pub iterations: usize,
    /// Branch-and-bound nodes solved; 1 for a pure LP.
    pub nodes: usize,
}

impl LpSolution {
    pub(crate) fn without_point(status: LpStatus, iterations: usize, nodes: usize) -> Self {
        LpSolution {
            status,
            objective: f64::NAN,
            x: Vec::new(),
            iterations,
            nodes,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    pub fn has_point(&self) -> bool {
        matches!(self.status, LpStatus::Optimal | LpStatus::Incumbent)
    }
}

/// Budgets for branch-and-bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<usize>,
    pub max_time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: None,
            max_time: None,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(n: usize) -> Self {
        Budget {
            max_nodes: Some(n),
            max_time: None,
        }
    }

    pub fn seconds(s: f64) -> Self {
        Budget {
            max_nodes: None,
            max_time: Some(Duration::from_secs_f64(s)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing_round_trip() {
        let mut p = LpProblem::minimize(vec![1.0, 1.0, 0.25]);
        p.add_constraint(vec![1.0, 1.0, 0.0], Sense::Ge, 1.5).unwrap();
        p.add_constraint(vec![0.5, -1.0, 3.0], Sense::Eq, 2.0).unwrap();
        p.set_bounds(2, 0.0, 2.0).unwrap();
        p.set_integer(0).unwrap();
        p.set_integer(1).unwrap();
        let text = p.to_listing();
        assert!(text.contains("ROW 0 >= 1.5 : 1 1 0"));
        assert!(text.contains("BND 0 0 inf"));
        assert_eq!(LpProblem::from_listing(&text).unwrap(), p);
    }

    #[test]
    fn rejects_malformed() {
        let mut p = LpProblem::minimize(vec![1.0, 1.0]);
        assert!(p.add_constraint(vec![1.0], Sense::Ge, 1.0).is_err());
        p.set_bounds(0, 2.0, 1.0).unwrap();
        assert!(p.validate().is_err());
        assert!(p.set_integer(5).is_err());
    }

    #[test]
    fn residuals() {
        let mut p = LpProblem::minimize(vec![1.0]);
        p.add_constraint(vec![1.0], Sense::Ge, 3.0).unwrap();
        assert_eq!(p.max_residual(&[2.5]), 0.5);
        assert_eq!(p.max_residual(&[3.0]), 0.0);
    }
}
