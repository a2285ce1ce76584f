//! Exhaustive enumeration of pure integer programs, the ground truth that
//! branch-and-bound is tested against.

use super::{Direction, LpProblem, LpSolution, LpStatus, FEASIBILITY_TOL};
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1 << 20;

pub fn enumerate_oracle(p: &LpProblem) -> Result<LpSolution> {
    enumerate_oracle_with(p, DEFAULT_ENUMERATION_BUDGET)
}

/// Tries every integral point in the bounding box. Requires every variable to
/// be integral with finite bounds and at most `budget` points in total.
pub fn enumerate_oracle_with(p: &LpProblem, budget: u128) -> Result<LpSolution> {
    p.validate()?;
    let n = p.num_vars();
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    let mut needed: u128 = 1;
    for j in 0..n {
        if !p.integer[j] || !p.upper[j].is_finite() {
            return Err(Error::InvalidArgument(format!(
                "enumeration needs integral, finitely bounded variables (variable {j})"
            )));
        }
        let l = p.lower[j].ceil() as i64;
        let u = p.upper[j].floor() as i64;
        if l > u {
            return Ok(LpSolution::without_point(LpStatus::Infeasible, 0, 0));
        }
        needed = needed.saturating_mul((u - l + 1) as u128);
        lo.push(l);
        hi.push(u);
    }
    if needed > budget {
        return Err(Error::EnumerationBudget { needed, budget });
    }
    let better = |a: f64, b: f64| match p.direction {
        Direction::Minimize => a < b - 1e-12,
        Direction::Maximize => a > b + 1e-12,
    };

    let mut x: Vec<f64> = lo.iter().map(|&v| v as f64).collect();
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut visited = 0usize;
    loop {
        visited += 1;
        if p.max_residual(&x) <= FEASIBILITY_TOL {
            let z = p.objective_value(&x);
            if best.as_ref().is_none_or(|(b, _)| better(z, *b)) {
                best = Some((z, x.clone()));
            }
        }
        // Odometer step, last variable fastest.
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(match best {
                    Some((objective, x)) => LpSolution {
                        status: LpStatus::Optimal,
                        objective,
                        x,
                        iterations: 0,
                        nodes: visited,
                    },
                    None => LpSolution::without_point(LpStatus::Infeasible, 0, visited),
                });
            }
            k -= 1;
            if (x[k] as i64) < hi[k] {
                x[k] += 1.0;
                break;
            }
            x[k] = lo[k] as f64;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::Sense;

    fn binary(obj: Vec<f64>) -> LpProblem {
        let n = obj.len();
        let mut p = LpProblem::minimize(obj);
        for j in 0..n {
            p.set_bounds(j, 0.0, 1.0).unwrap();
            p.set_integer(j).unwrap();
        }
        p
    }

    #[test]
    fn small_cover() {
        let mut p = binary(vec![1.0, 1.0, 1.0]);
        p.add_constraint(vec![1.0, 1.0, 0.0], Sense::Ge, 1.0).unwrap();
        p.add_constraint(vec![0.0, 1.0, 1.0], Sense::Ge, 1.0).unwrap();
        let s = enumerate_oracle(&p).unwrap();
        assert_eq!(s.objective, 1.0);
        assert_eq!(s.x, vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn infeasible_toy() {
        let mut p = binary(vec![1.0, 1.0]);
        p.add_constraint(vec![1.0, 1.0], Sense::Ge, 3.0).unwrap();
        assert_eq!(enumerate_oracle(&p).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn budget_and_type_errors() {
        let p = binary(vec![1.0; 21]);
        assert!(matches!(
            enumerate_oracle(&p),
            Err(Error::EnumerationBudget { .. })
        ));
        let q = LpProblem::minimize(vec![1.0]);
        assert!(enumerate_oracle(&q).is_err());
    }
}
