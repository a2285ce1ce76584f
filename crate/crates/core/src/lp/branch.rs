//! Best-first branch-and-bound over LP relaxations.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use super::simplex::solve_bounded;
use super::{Budget, Direction, LpProblem, LpSolution, LpStatus, FEASIBILITY_TOL, INTEGRALITY_TOL};
use crate::error::Result;

#[derive(Clone, Debug, Default)]
pub struct MilpOptions {
    pub budget: Budget,
    /// A known feasible assignment used as the starting incumbent.
    pub incumbent: Option<Vec<f64>>,
    /// Disable reduced-cost fixing (useful for testing the plain search).
    pub no_reduced_cost_fixing: bool,
}

/// Solves `p` to global optimality honoring the integrality mask.
pub fn solve_milp(p: &LpProblem) -> Result<LpSolution> {
    solve_milp_with(p, &MilpOptions::default())
}

struct Node {
    /// Relaxation value of the parent, in minimization form.
    bound: f64,
    seq: u64,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    // BinaryHeap is a max-heap: smallest bound first, then oldest node.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .total_cmp(&self.bound)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

pub fn solve_milp_with(p: &LpProblem, opts: &MilpOptions) -> Result<LpSolution> {
    p.validate()?;
    let start = Instant::now();
    let sign = match p.direction {
        Direction::Minimize => 1.0,
        Direction::Maximize => -1.0,
    };
    // Integral objective: integer coefficients on integer variables only.
    let integral_objective = (0..p.num_vars()).all(|j| {
        let c = p.objective[j];
        if p.integer[j] {
            c == c.round()
        } else {
            c == 0.0
        }
    });

    let mut lower0 = p.lower.clone();
    let mut upper0 = p.upper.clone();
    for j in p.integer_vars() {
        lower0[j] = (lower0[j] - INTEGRALITY_TOL).ceil();
        upper0[j] = (upper0[j] + INTEGRALITY_TOL).floor();
    }

    let mut best: Option<(f64, Vec<f64>)> = None;
    if let Some(x) = &opts.incumbent {
        if x.len() == p.num_vars()
            && p.max_residual(x) <= FEASIBILITY_TOL
            && p.max_fractionality(x) <= INTEGRALITY_TOL
        {
            best = Some((sign * p.objective_value(x), x.clone()));
        }
    }
    // A node is worth exploring only if its bound can beat the incumbent.
    let cutoff = |best: &Option<(f64, Vec<f64>)>| -> f64 {
        match best {
            None => f64::INFINITY,
            Some((z, _)) if integral_objective => z.round() - 1.0 + 1e-6,
            Some((z, _)) => z - 1e-9 * (1.0 + z.abs()),
        }
    };

    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    heap.push(Node {
        bound: f64::NEG_INFINITY,
        seq,
        lower: lower0,
        upper: upper0,
    });
    let mut nodes = 0usize;
    let mut iterations = 0usize;
    let mut unbounded = false;
    let mut exhausted = false;

    while let Some(node) = heap.pop() {
        if node.bound > cutoff(&best) {
            continue;
        }
        if opts.budget.max_nodes.is_some_and(|m| nodes >= m)
            || opts.budget.max_time.is_some_and(|t| start.elapsed() >= t)
        {
            exhausted = true;
            break;
        }
        nodes += 1;
        let r = solve_bounded(p, &node.lower, &node.upper)?;
        iterations += r.iterations;
        match r.status {
            LpStatus::Infeasible => continue,
            LpStatus::Unbounded => {
                unbounded = true;
                break;
            }
            _ => {}
        }
        let z = sign * r.objective;
        if z > cutoff(&best) {
            continue;
        }

        // Most fractional integer variable, lowest index on ties.
        let mut branch: Option<(usize, f64)> = None;
        for j in p.integer_vars() {
            let f = r.x[j] - r.x[j].floor();
            if f <= INTEGRALITY_TOL || f >= 1.0 - INTEGRALITY_TOL {
                continue;
            }
            let score = (f - 0.5).abs();
            if branch.is_none_or(|(_, s)| score < s - 1e-12) {
                branch = Some((j, score));
            }
        }

        let Some((j, _)) = branch else {
            let mut x = r.x.clone();
            for k in p.integer_vars() {
                x[k] = x[k].round() + 0.0;
            }
            let val = sign * p.objective_value(&x);
            if best.as_ref().is_none_or(|(b, _)| val < *b - 1e-9) {
                best = Some((val, x));
            }
            continue;
        };

        let mut lower = node.lower;
        let mut upper = node.upper;
        if !opts.no_reduced_cost_fixing && best.is_some() {
            let limit = cutoff(&best);
            for k in p.integer_vars() {
                if r.basic[k] || lower[k] == upper[k] {
                    continue;
                }
                let dk = r.reduced_costs[k];
                if !r.at_upper[k] && dk > 0.0 && z + dk > limit {
                    upper[k] = lower[k];
                } else if r.at_upper[k] && dk < 0.0 && z - dk > limit {
                    lower[k] = upper[k];
                }
            }
        }

        let v = r.x[j];
        let mut floor_upper = upper.clone();
        floor_upper[j] = v.floor();
        let mut ceil_lower = lower.clone();
        ceil_lower[j] = v.ceil();
        seq += 1;
        heap.push(Node {
            bound: z,
            seq,
            lower: lower.clone(),
            upper: floor_upper,
        });
        seq += 1;
        heap.push(Node {
            bound: z,
            seq,
            lower: ceil_lower,
            upper,
        });
    }

    if unbounded {
        return Ok(LpSolution::without_point(LpStatus::Unbounded, iterations, nodes));
    }
    let status = match (&best, exhausted) {
        (Some(_), false) => LpStatus::Optimal,
        (Some(_), true) => LpStatus::Incumbent,
        (None, false) => LpStatus::Infeasible,
        (None, true) => LpStatus::BudgetExhausted,
    };
    Ok(match best {
        Some((_, x)) => LpSolution {
            status,
            objective: p.objective_value(&x),
            x,
            iterations,
            nodes,
        },
        None => LpSolution::without_point(status, iterations, nodes),
    })
}
