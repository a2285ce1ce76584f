//! The LP / MILP engine on its own: a small covering problem solved three
//! ways, plus the text listing format.

use expdom::lp::{enumerate_oracle, solve_lp, solve_milp, LpProblem, Sense};

fn main() -> expdom::Result<()> {
    // Cover the 7 points of the Fano plane's lines with as few lines as possible.
    let lines = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
    let mut p = LpProblem::minimize(vec![1.0; 7]);
    for point in 0..7 {
        let row = lines
            .iter()
            .map(|l| if l.contains(&point) { 1.0 } else { 0.0 })
            .collect();
        p.add_constraint(row, Sense::Ge, 1.0)?;
    }
    for j in 0..7 {
        p.set_bounds(j, 0.0, 1.0)?;
        p.set_integer(j)?;
    }

    let relaxed = solve_lp(&p)?;
    let milp = solve_milp(&p)?;
    let oracle = enumerate_oracle(&p)?;
    println!("LP relaxation: {:.4} ({} pivots)", relaxed.objective, relaxed.iterations);
    println!("branch-and-bound: {} ({} nodes), x = {:?}", milp.objective, milp.nodes, milp.x);
    println!("enumeration: {}", oracle.objective);
    println!("max residual {:e}", p.max_residual(&milp.x));

    let listing = p.to_listing();
    print!("\n{listing}");
    assert_eq!(LpProblem::from_listing(&listing)?, p);
    Ok(())
}
