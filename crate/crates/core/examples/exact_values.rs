//! Exact exponential domination numbers of small King and Slant grids.
//!
//! Usage: cargo run --release --example exact_values [family] [max_n]

use expdom::domination::{exact_gamma, lp_lower};
use expdom::lp::Budget;
use expdom::{FamilyKind, Graph, GraphFamily};

fn draw(g: &Graph, set: &[usize]) -> String {
    let f = g.family();
    let mut out = String::new();
    for row in 0..f.rows {
        for col in 0..f.cols {
            out.push(if set.contains(&g.at(row, col)) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}

fn main() -> expdom::Result<()> {
    let mut args = std::env::args().skip(1);
    let kind: FamilyKind = args.next().as_deref().unwrap_or("king").parse()?;
    let max_n: usize = args.next().map(|s| s.parse().expect("max_n")).unwrap_or(8);

    for n in 2..=max_n {
        let g = Graph::build(GraphFamily::square(kind, n))?;
        let lp = lp_lower(&g)?;
        let e = exact_gamma(&g, Budget::seconds(600.0))?;
        println!(
            "{} {n}: gamma = {}{}  (LP bound {lp:.3}, {} search nodes)",
            kind.name(),
            e.value,
            if e.optimal { "" } else { " (not proven)" },
            e.nodes
        );
        print!("{}", draw(&g, &e.witness.set));
    }
    Ok(())
}
