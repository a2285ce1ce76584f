//! Checks a hand-picked set in exact dyadic arithmetic and shows where the
//! excess sits.

use expdom::domination::check_certificate;
use expdom::{Graph, GraphFamily};

fn main() -> expdom::Result<()> {
    let g = Graph::build(GraphFamily::king(6))?;
    // Four dominators, one per 3x3 quadrant.
    let set: Vec<usize> = [(1, 1), (1, 4), (4, 1), (4, 4)]
        .iter()
        .map(|&(r, c)| g.at(r, c))
        .collect();
    let cert = check_certificate(&g, &set)?;
    print!("{}", cert.report(&g).to_text());

    println!("received weight per vertex:");
    for row in 0..6 {
        let line: Vec<String> = (0..6)
            .map(|col| format!("{:>6}", cert.received[g.at(row, col)].to_string()))
            .collect();
        println!("{}", line.join(" "));
    }

    // Dropping a member breaks domination near its corner.
    let weaker = check_certificate(&g, &set[1..])?;
    println!("\nwithout {}: valid = {}, min weight = {}", g.coord(set[0]), weaker.valid, weaker.min_weight);
    Ok(())
}
