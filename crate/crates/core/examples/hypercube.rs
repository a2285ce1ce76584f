//! Hypercube bounds: closed-form lower bound, doubling construction and
//! exact values.

use expdom::hypercube::{self, min_layer_weight};
use expdom::lp::Budget;
use expdom::Dyadic;

fn main() -> expdom::Result<()> {
    println!(" n  m(Q_n)     lower  exact  doubling");
    for row in hypercube::bounds_table(7, 7, Budget::seconds(120.0))? {
        println!(
            "{:>2}  {:>9}  {:>5}  {:>5}  {:>8}{}",
            row.n,
            hypercube::qn_total_weight(row.n)?.to_string(),
            row.lower,
            row.exact.map(|e| e.to_string()).unwrap_or_default(),
            row.construction_size,
            if row.lower_exceeds_exact() { "   <- bound exceeds exact value" } else { "" }
        );
    }

    let cert = hypercube::qn_doubling_construction(6)?;
    let members: Vec<String> = cert.set.iter().map(|v| format!("{v:06b}")).collect();
    println!("\nQ_6 doubling set: {}", members.join(" "));

    // Each embedded copy serves its own layer fully and each neighbouring layer by half.
    let half = Dyadic::new(1, 1);
    for n in 3..=8 {
        let own = min_layer_weight(n, 0b00, 0b00)?;
        let side = min_layer_weight(n, 0b00, 0b01)?;
        println!("n={n}: own layer >= {own}, adjacent layer >= {side} (need {half})");
    }
    Ok(())
}
