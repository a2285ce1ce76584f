//! Excess rates from the r×r block program and the lower bounds they give.

use expdom::excess::{self, Mode};
use expdom::FamilyKind;

fn main() -> expdom::Result<()> {
    for (kind, rs) in [
        (FamilyKind::KingGrid, vec![3, 5, 7, 9, 11]),
        (FamilyKind::SlantGrid, vec![3, 5, 7, 9]),
    ] {
        for mode in [Mode::CodeFaithful, Mode::TextFaithful] {
            let rows = excess::k_table(kind, &rs, mode)?;
            println!("{} grid, {mode} mode", kind.name());
            println!("{}", excess::render_table(&rows));
        }
    }

    for n in [10, 50, 100, 1000] {
        let k = excess::lower_bound_report(FamilyKind::KingGrid, n, 7, Mode::CodeFaithful)?;
        let s = excess::lower_bound_report(FamilyKind::SlantGrid, n, 7, Mode::CodeFaithful)?;
        println!(
            "n = {n:>4}: king >= {:>6} (n^2/{:.10}), slant >= {:>6} (n^2/{:.10})",
            k.lower_bound, k.denominator, s.lower_bound, s.denominator
        );
    }
    Ok(())
}
