//! Regenerates the k tables and hypercube bounds and diffs them against the
//! embedded reference values.
//!
//! Pass `figures` to include the exact grid values (a few minutes).

use expdom::excess::Mode;
use expdom::lp::Budget;
use expdom::reproduce::{self, Target};

fn main() -> expdom::Result<()> {
    let with_figures = std::env::args().any(|a| a == "figures");
    let mut targets = vec![Target::Table1, Target::Table2, Target::Hypercube];
    if with_figures {
        targets.push(Target::Figures);
    }
    for t in targets {
        let rep = reproduce::run(t, Mode::CodeFaithful, Budget::unlimited())?;
        print!("{}{}\n", rep.text, rep.render_checks());
    }
    Ok(())
}
