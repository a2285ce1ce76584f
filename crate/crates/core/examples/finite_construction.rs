//! Dominating sets of n×n grids from the periodic tiles, compared with the
//! count `p q² + 2 p q r + r²` for `n = p q + r`.

use expdom::tilings::finite_construction;
use expdom::FamilyKind;

fn main() -> expdom::Result<()> {
    for (kind, ns) in [
        (FamilyKind::KingGrid, [23, 24, 30, 46, 47]),
        (FamilyKind::SlantGrid, [19, 20, 25, 38, 39]),
    ] {
        println!("{} grid", kind.name());
        println!("   n  formula  plain  dominating  repaired  within");
        for n in ns {
            let c = finite_construction(kind, n)?;
            let valid = c.valid_certificate();
            println!(
                "{n:>4}  {:>7}  {:>5}  {:>10}  {:>8}  {:>6}",
                c.formula_bound,
                c.certificate.size(),
                c.certificate.valid,
                valid.size(),
                valid.size() <= c.formula_bound
            );
        }
        println!();
    }
    Ok(())
}
