//! The three periodic tiles: drawings, densities and torus certificates.

use expdom::tilings::{self, describe_tile_check, verify_tile};

fn main() -> expdom::Result<()> {
    for tile in [tilings::torus_tile(), tilings::king_tile(), tilings::slant_tile()] {
        println!("{} tile, period {}, density {}", tile.family.name(), tile.period, tilings::density(&tile));
        print!("{}", tile.ascii());
        for multiple in 1..=2 {
            let cert = verify_tile(&tile, multiple)?;
            println!("  {}", describe_tile_check(&tile, multiple, &cert));
        }
        // Any cyclic shift is the same periodic set up to translation.
        let shifted = tile.translate(5, 3);
        println!("  shifted by (5,3): valid = {}", verify_tile(&shifted, 1)?.valid);
        // Removing one cell leaves part of the torus short.
        let mut thinned = tile.clone();
        thinned.cells.pop();
        println!("  one cell removed: valid = {}\n", verify_tile(&thinned, 1)?.valid);
    }
    Ok(())
}
