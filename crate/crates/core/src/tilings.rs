//! Periodic tiles and the finite dominating sets built from them.
//!
//! A tile of period `p` is a set of cells in `[0, p)²`. Repeating it over the
//! plane gives a periodic set; checking that set on the torus of side
//! `p · multiple` is a sound certificate for the infinite grid, since the
//! torus distance is the minimum over periodic copies and so each copy's
//! weight is counted at most once.

use std::fmt::Write as _;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::domination::{check_certificate, repair_cover, DominationCertificate};
use crate::error::{Error, Result};
use crate::graphs::{FamilyKind, Graph, GraphFamily};

/// A cell in figure coordinates: `col` runs left to right, `row` bottom to top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TileCell {
    pub col: usize,
    pub row: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    pub period: usize,
    pub cells: Vec<TileCell>,
    /// Toroidal family the tile is certified on.
    pub family: FamilyKind,
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    period: usize,
    col: usize,
    row: usize,
}

/// Cells `(c, (a - b·c) mod p)` for `c ∈ [0, p)`.
fn residue_tile(period: usize, a: usize, b: usize, family: FamilyKind) -> Tile {
    let cells = (0..period)
        .map(|c| TileCell {
            col: c,
            row: (a + period - (b * c) % period) % period,
        })
        .collect();
    Tile {
        period,
        cells,
        family,
    }
}

/// The 23-periodic tile for the King grid.
pub fn king_tile() -> Tile {
    residue_tile(23, 22, 4, FamilyKind::ToroidalKing)
}

/// The 19-periodic tile for the Slant grid.
pub fn slant_tile() -> Tile {
    residue_tile(19, 18, 5, FamilyKind::ToroidalSlant)
}

/// The 13-periodic tile for the square grid.
pub fn torus_tile() -> Tile {
    residue_tile(13, 12, 5, FamilyKind::Torus)
}

/// The tile matching a grid family, planar or toroidal.
pub fn tile_for(kind: FamilyKind) -> Result<Tile> {
    match kind {
        FamilyKind::KingGrid | FamilyKind::ToroidalKing => Ok(king_tile()),
        FamilyKind::SlantGrid | FamilyKind::ToroidalSlant => Ok(slant_tile()),
        FamilyKind::StandardGrid | FamilyKind::Torus => Ok(torus_tile()),
        FamilyKind::Hypercube => Err(Error::UnsupportedFamily("hypercube has no tile".into())),
    }
}

impl Tile {
    /// Cyclic shift of every cell by `(dcol, drow)`.
    pub fn translate(&self, dcol: usize, drow: usize) -> Tile {
        let p = self.period;
        Tile {
            cells: self
                .cells
                .iter()
                .map(|c| TileCell {
                    col: (c.col + dcol) % p,
                    row: (c.row + drow) % p,
                })
                .collect(),
            ..self.clone()
        }
    }

    /// Rows top to bottom, `X` on cells and `.` elsewhere.
    pub fn ascii(&self) -> String {
        let p = self.period;
        let mut grid = vec![vec!['.'; p]; p];
        for c in &self.cells {
            grid[c.row][c.col] = 'X';
        }
        let mut out = String::with_capacity(p * (p + 1));
        for line in grid.iter().rev() {
            out.extend(line.iter());
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for c in &self.cells {
            w.serialize(CsvRow {
                period: self.period,
                col: c.col,
                row: c.row,
            })
            .map_err(|e| Error::Parse(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_csv(text: &str, family: FamilyKind) -> Result<Tile> {
        let mut period = None;
        let mut cells = Vec::new();
        for rec in csv::Reader::from_reader(text.as_bytes()).deserialize::<CsvRow>() {
            let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
            if *period.get_or_insert(rec.period) != rec.period {
                return Err(Error::Parse("mixed periods in tile CSV".into()));
            }
            if rec.col >= rec.period || rec.row >= rec.period {
                return Err(Error::Parse(format!("cell ({}, {}) outside the period", rec.col, rec.row)));
            }
            cells.push(TileCell {
                col: rec.col,
                row: rec.row,
            });
        }
        let period = period.ok_or_else(|| Error::Parse("empty tile CSV".into()))?;
        Ok(Tile {
            period,
            cells,
            family,
        })
    }

    /// Vertex indices of the periodic set restricted to an `rows × cols` grid
    /// whose origin sits on a tile corner.
    fn periodic_indices(&self, g: &Graph, rows: usize, cols: usize) -> Vec<usize> {
        let p = self.period;
        let mut set = Vec::new();
        for br in (0..rows).step_by(p) {
            for bc in (0..cols).step_by(p) {
                for c in &self.cells {
                    let (row, col) = (br + c.row, bc + c.col);
                    if row < rows && col < cols {
                        set.push(g.at(row, col));
                    }
                }
            }
        }
        set
    }
}

/// Fraction of vertices the periodic set occupies.
pub fn density(t: &Tile) -> Ratio<u64> {
    let mut distinct = t.cells.clone();
    distinct.sort_unstable();
    distinct.dedup();
    Ratio::new(distinct.len() as u64, (t.period * t.period) as u64)
}

/// Checks the periodic set on the torus of side `period · multiple`.
pub fn verify_tile(t: &Tile, multiple: usize) -> Result<DominationCertificate> {
    if multiple == 0 {
        return Err(Error::InvalidArgument("multiple must be at least 1".into()));
    }
    if !t.family.is_toroidal() {
        return Err(Error::UnsupportedFamily(format!(
            "tiles are verified on toroidal families, not {}",
            t.family.name()
        )));
    }
    let side = t.period * multiple;
    let g = Graph::build(GraphFamily::new(t.family, side, side))?;
    let set = t.periodic_indices(&g, side, side);
    check_certificate(&g, &set)
}

/// A dominating set of the `n × n` grid built from a tile.
#[derive(Clone, Debug, Serialize)]
pub struct FiniteConstruction {
    pub family: FamilyKind,
    pub n: usize,
    pub period: usize,
    /// `n = period · q + rem`.
    pub q: usize,
    pub rem: usize,
    /// `p q² + 2 p q rem + rem²`.
    pub formula_bound: usize,
    /// The tiled block plus every vertex outside it, checked as is.
    pub certificate: DominationCertificate,
    /// The same set completed to a valid one and pruned; present when the
    /// plain set falls short near the grid border.
    pub repaired: Option<DominationCertificate>,
}

impl FiniteConstruction {
    /// A valid set: the plain one if it dominates, the repaired one otherwise.
    pub fn valid_certificate(&self) -> &DominationCertificate {
        match &self.repaired {
            Some(r) => r,
            None => &self.certificate,
        }
    }
}

/// Tiles the `pq × pq` corner block and adds every vertex outside it.
///
/// The tiled block alone under-serves vertices on the outer border of the
/// grid, which lack the copies beyond it, so the plain set is generally not
/// dominating; `repaired` then holds a valid completion.
pub fn finite_construction(family: FamilyKind, n: usize) -> Result<FiniteConstruction> {
    if !matches!(family, FamilyKind::KingGrid | FamilyKind::SlantGrid) {
        return Err(Error::UnsupportedFamily(format!(
            "finite constructions exist for king and slant grids, not {}",
            family.name()
        )));
    }
    let tile = tile_for(family)?;
    let p = tile.period;
    if n < p {
        return Err(Error::InvalidArgument(format!(
            "n = {n} is below one tile period ({p})"
        )));
    }
    let (q, rem) = (n / p, n % p);
    let g = Graph::build(GraphFamily::square(family, n))?;
    let block = p * q;
    let mut set = tile.periodic_indices(&g, block, block);
    for row in 0..n {
        for col in 0..n {
            if row >= block || col >= block {
                set.push(g.at(row, col));
            }
        }
    }
    let certificate = check_certificate(&g, &set)?;
    let repaired = if certificate.valid {
        None
    } else {
        Some(check_certificate(&g, &repair_cover(&g, &set)?)?)
    };
    Ok(FiniteConstruction {
        family,
        n,
        period: p,
        q,
        rem,
        formula_bound: p * q * q + 2 * p * q * rem + rem * rem,
        certificate,
        repaired,
    })
}

/// Human-readable summary of a tile check.
pub fn describe_tile_check(t: &Tile, multiple: usize, cert: &DominationCertificate) -> String {
    let side = t.period * multiple;
    let mut s = String::new();
    let verdict = if cert.valid { "valid" } else { "INVALID" };
    let cmp = if cert.valid { ">=" } else { "<" };
    let _ = write!(
        s,
        "{verdict} on {} {side}x{side}, min weight = {} {cmp} 1",
        t.family.name(),
        cert.min_weight
    );
    s
}
