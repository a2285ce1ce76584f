//! Excess-rate lower bounds from a localized mixed integer program.
//!
//! Around a dominator `d0` we take the `r × r` block centered at it and ask
//! for the least total weight the interior `I` can receive when `d0` carries
//! weight 2, every block vertex is dominated (`Ax >= 1`), and no vertex
//! receives more than `b_i` (`Ax <= b`). Here `A[k][j] = 2^-dist(v_k, v_j)`
//! and `b_i = 1 + 2^(1 - dist(d0, v_i))`. The optimum `x_min` yields the
//! guaranteed excess per dominator `k = x_min - |I|`, and any dominating set
//! then has at least `⌈|V| / (m - k)⌉` members.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::domination::{infinite_grid_weight, kbound, BoundReport};
use crate::error::{Error, Result};
use crate::graphs::{FamilyKind, Graph, GraphFamily};
use crate::lp::{self, Budget, LpProblem, LpStatus, MilpOptions, Sense, FEASIBILITY_TOL};

/// How the interior set and the `Ax <= b` rows are chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Interior = block minus its border; `b_i` tightened only where the
    /// column of `v_i` is interior, `b_i = m` elsewhere. Reproduces the
    /// published tables.
    #[default]
    CodeFaithful,
    /// Interior = metric ball `dist(d0, v) < ⌊r/2⌋`; `b_i` tightened
    /// everywhere.
    TextFaithful,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::CodeFaithful => "code",
            Mode::TextFaithful => "text",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "code" | "code-faithful" => Ok(Mode::CodeFaithful),
            "text" | "text-faithful" => Ok(Mode::TextFaithful),
            _ => Err(Error::InvalidArgument(format!("unknown mode '{s}' (expected code or text)"))),
        }
    }
}

fn check_params(kind: FamilyKind, r: usize) -> Result<()> {
    if !matches!(
        kind,
        FamilyKind::KingGrid | FamilyKind::SlantGrid | FamilyKind::StandardGrid
    ) {
        return Err(Error::UnsupportedFamily(format!(
            "{} (the block program needs a planar grid family)",
            kind.name()
        )));
    }
    if r < 3 || r % 2 == 0 {
        return Err(Error::InvalidArgument(format!("r must be odd and at least 3, got {r}")));
    }
    Ok(())
}

/// The block program for one `(family, r, mode)`.
#[derive(Clone, Debug)]
pub struct MilpInstance {
    pub family: FamilyKind,
    pub r: usize,
    pub mode: Mode,
    /// Row-major index of `d0`.
    pub center: usize,
    /// Row-major `r² × r²` matrix `2^-dist`.
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    /// Whether `b_i` is the tightened value rather than the constant `m`.
    pub b_tightened: Vec<bool>,
    /// Sorted interior indices.
    pub interior: Vec<usize>,
    /// Constant used for untightened `b` entries.
    pub m_value: f64,
}

impl MilpInstance {
    pub fn num_vars(&self) -> usize {
        self.r * self.r
    }

    pub fn a_entry(&self, k: usize, j: usize) -> f64 {
        self.a[k * self.num_vars() + j]
    }

    pub fn is_interior(&self, i: usize) -> bool {
        self.interior.binary_search(&i).is_ok()
    }

    /// `[Ax]_i` for every block vertex.
    pub fn received(&self, x: &[f64]) -> Vec<f64> {
        let n = self.num_vars();
        (0..n)
            .map(|k| (0..n).map(|j| self.a_entry(k, j) * x[j]).sum())
            .collect()
    }

    /// Largest violation of `Ax >= 1` and `Ax <= b` at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        self.received(x)
            .iter()
            .zip(&self.b)
            .map(|(&ax, &b)| (1.0 - ax).max(ax - b).max(0.0))
            .fold(0.0, f64::max)
    }

    /// The program in solver form.
    pub fn to_lp(&self) -> LpProblem {
        let n = self.num_vars();
        let objective = (0..n)
            .map(|j| self.interior.iter().map(|&i| self.a_entry(i, j)).sum())
            .collect();
        let mut p = LpProblem::minimize(objective);
        for k in 0..n {
            let row = self.a[k * n..(k + 1) * n].to_vec();
            p.add_constraint(row.clone(), Sense::Ge, 1.0)
                .expect("row length matches");
            p.add_constraint(row, Sense::Le, self.b[k])
                .expect("row length matches");
        }
        for &i in &self.interior {
            p.set_bounds(i, 0.0, 2.0).expect("index in range");
            p.set_integer(i).expect("index in range");
        }
        p.set_bounds(self.center, 2.0, 2.0).expect("index in range");
        p
    }
}

/// Indices of the interior set `I` of the `r × r` block.
pub fn interior_set(r: usize, family: FamilyKind, mode: Mode) -> Result<Vec<usize>> {
    check_params(family, r)?;
    match mode {
        Mode::CodeFaithful => Ok((0..r * r)
            .filter(|&i| {
                let (row, col) = (i / r, i % r);
                (1..r - 1).contains(&row) && (1..r - 1).contains(&col)
            })
            .collect()),
        Mode::TextFaithful => {
            let g = Graph::build(GraphFamily::new(family, r, r))?;
            let center = (r * r - 1) / 2;
            Ok((0..r * r)
                .filter(|&i| g.distance(center, i) < r / 2)
                .collect())
        }
    }
}

pub fn build_milp(family: FamilyKind, r: usize, mode: Mode) -> Result<MilpInstance> {
    check_params(family, r)?;
    let g = Graph::build(GraphFamily::new(family, r, r))?;
    let n = r * r;
    let center = (n - 1) / 2;
    let m_value = infinite_grid_weight(family)?;
    let mut a = vec![0.0; n * n];
    for k in 0..n {
        for j in 0..n {
            a[k * n + j] = 0.5f64.powi(g.distance(k, j) as i32);
        }
    }
    let b_tightened: Vec<bool> = (0..n)
        .map(|i| match mode {
            Mode::CodeFaithful => (1..r - 1).contains(&(i % r)),
            Mode::TextFaithful => true,
        })
        .collect();
    let b = (0..n)
        .map(|i| {
            if b_tightened[i] {
                1.0 + 0.5f64.powi(g.distance(center, i) as i32 - 1)
            } else {
                m_value
            }
        })
        .collect();
    Ok(MilpInstance {
        family,
        r,
        mode,
        center,
        a,
        b,
        b_tightened,
        interior: interior_set(r, family, mode)?,
        m_value,
    })
}

/// Result of solving one block program.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KExtraction {
    pub family: FamilyKind,
    pub r: usize,
    pub mode: Mode,
    pub interior_size: usize,
    pub status: LpStatus,
    pub x_min: Option<f64>,
    pub k: Option<f64>,
    pub x: Option<Vec<f64>>,
    pub nodes: usize,
}

impl KExtraction {
    pub fn feasible(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

pub fn extract_k(family: FamilyKind, r: usize, mode: Mode) -> Result<KExtraction> {
    extract_k_with(family, r, mode, Budget::unlimited())
}

/// Solves the block program. Budget exhaustion is an error because an
/// unproven optimum would overstate `k` and so give an unsound bound.
pub fn extract_k_with(family: FamilyKind, r: usize, mode: Mode, budget: Budget) -> Result<KExtraction> {
    let inst = build_milp(family, r, mode)?;
    let sol = lp::solve_milp_with(
        &inst.to_lp(),
        &MilpOptions {
            budget,
            ..Default::default()
        },
    )?;
    let base = KExtraction {
        family,
        r,
        mode,
        interior_size: inst.interior.len(),
        status: sol.status,
        x_min: None,
        k: None,
        x: None,
        nodes: sol.nodes,
    };
    match sol.status {
        LpStatus::Optimal => {
            let violation = inst.max_violation(&sol.x);
            if violation > FEASIBILITY_TOL {
                return Err(Error::Invariant(format!(
                    "block program optimum violates a row by {violation:e}"
                )));
            }
            Ok(KExtraction {
                x_min: Some(sol.objective),
                k: Some(sol.objective - inst.interior.len() as f64),
                x: Some(sol.x),
                ..base
            })
        }
        LpStatus::Infeasible => Ok(base),
        LpStatus::Incumbent | LpStatus::BudgetExhausted => Err(Error::BudgetExhausted(format!(
            "{} r={r} after {} nodes",
            family.name(),
            sol.nodes
        ))),
        LpStatus::Unbounded => Err(Error::Invariant("block program is unbounded".into())),
    }
}

/// `⌈n² / (m - k)⌉` for the `n × n` grid using the `k` of the `r` block.
pub fn lower_bound_report(family: FamilyKind, n: u64, r: usize, mode: Mode) -> Result<BoundReport> {
    let ext = extract_k(family, r, mode)?;
    bound_from_extraction(&ext, n)
}

pub fn bound_from_extraction(ext: &KExtraction, n: u64) -> Result<BoundReport> {
    let k = ext.k.ok_or_else(|| {
        Error::Infeasible(format!("{} block program with r={} has no solution", ext.family.name(), ext.r))
    })?;
    let m_value = infinite_grid_weight(ext.family)?;
    Ok(BoundReport {
        family: ext.family.name().to_string(),
        n,
        r: Some(ext.r),
        mode: Some(ext.mode.name().to_string()),
        m_value,
        k,
        denominator: m_value - k,
        lower_bound: kbound(n * n, m_value, k)?,
    })
}

/// One column of a k table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub family: String,
    pub r: usize,
    pub k: Option<f64>,
    pub denominator: Option<f64>,
    pub feasible: bool,
}

impl TableRow {
    pub fn from_extraction(ext: &KExtraction) -> Result<Self> {
        let m_value = infinite_grid_weight(ext.family)?;
        Ok(TableRow {
            family: ext.family.name().to_string(),
            r: ext.r,
            k: ext.k,
            denominator: ext.k.map(|k| m_value - k),
            feasible: ext.feasible(),
        })
    }
}

/// Solves the block program for every `r` in `rs`.
pub fn k_table(family: FamilyKind, rs: &[usize], mode: Mode) -> Result<Vec<TableRow>> {
    rs.iter()
        .map(|&r| TableRow::from_extraction(&extract_k(family, r, mode)?))
        .collect()
}

/// Three-line layout: `r`, `k`, and the `n²/denominator` bound.
pub fn render_table(rows: &[TableRow]) -> String {
    let mut header = vec!["r".to_string()];
    let mut ks = vec!["k".to_string()];
    let mut bounds = vec![">=".to_string()];
    for row in rows {
        header.push(row.r.to_string());
        match (row.k, row.denominator) {
            (Some(k), Some(d)) => {
                ks.push(format_4(k));
                bounds.push(format!("n^2/{}", format_4(d)));
            }
            _ => {
                ks.push("∅".into());
                bounds.push("∅".into());
            }
        }
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            [&header, &ks, &bounds]
                .iter()
                .map(|line| line[c].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    [&header, &ks, &bounds]
        .iter()
        .map(|line| {
            let cells: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s:>w$}"))
                .collect();
            cells.join(" | ").trim_end().to_string() + "\n"
        })
        .collect()
}

/// Fixed 4-decimal formatting with trailing zeros dropped (`1`, `5.7806`).
pub fn format_4(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_sizes() {
        use FamilyKind::*;
        assert_eq!(interior_set(7, KingGrid, Mode::CodeFaithful).unwrap().len(), 25);
        assert_eq!(interior_set(7, KingGrid, Mode::TextFaithful).unwrap().len(), 25);
        assert_eq!(interior_set(3, KingGrid, Mode::CodeFaithful).unwrap(), vec![4]);
        assert_eq!(interior_set(5, SlantGrid, Mode::TextFaithful).unwrap().len(), 7);
        assert_eq!(interior_set(7, SlantGrid, Mode::TextFaithful).unwrap().len(), 19);
        assert!(interior_set(4, KingGrid, Mode::CodeFaithful).is_err());
        assert!(interior_set(1, KingGrid, Mode::CodeFaithful).is_err());
        assert!(interior_set(5, FamilyKind::Torus, Mode::CodeFaithful).is_err());
    }

    #[test]
    fn instance_shape() {
        let inst = build_milp(FamilyKind::KingGrid, 7, Mode::CodeFaithful).unwrap();
        let p = inst.to_lp();
        assert_eq!(p.num_vars(), 49);
        assert_eq!(p.integer_vars().count(), 25);
        for k in 0..49 {
            assert_eq!(inst.a_entry(k, k), 1.0);
            for j in 0..49 {
                assert_eq!(inst.a_entry(k, j), inst.a_entry(j, k));
            }
        }
        let small = build_milp(FamilyKind::KingGrid, 3, Mode::CodeFaithful).unwrap();
        assert_eq!(small.b[small.center], 3.0);
        let slant = build_milp(FamilyKind::SlantGrid, 5, Mode::CodeFaithful).unwrap();
        assert_eq!(slant.b_tightened.iter().filter(|&&t| t).count(), 15);
        assert!(slant.b.iter().zip(&slant.b_tightened).all(|(&b, &t)| t || b == 26.0));
    }

    #[test]
    fn small_blocks() {
        let k3 = extract_k(FamilyKind::KingGrid, 3, Mode::CodeFaithful).unwrap();
        assert!((k3.k.unwrap() - 1.0).abs() < 1e-9);
        let r = lower_bound_report(FamilyKind::KingGrid, 10, 3, Mode::CodeFaithful).unwrap();
        assert!((r.denominator - 33.0).abs() < 1e-9);
        assert_eq!(r.lower_bound, 4);
        let s3 = extract_k(FamilyKind::SlantGrid, 3, Mode::CodeFaithful).unwrap();
        assert!((s3.k.unwrap() - 1.2353).abs() < 1e-3);
    }

    #[test]
    fn table_layout() {
        let rows = vec![
            TableRow {
                family: "king".into(),
                r: 3,
                k: Some(1.0),
                denominator: Some(33.0),
                feasible: true,
            },
            TableRow {
                family: "king".into(),
                r: 11,
                k: None,
                denominator: None,
                feasible: false,
            },
        ];
        let text = render_table(&rows);
        assert_eq!(text.lines().count(), 3);
        assert!(text.contains("n^2/33"));
        assert!(text.contains('∅'));
        assert_eq!(format_4(10.690496698), "10.6905");
        assert_eq!(format_4(2.0), "2");
    }
}
