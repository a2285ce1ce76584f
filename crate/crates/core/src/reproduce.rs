//! Regenerates the published tables and counts and diffs them against
//! embedded goldens.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domination::exact_gamma;
use crate::error::Result;
use crate::excess::{self, format_4, Mode, TableRow};
use crate::graphs::{FamilyKind, Graph, GraphFamily};
use crate::hypercube::{self, QnRow};
use crate::lp::Budget;

/// Tolerance on 4-decimal table entries.
pub const K_TOL: f64 = 1e-3;
/// Tolerance on the 10-decimal constants.
pub const CONSTANT_TOL: f64 = 1e-6;

/// `(r, k)` for the King grid; `None` marks an infeasible block.
pub const KING_K: [(usize, Option<f64>); 5] = [
    (3, Some(1.0)),
    (5, Some(5.7806)),
    (7, Some(10.6905)),
    (9, Some(10.4103)),
    (11, None),
];
pub const SLANT_K: [(usize, Option<f64>); 4] = [
    (3, Some(1.2353)),
    (5, Some(3.9774)),
    (7, Some(6.2655)),
    (9, None),
];
pub const KING_X_MIN_7: f64 = 35.6904966982;
pub const KING_DENOMINATOR: f64 = 23.3095033018;
pub const SLANT_DENOMINATOR: f64 = 19.7344975348;

/// `(n, γ*_e)` for small King grids.
pub const KING_GAMMA: [(usize, usize); 9] = [
    (2, 1),
    (3, 1),
    (4, 2),
    (5, 3),
    (6, 4),
    (7, 4),
    (8, 6),
    (9, 7),
    (10, 8),
];
/// `(n, γ*_e)` for small Slant grids.
pub const SLANT_GAMMA: [(usize, usize); 8] = [
    (3, 2),
    (4, 3),
    (5, 4),
    (6, 5),
    (7, 6),
    (8, 7),
    (9, 8),
    (10, 10),
];

/// One golden comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub target: String,
    pub item: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

impl Check {
    fn new(target: &str, item: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>, ok: bool) -> Self {
        Check {
            target: target.into(),
            item: item.into(),
            expected: expected.into(),
            actual: actual.into(),
            ok,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Reproduction {
    pub checks: Vec<Check>,
    /// Rendered tables, one block per target.
    pub text: String,
    /// Observations reported without being checked.
    pub notes: Vec<String>,
    /// Some solve stopped on its budget before proving optimality.
    pub budget_limited: bool,
}

impl Reproduction {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    fn merge(&mut self, other: Reproduction) {
        self.checks.extend(other.checks);
        self.text.push_str(&other.text);
        self.notes.extend(other.notes);
        self.budget_limited |= other.budget_limited;
    }

    /// Check lines followed by notes and a verdict.
    pub fn render_checks(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.ok { "ok  " } else { "DIFF" };
            out.push_str(&format!(
                "{mark} {:<10} {:<28} expected {:<16} got {}\n",
                c.target, c.item, c.expected, c.actual
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        let failed = self.checks.iter().filter(|c| !c.ok).count();
        out.push_str(&format!(
            "{} of {} checks match{}\n",
            self.checks.len() - failed,
            self.checks.len(),
            if self.budget_limited { " (budget-limited)" } else { "" }
        ));
        out
    }
}

fn fmt_k(k: Option<f64>) -> String {
    k.map(format_4).unwrap_or_else(|| "∅".into())
}

/// Block-program table for one family, diffed against its golden row.
pub fn k_table(family: FamilyKind, mode: Mode) -> Result<Reproduction> {
    let (target, golden, denominator): (&str, &[(usize, Option<f64>)], f64) = match family {
        FamilyKind::KingGrid => ("table1", &KING_K, KING_DENOMINATOR),
        _ => ("table2", &SLANT_K, SLANT_DENOMINATOR),
    };
    let rs: Vec<usize> = golden.iter().map(|&(r, _)| r).collect();
    let extractions: Vec<_> = rs
        .par_iter()
        .map(|&r| excess::extract_k(family, r, mode))
        .collect::<Result<_>>()?;
    let rows: Vec<TableRow> = extractions
        .iter()
        .map(TableRow::from_extraction)
        .collect::<Result<_>>()?;

    let mut rep = Reproduction {
        text: format!("{} ({} grid, {mode} mode)\n{}\n", target, family.name(), excess::render_table(&rows)),
        ..Default::default()
    };
    for (row, &(r, want)) in rows.iter().zip(golden) {
        let ok = match (want, row.k) {
            (Some(w), Some(k)) => (k - w).abs() <= K_TOL,
            (None, None) => true,
            _ => false,
        };
        rep.checks.push(Check::new(target, format!("k at r={r}"), fmt_k(want), fmt_k(row.k), ok));
    }
    let seven = rows.iter().find(|row| row.r == 7);
    let d = seven.and_then(|row| row.denominator);
    rep.checks.push(Check::new(
        target,
        "denominator at r=7",
        format!("{denominator:.10}"),
        d.map(|d| format!("{d:.10}")).unwrap_or_else(|| "∅".into()),
        d.is_some_and(|d| (d - denominator).abs() <= CONSTANT_TOL),
    ));
    if family == FamilyKind::KingGrid {
        let x = extractions.iter().find(|e| e.r == 7).and_then(|e| e.x_min);
        rep.checks.push(Check::new(
            target,
            "x_min at r=7",
            format!("{KING_X_MIN_7:.10}"),
            x.map(|x| format!("{x:.10}")).unwrap_or_else(|| "∅".into()),
            x.is_some_and(|x| (x - KING_X_MIN_7).abs() <= CONSTANT_TOL),
        ));
    }
    Ok(rep)
}

/// Exact values for small King and Slant grids.
pub fn figures(budget: Budget) -> Result<Reproduction> {
    let jobs: Vec<(FamilyKind, usize, usize)> = KING_GAMMA
        .iter()
        .map(|&(n, v)| (FamilyKind::KingGrid, n, v))
        .chain(SLANT_GAMMA.iter().map(|&(n, v)| (FamilyKind::SlantGrid, n, v)))
        .collect();
    // Largest instances first so they do not trail the pool.
    let mut order: Vec<usize> = (0..jobs.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(jobs[i].1));
    let mut results: Vec<(usize, Result<crate::domination::ExactGamma>)> = order
        .par_iter()
        .map(|&i| {
            let (kind, n, _) = jobs[i];
            let g = Graph::build(GraphFamily::square(kind, n));
            (i, g.and_then(|g| exact_gamma(&g, budget)))
        })
        .collect();
    results.sort_by_key(|(i, _)| *i);

    let mut rep = Reproduction::default();
    let mut text = String::from("figures (minimum exponential dominating sets)\nfamily  n  gamma\n");
    for (i, res) in results {
        let (kind, n, want) = jobs[i];
        let e = res?;
        let target = if kind == FamilyKind::KingGrid { "figure4" } else { "figure6" };
        let actual = if e.optimal {
            e.value.to_string()
        } else {
            rep.budget_limited = true;
            format!("{}..={} (budget)", e.lower_bound, e.value)
        };
        text.push_str(&format!("{:<6} {:>2}  {actual}\n", kind.name(), n));
        rep.checks.push(Check::new(
            target,
            format!("{} n={n}", kind.name()),
            want.to_string(),
            actual,
            e.optimal && e.value == want,
        ));
    }
    rep.text = text + "\n";
    Ok(rep)
}

/// Hypercube bounds for `n = 1..=7`, exact values included.
pub fn hypercube(budget: Budget) -> Result<(Reproduction, Vec<QnRow>)> {
    let rows = hypercube::bounds_table(7, 7, budget)?;
    let mut rep = Reproduction::default();
    let mut text = String::from("hypercube bounds\n n  lower  exact  construction  sqrt2^n\n");
    for row in &rows {
        text.push_str(&format!(
            "{:>2}  {:>5}  {:>5}  {:>12}  {:>7.3}\n",
            row.n,
            row.lower,
            row.exact.map(|e| e.to_string()).unwrap_or_else(|| "-".into()),
            row.construction_size,
            row.sqrt2_bound
        ));
        if row.n >= 2 {
            let exact = row.exact.unwrap_or(row.construction_size) as u64;
            rep.checks.push(Check::new(
                "hypercube",
                format!("lower <= exact <= constr n={}", row.n),
                "true",
                format!("{} <= {} <= {}", row.lower, exact, row.construction_size),
                row.lower <= exact && exact <= row.construction_size as u64,
            ));
        } else if row.lower_exceeds_exact() {
            rep.notes.push(format!(
                "Q_1: closed-form lower bound {} exceeds the exact value {}",
                row.lower,
                row.exact.unwrap_or_default()
            ));
        }
    }
    rep.text = text + "\n";
    Ok((rep, rows))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Table1,
    Table2,
    Figures,
    Hypercube,
    All,
}

pub fn run(target: Target, mode: Mode, budget: Budget) -> Result<Reproduction> {
    let mut rep = Reproduction::default();
    if matches!(target, Target::Table1 | Target::All) {
        rep.merge(k_table(FamilyKind::KingGrid, mode)?);
    }
    if matches!(target, Target::Table2 | Target::All) {
        rep.merge(k_table(FamilyKind::SlantGrid, mode)?);
    }
    if matches!(target, Target::Figures | Target::All) {
        rep.merge(figures(budget)?);
    }
    if matches!(target, Target::Hypercube | Target::All) {
        rep.merge(hypercube(budget)?.0);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_match_goldens() {
        let t1 = k_table(FamilyKind::KingGrid, Mode::CodeFaithful).unwrap();
        assert!(t1.all_ok(), "{}", t1.render_checks());
        let t2 = k_table(FamilyKind::SlantGrid, Mode::CodeFaithful).unwrap();
        assert!(t2.all_ok(), "{}", t2.render_checks());
        assert!(t1.text.contains("10.6905"));
    }

    #[test]
    fn text_mode_departs_from_the_slant_golden() {
        let t2 = k_table(FamilyKind::SlantGrid, Mode::TextFaithful).unwrap();
        assert!(!t2.all_ok());
    }

    #[test]
    fn hypercube_reports_the_small_anomaly() {
        let (rep, rows) = hypercube(Budget::unlimited()).unwrap();
        assert!(rep.all_ok());
        assert_eq!(rows[0].lower, 2);
        assert_eq!(rows[0].exact, Some(1));
        assert_eq!(rep.notes.len(), 1);
    }
}
