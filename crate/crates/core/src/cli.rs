//! Command-line front end behind the `expdom` binary.
//!
//! Exit codes: 0 success, 1 a check or certificate failed, 2 a solver
//! budget ran out, 64 usage error, 70 internal invariant violation.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::domination::{exact_gamma, exact_gamma_milp, ExactGamma};
use crate::error::{Error, Result};
use crate::excess::{self, format_4, Mode};
use crate::graphs::{FamilyKind, Graph, GraphFamily};
use crate::lp::Budget;
use crate::reproduce::{self, Target};
use crate::tilings::{self, Tile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Parser, Debug)]
#[command(
    name = "expdom",
    version,
    about = "Exponential domination: exact values, excess lower bounds, tiling certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Node limit for each exact solve.
    #[arg(long, global = true)]
    budget_nodes: Option<usize>,

    /// Wall-clock limit in seconds for each exact solve.
    #[arg(long, global = true)]
    budget_seconds: Option<f64>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Code,
    Text,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Code => Mode::CodeFaithful,
            ModeArg::Text => Mode::TextFaithful,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Solver {
    /// Dedicated covering search.
    Search,
    /// Generic LP branch-and-bound.
    Milp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    Table1,
    Table2,
    Figures,
    Hypercube,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimum size of an exponential dominating set.
    Exact(ExactArgs),
    /// Excess-rate lower bound from the r×r block program.
    Lower(LowerArgs),
    /// Periodic tiles and the constructions built from them.
    #[command(subcommand)]
    Tile(TileCommand),
    /// Regenerate published values and diff them against embedded goldens.
    Reproduce(ReproduceArgs),
}

fn parse_family(s: &str) -> std::result::Result<FamilyKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args, Debug)]
struct ExactArgs {
    #[arg(long, value_parser = parse_family)]
    family: FamilyKind,
    /// Side length (grid rows) or hypercube dimension.
    #[arg(long)]
    n: usize,
    /// Grid columns when different from n.
    #[arg(long)]
    m: Option<usize>,
    /// Print the members of a minimum set.
    #[arg(long)]
    witness: bool,
    #[arg(long, value_enum, default_value_t = Solver::Search)]
    solver: Solver,
}

#[derive(Args, Debug)]
struct LowerArgs {
    #[arg(long, value_parser = parse_family)]
    family: FamilyKind,
    /// Odd block size.
    #[arg(long)]
    r: usize,
    /// Grid side for the resulting bound on γ*_e.
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Code)]
    mode: ModeArg,
}

#[derive(Subcommand, Debug)]
enum TileCommand {
    /// Check the periodic set on the torus of side period × multiple.
    Verify {
        #[arg(long, value_parser = parse_family)]
        family: FamilyKind,
        #[arg(long, default_value_t = 1)]
        multiple: usize,
    },
    /// Fraction of vertices the periodic set occupies.
    Density {
        #[arg(long, value_parser = parse_family)]
        family: FamilyKind,
    },
    /// Draw the tile ('X' members, '.' others); csv/json list the cells.
    Ascii {
        #[arg(long, value_parser = parse_family)]
        family: FamilyKind,
    },
    /// Dominating set of the n×n grid from the tile.
    Construct {
        #[arg(long, value_parser = parse_family)]
        family: FamilyKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        witness: bool,
    },
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    #[arg(value_enum)]
    target: TargetArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Code)]
    mode: ModeArg,
    /// Worker threads for independent solves (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

/// Parses `args` (program name first), runs the command, and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok((output, code)) => match emit(&cli, &output) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_INTERNAL
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidDims(_)
        | Error::UnknownFamily(_)
        | Error::UnsupportedFamily(_)
        | Error::VertexOutOfRange(_)
        | Error::InvalidArgument(_)
        | Error::TooLarge(..)
        | Error::Parse(_) => EXIT_USAGE,
        Error::BudgetExhausted(_) | Error::EnumerationBudget { .. } => EXIT_BUDGET,
        _ => EXIT_INTERNAL,
    }
}

fn emit(cli: &Cli, output: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, output)?,
        None => print!("{output}"),
    }
    Ok(())
}

fn budget(cli: &Cli) -> Result<Budget> {
    if cli.budget_nodes == Some(0) {
        return Err(Error::InvalidArgument("--budget-nodes must be positive".into()));
    }
    if let Some(s) = cli.budget_seconds {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidArgument("--budget-seconds must be positive".into()));
        }
    }
    Ok(Budget {
        max_nodes: cli.budget_nodes,
        max_time: cli.budget_seconds.map(Duration::from_secs_f64),
    })
}

fn to_csv<S: Serialize>(rows: &[S]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn to_json<S: Serialize + ?Sized>(value: &S) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Error::Parse(e.to_string()))
}

/// Renders one record in the chosen format, or `text` for text output.
fn render_one<S: Serialize>(format: Format, row: &S, text: String) -> Result<String> {
    match format {
        Format::Text => Ok(text),
        Format::Csv => to_csv(std::slice::from_ref(row)),
        Format::Json => to_json(row),
    }
}

fn render_many<S: Serialize>(format: Format, rows: &[S], text: String) -> Result<String> {
    match format {
        Format::Text => Ok(text),
        Format::Csv => to_csv(rows),
        Format::Json => to_json(rows),
    }
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    match &cli.command {
        Command::Exact(a) => cmd_exact(cli, a),
        Command::Lower(a) => cmd_lower(cli, a),
        Command::Tile(t) => cmd_tile(cli, t),
        Command::Reproduce(a) => cmd_reproduce(cli, a),
    }
}

#[derive(Serialize)]
struct ExactRow {
    family: String,
    n: usize,
    m: usize,
    value: usize,
    optimal: bool,
    lower_bound: usize,
    nodes: u64,
    witness: Option<String>,
}

fn cmd_exact(cli: &Cli, a: &ExactArgs) -> Result<(String, i32)> {
    let family = match a.m {
        Some(m) if a.family != FamilyKind::Hypercube => GraphFamily::new(a.family, a.n, m),
        _ => GraphFamily::square(a.family, a.n),
    };
    let g = Graph::build(family)?;
    let budget = budget(cli)?;
    let e: ExactGamma = match a.solver {
        Solver::Search => exact_gamma(&g, budget)?,
        Solver::Milp => exact_gamma_milp(&g, budget)?,
    };
    let members: Vec<String> = e.witness.coords(&g).iter().map(ToString::to_string).collect();
    let row = ExactRow {
        family: a.family.name().into(),
        n: family.rows,
        m: family.cols,
        value: e.value,
        optimal: e.optimal,
        lower_bound: e.lower_bound,
        nodes: e.nodes,
        witness: a.witness.then(|| members.join(" ")),
    };
    let mut text = format!("{}\n", e.value);
    if !e.optimal {
        text.push_str(&format!(
            "budget exhausted: best set has {} members, every size below {} is ruled out\n",
            e.value, e.lower_bound
        ));
    }
    if a.witness {
        text.push_str(&format!("witness: {}\n", members.join(" ")));
    }
    let code = if e.optimal { EXIT_OK } else { EXIT_BUDGET };
    Ok((render_one(cli.format, &row, text)?, code))
}

#[derive(Serialize)]
struct LowerRow {
    family: String,
    r: usize,
    mode: String,
    interior_size: usize,
    feasible: bool,
    k: Option<f64>,
    x_min: Option<f64>,
    denominator: Option<f64>,
    n: Option<u64>,
    lower_bound: Option<u64>,
}

fn cmd_lower(cli: &Cli, a: &LowerArgs) -> Result<(String, i32)> {
    let mode = Mode::from(a.mode);
    let ext = excess::extract_k_with(a.family, a.r, mode, budget(cli)?)?;
    let report = match (a.n, ext.feasible()) {
        (Some(n), true) => Some(excess::bound_from_extraction(&ext, n)?),
        _ => None,
    };
    let m_value = crate::domination::infinite_grid_weight(a.family)?;
    let row = LowerRow {
        family: a.family.name().into(),
        r: a.r,
        mode: mode.name().into(),
        interior_size: ext.interior_size,
        feasible: ext.feasible(),
        k: ext.k,
        x_min: ext.x_min,
        denominator: ext.k.map(|k| m_value - k),
        n: a.n,
        lower_bound: report.as_ref().map(|r| r.lower_bound),
    };
    let text = match (ext.k, ext.x_min) {
        (Some(k), Some(x)) => {
            let mut t = format!(
                "k = {} (x_min = {x:.10}, |I| = {})\ndenominator = {:.10}\n",
                format_4(k),
                ext.interior_size,
                m_value - k
            );
            if let Some(r) = &report {
                t.push_str(&format!("lower bound for n = {}: {}\n", r.n, r.lower_bound));
            }
            t
        }
        _ => "k = ∅ (block program infeasible)\n".to_string(),
    };
    Ok((render_one(cli.format, &row, text)?, EXIT_OK))
}

#[derive(Serialize)]
struct VerifyRow {
    family: String,
    period: usize,
    multiple: usize,
    side: usize,
    valid: bool,
    min_weight: String,
    min_weight_f64: f64,
}

#[derive(Serialize)]
struct DensityRow {
    family: String,
    period: usize,
    cells: usize,
    density: String,
}

#[derive(Serialize)]
struct CellRow {
    period: usize,
    col: usize,
    row: usize,
}

#[derive(Serialize)]
struct ConstructRow {
    family: String,
    n: usize,
    period: usize,
    q: usize,
    rem: usize,
    formula_bound: usize,
    plain_size: usize,
    plain_valid: bool,
    plain_min_weight: String,
    valid_size: usize,
    within_formula: bool,
    witness: Option<String>,
}

fn cmd_tile(cli: &Cli, t: &TileCommand) -> Result<(String, i32)> {
    match t {
        TileCommand::Verify { family, multiple } => {
            let tile = tilings::tile_for(*family)?;
            let cert = tilings::verify_tile(&tile, *multiple)?;
            let row = VerifyRow {
                family: tile.family.name().into(),
                period: tile.period,
                multiple: *multiple,
                side: tile.period * multiple,
                valid: cert.valid,
                min_weight: cert.min_weight.to_string(),
                min_weight_f64: cert.min_weight.to_f64(),
            };
            let text = tilings::describe_tile_check(&tile, *multiple, &cert) + "\n";
            let code = if cert.valid { EXIT_OK } else { EXIT_CHECK_FAILED };
            Ok((render_one(cli.format, &row, text)?, code))
        }
        TileCommand::Density { family } => {
            let tile = tilings::tile_for(*family)?;
            let d = tilings::density(&tile);
            let row = DensityRow {
                family: tile.family.name().into(),
                period: tile.period,
                cells: tile.cells.len(),
                density: d.to_string(),
            };
            Ok((render_one(cli.format, &row, format!("{d}\n"))?, EXIT_OK))
        }
        TileCommand::Ascii { family } => {
            let tile: Tile = tilings::tile_for(*family)?;
            if cli.format == Format::Csv {
                return Ok((tile.to_csv()?, EXIT_OK));
            }
            let rows: Vec<CellRow> = tile
                .cells
                .iter()
                .map(|c| CellRow {
                    period: tile.period,
                    col: c.col,
                    row: c.row,
                })
                .collect();
            Ok((render_many(cli.format, &rows, tile.ascii())?, EXIT_OK))
        }
        TileCommand::Construct { family, n, witness } => {
            let c = tilings::finite_construction(*family, *n)?;
            let g = Graph::build(GraphFamily::square(*family, *n))?;
            let valid = c.valid_certificate();
            let members: Vec<String> = valid.coords(&g).iter().map(ToString::to_string).collect();
            let row = ConstructRow {
                family: family.name().into(),
                n: *n,
                period: c.period,
                q: c.q,
                rem: c.rem,
                formula_bound: c.formula_bound,
                plain_size: c.certificate.size(),
                plain_valid: c.certificate.valid,
                plain_min_weight: c.certificate.min_weight.to_string(),
                valid_size: valid.size(),
                within_formula: valid.size() <= c.formula_bound,
                witness: witness.then(|| members.join(" ")),
            };
            let mut text = format!(
                "n = {n} = {}·{} + {}, count formula {}\n",
                c.period, c.q, c.rem, c.formula_bound
            );
            text.push_str(&format!(
                "tiled block plus outside vertices: {} members, {}, min weight {}\n",
                c.certificate.size(),
                if c.certificate.valid { "valid" } else { "not dominating" },
                c.certificate.min_weight
            ));
            if let Some(r) = &c.repaired {
                text.push_str(&format!(
                    "repaired: {} members, valid, {} the count formula\n",
                    r.size(),
                    if r.size() <= c.formula_bound { "within" } else { "above" }
                ));
            }
            if *witness {
                text.push_str(&format!("witness: {}\n", members.join(" ")));
            }
            Ok((render_one(cli.format, &row, text)?, EXIT_OK))
        }
    }
}

fn cmd_reproduce(cli: &Cli, a: &ReproduceArgs) -> Result<(String, i32)> {
    let target = match a.target {
        TargetArg::Table1 => Target::Table1,
        TargetArg::Table2 => Target::Table2,
        TargetArg::Figures => Target::Figures,
        TargetArg::Hypercube => Target::Hypercube,
        TargetArg::All => Target::All,
    };
    let budget = budget(cli)?;
    let mode = Mode::from(a.mode);
    let rep = match a.threads {
        Some(0) => return Err(Error::InvalidArgument("--threads must be positive".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Invariant(e.to_string()))?
            .install(|| reproduce::run(target, mode, budget))?,
        None => reproduce::run(target, mode, budget)?,
    };
    let text = rep.text.clone() + &rep.render_checks();
    let code = if rep.budget_limited {
        EXIT_BUDGET
    } else if rep.all_ok() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    Ok((render_many(cli.format, &rep.checks, text)?, code))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors() {
        assert_eq!(run(["expdom", "exact", "--family", "octagon", "--n", "3"]), EXIT_USAGE);
        assert_eq!(run(["expdom", "lower", "--family", "king", "--r", "4"]), EXIT_USAGE);
        assert_eq!(run(["expdom", "frobnicate"]), EXIT_USAGE);
        assert_eq!(
            run(["expdom", "exact", "--family", "king", "--n", "3", "--budget-nodes", "0"]),
            EXIT_USAGE
        );
    }

    #[test]
    fn exit_codes_for_errors() {
        assert_eq!(exit_code(&Error::BudgetExhausted("x".into())), EXIT_BUDGET);
        assert_eq!(exit_code(&Error::Invariant("x".into())), EXIT_INTERNAL);
        assert_eq!(exit_code(&Error::InvalidArgument("x".into())), EXIT_USAGE);
    }
}
