//! Exponential-domination semantics: weights, certificates, the covering
//! integer program and its relaxation, and the total-weight constant `m(G)`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::graphs::{Coord, FamilyKind, Graph, GraphFamily};
use crate::lp::{self, Budget, LpProblem, LpStatus, MilpOptions, Sense};
use crate::search::{self, SearchOutcome};

/// Default vertex cap for materializing a weight matrix.
pub const WEIGHT_MATRIX_CAP: usize = 4096;

/// `W[u][v] = 2^(1 - dist(u, v))`, stored through the distance matrix.
#[derive(Clone, Debug)]
pub struct WeightMatrix {
    size: usize,
    dist: Vec<u16>,
}

impl WeightMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn distance(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.size + v] as usize
    }

    pub fn entry(&self, u: usize, v: usize) -> Dyadic {
        Dyadic::weight_at(self.distance(u, v))
    }

    pub fn entry_f64(&self, u: usize, v: usize) -> f64 {
        2f64.powi(1 - self.distance(u, v) as i32)
    }

    pub fn row_f64(&self, u: usize) -> Vec<f64> {
        (0..self.size).map(|v| self.entry_f64(u, v)).collect()
    }

    pub fn max_distance(&self) -> usize {
        self.dist.iter().copied().max().unwrap_or(0) as usize
    }
}

pub fn weight_matrix(g: &Graph) -> Result<WeightMatrix> {
    weight_matrix_capped(g, WEIGHT_MATRIX_CAP)
}

pub fn weight_matrix_capped(g: &Graph, cap: usize) -> Result<WeightMatrix> {
    let nv = g.vertex_count();
    if nv > cap || nv > crate::graphs::DISTANCE_CACHE_CAP {
        return Err(Error::TooLarge(nv, cap.min(crate::graphs::DISTANCE_CACHE_CAP)));
    }
    let dist = g.distance_matrix().expect("within cache cap").to_vec();
    Ok(WeightMatrix { size: nv, dist })
}

/// Received weights and excesses of a candidate dominating set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DominationCertificate {
    pub family: GraphFamily,
    /// Sorted, duplicate-free vertex indices.
    pub set: Vec<usize>,
    pub received: Vec<Dyadic>,
    pub excess: Vec<Dyadic>,
    pub total_excess: Dyadic,
    pub min_weight: Dyadic,
    pub valid: bool,
}

impl DominationCertificate {
    pub fn size(&self) -> usize {
        self.set.len()
    }

    pub fn coords(&self, g: &Graph) -> Vec<Coord> {
        self.set.iter().map(|&v| g.coord(v)).collect()
    }

    pub fn report(&self, g: &Graph) -> CertificateReport {
        CertificateReport {
            family: self.family.kind.name().to_string(),
            rows: self.family.rows,
            cols: self.family.cols,
            size: self.size(),
            members: self.coords(g).iter().map(ToString::to_string).collect(),
            min_weight: self.min_weight.to_string(),
            min_weight_f64: self.min_weight.to_f64(),
            total_excess: self.total_excess.to_string(),
            total_excess_f64: self.total_excess.to_f64(),
            valid: self.valid,
        }
    }
}

/// Serializable summary of a certificate.
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct CertificateReport {
    pub family: String,
    pub rows: usize,
    pub cols: usize,
    pub size: usize,
    pub members: Vec<String>,
    pub min_weight: String,
    pub min_weight_f64: f64,
    pub total_excess: String,
    pub total_excess_f64: f64,
    pub valid: bool,
}

impl CertificateReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "family: {}", self.family);
        let _ = writeln!(out, "n: {}", self.rows);
        if self.cols != self.rows && self.family != "hypercube" {
            let _ = writeln!(out, "m: {}", self.cols);
        }
        let _ = writeln!(out, "|D|: {}", self.size);
        let _ = writeln!(out, "members: {}", self.members.join(" "));
        let _ = writeln!(out, "min weight: {} ({})", self.min_weight, self.min_weight_f64);
        let _ = writeln!(out, "total excess: {} ({})", self.total_excess, self.total_excess_f64);
        let _ = writeln!(out, "valid: {}", self.valid);
        out
    }
}

/// Computes `w*(D, v)` for every vertex in exact arithmetic.
pub fn check_certificate(g: &Graph, set: &[usize]) -> Result<DominationCertificate> {
    for &v in set {
        g.check_vertex(v)?;
    }
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    let nv = g.vertex_count();
    let mut received = Vec::with_capacity(nv);
    for v in 0..nv {
        // Bucket by distance so each vertex needs one dyadic sum per radius.
        let mut counts: Vec<i128> = Vec::new();
        for &d in &set {
            let k = g.distance(d, v);
            if counts.len() <= k {
                counts.resize(k + 1, 0);
            }
            counts[k] += 1;
        }
        let w: Dyadic = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| Dyadic::from_int(c) * Dyadic::weight_at(k))
            .sum();
        received.push(w);
    }
    let excess: Vec<Dyadic> = received.iter().map(|&w| w - Dyadic::ONE).collect();
    let total_excess = excess.iter().copied().sum();
    let min_weight = received.iter().copied().min().unwrap_or(Dyadic::ZERO);
    Ok(DominationCertificate {
        family: g.family(),
        set,
        valid: min_weight >= Dyadic::ONE,
        received,
        excess,
        total_excess,
        min_weight,
    })
}

/// Extends `start` to a dominating set, then drops members that are no
/// longer needed.
///
/// Additions greedily maximize the deficit-capped gain; removals scan the
/// set from the most recently added member backwards. All validity
/// decisions use exact arithmetic.
pub fn repair_cover(g: &Graph, start: &[usize]) -> Result<Vec<usize>> {
    let nv = g.vertex_count();
    let mut member = vec![false; nv];
    let mut set = Vec::new();
    for &u in start {
        g.check_vertex(u)?;
        if !member[u] {
            member[u] = true;
            set.push(u);
        }
    }
    let mut received = check_certificate(g, &set)?.received;
    loop {
        let deficient: Vec<(usize, f64)> = (0..nv)
            .filter(|&v| received[v] < Dyadic::ONE)
            .map(|v| (v, (Dyadic::ONE - received[v]).to_f64()))
            .collect();
        if deficient.is_empty() {
            break;
        }
        let best = (0..nv)
            .filter(|&u| !member[u])
            .map(|u| {
                let gain: f64 = deficient
                    .iter()
                    .map(|&(v, d)| d.min(Dyadic::weight_at(g.distance(u, v)).to_f64()))
                    .sum();
                (u, gain)
            })
            .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
            .map(|(u, _)| u)
            .ok_or_else(|| Error::Invariant("no vertex left to add".into()))?;
        member[best] = true;
        set.push(best);
        for (v, r) in received.iter_mut().enumerate() {
            *r += Dyadic::weight_at(g.distance(best, v));
        }
    }
    for i in (0..set.len()).rev() {
        let u = set[i];
        let removable = (0..nv).all(|v| received[v] - Dyadic::weight_at(g.distance(u, v)) >= Dyadic::ONE);
        if removable {
            for (v, r) in received.iter_mut().enumerate() {
                *r = *r - Dyadic::weight_at(g.distance(u, v));
            }
            set.remove(i);
        }
    }
    set.sort_unstable();
    Ok(set)
}

/// The covering program `min Σ x(u)` s.t. `Σ_u 2^(1-dist(u,v)) x(u) >= 1`.
///
/// With `binary` the variables are 0/1 integers; otherwise only `x >= 0`.
pub fn covering_program(w: &WeightMatrix, binary: bool) -> LpProblem {
    let n = w.size();
    let mut p = LpProblem::minimize(vec![1.0; n]);
    for v in 0..n {
        // W is symmetric, so row v doubles as column v.
        p.add_constraint(w.row_f64(v), Sense::Ge, 1.0)
            .expect("row length matches");
    }
    if binary {
        for u in 0..n {
            p.set_bounds(u, 0.0, 1.0).expect("in range");
            p.set_integer(u).expect("in range");
        }
    }
    p
}

/// Optimal value of the covering program's LP relaxation.
pub fn lp_lower(g: &Graph) -> Result<f64> {
    let w = weight_matrix(g)?;
    let s = lp::solve_lp(&covering_program(&w, false))?;
    match s.status {
        LpStatus::Optimal => Ok(s.objective),
        other => Err(Error::Invariant(format!("covering LP ended {other}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactGamma {
    pub value: usize,
    pub witness: DominationCertificate,
    /// False when the budget ran out and `value` is only an upper bound.
    pub optimal: bool,
    /// Best proven lower bound (equals `value` when optimal).
    pub lower_bound: usize,
    pub nodes: u64,
}

/// Minimum size of an exponential dominating set.
///
/// Runs the dedicated covering search with the LP relaxation as its root
/// bound. The witness is re-checked in exact arithmetic before returning.
pub fn exact_gamma(g: &Graph, budget: Budget) -> Result<ExactGamma> {
    let w = weight_matrix(g)?;
    let lp_bound = lp::solve_lp(&covering_program(&w, false))?;
    let root = if lp_bound.is_optimal() {
        (lp_bound.objective - 1e-6).ceil().max(1.0) as usize
    } else {
        1
    };
    let outcome = search::minimum_cover(&w, root, budget)?;
    finish(g, outcome)
}

/// Same value through the generic branch-and-bound on the covering program.
pub fn exact_gamma_milp(g: &Graph, budget: Budget) -> Result<ExactGamma> {
    let w = weight_matrix(g)?;
    let p = covering_program(&w, true);
    let greedy = search::greedy_cover(&w);
    let mut start = vec![0.0; w.size()];
    for &u in &greedy {
        start[u] = 1.0;
    }
    let s = lp::solve_milp_with(
        &p,
        &MilpOptions {
            budget,
            incumbent: Some(start),
            ..Default::default()
        },
    )?;
    let set: Vec<usize> = s
        .x
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.5)
        .map(|(u, _)| u)
        .collect();
    let optimal = match s.status {
        LpStatus::Optimal => true,
        LpStatus::Incumbent => false,
        other => return Err(Error::Invariant(format!("covering IP ended {other}"))),
    };
    let value = set.len();
    finish(
        g,
        SearchOutcome {
            lower_bound: if optimal { value } else { 1 },
            set,
            optimal,
            nodes: s.nodes as u64,
        },
    )
}

fn finish(g: &Graph, outcome: SearchOutcome) -> Result<ExactGamma> {
    let witness = check_certificate(g, &outcome.set)?;
    if !witness.valid {
        return Err(Error::Invariant(format!(
            "exact search returned an invalid witness on {}",
            g.family()
        )));
    }
    Ok(ExactGamma {
        value: witness.size(),
        optimal: outcome.optimal,
        lower_bound: outcome.lower_bound,
        nodes: outcome.nodes,
        witness,
    })
}

/// `max_v Σ_u 2^(1 - dist(v, u))`, the largest total weight any single
/// vertex sends into the graph.
pub fn max_total_weight(g: &Graph) -> Dyadic {
    let nv = g.vertex_count();
    (0..nv)
        .map(|v| total_weight_from(g, v))
        .max()
        .unwrap_or(Dyadic::ZERO)
}

pub fn total_weight_from(g: &Graph, v: usize) -> Dyadic {
    let mut counts: Vec<i128> = Vec::new();
    for u in 0..g.vertex_count() {
        let k = g.distance(v, u);
        if counts.len() <= k {
            counts.resize(k + 1, 0);
        }
        counts[k] += 1;
    }
    counts
        .iter()
        .enumerate()
        .map(|(k, &c)| Dyadic::from_int(c) * Dyadic::weight_at(k))
        .sum()
}

/// Closed-form supremum of the total weight on the infinite grid, from
/// `2 + Σ_k |S_k| 2^(1-k)` with `|S_k| = 4k, 8k, 6k`.
pub fn infinite_grid_weight(kind: FamilyKind) -> Result<f64> {
    match kind {
        FamilyKind::StandardGrid | FamilyKind::Torus => Ok(18.0),
        FamilyKind::KingGrid | FamilyKind::ToroidalKing => Ok(34.0),
        FamilyKind::SlantGrid | FamilyKind::ToroidalSlant => Ok(26.0),
        FamilyKind::Hypercube => Err(Error::UnsupportedFamily(
            "the hypercube has no infinite-grid constant".into(),
        )),
    }
}

/// `⌈|V| / (m(G) - k)⌉`, valid whenever every dominator carries excess at least `k`.
pub fn kbound(vcount: u64, m_g: f64, k: f64) -> Result<u64> {
    let denom = m_g - k;
    if !(denom > 0.0) {
        return Err(Error::NonpositiveDenominator(denom));
    }
    Ok((vcount as f64 / denom).ceil() as u64)
}

/// One row of a lower-bound table.
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct BoundReport {
    pub family: String,
    pub n: u64,
    pub r: Option<usize>,
    pub mode: Option<String>,
    pub m_value: f64,
    pub k: f64,
    pub denominator: f64,
    pub lower_bound: u64,
}
