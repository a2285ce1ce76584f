//! Bounds for the hypercube `Q_n`.
//!
//! Vertices are `n`-bit integers; the "suffix" of a vertex is its two least
//! significant bits. `Q_n` splits into four copies of `Q_{n-2}` by suffix,
//! and placing a dominating set of `Q_{n-2}` in the `00` and `11` copies
//! dominates `Q_n`: each copy covers its own layer and sends at least `1/2`
//! to each of the two mixed layers.

use serde::{Deserialize, Serialize};

use crate::domination::{check_certificate, exact_gamma, DominationCertificate, ExactGamma};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::graphs::{Graph, GraphFamily, MAX_CUBE_DIM};
use crate::lp::Budget;

/// Largest `n` for which [`qn_lower`] stays inside 128-bit arithmetic.
pub const MAX_LOWER_DIM: usize = 40;

fn check_dim(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::InvalidDims(format!("hypercube dimension must be in 1..={max}, got {n}")));
    }
    Ok(())
}

/// Total weight one vertex sends into `Q_n`: `Σ_i C(n,i) 2^(1-i) = 3^n / 2^(n-1)`.
pub fn qn_total_weight(n: usize) -> Result<Dyadic> {
    check_dim(n, MAX_LOWER_DIM)?;
    Ok(Dyadic::new(3i128.pow(n as u32), n as u32 - 1))
}

/// `⌈2^(n+3) / (2^(4-n) 3^n - 2n - 9)⌉`, evaluated as
/// `⌈2^(2n+3) / (16 · 3^n - (2n+9) 2^n)⌉` in integers.
pub fn qn_lower(n: usize) -> Result<u64> {
    check_dim(n, MAX_LOWER_DIM)?;
    let num = 1i128 << (2 * n + 3);
    let den = 16 * 3i128.pow(n as u32) - (2 * n as i128 + 9) * (1i128 << n);
    if den <= 0 {
        return Err(Error::NonpositiveDenominator(den as f64));
    }
    Ok(((num + den - 1) / den) as u64)
}

/// Members of the doubling construction as `n`-bit integers, sorted.
pub fn doubling_set(n: usize) -> Result<Vec<usize>> {
    check_dim(n, MAX_CUBE_DIM)?;
    Ok(doubling(n))
}

fn doubling(n: usize) -> Vec<usize> {
    match n {
        1 => vec![0],
        2 => vec![0b00, 0b11],
        _ => {
            let inner = doubling(n - 2);
            let mut set: Vec<usize> = inner
                .iter()
                .flat_map(|&u| [u << 2, (u << 2) | 0b11])
                .collect();
            set.sort_unstable();
            set
        }
    }
}

/// The doubling construction, checked before it is returned.
pub fn qn_doubling_construction(n: usize) -> Result<DominationCertificate> {
    let set = doubling_set(n)?;
    let g = Graph::build(GraphFamily::hypercube(n))?;
    let cert = check_certificate(&g, &set)?;
    if !cert.valid {
        return Err(Error::Invariant(format!(
            "doubling construction fails on Q_{n} (min weight {})",
            cert.min_weight
        )));
    }
    Ok(cert)
}

/// `a_n`: size of the doubling construction, `a_n = 2 a_{n-2}`.
pub fn doubling_size(n: usize) -> u64 {
    1u64 << (n / 2)
}

pub fn qn_exact(n: usize, budget: Budget) -> Result<ExactGamma> {
    check_dim(n, MAX_CUBE_DIM)?;
    exact_gamma(&Graph::build(GraphFamily::hypercube(n))?, budget)
}

/// Smallest weight a vertex with suffix `to` receives from the doubling set
/// of `Q_{n-2}` placed in the layer with suffix `from`.
pub fn min_layer_weight(n: usize, from: usize, to: usize) -> Result<Dyadic> {
    if n < 3 || from > 3 || to > 3 {
        return Err(Error::InvalidArgument(format!(
            "layer check needs n >= 3 and suffixes below 4, got n={n}, {from}, {to}"
        )));
    }
    check_dim(n, MAX_CUBE_DIM)?;
    let copy: Vec<usize> = doubling(n - 2).iter().map(|&u| (u << 2) | from).collect();
    let min = (0..1usize << (n - 2))
        .map(|x| {
            let v = (x << 2) | to;
            copy.iter()
                .map(|&d| Dyadic::weight_at((d ^ v).count_ones() as usize))
                .sum::<Dyadic>()
        })
        .min()
        .unwrap_or(Dyadic::ZERO);
    Ok(min)
}

/// One row of the bounds table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QnRow {
    pub n: usize,
    pub lower: u64,
    pub exact: Option<usize>,
    pub construction_size: usize,
    pub sqrt2_bound: f64,
}

impl QnRow {
    /// True when the closed-form lower bound exceeds the exact value.
    pub fn lower_exceeds_exact(&self) -> bool {
        self.exact.is_some_and(|e| self.lower > e as u64)
    }
}

/// Bounds for `Q_1..=Q_max_n`, with exact values up to `exact_up_to`.
pub fn bounds_table(max_n: usize, exact_up_to: usize, budget: Budget) -> Result<Vec<QnRow>> {
    (1..=max_n)
        .map(|n| {
            let exact = if n <= exact_up_to {
                let e = qn_exact(n, budget)?;
                if !e.optimal {
                    return Err(Error::BudgetExhausted(format!("exact value of Q_{n}")));
                }
                Some(e.value)
            } else {
                None
            };
            Ok(QnRow {
                n,
                lower: qn_lower(n)?,
                exact,
                construction_size: qn_doubling_construction(n)?.size(),
                sqrt2_bound: 2f64.powf(n as f64 / 2.0),
            })
        })
        .collect()
}
