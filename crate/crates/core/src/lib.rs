//! Porous exponential domination on grid-family graphs and hypercubes.
//!
//! A set `D` dominates `G` when every vertex `v` receives total weight
//! `Σ_{d ∈ D} 2^(1 - dist(d, v)) >= 1`. This crate computes exact
//! domination numbers through integer programming, derives excess-based
//! lower bounds from a localized mixed integer program, certifies periodic
//! tiling constructions, and bounds the hypercube.

pub mod dyadic;
pub mod error;
pub mod excess;
pub mod graphs;
pub mod hypercube;
pub mod cli;
pub mod domination;
pub mod lp;
pub mod reproduce;
pub mod search;
pub mod tilings;

pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use graphs::{Coord, FamilyKind, Graph, GraphFamily};
