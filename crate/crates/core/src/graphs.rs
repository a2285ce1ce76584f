//! Grid-family graphs and the hypercube, with closed-form distances.
//!
//! Vertices are identified by a canonical index: row-major for the grid
//! families, numeric value of the bit string for the hypercube.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest vertex count for which the full distance matrix is memoized.
pub const DISTANCE_CACHE_CAP: usize = 4096;

/// Largest hypercube dimension accepted by [`Graph::build`].
pub const MAX_CUBE_DIM: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    StandardGrid,
    KingGrid,
    SlantGrid,
    Torus,
    ToroidalKing,
    ToroidalSlant,
    Hypercube,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 7] = [
        FamilyKind::StandardGrid,
        FamilyKind::KingGrid,
        FamilyKind::SlantGrid,
        FamilyKind::Torus,
        FamilyKind::ToroidalKing,
        FamilyKind::ToroidalSlant,
        FamilyKind::Hypercube,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::StandardGrid => "standard",
            FamilyKind::KingGrid => "king",
            FamilyKind::SlantGrid => "slant",
            FamilyKind::Torus => "torus",
            FamilyKind::ToroidalKing => "toroidal-king",
            FamilyKind::ToroidalSlant => "toroidal-slant",
            FamilyKind::Hypercube => "hypercube",
        }
    }

    pub fn is_toroidal(self) -> bool {
        matches!(
            self,
            FamilyKind::Torus | FamilyKind::ToroidalKing | FamilyKind::ToroidalSlant
        )
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s.to_ascii_lowercase().as_str() {
            "standard" | "grid" => FamilyKind::StandardGrid,
            "king" => FamilyKind::KingGrid,
            "slant" => FamilyKind::SlantGrid,
            "torus" => FamilyKind::Torus,
            "toroidal-king" => FamilyKind::ToroidalKing,
            "toroidal-slant" => FamilyKind::ToroidalSlant,
            "hypercube" | "cube" => FamilyKind::Hypercube,
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        Ok(kind)
    }
}

impl Serialize for FamilyKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A named family together with its dimensions.
///
/// Grid families use `rows × cols`; the hypercube stores its dimension in
/// `rows` and ignores `cols`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GraphFamily {
    pub kind: FamilyKind,
    pub rows: usize,
    pub cols: usize,
}

impl GraphFamily {
    pub fn new(kind: FamilyKind, rows: usize, cols: usize) -> Self {
        if kind == FamilyKind::Hypercube {
            return GraphFamily { kind, rows, cols: 1 };
        }
        GraphFamily { kind, rows, cols }
    }

    pub fn square(kind: FamilyKind, n: usize) -> Self {
        Self::new(kind, n, n)
    }

    pub fn standard(n: usize) -> Self {
        Self::square(FamilyKind::StandardGrid, n)
    }

    pub fn king(n: usize) -> Self {
        Self::square(FamilyKind::KingGrid, n)
    }

    pub fn slant(n: usize) -> Self {
        Self::square(FamilyKind::SlantGrid, n)
    }

    pub fn hypercube(dim: usize) -> Self {
        Self::new(FamilyKind::Hypercube, dim, 1)
    }

    pub fn vertex_count(&self) -> usize {
        match self.kind {
            FamilyKind::Hypercube => 1usize << self.rows,
            _ => self.rows * self.cols,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::InvalidDims(format!(
                "{} requires positive dimensions, got {}x{}",
                self.kind, self.rows, self.cols
            )));
        }
        if self.kind == FamilyKind::Hypercube && self.rows > MAX_CUBE_DIM {
            return Err(Error::InvalidDims(format!(
                "hypercube dimension {} exceeds {}",
                self.rows, MAX_CUBE_DIM
            )));
        }
        // C_1 and C_2 are not simple cycles.
        if self.kind.is_toroidal() && (self.rows < 3 || self.cols < 3) {
            return Err(Error::InvalidDims(format!(
                "{} requires both dimensions >= 3, got {}x{}",
                self.kind, self.rows, self.cols
            )));
        }
        Ok(())
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::Hypercube => write!(f, "{} {}", self.kind, self.rows),
            _ if self.rows == self.cols => write!(f, "{} {}", self.kind, self.rows),
            _ => write!(f, "{} {} {}", self.kind, self.rows, self.cols),
        }
    }
}

/// Coordinates of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    Grid { row: usize, col: usize },
    Cube { bits: u32, dim: usize },
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Coord::Grid { row, col } => write!(f, "({row},{col})"),
            Coord::Cube { bits, dim } => {
                for i in (0..dim).rev() {
                    write!(f, "{}", (bits >> i) & 1)?;
                }
                Ok(())
            }
        }
    }
}

/// An immutable graph from one of the supported families.
pub struct Graph {
    family: GraphFamily,
    adjacency: Vec<Vec<usize>>,
    distances: OnceLock<Vec<u16>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("family", &self.family)
            .field("vertices", &self.adjacency.len())
            .finish()
    }
}

impl Graph {
    pub fn build(family: GraphFamily) -> Result<Self> {
        family.validate()?;
        let nv = family.vertex_count();
        let mut adjacency = vec![Vec::new(); nv];
        match family.kind {
            FamilyKind::Hypercube => {
                for (v, nbrs) in adjacency.iter_mut().enumerate() {
                    for bit in 0..family.rows {
                        nbrs.push(v ^ (1 << bit));
                    }
                    nbrs.sort_unstable();
                }
            }
            kind => {
                let (rows, cols) = (family.rows as isize, family.cols as isize);
                let steps: &[(isize, isize)] = match kind {
                    FamilyKind::StandardGrid | FamilyKind::Torus => {
                        &[(-1, 0), (1, 0), (0, -1), (0, 1)]
                    }
                    FamilyKind::KingGrid | FamilyKind::ToroidalKing => &[
                        (-1, -1),
                        (-1, 0),
                        (-1, 1),
                        (0, -1),
                        (0, 1),
                        (1, -1),
                        (1, 0),
                        (1, 1),
                    ],
                    FamilyKind::SlantGrid | FamilyKind::ToroidalSlant => {
                        &[(-1, -1), (-1, 0), (0, -1), (0, 1), (1, 0), (1, 1)]
                    }
                    FamilyKind::Hypercube => unreachable!(),
                };
                let wrap = kind.is_toroidal();
                for r in 0..rows {
                    for c in 0..cols {
                        let v = (r * cols + c) as usize;
                        for &(dr, dc) in steps {
                            let (mut nr, mut nc) = (r + dr, c + dc);
                            if wrap {
                                nr = nr.rem_euclid(rows);
                                nc = nc.rem_euclid(cols);
                            } else if nr < 0 || nr >= rows || nc < 0 || nc >= cols {
                                continue;
                            }
                            let u = (nr * cols + nc) as usize;
                            if u != v {
                                adjacency[v].push(u);
                            }
                        }
                        adjacency[v].sort_unstable();
                        adjacency[v].dedup();
                    }
                }
            }
        }
        Ok(Graph {
            family,
            adjacency,
            distances: OnceLock::new(),
        })
    }

    pub fn family(&self) -> GraphFamily {
        self.family
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn coord(&self, v: usize) -> Coord {
        match self.family.kind {
            FamilyKind::Hypercube => Coord::Cube {
                bits: v as u32,
                dim: self.family.rows,
            },
            _ => Coord::Grid {
                row: v / self.family.cols,
                col: v % self.family.cols,
            },
        }
    }

    pub fn index_of(&self, coord: Coord) -> Result<usize> {
        let idx = match coord {
            Coord::Grid { row, col } if self.family.kind != FamilyKind::Hypercube => {
                if row >= self.family.rows || col >= self.family.cols {
                    return Err(Error::VertexOutOfRange(row * self.family.cols + col));
                }
                row * self.family.cols + col
            }
            Coord::Cube { bits, dim }
                if self.family.kind == FamilyKind::Hypercube && dim == self.family.rows =>
            {
                bits as usize
            }
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {coord} does not belong to {}",
                    self.family
                )))
            }
        };
        if idx >= self.vertex_count() {
            return Err(Error::VertexOutOfRange(idx));
        }
        Ok(idx)
    }

    /// Index of the grid vertex `(row, col)`.
    pub fn at(&self, row: usize, col: usize) -> usize {
        debug_assert!(row < self.family.rows && col < self.family.cols);
        row * self.family.cols + col
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    /// Graph distance between `u` and `v` from the family's closed form.
    pub fn distance(&self, u: usize, v: usize) -> usize {
        if let Some(matrix) = self.distances.get() {
            return matrix[u * self.vertex_count() + v] as usize;
        }
        self.closed_form_distance(u, v)
    }

    fn closed_form_distance(&self, u: usize, v: usize) -> usize {
        let fam = self.family;
        if fam.kind == FamilyKind::Hypercube {
            return (u ^ v).count_ones() as usize;
        }
        let cols = fam.cols;
        let (r1, c1) = ((u / cols) as isize, (u % cols) as isize);
        let (r2, c2) = ((v / cols) as isize, (v % cols) as isize);
        let (dr, dc) = (r2 - r1, c2 - c1);
        match fam.kind {
            FamilyKind::StandardGrid => manhattan(dr, dc),
            FamilyKind::KingGrid => chebyshev(dr, dc),
            FamilyKind::SlantGrid => slant(dr, dc),
            FamilyKind::Torus => wrapped(dr, dc, fam, manhattan),
            FamilyKind::ToroidalKing => wrapped(dr, dc, fam, chebyshev),
            FamilyKind::ToroidalSlant => wrapped(dr, dc, fam, slant),
            FamilyKind::Hypercube => unreachable!(),
        }
    }

    /// Full row-major distance matrix, computed once.
    ///
    /// Returns `None` above [`DISTANCE_CACHE_CAP`] vertices.
    pub fn distance_matrix(&self) -> Option<&[u16]> {
        let nv = self.vertex_count();
        if nv > DISTANCE_CACHE_CAP {
            return None;
        }
        let matrix = self.distances.get_or_init(|| {
            let mut m = vec![0u16; nv * nv];
            for u in 0..nv {
                for v in 0..nv {
                    m[u * nv + v] = self.closed_form_distance(u, v) as u16;
                }
            }
            m
        });
        Some(matrix.as_slice())
    }

    /// Breadth-first distances from `source`; the reference for the closed forms.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn eccentricity(&self, v: usize) -> usize {
        (0..self.vertex_count())
            .map(|u| self.distance(v, u))
            .max()
            .unwrap_or(0)
    }

    pub fn diameter(&self) -> usize {
        // Tori and cubes are vertex-transitive; planar grids peak at a corner.
        let (rows, cols) = (self.family.rows, self.family.cols);
        match self.family.kind {
            FamilyKind::Hypercube => self.family.rows,
            k if k.is_toroidal() => self.eccentricity(0),
            _ => [0, cols - 1, (rows - 1) * cols, rows * cols - 1]
                .into_iter()
                .map(|v| self.eccentricity(v))
                .max()
                .unwrap(),
        }
    }

    /// `S_k(v)`: vertices at distance exactly `k` from `v`, ascending.
    pub fn sphere(&self, v: usize, k: usize) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&u| self.distance(v, u) == k)
            .collect()
    }

    /// Serializes as a header line `#<family> <n> [<m>]` followed by `u v` lines.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("#{}\n", self.family);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the edge-list format, rebuilding the family and checking that
    /// the listed edges match it.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .and_then(|l| l.strip_prefix('#'))
            .ok_or_else(|| Error::Parse("missing '#family' header".into()))?;
        let mut parts = header.split_whitespace();
        let kind: FamilyKind = parts
            .next()
            .ok_or_else(|| Error::Parse("empty header".into()))?
            .parse()?;
        let dims: Vec<usize> = parts
            .map(|p| p.parse().map_err(|_| Error::Parse(format!("bad dimension '{p}'"))))
            .collect::<Result<_>>()?;
        let family = match dims.as_slice() {
            [n] => GraphFamily::square(kind, *n),
            [r, c] => GraphFamily::new(kind, *r, *c),
            _ => return Err(Error::Parse("header needs one or two dimensions".into())),
        };
        let graph = Graph::build(family)?;
        let mut listed = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => listed.push((u.min(v), u.max(v))),
                _ => return Err(Error::Parse(format!("bad edge line '{line}'"))),
            }
        }
        listed.sort_unstable();
        if !listed.iter().copied().eq(graph.edges()) {
            return Err(Error::Parse(format!(
                "edge list does not match the {} family",
                family
            )));
        }
        Ok(graph)
    }
}

fn manhattan(dr: isize, dc: isize) -> usize {
    dr.unsigned_abs() + dc.unsigned_abs()
}

fn chebyshev(dr: isize, dc: isize) -> usize {
    dr.unsigned_abs().max(dc.unsigned_abs())
}

/// Diagonal steps go `(+1,+1)` or `(-1,-1)`: displacements whose components
/// share a sign cost their max, mixed signs cost their sum.
fn slant(dr: isize, dc: isize) -> usize {
    if (dr >= 0) == (dc >= 0) || dr == 0 || dc == 0 {
        chebyshev(dr, dc)
    } else {
        manhattan(dr, dc)
    }
}

fn wrapped(
    dr: isize,
    dc: isize,
    fam: GraphFamily,
    metric: fn(isize, isize) -> usize,
) -> usize {
    let (rows, cols) = (fam.rows as isize, fam.cols as isize);
    let r = dr.rem_euclid(rows);
    let c = dc.rem_euclid(cols);
    [r, r - rows]
        .iter()
        .flat_map(|&a| [c, c - cols].into_iter().map(move |b| metric(a, b)))
        .min()
        .unwrap()
}
