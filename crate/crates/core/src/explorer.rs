//! Exploration path: the interface between the white cluster of the left
//! boundary and the black cluster of the right boundary.
//!
//! The walk runs along hexagon edges from the bottom apex to the top apex,
//! keeping a white cell on its left and a black cell on its right. At each
//! vertex the cell ahead decides the turn: white turns right, black turns
//! left. All bookkeeping uses integer cell columns and integer vertex
//! coordinates (see [`crate::lattice`]); floating point only appears in
//! [`Exploration::polyline`].

use crate::error::{Error, Result};
use crate::geometry::{Point2, Polyline, Scalar};
use crate::lattice::{Color, Domain, HexCoord};
use crate::prng::Coloring;

/// Neighbor offsets in doubled-width coordinates, counter-clockwise from east.
const DIRECTIONS: [(i64, i64); 6] = [(2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1)];

#[inline]
fn rotate_ccw(d: (i64, i64)) -> (i64, i64) {
    let i = DIRECTIONS
        .iter()
        .position(|&x| x == d)
        .expect("cells on an edge are neighbors");
    DIRECTIONS[(i + 1) % 6]
}

/// Corner shared by three cells, addressed by the sum of their integer
/// coordinates (three times the centroid).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVertex {
    pub x3: i64,
    pub y3: i64,
}

impl LatticeVertex {
    fn around(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Self {
        Self {
            x3: a.0 + b.0 + c.0,
            y3: a.1 + b.1 + c.1,
        }
    }

    pub fn position<T: Scalar>(&self, domain: &Domain) -> Point2<T> {
        domain.lattice_point(self.x3, self.y3)
    }
}

/// A traced path: visited vertices and, per step, the cells on its two sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exploration {
    vertices: Vec<LatticeVertex>,
    edges: Vec<(HexCoord, HexCoord)>,
}

impl Exploration {
    pub fn vertices(&self) -> &[LatticeVertex] {
        &self.vertices
    }

    /// `(left, right)` cells of each traversed edge, in walking order.
    pub fn edges(&self) -> &[(HexCoord, HexCoord)] {
        &self.edges
    }

    pub fn polyline<T: Scalar>(&self, domain: &Domain) -> Polyline<T> {
        let points = self.vertices.iter().map(|v| v.position(domain)).collect();
        Polyline::new(points).expect("a traced path has at least two vertices")
    }

    /// Cells touching at least one traversed edge, sorted and without repeats.
    pub fn relevant_cells(&self) -> Vec<HexCoord> {
        let mut cells: Vec<HexCoord> = self.edges.iter().flat_map(|&(l, r)| [l, r]).collect();
        cells.sort_unstable();
        cells.dedup();
        cells
    }
}

/// Traces the exploration path of `coloring`.
pub fn trace(domain: &Domain, coloring: &Coloring) -> Result<Exploration> {
    coloring.check_domain(domain)?;
    let n = domain.n() as i64;
    let column = |c: HexCoord| (domain.column(c), c.row as i64);
    let top_apex = LatticeVertex {
        x3: 0,
        y3: 6 * n + 1,
    };
    let max_steps = 3 * domain.cell_count();

    let mut left = (-1i64, 0i64);
    let mut right = (1i64, 0i64);
    let mut vertices = vec![LatticeVertex { x3: 0, y3: -1 }];
    let mut edges = Vec::new();
    let cell = |p: (i64, i64)| domain.cell_at(p.0, p.1);

    loop {
        let (lc, rc) = match (cell(left), cell(right)) {
            (Some(l), Some(r)) => (l, r),
            _ => {
                return Err(Error::Structural(format!(
                    "edge between {left:?} and {right:?} left the domain"
                )))
            }
        };
        edges.push((lc, rc));
        let d = rotate_ccw((right.0 - left.0, right.1 - left.1));
        let front = (left.0 + d.0, left.1 + d.1);
        let head = LatticeVertex::around(left, right, front);
        vertices.push(head);
        if head == top_apex {
            break;
        }
        if edges.len() > max_steps {
            return Err(Error::Structural(format!(
                "no termination after {max_steps} steps"
            )));
        }
        let fc = cell(front).ok_or_else(|| {
            Error::Structural(format!(
                "front cell {front:?} outside the domain at vertex {head:?}"
            ))
        })?;
        debug_assert_eq!(column(fc), front);
        match coloring.get(domain, fc) {
            Color::White => left = front,
            Color::Black => right = front,
        }
    }

    Ok(Exploration { vertices, edges })
}

/// Traces and materializes the path in one call.
pub fn trace_polyline<T: Scalar>(domain: &Domain, coloring: &Coloring) -> Result<Polyline<T>> {
    Ok(trace(domain, coloring)?.polyline(domain))
}
