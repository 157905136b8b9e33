//! The rhombic domain: two equilateral triangles of hexagons glued along the
//! equator.
//!
//! Rows are horizontal and numbered from the bottom. Row `r` holds
//! `min(r, 2n - r) + 2` cells, so the equator (row `n`) holds `n + 2`. Cells
//! are pointy-top hexagons on a triangular lattice of centers; adjacent rows
//! are offset by half a spacing. The domain is centered at the origin with its
//! apex vertices (the lower end of the edge shared by the two bottom cells and
//! the upper end of the edge shared by the two top cells) at `(0, -1)` and
//! `(0, 1)`, so the apex-to-apex diameter is exactly 2.
//!
//! Internally every position is kept in integer "thirds" coordinates: `x3`
//! counts sixths of the center spacing and `y3` counts halves of the hexagon
//! edge, measured from the bottom row's center line. A cell center is
//! `(3 * X, 3 * r)` where `X` is the doubled-width column; a hexagon vertex is
//! the sum of the three cell coordinates around it. No floating point is
//! involved until a point is materialized.

use crate::error::{Error, Result};
use crate::geometry::{Point2, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn flipped(self) -> Self {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

/// Boundary arc a cell belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// First cell of each row; always white.
    Left,
    /// Last cell of each row; always black.
    Right,
}

impl Side {
    pub fn color(self) -> Color {
        match self {
            Side::Left => Color::White,
            Side::Right => Color::Black,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HexCoord {
    pub row: u32,
    pub index: u32,
}

impl HexCoord {
    pub const fn new(row: u32, index: u32) -> Self {
        Self { row, index }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    n: u32,
    row_offsets: Vec<usize>,
}

impl Domain {
    /// Builds the domain whose equator holds `n + 2` cells.
    pub fn new(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidSize(n as i64));
        }
        let rows = 2 * n + 1;
        let mut row_offsets = Vec::with_capacity(rows as usize + 1);
        let mut acc = 0usize;
        for r in 0..rows {
            row_offsets.push(acc);
            acc += row_size_of(n, r) as usize;
        }
        row_offsets.push(acc);
        Ok(Self { n, row_offsets })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> u32 {
        2 * self.n + 1
    }

    pub fn equator(&self) -> u32 {
        self.n
    }

    /// Number of cells in `row`. Panics if the row does not exist.
    pub fn row_size(&self, row: u32) -> u32 {
        assert!(row < self.rows(), "row {row} out of range");
        row_size_of(self.n, row)
    }

    pub fn cell_count(&self) -> usize {
        *self.row_offsets.last().unwrap()
    }

    pub fn contains(&self, c: HexCoord) -> bool {
        c.row < self.rows() && c.index < row_size_of(self.n, c.row)
    }

    pub fn check(&self, c: HexCoord) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(Error::InvalidCoord {
                row: c.row as i64,
                index: c.index as i64,
                n: self.n,
            })
        }
    }

    /// Position of `c` in the canonical row-major order (bottom row first,
    /// left to right).
    #[inline]
    pub fn linear_index(&self, c: HexCoord) -> usize {
        debug_assert!(self.contains(c));
        self.row_offsets[c.row as usize] + c.index as usize
    }

    /// Range of linear indices covering `row`.
    pub fn row_range(&self, row: u32) -> std::ops::Range<usize> {
        self.row_offsets[row as usize]..self.row_offsets[row as usize + 1]
    }

    pub fn cells(&self) -> impl Iterator<Item = HexCoord> + '_ {
        (0..self.rows())
            .flat_map(move |r| (0..row_size_of(self.n, r)).map(move |i| HexCoord::new(r, i)))
    }

    pub fn side(&self, c: HexCoord) -> Option<Side> {
        if c.index == 0 {
            Some(Side::Left)
        } else if c.index + 1 == row_size_of(self.n, c.row) {
            Some(Side::Right)
        } else {
            None
        }
    }

    pub fn is_boundary(&self, c: HexCoord) -> bool {
        self.side(c).is_some()
    }

    pub fn boundary_cells(&self) -> impl Iterator<Item = (HexCoord, Side)> + '_ {
        self.cells()
            .filter_map(move |c| self.side(c).map(|s| (c, s)))
    }

    pub fn interior_cells(&self) -> impl Iterator<Item = HexCoord> + '_ {
        self.cells().filter(move |&c| !self.is_boundary(c))
    }

    /// Left/right reflection of a cell.
    pub fn mirror(&self, c: HexCoord) -> HexCoord {
        HexCoord::new(c.row, row_size_of(self.n, c.row) - 1 - c.index)
    }

    /// Doubled-width column of a cell; the row's centers are symmetric about 0.
    #[inline]
    pub fn column(&self, c: HexCoord) -> i64 {
        2 * c.index as i64 - (row_size_of(self.n, c.row) as i64 - 1)
    }

    /// Cell at doubled-width column `x` in row `row`, if it exists.
    #[inline]
    pub fn cell_at(&self, x: i64, row: i64) -> Option<HexCoord> {
        if row < 0 || row >= self.rows() as i64 {
            return None;
        }
        let size = row_size_of(self.n, row as u32) as i64;
        let twice = x + size - 1;
        if twice < 0 || twice % 2 != 0 || twice / 2 >= size {
            return None;
        }
        Some(HexCoord::new(row as u32, (twice / 2) as u32))
    }

    /// Center-to-center spacing of adjacent cells.
    pub fn scale<T: Scalar>(&self) -> T {
        T::lit(2.0 * 3f64.sqrt()) / self.denom::<T>()
    }

    /// Hexagon edge length (`scale / sqrt(3)`), the step of an exploration path.
    pub fn edge_length<T: Scalar>(&self) -> T {
        T::lit(2.0) / self.denom::<T>()
    }

    /// Vertical distance between the centers of consecutive rows.
    pub fn row_spacing<T: Scalar>(&self) -> T {
        T::lit(3.0) / self.denom::<T>()
    }

    fn denom<T: Scalar>(&self) -> T {
        T::from_u32(3 * self.n + 1).unwrap()
    }

    /// Materializes an integer thirds-coordinate position.
    #[inline]
    pub fn lattice_point<T: Scalar>(&self, x3: i64, y3: i64) -> Point2<T> {
        let denom = self.denom::<T>();
        let x = T::from_i64(x3).unwrap() / (T::lit(3f64.sqrt()) * denom);
        let y = T::from_i64(y3 - 3 * self.n as i64).unwrap() / denom;
        Point2::new(x, y)
    }

    pub fn hex_center<T: Scalar>(&self, c: HexCoord) -> Result<Point2<T>> {
        self.check(c)?;
        Ok(self.lattice_point(3 * self.column(c), 3 * c.row as i64))
    }

    /// The six corners of a cell, counter-clockwise from the top.
    pub fn hex_corners<T: Scalar>(&self, c: HexCoord) -> Result<[Point2<T>; 6]> {
        self.check(c)?;
        let (x, y) = (3 * self.column(c), 3 * c.row as i64);
        let offsets = [(0, 2), (-3, 1), (-3, -1), (0, -2), (3, -1), (3, 1)];
        Ok(offsets.map(|(dx, dy)| self.lattice_point(x + dx, y + dy)))
    }

    pub fn bottom_apex<T: Scalar>(&self) -> Point2<T> {
        self.lattice_point(0, -1)
    }

    pub fn top_apex<T: Scalar>(&self) -> Point2<T> {
        self.lattice_point(0, 6 * self.n as i64 + 1)
    }
}

#[inline]
fn row_size_of(n: u32, row: u32) -> u32 {
    row.min(2 * n - row) + 2
}

/// Contiguous block of rows that is resampled in the second half of a trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RowSet {
    first: u32,
    last: u32,
}

impl RowSet {
    /// The `k` rows around the equator of the size-`n` domain: symmetric for
    /// odd `k`, one extra row above the equator for even `k`.
    pub fn around_equator(n: u32, k: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidSize(n as i64));
        }
        let max = 2 * n + 1;
        if k < 1 || k > max {
            return Err(Error::RowCountOutOfRange { k, max });
        }
        let below = (k - 1) / 2;
        let above = k / 2;
        Ok(Self {
            first: n - below,
            last: n + above,
        })
    }

    pub fn first(&self) -> u32 {
        self.first
    }

    pub fn last(&self) -> u32 {
        self.last
    }

    pub fn len(&self) -> u32 {
        self.last - self.first + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, row: u32) -> bool {
        (self.first..=self.last).contains(&row)
    }

    pub fn rows(&self) -> std::ops::RangeInclusive<u32> {
        self.first..=self.last
    }
}

/// Shorthand for [`Domain::new`].
pub fn build_domain(n: u32) -> Result<Domain> {
    Domain::new(n)
}

/// Shorthand for [`RowSet::around_equator`].
pub fn resample_rows(n: u32, k: u32) -> Result<RowSet> {
    RowSet::around_equator(n, k)
}
