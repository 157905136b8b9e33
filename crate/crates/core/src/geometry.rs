//! Scalar abstraction and planar primitives shared by the lattice, explorer
//! and distance code.

use std::fmt::Debug;
use std::ops::{Index, Sub};

use num_traits::{Float, FromPrimitive, NumCast};

use crate::error::{Error, Result};

/// Floating-point scalar: `f32` or `f64`.
pub trait Scalar: Float + FromPrimitive + NumCast + Debug + Send + Sync + 'static {
    /// Lossy conversion from `f64`; constants are written in `f64` once.
    #[inline]
    fn lit(v: f64) -> Self {
        <Self as NumCast>::from(v).expect("f64 literal representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        <f64 as NumCast>::from(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point2<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn distance_sq(self, other: Self) -> T {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    #[inline]
    pub fn distance(self, other: Self) -> T {
        self.distance_sq(other).sqrt()
    }

    /// Reflection across the vertical axis.
    #[inline]
    pub fn mirrored(self) -> Self {
        Self::new(-self.x, self.y)
    }
}

impl<T: Scalar> Sub for Point2<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Scalar> From<(T, T)> for Point2<T> {
    fn from((x, y): (T, T)) -> Self {
        Self::new(x, y)
    }
}

/// A nonempty ordered vertex sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline<T> {
    points: Vec<Point2<T>>,
}

impl<T: Scalar> Polyline<T> {
    pub fn new(points: Vec<Point2<T>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPolyline);
        }
        Ok(Self { points })
    }

    /// Builds a polyline from coordinate pairs.
    pub fn from_xy<I>(coords: I) -> Result<Self>
    where
        I: IntoIterator<Item = (T, T)>,
    {
        Self::new(coords.into_iter().map(Point2::from).collect())
    }

    pub fn points(&self) -> &[Point2<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; kept for the usual `len`/`is_empty` pairing.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first(&self) -> Point2<T> {
        self.points[0]
    }

    pub fn last(&self) -> Point2<T> {
        self.points[self.points.len() - 1]
    }

    pub fn mirrored(&self) -> Self {
        Self {
            points: self.points.iter().map(|p| p.mirrored()).collect(),
        }
    }

    pub fn into_points(self) -> Vec<Point2<T>> {
        self.points
    }
}

impl<T> Index<usize> for Polyline<T> {
    type Output = Point2<T>;

    fn index(&self, i: usize) -> &Point2<T> {
        &self.points[i]
    }
}
