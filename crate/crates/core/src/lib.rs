//! Monte Carlo laboratory for the strip-stability experiment on critical site
//! percolation.
//!
//! A trial fills a rhombus of hexagons (two glued equilateral triangles) with
//! fair coin colors, traces the exploration path from the bottom apex to the
//! top apex, redraws `k` rows around the equator, traces the path again and
//! measures the distance between the two paths with a discrete coupling
//! (Fréchet-type) distance. Samples of trials give the medians that show how
//! the perturbation decays as the strip width `k / n` shrinks.
//!
//! The geometry and distance code is generic over the floating-point scalar
//! (see [`Scalar`]); the experiment itself runs in `f64`, and the aliases at
//! the crate root name the concrete types it uses.

pub mod cli;
pub mod error;
pub mod experiment;
pub mod explorer;
pub mod geometry;
pub mod lattice;
pub mod pathmetric;
pub mod prng;

pub use error::{Error, Result};
pub use experiment::{GridConfig, SampleStats, SeedDiscipline, TrialResult};
pub use explorer::{Exploration, LatticeVertex};
pub use geometry::{Point2, Polyline, Scalar};
pub use lattice::{Color, Domain, HexCoord, RowSet, Side};
pub use prng::{Coloring, WhState};

/// Point type used by the experiment.
pub type Point = Point2<f64>;
/// Path type used by the experiment.
pub type Path = Polyline<f64>;
/// Single-precision point, for callers that trade accuracy for memory.
pub type Point32 = Point2<f32>;
/// Single-precision path.
pub type Path32 = Polyline<f32>;

/// Simplification tolerance used for every production distance.
pub const DEFAULT_EPS: f64 = 0.03;
/// Trials per sample in the reference protocol.
pub const DEFAULT_TRIALS: u32 = 250;
