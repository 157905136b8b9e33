//! Wichmann-Hill (AS 183) uniform stream, per-trial seeding and the coloring
//! draws built on it.
//!
//! Every trial owns its generator state, so a trial is a pure function of its
//! `(n, k, trial)` label no matter which thread runs it.

use crate::error::{Error, Result};
use crate::lattice::{Color, Domain, HexCoord, RowSet};

const M1: u32 = 30269;
const M2: u32 = 30307;
const M3: u32 = 30323;
const A1: u32 = 171;
const A2: u32 = 172;
const A3: u32 = 170;

/// Source of uniforms in `[0, 1)`.
pub trait UniformSource {
    fn next_uniform(&mut self) -> f64;
}

/// State of the three combined congruential generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WhState {
    s1: u32,
    s2: u32,
    s3: u32,
}

impl WhState {
    pub fn new(s1: u32, s2: u32, s3: u32) -> Result<Self> {
        let ok = (1..M1).contains(&s1) && (1..M2).contains(&s2) && (1..M3).contains(&s3);
        if ok {
            Ok(Self { s1, s2, s3 })
        } else {
            Err(Error::InvalidState(s1, s2, s3))
        }
    }

    pub fn components(&self) -> (u32, u32, u32) {
        (self.s1, self.s2, self.s3)
    }

    /// Advances one step and returns the uniform together with the new state.
    #[inline]
    pub fn step(self) -> (f64, Self) {
        let s1 = A1 * self.s1 % M1;
        let s2 = A2 * self.s2 % M2;
        let s3 = A3 * self.s3 % M3;
        let u = (s1 as f64 / M1 as f64 + s2 as f64 / M2 as f64 + s3 as f64 / M3 as f64) % 1.0;
        (u, Self { s1, s2, s3 })
    }
}

impl UniformSource for WhState {
    #[inline]
    fn next_uniform(&mut self) -> f64 {
        let (u, next) = self.step();
        *self = next;
        u
    }
}

/// Value-style step: `(u, state')`.
pub fn wh_next(state: WhState) -> (f64, WhState) {
    state.step()
}

fn log2_exact(name: &'static str, value: u32) -> Result<u32> {
    if value.is_power_of_two() {
        Ok(value.trailing_zeros())
    } else {
        Err(Error::NotPowerOfTwo { name, value })
    }
}

/// Initial state of trial `trial` in sample `(n, k)`:
/// `(1 + log2 n, 1 + log2 k, 1 + (trial - 1) mod 30322)`.
///
/// Injective over power-of-two grids with `log2 n, log2 k <= 14` and at most
/// 30322 trials per sample.
pub fn seed_for_trial(n: u32, k: u32, trial: u32) -> Result<WhState> {
    if trial < 1 {
        return Err(Error::InvalidTrial);
    }
    let ln = log2_exact("n", n)?;
    let lk = log2_exact("k", k)?;
    WhState::new(1 + ln, 1 + lk, 1 + (trial - 1) % (M3 - 1))
}

/// Seeding for arbitrary `n` and `k`. Results are reproducible but are not
/// on the same footing as the power-of-two grid.
pub fn seed_for_trial_relaxed(n: u32, k: u32, trial: u32) -> Result<WhState> {
    if trial < 1 {
        return Err(Error::InvalidTrial);
    }
    WhState::new(
        1 + n % (M1 - 1),
        1 + k % (M2 - 1),
        1 + (trial - 1) % (M3 - 1),
    )
}

/// Black/white assignment for every cell of one domain, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    n: u32,
    colors: Vec<Color>,
}

impl Coloring {
    /// Boundary cells get their fixed colors, interior cells come from `interior`.
    pub fn from_fn(domain: &Domain, mut interior: impl FnMut(HexCoord) -> Color) -> Self {
        let colors = domain
            .cells()
            .map(|c| match domain.side(c) {
                Some(side) => side.color(),
                None => interior(c),
            })
            .collect();
        Self {
            n: domain.n(),
            colors,
        }
    }

    pub fn uniform(domain: &Domain, color: Color) -> Self {
        Self::from_fn(domain, |_| color)
    }

    /// Fresh draw: one uniform per interior cell in canonical order,
    /// white when `u < 0.5`.
    pub fn draw<S: UniformSource>(domain: &Domain, source: &mut S) -> Self {
        Self::from_fn(domain, |_| color_of(source.next_uniform()))
    }

    /// Redraws the interior cells of `rows` in canonical order; everything else
    /// is kept.
    pub fn redraw_rows<S: UniformSource>(
        &self,
        domain: &Domain,
        rows: RowSet,
        source: &mut S,
    ) -> Result<Self> {
        self.check_domain(domain)?;
        if rows.last() >= domain.rows() {
            return Err(Error::RowCountOutOfRange {
                k: rows.len(),
                max: domain.rows(),
            });
        }
        let mut colors = self.colors.clone();
        for row in rows.rows() {
            let range = domain.row_range(row);
            // boundary cells sit at both ends of the row
            for slot in &mut colors[range.start + 1..range.end - 1] {
                *slot = color_of(source.next_uniform());
            }
        }
        Ok(Self { n: self.n, colors })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn check_domain(&self, domain: &Domain) -> Result<()> {
        if domain.n() == self.n && domain.cell_count() == self.colors.len() {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    #[inline]
    pub fn get(&self, domain: &Domain, c: HexCoord) -> Color {
        self.colors[domain.linear_index(c)]
    }

    /// Colors in canonical order.
    pub fn as_slice(&self) -> &[Color] {
        &self.colors
    }

    /// Interior colors flipped and the whole picture reflected left/right.
    /// Boundary colors stay valid under this map.
    pub fn flipped_mirror(&self, domain: &Domain) -> Self {
        Self::from_fn(domain, |c| self.get(domain, domain.mirror(c)).flipped())
    }

    /// True when every boundary cell has its prescribed color.
    pub fn boundary_ok(&self, domain: &Domain) -> bool {
        domain
            .boundary_cells()
            .all(|(c, side)| self.get(domain, c) == side.color())
    }
}

#[inline]
fn color_of(u: f64) -> Color {
    if u < 0.5 {
        Color::White
    } else {
        Color::Black
    }
}

/// Value-style fresh draw.
pub fn draw_coloring(domain: &Domain, state: WhState) -> (Coloring, WhState) {
    let mut s = state;
    let coloring = Coloring::draw(domain, &mut s);
    (coloring, s)
}

/// Value-style redraw of `rows`.
pub fn redraw_rows(
    domain: &Domain,
    coloring: &Coloring,
    rows: RowSet,
    state: WhState,
) -> Result<(Coloring, WhState)> {
    let mut s = state;
    let next = coloring.redraw_rows(domain, rows, &mut s)?;
    Ok((next, s))
}
