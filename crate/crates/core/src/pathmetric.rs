//! Distance between vertex sequences.
//!
//! A coupling of `a = (a_0..a_M)` and `b = (b_0..b_N)` walks both sequences
//! from start to end, advancing exactly one of the two indices per step. The
//! distance is the smallest achievable maximum of `|a_i - b_j|` along the walk,
//! i.e. a discrete Fréchet distance without diagonal moves. It is not a metric
//! (`d(a, a)` equals the longest step of `a`) but it approximates the
//! reparameterization distance between the two curves.
//!
//! [`dp_distance`] evaluates it over anti-diagonals `k = i + j`, holding only
//! the current diagonal. [`brute_distance`] enumerates all couplings and is
//! kept as an oracle for small inputs.

use crate::error::{Error, Result};
use crate::geometry::{Point2, Polyline, Scalar};

/// Largest `M + N` accepted by [`brute_distance`].
pub const BRUTE_FORCE_LIMIT: usize = 22;

fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && eps >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(eps))
    }
}

/// Greedy thinning: keep `a_0`, then from each kept point skip every
/// following point within `eps` of it and keep the first one beyond. The last
/// point is always kept.
pub fn simplify<T: Scalar>(a: &Polyline<T>, eps: T) -> Result<Polyline<T>> {
    check_eps(eps.to_f64_lossy())?;
    let pts = a.points();
    let eps_sq = eps * eps;
    let mut kept = Vec::with_capacity(pts.len());
    let mut anchor = pts[0];
    let mut anchor_idx = 0;
    kept.push(anchor);
    for (idx, &p) in pts.iter().enumerate().skip(1) {
        if anchor.distance_sq(p) > eps_sq {
            kept.push(p);
            anchor = p;
            anchor_idx = idx;
        }
    }
    if anchor_idx + 1 < pts.len() {
        kept.push(a.last());
    }
    Polyline::new(kept)
}

/// Exact coupling distance by dynamic programming over anti-diagonals.
///
/// `d[k][i]` is the best running maximum over couplings with `mu_k = i`;
/// `d[k+1][i] = max(|a_i - b_(k+1-i)|, min(d[k][i], d[k][i-1]))`. The shorter
/// sequence is indexed by `i` so memory is `O(min(M, N))`.
pub fn dp_distance<T: Scalar>(a: &Polyline<T>, b: &Polyline<T>) -> T {
    let (a, b) = if a.len() <= b.len() {
        (a.points(), b.points())
    } else {
        (b.points(), a.points())
    };
    dp_distance_sq(a, b).sqrt()
}

fn dp_distance_sq<T: Scalar>(a: &[Point2<T>], b: &[Point2<T>]) -> T {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let inf = T::max_value();
    let mut diag = vec![inf; m + 1];
    diag[0] = a[0].distance_sq(b[0]);
    for k in 0..m + n {
        let next = k + 1;
        let lo = next.saturating_sub(n);
        let hi = next.min(m);
        // descending i keeps d[k][i - 1] intact until it has been read
        for i in (lo..=hi).rev() {
            let stay = diag[i];
            let from = if i > 0 { diag[i - 1] } else { inf };
            let best = if stay < from { stay } else { from };
            let here = a[i].distance_sq(b[next - i]);
            diag[i] = if here > best { here } else { best };
        }
    }
    diag[m]
}

/// Exhaustive minimum over all `C(M + N, M)` couplings.
pub fn brute_distance<T: Scalar>(a: &Polyline<T>, b: &Polyline<T>) -> Result<T> {
    let total = a.len() - 1 + b.len() - 1;
    if total > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLargeForOracle {
            got: total,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut best = T::infinity();
    walk(a.points(), b.points(), 0, 0, a[0].distance(b[0]), &mut best);
    Ok(best)
}

fn walk<T: Scalar>(a: &[Point2<T>], b: &[Point2<T>], i: usize, j: usize, run: T, best: &mut T) {
    if i + 1 == a.len() && j + 1 == b.len() {
        if run < *best {
            *best = run;
        }
        return;
    }
    if i + 1 < a.len() {
        let d = a[i + 1].distance(b[j]);
        walk(a, b, i + 1, j, if d > run { d } else { run }, best);
    }
    if j + 1 < b.len() {
        let d = a[i].distance(b[j + 1]);
        walk(a, b, i, j + 1, if d > run { d } else { run }, best);
    }
}

/// Production distance: both paths simplified with `eps`, then [`dp_distance`].
pub fn path_distance<T: Scalar>(a: &Polyline<T>, b: &Polyline<T>, eps: T) -> Result<T> {
    let a = simplify(a, eps)?;
    let b = simplify(b, eps)?;
    Ok(dp_distance(&a, &b))
}

/// Running maximum of the index-diagonal pairing `(0,0), (1,0), (1,1), ...`
/// for equal-length sequences; an upper bound on [`dp_distance`].
pub fn staircase_bound<T: Scalar>(a: &Polyline<T>, b: &Polyline<T>) -> Option<T> {
    if a.len() != b.len() {
        return None;
    }
    let mut worst = a[0].distance(b[0]);
    for i in 1..a.len() {
        worst = worst.max(a[i].distance(b[i - 1])).max(a[i].distance(b[i]));
    }
    Some(worst)
}
