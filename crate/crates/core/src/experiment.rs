//! Trials, samples and grids of samples, plus the statistics reported for
//! them.
//!
//! A trial is a pure function of `(n, k, trial, eps)`: its generator state
//! comes from [`seed_for_trial`], never from a shared stream. Grids farm the
//! trials out to a rayon pool and reassemble them by position, so results are
//! identical for any thread count.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::explorer::{trace, Exploration};
use crate::geometry::Scalar;
use crate::lattice::{Domain, RowSet};
use crate::pathmetric::path_distance;
use crate::prng::{seed_for_trial, seed_for_trial_relaxed, Coloring, UniformSource, WhState};
use crate::{DEFAULT_EPS, DEFAULT_TRIALS};

/// Bootstrap resamples behind [`SampleStats::msd`].
pub const BOOTSTRAP_RESAMPLES: usize = 1000;

/// How trial labels map to generator states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeedDiscipline {
    /// `n` and `k` must be powers of two; see [`seed_for_trial`].
    #[default]
    PowerOfTwo,
    /// Any `n` and `k`; see [`seed_for_trial_relaxed`].
    Relaxed,
}

impl SeedDiscipline {
    pub fn seed(self, n: u32, k: u32, trial: u32) -> Result<WhState> {
        match self {
            SeedDiscipline::PowerOfTwo => seed_for_trial(n, k, trial),
            SeedDiscipline::Relaxed => seed_for_trial_relaxed(n, k, trial),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialResult {
    pub n: u32,
    pub k: u32,
    pub trial: u32,
    pub distance: f64,
    pub first_path_len: usize,
    pub second_path_len: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleStats {
    pub n: u32,
    pub k: u32,
    pub trials: u32,
    pub median: f64,
    /// Root-mean-square deviation of bootstrap medians about their mean.
    pub msd: f64,
    /// Strip width `k / n`.
    pub eps_strip: f64,
}

/// Everything a trial produces, for rendering and inspection.
#[derive(Debug, Clone)]
pub struct TrialRecord {
    pub result: TrialResult,
    pub rows: RowSet,
    pub first: Coloring,
    pub second: Coloring,
    pub first_path: Exploration,
    pub second_path: Exploration,
}

/// Runs one trial inside an already built domain.
pub fn simulate_trial(
    domain: &Domain,
    k: u32,
    trial: u32,
    eps: f64,
    seeding: SeedDiscipline,
) -> Result<TrialRecord> {
    let n = domain.n();
    let rows = RowSet::around_equator(n, k)?;
    let mut state = seeding.seed(n, k, trial)?;
    let first = Coloring::draw(domain, &mut state);
    let first_path = trace(domain, &first)?;
    let second = first.redraw_rows(domain, rows, &mut state)?;
    let second_path = trace(domain, &second)?;
    let distance = path_distance(
        &first_path.polyline::<f64>(domain),
        &second_path.polyline::<f64>(domain),
        eps,
    )?;
    let result = TrialResult {
        n,
        k,
        trial,
        distance,
        first_path_len: first_path.vertices().len(),
        second_path_len: second_path.vertices().len(),
    };
    Ok(TrialRecord {
        result,
        rows,
        first,
        second,
        first_path,
        second_path,
    })
}

/// One trial of sample `(n, k)` with the power-of-two seeding.
pub fn run_trial(n: u32, k: u32, trial: u32, eps: f64) -> Result<TrialResult> {
    let domain = Domain::new(n)?;
    Ok(simulate_trial(&domain, k, trial, eps, SeedDiscipline::PowerOfTwo)?.result)
}

/// Middle order statistic; the mean of the two middle ones for even counts.
pub fn median<T: Scalar>(values: &[T]) -> Result<T> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("median of NaN"));
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        Ok(sorted[mid])
    } else {
        Ok((sorted[mid - 1] + sorted[mid]) / T::lit(2.0))
    }
}

/// Root-mean-square deviation of the medians of `resamples` bootstrap
/// resamples (drawn with replacement) about their mean.
pub fn bootstrap_msd<T: Scalar, S: UniformSource>(
    values: &[T],
    resamples: usize,
    source: &mut S,
) -> Result<T> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    if resamples == 0 {
        return Ok(T::zero());
    }
    let len = values.len();
    let mut buf = vec![T::zero(); len];
    let mut medians = Vec::with_capacity(resamples);
    for _ in 0..resamples {
        for slot in buf.iter_mut() {
            let j = ((source.next_uniform() * len as f64) as usize).min(len - 1);
            *slot = values[j];
        }
        medians.push(median(&buf)?);
    }
    // shifted by the first median so identical resamples give exactly zero
    let shift = medians[0];
    let count = T::from_usize(resamples).unwrap();
    let mean = medians.iter().fold(T::zero(), |acc, &m| acc + (m - shift)) / count;
    let ms = medians.iter().fold(T::zero(), |acc, &m| {
        acc + (m - shift - mean) * (m - shift - mean)
    }) / count;
    Ok(ms.sqrt())
}

fn bootstrap_state(n: u32, k: u32, trials: u32) -> WhState {
    WhState::new(1 + n % 30268, 1 + k % 30306, 1 + trials % 30322)
        .expect("in range by construction")
}

/// Median and bootstrap dispersion of a finished sample.
pub fn summarize(n: u32, k: u32, results: &[TrialResult]) -> Result<SampleStats> {
    let distances: Vec<f64> = results.iter().map(|r| r.distance).collect();
    let trials = results.len() as u32;
    let median = median(&distances)?;
    let mut source = bootstrap_state(n, k, trials);
    let msd = bootstrap_msd(&distances, BOOTSTRAP_RESAMPLES, &mut source)?;
    Ok(SampleStats {
        n,
        k,
        trials,
        median,
        msd,
        eps_strip: k as f64 / n as f64,
    })
}

/// A sample with its individual trials, sorted by trial number.
#[derive(Debug, Clone)]
pub struct Sample {
    pub stats: SampleStats,
    pub trials: Vec<TrialResult>,
}

impl Sample {
    /// The trial sitting at the lower-median order statistic (ties broken by
    /// trial number).
    pub fn median_trial(&self) -> &TrialResult {
        let mut order: Vec<&TrialResult> = self.trials.iter().collect();
        order.sort_by(|a, b| {
            a.distance
                .total_cmp(&b.distance)
                .then(a.trial.cmp(&b.trial))
        });
        order[(order.len() - 1) / 2]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    pub n_list: Vec<u32>,
    pub k_list: Vec<u32>,
    pub trials: u32,
    pub eps: f64,
    pub seeding: SeedDiscipline,
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
    /// Largest strip width `k / n` evaluated; `None` keeps every pair with
    /// `k <= 2n + 1`.
    pub max_strip: Option<f64>,
}

/// Sizes of the published grid.
pub const PUBLISHED_N_LIST: [u32; 7] = [16, 32, 64, 128, 256, 512, 1024];
/// Strip row counts of the published grid.
pub const PUBLISHED_K_LIST: [u32; 6] = [1, 2, 4, 8, 16, 32];
/// The published grid only covers strips no wider than `1/16`.
pub const PUBLISHED_MAX_STRIP: f64 = 1.0 / 16.0;

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            n_list: PUBLISHED_N_LIST.to_vec(),
            k_list: PUBLISHED_K_LIST.to_vec(),
            trials: DEFAULT_TRIALS,
            eps: DEFAULT_EPS,
            seeding: SeedDiscipline::PowerOfTwo,
            threads: None,
            max_strip: Some(PUBLISHED_MAX_STRIP),
        }
    }
}

impl GridConfig {
    /// Checks the lists against the seeding discipline and the trial settings.
    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::InvalidTrial);
        }
        if !(self.eps.is_finite() && self.eps >= 0.0) {
            return Err(Error::InvalidTolerance(self.eps));
        }
        for &n in &self.n_list {
            if n < 1 {
                return Err(Error::InvalidSize(0));
            }
        }
        if self.seeding == SeedDiscipline::PowerOfTwo {
            for &n in &self.n_list {
                self.seeding.seed(n, 1, 1)?;
            }
            for &k in &self.k_list {
                self.seeding.seed(1, k, 1)?;
            }
        }
        Ok(())
    }

    /// The `(n, k)` pairs this grid evaluates, sorted by `(k, n)`.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        let mut pairs: Vec<(u32, u32)> = self
            .k_list
            .iter()
            .flat_map(|&k| self.n_list.iter().map(move |&n| (n, k)))
            .filter(|&(n, k)| n >= 1 && k >= 1 && k <= 2 * n + 1)
            .filter(|&(n, k)| match self.max_strip {
                Some(w) => k as f64 <= w * n as f64,
                None => true,
            })
            .collect();
        pairs.sort_by_key(|&(n, k)| (k, n));
        pairs.dedup();
        pairs
    }
}

fn with_pool<R: Send>(threads: Option<usize>, job: impl FnOnce() -> R + Send) -> Result<R> {
    match threads {
        None => Ok(job()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::ThreadPool(e.to_string()))?;
            Ok(pool.install(job))
        }
    }
}

/// Runs `trials` trials for every pair and returns the samples in pair order.
pub fn run_samples(
    pairs: &[(u32, u32)],
    trials: u32,
    eps: f64,
    seeding: SeedDiscipline,
    threads: Option<usize>,
) -> Result<Vec<Sample>> {
    if trials < 1 {
        return Err(Error::InvalidTrial);
    }
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(Error::InvalidTolerance(eps));
    }
    let mut domains = BTreeMap::new();
    for &(n, k) in pairs {
        RowSet::around_equator(n, k)?;
        seeding.seed(n, k, 1)?;
        if let std::collections::btree_map::Entry::Vacant(slot) = domains.entry(n) {
            slot.insert(Domain::new(n)?);
        }
    }
    let units: Vec<(usize, u32)> = (0..pairs.len())
        .flat_map(|p| (1..=trials).map(move |t| (p, t)))
        .collect();
    let results = with_pool(threads, || {
        units
            .par_iter()
            .map(|&(p, t)| {
                let (n, k) = pairs[p];
                simulate_trial(&domains[&n], k, t, eps, seeding).map(|r| r.result)
            })
            .collect::<Result<Vec<_>>>()
    })??;

    results
        .chunks(trials as usize)
        .zip(pairs)
        .map(|(chunk, &(n, k))| {
            Ok(Sample {
                stats: summarize(n, k, chunk)?,
                trials: chunk.to_vec(),
            })
        })
        .collect()
}

/// Median and dispersion of `trials` trials of `(n, k)`.
pub fn run_sample(n: u32, k: u32, trials: u32, eps: f64) -> Result<SampleStats> {
    let sample = run_samples(&[(n, k)], trials, eps, SeedDiscipline::PowerOfTwo, None)?;
    Ok(sample[0].stats)
}

/// Every pair of `config`, sorted by `(k, n)`.
pub fn run_grid(config: &GridConfig) -> Result<Vec<SampleStats>> {
    config.validate()?;
    let pairs = config.pairs();
    let samples = run_samples(
        &pairs,
        config.trials,
        config.eps,
        config.seeding,
        config.threads,
    )?;
    Ok(samples.into_iter().map(|s| s.stats).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    /// Exponent: slope of `ln median` against `ln (k / n)`.
    pub alpha: f64,
    /// `exp(intercept)`.
    pub prefactor: f64,
    pub r2: f64,
}

/// Least squares line through `(ln x, ln y)`.
pub fn fit_log_log<T: Scalar>(points: &[(T, T)]) -> Result<(T, T, T)> {
    if points.len() < 3 {
        return Err(Error::DegenerateRegression(format!(
            "need at least 3 samples, got {}",
            points.len()
        )));
    }
    if points
        .iter()
        .any(|&(x, y)| !(x > T::zero() && y > T::zero()))
    {
        return Err(Error::DegenerateRegression(
            "non-positive value in log-log fit".into(),
        ));
    }
    let count = T::from_usize(points.len()).unwrap();
    let logs: Vec<(T, T)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mx = logs.iter().fold(T::zero(), |a, p| a + p.0) / count;
    let my = logs.iter().fold(T::zero(), |a, p| a + p.1) / count;
    let sxx = logs
        .iter()
        .fold(T::zero(), |a, p| a + (p.0 - mx) * (p.0 - mx));
    let sxy = logs
        .iter()
        .fold(T::zero(), |a, p| a + (p.0 - mx) * (p.1 - my));
    let syy = logs
        .iter()
        .fold(T::zero(), |a, p| a + (p.1 - my) * (p.1 - my));
    if sxx <= T::epsilon() * count {
        return Err(Error::DegenerateRegression(
            "all strip widths are equal".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse = logs
        .iter()
        .map(|p| p.1 - (intercept + slope * p.0))
        .fold(T::zero(), |a, r| a + r * r);
    let r2 = if syy > T::zero() {
        T::one() - sse / syy
    } else {
        T::one()
    };
    Ok((slope, intercept, r2))
}

/// Power law `median ~ prefactor * (k / n)^alpha` over a set of samples.
pub fn fit_power_law(stats: &[SampleStats]) -> Result<PowerLawFit> {
    let points: Vec<(f64, f64)> = stats
        .iter()
        .map(|s| (s.k as f64 / s.n as f64, s.median))
        .collect();
    let (alpha, intercept, r2) = fit_log_log(&points)?;
    Ok(PowerLawFit {
        alpha,
        prefactor: intercept.exp(),
        r2,
    })
}
