//! Arrival-time distribution Π(t; X) = |j(X, t)| / ∫|j| dt and its moments.
//!
//! Quantum and classical currents go through the same code path; only the
//! provenance tag differs.

use crate::error::{domain, Error, Result};
use crate::quadrature::{simpson, UniformGrid};
use crate::quantum::Provenance;

pub const DEFAULT_TAIL_EPSILON: f64 = 1e-9;
pub const DEFAULT_SAMPLES: usize = 4097;

/// Fraction of the window treated as the trailing tail by `select_window`.
const TRAILING_FRACTION: f64 = 0.1;
/// Largest allowed share of ∫|j| in the trailing tail.
const TRAILING_MASS: f64 = 1e-8;
const MAX_DOUBLINGS: usize = 16;

/// Current samples j(X, t) at a detector on a uniform time grid.
#[derive(Debug, Clone)]
pub struct ArrivalSeries {
    detector: f64,
    times: UniformGrid,
    current: Vec<f64>,
    source: Provenance,
    tail_epsilon: f64,
}

impl ArrivalSeries {
    /// The grid must start at t ≥ 0 and have an odd number of samples.
    pub fn new(detector: f64, times: UniformGrid, current: Vec<f64>, source: Provenance) -> Result<Self> {
        if times.start() < 0.0 {
            return domain(format!("time grid must start at t >= 0, got {}", times.start()));
        }
        if times.len() < 3 || times.len().is_multiple_of(2) {
            return domain(format!("time grid needs an odd sample count >= 3, got {}", times.len()));
        }
        if current.len() != times.len() {
            return domain(format!("{} current samples for {} times", current.len(), times.len()));
        }
        if current.iter().any(|j| !j.is_finite()) {
            return Err(Error::Numerical("non-finite current sample".into()));
        }
        Ok(ArrivalSeries {
            detector,
            times,
            current,
            source,
            tail_epsilon: DEFAULT_TAIL_EPSILON,
        })
    }

    pub fn with_tail_epsilon(mut self, eps: f64) -> Result<Self> {
        if !(eps > 0.0) {
            return domain(format!("tail epsilon must be positive, got {eps}"));
        }
        self.tail_epsilon = eps;
        Ok(self)
    }

    pub fn detector(&self) -> f64 {
        self.detector
    }

    pub fn times(&self) -> &UniformGrid {
        &self.times
    }

    pub fn current(&self) -> &[f64] {
        &self.current
    }

    pub fn source(&self) -> Provenance {
        self.source
    }

    pub fn tail_epsilon(&self) -> f64 {
        self.tail_epsilon
    }
}

/// Normalized Π(t; X) on the series' time grid.
#[derive(Debug, Clone)]
pub struct ArrivalDistribution {
    times: UniformGrid,
    density: Vec<f64>,
    source: Provenance,
}

impl ArrivalDistribution {
    pub fn times(&self) -> &UniformGrid {
        &self.times
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn source(&self) -> Provenance {
        self.source
    }

    fn moment(&self, f: impl Fn(f64) -> f64) -> f64 {
        let w: Vec<f64> = self.times.iter().zip(&self.density).map(|(t, p)| f(t) * p).collect();
        simpson(&w, self.times.step()).expect("sample count checked on construction")
    }

    /// Renormalize so that ∫Π dt = 1 on this grid.
    pub fn renormalized(&self) -> Result<Self> {
        build(self.times, &self.density, self.source)
    }
}

fn build(times: UniformGrid, current: &[f64], source: Provenance) -> Result<ArrivalDistribution> {
    let abs: Vec<f64> = current.iter().map(|j| j.abs()).collect();
    let total = simpson(&abs, times.step())?;
    if !(total > 0.0) {
        return Err(Error::Degenerate("current vanishes on the whole time window".into()));
    }
    Ok(ArrivalDistribution {
        times,
        density: abs.into_iter().map(|j| j / total).collect(),
        source,
    })
}

/// Π = |j| / ∫|j| dt by Simpson's rule.
///
/// Fails with a truncation error when |j| at either end of the window is
/// not below `tail_epsilon · max|j|`.
pub fn arrival_distribution(series: &ArrivalSeries) -> Result<ArrivalDistribution> {
    let peak = series.current.iter().fold(0.0f64, |m, j| m.max(j.abs()));
    if !(peak > 0.0) {
        return Err(Error::Degenerate("current vanishes on the whole time window".into()));
    }
    let limit = series.tail_epsilon * peak;
    let first = series.current[0].abs();
    let last = series.current[series.current.len() - 1].abs();
    if first >= limit {
        return Err(Error::Truncation(format!(
            "|j| = {first:e} at t = {} exceeds {limit:e}; start the window earlier",
            series.times.start()
        )));
    }
    if last >= limit {
        return Err(Error::Truncation(format!(
            "|j| = {last:e} at t = {} exceeds {limit:e}; extend the window",
            series.times.end()
        )));
    }
    build(series.times, &series.current, series.source)
}

/// τ = ∫ t Π dt.
pub fn mean_arrival_time(dist: &ArrivalDistribution) -> f64 {
    dist.moment(|t| t)
}

/// √(⟨t²⟩ − ⟨t⟩²), with the variance taken about the mean to limit
/// cancellation.
pub fn arrival_rms(dist: &ArrivalDistribution) -> Result<f64> {
    let tau = mean_arrival_time(dist);
    let var = dist.moment(|t| (t - tau) * (t - tau));
    if var >= 0.0 {
        Ok(var.sqrt())
    } else if var > -1e-14 {
        Ok(0.0)
    } else {
        Err(Error::Numerical(format!("negative arrival-time variance {var:e}")))
    }
}

/// Choose [0, t_end] by doubling `initial_end` until the trailing 10% of
/// the window carries less than 1e-8 of ∫|j| and the tail criterion holds
/// at the end point. Returns the grid and the samples on it.
pub fn select_window<F>(
    initial_end: f64,
    samples: usize,
    tail_epsilon: f64,
    sample: F,
) -> Result<(UniformGrid, Vec<f64>)>
where
    F: Fn(&UniformGrid) -> Result<Vec<f64>>,
{
    if !(initial_end > 0.0) {
        return domain(format!("initial window end must be positive, got {initial_end}"));
    }
    let mut end = initial_end;
    for _ in 0..MAX_DOUBLINGS {
        let grid = UniformGrid::new(0.0, end, samples)?;
        let j = sample(&grid)?;
        let abs: Vec<f64> = j.iter().map(|v| v.abs()).collect();
        let total = simpson(&abs, grid.step())?;
        let peak = abs.iter().cloned().fold(0.0, f64::max);
        let tail_start = ((1.0 - TRAILING_FRACTION) * (samples - 1) as f64) as usize;
        let trailing: f64 = abs[tail_start..].iter().sum::<f64>() * grid.step();
        if total > 0.0 && trailing < TRAILING_MASS * total && abs[samples - 1] < tail_epsilon * peak {
            return Ok((grid, j));
        }
        end *= 2.0;
    }
    Err(Error::Truncation(format!(
        "current still significant after extending the window to t = {}",
        end / 2.0
    )))
}
