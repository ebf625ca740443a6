//! Scenario runners. Each returns the tables it produced; `run` writes
//! them in a fixed order.

use std::path::PathBuf;

use qc_arrival::arrival::{
    arrival_distribution, arrival_rms, mean_arrival_time, select_window, ArrivalSeries, DEFAULT_TAIL_EPSILON,
};
use qc_arrival::barrier::{default_window, BarrierSpec, PhaseTable, DEFAULT_TABLE_POINTS};
use qc_arrival::classical::{arrival_fluctuation, ClassicalScatteringState};
use qc_arrival::packet::PacketSpec;
use qc_arrival::quadrature::UniformGrid;
use qc_arrival::quantum::{self, PhaseData, Provenance, QuantumMethod};
use qc_arrival::twobody::{one_body_current, one_body_density, SingleGaussianSpec, Statistics, TwoBodySpec};
use qc_arrival::units::{kinetic_energy, velocity, wavenumber_from_velocity, Mass};
use rayon::prelude::*;

use crate::config::{Kick, MethodSelector, Scenario, ScenarioConfig, StatisticsName};
use crate::error::{CliError, Result};
use crate::output::{write_table, Table};

/// One (mass, α) point of the physical setup.
#[derive(Debug, Clone, Copy)]
pub struct Point {
    pub mass: Mass,
    pub spec: PacketSpec,
    pub barrier: BarrierSpec,
    /// Free-region group velocity, Å/fs.
    pub speed: f64,
}

impl Point {
    pub fn new(cfg: &ScenarioConfig, mev: f64, alpha: f64) -> Result<Self> {
        let mass = Mass::from_mev(mev)?;
        let k0 = match cfg.packet.kick {
            Kick::U(u) => wavenumber_from_velocity(mass, u)?,
            Kick::K0(k0) => k0,
        };
        let spec = PacketSpec::new(cfg.packet.x_c, cfg.packet.sigma0, alpha, k0)?;
        let barrier = BarrierSpec::new(cfg.barrier.v0, cfg.barrier.a)?;
        Ok(Point {
            mass,
            spec,
            barrier,
            speed: velocity(mass, k0),
        })
    }

    /// Free flight time from x_c to the detector, a starting guess for the
    /// time window.
    fn flight_time(&self, detector: f64) -> f64 {
        (detector - self.spec.x_c) / self.speed
    }
}

/// Mean and rms of an arrival-time distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrivalMoments {
    pub tau: f64,
    pub rms: f64,
}

fn moments<F>(cfg: &ScenarioConfig, initial_end: f64, source: Provenance, current: F) -> Result<ArrivalMoments>
where
    F: Fn(&UniformGrid) -> qc_arrival::Result<Vec<f64>>,
{
    let det = &cfg.detector;
    let (grid, j) = match det.t_max {
        Some(end) => {
            let grid = UniformGrid::new(det.t_min.unwrap_or(0.0), end, det.samples)?;
            let j = current(&grid)?;
            (grid, j)
        }
        None => select_window(initial_end, det.samples, DEFAULT_TAIL_EPSILON, current)?,
    };
    let dist = arrival_distribution(&ArrivalSeries::new(det.x, grid, j, source)?)?;
    Ok(ArrivalMoments {
        tau: mean_arrival_time(&dist),
        rms: arrival_rms(&dist)?,
    })
}

pub fn quantum_moments(cfg: &ScenarioConfig, p: &Point, method: QuantumMethod) -> Result<ArrivalMoments> {
    let source = match method {
        QuantumMethod::Exact => Provenance::ExactQuadrature,
        QuantumMethod::StationaryPhase => Provenance::StationaryPhase,
    };
    moments(cfg, 2.0 * p.flight_time(cfg.detector.x), source, |g| {
        quantum::current_series(&p.spec, &p.barrier, p.mass, cfg.detector.x, g, method)
    })
}

pub fn classical_moments(cfg: &ScenarioConfig, p: &Point) -> Result<ArrivalMoments> {
    let state = ClassicalScatteringState::new(&p.spec, &p.barrier, p.mass)?;
    let guess = 2.0
        * state
            .mean_arrival_time_analytic(cfg.detector.x)?
            .max(p.flight_time(cfg.detector.x));
    moments(cfg, guess, Provenance::Classical, |g| {
        state.current_series(cfg.detector.x, g)
    })
}

/// Quantum method used for single-valued τ_Q outputs.
fn tau_q_method(method: MethodSelector) -> QuantumMethod {
    if method == MethodSelector::Exact {
        QuantumMethod::Exact
    } else {
        QuantumMethod::StationaryPhase
    }
}

fn fmt_value(v: f64) -> String {
    format!("{v}")
}

/// Quantum evaluation is only defined on the transmitted side.
fn require_transmitted(cfg: &ScenarioConfig, x: f64, what: &str) -> Result<()> {
    if cfg.method != MethodSelector::Classical && x < cfg.barrier.a {
        return Err(CliError::Config(format!(
            "{what} = {x} lies before the barrier exit a = {}; quantum methods need x >= a",
            cfg.barrier.a
        )));
    }
    Ok(())
}

pub fn fig1(cfg: &ScenarioConfig) -> Result<Vec<Table>> {
    let mut cols = vec!["mass".to_string()];
    for k in ["k0", "kp", "km"] {
        for q in ["abs_t", "eta", "eta1", "eta2"] {
            cols.push(format!("{q}_{k}"));
        }
    }
    let rows: Vec<Result<Vec<f64>>> = cfg
        .packet
        .masses
        .par_iter()
        .map(|&mev| {
            let p = Point::new(cfg, mev, cfg.packet.alpha)?;
            let (lo, hi) = default_window(p.spec.k0, p.spec.momentum_spread());
            let lo = lo.min(0.5 * p.spec.k_minus());
            let table = PhaseTable::build_refined(&p.barrier, p.mass, lo, hi, DEFAULT_TABLE_POINTS)?;
            let mut row = vec![mev];
            for k in [p.spec.k0, p.spec.k_plus(), p.spec.k_minus()] {
                let d = PhaseData::at(&table, k)?;
                row.extend([d.modulus, d.eta, d.eta1, d.eta2]);
            }
            Ok(row)
        })
        .collect();
    let mut t = Table::new("fig1", cols).labels("|T|, eta, eta', eta''", true);
    for r in rows {
        t.push(r?);
    }
    Ok(vec![t])
}

fn mass_tag(mev: f64) -> String {
    fmt_value(mev)
}

pub fn fig23(cfg: &ScenarioConfig) -> Result<Vec<Table>> {
    require_transmitted(cfg, cfg.density.x_min, "density.x_min")?;
    require_transmitted(cfg, cfg.detector.x, "detector.x")?;
    let per_mass: Vec<Result<(Table, Table)>> =
        cfg.packet.masses.par_iter().map(|&mev| fig23_point(cfg, mev)).collect();
    let mut out = Vec::new();
    for r in per_mass {
        let (a, b) = r?;
        out.push(a);
        out.push(b);
    }
    Ok(out)
}

fn fig23_point(cfg: &ScenarioConfig, mev: f64) -> Result<(Table, Table)> {
    let p = Point::new(cfg, mev, cfg.packet.alpha)?;
    let m = cfg.method;
    let classical = if m.classical() {
        Some(ClassicalScatteringState::new(&p.spec, &p.barrier, p.mass)?)
    } else {
        None
    };
    let stationary = if m.stationary() {
        Some(quantum::StationaryPhaseWave::new(&p.spec, &p.barrier, p.mass)?)
    } else {
        None
    };

    let d = &cfg.density;
    let xs = UniformGrid::new(d.x_min, d.x_max, d.points)?;
    let mut cols = vec!["x".to_string()];
    let mut columns: Vec<Vec<f64>> = Vec::new();
    if let Some(c) = &classical {
        cols.push("classical".into());
        columns.push(c.sample(&xs, d.t0)?.density());
    }
    if m.stationary() {
        cols.push("stationary_phase".into());
        columns.push(quantum::transmitted_wave_stationary_phase(&p.spec, &p.barrier, p.mass, &xs, d.t0)?.density());
    }
    if m.exact() {
        cols.push("exact".into());
        columns.push(quantum::transmitted_wave_exact(&p.spec, &p.barrier, p.mass, &xs, d.t0)?.density());
    }
    let mut density = Table::new(format!("fig2_m{}", mass_tag(mev)), cols).labels("density (1/A)", false);
    for (i, x) in xs.iter().enumerate() {
        let mut row = vec![x];
        row.extend(columns.iter().map(|c| c[i]));
        density.push(row);
    }

    let det = &cfg.detector;
    let times = match det.t_max {
        Some(end) => UniformGrid::new(det.t_min.unwrap_or(0.0), end, det.plot_points)?,
        None => {
            let guess = 2.0 * p.flight_time(det.x);
            let (grid, _) = if let Some(w) = &stationary {
                select_window(guess, det.plot_points, DEFAULT_TAIL_EPSILON, |g| {
                    Ok(g.iter().map(|t| quantum::WaveEvaluator::current(w, det.x, t)).collect())
                })?
            } else if let Some(c) = &classical {
                select_window(guess, det.plot_points, DEFAULT_TAIL_EPSILON, |g| {
                    c.current_series(det.x, g)
                })?
            } else {
                select_window(guess, det.plot_points, DEFAULT_TAIL_EPSILON, |g| {
                    quantum::current_series(&p.spec, &p.barrier, p.mass, det.x, g, QuantumMethod::Exact)
                })?
            };
            grid
        }
    };
    let mut cols = vec!["t".to_string()];
    let mut columns: Vec<Vec<f64>> = Vec::new();
    if let Some(c) = &classical {
        cols.push("classical".into());
        columns.push(c.current_series(det.x, &times)?);
    }
    if m.stationary() {
        cols.push("stationary_phase".into());
        columns.push(quantum::current_series(
            &p.spec,
            &p.barrier,
            p.mass,
            det.x,
            &times,
            QuantumMethod::StationaryPhase,
        )?);
    }
    if m.exact() {
        cols.push("exact".into());
        columns.push(quantum::current_series(
            &p.spec,
            &p.barrier,
            p.mass,
            det.x,
            &times,
            QuantumMethod::Exact,
        )?);
    }
    let mut current = Table::new(format!("fig3_m{}", mass_tag(mev)), cols).labels("current (1/fs)", false);
    for (i, t) in times.iter().enumerate() {
        let mut row = vec![t];
        row.extend(columns.iter().map(|c| c[i]));
        current.push(row);
    }
    Ok((density, current))
}

/// τ_Q and τ_C over the mass × α grid, in config order.
fn tau_grid(cfg: &ScenarioConfig, method: QuantumMethod) -> Result<Vec<Vec<(Point, ArrivalMoments, ArrivalMoments)>>> {
    let alphas = &cfg.packet.alphas;
    let points: Vec<(usize, f64, f64)> = cfg
        .packet
        .masses
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| alphas.iter().map(move |&a| (i, m, a)))
        .collect();
    let results: Vec<Result<(Point, ArrivalMoments, ArrivalMoments)>> = points
        .par_iter()
        .map(|&(_, mev, alpha)| {
            let p = Point::new(cfg, mev, alpha)?;
            Ok((p, quantum_moments(cfg, &p, method)?, classical_moments(cfg, &p)?))
        })
        .collect();
    let mut grid = vec![Vec::with_capacity(alphas.len()); cfg.packet.masses.len()];
    for ((i, _, _), r) in points.iter().zip(results) {
        grid[*i].push(r?);
    }
    Ok(grid)
}

pub fn fig4(cfg: &ScenarioConfig) -> Result<Vec<Table>> {
    require_transmitted(cfg, cfg.detector.x, "detector.x")?;
    let grid = tau_grid(cfg, tau_q_method(cfg.method))?;
    let mut cols = vec!["mass".to_string()];
    cols.extend(cfg.packet.alphas.iter().map(|a| format!("alpha={}", fmt_value(*a))));
    let mut tq = Table::new("fig4_tau_q", cols.clone()).labels("tau_Q (fs)", true);
    let mut tc = Table::new("fig4_tau_c", cols.clone()).labels("tau_C (fs)", true);
    let mut td = Table::new("fig4_tau_diff", cols).labels("tau_Q - tau_C (fs)", true);
    for (row, &mev) in grid.iter().zip(&cfg.packet.masses) {
        let mut q = vec![mev];
        let mut c = vec![mev];
        let mut d = vec![mev];
        for (_, mq, mc) in row {
            q.push(mq.tau);
            c.push(mc.tau);
            d.push(mq.tau - mc.tau);
        }
        tq.push(q);
        tc.push(c);
        td.push(d);
    }
    Ok(vec![tq, tc, td])
}

pub fn sweep(cfg: &ScenarioConfig) -> Result<Vec<Table>> {
    require_transmitted(cfg, cfg.detector.x, "detector.x")?;
    let grid = tau_grid(cfg, tau_q_method(cfg.method))?;
    let cols = [
        "mass", "alpha", "k0", "energy", "tau_q", "dtau_q", "tau_c", "dtau_c", "tau_diff",
    ]
    .map(String::from)
    .to_vec();
    let mut t = Table::new("sweep", cols).labels("", true);
    for (row, &mev) in grid.iter().zip(&cfg.packet.masses) {
        for (p, q, c) in row {
            t.push(vec![
                mev,
                p.spec.alpha,
                p.spec.k0,
                kinetic_energy(p.mass, p.spec.k0),
                q.tau,
                q.rms,
                c.tau,
                c.rms,
                q.tau - c.tau,
            ]);
        }
    }
    Ok(vec![t])
}

pub fn arrival(cfg: &ScenarioConfig) -> Result<Vec<Table>> {
    require_transmitted(cfg, cfg.detector.x, "detector.x")?;
    let m = cfg.method;
    let mut cols = vec!["mass".to_string()];
    if m.classical() {
        cols.extend(["tau_c_analytic", "dtau_c_analytic", "tau_c", "dtau_c"].map(String::from));
    }
    if m.stationary() {
        cols.extend(["tau_stationary_phase", "dtau_stationary_phase"].map(String::from));
    }
    if m.exact() {
        cols.extend(["tau_exact", "dtau_exact"].map(String::from));
    }
    let rows: Vec<Result<Vec<f64>>> = cfg
        .packet
        .masses
        .par_iter()
        .map(|&mev| {
            let p = Point::new(cfg, mev, cfg.packet.alpha)?;
            let mut row = vec![mev];
            if m.classical() {
                let state = ClassicalScatteringState::new(&p.spec, &p.barrier, p.mass)?;
                row.push(state.mean_arrival_time_analytic(cfg.detector.x)?);
                row.push(arrival_fluctuation(&p.spec, p.speed)?);
                let c = classical_moments(cfg, &p)?;
                row.extend([c.tau, c.rms]);
            }
            if m.stationary() {
                let q = quantum_moments(cfg, &p, QuantumMethod::StationaryPhase)?;
                row.extend([q.tau, q.rms]);
            }
            if m.exact() {
                let q = quantum_moments(cfg, &p, QuantumMethod::Exact)?;
                row.extend([q.tau, q.rms]);
            }
            Ok(row)
        })
        .collect();
    let mut t = Table::new("arrival", cols).labels("time (fs)", true);
    for r in rows {
        t.push(r?);
    }
    Ok(vec![t])
}

fn statistics(name: StatisticsName) -> Statistics {
    match name {
        StatisticsName::MB => Statistics::MaxwellBoltzmann,
        StatisticsName::BE => Statistics::BoseEinstein,
        StatisticsName::FD => Statistics::FermiDirac,
    }
}

fn twobody_specs(cfg: &ScenarioConfig) -> Result<Vec<(StatisticsName, TwoBodySpec)>> {
    let tb = &cfg.twobody;
    let a = SingleGaussianSpec::new(tb.k_a, tb.x_ca, tb.sigma0)?;
    let b = SingleGaussianSpec::new(tb.k_b, tb.x_cb, tb.sigma0)?;
    tb.statistics
        .iter()
        .map(|&s| Ok((s, TwoBodySpec::new(a, b, statistics(s), tb.hbar, tb.mass)?)))
        .collect()
}

pub fn fig5(cfg: &ScenarioConfig) -> Result<Vec<Table>> {
    let tb = &cfg.twobody;
    let specs = twobody_specs(cfg)?;

    let xs = UniformGrid::new(tb.x_min, tb.x_max, tb.points)?;
    let mut cols = vec!["x".to_string()];
    let mut columns = Vec::new();
    for (name, spec) in &specs {
        for &t in &tb.times {
            cols.push(format!("{name:?}_t={}", fmt_value(t)));
            let col: qc_arrival::Result<Vec<f64>> = xs
                .iter()
                .map(|x| one_body_density(spec, x, t).map(|v| v.mean()))
                .collect();
            columns.push(col?);
        }
    }
    let mut density = Table::new("fig5_density", cols).labels("one-body density", false);
    for (i, x) in xs.iter().enumerate() {
        let mut row = vec![x];
        row.extend(columns.iter().map(|c: &Vec<f64>| c[i]));
        density.push(row);
    }

    let ts = UniformGrid::new(tb.t_min, tb.t_max, tb.t_points)?;
    let mut cols = vec!["t".to_string()];
    let mut columns = Vec::new();
    for (name, spec) in &specs {
        cols.push(format!("{name:?}"));
        let col: qc_arrival::Result<Vec<f64>> = ts
            .iter()
            .map(|t| one_body_current(spec, tb.detector, t).map(|v| v.mean()))
            .collect();
        columns.push(col?);
    }
    let mut current = Table::new("fig5_current", cols).labels("one-body current", false);
    for (i, t) in ts.iter().enumerate() {
        let mut row = vec![t];
        row.extend(columns.iter().map(|c: &Vec<f64>| c[i]));
        current.push(row);
    }
    Ok(vec![density, current])
}

pub fn tables(cfg: &ScenarioConfig) -> Result<Vec<Table>> {
    match cfg.scenario {
        Scenario::Fig1 => fig1(cfg),
        Scenario::Fig23 => fig23(cfg),
        Scenario::Fig4 => fig4(cfg),
        Scenario::Fig5 => fig5(cfg),
        Scenario::Arrival => arrival(cfg),
        Scenario::Sweep => sweep(cfg),
        Scenario::Validate => Ok(Vec::new()),
    }
}

/// Compute and write every table of the scenario; returns the CSV paths.
pub fn run(cfg: &ScenarioConfig) -> Result<Vec<PathBuf>> {
    tables(cfg)?
        .iter()
        .map(|t| write_table(&cfg.output.directory, t, cfg))
        .collect()
}
