//! Scenario configuration: a sectioned TOML file, resolved against the
//! reference parameter set.
//!
//! Every field is optional. `resolve` fills the defaults and checks the
//! mutually exclusive pairs (u / k0, mass / mass_sweep).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    Fig1,
    Fig23,
    Fig4,
    Fig5,
    Arrival,
    Sweep,
    Validate,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawConfig {
    pub packet: RawPacket,
    pub barrier: RawBarrier,
    pub detector: RawDetector,
    pub density: RawDensity,
    pub method: Option<MethodSelector>,
    pub twobody: RawTwoBody,
    pub output: RawOutput,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawPacket {
    pub x_c: Option<f64>,
    pub sigma0: Option<f64>,
    pub alpha: Option<f64>,
    pub alphas: Option<Vec<f64>>,
    /// Velocity as a fraction of c.
    pub u: Option<f64>,
    /// Kick wavenumber, Å⁻¹.
    pub k0: Option<f64>,
    /// MeV/c².
    pub mass: Option<f64>,
    pub mass_sweep: Option<MassSweep>,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum MassSweep {
    List(Vec<f64>),
    LogRange { min: f64, max: f64, count: usize },
}

impl MassSweep {
    fn values(&self) -> Result<Vec<f64>> {
        match self {
            MassSweep::List(v) => Ok(v.clone()),
            MassSweep::LogRange { min, max, count } => {
                if !(*min > 0.0) || !(max >= min) || *count == 0 {
                    return Err(CliError::Config(format!(
                        "packet.mass_sweep: need 0 < min <= max and count >= 1, got min = {min}, max = {max}, count = {count}"
                    )));
                }
                if *count == 1 {
                    return Ok(vec![*min]);
                }
                let (lo, hi) = (min.ln(), max.ln());
                let mut v: Vec<f64> = (0..*count)
                    .map(|i| (lo + (hi - lo) * i as f64 / (*count - 1) as f64).exp())
                    .collect();
                v[0] = *min;
                v[*count - 1] = *max;
                Ok(v)
            }
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawBarrier {
    pub v0: Option<f64>,
    pub a: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawDetector {
    pub x: Option<f64>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub samples: Option<usize>,
    pub plot_points: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawDensity {
    pub t0: Option<f64>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawTwoBody {
    pub hbar: Option<f64>,
    pub mass: Option<f64>,
    pub sigma0: Option<f64>,
    pub k_a: Option<f64>,
    pub k_b: Option<f64>,
    pub x_ca: Option<f64>,
    pub x_cb: Option<f64>,
    pub statistics: Option<Vec<StatisticsName>>,
    pub times: Option<Vec<f64>>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub points: Option<usize>,
    pub detector: Option<f64>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub t_points: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawOutput {
    pub directory: Option<PathBuf>,
    pub precision: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodSelector {
    Exact,
    StationaryPhase,
    Classical,
    All,
}

impl MethodSelector {
    pub fn exact(self) -> bool {
        matches!(self, MethodSelector::Exact | MethodSelector::All)
    }

    pub fn stationary(self) -> bool {
        matches!(self, MethodSelector::StationaryPhase | MethodSelector::All)
    }

    pub fn classical(self) -> bool {
        matches!(self, MethodSelector::Classical | MethodSelector::All)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
pub enum StatisticsName {
    MB,
    BE,
    FD,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kick {
    /// Fraction of c.
    U(f64),
    /// Å⁻¹
    K0(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Packet {
    pub x_c: f64,
    pub sigma0: f64,
    pub alpha: f64,
    pub alphas: Vec<f64>,
    pub kick: Kick,
    pub masses: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Barrier {
    pub v0: f64,
    pub a: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Detector {
    pub x: f64,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub samples: usize,
    pub plot_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Density {
    pub t0: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoBody {
    pub hbar: f64,
    pub mass: f64,
    pub sigma0: f64,
    pub k_a: f64,
    pub k_b: f64,
    pub x_ca: f64,
    pub x_cb: f64,
    pub statistics: Vec<StatisticsName>,
    pub times: Vec<f64>,
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub detector: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub t_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Output {
    pub directory: PathBuf,
    /// Significant digits in emitted numbers.
    pub precision: usize,
}

/// Fully resolved configuration for one scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub packet: Packet,
    pub barrier: Barrier,
    pub detector: Detector,
    pub density: Density,
    pub method: MethodSelector,
    pub twobody: TwoBody,
    pub output: Output,
}

impl ScenarioConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

pub fn parse(text: &str) -> Result<RawConfig> {
    toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
}

pub fn load(path: &Path) -> Result<RawConfig> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Config(format!("{name} must be positive, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Config(format!("{name} must be finite, got {v}")))
    }
}

fn odd_count(name: &str, n: usize) -> Result<usize> {
    if n >= 3 && n % 2 == 1 {
        Ok(n)
    } else {
        Err(CliError::Config(format!("{name} must be odd and >= 3, got {n}")))
    }
}

fn interval(name: &str, lo: f64, hi: f64) -> Result<()> {
    if lo < hi && lo.is_finite() && hi.is_finite() {
        Ok(())
    } else {
        Err(CliError::Config(format!("{name}: need min < max, got [{lo}, {hi}]")))
    }
}

pub const DEFAULT_MASS_SWEEP: MassSweep = MassSweep::LogRange {
    min: 0.5,
    max: 50.0,
    count: 30,
};

/// Arrival-time scenarios start at 5 MeV/c²: below about 1 MeV/c² the
/// stationary-phase packet already carries current at the detector at t = 0.
pub const ARRIVAL_MASS_SWEEP: MassSweep = MassSweep::LogRange {
    min: 5.0,
    max: 50.0,
    count: 10,
};

impl RawConfig {
    pub fn resolve(&self, scenario: Scenario) -> Result<ScenarioConfig> {
        let p = &self.packet;
        let kick = match (p.u, p.k0) {
            (Some(_), Some(_)) => return Err(CliError::Config("packet: give exactly one of u and k0".into())),
            (Some(u), None) => Kick::U(positive("packet.u", u)?),
            (None, Some(k0)) => Kick::K0(positive("packet.k0", k0)?),
            (None, None) => Kick::U(4.52e-3),
        };
        let masses = match (p.mass, &p.mass_sweep) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "packet: give exactly one of mass and mass_sweep".into(),
                ))
            }
            (Some(m), None) => vec![m],
            (None, Some(s)) => s.values()?,
            (None, None) => match scenario {
                Scenario::Fig4 | Scenario::Sweep | Scenario::Arrival => ARRIVAL_MASS_SWEEP.values()?,
                _ => DEFAULT_MASS_SWEEP.values()?,
            },
        };
        if masses.is_empty() {
            return Err(CliError::Config("packet.mass_sweep is empty".into()));
        }
        for m in &masses {
            positive("packet mass", *m)?;
        }
        let sigma0 = positive("packet.sigma0", p.sigma0.unwrap_or(2.0))?;
        let alphas = p.alphas.clone().unwrap_or_else(|| vec![-5.0, 0.0, 2.0, 5.0]);
        for a in &alphas {
            finite("packet.alphas", *a)?;
        }
        let packet = Packet {
            x_c: finite("packet.x_c", p.x_c.unwrap_or(-50.0))?,
            sigma0,
            alpha: finite("packet.alpha", p.alpha.unwrap_or(0.0))?,
            alphas,
            kick,
            masses,
        };

        let default_width = if scenario == Scenario::Fig1 { 2.0 } else { 8.0 };
        let barrier = Barrier {
            v0: self.barrier.v0.unwrap_or(5.0),
            a: self.barrier.a.unwrap_or(default_width),
        };
        if !(barrier.v0 >= 0.0) || !(barrier.a >= 0.0) {
            return Err(CliError::Config(format!(
                "barrier: need v0 >= 0 and a >= 0, got v0 = {}, a = {}",
                barrier.v0, barrier.a
            )));
        }

        let d = &self.detector;
        let detector = Detector {
            x: finite("detector.x", d.x.unwrap_or(75.0))?,
            t_min: d.t_min,
            t_max: d.t_max,
            samples: odd_count("detector.samples", d.samples.unwrap_or(4097))?,
            plot_points: odd_count("detector.plot_points", d.plot_points.unwrap_or(2001))?,
        };
        if let (Some(lo), Some(hi)) = (detector.t_min, detector.t_max) {
            interval("detector time window", lo, hi)?;
        }
        if detector.t_min.is_some_and(|t| t < 0.0) {
            return Err(CliError::Config("detector.t_min must be >= 0".into()));
        }

        let den = &self.density;
        let density = Density {
            t0: den.t0.unwrap_or(11.07),
            x_min: den.x_min.unwrap_or(40.0),
            x_max: den.x_max.unwrap_or(160.0),
            points: odd_count("density.points", den.points.unwrap_or(1201))?,
        };
        interval("density x range", density.x_min, density.x_max)?;
        if !(density.t0 >= 0.0) {
            return Err(CliError::Config(format!("density.t0 must be >= 0, got {}", density.t0)));
        }

        let tb = &self.twobody;
        let s0 = positive("twobody.sigma0", tb.sigma0.unwrap_or(1.0))?;
        let twobody = TwoBody {
            hbar: positive("twobody.hbar", tb.hbar.unwrap_or(1.0))?,
            mass: positive("twobody.mass", tb.mass.unwrap_or(0.5))?,
            sigma0: s0,
            k_a: tb.k_a.unwrap_or(2.0 / s0),
            k_b: tb.k_b.unwrap_or(1.5 / s0),
            x_ca: tb.x_ca.unwrap_or(-10.0 * s0),
            x_cb: tb.x_cb.unwrap_or(-8.0 * s0),
            statistics: tb
                .statistics
                .clone()
                .unwrap_or_else(|| vec![StatisticsName::BE, StatisticsName::FD]),
            times: tb.times.clone().unwrap_or_else(|| vec![0.0, 1.0, 2.0, 3.0, 4.0]),
            x_min: tb.x_min.unwrap_or(-30.0),
            x_max: tb.x_max.unwrap_or(40.0),
            points: odd_count("twobody.points", tb.points.unwrap_or(2801))?,
            detector: tb.detector.unwrap_or(0.0),
            t_min: tb.t_min.unwrap_or(0.0),
            t_max: tb.t_max.unwrap_or(8.0),
            t_points: odd_count("twobody.t_points", tb.t_points.unwrap_or(3201))?,
        };
        interval("twobody x range", twobody.x_min, twobody.x_max)?;
        interval("twobody time window", twobody.t_min, twobody.t_max)?;
        if twobody.t_min < 0.0 || twobody.times.iter().any(|t| !(*t >= 0.0)) {
            return Err(CliError::Config("twobody times must be >= 0".into()));
        }
        if twobody.statistics.is_empty() {
            return Err(CliError::Config("twobody.statistics is empty".into()));
        }

        let precision = self.output.precision.unwrap_or(17);
        if !(1..=17).contains(&precision) {
            return Err(CliError::Config(format!(
                "output.precision must be in 1..=17, got {precision}"
            )));
        }
        Ok(ScenarioConfig {
            scenario,
            packet,
            barrier,
            detector,
            density,
            method: self.method.unwrap_or(MethodSelector::All),
            twobody,
            output: Output {
                directory: self.output.directory.clone().unwrap_or_else(|| PathBuf::from("out")),
                precision,
            },
        })
    }
}
