//! Transmitted quantum wave: direct k-quadrature and the stationary-phase
//! closed form, with density and probability current.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::barrier::{self, transmission_amplitude, BarrierSpec, PhaseTable};
use crate::error::{domain, Error, Result};
use crate::packet::PacketSpec;
use crate::quadrature::{CompositeRule, UniformGrid};
use crate::units::Mass;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    ExactQuadrature,
    StationaryPhase,
    Classical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuantumMethod {
    Exact,
    StationaryPhase,
}

/// Complex amplitudes on a uniform spatial grid at one instant.
#[derive(Debug, Clone)]
pub struct SampledWave {
    grid: UniformGrid,
    t: f64,
    values: Vec<Complex64>,
    provenance: Provenance,
}

impl SampledWave {
    pub fn new(grid: UniformGrid, t: f64, values: Vec<Complex64>, provenance: Provenance) -> Result<Self> {
        if values.len() != grid.len() {
            return domain(format!("{} samples for a grid of {} points", values.len(), grid.len()));
        }
        Ok(SampledWave {
            grid,
            t,
            values,
            provenance,
        })
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn density(&self) -> Vec<f64> {
        density(self)
    }
}

/// |ψ|² pointwise, Å⁻¹.
pub fn density(wave: &SampledWave) -> Vec<f64> {
    wave.values.iter().map(|v| v.norm_sqr()).collect()
}

/// Anything that can produce ψ and ∂ψ/∂x at a space-time point.
pub trait WaveEvaluator: Sync {
    fn value_and_gradient(&self, x: f64, t: f64) -> (Complex64, Complex64);

    fn value(&self, x: f64, t: f64) -> Complex64 {
        self.value_and_gradient(x, t).0
    }

    fn hbar_over_m(&self) -> f64;

    /// j = (ħ/m) Im(ψ* ∂ψ/∂x), fs⁻¹.
    fn current(&self, x: f64, t: f64) -> f64 {
        let (psi, grad) = self.value_and_gradient(x, t);
        self.hbar_over_m() * (psi.conj() * grad).im
    }
}

/// Settings for the composite Gauss–Legendre k-quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    /// Minimum number of panels over the k window.
    pub panels: usize,
    /// Gauss–Legendre nodes per panel.
    pub order: usize,
    /// Half-width of the k window in units of σ_k.
    pub window_sigmas: f64,
    /// Largest phase change of e^{i(kx − E_k t/ħ)} allowed across one panel, rad.
    pub max_panel_phase: f64,
    /// Accepted error estimate relative to the peak amplitude.
    pub tolerance: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings {
            panels: 64,
            order: 16,
            window_sigmas: 10.0,
            max_panel_phase: 6.0,
            tolerance: 1e-8,
        }
    }
}

#[derive(Debug, Clone)]
struct KNodes {
    k: Vec<f64>,
    amplitude: Vec<Complex64>,
    omega: Vec<f64>,
}

impl KNodes {
    fn build(
        spec: &PacketSpec,
        barrier: &BarrierSpec,
        mass: Mass,
        lo: f64,
        hi: f64,
        panels: usize,
        order: usize,
    ) -> Result<Self> {
        let rule = CompositeRule::new(lo, hi, panels, order)?;
        let hm = mass.hbar_over_m();
        let norm = 1.0 / (2.0 * PI).sqrt();
        let mut amplitude = Vec::with_capacity(rule.len());
        for (&k, &w) in rule.nodes.iter().zip(&rule.weights) {
            let t = transmission_amplitude(barrier, mass, k)?;
            amplitude.push(w * norm * t * spec.momentum_amplitude(k));
        }
        let omega = rule.nodes.iter().map(|k| 0.5 * hm * k * k).collect();
        Ok(KNodes {
            k: rule.nodes,
            amplitude,
            omega,
        })
    }

    fn evaluate(&self, x: f64, t: f64) -> (Complex64, Complex64) {
        let mut psi = Complex64::new(0.0, 0.0);
        let mut grad = Complex64::new(0.0, 0.0);
        for ((&k, &a), &w) in self.k.iter().zip(&self.amplitude).zip(&self.omega) {
            let term = a * Complex64::from_polar(1.0, k * x - w * t);
            psi += term;
            grad += I * k * term;
        }
        (psi, grad)
    }

    fn l1(&self) -> f64 {
        self.amplitude.iter().map(|a| a.norm()).sum()
    }
}

/// ψ_T(x, t) = (2π)^{-1/2} ∫ dk e^{i(kx − E_k t/ħ)} T(k) φ(k) by composite
/// Gauss–Legendre quadrature, with a half-resolution companion rule used
/// as the error estimate.
#[derive(Debug, Clone)]
pub struct ExactTransmitted {
    fine: KNodes,
    coarse: KNodes,
    hbar_over_m: f64,
    tolerance: f64,
}

impl ExactTransmitted {
    /// Prepare the rule for evaluations with |x − x_c| ≤ `max_offset` and
    /// 0 ≤ t ≤ `t_max`.
    pub fn new(
        spec: &PacketSpec,
        barrier: &BarrierSpec,
        mass: Mass,
        max_offset: f64,
        t_max: f64,
        settings: QuadratureSettings,
    ) -> Result<Self> {
        if t_max < 0.0 {
            return domain(format!("time must be non-negative, got {t_max}"));
        }
        let sigma_k = spec.momentum_spread();
        let lo = (spec.k0 - settings.window_sigmas * sigma_k).max(0.0);
        let hi = spec.k0 + settings.window_sigmas * sigma_k;
        if !(hi > lo) {
            return domain(format!("empty k window for k0 = {}", spec.k0));
        }
        let hm = mass.hbar_over_m();
        // Bound on |d/dk| of the integrand phase x − x_c − ħkt/m + η′(k).
        let rate = max_offset.abs() + hm * hi * t_max + 2.0 * barrier.width + 10.0 * spec.sigma0;
        let needed = ((hi - lo) * rate / settings.max_panel_phase).ceil() as usize;
        let mut panels = settings.panels.max(needed);
        panels += panels % 2;
        let fine = KNodes::build(spec, barrier, mass, lo, hi, panels, settings.order)?;
        let coarse = KNodes::build(spec, barrier, mass, lo, hi, panels / 2, settings.order)?;
        Ok(ExactTransmitted {
            fine,
            coarse,
            hbar_over_m: hm,
            tolerance: settings.tolerance,
        })
    }

    /// Number of k nodes in the production rule.
    pub fn nodes(&self) -> usize {
        self.fine.k.len()
    }

    /// Upper bound on |ψ_T| anywhere.
    pub fn amplitude_bound(&self) -> f64 {
        self.fine.l1()
    }

    /// ψ, ∂ψ/∂x and the estimated error of ψ.
    pub fn evaluate_with_error(&self, x: f64, t: f64) -> (Complex64, Complex64, f64) {
        let (psi, grad) = self.fine.evaluate(x, t);
        let (psi_c, grad_c) = self.coarse.evaluate(x, t);
        let scale = 1.0 + self.fine.k.last().copied().unwrap_or(0.0);
        let err = (psi - psi_c).norm().max((grad - grad_c).norm() / scale);
        (psi, grad, err)
    }

    fn check(&self, err: f64, peak: f64) -> Result<()> {
        let tol = self.tolerance * peak;
        if err > tol {
            return Err(Error::Accuracy {
                estimate: err,
                tolerance: tol,
                peak,
                nodes: self.nodes(),
            });
        }
        Ok(())
    }
}

impl WaveEvaluator for ExactTransmitted {
    fn value_and_gradient(&self, x: f64, t: f64) -> (Complex64, Complex64) {
        self.fine.evaluate(x, t)
    }

    fn hbar_over_m(&self) -> f64 {
        self.hbar_over_m
    }
}

#[derive(Debug, Clone, Copy)]
struct Component {
    k: f64,
    weight: Complex64,
    modulus: f64,
    eta: f64,
    eta1: f64,
    eta2: f64,
}

/// The three-Gaussian stationary-phase approximation of ψ_T, with η(k)
/// expanded to second order about each kick wavenumber.
#[derive(Debug, Clone)]
pub struct StationaryPhaseWave {
    components: Vec<Component>,
    x_c: f64,
    sigma0: f64,
    hbar_over_m: f64,
}

/// Transmission data at one wavenumber: |T|, η, η′, η″.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseData {
    pub k: f64,
    pub modulus: f64,
    pub eta: f64,
    pub eta1: f64,
    pub eta2: f64,
}

impl PhaseData {
    pub fn at(table: &PhaseTable, k: f64) -> Result<Self> {
        let t = transmission_amplitude(table.barrier(), table.mass(), k)?;
        let eta = table.eta_at(k)?;
        let (eta1, eta2) = table.phase_derivatives(k)?;
        Ok(PhaseData {
            k,
            modulus: t.norm(),
            eta,
            eta1,
            eta2,
        })
    }
}

/// Phase table over the default window for this packet, refined as needed.
pub fn default_phase_table(spec: &PacketSpec, barrier: &BarrierSpec, mass: Mass) -> Result<PhaseTable> {
    let (lo, hi) = barrier::default_window(spec.k0, spec.momentum_spread());
    PhaseTable::build_refined(barrier, mass, lo, hi, barrier::DEFAULT_TABLE_POINTS)
}

impl StationaryPhaseWave {
    pub fn new(spec: &PacketSpec, barrier: &BarrierSpec, mass: Mass) -> Result<Self> {
        let table = default_phase_table(spec, barrier, mass)?;
        Self::with_table(spec, &table)
    }

    pub fn with_table(spec: &PacketSpec, table: &PhaseTable) -> Result<Self> {
        if !(spec.k_minus() > 0.0) {
            return domain(format!(
                "stationary-phase form needs k- = k0 - π/4σ0 > 0, got {}",
                spec.k_minus()
            ));
        }
        let mut components = Vec::with_capacity(3);
        for (k, weight) in spec.component_weights() {
            if weight == Complex64::new(0.0, 0.0) {
                continue;
            }
            let d = PhaseData::at(table, k)?;
            components.push(Component {
                k,
                weight,
                modulus: d.modulus,
                eta: d.eta,
                eta1: d.eta1,
                eta2: d.eta2,
            });
        }
        Ok(StationaryPhaseWave {
            components,
            x_c: spec.x_c,
            sigma0: spec.sigma0,
            hbar_over_m: table.mass().hbar_over_m(),
        })
    }
}

impl WaveEvaluator for StationaryPhaseWave {
    fn value_and_gradient(&self, x: f64, t: f64) -> (Complex64, Complex64) {
        let s2 = self.sigma0 * self.sigma0;
        let hm = self.hbar_over_m;
        let prefactor = (2.0 * s2 / PI).powf(0.25) / (2.0 * PI).sqrt();
        let mut psi = Complex64::new(0.0, 0.0);
        let mut grad = Complex64::new(0.0, 0.0);
        for c in &self.components {
            let beta = Complex64::new(1.0, hm * t / (2.0 * s2) - c.eta2 / (2.0 * s2));
            let shift = x - self.x_c - hm * c.k * t + c.eta1;
            let phase = c.k * x - 0.5 * hm * c.k * c.k * t + c.eta;
            let f = c.modulus
                * (PI / (s2 * beta)).sqrt()
                * Complex64::from_polar(1.0, phase)
                * (-(shift * shift) / (4.0 * s2 * beta)).exp();
            let df = f * (I * c.k - shift / (2.0 * s2 * beta));
            psi += c.weight * f;
            grad += c.weight * df;
        }
        (prefactor * psi, prefactor * grad)
    }

    fn hbar_over_m(&self) -> f64 {
        self.hbar_over_m
    }
}

fn max_offset(spec: &PacketSpec, grid: &UniformGrid) -> f64 {
    (grid.start() - spec.x_c).abs().max((grid.end() - spec.x_c).abs())
}

/// ψ_T on `grid` at time `t` by direct quadrature.
pub fn transmitted_wave_exact(
    spec: &PacketSpec,
    barrier: &BarrierSpec,
    mass: Mass,
    grid: &UniformGrid,
    t: f64,
) -> Result<SampledWave> {
    transmitted_wave_exact_with(spec, barrier, mass, grid, t, QuadratureSettings::default())
}

pub fn transmitted_wave_exact_with(
    spec: &PacketSpec,
    barrier: &BarrierSpec,
    mass: Mass,
    grid: &UniformGrid,
    t: f64,
    settings: QuadratureSettings,
) -> Result<SampledWave> {
    let wave = ExactTransmitted::new(spec, barrier, mass, max_offset(spec, grid), t, settings)?;
    let points: Vec<f64> = grid.to_vec();
    let evaluated: Vec<(Complex64, f64)> = points
        .par_iter()
        .map(|&x| {
            let (psi, _, err) = wave.evaluate_with_error(x, t);
            (psi, err)
        })
        .collect();
    let peak = evaluated.iter().map(|(p, _)| p.norm()).fold(0.0, f64::max);
    let err = evaluated.iter().map(|(_, e)| *e).fold(0.0, f64::max);
    wave.check(err, peak)?;
    SampledWave::new(
        *grid,
        t,
        evaluated.into_iter().map(|(p, _)| p).collect(),
        Provenance::ExactQuadrature,
    )
}

/// ψ_T on `grid` at time `t` from the stationary-phase closed form.
pub fn transmitted_wave_stationary_phase(
    spec: &PacketSpec,
    barrier: &BarrierSpec,
    mass: Mass,
    grid: &UniformGrid,
    t: f64,
) -> Result<SampledWave> {
    if t < 0.0 {
        return domain(format!("time must be non-negative, got {t}"));
    }
    let wave = StationaryPhaseWave::new(spec, barrier, mass)?;
    let values = grid.iter().map(|x| wave.value(x, t)).collect();
    SampledWave::new(*grid, t, values, Provenance::StationaryPhase)
}

/// j(X, t) = (ħ/m) Im(ψ* ∂ψ/∂x) at a single point.
pub fn current_at_point(
    spec: &PacketSpec,
    barrier: &BarrierSpec,
    mass: Mass,
    x: f64,
    t: f64,
    method: QuantumMethod,
) -> Result<f64> {
    if t < 0.0 {
        return domain(format!("time must be non-negative, got {t}"));
    }
    match method {
        QuantumMethod::StationaryPhase => Ok(StationaryPhaseWave::new(spec, barrier, mass)?.current(x, t)),
        QuantumMethod::Exact => {
            let wave = ExactTransmitted::new(
                spec,
                barrier,
                mass,
                (x - spec.x_c).abs(),
                t,
                QuadratureSettings::default(),
            )?;
            let (psi, grad, err) = wave.evaluate_with_error(x, t);
            wave.check(err, wave.amplitude_bound())?;
            Ok(wave.hbar_over_m * (psi.conj() * grad).im)
        }
    }
}

/// j(X, t) sampled over a time grid, reusing one prepared wave.
pub fn current_series(
    spec: &PacketSpec,
    barrier: &BarrierSpec,
    mass: Mass,
    x: f64,
    times: &UniformGrid,
    method: QuantumMethod,
) -> Result<Vec<f64>> {
    if times.start() < 0.0 {
        return domain(format!("time must be non-negative, got {}", times.start()));
    }
    let ts = times.to_vec();
    match method {
        QuantumMethod::StationaryPhase => {
            let wave = StationaryPhaseWave::new(spec, barrier, mass)?;
            Ok(ts.par_iter().map(|&t| wave.current(x, t)).collect())
        }
        QuantumMethod::Exact => {
            let wave = ExactTransmitted::new(
                spec,
                barrier,
                mass,
                (x - spec.x_c).abs(),
                times.end(),
                QuadratureSettings::default(),
            )?;
            let evaluated: Vec<(Complex64, Complex64, f64)> =
                ts.par_iter().map(|&t| wave.evaluate_with_error(x, t)).collect();
            let peak = evaluated.iter().map(|(p, _, _)| p.norm()).fold(0.0, f64::max);
            let err = evaluated.iter().map(|(_, _, e)| *e).fold(0.0, f64::max);
            wave.check(err, peak)?;
            Ok(evaluated
                .into_iter()
                .map(|(p, g, _)| wave.hbar_over_m * (p.conj() * g).im)
                .collect())
        }
    }
}
