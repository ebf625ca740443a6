//! Rosen's classical wave for the barrier problem, the trajectories it
//! generates, and the arrival-time statistics that follow from them.
//!
//! Classically the barrier only changes the speed: u outside, u′ inside,
//! with u′ = √(u² − 2V0/m). Every particle is transmitted.

use num_complex::Complex64;

use crate::barrier::BarrierSpec;
use crate::error::{domain, Result};
use crate::packet::PacketSpec;
use crate::quadrature::UniformGrid;
use crate::quantum::{Provenance, SampledWave, WaveEvaluator};
use crate::units::{kinetic_energy, Mass, HBAR_C};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalScatteringState {
    spec: PacketSpec,
    barrier: BarrierSpec,
    mass: Mass,
    /// p′0/ħ, Å⁻¹.
    k0_prime: f64,
    /// Å/fs
    u: f64,
    u_prime: f64,
}

impl ClassicalScatteringState {
    /// Fails unless E0 = p0²/2m exceeds V0.
    pub fn new(spec: &PacketSpec, barrier: &BarrierSpec, mass: Mass) -> Result<Self> {
        let e0 = kinetic_energy(mass, spec.k0);
        if !(spec.k0 > 0.0) || !(e0 > barrier.height) {
            return domain(format!(
                "classical scattering needs E0 > V0 with k0 > 0, got E0 = {e0} eV, V0 = {} eV",
                barrier.height
            ));
        }
        let k0_prime = barrier.inner_wavenumber(mass, spec.k0).re;
        let hm = mass.hbar_over_m();
        Ok(ClassicalScatteringState {
            spec: *spec,
            barrier: *barrier,
            mass,
            k0_prime,
            u: hm * spec.k0,
            u_prime: hm * k0_prime,
        })
    }

    pub fn spec(&self) -> &PacketSpec {
        &self.spec
    }

    pub fn barrier(&self) -> &BarrierSpec {
        &self.barrier
    }

    pub fn mass(&self) -> Mass {
        self.mass
    }

    /// p0 in eV/c.
    pub fn p0(&self) -> f64 {
        HBAR_C * self.spec.k0
    }

    /// p′0 = √(2m(E0 − V0)) in eV/c.
    pub fn p0_prime(&self) -> f64 {
        HBAR_C * self.k0_prime
    }

    /// E0, eV.
    pub fn energy(&self) -> f64 {
        kinetic_energy(self.mass, self.spec.k0)
    }

    /// Free-region speed u, Å/fs.
    pub fn speed(&self) -> f64 {
        self.u
    }

    /// Speed inside the barrier, Å/fs.
    pub fn inner_speed(&self) -> f64 {
        self.u_prime
    }

    /// a(1/u′ − 1/u): extra time spent crossing the barrier.
    pub fn barrier_delay(&self) -> f64 {
        self.barrier.width * (1.0 / self.u_prime - 1.0 / self.u)
    }

    /// E0/ħ, fs⁻¹.
    fn omega(&self) -> f64 {
        0.5 * self.u * self.spec.k0
    }

    /// ψ_C(x, t) and ∂ψ_C/∂x.
    fn evaluate(&self, x: f64, t: f64) -> (Complex64, Complex64) {
        let k0 = self.spec.k0;
        let a = self.barrier.width;
        let wt = self.omega() * t;
        if x < 0.0 {
            let xi = x - self.u * t;
            let plane = Complex64::from_polar(1.0, k0 * x - wt);
            let r = self.spec.initial_amplitude(xi);
            let dr = self.spec.initial_amplitude_gradient(xi);
            (r * plane, (dr + I * k0 * r) * plane)
        } else if x < a {
            let ratio = k0 / self.k0_prime;
            let xi = ratio * (x - self.u_prime * t);
            let plane = Complex64::from_polar(ratio.sqrt(), self.k0_prime * x - wt);
            let r = self.spec.initial_amplitude(xi);
            let dr = ratio * self.spec.initial_amplitude_gradient(xi);
            (r * plane, (dr + I * self.k0_prime * r) * plane)
        } else {
            let shift = a * (k0 / self.k0_prime - 1.0);
            let xi = x - self.u * t + shift;
            let plane = Complex64::from_polar(1.0, k0 * x - wt + (self.k0_prime - k0) * a);
            let r = self.spec.initial_amplitude(xi);
            let dr = self.spec.initial_amplitude_gradient(xi);
            (r * plane, (dr + I * k0 * r) * plane)
        }
    }

    /// ψ_C(x, t) for t ≥ 0: rigid translate left of the barrier, compressed
    /// envelope inside, delayed translate beyond it.
    pub fn rosen_wave(&self, x: f64, t: f64) -> Complex64 {
        self.evaluate(x, t).0
    }

    pub fn sample(&self, grid: &UniformGrid, t: f64) -> Result<SampledWave> {
        if t < 0.0 {
            return domain(format!("time must be non-negative, got {t}"));
        }
        let values = grid.iter().map(|x| self.rosen_wave(x, t)).collect();
        SampledWave::new(*grid, t, values, Provenance::Classical)
    }

    /// Position at time t of the particle launched from x0 < 0.
    pub fn classical_trajectory(&self, x0: f64, t: f64) -> Result<f64> {
        if !(x0 < 0.0) {
            return domain(format!("trajectory must start left of the barrier, got x0 = {x0}"));
        }
        if t < 0.0 {
            return domain(format!("time must be non-negative, got {t}"));
        }
        let enter = -x0 / self.u;
        let leave = enter + self.barrier.width / self.u_prime;
        Ok(if t < enter {
            x0 + self.u * t
        } else if t < leave {
            self.u_prime * (t - enter)
        } else {
            self.barrier.width + self.u * (t - leave)
        })
    }

    /// t_C(x0; X) = (X − x0)/u + a(1/u′ − 1/u).
    pub fn arrival_time_single(&self, x0: f64, detector: f64) -> Result<f64> {
        self.require_detector(detector)?;
        if !(x0 < 0.0) {
            return domain(format!("trajectory must start left of the barrier, got x0 = {x0}"));
        }
        Ok((detector - x0) / self.u + self.barrier_delay())
    }

    /// τ_C(X) = (X − ⟨x0⟩)/u + a(1/u′ − 1/u).
    pub fn mean_arrival_time_analytic(&self, detector: f64) -> Result<f64> {
        self.require_detector(detector)?;
        Ok((detector - self.spec.position_mean()) / self.u + self.barrier_delay())
    }

    /// j_C(X, t) = u |ψ_C(X, t)|² behind the barrier, fs⁻¹.
    pub fn classical_current_at_point(&self, detector: f64, t: f64) -> Result<f64> {
        self.require_detector(detector)?;
        Ok(self.u * self.rosen_wave(detector, t).norm_sqr())
    }

    pub fn current_series(&self, detector: f64, times: &UniformGrid) -> Result<Vec<f64>> {
        self.require_detector(detector)?;
        times
            .iter()
            .map(|t| self.classical_current_at_point(detector, t))
            .collect()
    }

    fn require_detector(&self, detector: f64) -> Result<()> {
        if !(detector > self.barrier.width) {
            return domain(format!(
                "detector must lie beyond the barrier (X > {}), got X = {detector}",
                self.barrier.width
            ));
        }
        Ok(())
    }
}

impl WaveEvaluator for ClassicalScatteringState {
    fn value_and_gradient(&self, x: f64, t: f64) -> (Complex64, Complex64) {
        self.evaluate(x, t)
    }

    fn hbar_over_m(&self) -> f64 {
        self.mass.hbar_over_m()
    }
}

/// Δτ_C = σ_x/u, independent of detector and barrier. `u` in Å/fs.
pub fn arrival_fluctuation(spec: &PacketSpec, u: f64) -> Result<f64> {
    if !(u > 0.0) {
        return domain(format!("speed must be positive, got {u}"));
    }
    Ok(spec.position_spread() / u)
}
