//! Transmission through the rectangular barrier V(x) = V0 Θ(x) Θ(a − x).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::units::{Mass, HBAR_C};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Below this |qa| the series branch of (e^z − 1)/z is used.
const SERIES_THRESHOLD: f64 = 1e-4;

/// Largest accepted phase increment between neighbouring table nodes.
/// Steps near π would make the branch choice ambiguous.
pub const MAX_PHASE_STEP: f64 = PI / 2.0;

/// Default finite-difference step for η′ and η″, Å⁻¹.
pub const DEFAULT_STENCIL: f64 = 1e-3;

const MAX_REFINEMENTS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierSpec {
    /// Height V0, eV.
    pub height: f64,
    /// Width a, Å.
    pub width: f64,
}

impl BarrierSpec {
    pub fn new(height: f64, width: f64) -> Result<Self> {
        if !(height >= 0.0) || !(width >= 0.0) || !height.is_finite() || !width.is_finite() {
            return domain(format!(
                "barrier needs V0 >= 0 and a >= 0, got V0 = {height}, a = {width}"
            ));
        }
        Ok(BarrierSpec { height, width })
    }

    /// Wavenumber inside the barrier. Real above the top, i·κ below it.
    pub fn inner_wavenumber(&self, mass: Mass, k: f64) -> Complex64 {
        // q² = k² − 2mV0/ħ²
        let q2 = k * k - 2.0 * mass.rest_energy() * self.height / (HBAR_C * HBAR_C);
        if q2 >= 0.0 {
            Complex64::new(q2.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-q2).sqrt())
        }
    }
}

/// (e^z − 1)/z, with the removable singularity at z = 0 filled in.
fn expm1_over_z(z: Complex64) -> Complex64 {
    if z.norm() < 2.0 * SERIES_THRESHOLD {
        // 1 + z/2 + z²/6 + z³/24 + z⁴/120; the next term is below 1e-20.
        return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)));
    }
    let em1 = Complex64::new(
        z.re.exp_m1() * z.im.cos() - 2.0 * (0.5 * z.im).sin().powi(2),
        z.re.exp() * z.im.sin(),
    );
    em1 / z
}

/// T(k) = 4kq e^{i(q−k)a} / ((k+q)² − (k−q)² e^{2iqa}).
///
/// Evaluated as 4k e^{i(q−k)a} / (4k − 2ia(k−q)² (e^{2iqa} − 1)/(2iqa)),
/// which is the same expression divided through by q and stays finite at
/// the barrier top (q = 0). Below the top q = iκ.
pub fn transmission_amplitude(barrier: &BarrierSpec, mass: Mass, k: f64) -> Result<Complex64> {
    let (shift, denom) = transmission_parts(barrier, mass, k)?;
    Ok(4.0 * k * (I * shift).exp() / denom)
}

/// Splits T(k) = 4k e^{i·shift} / denom with shift = (q − k)a.
///
/// q − k is formed as −(2mV0/ħ²)/(q + k) to avoid cancellation, which
/// keeps the phase accurate enough for second differences.
fn transmission_parts(barrier: &BarrierSpec, mass: Mass, k: f64) -> Result<(Complex64, Complex64)> {
    if !(k > 0.0) || !k.is_finite() {
        return domain(format!("transmission needs k > 0, got {k}"));
    }
    let a = barrier.width;
    if barrier.height == 0.0 || a == 0.0 {
        return Ok((Complex64::new(0.0, 0.0), Complex64::new(4.0 * k, 0.0)));
    }
    let q = barrier.inner_wavenumber(mass, k);
    let k_v2 = 2.0 * mass.rest_energy() * barrier.height / (HBAR_C * HBAR_C);
    let q_minus_k = -k_v2 / (q + k);
    let denom = 4.0 * k - 2.0 * I * a * q_minus_k * q_minus_k * expm1_over_z(2.0 * I * q * a);
    Ok((q_minus_k * a, denom))
}

/// Principal-ish phase of T(k): Re((q − k)a) − arg(denominator).
/// Differs from arg T(k) by a multiple of 2π.
fn transmission_phase(barrier: &BarrierSpec, mass: Mass, k: f64) -> Result<f64> {
    let (shift, denom) = transmission_parts(barrier, mass, k)?;
    Ok(shift.re - denom.arg())
}

/// Wrap an angle into (−π, π].
fn wrap(phase: f64) -> f64 {
    let w = phase.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

/// Unwrapped transmission phase η(k) sampled on a uniform k grid.
///
/// Off-grid values and derivatives are computed from T(k) directly; the
/// table only fixes which 2π branch they belong to.
#[derive(Debug, Clone)]
pub struct PhaseTable {
    barrier: BarrierSpec,
    mass: Mass,
    k_grid: Vec<f64>,
    eta: Vec<f64>,
    stencil: f64,
}

impl PhaseTable {
    /// Sample and unwrap η on `n_points` nodes of `[k_min, k_max]`.
    /// η(k_min) lies in (−π, π].
    pub fn build(barrier: &BarrierSpec, mass: Mass, k_min: f64, k_max: f64, n_points: usize) -> Result<Self> {
        if !(k_min > 0.0) || !(k_max > k_min) {
            return domain(format!("phase table needs 0 < k_min < k_max, got [{k_min}, {k_max}]"));
        }
        if n_points < 2 {
            return domain("phase table needs at least two points");
        }
        let dk = (k_max - k_min) / (n_points - 1) as f64;
        let k_grid: Vec<f64> = (0..n_points).map(|i| k_min + i as f64 * dk).collect();
        let mut eta = Vec::with_capacity(n_points);
        let mut prev_raw = 0.0;
        for (i, &k) in k_grid.iter().enumerate() {
            let raw = transmission_phase(barrier, mass, k)?;
            if i == 0 {
                eta.push(wrap(raw));
            } else {
                let step = wrap(raw - prev_raw);
                if step.abs() > MAX_PHASE_STEP {
                    return Err(Error::Resolution {
                        k,
                        step,
                        limit: MAX_PHASE_STEP,
                        n_points,
                    });
                }
                eta.push(eta[i - 1] + step);
            }
            prev_raw = raw;
        }
        let stencil = DEFAULT_STENCIL.min((k_max - k_min) / 16.0);
        Ok(PhaseTable {
            barrier: *barrier,
            mass,
            k_grid,
            eta,
            stencil,
        })
    }

    /// Build on `[k_min, k_max]` starting from `n_points`, doubling the
    /// resolution on unwrap failure up to `MAX_REFINEMENTS` times.
    pub fn build_refined(barrier: &BarrierSpec, mass: Mass, k_min: f64, k_max: f64, n_points: usize) -> Result<Self> {
        let mut n = n_points;
        let mut last = None;
        for _ in 0..=MAX_REFINEMENTS {
            match Self::build(barrier, mass, k_min, k_max, n) {
                Err(e @ Error::Resolution { .. }) => {
                    last = Some(e);
                    n = 2 * n - 1;
                }
                other => return other,
            }
        }
        Err(last.expect("loop ran at least once"))
    }

    pub fn with_stencil(mut self, h: f64) -> Result<Self> {
        if !(h > 0.0) || 4.0 * h >= self.k_max() - self.k_min() {
            return domain(format!("stencil spacing {h} does not fit the table"));
        }
        self.stencil = h;
        Ok(self)
    }

    pub fn k_grid(&self) -> &[f64] {
        &self.k_grid
    }

    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    pub fn stencil(&self) -> f64 {
        self.stencil
    }

    pub fn k_min(&self) -> f64 {
        self.k_grid[0]
    }

    pub fn k_max(&self) -> f64 {
        self.k_grid[self.k_grid.len() - 1]
    }

    pub fn barrier(&self) -> &BarrierSpec {
        &self.barrier
    }

    pub fn mass(&self) -> Mass {
        self.mass
    }

    fn interpolate(&self, k: f64) -> f64 {
        let n = self.k_grid.len();
        let dk = (self.k_max() - self.k_min()) / (n - 1) as f64;
        let pos = ((k - self.k_min()) / dk).clamp(0.0, (n - 1) as f64);
        let i = (pos.floor() as usize).min(n - 2);
        let frac = pos - i as f64;
        self.eta[i] + frac * (self.eta[i + 1] - self.eta[i])
    }

    /// η(k) on the table's branch, for any k in the table range.
    pub fn eta_at(&self, k: f64) -> Result<f64> {
        if k < self.k_min() || k > self.k_max() {
            return Err(Error::Range {
                k,
                lo: self.k_min(),
                hi: self.k_max(),
            });
        }
        let raw = transmission_phase(&self.barrier, self.mass, k)?;
        let guide = self.interpolate(k);
        Ok(raw + 2.0 * PI * ((guide - raw) / (2.0 * PI)).round())
    }

    /// Range of k where the derivative stencil fits in the table.
    pub fn derivative_range(&self) -> (f64, f64) {
        (self.k_min() + 2.0 * self.stencil, self.k_max() - 2.0 * self.stencil)
    }

    /// (η′(k), η″(k)) by central differences with one Richardson step.
    pub fn phase_derivatives(&self, k: f64) -> Result<(f64, f64)> {
        let (lo, hi) = self.derivative_range();
        if !(k >= lo && k <= hi) {
            return Err(Error::Range { k, lo, hi });
        }
        let h = self.stencil;
        let e0 = self.eta_at(k)?;
        let p1 = self.eta_at(k + 0.5 * h)?;
        let m1 = self.eta_at(k - 0.5 * h)?;
        let p2 = self.eta_at(k + h)?;
        let m2 = self.eta_at(k - h)?;

        let d1_coarse = (p2 - m2) / (2.0 * h);
        let d1_fine = (p1 - m1) / h;
        let d1 = (4.0 * d1_fine - d1_coarse) / 3.0;

        let d2_coarse = (p2 - 2.0 * e0 + m2) / (h * h);
        let d2_fine = (p1 - 2.0 * e0 + m1) / (0.25 * h * h);
        let d2 = (4.0 * d2_fine - d2_coarse) / 3.0;
        Ok((d1, d2))
    }
}

/// Default phase-table window [k0 − 8σ_k, k0 + 8σ_k], clipped to k > 0.
pub fn default_window(k0: f64, sigma_k: f64) -> (f64, f64) {
    let lo = (k0 - 8.0 * sigma_k).max(1e-3 * k0.max(1e-6));
    (lo, k0 + 8.0 * sigma_k)
}

pub const DEFAULT_TABLE_POINTS: usize = 4096;
