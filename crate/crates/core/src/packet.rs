//! The sinusoidally modulated Gaussian initial state and its free evolution.
//!
//! The envelope is
//!
//! ```text
//! R0(x) = N_α (2πσ0²)^{-1/4} [1 + α sin(π(x - x_c)/4σ0)] exp(-(x - x_c)²/4σ0²)
//! ```
//!
//! which in momentum space is a superposition of three Gaussians of width
//! 1/2σ0 centred at k0 and k± = k0 ± π/4σ0. With α = 0 every quantity in
//! this module reduces to the minimum-uncertainty Gaussian.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::units::{Mass, HBAR};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketSpec {
    /// Envelope centre, Å.
    pub x_c: f64,
    /// Gaussian width σ0, Å.
    pub sigma0: f64,
    /// Non-Gaussianity α.
    pub alpha: f64,
    /// Kick wavenumber k0, Å⁻¹.
    pub k0: f64,
}

/// Density, action and current of a free Gaussian packet at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeFields {
    /// Å⁻¹
    pub density: f64,
    /// eV·fs
    pub action: f64,
    /// fs⁻¹
    pub current: f64,
}

impl PacketSpec {
    pub fn new(x_c: f64, sigma0: f64, alpha: f64, k0: f64) -> Result<Self> {
        if !(sigma0 > 0.0) || !sigma0.is_finite() {
            return domain(format!("sigma0 must be positive, got {sigma0}"));
        }
        if !alpha.is_finite() || !x_c.is_finite() || !k0.is_finite() {
            return domain("packet parameters must be finite");
        }
        Ok(PacketSpec { x_c, sigma0, alpha, k0 })
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        PacketSpec { alpha, ..self }
    }

    pub fn with_k0(self, k0: f64) -> Self {
        PacketSpec { k0, ..self }
    }

    /// Offset π/4σ0 of the side components in momentum space.
    pub fn side_offset(&self) -> f64 {
        PI / (4.0 * self.sigma0)
    }

    pub fn k_plus(&self) -> f64 {
        self.k0 + self.side_offset()
    }

    pub fn k_minus(&self) -> f64 {
        self.k0 - self.side_offset()
    }

    /// 1/√(1 + (α²/2)(1 − e^{−π²/8})).
    pub fn norm_factor(&self) -> f64 {
        let a2 = self.alpha * self.alpha;
        1.0 / (1.0 + 0.5 * a2 * (1.0 - (-PI * PI / 8.0).exp())).sqrt()
    }

    /// R0(x), real, in Å^{-1/2}.
    pub fn initial_amplitude(&self, x: f64) -> f64 {
        let s = self.sigma0;
        let d = x - self.x_c;
        let bracket = 1.0 + self.alpha * (PI * d / (4.0 * s)).sin();
        (2.0 * PI * s * s).powf(-0.25) * self.norm_factor() * bracket * (-d * d / (4.0 * s * s)).exp()
    }

    /// dR0/dx.
    pub fn initial_amplitude_gradient(&self, x: f64) -> f64 {
        let s = self.sigma0;
        let d = x - self.x_c;
        let arg = PI * d / (4.0 * s);
        let bracket = 1.0 + self.alpha * arg.sin();
        let slope = self.alpha * PI / (4.0 * s) * arg.cos() - d / (2.0 * s * s) * bracket;
        (2.0 * PI * s * s).powf(-0.25) * self.norm_factor() * slope * (-d * d / (4.0 * s * s)).exp()
    }

    /// ψ0(x) = R0(x) e^{i k0 x}.
    pub fn initial_wave(&self, x: f64) -> Complex64 {
        self.initial_amplitude(x) * Complex64::from_polar(1.0, self.k0 * x)
    }

    /// φ(k) = (2π)^{-1/2} ∫ ψ0(x) e^{-ikx} dx in closed form.
    ///
    /// Written as three Gaussians so large |k − k0| cannot overflow the
    /// hyperbolic factor. Includes the translation phase e^{-i(k−k0)x_c}.
    pub fn momentum_amplitude(&self, k: f64) -> Complex64 {
        let s = self.sigma0;
        let kappa = k - self.k0;
        let off = self.side_offset();
        let g = |c: f64| (-s * s * (kappa - c) * (kappa - c)).exp();
        let prefactor = (2.0 * s * s / PI).powf(0.25) * self.norm_factor();
        let bracket = Complex64::new(g(0.0), -0.5 * self.alpha * (g(off) - g(-off)));
        prefactor * bracket * Complex64::from_polar(1.0, -kappa * self.x_c)
    }

    /// Weights of the three momentum components (k0, k+, k−), including
    /// the x_c-dependent phases, such that
    /// φ(k) = Σ_j w_j · φ_Gauss(k; k_j) with φ_Gauss the α = 0 amplitude
    /// kicked to k_j and centred at x_c.
    pub fn component_weights(&self) -> [(f64, Complex64); 3] {
        let n = self.norm_factor();
        let half = 0.5 * self.alpha;
        let phase = |kj: f64| Complex64::from_polar(1.0, -(kj - self.k0) * self.x_c);
        [
            (self.k0, Complex64::new(n, 0.0)),
            (self.k_plus(), -I * half * n * phase(self.k_plus())),
            (self.k_minus(), I * half * n * phase(self.k_minus())),
        ]
    }

    fn moment_denominator(&self) -> f64 {
        let e8 = (PI * PI / 8.0).exp();
        self.alpha * self.alpha * (e8 - 1.0) + 2.0 * e8
    }

    /// ⟨x⟩ of |R0|².
    pub fn position_mean(&self) -> f64 {
        let num = PI * (3.0 * PI * PI / 32.0).exp() * self.alpha;
        self.x_c + self.sigma0 * num / self.moment_denominator()
    }

    /// σ_x of |R0|².
    pub fn position_spread(&self) -> f64 {
        let e8 = (PI * PI / 8.0).exp();
        let a2 = self.alpha * self.alpha;
        let d = self.moment_denominator();
        let num = PI * PI * a2 * (a2 * (e8 - 1.0) + 2.0 * e8 - 4.0 * (3.0 * PI * PI / 16.0).exp());
        self.sigma0 * (1.0 + num / (4.0 * d * d)).sqrt()
    }

    /// σ_k of |φ|², Å⁻¹.
    pub fn momentum_spread(&self) -> f64 {
        let a2 = self.alpha * self.alpha;
        let extra = a2 * PI * PI / (8.0 + 4.0 * a2 * (1.0 - (-PI * PI / 8.0).exp()));
        (1.0 + extra).sqrt() / (2.0 * self.sigma0)
    }

    /// Free-space evolution of ψ0 in closed form.
    pub fn free_propagate(&self, mass: Mass, x: f64, t: f64) -> Complex64 {
        let s = self.sigma0;
        let hm = mass.hbar_over_m();
        let u = hm * self.k0;
        let beta = Complex64::new(1.0, hm * t / (2.0 * s * s));
        let xi = x - self.x_c - u * t;
        let modulation =
            1.0 + self.alpha * ((PI * PI / 16.0) * (beta.inv() - 1.0)).exp() * (PI * xi / (4.0 * s * beta)).sin();
        let gauss = (-(xi * xi) / (4.0 * s * s * beta)).exp();
        let plane = Complex64::from_polar(1.0, self.k0 * (x - 0.5 * u * t));
        (2.0 * PI * s * s).powf(-0.25) / beta.sqrt() * self.norm_factor() * modulation * plane * gauss
    }

    fn require_gaussian(&self) -> Result<()> {
        if self.alpha != 0.0 {
            return Err(Error::Unsupported(format!(
                "free closed forms for density, action and current need alpha = 0, got {}",
                self.alpha
            )));
        }
        Ok(())
    }

    /// Classical free Gaussian: rigid translation at u = ħk0/m.
    pub fn gaussian_free_classical(&self, mass: Mass, x: f64, t: f64) -> Result<FreeFields> {
        self.require_gaussian()?;
        if t < 0.0 {
            return domain(format!("time must be non-negative, got {t}"));
        }
        let s = self.sigma0;
        let u = mass.hbar_over_m() * self.k0;
        let xi = x - self.x_c - u * t;
        let density = (-(xi * xi) / (2.0 * s * s)).exp() / (2.0 * PI * s * s).sqrt();
        let e0 = 0.5 * HBAR * self.k0 * u;
        Ok(FreeFields {
            density,
            action: HBAR * self.k0 * x - e0 * t,
            current: u * density,
        })
    }

    /// Quantum free Gaussian with σ(t) = σ0 √(1 + (ħt/2mσ0²)²).
    pub fn gaussian_free_quantum(&self, mass: Mass, x: f64, t: f64) -> Result<FreeFields> {
        let classical = self.gaussian_free_classical(mass, x, t)?;
        let s0 = self.sigma0;
        let hm = mass.hbar_over_m();
        let u = hm * self.k0;
        let tau = hm * t / (2.0 * s0 * s0);
        let sigma2 = s0 * s0 * (1.0 + tau * tau);
        let xi = x - self.x_c - u * t;
        let density = (-(xi * xi) / (2.0 * sigma2)).exp() / (2.0 * PI * sigma2).sqrt();
        let action = classical.action - 0.5 * HBAR * tau.atan() + HBAR * hm * t * xi * xi / (8.0 * s0 * s0 * sigma2);
        // u[1 + (ħ/m)² t/(4σ0²σ²) ((x − x_c)/u − t)] written without dividing by u.
        let current = density * (u + hm * hm * t * xi / (4.0 * s0 * s0 * sigma2));
        Ok(FreeFields {
            density,
            action,
            current,
        })
    }
}

/// α0 = 2√2 e^{π²/16}/π: |φ(k)|² has a maximum at k0 for |α| < α0 and a
/// local minimum beyond.
pub fn critical_alpha() -> f64 {
    2.0 * 2f64.sqrt() * (PI * PI / 16.0).exp() / PI
}
