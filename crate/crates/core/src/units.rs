//! Internal unit system: lengths in Å, times in fs, energies in eV.
//!
//! Masses enter as rest energies in MeV (i.e. MeV/c²) and velocities as
//! fractions of c; both are converted here and nowhere else.

use crate::error::{domain, Result};

/// Reduced Planck constant, eV·fs.
pub const HBAR: f64 = 0.6582119569;
/// Speed of light, Å/fs.
pub const C: f64 = 2997.92458;
/// ħc in eV·Å.
pub const HBAR_C: f64 = HBAR * C;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub hbar: f64,
    pub hbar_c: f64,
    pub c: f64,
}

impl UnitSystem {
    pub const STANDARD: UnitSystem = UnitSystem {
        hbar: HBAR,
        hbar_c: HBAR_C,
        c: C,
    };
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// Particle mass, stored as rest energy mc² in eV.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Mass(f64);

impl Mass {
    pub fn from_mev(mev: f64) -> Result<Self> {
        if !(mev > 0.0) || !mev.is_finite() {
            return domain(format!("mass must be positive and finite, got {mev} MeV/c²"));
        }
        Ok(Mass(mev * 1.0e6))
    }

    pub fn mev(self) -> f64 {
        self.0 * 1.0e-6
    }

    /// mc² in eV.
    pub fn rest_energy(self) -> f64 {
        self.0
    }

    /// ħ/m in Å²/fs.
    pub fn hbar_over_m(self) -> f64 {
        HBAR * C * C / self.0
    }

    /// m in eV·fs²/Å².
    pub fn internal(self) -> f64 {
        self.0 / (C * C)
    }
}

/// k₀ = m u / ħ for a velocity given as a fraction of c.
pub fn wavenumber_from_velocity(mass: Mass, u: f64) -> Result<f64> {
    if !(u >= 0.0) || !u.is_finite() {
        return domain(format!("velocity fraction must be non-negative, got {u}"));
    }
    Ok(mass.rest_energy() * u / HBAR_C)
}

/// E_k = (ħc k)² / 2mc², in eV.
pub fn kinetic_energy(mass: Mass, k: f64) -> f64 {
    let p = HBAR_C * k;
    p * p / (2.0 * mass.rest_energy())
}

/// Group velocity ħk/m in Å/fs.
pub fn velocity(mass: Mass, k: f64) -> f64 {
    mass.hbar_over_m() * k
}

/// Convert a velocity fraction of c into Å/fs.
pub fn velocity_from_fraction(u: f64) -> f64 {
    u * C
}
