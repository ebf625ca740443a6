#![allow(dead_code)]

use qc_arrival::barrier::BarrierSpec;
use qc_arrival::packet::PacketSpec;
use qc_arrival::units::{wavenumber_from_velocity, Mass};

pub const X_C: f64 = -50.0;
pub const U: f64 = 4.52e-3;
pub const V0: f64 = 5.0;
pub const DETECTOR: f64 = 75.0;
pub const T0: f64 = 11.07;

/// Packet, barrier and mass for the reference scattering setup.
pub fn setup(alpha: f64, mev: f64, sigma0: f64, width: f64) -> (PacketSpec, BarrierSpec, Mass) {
    let m = Mass::from_mev(mev).unwrap();
    let k0 = wavenumber_from_velocity(m, U).unwrap();
    (
        PacketSpec::new(X_C, sigma0, alpha, k0).unwrap(),
        BarrierSpec::new(V0, width).unwrap(),
        m,
    )
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn max_abs(a: &[f64]) -> f64 {
    a.iter().map(|x| x.abs()).fold(0.0, f64::max)
}
