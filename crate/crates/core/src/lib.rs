//! Quantum and Rosen-classical scattering of one-dimensional wave packets
//! by a rectangular barrier, arrival-time statistics at a detector, and
//! one-body observables of two free identical particles.
//!
//! Lengths are in Å, times in fs, energies in eV and masses in MeV/c²
//! (see [`units`]). The [`twobody`] module works in caller-supplied units.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arrival;
pub mod barrier;
pub mod classical;
pub mod error;
pub mod packet;
pub mod quadrature;
pub mod quantum;
pub mod twobody;
pub mod units;

pub use error::{Error, Result};
