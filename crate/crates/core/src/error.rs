use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the formula is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested combination of inputs has no closed form here.
    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("quadrature did not converge: estimated error {estimate:.3e} exceeds {tolerance:.3e} (peak {peak:.3e}, {nodes} nodes)")]
    Accuracy {
        estimate: f64,
        tolerance: f64,
        peak: f64,
        nodes: usize,
    },

    #[error("phase grid too coarse: step {step:.3} rad at k = {k:.6} exceeds {limit:.3} rad; refine the grid (n_points = {n_points})")]
    Resolution {
        k: f64,
        step: f64,
        limit: f64,
        n_points: usize,
    },

    #[error("k = {k} outside the differentiable range [{lo}, {hi}] of the phase table")]
    Range { k: f64, lo: f64, hi: f64 },

    #[error("degenerate state: {0}")]
    Degenerate(String),

    /// The time window cuts the current off before it has decayed.
    #[error("time window truncates the current: {0}; extend the time grid")]
    Truncation(String),

    #[error("|Psi| falls below the nodal threshold at stencil point ({it}, {i1}, {i2})")]
    NodalRegion { it: usize, i1: usize, i2: usize },

    #[error("numerical error: {0}")]
    Numerical(String),
}

impl Error {
    /// True for errors caused by finite numerical resolution rather than
    /// by invalid physical input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Accuracy { .. }
                | Error::Resolution { .. }
                | Error::Truncation(_)
                | Error::Numerical(_)
                | Error::NodalRegion { .. }
        )
    }
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
