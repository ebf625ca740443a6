//! Two free identical particles in Gaussian states.
//!
//! Everything here runs in caller-supplied units for ħ and m, so the
//! dimensionless set ħ = 1, m = 0.5, σ0 = 1 can be used directly.

use std::f64::consts::PI;

use ndarray::Array3;
use num_complex::Complex64;

use crate::error::{domain, Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Nodal threshold relative to max|Ψ| on a residual stencil.
pub const NODAL_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleGaussianSpec {
    /// Kick wavenumber.
    pub k: f64,
    pub x_c: f64,
    pub sigma0: f64,
}

impl SingleGaussianSpec {
    pub fn new(k: f64, x_c: f64, sigma0: f64) -> Result<Self> {
        if !(sigma0 > 0.0) || !sigma0.is_finite() || !k.is_finite() || !x_c.is_finite() {
            return domain(format!(
                "single packet needs finite k, x_c and sigma0 > 0, got sigma0 = {sigma0}"
            ));
        }
        Ok(SingleGaussianSpec { k, x_c, sigma0 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    /// Distinguishable particles.
    MaxwellBoltzmann,
    BoseEinstein,
    FermiDirac,
}

impl Statistics {
    /// +1 for BE, −1 for FD, 0 for MB.
    fn sign(self) -> f64 {
        match self {
            Statistics::MaxwellBoltzmann => 0.0,
            Statistics::BoseEinstein => 1.0,
            Statistics::FermiDirac => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoBodySpec {
    pub a: SingleGaussianSpec,
    pub b: SingleGaussianSpec,
    pub statistics: Statistics,
    pub hbar: f64,
    pub mass: f64,
}

impl TwoBodySpec {
    pub fn new(
        a: SingleGaussianSpec,
        b: SingleGaussianSpec,
        statistics: Statistics,
        hbar: f64,
        mass: f64,
    ) -> Result<Self> {
        if !(hbar > 0.0) || !(mass > 0.0) {
            return domain(format!("need hbar > 0 and mass > 0, got hbar = {hbar}, m = {mass}"));
        }
        if statistics == Statistics::FermiDirac && a == b {
            return Err(Error::Degenerate(
                "antisymmetrized state of two identical packets vanishes (N- diverges)".into(),
            ));
        }
        Ok(TwoBodySpec {
            a,
            b,
            statistics,
            hbar,
            mass,
        })
    }

    pub fn with_statistics(self, statistics: Statistics) -> Result<Self> {
        Self::new(self.a, self.b, statistics, self.hbar, self.mass)
    }

    pub fn swapped(self) -> Self {
        TwoBodySpec {
            a: self.b,
            b: self.a,
            ..self
        }
    }

    fn psi_a(&self, x: f64, t: f64) -> (Complex64, Complex64) {
        single_packet_with_gradient(&self.a, self.hbar, self.mass, x, t)
    }

    fn psi_b(&self, x: f64, t: f64) -> (Complex64, Complex64) {
        single_packet_with_gradient(&self.b, self.hbar, self.mass, x, t)
    }
}

/// ψ(x, t) = (2π s_t²)^{-1/4} exp[ik(x − ut/2) − (x − ut − x_c)²/(4 s_t σ0)]
/// with s_t = σ0(1 + iħt/2mσ0²) and u = ħk/m.
pub fn single_packet(spec: &SingleGaussianSpec, hbar: f64, mass: f64, x: f64, t: f64) -> Complex64 {
    single_packet_with_gradient(spec, hbar, mass, x, t).0
}

/// ψ and ∂ψ/∂x.
pub fn single_packet_with_gradient(
    spec: &SingleGaussianSpec,
    hbar: f64,
    mass: f64,
    x: f64,
    t: f64,
) -> (Complex64, Complex64) {
    let s0 = spec.sigma0;
    let u = hbar * spec.k / mass;
    let st = s0 * Complex64::new(1.0, hbar * t / (2.0 * mass * s0 * s0));
    let xi = x - u * t - spec.x_c;
    let exponent = I * spec.k * (x - 0.5 * u * t) - xi * xi / (4.0 * st * s0);
    let psi = (2.0 * PI * st * st).powf(-0.25) * exponent.exp();
    let grad = psi * (I * spec.k - xi / (2.0 * st * s0));
    (psi, grad)
}

/// Rigid free Gaussian R0(x − ut) e^{i(kx − ħk²t/2m)}: a solution of the
/// one-body classical wave equation.
pub fn classical_packet(spec: &SingleGaussianSpec, hbar: f64, mass: f64, x: f64, t: f64) -> Complex64 {
    let s0 = spec.sigma0;
    let u = hbar * spec.k / mass;
    let xi = x - u * t - spec.x_c;
    let r = (2.0 * PI * s0 * s0).powf(-0.25) * (-xi * xi / (4.0 * s0 * s0)).exp();
    r * Complex64::from_polar(1.0, spec.k * x - 0.5 * u * spec.k * t)
}

/// ⟨ψ_a|ψ_b⟩ = ∫ψ_a* ψ_b dx in closed form; independent of t.
pub fn overlap(spec: &TwoBodySpec) -> Complex64 {
    let (a, b) = (&spec.a, &spec.b);
    let (sa2, sb2) = (a.sigma0 * a.sigma0, b.sigma0 * b.sigma0);
    let sum = sa2 + sb2;
    let dk = a.k - b.k;
    let dx = a.x_c - b.x_c;
    let prefactor = (2.0 * a.sigma0 * b.sigma0 / sum).sqrt();
    let re = -(4.0 * dk * dk * sa2 * sb2 + dx * dx) / (4.0 * sum);
    let im = -dk * (sb2 * a.x_c + sa2 * b.x_c) / sum;
    prefactor * Complex64::new(re, im).exp()
}

/// N± = 1/√(2(1 ± |⟨ψ_a|ψ_b⟩|²)).
pub fn normalization(spec: &TwoBodySpec) -> Result<f64> {
    let sign = match spec.statistics {
        Statistics::MaxwellBoltzmann => {
            return domain("normalization constant is defined for BE and FD statistics only")
        }
        s => s.sign(),
    };
    let denom = 2.0 * (1.0 + sign * overlap(spec).norm_sqr());
    if !(denom > 0.0) {
        return Err(Error::Degenerate("antisymmetrized state vanishes (N- diverges)".into()));
    }
    Ok(1.0 / denom.sqrt())
}

/// One-body quantity: a single value for BE/FD, a per-particle pair for MB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OneBody {
    Symmetrized(f64),
    Distinguishable(f64, f64),
}

impl OneBody {
    /// The value itself, or the average of the pair.
    pub fn mean(self) -> f64 {
        match self {
            OneBody::Symmetrized(v) => v,
            OneBody::Distinguishable(a, b) => 0.5 * (a + b),
        }
    }
}

/// ρ1 = N²(|ψ_a|² + |ψ_b|² ± 2 Re[⟨ψ_a|ψ_b⟩ ψ_a ψ_b*]).
pub fn one_body_density(spec: &TwoBodySpec, x: f64, t: f64) -> Result<OneBody> {
    let (pa, _) = spec.psi_a(x, t);
    let (pb, _) = spec.psi_b(x, t);
    if spec.statistics == Statistics::MaxwellBoltzmann {
        return Ok(OneBody::Distinguishable(pa.norm_sqr(), pb.norm_sqr()));
    }
    let n = normalization(spec)?;
    let exchange = 2.0 * (overlap(spec) * pa * pb.conj()).re;
    Ok(OneBody::Symmetrized(
        n * n * (pa.norm_sqr() + pb.norm_sqr() + spec.statistics.sign() * exchange),
    ))
}

/// j1 = (ħ/m) N² Im[ψ_a*ψ_a′ + ψ_b*ψ_b′ ± (⟨ψ_b|ψ_a⟩ ψ_a*ψ_b′ + ⟨ψ_a|ψ_b⟩ ψ_b*ψ_a′)].
pub fn one_body_current(spec: &TwoBodySpec, x: f64, t: f64) -> Result<OneBody> {
    let (pa, ga) = spec.psi_a(x, t);
    let (pb, gb) = spec.psi_b(x, t);
    let scale = spec.hbar / spec.mass;
    let ja = scale * (pa.conj() * ga).im;
    let jb = scale * (pb.conj() * gb).im;
    if spec.statistics == Statistics::MaxwellBoltzmann {
        return Ok(OneBody::Distinguishable(ja, jb));
    }
    let n = normalization(spec)?;
    let s = overlap(spec);
    let exchange = scale * (s.conj() * pa.conj() * gb + s * pb.conj() * ga).im;
    Ok(OneBody::Symmetrized(
        n * n * (ja + jb + spec.statistics.sign() * exchange),
    ))
}

/// Two-particle amplitude Ψ(x1, x2, t): the product ψ_a(x1)ψ_b(x2) for MB,
/// N±[ψ_a(x1)ψ_b(x2) ± ψ_b(x1)ψ_a(x2)] otherwise.
pub fn two_body_wave(spec: &TwoBodySpec, x1: f64, x2: f64, t: f64) -> Result<Complex64> {
    let direct = spec.psi_a(x1, t).0 * spec.psi_b(x2, t).0;
    if spec.statistics == Statistics::MaxwellBoltzmann {
        return Ok(direct);
    }
    let exchanged = spec.psi_b(x1, t).0 * spec.psi_a(x2, t).0;
    Ok(normalization(spec)? * (direct + spec.statistics.sign() * exchanged))
}

/// Which equation the residual is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveEquation {
    /// iħΨ_t = −(ħ²/2m)ΣΨ_ii
    Schrodinger,
    /// iħΨ_t = −(ħ²/2m)ΣΨ_ii + (ħ²/2m)Σ(|Ψ|_ii/|Ψ|)Ψ
    Classical,
}

/// Ψ sampled on a uniform (x1, x2, t) box, indexed `[i1, i2, it]`.
#[derive(Debug, Clone)]
pub struct Stencil {
    pub values: Array3<Complex64>,
    pub dx: f64,
    pub dt: f64,
}

impl Stencil {
    /// Sample `f(x1, x2, t)` on (2n+1)³ points centred at `(x1, x2, t)`.
    pub fn sample<F>(f: F, centre: (f64, f64, f64), n: usize, dx: f64, dt: f64) -> Result<Self>
    where
        F: Fn(f64, f64, f64) -> Result<Complex64>,
    {
        if n == 0 || !(dx > 0.0) || !(dt > 0.0) {
            return domain("stencil needs n >= 1 and positive spacings");
        }
        let m = 2 * n + 1;
        let off = |i: usize| i as f64 - n as f64;
        let mut values = Array3::zeros((m, m, m));
        for ((i1, i2, it), v) in values.indexed_iter_mut() {
            *v = f(
                centre.0 + off(i1) * dx,
                centre.1 + off(i2) * dx,
                centre.2 + off(it) * dt,
            )?;
        }
        Ok(Stencil { values, dx, dt })
    }
}

/// max |iħΨ_t − HΨ| over the stencil interior, by second-order central
/// differences. Fails where |Ψ| drops below the nodal threshold, since the
/// classical equation divides by |Ψ|.
pub fn classical_wave_residual(stencil: &Stencil, hbar: f64, mass: f64, equation: WaveEquation) -> Result<f64> {
    if !(hbar > 0.0) || !(mass > 0.0) {
        return domain(format!("need hbar > 0 and mass > 0, got hbar = {hbar}, m = {mass}"));
    }
    let psi = &stencil.values;
    let (n1, n2, nt) = psi.dim();
    if n1 < 3 || n2 < 3 || nt < 3 {
        return domain("residual stencil needs at least 3 points per axis");
    }
    let modulus = psi.mapv(|v| v.norm());
    let peak = modulus.iter().cloned().fold(0.0, f64::max);
    if let Some(((i1, i2, it), _)) = modulus.indexed_iter().find(|(_, m)| !(**m > NODAL_THRESHOLD * peak)) {
        return Err(Error::NodalRegion { it, i1, i2 });
    }
    let (h2, dt) = (stencil.dx * stencil.dx, stencil.dt);
    let kinetic = hbar * hbar / (2.0 * mass);
    let mut worst = 0.0f64;
    for i1 in 1..n1 - 1 {
        for i2 in 1..n2 - 1 {
            for it in 1..nt - 1 {
                let p = psi[[i1, i2, it]];
                let p_t = (psi[[i1, i2, it + 1]] - psi[[i1, i2, it - 1]]) / (2.0 * dt);
                let lap =
                    (psi[[i1 + 1, i2, it]] + psi[[i1 - 1, i2, it]] + psi[[i1, i2 + 1, it]] + psi[[i1, i2 - 1, it]]
                        - 4.0 * p)
                        / h2;
                let mut res = I * hbar * p_t + kinetic * lap;
                if equation == WaveEquation::Classical {
                    let r = modulus[[i1, i2, it]];
                    let lap_r = (modulus[[i1 + 1, i2, it]]
                        + modulus[[i1 - 1, i2, it]]
                        + modulus[[i1, i2 + 1, it]]
                        + modulus[[i1, i2 - 1, it]]
                        - 4.0 * r)
                        / h2;
                    res -= kinetic * lap_r / r * p;
                }
                worst = worst.max(res.norm());
            }
        }
    }
    Ok(worst)
}
