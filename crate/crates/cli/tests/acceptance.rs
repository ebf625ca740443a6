//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if
//! any criterion fails or exceeds its time budget.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use qc_arrival::arrival::{
    arrival_distribution, arrival_rms, mean_arrival_time, select_window, ArrivalSeries, DEFAULT_SAMPLES,
    DEFAULT_TAIL_EPSILON,
};
use qc_arrival::barrier::{transmission_amplitude, BarrierSpec};
use qc_arrival::classical::{arrival_fluctuation, ClassicalScatteringState};
use qc_arrival::packet::PacketSpec;
use qc_arrival::quadrature::{adaptive_simpson, simpson, UniformGrid};
use qc_arrival::quantum::{transmitted_wave_exact, transmitted_wave_stationary_phase, Provenance};
use qc_arrival::twobody::*;
use qc_arrival::units::{wavenumber_from_velocity, Mass, HBAR_C};
use qc_arrival::Error;
use qc_arrival_cli::config::{parse, Scenario};
use qc_arrival_cli::output::Table;
use qc_arrival_cli::scenarios;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

const U: f64 = 4.52e-3;
const X_C: f64 = -50.0;
const T0: f64 = 11.07;

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn setup(alpha: f64, mev: f64, v0: f64, a: f64) -> (PacketSpec, BarrierSpec, Mass) {
    let m = Mass::from_mev(mev).unwrap();
    let k0 = wavenumber_from_velocity(m, U).unwrap();
    (
        PacketSpec::new(X_C, 2.0, alpha, k0).unwrap(),
        BarrierSpec::new(v0, a).unwrap(),
        m,
    )
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

// 1 -----------------------------------------------------------------------

fn moments() -> Outcome {
    let mut worst = 0.0f64;
    for alpha in [-5.0, -2.0, 0.0, 2.0, 5.0] {
        let (p, _, _) = setup(alpha, 5.0, 5.0, 8.0);
        let (lo, hi) = (p.x_c - 12.0 * p.sigma0 * 2.0, p.x_c + 12.0 * p.sigma0 * 2.0);
        let rho = |x: f64| p.initial_amplitude(x).powi(2);
        let n = adaptive_simpson(rho, lo, hi, 1e-12);
        let mean = adaptive_simpson(|x| x * rho(x), lo, hi, 1e-12) / n;
        let sx = (adaptive_simpson(|x| (x - mean).powi(2) * rho(x), lo, hi, 1e-12) / n).sqrt();

        let sk_width = p.momentum_spread();
        let (klo, khi) = (p.k0 - 12.0 * sk_width, p.k0 + 12.0 * sk_width);
        let phi2 = |k: f64| p.momentum_amplitude(k).norm_sqr();
        let nk = adaptive_simpson(phi2, klo, khi, 1e-12);
        let kmean = adaptive_simpson(|k| k * phi2(k), klo, khi, 1e-12) / nk;
        let sk = (adaptive_simpson(|k| (k - kmean).powi(2) * phi2(k), klo, khi, 1e-12) / nk).sqrt();

        for (got, want, what) in [
            (mean, p.position_mean(), "<x>"),
            (sx, p.position_spread(), "sigma_x"),
            (sk, p.momentum_spread(), "sigma_k"),
        ] {
            let r = rel(got, want);
            worst = worst.max(r);
            check(r < 1e-8, format!("alpha={alpha} {what}: {got} vs {want} (rel {r:e})"))?;
        }
    }
    Ok(format!("max rel dev {worst:.1e}"))
}

// 2 -----------------------------------------------------------------------

fn critical_alpha() -> Outcome {
    let curvature = |alpha: f64| {
        let (p, _, _) = setup(alpha, 5.0, 5.0, 8.0);
        let f = |k: f64| p.momentum_amplitude(k).norm_sqr();
        let h = 1e-3;
        f(p.k0 + h) - 2.0 * f(p.k0) + f(p.k0 - h)
    };
    let (mut lo, mut hi) = (1.0, 2.5);
    check(curvature(lo) < 0.0 && curvature(hi) > 0.0, "no sign change in [1, 2.5]")?;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if curvature(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a0 = 0.5 * (lo + hi);
    check((a0 - 1.66836).abs() < 1e-4, format!("alpha0 = {a0}"))?;
    Ok(format!("alpha0 = {a0:.6}"))
}

// 3 -----------------------------------------------------------------------

type M2 = [[Complex64; 2]; 2];
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn basis(kappa: Complex64, x: f64) -> M2 {
    let p = (I * kappa * x).exp();
    let m = (-I * kappa * x).exp();
    [[p, m], [I * kappa * p, -I * kappa * m]]
}

fn mul(a: M2, b: M2) -> M2 {
    let mut c = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn inv(a: M2) -> M2 {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [[a[1][1] / det, -a[0][1] / det], [-a[1][0] / det, a[0][0] / det]]
}

/// Transfer matrix across the two interfaces; t = 1/M₂₂ for unit incidence.
fn transfer_matrix_t(v0: f64, a: f64, mev: f64, k: f64) -> Complex64 {
    let q = Complex64::new(k * k - 2.0 * mev * 1e6 * v0 / (HBAR_C * HBAR_C), 0.0).sqrt();
    let k = Complex64::new(k, 0.0);
    let m = mul(
        mul(inv(basis(k, a)), basis(q, a)),
        mul(inv(basis(q, 0.0)), basis(k, 0.0)),
    );
    1.0 / m[1][1]
}

fn transmission() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut worst, mut below) = (0.0f64, 0);
    for i in 0..100 {
        let v0: f64 = rng.gen_range(0.5..10.0);
        let a: f64 = rng.gen_range(0.5..10.0);
        let mev: f64 = rng.gen_range(0.5..50.0);
        let ratio: f64 = if i % 2 == 0 {
            below += 1;
            rng.gen_range(0.1..0.95)
        } else {
            rng.gen_range(1.05..3.0)
        };
        let k = (2.0 * mev * 1e6 * v0 * ratio).sqrt() / HBAR_C;
        let got = transmission_amplitude(&BarrierSpec::new(v0, a).unwrap(), Mass::from_mev(mev).unwrap(), k).unwrap();
        let want = transfer_matrix_t(v0, a, mev, k);
        let r = (got - want).norm() / want.norm();
        worst = worst.max(r);
        check(r < 1e-10, format!("V0={v0} a={a} m={mev} E/V0={ratio}: rel {r:e}"))?;
    }
    let mut res = 0.0f64;
    for (v0, a, mev) in [(5.0, 2.0, 5.0), (5.0, 8.0, 5.0), (3.0, 4.0, 20.0)] {
        for n in 1..=3 {
            let q = n as f64 * PI / a;
            let k = (q * q + 2.0 * mev * 1e6 * v0 / (HBAR_C * HBAR_C)).sqrt();
            let t = transmission_amplitude(&BarrierSpec::new(v0, a).unwrap(), Mass::from_mev(mev).unwrap(), k).unwrap();
            res = res.max((t.norm() - 1.0).abs());
        }
    }
    check(res < 1e-10, format!("|T| - 1 = {res:e} at resonance"))?;
    Ok(format!(
        "100 tuples ({below} below V0), max rel {worst:.1e}; resonance dev {res:.1e}"
    ))
}

// 4 -----------------------------------------------------------------------

fn simulated_classical(s: &ClassicalScatteringState, x: f64) -> (f64, f64) {
    let guess = 2.0 * s.mean_arrival_time_analytic(x).unwrap();
    let (grid, j) = select_window(guess, DEFAULT_SAMPLES, DEFAULT_TAIL_EPSILON, |g| s.current_series(x, g)).unwrap();
    let d = arrival_distribution(&ArrivalSeries::new(x, grid, j, Provenance::Classical).unwrap()).unwrap();
    (mean_arrival_time(&d), arrival_rms(&d).unwrap())
}

fn classical_consistency() -> Outcome {
    let mut dtaus = Vec::new();
    let (mut wt, mut wd) = (0.0f64, 0.0f64);
    for alpha in [0.0, 5.0] {
        for a in [2.0, 8.0] {
            for x in [75.0, 150.0] {
                let (p, b, m) = setup(alpha, 5.0, 5.0, a);
                let s = ClassicalScatteringState::new(&p, &b, m).unwrap();
                let (tau, rms) = simulated_classical(&s, x);
                let tau_c = s.mean_arrival_time_analytic(x).unwrap();
                let dtau = arrival_fluctuation(&p, s.speed()).unwrap();
                wt = wt.max(rel(tau, tau_c));
                wd = wd.max(rel(rms, dtau));
                check(
                    rel(tau, tau_c) < 1e-6,
                    format!("alpha={alpha} a={a} X={x}: tau {tau} vs {tau_c}"),
                )?;
                check(
                    rel(rms, dtau) < 1e-6,
                    format!("alpha={alpha} a={a} X={x}: dtau {rms} vs {dtau}"),
                )?;
                dtaus.push((alpha, dtau));
                dtaus.push((alpha, rms));
            }
        }
    }
    for alpha in [0.0, 5.0] {
        let v: Vec<f64> = dtaus.iter().filter(|d| d.0 == alpha).map(|d| d.1).collect();
        let spread = v.iter().map(|d| rel(*d, v[0])).fold(0.0, f64::max);
        check(
            spread <= 1e-10,
            format!("alpha={alpha}: dtau varies by {spread:e} across X and a"),
        )?;
    }
    Ok(format!("tau rel {wt:.1e}, dtau rel {wd:.1e}"))
}

// 5 -----------------------------------------------------------------------

fn coincidence() -> Outcome {
    let grid = UniformGrid::new(40.0, 160.0, 1201).unwrap();
    let mut gaps = Vec::new();
    for mev in [2.5, 5.0, 10.0] {
        let (p, b, m) = setup(0.0, mev, 5.0, 8.0);
        let ex = transmitted_wave_exact(&p, &b, m, &grid, T0)
            .map_err(|e| e.to_string())?
            .density();
        let sp = transmitted_wave_stationary_phase(&p, &b, m, &grid, T0)
            .map_err(|e| e.to_string())?
            .density();
        let peak = ex.iter().cloned().fold(0.0, f64::max);
        let gap = ex.iter().zip(&sp).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / peak;
        gaps.push(gap);
    }
    check(gaps[1] < 0.05, format!("m=5 gap {:.3}% of peak", 100.0 * gaps[1]))?;
    check(
        gaps[0] > gaps[1] && gaps[1] > gaps[2],
        format!("gaps not decreasing: {gaps:?}"),
    )?;
    Ok(format!(
        "L-inf gap / peak: {:.2}% (2.5), {:.2}% (5), {:.2}% (10)",
        100.0 * gaps[0],
        100.0 * gaps[1],
        100.0 * gaps[2]
    ))
}

// 6 -----------------------------------------------------------------------

fn ordering_for(method: &str) -> Result<(f64, f64), String> {
    let text = format!("method = \"{method}\"\n[packet]\nmass_sweep = {{ min = 5.0, max = 50.0, count = 10 }}\n");
    let cfg = parse(&text)
        .and_then(|r| r.resolve(Scenario::Fig4))
        .map_err(|e| e.to_string())?;
    let tables = scenarios::fig4(&cfg).map_err(|e| e.to_string())?;
    let diff = &tables[2];
    let (mut lo, mut hi) = (f64::MAX, 0.0f64);
    for (j, col) in diff.columns.iter().enumerate().skip(1) {
        let v: Vec<f64> = diff.rows.iter().map(|r| r[j]).collect();
        for (i, d) in v.iter().enumerate() {
            check(
                *d > 0.0,
                format!("{method} {col} m={}: tau_Q - tau_C = {d:e}", diff.rows[i][0]),
            )?;
            lo = lo.min(*d);
            hi = hi.max(*d);
        }
        for w in v.windows(2) {
            check(
                w[1] < w[0],
                format!("{method} {col}: not decreasing ({:e} -> {:e})", w[0], w[1]),
            )?;
        }
    }
    Ok((lo, hi))
}

fn ordering() -> Outcome {
    let (slo, shi) = ordering_for("stationary-phase")?;
    let (elo, ehi) = ordering_for("exact")?;
    Ok(format!(
        "10 masses x 4 alphas; stationary phase {slo:.1e}..{shi:.1e} fs, exact {elo:.1e}..{ehi:.1e} fs"
    ))
}

// 7 -----------------------------------------------------------------------

/// Current of a free-propagated packet from a sixth-order derivative of
/// its envelope ψ e^{−ik0x}.
fn numeric_current(p: &PacketSpec, m: Mass, x: f64, t: f64) -> f64 {
    let env = |y: f64| p.free_propagate(m, y, t) * Complex64::from_polar(1.0, -p.k0 * y);
    let h = 1e-2;
    let d = |h: f64| (env(x + h) - env(x - h)) / (2.0 * h);
    let d1 = d(h);
    let d2 = d(h / 2.0);
    let d3 = d(h / 4.0);
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d3 - d2) / 3.0;
    let grad_env = (16.0 * r2 - r1) / 15.0;
    let e = env(x);
    m.hbar_over_m() * (p.k0 * e.norm_sqr() + (e.conj() * grad_env).im)
}

fn free_space() -> Outcome {
    let free = BarrierSpec::new(0.0, 0.0).unwrap();
    let grid = UniformGrid::new(60.0, 140.0, 401).unwrap();
    let mut worst_ng = 0.0f64;
    for alpha in [-5.0, 2.0, 5.0] {
        let (p, _, m) = setup(alpha, 5.0, 0.0, 0.0);
        let wave = transmitted_wave_exact(&p, &free, m, &grid, T0).map_err(|e| e.to_string())?;
        let want: Vec<Complex64> = grid.iter().map(|x| p.free_propagate(m, x, T0)).collect();
        let peak = want.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let dev = wave
            .values()
            .iter()
            .zip(&want)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
            / peak;
        worst_ng = worst_ng.max(dev);
        check(
            dev < 1e-8,
            format!("alpha={alpha}: exact vs free closed form {dev:e} of peak"),
        )?;
    }

    let mut worst_q = 0.0f64;
    let mut worst_c = 0.0f64;
    let mut gaps = Vec::new();
    for mev in [5.0, 50.0, 500.0, 5000.0] {
        let (p, _, m) = setup(0.0, mev, 0.0, 0.0);
        let rosen = ClassicalScatteringState::new(&p, &free, m).map_err(|e| e.to_string())?;
        let u = rosen.speed();
        let centre = p.x_c + u * T0;
        let xs = UniformGrid::new(centre - 30.0, centre + 30.0, 601).unwrap();
        let (mut rho_peak, mut j_peak, mut gap) = (0.0f64, 0.0f64, 0.0f64);
        let mut rows = Vec::new();
        for x in xs.iter() {
            let q = p.gaussian_free_quantum(m, x, T0).map_err(|e| e.to_string())?;
            let c = p.gaussian_free_classical(m, x, T0).map_err(|e| e.to_string())?;
            rho_peak = rho_peak.max(q.density);
            j_peak = j_peak.max(q.current.abs());
            gap = gap.max((q.density - c.density).abs());
            rows.push((x, q, c));
        }
        for (x, q, c) in rows {
            let psi = p.free_propagate(m, x, T0);
            let dq = (q.density - psi.norm_sqr()).abs() / rho_peak;
            let jq = (q.current - numeric_current(&p, m, x, T0)).abs() / j_peak;
            let r = rosen.rosen_wave(x, T0).norm_sqr();
            let dc = (c.density - r).abs().max((c.current - u * r).abs() / u) / rho_peak;
            worst_q = worst_q.max(dq).max(jq);
            worst_c = worst_c.max(dc);
        }
        gaps.push(gap / rho_peak);
    }
    check(worst_q < 1e-10, format!("quantum Gaussian closed form dev {worst_q:e}"))?;
    check(
        worst_c < 1e-10,
        format!("classical Gaussian closed form dev {worst_c:e}"),
    )?;
    check(
        gaps.windows(2).all(|w| w[1] < w[0]) && gaps[3] < 1e-3,
        format!("Q-C gap not vanishing: {gaps:?}"),
    )?;
    Ok(format!(
        "non-Gaussian {worst_ng:.1e} of peak; Gaussian Q {worst_q:.1e}, C {worst_c:.1e}; Q-C gap {:.1e} -> {:.1e}",
        gaps[0], gaps[3]
    ))
}

// 8 -----------------------------------------------------------------------

fn fig5_spec(st: Statistics) -> TwoBodySpec {
    let a = SingleGaussianSpec::new(2.0, -10.0, 1.0).unwrap();
    let b = SingleGaussianSpec::new(1.5, -8.0, 1.0).unwrap();
    TwoBodySpec::new(a, b, st, 1.0, 0.5).unwrap()
}

fn continuity(spec: &TwoBodySpec, h: f64) -> f64 {
    let rho = |x: f64, t: f64| one_body_density(spec, x, t).unwrap().mean();
    let j = |x: f64, t: f64| one_body_current(spec, x, t).unwrap().mean();
    [(-9.0, 0.5), (-4.0, 1.5), (0.0, 2.5), (3.0, 3.0)]
        .iter()
        .map(|&(x, t)| ((rho(x, t + h) - rho(x, t - h)) / (2.0 * h) + (j(x + h, t) - j(x - h, t)) / (2.0 * h)).abs())
        .fold(0.0, f64::max)
}

fn column(t: &Table, name: &str) -> Result<Vec<f64>, String> {
    t.column(name).ok_or_else(|| format!("missing column {name}"))
}

fn two_body() -> Outcome {
    let spec = fig5_spec(Statistics::BoseEinstein);
    let closed = overlap(&spec);
    for t in [0.0, 3.0, 7.0] {
        let f = |x: f64| single_packet(&spec.a, 1.0, 0.5, x, t).conj() * single_packet(&spec.b, 1.0, 0.5, x, t);
        let re = adaptive_simpson(|x| f(x).re, -100.0, 140.0, 1e-13);
        let im = adaptive_simpson(|x| f(x).im, -100.0, 140.0, 1e-13);
        let d = (Complex64::new(re, im) - closed).norm();
        check(d < 1e-10, format!("overlap at t={t}: dev {d:e}"))?;
    }

    let mut ratios = Vec::new();
    for st in [Statistics::BoseEinstein, Statistics::FermiDirac] {
        let s = fig5_spec(st);
        for t in [0.0, 2.0, 4.0] {
            let n = adaptive_simpson(|x| one_body_density(&s, x, t).unwrap().mean(), -40.0, 60.0, 1e-13);
            check((n - 1.0).abs() < 1e-8, format!("{st:?} t={t}: int rho1 = {n}"))?;
        }
        let ratio = continuity(&s, 1e-2) / continuity(&s, 5e-3);
        check(
            ratio > 3.5 && ratio < 4.5,
            format!("{st:?}: continuity residual ratio {ratio}"),
        )?;
        ratios.push(ratio);
    }

    let cfg = parse("").unwrap().resolve(Scenario::Fig5).map_err(|e| e.to_string())?;
    let tables = scenarios::fig5(&cfg).map_err(|e| e.to_string())?;
    let (density, current) = (&tables[0], &tables[1]);
    let xs = column(density, "x")?;
    let dx = xs[1] - xs[0];
    for name in density.columns.iter().skip(1) {
        let n = simpson(&column(density, name)?, dx).unwrap();
        check((n - 1.0).abs() < 1e-8, format!("emitted {name}: int rho1 = {n}"))?;
    }
    let spread = |name: &str| -> Result<f64, String> {
        let rho = column(density, name)?;
        let mean = simpson(&xs.iter().zip(&rho).map(|(x, r)| x * r).collect::<Vec<_>>(), dx).unwrap();
        Ok(simpson(
            &xs.iter()
                .zip(&rho)
                .map(|(x, r)| (x - mean).powi(2) * r)
                .collect::<Vec<_>>(),
            dx,
        )
        .unwrap()
        .sqrt())
    };
    let (be, fd) = (spread("BE_t=0")?, spread("FD_t=0")?);
    check(fd > be, format!("FD spread {fd} <= BE spread {be}"))?;
    let ts = column(current, "t")?;
    let peak_time = |name: &str| -> Result<f64, String> {
        let j = column(current, name)?;
        let i = (0..j.len()).fold(0, |b, i| if j[i] > j[b] { i } else { b });
        Ok(ts[i])
    };
    let (tbe, tfd) = (peak_time("BE")?, peak_time("FD")?);
    check(tfd < tbe, format!("FD current peak {tfd} not before BE {tbe}"))?;

    let a = SingleGaussianSpec::new(2.0, -10.0, 1.0).unwrap();
    let err = TwoBodySpec::new(a, a, Statistics::FermiDirac, 1.0, 0.5);
    check(
        matches!(err, Err(Error::Degenerate(_))),
        "identical fermions not rejected as degenerate",
    )?;
    Ok(format!(
        "continuity ratios {:.2}/{:.2}; spread FD {fd:.4} > BE {be:.4}; peak FD {tfd:.4} < BE {tbe:.4}",
        ratios[0], ratios[1]
    ))
}

// 9 -----------------------------------------------------------------------

fn residual(
    f: impl Fn(f64, f64, f64) -> qc_arrival::Result<Complex64>,
    h: f64,
    eq: WaveEquation,
) -> Result<f64, String> {
    let st = Stencil::sample(f, (-6.0, -5.0, 1.0), 2, h, 0.25 * h).map_err(|e| e.to_string())?;
    classical_wave_residual(&st, 1.0, 0.5, eq).map_err(|e| e.to_string())
}

fn nonlinearity() -> Outcome {
    let mb = fig5_spec(Statistics::MaxwellBoltzmann);
    let product = |x1: f64, x2: f64, t: f64| {
        Ok(classical_packet(&mb.a, 1.0, 0.5, x1, t) * classical_packet(&mb.b, 1.0, 0.5, x2, t))
    };
    let p: Vec<f64> = [4e-2, 2e-2, 1e-2]
        .iter()
        .map(|&h| residual(product, h, WaveEquation::Classical))
        .collect::<Result<_, _>>()?;
    check(
        p[1] < p[0] / 3.5 && p[2] < p[1] / 3.5,
        format!("product residual not O(h^2): {p:?}"),
    )?;

    let mut fields = Vec::new();
    for st in [Statistics::BoseEinstein, Statistics::FermiDirac] {
        let s = fig5_spec(st);
        let f = |x1: f64, x2: f64, t: f64| two_body_wave(&s, x1, x2, t);
        let r: Vec<f64> = [4e-2, 2e-2, 1e-2]
            .iter()
            .map(|&h| residual(f, h, WaveEquation::Classical))
            .collect::<Result<_, _>>()?;
        check(r[2] > 1e-3, format!("{st:?}: classical residual {:e} vanishes", r[2]))?;
        check(
            (r[1] - r[2]).abs() < (r[0] - r[1]).abs().max(0.05 * r[2]),
            format!("{st:?}: residual not converging {r:?}"),
        )?;
        check(
            (r[1] - r[2]).abs() < 0.05 * r[2],
            format!("{st:?}: residual not converged {r:?}"),
        )?;
        fields.push(r[2]);
    }
    Ok(format!(
        "product {:.1e} -> {:.1e}; symmetrized limit BE {:.3e}, FD {:.3e}",
        p[0], p[2], fields[0], fields[1]
    ))
}

// 10 ----------------------------------------------------------------------

const SMALL: &str = r#"
[packet]
mass_sweep = [5.0, 10.0]
alphas = [0.0, 5.0]
[density]
points = 201
[detector]
samples = 1025
plot_points = 401
[twobody]
points = 701
t_points = 801
"#;

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut files = BTreeMap::new();
    for e in std::fs::read_dir(dir).unwrap() {
        let e = e.unwrap();
        files.insert(
            e.file_name().to_string_lossy().into_owned(),
            std::fs::read(e.path()).unwrap(),
        );
    }
    files
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_qc-arrival");
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = tmp.path().join("small.toml");
    std::fs::write(&config, SMALL).map_err(|e| e.to_string())?;
    let mut files = 0;
    for sc in ["fig1", "fig23", "fig4", "fig5", "arrival", "sweep", "validate"] {
        let out = tmp.path().join(sc);
        let mut runs = Vec::new();
        for _ in 0..2 {
            let o = Command::new(bin)
                .args([sc, "--config"])
                .arg(&config)
                .arg("--out")
                .arg(&out)
                .output()
                .map_err(|e| e.to_string())?;
            check(
                o.status.success(),
                format!("{sc}: {}", String::from_utf8_lossy(&o.stderr)),
            )?;
            let snap = if out.exists() { snapshot(&out) } else { BTreeMap::new() };
            runs.push((o.stdout, snap));
        }
        check(runs[0] == runs[1], format!("{sc}: outputs differ between runs"))?;
        check(
            sc == "validate" || !runs[0].1.is_empty(),
            format!("{sc}: no files written"),
        )?;
        files += runs[0].1.len();
    }
    Ok(format!("7 scenarios, {files} files byte-identical"))
}

// -------------------------------------------------------------------------

fn main() {
    let criteria: [Criterion; 10] = [
        ("packet moment oracle", moments, Duration::from_secs(1)),
        ("critical alpha", critical_alpha, Duration::from_secs(1)),
        ("transmission oracle", transmission, Duration::from_secs(1)),
        ("classical consistency", classical_consistency, Duration::from_secs(10)),
        ("method coincidence", coincidence, Duration::from_secs(60)),
        ("quantum-classical ordering", ordering, Duration::from_secs(300)),
        ("free-space reductions", free_space, Duration::from_secs(10)),
        ("two-body suite", two_body, Duration::from_secs(30)),
        ("nonlinearity", nonlinearity, Duration::from_secs(30)),
        ("determinism", determinism, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *budget => Err(format!("{detail}; took {elapsed:.2?} > {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
